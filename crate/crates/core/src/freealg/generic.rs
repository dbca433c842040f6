//! Identity testing via generic elements, with no multilinearity
//! requirement.
//!
//! Working over the polynomial ring in commuting indeterminates `xi_{ij}`
//! (`1 <= i <= s` coordinates, `1 <= j <= k` generic elements), the `j`-th
//! generic element is `xi_j = sum_i a_i (x) xi_{ij}`. A polynomial in `k`
//! variables is an identity of the algebra iff it evaluates to the zero
//! vector of polynomials at `(xi_1, ..., xi_k)` — substituting concrete
//! coordinates is a ring homomorphism, and over an infinite field a nonzero
//! polynomial has a nonvanishing point. This test is strictly stronger than
//! sampling: `x1*x1 - x1` on the ground field vanishes at the idempotents 0
//! and 1, yet `xi^2 - xi` is visibly not the zero polynomial.

use super::subst::{decoration_apply, ActionContext};
use super::{Decoration, DecorationAlphabet, HPolynomial, Monomial};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, RankMode, SparseRow};
use num::{One, Zero};
use std::collections::BTreeMap;

/// A sparse multivariate polynomial with rational coefficients; keys are
/// exponent vectors of a fixed length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    /// The indeterminate with the given index among `nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[index] = 1;
        let mut p = MPoly::zero();
        p.terms.insert(exps, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c * x;
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(exps).or_insert_with(Rational::zero);
                *slot += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

/// Coordinates of the generic elements: a vector of `s` polynomials per
/// element, in `s * k` indeterminates.
pub struct GenericEvaluationRing {
    s: usize,
    k: usize,
}

impl GenericEvaluationRing {
    pub fn new(s: usize, k: usize) -> Self {
        GenericEvaluationRing { s, k }
    }

    pub fn nvars(&self) -> usize {
        self.s * self.k
    }

    /// Index of `xi_{ij}` (0-based coordinate `i`, 0-based element `j`).
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        j * self.s + i
    }

    /// The `j`-th generic element (0-based): coordinate `i` is `xi_{ij}`.
    pub fn xi(&self, j: usize) -> Vec<MPoly> {
        (0..self.s)
            .map(|i| MPoly::var(self.nvars(), self.var_index(i, j)))
            .collect()
    }

    /// Product of two coordinate vectors of polynomials through the
    /// structure constants of `a`.
    pub fn multiply(&self, a: &Algebra, u: &[MPoly], v: &[MPoly]) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.s];
        for (p, up) in u.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (q, vq) in v.iter().enumerate() {
                if vq.is_zero() {
                    continue;
                }
                let prod = up.mul(vq);
                for (r, c) in a.basis_product(p, q) {
                    out[*r].add_scaled(&prod, c);
                }
            }
        }
        out
    }

    /// Apply a decoration's rational linear map coordinatewise.
    fn apply_decoration(
        &self,
        ctx: &ActionContext,
        d: &Decoration,
        v: &[MPoly],
    ) -> Result<Vec<MPoly>> {
        // Extract the dense matrix of the decoration by probing with basis
        // vectors once, then combine polynomial coordinates.
        let mut out = vec![MPoly::zero(); self.s];
        for c in 0..self.s {
            let mut e = vec![Rational::zero(); self.s];
            e[c] = Rational::one();
            let col = decoration_apply(ctx, d, &e)?;
            for (r, coeff) in col.iter().enumerate() {
                if !coeff.is_zero() {
                    out[r].add_scaled(&v[c], coeff);
                }
            }
        }
        Ok(out)
    }

    fn eval_monomial(
        &self,
        m: &Monomial,
        xis: &[Vec<MPoly>],
        a: &Algebra,
        ctx: &ActionContext,
    ) -> Result<Vec<MPoly>> {
        match m {
            Monomial::Leaf { var, decoration } => {
                let v = xis.get(*var - 1).ok_or(Error::UnassignedVariable {
                    var: *var,
                })?;
                self.apply_decoration(ctx, decoration, v)
            }
            Monomial::Product(l, r) => {
                let lv = self.eval_monomial(l, xis, a, ctx)?;
                if lv.iter().all(MPoly::is_zero) {
                    return Ok(lv);
                }
                let rv = self.eval_monomial(r, xis, a, ctx)?;
                Ok(self.multiply(a, &lv, &rv))
            }
        }
    }

    /// Evaluate a polynomial at the generic elements.
    pub fn evaluate(
        &self,
        f: &HPolynomial,
        a: &Algebra,
        ctx: &ActionContext,
    ) -> Result<Vec<MPoly>> {
        let xis: Vec<Vec<MPoly>> = (0..self.k).map(|j| self.xi(j)).collect();
        let mut out = vec![MPoly::zero(); self.s];
        for (m, c) in f.terms() {
            let value = self.eval_monomial(m, &xis, a, ctx)?;
            for (o, x) in out.iter_mut().zip(&value) {
                o.add_scaled(x, c);
            }
        }
        Ok(out)
    }
}

/// Decide identity membership by generic-element evaluation. Works for any
/// polynomial, multilinear or not.
pub fn is_identity_generic(f: &HPolynomial, a: &Algebra, ctx: &ActionContext) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let ring = GenericEvaluationRing::new(a.dim(), f.max_var());
    let value = ring.evaluate(f, a, ctx)?;
    Ok(value.iter().all(MPoly::is_zero))
}

/// Exact dimension of the span of all `n`-fold products of decorated
/// generic elements on `k` generic elements: evaluate every degree-`n`
/// monomial (all bracketings, variable words, decoration words) and take
/// the rank of the coefficient vectors.
pub fn generic_span_dimension(
    a: &Algebra,
    ctx: &ActionContext,
    alphabet: &DecorationAlphabet,
    k: usize,
    n: usize,
    cap: usize,
) -> Result<usize> {
    let monomials = super::enumerate_degree_n_monomials(n, k, alphabet, cap)?;
    let ring = GenericEvaluationRing::new(a.dim(), k);
    let xis: Vec<Vec<MPoly>> = (0..k).map(|j| ring.xi(j)).collect();

    // Map (coordinate, exponent vector) pairs to column indices on the fly.
    let mut columns: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut raw_rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let value = ring.eval_monomial(m, &xis, a, ctx)?;
        let mut row: Vec<(usize, Rational)> = Vec::new();
        for (i, poly) in value.iter().enumerate() {
            for (exps, c) in poly.terms() {
                let next = columns.len();
                let col = *columns
                    .entry((i, exps.clone()))
                    .or_insert(next);
                row.push((col, c.clone()));
            }
        }
        raw_rows.push(row);
    }
    let mut matrix = Matrix::new(columns.len());
    for mut row in raw_rows {
        row.sort_by_key(|(c, _)| *c);
        matrix.push_row(row as SparseRow)?;
    }
    Ok(matrix.rank(RankMode::Exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::exactlin::rat;
    use crate::freealg::{parse_polynomial, is_identity_multilinear};

    #[test]
    fn square_vanishes_on_zero_multiplication_algebra() {
        let a = Algebra::new("z1", vec!["z".into()], Vec::new()).unwrap();
        let plain = DecorationAlphabet::plain();
        let f = parse_polynomial("x1*x1", &plain).unwrap();
        assert!(is_identity_generic(&f, &a, &ActionContext::Trivial).unwrap());
    }

    #[test]
    fn idempotence_is_not_an_identity_of_the_ground_field() {
        // x^2 - x vanishes at every rational 0/1 sample a naive tester
        // might pick, but xi^2 - xi is not the zero polynomial.
        let a = f1();
        let plain = DecorationAlphabet::plain();
        let f = parse_polynomial("x1*x1 - x1", &plain).unwrap();
        assert!(!is_identity_generic(&f, &a, &ActionContext::Trivial).unwrap());
        let ring = GenericEvaluationRing::new(1, 1);
        let value = ring.evaluate(&f, &a, &ActionContext::Trivial).unwrap();
        assert_eq!(value[0].num_terms(), 2);
    }

    #[test]
    fn nonmultilinear_associativity_identity_detected() {
        let a = fz2();
        let plain = DecorationAlphabet::plain();
        let f = parse_polynomial("(x1*x1)*x1 - x1*(x1*x1)", &plain).unwrap();
        assert!(is_identity_generic(&f, &a, &ActionContext::Trivial).unwrap());
    }

    #[test]
    fn graded_square_of_odd_part_is_identity_generically() {
        let a = ut2();
        let g = ut2_grading();
        let alpha = DecorationAlphabet::grades(["0", "1"]);
        // Not multilinear: the same variable twice, both odd-projected.
        let f = parse_polynomial("x1^(1)*x1^(1)", &alpha).unwrap();
        assert!(is_identity_generic(&f, &a, &ActionContext::Graded(&g)).unwrap());
        let h = parse_polynomial("x1^(0)*x1^(0) - x1^(0)", &alpha).unwrap();
        assert!(!is_identity_generic(&h, &a, &ActionContext::Graded(&g)).unwrap());
    }

    #[test]
    fn agrees_with_multilinear_test_on_multilinear_inputs() {
        let alpha = DecorationAlphabet::grades(["0", "1"]);
        let a = ut2();
        let g = ut2_grading();
        let ctx = ActionContext::Graded(&g);
        for text in [
            "[x1^(0), x2^(0)]",
            "x1^(0)*x2^(1)",
            "x1^(1)*x2^(1)",
            "x1*x2 - x2*x1",
            "(x1*x2)*x3 - x1*(x2*x3)",
            "2*(x1^(1)*x2^(1)) + x1^(0)*x2^(1) - x1^(0)*x2^(1)",
        ] {
            let f = parse_polynomial(text, &alpha).unwrap();
            assert_eq!(
                is_identity_generic(&f, &a, &ctx).unwrap(),
                is_identity_multilinear(&f, &a, &ctx).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn polynomial_arithmetic_is_exact() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let mut p = MPoly::zero();
        p.add_scaled(&x, &rat(1, 2));
        p.add_scaled(&y, &rat(1, 3));
        // (x/2 + y/3)^2 = x^2/4 + xy/3 + y^2/9.
        let sq = p.mul(&p);
        assert_eq!(sq.num_terms(), 3);
        let terms: Vec<_> = sq.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 2], rat(1, 9)),
                (vec![1, 1], rat(1, 3)),
                (vec![2, 0], rat(1, 4)),
            ]
        );
        let mut q = sq.clone();
        q.add_scaled(&sq, &rat(-1, 1));
        assert!(q.is_zero());
    }

    #[test]
    fn span_dimension_small_cases() {
        let plain = DecorationAlphabet::plain();
        // Ground field, one generic element, squared: the span of xi^2.
        let a = f1();
        let d = generic_span_dimension(&a, &ActionContext::Trivial, &plain, 1, 2, 1000).unwrap();
        assert_eq!(d, 1);
        // ut2, one generic element squared: a single product vector.
        let a = ut2();
        let d = generic_span_dimension(&a, &ActionContext::Trivial, &plain, 1, 2, 1000).unwrap();
        assert_eq!(d, 1);
        // Two generic elements, degree 2: products xi_i xi_j, i,j in {1,2}.
        let d = generic_span_dimension(&a, &ActionContext::Trivial, &plain, 2, 2, 1000).unwrap();
        assert!(d <= 4, "four products span at most four directions");
        assert!(d >= 2);
    }

    #[test]
    fn span_dimension_respects_budget() {
        let a = ut2();
        let plain = DecorationAlphabet::plain();
        assert!(matches!(
            generic_span_dimension(&a, &ActionContext::Trivial, &plain, 3, 5, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
