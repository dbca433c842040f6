//! Codimension sequences: evaluation matrices for spaces of multilinear
//! decorated monomials and their ranks.
//!
//! The degree-`n` multilinear monomials (every bracket shape, every variable
//! order, every decoration word) span the multilinear slice of the free
//! algebra; a multilinear polynomial is an identity of `A` iff it vanishes
//! on every tuple of basis elements. The codimension — the dimension of the
//! multilinear slice modulo identities — is therefore the rank of the
//! matrix whose row for a monomial lists its evaluations on all `s^n` basis
//! tuples, coordinate by coordinate.
//!
//! For associative algebras the nonassociative bracketings collapse, and
//! the left-combed monomials alone span the quotient (`assoc` mode, `n!*d^n`
//! rows instead of `catalan(n-1)*n!*d^n`); the flag is accepted only after
//! the associator is verified to be an identity by generic evaluation.
//!
//! The graded codimension is computed twice — decorations interpreted as
//! direct projections, and again through the projector action produced by
//! the grading-to-action conversion — and the two ranks must agree; a
//! disagreement is a bug sentinel, never a valid outcome.

use crate::algebra::{grading_to_haction, Algebra, GeneralizedHAction, Grading};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Matrix, RankMode, SparseRow};
use crate::freealg::{
    enumerate_left_combed_monomials, enumerate_multilinear_monomials,
    evaluate_monomial_on_basis_tuple, is_identity_generic, ActionContext, Decoration,
    DecorationAlphabet, HPolynomial, Monomial,
};
use std::fmt::Write as _;

/// Which spanning space the evaluation matrix models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Plain multilinear monomials.
    Ordinary,
    /// Monomials decorated by acting-algebra basis elements.
    HAction,
    /// Monomials decorated by grade labels from the support.
    Graded,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Ordinary => "ordinary",
            Mode::HAction => "haction",
            Mode::Graded => "graded",
        }
    }
}

/// What to evaluate against: the algebra alone, an action, or a grading.
#[derive(Clone, Copy)]
pub enum Target<'a> {
    Ordinary,
    HAction(&'a GeneralizedHAction),
    Graded(&'a Grading),
}

/// Resource guardrails. Degree caps depend on how fast the monomial count
/// grows: `assoc` mode enumerates `n! * d^n` rows, plain nonassociative mode
/// `catalan(n-1) * n!`, decorated nonassociative mode `catalan(n-1) * n! *
/// d^n`. Caps are inclusive and overridable.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Max degree in assoc mode (decorated or not).
    pub max_n_assoc: usize,
    /// Max degree for nonassociative undecorated monomials.
    pub max_n_plain: usize,
    /// Max degree for nonassociative decorated monomials.
    pub max_n_decorated: usize,
    /// Hard cap on enumerated monomials (matrix rows).
    pub max_monomials: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n_assoc: 6,
            max_n_plain: 5,
            max_n_decorated: 4,
            max_monomials: 250_000,
        }
    }
}

impl Budget {
    /// No degree caps; the monomial cap stays as a memory safeguard.
    pub fn unrestricted() -> Self {
        Budget {
            max_n_assoc: usize::MAX,
            max_n_plain: usize::MAX,
            max_n_decorated: usize::MAX,
            max_monomials: 4_000_000,
        }
    }

    fn check_degree(&self, n: usize, assoc: bool, decorated: bool) -> Result<()> {
        let (cap, what) = if assoc {
            (self.max_n_assoc, "degree in assoc mode")
        } else if decorated {
            (self.max_n_decorated, "degree for decorated nonassociative monomials")
        } else {
            (self.max_n_plain, "degree for nonassociative monomials")
        };
        if n > cap {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                limit: cap as u64,
                requested: n as u64,
            });
        }
        Ok(())
    }
}

/// The evaluation matrix of all degree-`n` multilinear monomials on all
/// basis tuples.
///
/// Row `i` belongs to `monomials[i]` (enumeration order: shape, then
/// permutation, then decoration). Column `t * s + r` holds coordinate `r`
/// of the value on the basis tuple with big-endian base-`s` code `t` (the
/// tuple `(b_1, ..., b_n)` has code `sum b_i s^(n-i)`).
pub struct EvaluationMatrix {
    pub n: usize,
    pub mode: Mode,
    pub assoc: bool,
    pub monomials: Vec<Monomial>,
    pub matrix: Matrix,
    s: usize,
}

/// Monomials whose rows form a basis of the row space, with the canonical
/// reduced row basis; its size is the codimension.
pub struct QuotientBasis {
    pub pivot_monomials: Vec<Monomial>,
    pub reduced_basis: Matrix,
}

impl EvaluationMatrix {
    /// Dimension of the underlying algebra.
    pub fn adim(&self) -> usize {
        self.s
    }

    /// Column index for a basis tuple and output coordinate.
    pub fn column_index(&self, tuple: &[usize], coord: usize) -> usize {
        let mut t = 0usize;
        for b in tuple {
            t = t * self.s + b;
        }
        t * self.s + coord
    }

    /// Inverse of [`EvaluationMatrix::column_index`].
    pub fn column_to_tuple(&self, col: usize) -> (Vec<usize>, usize) {
        let coord = col % self.s;
        let mut t = col / self.s;
        let mut tuple = vec![0usize; self.n];
        for slot in tuple.iter_mut().rev() {
            *slot = t % self.s;
            t /= self.s;
        }
        (tuple, coord)
    }

    /// The codimension: rank of the evaluation matrix.
    pub fn codimension(&self, mode: RankMode) -> usize {
        self.matrix.rank(mode)
    }

    /// Monomials forming a basis of the quotient, plus the reduced rows.
    pub fn quotient_basis(&self) -> QuotientBasis {
        let rsb = self.matrix.row_space_basis();
        QuotientBasis {
            pivot_monomials: rsb
                .pivot_rows
                .iter()
                .map(|&i| self.monomials[i].clone())
                .collect(),
            reduced_basis: rsb.basis,
        }
    }

    /// Sparse triplet dump, one `row col value` line per nonzero entry,
    /// rows and columns as documented on the type. Stable byte-for-byte.
    pub fn triplets(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.matrix.rows().iter().enumerate() {
            for (c, v) in row {
                writeln!(out, "{i} {c} {}", format_rational(v)).expect("write to string");
            }
        }
        out
    }
}

fn alphabet_for(target: &Target) -> (Mode, DecorationAlphabet) {
    match target {
        Target::Ordinary => (Mode::Ordinary, DecorationAlphabet::plain()),
        Target::HAction(act) => (Mode::HAction, DecorationAlphabet::h_basis(act.hdim())),
        Target::Graded(g) => (Mode::Graded, DecorationAlphabet::grades(g.support_labels())),
    }
}

fn context_for<'a>(target: &Target<'a>) -> ActionContext<'a> {
    match target {
        Target::Ordinary => ActionContext::Trivial,
        Target::HAction(act) => ActionContext::Action(act),
        Target::Graded(g) => ActionContext::Graded(g),
    }
}

/// Verify associativity by the generic-element test on the associator.
pub fn verify_associative(a: &Algebra) -> Result<()> {
    let l = |v: usize| Monomial::leaf(v, Decoration::None);
    let mut assoc_defect = HPolynomial::from_monomial(Monomial::product(
        Monomial::product(l(1), l(2)),
        l(3),
    ));
    assoc_defect = assoc_defect.sub(&HPolynomial::from_monomial(Monomial::product(
        l(1),
        Monomial::product(l(2), l(3)),
    )));
    if is_identity_generic(&assoc_defect, a, &ActionContext::Trivial)? {
        Ok(())
    } else {
        Err(Error::NotAssociative {
            name: a.name().to_string(),
        })
    }
}

/// Build the evaluation matrix for degree `n` against the given target.
///
/// Row construction exploits multilinearity: for each bracket shape and
/// decoration word the identity-permutation monomial is evaluated once on
/// every basis tuple, and rows for the permuted monomials are obtained by
/// permuting tuple digits — the value of the permuted monomial on tuple `b`
/// is the value of the base monomial on `b` composed with the permutation.
pub fn evaluation_matrix(
    n: usize,
    a: &Algebra,
    target: Target,
    assoc: bool,
    budget: &Budget,
) -> Result<EvaluationMatrix> {
    let (mode, alphabet) = alphabet_for(&target);
    let ctx = context_for(&target);
    budget.check_degree(n, assoc, alphabet.size() > 1)?;
    if assoc {
        verify_associative(a)?;
    }

    let monomials = if assoc {
        enumerate_left_combed_monomials(n, &alphabet, budget.max_monomials)?
    } else {
        enumerate_multilinear_monomials(n, &alphabet, budget.max_monomials)?
    };

    let s = a.dim();
    let ncols = s.checked_pow(n as u32).and_then(|t| t.checked_mul(s)).ok_or(
        Error::BudgetExceeded {
            what: "evaluation matrix columns".to_string(),
            limit: u64::MAX,
            requested: u64::MAX,
        },
    )?;

    // Enumeration order is shape-major, then permutation, then decoration;
    // bases share (shape, decoration) across permutations. Identify the
    // blocks by their sizes.
    let d = alphabet.size();
    let n_perms = (1..=n).product::<usize>();
    let n_decos = d.checked_pow(n as u32).expect("within budget");
    let shapes = monomials.len() / (n_perms * n_decos);
    debug_assert_eq!(monomials.len(), shapes * n_perms * n_decos);

    let mut rows: Vec<SparseRow> = vec![SparseRow::new(); monomials.len()];
    let mut tuple = vec![0usize; n];
    for shape_idx in 0..shapes {
        for deco_idx in 0..n_decos {
            // The base monomial: identity permutation with this shape and
            // decoration word.
            let base_idx = (shape_idx * n_perms) * n_decos + deco_idx;
            let base = &monomials[base_idx];
            debug_assert!(is_identity_permutation(base, n));

            // Evaluate the base on every tuple.
            tuple.iter_mut().for_each(|b| *b = 0);
            let mut base_values: Vec<(Vec<usize>, SparseRow)> = Vec::new();
            loop {
                let value = evaluate_monomial_on_basis_tuple(base, &tuple, a, &ctx)?;
                if !value.is_empty() {
                    base_values.push((tuple.clone(), value));
                }
                if !advance(&mut tuple, s) {
                    break;
                }
            }

            // Scatter into each permutation's row. For the monomial whose
            // leaf at position p carries variable perm[p-1], the value on
            // tuple b equals the base value on c where c[p-1] =
            // b[perm[p-1]-1]; equivalently b[perm[p-1]-1] = c[p-1].
            for perm_idx in 0..n_perms {
                let row_idx = (shape_idx * n_perms + perm_idx) * n_decos + deco_idx;
                let perm = monomials[row_idx].variables();
                let mut row: SparseRow = Vec::new();
                let mut b = vec![0usize; n];
                for (c, value) in &base_values {
                    for (p, &v) in perm.iter().enumerate() {
                        b[v - 1] = c[p];
                    }
                    let mut t = 0usize;
                    for &digit in &b {
                        t = t * s + digit;
                    }
                    for (r, x) in value {
                        row.push((t * s + r, x.clone()));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                rows[row_idx] = row;
            }
        }
    }

    let mut matrix = Matrix::new(ncols);
    for row in rows {
        matrix.push_row(row)?;
    }
    Ok(EvaluationMatrix {
        n,
        mode,
        assoc,
        monomials,
        matrix,
        s,
    })
}

fn is_identity_permutation(m: &Monomial, n: usize) -> bool {
    m.variables() == (1..=n).collect::<Vec<_>>()
}

fn advance(tuple: &mut [usize], s: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < s {
            return true;
        }
        *slot = 0;
    }
    false
}

/// The codimension for the given target: rank of the evaluation matrix.
pub fn codimension(
    n: usize,
    a: &Algebra,
    target: Target,
    assoc: bool,
    budget: &Budget,
    rank_mode: RankMode,
) -> Result<usize> {
    Ok(evaluation_matrix(n, a, target, assoc, budget)?.codimension(rank_mode))
}

/// The graded codimension, computed through two independent pipelines —
/// grade decorations as direct projections, and acting-basis decorations
/// through the projector action derived from the grading — which must
/// agree.
pub fn graded_codimension(
    n: usize,
    a: &Algebra,
    g: &Grading,
    assoc: bool,
    budget: &Budget,
    rank_mode: RankMode,
) -> Result<usize> {
    let direct = codimension(n, a, Target::Graded(g), assoc, budget, rank_mode)?;
    let act = grading_to_haction(a, g)?;
    let via_action = codimension(n, a, Target::HAction(&act), assoc, budget, rank_mode)?;
    if direct != via_action {
        return Err(Error::CrossCheckMismatch {
            context: format!("graded codimension of {} at degree {n}", a.name()),
            left: format!("direct projection pipeline: {direct}"),
            right: format!("projector action pipeline: {via_action}"),
        });
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::exactlin::rat;

    fn budget() -> Budget {
        Budget::default()
    }

    /// Slow reference construction: evaluate every monomial on every tuple
    /// directly, no permutation scatter.
    fn evaluation_matrix_direct(
        n: usize,
        a: &Algebra,
        target: Target,
        assoc: bool,
    ) -> EvaluationMatrix {
        let (mode, alphabet) = alphabet_for(&target);
        let ctx = context_for(&target);
        let monomials = if assoc {
            enumerate_left_combed_monomials(n, &alphabet, usize::MAX).unwrap()
        } else {
            enumerate_multilinear_monomials(n, &alphabet, usize::MAX).unwrap()
        };
        let s = a.dim();
        let mut matrix = Matrix::new(s.pow(n as u32) * s);
        for m in &monomials {
            let mut row: SparseRow = Vec::new();
            let mut tuple = vec![0usize; n];
            loop {
                let value = evaluate_monomial_on_basis_tuple(m, &tuple, a, &ctx).unwrap();
                let mut t = 0usize;
                for &digit in &tuple {
                    t = t * s + digit;
                }
                for (r, x) in value {
                    row.push((t * s + r, x));
                }
                if !advance(&mut tuple, s) {
                    break;
                }
            }
            row.sort_by_key(|(c, _)| *c);
            matrix.push_row(row).unwrap();
        }
        EvaluationMatrix {
            n,
            mode,
            assoc,
            monomials,
            matrix,
            s,
        }
    }

    #[test]
    fn permutation_scatter_matches_direct_evaluation() {
        let a = ut2();
        let g = ut2_grading();
        for n in 1..=3 {
            let fast = evaluation_matrix(n, &a, Target::Graded(&g), false, &budget()).unwrap();
            let slow = evaluation_matrix_direct(n, &a, Target::Graded(&g), false);
            assert_eq!(fast.monomials, slow.monomials);
            assert_eq!(fast.matrix.rows(), slow.matrix.rows(), "n = {n}");
        }
        let m = m2();
        let fast = evaluation_matrix(3, &m, Target::Ordinary, false, &budget()).unwrap();
        let slow = evaluation_matrix_direct(3, &m, Target::Ordinary, false);
        assert_eq!(fast.matrix.rows(), slow.matrix.rows());
        let act = grading_to_haction(&fz2(), &fz2_grading()).unwrap();
        let fast = evaluation_matrix(3, &fz2(), Target::HAction(&act), true, &budget()).unwrap();
        let slow = evaluation_matrix_direct(3, &fz2(), Target::HAction(&act), true);
        assert_eq!(fast.matrix.rows(), slow.matrix.rows());
    }

    #[test]
    fn ground_field_matrix_is_all_ones() {
        let a = f1();
        let em = evaluation_matrix(3, &a, Target::Ordinary, false, &budget()).unwrap();
        assert_eq!(em.matrix.nrows(), 12);
        assert_eq!(em.matrix.ncols(), 1);
        for row in em.matrix.rows() {
            assert_eq!(row, &vec![(0usize, rat(1, 1))]);
        }
        assert_eq!(em.codimension(RankMode::Exact), 1);
    }

    #[test]
    fn ut2_degree_two_has_rank_two() {
        let a = ut2();
        let em = evaluation_matrix(2, &a, Target::Ordinary, false, &budget()).unwrap();
        assert_eq!(em.matrix.nrows(), 2);
        assert_eq!(em.matrix.ncols(), 27);
        assert_eq!(em.codimension(RankMode::Exact), 2);
        let qb = em.quotient_basis();
        assert_eq!(qb.pivot_monomials.len(), 2);
        assert_eq!(qb.reduced_basis.nrows(), 2);
    }

    #[test]
    fn ut2_codimension_sequence() {
        // 1, 2, 6, 18, 50: the classic sequence 2^(n-1)(n-2) + 2.
        let a = ut2();
        let want = [1usize, 2, 6, 18, 50];
        for (i, w) in want.iter().enumerate() {
            let n = i + 1;
            let c = codimension(n, &a, Target::Ordinary, true, &budget(), RankMode::Exact)
                .unwrap();
            assert_eq!(c, *w, "degree {n}");
        }
        // Nonassociative mode agrees while within its budget.
        for n in 1..=4 {
            let c = codimension(n, &a, Target::Ordinary, false, &budget(), RankMode::Exact)
                .unwrap();
            assert_eq!(c, want[n - 1], "nonassoc degree {n}");
        }
    }

    #[test]
    fn degree_one_codimension_is_one_for_nonzero_products() {
        for a in [ut2(), fz2(), m2(), f1(), zero3()] {
            let c = codimension(1, &a, Target::Ordinary, false, &budget(), RankMode::Exact)
                .unwrap();
            assert_eq!(c, 1, "{}", a.name());
        }
    }

    #[test]
    fn zero_multiplication_kills_degree_two() {
        let a = zero3();
        let c = codimension(2, &a, Target::Ordinary, false, &budget(), RankMode::Exact).unwrap();
        assert_eq!(c, 0);
    }

    #[test]
    fn graded_degree_one_counts_support_components() {
        let a = ut2();
        let g = ut2_grading();
        let c = graded_codimension(1, &a, &g, false, &budget(), RankMode::Exact).unwrap();
        assert_eq!(c, 2);
    }

    #[test]
    fn group_algebra_graded_codimension_is_two_to_the_n() {
        let a = fz2();
        let g = fz2_grading();
        for n in 1..=4 {
            let c = graded_codimension(n, &a, &g, true, &budget(), RankMode::Exact).unwrap();
            assert_eq!(c, 1 << n, "degree {n}");
        }
    }

    #[test]
    fn graded_pipelines_agree_on_ut2() {
        let a = ut2();
        let g = ut2_grading();
        for n in 1..=3 {
            graded_codimension(n, &a, &g, false, &budget(), RankMode::Exact).unwrap();
        }
        graded_codimension(4, &a, &g, true, &budget(), RankMode::Exact).unwrap();
    }

    #[test]
    fn sandwich_inequality_on_graded_fixtures() {
        for (a, g) in [(ut2(), ut2_grading()), (fz2(), fz2_grading())] {
            let t = g.support().len();
            for n in 1..=3 {
                let c = codimension(n, &a, Target::Ordinary, false, &budget(), RankMode::Exact)
                    .unwrap();
                let cgr = graded_codimension(n, &a, &g, false, &budget(), RankMode::Exact)
                    .unwrap();
                assert!(c <= cgr, "{} degree {n}", a.name());
                assert!(cgr <= t.pow(n as u32) * c, "{} degree {n}", a.name());
            }
        }
    }

    #[test]
    fn action_codimension_with_trivial_action_is_ordinary() {
        let a = ut2();
        let act = a.trivial_action();
        for n in 1..=3 {
            let ordinary =
                codimension(n, &a, Target::Ordinary, false, &budget(), RankMode::Exact).unwrap();
            let trivial =
                codimension(n, &a, Target::HAction(&act), false, &budget(), RankMode::Exact)
                    .unwrap();
            assert_eq!(ordinary, trivial, "degree {n}");
        }
    }

    #[test]
    fn assoc_flag_requires_associativity() {
        // a*a = b, a*b = a is not associative: (aa)a = 0 but a(aa) = a.
        let a = Algebra::new(
            "lopsided",
            vec!["a".into(), "b".into()],
            vec![(0, 0, 1, rat(1, 1)), (0, 1, 0, rat(1, 1))],
        )
        .unwrap();
        assert!(matches!(
            evaluation_matrix(2, &a, Target::Ordinary, true, &budget()),
            Err(Error::NotAssociative { .. })
        ));
        // Nonassociative mode still works.
        let c = codimension(2, &a, Target::Ordinary, false, &budget(), RankMode::Exact).unwrap();
        assert!(c >= 1);
    }

    #[test]
    fn budget_caps_by_mode() {
        let a = ut2();
        let g = ut2_grading();
        assert!(matches!(
            evaluation_matrix(6, &a, Target::Ordinary, false, &budget()),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            evaluation_matrix(5, &a, Target::Graded(&g), false, &budget()),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            evaluation_matrix(7, &a, Target::Ordinary, true, &budget()),
            Err(Error::BudgetExceeded { .. })
        ));
        // Overriding lifts the degree cap.
        let big = Budget::unrestricted();
        assert!(evaluation_matrix(5, &f1(), Target::Ordinary, false, &big).is_ok());
    }

    #[test]
    fn column_encoding_round_trips() {
        let a = ut2();
        let em = evaluation_matrix(2, &a, Target::Ordinary, false, &budget()).unwrap();
        for col in [0usize, 1, 5, 26] {
            let (tuple, coord) = em.column_to_tuple(col);
            assert_eq!(em.column_index(&tuple, coord), col);
        }
        // Big-endian tuple code 1*3 + 2 = 5, times 3 coordinates.
        assert_eq!(em.column_index(&[1, 2], 0), 15);
    }

    #[test]
    fn triplet_dump_is_stable() {
        let a = f1();
        let em = evaluation_matrix(2, &a, Target::Ordinary, false, &budget()).unwrap();
        assert_eq!(em.triplets(), "0 0 1\n1 0 1\n");
    }

    #[test]
    fn hybrid_rank_agrees_with_exact() {
        let a = ut2();
        let g = ut2_grading();
        let em = evaluation_matrix(3, &a, Target::Graded(&g), false, &budget()).unwrap();
        let exact = em.codimension(RankMode::Exact);
        let hybrid = em.codimension(RankMode::Hybrid { seed: 99 });
        assert_eq!(exact, hybrid);
    }
}
