//! Finite-dimensional algebras over the rationals, with set gradings and
//! generalized actions of a finite-dimensional associative unital algebra.
//!
//! An algebra is a basis-labelled structure-constant tensor; nothing here
//! assumes associativity, commutativity, or a unit unless explicitly checked.
//! A grading assigns one label per basis vector and is *valid* when the
//! product of any two homogeneous components lands inside a single component;
//! the induced partial product on labels is derived, never supplied. A valid
//! grading by a label set `T` gives rise to an action of the commutative
//! algebra spanned by one idempotent projector per support label, with
//! coproduct witnesses obtained by convolving the label product
//! ([`grading_to_haction`]). Arbitrary generalized actions are validated (or
//! their witnesses derived) by [`action::validate_haction`].

mod action;
mod simple;

pub use action::{validate_haction, ActionWitnesses, GeneralizedHAction, PairTensor};
pub use simple::{
    is_h_simple, verify_ideal_certificate, Certificate, SimplicityOptions, SimplicityVerdict,
};

use crate::error::{Error, Result};
use crate::exactlin::{normalize_row, Rational, SparseRow};
use num::Zero;
use std::collections::BTreeMap;

/// Finite-dimensional algebra given by structure constants on a labelled
/// basis: `a_i * a_j = sum_k table[i][j][k] a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    basis: Vec<String>,
    /// `table[i][j]` is the sparse coordinate vector of `a_i * a_j`.
    table: Vec<Vec<SparseRow>>,
}

impl Algebra {
    /// Build an algebra from sparse structure constants `(i, j, k, value)`
    /// meaning `a_i * a_j` has coefficient `value` on `a_k`. Duplicate
    /// entries accumulate.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::Document {
                detail: "algebra dimension must be at least 1".to_string(),
            });
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for label in &basis {
                if !seen.insert(label) {
                    return Err(Error::Document {
                        detail: format!("duplicate basis label {label:?}"),
                    });
                }
            }
        }
        let mut raw: Vec<Vec<SparseRow>> = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Document {
                    detail: format!(
                        "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                    ),
                });
            }
            raw[i][j].push((k, v));
        }
        let table = raw
            .into_iter()
            .map(|row| row.into_iter().map(normalize_row).collect())
            .collect();
        Ok(Algebra {
            name: name.into(),
            dim,
            basis,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// Sparse coordinates of the product of two basis vectors.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseRow {
        &self.table[i][j]
    }

    /// Iterate all nonzero structure constants as `(i, j, k, value)`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.table.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().flat_map(move |(j, prod)| {
                prod.iter().map(move |(k, v)| (i, j, *k, v))
            })
        })
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        for (len, side) in [(u.len(), "left"), (v.len(), "right")] {
            if len != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: len,
                    context: format!("{side} factor of a product in {}", self.name),
                });
            }
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &uv * c;
                }
            }
        }
        Ok(out)
    }

    /// Product of two sparse coordinate vectors (indices must be in range).
    pub fn multiply_sparse(&self, u: &SparseRow, v: &SparseRow) -> SparseRow {
        if u.is_empty() || v.is_empty() {
            return Vec::new();
        }
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, ui) in u {
            for (j, vj) in v {
                let uv = ui * vj;
                for (k, c) in &self.table[*i][*j] {
                    let slot = acc.entry(*k).or_insert_with(Rational::zero);
                    *slot += &uv * c;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Dense matrix of left multiplication by `a_i` (column `c` holds the
    /// coordinates of `a_i * a_c`).
    pub fn left_mult_matrix(&self, i: usize) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (c, cell) in self.table[i].iter().enumerate() {
            for (k, v) in cell {
                m[*k][c] = v.clone();
            }
        }
        m
    }

    /// Dense matrix of right multiplication by `a_i` (column `c` holds the
    /// coordinates of `a_c * a_i`).
    pub fn right_mult_matrix(&self, i: usize) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (c, row) in self.table.iter().enumerate() {
            for (k, v) in &row[i] {
                m[*k][c] = v.clone();
            }
        }
        m
    }

    /// The action of the one-dimensional unital algebra: every algebra is a
    /// module over the base field, acting by identity.
    pub fn trivial_action(&self) -> GeneralizedHAction {
        action::trivial_action(self.dim)
    }
}

/// A validated set grading: one label per basis vector such that every
/// product of homogeneous components lies in a single component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    labels: Vec<String>,
    /// basis index -> label index
    degree: Vec<usize>,
    /// label indices with a nonzero component, ascending
    support: Vec<usize>,
    /// partial product on support label indices: `(s, t) -> r` whenever the
    /// product of components `s` and `t` is nonzero and lies in component `r`
    star: BTreeMap<(usize, usize), usize>,
}

impl Grading {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    /// Label index of a basis vector.
    pub fn degree_of(&self, basis_index: usize) -> usize {
        self.degree[basis_index]
    }

    /// Label indices whose component is nonzero, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_labels(&self) -> Vec<String> {
        self.support.iter().map(|&s| self.labels[s].clone()).collect()
    }

    /// The derived partial product on label indices.
    pub fn star(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.star
    }

    /// Resolve a label string to its index.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Project a dense coordinate vector onto the component of `label_index`
    /// (zero out all coordinates of different degree).
    pub fn project_dense(&self, label_index: usize, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .map(|(k, x)| {
                if self.degree[k] == label_index {
                    x.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    /// Sparse projection onto the component of `label_index`.
    pub fn project_sparse(&self, label_index: usize, v: &SparseRow) -> SparseRow {
        v.iter()
            .filter(|(k, _)| self.degree[*k] == label_index)
            .cloned()
            .collect()
    }
}

/// Check that a degree map defines a grading and derive its partial label
/// product. Fails with [`Error::InconsistentGrading`] when the product of two
/// components meets more than one component.
pub fn validate_grading(a: &Algebra, labels: Vec<String>, degree: Vec<usize>) -> Result<Grading> {
    if labels.is_empty() {
        return Err(Error::InvalidDegreeMap {
            detail: "label set must be nonempty".to_string(),
        });
    }
    {
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::InvalidDegreeMap {
                    detail: format!("duplicate grading label {label:?}"),
                });
            }
        }
    }
    if degree.len() != a.dim() {
        return Err(Error::InvalidDegreeMap {
            detail: format!(
                "degree map covers {} basis vectors, algebra has {}",
                degree.len(),
                a.dim()
            ),
        });
    }
    if let Some(bad) = degree.iter().find(|&&d| d >= labels.len()) {
        return Err(Error::InvalidDegreeMap {
            detail: format!("degree index {bad} out of range for {} labels", labels.len()),
        });
    }

    let support: Vec<usize> = (0..labels.len())
        .filter(|l| degree.contains(l))
        .collect();

    // For each pair of support labels, gather every component this product
    // touches; a valid grading touches at most one.
    let mut star = BTreeMap::new();
    for &s in &support {
        for &t in &support {
            let mut touched: Option<usize> = None;
            for i in (0..a.dim()).filter(|&i| degree[i] == s) {
                for j in (0..a.dim()).filter(|&j| degree[j] == t) {
                    for (k, _) in a.basis_product(i, j) {
                        let r = degree[*k];
                        match touched {
                            None => touched = Some(r),
                            Some(prev) if prev == r => {}
                            Some(prev) => {
                                return Err(Error::InconsistentGrading {
                                    s: labels[s].clone(),
                                    t: labels[t].clone(),
                                    first: labels[prev].clone(),
                                    second: labels[r].clone(),
                                });
                            }
                        }
                    }
                }
            }
            if let Some(r) = touched {
                star.insert((s, t), r);
            }
        }
    }

    Ok(Grading {
        labels,
        degree,
        support,
        star,
    })
}

/// Turn a valid grading into the generalized action of the commutative
/// algebra spanned by one idempotent projector per support label. The
/// coproduct witness of the projector onto component `r` is the sum of
/// `h_s (x) h_t` over all support pairs with `s * t = r`; the flipped
/// witness is zero. The result is re-validated before being returned.
pub fn grading_to_haction(a: &Algebra, g: &Grading) -> Result<GeneralizedHAction> {
    let m = g.support().len();
    let hbasis: Vec<String> = g.support_labels();
    // Multiplication of projectors: h_u h_v = delta_{uv} h_u.
    let mut htable = vec![vec![Vec::new(); m]; m];
    for (u, row) in htable.iter_mut().enumerate() {
        row[u] = vec![(u, Rational::one())];
    }
    let unit = vec![Rational::one(); m];
    let mut rho = Vec::with_capacity(m);
    for &label in g.support() {
        let mut mat = vec![vec![Rational::zero(); a.dim()]; a.dim()];
        for (k, d) in g.degree().iter().enumerate() {
            if *d == label {
                mat[k][k] = Rational::one();
            }
        }
        rho.push(mat);
    }
    let hindex: BTreeMap<usize, usize> = g
        .support()
        .iter()
        .enumerate()
        .map(|(u, &label)| (label, u))
        .collect();
    let mut delta: Vec<PairTensor> = vec![BTreeMap::new(); m];
    let theta: Vec<PairTensor> = vec![BTreeMap::new(); m];
    for (&(s, t), &r) in g.star() {
        delta[hindex[&r]].insert((hindex[&s], hindex[&t]), Rational::one());
    }
    let action = GeneralizedHAction::new(
        hbasis,
        htable,
        unit,
        rho,
        Some(ActionWitnesses { delta, theta }),
    )?;
    validate_haction(a, &action)
}

use num::One;

#[cfg(test)]
pub(crate) mod test_fixtures {
    use super::*;
    use crate::exactlin::rat;

    /// Upper triangular 2x2 matrices, basis (e11, e22, e12).
    pub fn ut2() -> Algebra {
        Algebra::new(
            "ut2",
            vec!["e11".into(), "e22".into(), "e12".into()],
            vec![
                (0, 0, 0, rat(1, 1)), // e11 e11 = e11
                (1, 1, 1, rat(1, 1)), // e22 e22 = e22
                (0, 2, 2, rat(1, 1)), // e11 e12 = e12
                (2, 1, 2, rat(1, 1)), // e12 e22 = e12
            ],
        )
        .unwrap()
    }

    /// Group algebra of the two-element group, basis (1, g).
    pub fn fz2() -> Algebra {
        Algebra::new(
            "fz2",
            vec!["1".into(), "g".into()],
            vec![
                (0, 0, 0, rat(1, 1)),
                (0, 1, 1, rat(1, 1)),
                (1, 0, 1, rat(1, 1)),
                (1, 1, 0, rat(1, 1)),
            ],
        )
        .unwrap()
    }

    /// Full 2x2 matrix algebra, basis (e11, e12, e21, e22).
    pub fn m2() -> Algebra {
        let mut entries = Vec::new();
        let idx = |r: usize, c: usize| r * 2 + c;
        for r in 0..2 {
            for c in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        if c == r2 {
                            entries.push((idx(r, c), idx(r2, c2), idx(r, c2), rat(1, 1)));
                        }
                    }
                }
            }
        }
        Algebra::new(
            "m2",
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            entries,
        )
        .unwrap()
    }

    /// The base field itself.
    pub fn f1() -> Algebra {
        Algebra::new("f1", vec!["a1".into()], vec![(0, 0, 0, rat(1, 1))]).unwrap()
    }

    /// Three-dimensional algebra with zero multiplication.
    pub fn zero3() -> Algebra {
        Algebra::new(
            "zero3",
            vec!["z1".into(), "z2".into(), "z3".into()],
            Vec::new(),
        )
        .unwrap()
    }

    pub fn ut2_grading() -> Grading {
        validate_grading(&ut2(), vec!["0".into(), "1".into()], vec![0, 0, 1]).unwrap()
    }

    pub fn fz2_grading() -> Grading {
        validate_grading(&fz2(), vec!["0".into(), "1".into()], vec![0, 1]).unwrap()
    }

    /// A grading on the ground field whose label set has an unused entry:
    /// label "x" grades nothing.
    pub fn f1_two_label_grading() -> Grading {
        validate_grading(&f1(), vec!["x".into(), "y".into()], vec![1]).unwrap()
    }

    /// The group algebra of an order-two group acting on m2, with the
    /// non-identity basis element realized by the transpose map
    /// (an anti-automorphism): it swaps e12 and e21 and fixes the diagonal.
    pub fn m2_transpose_action() -> GeneralizedHAction {
        let mut id = vec![vec![Rational::zero(); 4]; 4];
        for (k, row) in id.iter_mut().enumerate() {
            row[k] = Rational::one();
        }
        let mut transpose = vec![vec![Rational::zero(); 4]; 4];
        transpose[0][0] = Rational::one();
        transpose[3][3] = Rational::one();
        transpose[1][2] = Rational::one();
        transpose[2][1] = Rational::one();
        let raw = GeneralizedHAction::new(
            vec!["1".into(), "g".into()],
            vec![
                vec![vec![(0, rat(1, 1))], vec![(1, rat(1, 1))]],
                vec![vec![(1, rat(1, 1))], vec![(0, rat(1, 1))]],
            ],
            vec![rat(1, 1), rat(0, 1)],
            vec![id, transpose],
            None,
        )
        .unwrap();
        validate_haction(&m2(), &raw).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_fixtures::*;
    use super::*;
    use crate::exactlin::rat;

    fn dense(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn multiply_matches_matrix_unit_rules() {
        let a = ut2();
        // e11 * e12 = e12
        assert_eq!(
            a.multiply(&dense(&[1, 0, 0]), &dense(&[0, 0, 1])).unwrap(),
            dense(&[0, 0, 1])
        );
        // e12 * e11 = 0
        assert_eq!(
            a.multiply(&dense(&[0, 0, 1]), &dense(&[1, 0, 0])).unwrap(),
            dense(&[0, 0, 0])
        );
        // (e11 + e12)(e22 + e12) = e12 + e12 = 2 e12
        assert_eq!(
            a.multiply(&dense(&[1, 0, 1]), &dense(&[0, 1, 1])).unwrap(),
            dense(&[0, 0, 2])
        );
    }

    #[test]
    fn multiply_rejects_wrong_dimension() {
        let a = ut2();
        assert!(matches!(
            a.multiply(&dense(&[1, 0]), &dense(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sparse_multiply_agrees_with_dense() {
        let a = m2();
        let u = dense(&[1, 2, 0, -1]);
        let v = dense(&[0, 1, 3, 1]);
        let d = a.multiply(&u, &v).unwrap();
        let s = a.multiply_sparse(
            &crate::exactlin::dense_to_sparse(&u),
            &crate::exactlin::dense_to_sparse(&v),
        );
        assert_eq!(crate::exactlin::sparse_to_dense(&s, 4), d);
    }

    #[test]
    fn ut2_diagonal_offdiagonal_grading_validates() {
        let g = ut2_grading();
        assert_eq!(g.support(), &[0, 1]);
        let star: Vec<((usize, usize), usize)> =
            g.star().iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(star, vec![((0, 0), 0), ((0, 1), 1), ((1, 0), 1)]);
        // The off-diagonal square is zero, so (1, 1) is outside the domain.
        assert!(!g.star().contains_key(&(1, 1)));
    }

    /// Every assignment of degrees to the matrix-unit basis of ut2 happens to
    /// be a valid set grading (products of basis pairs never mix degrees), so
    /// the swapped map must validate too -- with a different label product.
    #[test]
    fn ut2_swapped_degree_map_is_still_a_grading() {
        let a = ut2();
        // Oracle: check directly that every component product is single
        // graded for the degree map e11 -> 0, e22 -> 1, e12 -> 0.
        let degree = [0usize, 1, 0];
        for s in 0..2 {
            for t in 0..2 {
                let mut targets = std::collections::BTreeSet::new();
                for i in (0..3).filter(|&i| degree[i] == s) {
                    for j in (0..3).filter(|&j| degree[j] == t) {
                        for (k, _) in a.basis_product(i, j) {
                            targets.insert(degree[*k]);
                        }
                    }
                }
                assert!(targets.len() <= 1, "component product mixes degrees");
            }
        }
        let g = validate_grading(&a, vec!["0".into(), "1".into()], vec![0, 1, 0]).unwrap();
        let star: Vec<((usize, usize), usize)> =
            g.star().iter().map(|(&k, &v)| (k, v)).collect();
        // e11 e11, e11 e12 land in component 0; e12 e22 lands in component 0;
        // e22 e22 lands in component 1.
        assert_eq!(star, vec![((0, 0), 0), ((0, 1), 0), ((1, 1), 1)]);
    }

    #[test]
    fn mixed_component_product_is_rejected() {
        // u * u = u + w with u and w in different components: inconsistent.
        let b = Algebra::new(
            "mixed",
            vec!["u".into(), "w".into()],
            vec![(0, 0, 0, rat(1, 1)), (0, 0, 1, rat(1, 1))],
        )
        .unwrap();
        let err = validate_grading(&b, vec!["0".into(), "1".into()], vec![0, 1]).unwrap_err();
        match err {
            Error::InconsistentGrading { s, t, first, second } => {
                assert_eq!((s.as_str(), t.as_str()), ("0", "0"));
                assert_ne!(first, second);
            }
            other => panic!("expected InconsistentGrading, got {other:?}"),
        }
    }

    #[test]
    fn fz2_grading_star_is_group_addition() {
        let g = fz2_grading();
        let star: Vec<((usize, usize), usize)> =
            g.star().iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(
            star,
            vec![((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)]
        );
    }

    #[test]
    fn degree_map_shape_errors() {
        let a = ut2();
        assert!(matches!(
            validate_grading(&a, vec!["0".into()], vec![0, 0]),
            Err(Error::InvalidDegreeMap { .. })
        ));
        assert!(matches!(
            validate_grading(&a, vec!["0".into()], vec![0, 0, 1]),
            Err(Error::InvalidDegreeMap { .. })
        ));
        assert!(matches!(
            validate_grading(&a, vec!["0".into(), "0".into()], vec![0, 0, 1]),
            Err(Error::InvalidDegreeMap { .. })
        ));
    }

    #[test]
    fn grading_ignores_unused_labels() {
        let a = f1();
        let g = validate_grading(&a, vec!["x".into(), "y".into()], vec![1]).unwrap();
        assert_eq!(g.support(), &[1]);
        assert_eq!(g.support_labels(), vec!["y".to_string()]);
    }

    #[test]
    fn projection_splits_vectors_by_degree() {
        let g = ut2_grading();
        let v = dense(&[5, -2, 7]);
        assert_eq!(g.project_dense(0, &v), dense(&[5, -2, 0]));
        assert_eq!(g.project_dense(1, &v), dense(&[0, 0, 7]));
    }
}
