//! Deciding whether an algebra with a generalized action has nontrivial
//! invariant two-sided ideals.
//!
//! An algebra `A` with an action of `H` is simple in this sense when
//! `A^2 != 0` and the only two-sided ideals closed under every `rho(h)` are
//! `0` and `A`. Invariant ideals are exactly the submodules of `A` over the
//! enveloping multiplication algebra `E <= End(A)` generated by the identity,
//! all left and right multiplication operators, and the action operators.
//! The decision procedure is:
//!
//! 1. `A^2 = 0` — not simple by definition.
//! 2. `dim E = s^2` — `E = End(A)`, whose only submodules are `0` and `A`,
//!    so the algebra is simple; the computed basis of `E` is the
//!    certificate.
//! 3. Otherwise search for a proper nonzero submodule `E v` over a pool of
//!    candidate vectors. Any hit is a certificate of non-simplicity. The
//!    pool is deterministic given the seed; exhausting it without a hit
//!    yields `Unknown` (the search is sound but not complete over the
//!    rationals — e.g. the field `Q[x]/(x^2+1)` viewed as a two-dimensional
//!    algebra has `dim E = 2 < 4` yet no proper ideals).

use crate::exactlin::{dense_to_sparse, sparse_to_dense, Eliminator, Rational, SparseRow};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::collections::VecDeque;

use super::{Algebra, GeneralizedHAction};

type Mat = Vec<Vec<Rational>>;

/// Evidence attached to a `NotSimple` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every product of elements vanishes.
    SquareZero,
    /// Dense coordinate vectors spanning a proper nonzero ideal that is
    /// closed under the action; rows are in reduced echelon form.
    Ideal { basis: Vec<Vec<Rational>> },
}

/// Outcome of the simplicity decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    /// The enveloping multiplication algebra is all of `End(A)`, so no
    /// proper nonzero invariant ideal can exist.
    Simple {
        /// Dimension of the enveloping algebra; equals `dim(A)^2` here.
        envelope_dim: usize,
        /// Operator matrices spanning `End(A)`, in discovery order.
        envelope_basis: Vec<Mat>,
    },
    /// A proper invariant ideal (or a zero square) was found.
    NotSimple { certificate: Certificate },
    /// The envelope is proper but no invariant ideal surfaced within the
    /// candidate budget; no conclusion.
    Unknown { candidates_tried: usize },
}

/// Knobs for the candidate-vector search.
#[derive(Clone, Debug)]
pub struct SimplicityOptions {
    /// Seed for the random tail of the candidate pool.
    pub seed: u64,
    /// How many random candidate vectors to try after the structured ones.
    pub random_candidates: usize,
}

impl Default for SimplicityOptions {
    fn default() -> Self {
        SimplicityOptions {
            seed: 0,
            random_candidates: 32,
        }
    }
}

/// Decide simplicity of `a` under `action`. The action must act on `a`
/// (matching dimensions) and should be validated first.
pub fn is_h_simple(
    a: &Algebra,
    action: &GeneralizedHAction,
    opts: &SimplicityOptions,
) -> SimplicityVerdict {
    let s = a.dim();
    assert_eq!(
        action.adim(),
        s,
        "action must operate on the given algebra"
    );
    assert!(s > 0, "the zero algebra has no simplicity verdict");

    // Span of all products; A^2 = 0 is an immediate refutation.
    let mut sq = Eliminator::new(s);
    for p in 0..s {
        for q in 0..s {
            sq.offer(a.basis_product(p, q).clone());
        }
    }
    let square_span: Vec<SparseRow> = sq.into_rref();
    if square_span.is_empty() {
        return SimplicityVerdict::NotSimple {
            certificate: Certificate::SquareZero,
        };
    }

    let (envelope, rank) = envelope_closure(a, action);
    if rank == s * s {
        return SimplicityVerdict::Simple {
            envelope_dim: rank,
            envelope_basis: envelope,
        };
    }

    // Candidate pool, structured sources first. The span of A^2 is itself
    // invariant, so its vectors find it whenever it is proper; kernels of
    // singular envelope elements are classic sources of submodule
    // generators.
    let mut pool: Vec<Vec<Rational>> = Vec::new();
    if square_span.len() < s {
        for row in &square_span {
            pool.push(sparse_to_dense(row, s));
        }
    }
    for i in 0..s {
        let mut e = vec![Rational::zero(); s];
        e[i] = Rational::one();
        pool.push(e);
    }
    for m in &envelope {
        pool.extend(kernel_basis(m));
    }
    for i in 0..envelope.len() {
        for j in (i + 1)..envelope.len() {
            for sign in [1i64, -1] {
                let probe = mat_add_scaled(&envelope[i], &envelope[j], sign);
                pool.extend(kernel_basis(&probe));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_candidates {
        let v: Vec<Rational> = (0..s)
            .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
            .collect();
        pool.push(v);
    }

    let mut tried = 0usize;
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut best: Option<Vec<Vec<Rational>>> = None;
    for v in pool {
        let Some(key) = scale_normalize(&v) else {
            continue; // zero vector
        };
        if !seen.insert(key) {
            continue;
        }
        tried += 1;
        let submodule = generated_submodule(&envelope, &v, s);
        if !submodule.is_empty()
            && submodule.len() < s
            && best.as_ref().is_none_or(|b| submodule.len() < b.len())
        {
            best = Some(submodule);
        }
    }

    match best {
        Some(basis) => SimplicityVerdict::NotSimple {
            certificate: Certificate::Ideal { basis },
        },
        None => SimplicityVerdict::Unknown {
            candidates_tried: tried,
        },
    }
}

/// Check the defining closure properties of a `NotSimple` ideal
/// certificate: nonzero, proper, closed under multiplication by every basis
/// element on both sides, and closed under every action operator.
pub fn verify_ideal_certificate(
    a: &Algebra,
    action: &GeneralizedHAction,
    basis: &[Vec<Rational>],
) -> bool {
    let s = a.dim();
    if basis.is_empty() || basis.iter().any(|v| v.len() != s) {
        return false;
    }
    let mut elim = Eliminator::new(s);
    for v in basis {
        elim.offer(dense_to_sparse(v));
    }
    let dim = elim.rank();
    if dim == 0 || dim >= s {
        return false;
    }
    let in_span = |w: &[Rational]| {
        let mut probe = Eliminator::new(s);
        for v in basis {
            probe.offer(dense_to_sparse(v));
        }
        probe.offer(dense_to_sparse(w)).is_none()
    };
    for v in basis {
        for i in 0..s {
            let mut e = vec![Rational::zero(); s];
            e[i] = Rational::one();
            let left = a.multiply(&e, v).expect("matching dimensions");
            let right = a.multiply(v, &e).expect("matching dimensions");
            if !in_span(&left) || !in_span(&right) {
                return false;
            }
        }
        for j in 0..action.hdim() {
            if !in_span(&action.apply_basis(j, v)) {
                return false;
            }
        }
    }
    true
}

/// Closure of `{id, L_i, R_i, rho(h_j)}` under composition. Returns a basis
/// (as matrices, discovery order) and its size. Every product of generators
/// is reachable by right-extension because the identity is a generator and
/// the span stays closed under right composition by each generator.
fn envelope_closure(a: &Algebra, action: &GeneralizedHAction) -> (Vec<Mat>, usize) {
    let s = a.dim();
    let mut generators: Vec<Mat> = Vec::with_capacity(1 + 2 * s + action.hdim());
    let mut id = vec![vec![Rational::zero(); s]; s];
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = Rational::one();
    }
    generators.push(id);
    for i in 0..s {
        generators.push(a.left_mult_matrix(i));
    }
    for i in 0..s {
        generators.push(a.right_mult_matrix(i));
    }
    for j in 0..action.hdim() {
        generators.push(action.rho(j).clone());
    }

    let mut elim = Eliminator::new(s * s);
    let mut basis: Vec<Mat> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for g in &generators {
        if elim.offer(flatten(g)).is_some() {
            basis.push(g.clone());
            queue.push_back(basis.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        if elim.rank() == s * s {
            break;
        }
        let left = basis[i].clone();
        for g in &generators {
            let prod = matmul(&left, g);
            if elim.offer(flatten(&prod)).is_some() {
                basis.push(prod);
                queue.push_back(basis.len() - 1);
            }
        }
    }
    let rank = elim.rank();
    (basis, rank)
}

/// Reduced echelon basis of the submodule generated by `v`: the span of
/// `M v` over the envelope basis. Dense rows, ascending pivot columns.
fn generated_submodule(envelope: &[Mat], v: &[Rational], s: usize) -> Vec<Vec<Rational>> {
    let mut elim = Eliminator::new(s);
    for m in envelope {
        elim.offer(dense_to_sparse(&matvec(m, v)));
    }
    elim.into_rref()
        .iter()
        .map(|row| sparse_to_dense(row, s))
        .collect()
}

/// Basis of the nullspace of a square matrix, from its reduced echelon form:
/// one vector per free column.
fn kernel_basis(m: &Mat) -> Vec<Vec<Rational>> {
    let s = m.len();
    let mut elim = Eliminator::new(s);
    for row in m {
        elim.offer(dense_to_sparse(row));
    }
    let rref = elim.into_rref();
    let pivot_cols: Vec<usize> = rref
        .iter()
        .map(|row| row.first().expect("echelon rows are nonzero").0)
        .collect();
    let mut out = Vec::new();
    for f in 0..s {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut x = vec![Rational::zero(); s];
        x[f] = Rational::one();
        for (row, p) in rref.iter().zip(&pivot_cols) {
            if let Ok(idx) = row.binary_search_by_key(&f, |(c, _)| *c) {
                x[*p] = -row[idx].1.clone();
            }
        }
        out.push(x);
    }
    out
}

/// Scale a vector so its first nonzero entry is 1; `None` for zero vectors.
/// Used to deduplicate candidates that differ by a scalar.
fn scale_normalize(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.recip();
    Some(v.iter().map(|x| x * &inv).collect())
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let s = a.len();
    let mut out = vec![vec![Rational::zero(); s]; s];
    for r in 0..s {
        for k in 0..s {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..s {
                if !b[k][c].is_zero() {
                    out[r][c] += &a[r][k] * &b[k][c];
                }
            }
        }
    }
    out
}

fn matvec(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        })
        .collect()
}

fn mat_add_scaled(a: &Mat, b: &Mat, sign: i64) -> Mat {
    let s = a.len();
    let sign = Rational::from_integer(sign.into());
    let mut out = a.clone();
    for r in 0..s {
        for c in 0..s {
            out[r][c] += &sign * &b[r][c];
        }
    }
    out
}

/// Flatten a matrix row-major into a sparse vector of length `s^2`.
fn flatten(m: &Mat) -> SparseRow {
    let s = m.len();
    let mut row = Vec::new();
    for (r, mrow) in m.iter().enumerate() {
        for (c, x) in mrow.iter().enumerate() {
            if !x.is_zero() {
                row.push((r * s + c, x.clone()));
            }
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::*;
    use crate::algebra::grading_to_haction;
    use crate::exactlin::rat;

    fn opts() -> SimplicityOptions {
        SimplicityOptions::default()
    }

    /// The field Q[x]/(x^2+1) as a two-dimensional algebra: basis (1, i).
    fn gaussian_field() -> Algebra {
        Algebra::new(
            "qi",
            vec!["1".into(), "i".into()],
            vec![
                (0, 0, 0, rat(1, 1)),
                (0, 1, 1, rat(1, 1)),
                (1, 0, 1, rat(1, 1)),
                (1, 1, 0, rat(-1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn full_matrix_algebra_is_simple_with_full_envelope() {
        let a = m2();
        let verdict = is_h_simple(&a, &a.trivial_action(), &opts());
        match verdict {
            SimplicityVerdict::Simple {
                envelope_dim,
                envelope_basis,
            } => {
                assert_eq!(envelope_dim, 16);
                assert_eq!(envelope_basis.len(), 16);
            }
            other => panic!("expected Simple, got {other:?}"),
        }
    }

    #[test]
    fn upper_triangular_algebra_has_minimal_ideal_e12() {
        let a = ut2();
        let verdict = is_h_simple(&a, &a.trivial_action(), &opts());
        match &verdict {
            SimplicityVerdict::NotSimple {
                certificate: Certificate::Ideal { basis },
            } => {
                // The minimal proper submodule found is span{e12}.
                assert_eq!(basis, &vec![vec![rat(0, 1), rat(0, 1), rat(1, 1)]]);
                assert!(verify_ideal_certificate(&a, &a.trivial_action(), basis));
            }
            other => panic!("expected NotSimple ideal, got {other:?}"),
        }
    }

    #[test]
    fn upper_triangular_algebra_stays_non_simple_under_its_grading() {
        let a = ut2();
        let act = grading_to_haction(&a, &ut2_grading()).unwrap();
        match is_h_simple(&a, &act, &opts()) {
            SimplicityVerdict::NotSimple {
                certificate: Certificate::Ideal { basis },
            } => assert!(verify_ideal_certificate(&a, &act, &basis)),
            other => panic!("expected NotSimple ideal, got {other:?}"),
        }
    }

    #[test]
    fn group_algebra_split_by_grading_action() {
        let a = fz2();
        // Without the action: F + F has the proper ideal spanned by 1 - g.
        match is_h_simple(&a, &a.trivial_action(), &opts()) {
            SimplicityVerdict::NotSimple {
                certificate: Certificate::Ideal { basis },
            } => {
                assert_eq!(basis.len(), 1);
                assert!(verify_ideal_certificate(&a, &a.trivial_action(), &basis));
            }
            other => panic!("expected NotSimple, got {other:?}"),
        }
        // With the grading action the projections join the envelope and
        // generate all of End(F^2).
        let act = grading_to_haction(&a, &fz2_grading()).unwrap();
        match is_h_simple(&a, &act, &opts()) {
            SimplicityVerdict::Simple { envelope_dim, .. } => assert_eq!(envelope_dim, 4),
            other => panic!("expected Simple, got {other:?}"),
        }
    }

    #[test]
    fn zero_multiplication_algebra_is_square_zero() {
        let a = zero3();
        assert_eq!(
            is_h_simple(&a, &a.trivial_action(), &opts()),
            SimplicityVerdict::NotSimple {
                certificate: Certificate::SquareZero
            }
        );
    }

    #[test]
    fn ground_field_is_simple() {
        let a = f1();
        match is_h_simple(&a, &a.trivial_action(), &opts()) {
            SimplicityVerdict::Simple { envelope_dim, .. } => assert_eq!(envelope_dim, 1),
            other => panic!("expected Simple, got {other:?}"),
        }
    }

    #[test]
    fn field_extension_defeats_the_search() {
        // Q(i) is a field, hence simple, but its envelope is a proper
        // commutative subalgebra and no ideal exists to find: the honest
        // answer is Unknown.
        let a = gaussian_field();
        match is_h_simple(&a, &a.trivial_action(), &opts()) {
            SimplicityVerdict::Unknown { candidates_tried } => assert!(candidates_tried > 0),
            other => panic!("expected Unknown, got {other:?}"),
        }
    }

    #[test]
    fn proper_square_span_is_detected() {
        // u * u = w, all other products zero: A^2 = span{w} is a proper
        // invariant ideal.
        let a = Algebra::new(
            "nil",
            vec!["u".into(), "w".into()],
            vec![(0, 0, 1, rat(1, 1))],
        )
        .unwrap();
        match is_h_simple(&a, &a.trivial_action(), &opts()) {
            SimplicityVerdict::NotSimple {
                certificate: Certificate::Ideal { basis },
            } => {
                assert_eq!(basis, vec![vec![rat(0, 1), rat(1, 1)]]);
                assert!(verify_ideal_certificate(&a, &a.trivial_action(), &basis));
            }
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn certificate_verifier_rejects_non_ideals() {
        let a = ut2();
        let act = a.trivial_action();
        // span{e11} is not an ideal: e11 * e12 = e12 escapes.
        assert!(!verify_ideal_certificate(
            &a,
            &act,
            &[vec![rat(1, 1), rat(0, 1), rat(0, 1)]]
        ));
        // The whole space is not a *proper* ideal.
        assert!(!verify_ideal_certificate(
            &a,
            &act,
            &[
                vec![rat(1, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            ]
        ));
        // The empty set is not a certificate.
        assert!(!verify_ideal_certificate(&a, &act, &[]));
    }

    #[test]
    fn verdict_is_seed_stable() {
        let a = gaussian_field();
        let act = a.trivial_action();
        let v1 = is_h_simple(&a, &act, &SimplicityOptions {
            seed: 7,
            random_candidates: 8,
        });
        let v2 = is_h_simple(&a, &act, &SimplicityOptions {
            seed: 7,
            random_candidates: 8,
        });
        assert_eq!(v1, v2);
    }
}
