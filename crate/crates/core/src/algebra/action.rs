//! Generalized actions of an associative unital algebra `H` on an algebra
//! `A`, together with the linear solver that derives (or verifies) coproduct
//! witnesses.
//!
//! `A` is an `H`-module algebra in the generalized sense when there are
//! linear maps `Delta, Theta : H -> H (x) H` — neither need be coassociative
//! or counital — such that for every `h` and all `a, b`:
//!
//! ```text
//! h(ab) = sum (h_(1) a)(h_(2) b)  +  sum (h_[1] b)(h_[2] a)
//! ```
//!
//! with `Delta(h) = sum h_(1) (x) h_(2)` and `Theta(h) = sum h_[1] (x) h_[2]`
//! (in the flipped term the *first* tensor factor acts on `b`). For each
//! basis element of `H` this is a linear system over the rationals in the
//! `2 * hdim^2` unknown tensor coefficients; solvability is exactly the
//! module-algebra property. Witnesses are generally not unique — the solver
//! returns the first solution under its deterministic pivot order, and
//! nothing downstream may treat it as canonical.

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Rational, SparseRow, SpanSolver};
use num::{One, Zero};
use std::collections::BTreeMap;

/// An element of `H (x) H` as a sparse map from basis index pairs to
/// coefficients.
pub type PairTensor = BTreeMap<(usize, usize), Rational>;

/// Coproduct witnesses, one pair tensor per `H` basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionWitnesses {
    /// Tensor whose first leg acts on the left factor.
    pub delta: Vec<PairTensor>,
    /// Tensor whose first leg acts on the *right* factor.
    pub theta: Vec<PairTensor>,
}

/// A representation of a finite-dimensional associative unital algebra `H`
/// on the underlying space of an algebra, candidate for (or validated as) a
/// generalized action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedHAction {
    hdim: usize,
    hbasis: Vec<String>,
    /// `htable[i][j]` = sparse coordinates of `h_i h_j`.
    htable: Vec<Vec<SparseRow>>,
    /// Coordinates of the unit of `H`.
    unit: Vec<Rational>,
    /// `rho[j]` is the dense matrix of `h_j` acting on `A` (row `r`, column
    /// `c`: coefficient of basis `r` in `h_j * a_c`).
    rho: Vec<Vec<Vec<Rational>>>,
    /// Present after validation (derived or verified).
    witnesses: Option<ActionWitnesses>,
}

impl GeneralizedHAction {
    /// Assemble an action candidate; checks shapes only. Use
    /// [`validate_haction`] for the mathematical laws.
    pub fn new(
        hbasis: Vec<String>,
        htable: Vec<Vec<SparseRow>>,
        unit: Vec<Rational>,
        rho: Vec<Vec<Vec<Rational>>>,
        witnesses: Option<ActionWitnesses>,
    ) -> Result<Self> {
        let hdim = hbasis.len();
        if hdim == 0 {
            return Err(Error::Document {
                detail: "acting algebra must have dimension at least 1".to_string(),
            });
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for label in &hbasis {
                if !seen.insert(label) {
                    return Err(Error::Document {
                        detail: format!("duplicate acting-algebra basis label {label:?}"),
                    });
                }
            }
        }
        if htable.len() != hdim || htable.iter().any(|r| r.len() != hdim) {
            return Err(Error::Document {
                detail: "acting-algebra table shape mismatch".to_string(),
            });
        }
        for row in &htable {
            for prod in row {
                if prod.iter().any(|(k, _)| *k >= hdim) {
                    return Err(Error::Document {
                        detail: "acting-algebra structure constant out of range".to_string(),
                    });
                }
            }
        }
        if unit.len() != hdim {
            return Err(Error::DimensionMismatch {
                expected: hdim,
                got: unit.len(),
                context: "unit coordinates of the acting algebra".to_string(),
            });
        }
        if rho.len() != hdim {
            return Err(Error::DimensionMismatch {
                expected: hdim,
                got: rho.len(),
                context: "one representation matrix per basis element".to_string(),
            });
        }
        let adim = rho.first().map_or(0, Vec::len);
        for m in &rho {
            if m.len() != adim || m.iter().any(|r| r.len() != adim) {
                return Err(Error::Document {
                    detail: "representation matrices must be square and equally sized".to_string(),
                });
            }
        }
        if let Some(w) = &witnesses {
            for tensors in [&w.delta, &w.theta] {
                if tensors.len() != hdim {
                    return Err(Error::DimensionMismatch {
                        expected: hdim,
                        got: tensors.len(),
                        context: "one witness tensor per basis element".to_string(),
                    });
                }
                for t in tensors {
                    if t.keys().any(|(u, v)| *u >= hdim || *v >= hdim) {
                        return Err(Error::Document {
                            detail: "witness tensor index out of range".to_string(),
                        });
                    }
                }
            }
        }
        Ok(GeneralizedHAction {
            hdim,
            hbasis,
            htable,
            unit,
            rho,
            witnesses,
        })
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    pub fn hbasis(&self) -> &[String] {
        &self.hbasis
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn htable_entry(&self, i: usize, j: usize) -> &SparseRow {
        &self.htable[i][j]
    }

    pub fn rho(&self, j: usize) -> &Vec<Vec<Rational>> {
        &self.rho[j]
    }

    /// Dimension of the algebra being acted on.
    pub fn adim(&self) -> usize {
        self.rho.first().map_or(0, Vec::len)
    }

    pub fn witnesses(&self) -> Option<&ActionWitnesses> {
        self.witnesses.as_ref()
    }

    /// Resolve a basis label of `H`.
    pub fn hbasis_index(&self, label: &str) -> Option<usize> {
        self.hbasis.iter().position(|l| l == label)
    }

    /// Apply a basis element of `H` to a dense coordinate vector.
    pub fn apply_basis(&self, j: usize, v: &[Rational]) -> Vec<Rational> {
        let m = &self.rho[j];
        (0..self.adim())
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, vc) in v.iter().enumerate() {
                    if !vc.is_zero() && !m[r][c].is_zero() {
                        acc += &m[r][c] * vc;
                    }
                }
                acc
            })
            .collect()
    }

    /// Apply a basis element of `H` to a sparse coordinate vector.
    pub fn apply_basis_sparse(&self, j: usize, v: &SparseRow) -> SparseRow {
        let m = &self.rho[j];
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, vc) in v {
            for (r, row) in m.iter().enumerate() {
                if !row[*c].is_zero() {
                    let slot = acc.entry(r).or_insert_with(Rational::zero);
                    *slot += &row[*c] * vc;
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Apply a general element of `H` (by coordinates) to a dense vector.
    pub fn apply(&self, h: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        if h.len() != self.hdim {
            return Err(Error::DimensionMismatch {
                expected: self.hdim,
                got: h.len(),
                context: "acting element coordinates".to_string(),
            });
        }
        let mut out = vec![Rational::zero(); self.adim()];
        for (j, hj) in h.iter().enumerate() {
            if hj.is_zero() {
                continue;
            }
            let img = self.apply_basis(j, v);
            for (o, x) in out.iter_mut().zip(img) {
                *o += hj * &x;
            }
        }
        Ok(out)
    }

    /// Product of two coordinate vectors in `H`.
    pub fn hmultiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.hdim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, c) in &self.htable[i][j] {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }
}

/// The action of the one-dimensional algebra `F`: unit acts as identity,
/// witness `Delta(1) = 1 (x) 1`, `Theta(1) = 0`.
pub(crate) fn trivial_action(adim: usize) -> GeneralizedHAction {
    let mut id = vec![vec![Rational::zero(); adim]; adim];
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = Rational::one();
    }
    let mut delta0 = PairTensor::new();
    delta0.insert((0, 0), Rational::one());
    GeneralizedHAction::new(
        vec!["1".to_string()],
        vec![vec![vec![(0, Rational::one())]]],
        vec![Rational::one()],
        vec![id],
        Some(ActionWitnesses {
            delta: vec![delta0],
            theta: vec![PairTensor::new()],
        }),
    )
    .expect("trivial action is well formed")
}

/// Validate a generalized action: check the module laws of the
/// representation, then derive coproduct witnesses by exact linear solving
/// (or verify the supplied ones). Returns the action with witnesses filled.
pub fn validate_haction(
    a: &super::Algebra,
    action: &GeneralizedHAction,
) -> Result<GeneralizedHAction> {
    let s = a.dim();
    let m = action.hdim;
    if action.adim() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            got: action.adim(),
            context: "representation matrices act on the algebra".to_string(),
        });
    }

    check_h_is_associative_unital(action)?;
    check_rho_is_unital_multiplicative(action)?;

    // Flattened bilinear maps A x A -> A, coordinates indexed by
    // (p * s + q) * s + r.
    let flat_len = s * s * s;
    let pair_maps = action_pair_maps(a, action);

    // Generator order: all Delta legs (u, v) row-major, then all Theta legs.
    let mut generators: Vec<SparseRow> = Vec::with_capacity(2 * m * m);
    for u in 0..m {
        for v in 0..m {
            generators.push(bilinear_flat(a, action, u, v, false, &pair_maps));
        }
    }
    for u in 0..m {
        for v in 0..m {
            generators.push(bilinear_flat(a, action, u, v, true, &pair_maps));
        }
    }

    match action.witnesses() {
        Some(w) => {
            // Verify the supplied witnesses exactly.
            for j in 0..m {
                let target = action_target_flat(a, action, j);
                let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
                for (flip, tensor) in [(false, &w.delta[j]), (true, &w.theta[j])] {
                    for ((u, v), coeff) in tensor {
                        let base = if flip { m * m } else { 0 };
                        for (c, x) in &generators[base + u * m + v] {
                            let slot = combo.entry(*c).or_insert_with(Rational::zero);
                            *slot += coeff * x;
                        }
                    }
                }
                let combo: SparseRow = combo
                    .into_iter()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                if let Some(defect) = first_difference(&target, &combo) {
                    let (idx, value) = defect;
                    return Err(Error::NotGeneralizedAction {
                        h: action.hbasis[j].clone(),
                        p: idx / (s * s),
                        q: (idx / s) % s,
                        r: idx % s,
                        value: format_rational(&value),
                    });
                }
            }
            Ok(action.clone())
        }
        None => {
            // Derive witnesses by solving one system per basis element.
            let solver = SpanSolver::new(&generators, flat_len);
            let mut delta = Vec::with_capacity(m);
            let mut theta = Vec::with_capacity(m);
            for j in 0..m {
                let target = action_target_flat(a, action, j);
                let (remainder, coeffs) = solver.reduce(&target);
                if let Some((idx, value)) = remainder.first() {
                    return Err(Error::NotGeneralizedAction {
                        h: action.hbasis[j].clone(),
                        p: idx / (s * s),
                        q: (idx / s) % s,
                        r: idx % s,
                        value: format_rational(value),
                    });
                }
                let mut dj = PairTensor::new();
                let mut tj = PairTensor::new();
                for u in 0..m {
                    for v in 0..m {
                        let cd = &coeffs[u * m + v];
                        if !cd.is_zero() {
                            dj.insert((u, v), cd.clone());
                        }
                        let ct = &coeffs[m * m + u * m + v];
                        if !ct.is_zero() {
                            tj.insert((u, v), ct.clone());
                        }
                    }
                }
                delta.push(dj);
                theta.push(tj);
            }
            let mut validated = action.clone();
            validated.witnesses = Some(ActionWitnesses { delta, theta });
            Ok(validated)
        }
    }
}

/// Precompute `rho(h_u) a_p` for all `u, p` as dense vectors.
fn action_pair_maps(a: &super::Algebra, action: &GeneralizedHAction) -> Vec<Vec<Vec<Rational>>> {
    let s = a.dim();
    (0..action.hdim)
        .map(|u| {
            (0..s)
                .map(|p| {
                    let mut e = vec![Rational::zero(); s];
                    e[p] = Rational::one();
                    action.apply_basis(u, &e)
                })
                .collect()
        })
        .collect()
}

/// Flatten the bilinear map `(a_p, a_q) -> (h_u a_x)(h_v a_y)` where
/// `(x, y) = (p, q)` normally and `(q, p)` when `flip` is set.
fn bilinear_flat(
    a: &super::Algebra,
    action: &GeneralizedHAction,
    u: usize,
    v: usize,
    flip: bool,
    pair_maps: &[Vec<Vec<Rational>>],
) -> SparseRow {
    let s = a.dim();
    let _ = action;
    let mut row: SparseRow = Vec::new();
    for p in 0..s {
        for q in 0..s {
            let (x, y) = if flip { (q, p) } else { (p, q) };
            let prod = a
                .multiply(&pair_maps[u][x], &pair_maps[v][y])
                .expect("dimensions agree");
            for (r, val) in prod.into_iter().enumerate() {
                if !val.is_zero() {
                    row.push(((p * s + q) * s + r, val));
                }
            }
        }
    }
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Flatten the target bilinear map `(a_p, a_q) -> h_j (a_p a_q)`.
fn action_target_flat(a: &super::Algebra, action: &GeneralizedHAction, j: usize) -> SparseRow {
    let s = a.dim();
    let mut row: SparseRow = Vec::new();
    for p in 0..s {
        for q in 0..s {
            let prod = crate::exactlin::sparse_to_dense(a.basis_product(p, q), s);
            let img = action.apply_basis(j, &prod);
            for (r, val) in img.into_iter().enumerate() {
                if !val.is_zero() {
                    row.push(((p * s + q) * s + r, val));
                }
            }
        }
    }
    row.sort_by_key(|(c, _)| *c);
    row
}

/// First coordinate where two sparse rows differ, with the difference value.
fn first_difference(a: &SparseRow, b: &SparseRow) -> Option<(usize, Rational)> {
    let diff = crate::exactlin::sub_scaled(a, b, &Rational::one());
    diff.into_iter().next()
}

fn check_h_is_associative_unital(action: &GeneralizedHAction) -> Result<()> {
    let m = action.hdim;
    let basis_vec = |i: usize| {
        let mut v = vec![Rational::zero(); m];
        v[i] = Rational::one();
        v
    };
    for i in 0..m {
        let hi = basis_vec(i);
        let left = action.hmultiply(&action.unit, &hi);
        let right = action.hmultiply(&hi, &action.unit);
        if left != hi || right != hi {
            return Err(Error::ModuleLawViolation {
                detail: format!(
                    "unit of the acting algebra does not fix basis element {}",
                    action.hbasis[i]
                ),
            });
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let ij = action.hmultiply(&basis_vec(i), &basis_vec(j));
                let jk = action.hmultiply(&basis_vec(j), &basis_vec(k));
                let left = action.hmultiply(&ij, &basis_vec(k));
                let right = action.hmultiply(&basis_vec(i), &jk);
                if left != right {
                    return Err(Error::ModuleLawViolation {
                        detail: format!(
                            "acting algebra is not associative at basis triple ({}, {}, {})",
                            action.hbasis[i], action.hbasis[j], action.hbasis[k]
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_rho_is_unital_multiplicative(action: &GeneralizedHAction) -> Result<()> {
    let s = action.adim();
    let m = action.hdim;
    // rho(unit) = id.
    for c in 0..s {
        let mut e = vec![Rational::zero(); s];
        e[c] = Rational::one();
        let img = action
            .apply(&action.unit, &e)
            .expect("unit coordinates have length hdim");
        if img != e {
            return Err(Error::ModuleLawViolation {
                detail: "unit of the acting algebra does not act as identity".to_string(),
            });
        }
    }
    // rho(h_i h_j) = rho(h_i) rho(h_j).
    for i in 0..m {
        for j in 0..m {
            for c in 0..s {
                let mut e = vec![Rational::zero(); s];
                e[c] = Rational::one();
                let composed = action.apply_basis(i, &action.apply_basis(j, &e));
                let mut via_product = vec![Rational::zero(); s];
                for (k, coeff) in action.htable_entry(i, j) {
                    let img = action.apply_basis(*k, &e);
                    for (o, x) in via_product.iter_mut().zip(img) {
                        *o += coeff * &x;
                    }
                }
                if composed != via_product {
                    return Err(Error::ModuleLawViolation {
                        detail: format!(
                            "representation is not multiplicative at ({}, {})",
                            action.hbasis[i], action.hbasis[j]
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}
