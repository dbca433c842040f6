//! Exact linear algebra over the rationals.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator ([`Rational`], backed by `num`). Matrices are stored
//! row-sparse. Rank, row-space bases, and span membership all come from the
//! same Gaussian elimination with a deterministic pivot rule: rows are
//! processed in order and each surviving row pivots on its first nonzero
//! column. Re-running any operation on the same input yields identical
//! output, including pivot choices.
//!
//! A single-prime modular pass is available as a fast path for rank. Rank
//! modulo a prime never exceeds the rational rank, so a full-rank modular
//! result certifies the exact rank without rational elimination. The hybrid
//! mode uses only that sound shortcut and otherwise falls back to exact
//! elimination, so it always reports the exact value. The modular-only mode
//! reports the modular rank itself and is intended for quick exploration;
//! callers are expected to flag it in any output.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Exact scalar: arbitrary-precision rational in lowest terms, denominator
/// positive, zero represented as 0/1. The backing type maintains all three
/// invariants on construction.
pub type Rational = BigRational;

/// Sparse vector: strictly increasing column indices, nonzero entries only.
pub type SparseRow = Vec<(usize, Rational)>;

/// Parse a rational from decimal `p/q` or `p` text (`q` omitted means 1).
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::BadRational {
            text: text.to_string(),
            detail: e.to_string(),
        })
        .and_then(|r| {
            if text.contains('/') && text.trim().ends_with("/0") {
                Err(Error::BadRational {
                    text: text.to_string(),
                    detail: "zero denominator".to_string(),
                })
            } else {
                Ok(r)
            }
        })
}

/// Format a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// How [`Matrix::rank`] is allowed to compute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankMode {
    /// Rational elimination only.
    #[default]
    Exact,
    /// Try one random prime first; a full-rank modular result is accepted
    /// (it is a sound certificate), anything else falls back to exact
    /// elimination. Always returns the exact rank.
    Hybrid { seed: u64 },
    /// Report the single-prime modular rank, which is a lower bound on the
    /// exact rank. Falls back to exact elimination only when the prime
    /// divides a denominator.
    ModularOnly { seed: u64 },
}

/// Row-sparse matrix over [`Rational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Matrix {
    /// Empty matrix with a fixed column count and no rows yet.
    pub fn new(ncols: usize) -> Self {
        Matrix {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Build from sparse rows. Each row may be unsorted and may contain
    /// duplicate columns; entries are merged and zeros dropped.
    pub fn from_rows(ncols: usize, rows: Vec<SparseRow>) -> Result<Self> {
        let mut m = Matrix::new(ncols);
        for row in rows {
            m.push_row(row)?;
        }
        Ok(m)
    }

    /// Build from dense rows.
    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::new(ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                    context: "dense matrix row".to_string(),
                });
            }
            m.push_row(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            )?;
        }
        Ok(m)
    }

    /// Append one row (normalizing it). Columns must lie below `ncols`.
    pub fn push_row(&mut self, row: SparseRow) -> Result<()> {
        let row = normalize_row(row);
        if let Some((c, _)) = row.last() {
            if *c >= self.ncols {
                return Err(Error::DimensionMismatch {
                    expected: self.ncols,
                    got: *c + 1,
                    context: "sparse row column index".to_string(),
                });
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Entry lookup; absent entries are zero.
    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols.entry(*c).or_default().push((r, v.clone()));
            }
        }
        let mut t = Matrix::new(self.rows.len());
        for c in 0..self.ncols {
            t.rows.push(cols.remove(&c).unwrap_or_default());
        }
        t
    }

    /// Rank under the requested mode. `Exact` and `Hybrid` always return the
    /// rank over the rationals; `ModularOnly` returns a lower bound that is
    /// almost always equal to it.
    pub fn rank(&self, mode: RankMode) -> usize {
        match mode {
            RankMode::Exact => self.rank_exact(),
            RankMode::Hybrid { seed } => match self.rank_modular(seed) {
                Some(r) if r == self.nrows().min(self.ncols) => r,
                _ => self.rank_exact(),
            },
            RankMode::ModularOnly { seed } => self
                .rank_modular(seed)
                .unwrap_or_else(|| self.rank_exact()),
        }
    }

    fn rank_exact(&self) -> usize {
        let mut elim = Eliminator::new(self.ncols);
        for row in &self.rows {
            elim.offer(row.clone());
        }
        elim.pivots.len()
    }

    /// Rank modulo a random 62-bit prime derived from `seed`. `None` when the
    /// prime divides some denominator, making the reduction undefined.
    pub fn rank_modular(&self, seed: u64) -> Option<usize> {
        let p = random_prime_62(seed);
        let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
        for row in &self.rows {
            let mut work = Vec::with_capacity(row.len());
            for (c, v) in row {
                let e = rational_mod(v, p)?;
                if e != 0 {
                    work.push((*c, e));
                }
            }
            while let Some(&(lead, coeff)) = work.first() {
                match pivots.get(&lead) {
                    Some(pivot) => {
                        work = sub_scaled_mod(&work, pivot, coeff, p);
                    }
                    None => {
                        let inv = inv_mod(coeff, p);
                        let normalized = work
                            .iter()
                            .map(|(c, v)| (*c, mul_mod(*v, inv, p)))
                            .collect();
                        pivots.insert(lead, normalized);
                        break;
                    }
                }
            }
        }
        Some(pivots.len())
    }

    /// Deterministic row-space basis: pivot row/column indices in discovery
    /// order (row-major, first-nonzero pivot rule) plus the fully reduced
    /// canonical basis, one row per pivot, ordered by pivot column.
    pub fn row_space_basis(&self) -> RowSpaceBasis {
        let mut elim = Eliminator::new(self.ncols);
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(col) = elim.offer(row.clone()) {
                pivot_rows.push(i);
                pivot_cols.push(col);
            }
        }
        let basis = Matrix {
            ncols: self.ncols,
            rows: elim.into_rref(),
        };
        RowSpaceBasis {
            pivot_rows,
            pivot_cols,
            basis,
        }
    }
}

/// Result of [`Matrix::row_space_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpaceBasis {
    /// Indices of the original rows that produced pivots, in discovery order.
    pub pivot_rows: Vec<usize>,
    /// Pivot column of each pivot row, parallel to `pivot_rows`.
    pub pivot_cols: Vec<usize>,
    /// Canonical reduced basis of the row space (leading 1 per row, pivot
    /// columns cleared elsewhere, rows ordered by pivot column).
    pub basis: Matrix,
}

/// Express `target` in the span of `basis` rows: returns the coefficient
/// vector (one coefficient per basis row) or `None` when the target lies
/// outside the span. When the basis rows are dependent the first solution
/// under the deterministic pivot order is returned.
pub fn solve_in_span(
    basis: &[SparseRow],
    ncols: usize,
    target: &SparseRow,
) -> Option<Vec<Rational>> {
    SpanSolver::new(basis, ncols).solve(target)
}

/// Dense-vector convenience wrapper around [`solve_in_span`].
pub fn solve_in_span_dense(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = target.len();
    if basis.iter().any(|v| v.len() != ncols) {
        return None;
    }
    let sparse: Vec<SparseRow> = basis.iter().map(|v| dense_to_sparse(v)).collect();
    SpanSolver::new(&sparse, ncols).solve(&dense_to_sparse(target))
}

/// Precomputed elimination of a fixed spanning set, for solving many targets
/// against the same span. Tracks how each reduced row combines the original
/// rows so that solutions come back in terms of the caller's basis.
pub struct SpanSolver {
    ncols: usize,
    nbasis: usize,
    /// pivot col -> (reduced row with leading 1, expression in original rows)
    pivots: BTreeMap<usize, (SparseRow, Vec<Rational>)>,
}

impl SpanSolver {
    pub fn new(basis: &[SparseRow], ncols: usize) -> Self {
        let nbasis = basis.len();
        let mut solver = SpanSolver {
            ncols,
            nbasis,
            pivots: BTreeMap::new(),
        };
        for (i, row) in basis.iter().enumerate() {
            let mut coeffs = vec![Rational::zero(); nbasis];
            coeffs[i] = Rational::one();
            solver.offer(row.clone(), coeffs);
        }
        solver
    }

    fn offer(&mut self, mut row: SparseRow, mut coeffs: Vec<Rational>) {
        while let Some((lead, lead_coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some((prow, pcoeffs)) => {
                    row = sub_scaled(&row, prow, &lead_coeff);
                    for (c, pc) in coeffs.iter_mut().zip(pcoeffs) {
                        *c -= &lead_coeff * pc;
                    }
                }
                None => {
                    let inv = lead_coeff.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    for c in coeffs.iter_mut() {
                        *c *= &inv;
                    }
                    self.pivots.insert(lead, (row, coeffs));
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `target` against the span; `Some(coefficients)` on membership.
    pub fn solve(&self, target: &SparseRow) -> Option<Vec<Rational>> {
        let (remainder, coeffs) = self.reduce(target);
        remainder.is_empty().then_some(coeffs)
    }

    /// Reduce `target` as far as possible. Returns the fully reduced
    /// remainder (empty exactly when the target is in the span) and the
    /// coefficients of the reducible part in terms of the original rows.
    pub fn reduce(&self, target: &SparseRow) -> (SparseRow, Vec<Rational>) {
        debug_assert!(target.last().is_none_or(|(c, _)| *c < self.ncols));
        let mut remainder: SparseRow = Vec::new();
        let mut row = target.clone();
        let mut coeffs = vec![Rational::zero(); self.nbasis];
        while let Some((lead, lead_coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some((prow, pcoeffs)) => {
                    row = sub_scaled(&row, prow, &lead_coeff);
                    for (c, pc) in coeffs.iter_mut().zip(pcoeffs) {
                        *c += &lead_coeff * pc;
                    }
                }
                None => remainder.push(row.remove(0)),
            }
        }
        (remainder, coeffs)
    }

    /// Span membership without the coefficient bookkeeping payoff.
    pub fn contains(&self, target: &SparseRow) -> bool {
        let mut row = target.clone();
        while let Some((lead, lead_coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some((prow, _)) => row = sub_scaled(&row, prow, &lead_coeff),
                None => return false,
            }
        }
        true
    }
}

/// Incremental eliminator used for rank and row-space computations.
pub(crate) struct Eliminator {
    ncols: usize,
    /// pivot col -> reduced row, leading coefficient 1.
    pivots: BTreeMap<usize, SparseRow>,
}

impl Eliminator {
    pub(crate) fn new(ncols: usize) -> Self {
        Eliminator {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against current pivots; install it as a new pivot if a
    /// nonzero remainder survives. Returns the new pivot column, if any.
    pub(crate) fn offer(&mut self, mut row: SparseRow) -> Option<usize> {
        debug_assert!(row.last().is_none_or(|(c, _)| *c < self.ncols));
        while let Some((lead, lead_coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    row = sub_scaled(&row, pivot, &lead_coeff);
                }
                None => {
                    let inv = lead_coeff.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
            }
        }
        None
    }

    /// Back-substitute to the canonical reduced form, rows by pivot column.
    pub(crate) fn into_rref(self) -> Vec<SparseRow> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<SparseRow> = self.pivots.into_values().collect();
        // Clear each pivot column from every other row, working right to
        // left so already-cleared rows stay cleared.
        for k in (0..cols.len()).rev() {
            let pivot = rows[k].clone();
            let col = cols[k];
            for (j, row) in rows.iter_mut().enumerate() {
                if j == k {
                    continue;
                }
                if let Ok(idx) = row.binary_search_by_key(&col, |(c, _)| *c) {
                    let coeff = row[idx].1.clone();
                    *row = sub_scaled(row, &pivot, &coeff);
                }
            }
        }
        rows
    }
}

/// `a - c * b` on sorted sparse rows, dropping cancellations.
pub fn sub_scaled(a: &SparseRow, b: &SparseRow, c: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - c * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let v = -(c * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = -(c * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Sort, merge duplicate columns, drop zeros.
pub fn normalize_row(row: SparseRow) -> SparseRow {
    let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in row {
        let slot = map.entry(c).or_insert_with(Rational::zero);
        *slot += v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(row: &SparseRow, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

// ---------------------------------------------------------------------------
// Modular arithmetic helpers (62-bit prime field).
// ---------------------------------------------------------------------------

fn rational_mod(v: &Rational, p: u64) -> Option<u64> {
    let num = bigint_mod(v.numer(), p);
    let den = bigint_mod(v.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let p_big = BigInt::from(p);
    let mut m = v % &p_big;
    if m.is_negative() {
        m += &p_big;
    }
    m.to_u64().expect("residue fits in u64")
}

fn sub_scaled_mod(a: &[(usize, u64)], b: &[(usize, u64)], c: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = p - mul_mod(c, b[j].1, p);
            if v != p && v != 0 {
                out.push((b[j].0, v % p));
            }
            j += 1;
        } else {
            let v = (a[i].1 + p - mul_mod(c, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // Deterministic Miller-Rabin witnesses for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic function of the seed: the first prime produced by a seeded
/// stream of odd 62-bit candidates.
pub fn random_prime_62(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rational_parsing_and_formatting() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(5, 1)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn pivot_rule_is_row_major_first_nonzero() {
        let mat = m(&[&[2, 4], &[1, 2], &[0, 3]]);
        let basis = mat.row_space_basis();
        assert_eq!(mat.rank(RankMode::Exact), 2);
        assert_eq!(basis.pivot_rows, vec![0, 2]);
        assert_eq!(basis.pivot_cols, vec![0, 1]);
        // Canonical reduced basis: back-substitution clears column 1 from
        // the first pivot row.
        assert_eq!(
            basis.basis.rows(),
            &[vec![(0, rat(1, 1))], vec![(1, rat(1, 1))]]
        );
    }

    #[test]
    fn rank_edge_cases() {
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(RankMode::Exact), 0);
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rank(RankMode::Exact), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4], &[1, 2]]).rank(RankMode::Exact), 1);
        let empty = Matrix::new(5);
        assert_eq!(empty.rank(RankMode::Exact), 0);
    }

    #[test]
    fn solve_in_span_examples() {
        // Basis {(2,0),(1,1)}, target (1,-1) -> coefficients (1,-1).
        let coeffs = solve_in_span_dense(
            &[
                vec![rat(2, 1), rat(0, 1)],
                vec![rat(1, 1), rat(1, 1)],
            ],
            &[rat(1, 1), rat(-1, 1)],
        )
        .unwrap();
        assert_eq!(coeffs, vec![rat(1, 1), rat(-1, 1)]);

        // Outside the span.
        assert!(solve_in_span_dense(
            &[vec![rat(1, 1), rat(0, 1), rat(0, 1)]],
            &[rat(0, 1), rat(0, 1), rat(1, 1)],
        )
        .is_none());

        // Zero target is always in the span, with zero coefficients.
        let coeffs = solve_in_span_dense(
            &[vec![rat(1, 1), rat(2, 1)]],
            &[rat(0, 1), rat(0, 1)],
        )
        .unwrap();
        assert_eq!(coeffs, vec![rat(0, 1)]);
    }

    #[test]
    fn solve_against_dependent_basis_picks_first_solution() {
        let coeffs = solve_in_span_dense(
            &[
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(2, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ],
            &[rat(3, 1), rat(5, 1)],
        )
        .unwrap();
        assert_eq!(coeffs, vec![rat(3, 1), rat(0, 1), rat(5, 1)]);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let mat = m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        let basis = mat.row_space_basis();
        assert_eq!(basis.pivot_rows, vec![0, 1]);
        assert_eq!(
            basis.basis.rows(),
            &[
                vec![(0, rat(1, 1)), (2, rat(1, 1))],
                vec![(1, rat(1, 1)), (2, rat(1, 1))]
            ]
        );
    }

    #[test]
    fn transpose_preserves_rank() {
        let mat = m(&[&[2, 4, 0], &[1, 2, 0], &[0, 3, 1]]);
        assert_eq!(
            mat.rank(RankMode::Exact),
            mat.transpose().rank(RankMode::Exact)
        );
    }

    #[test]
    fn modular_rank_bounds_exact_rank() {
        let mat = m(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 7], &[3, 5, 2]]);
        let exact = mat.rank(RankMode::Exact);
        for seed in 0..8 {
            let modular = mat.rank_modular(seed).unwrap();
            assert!(modular <= exact);
            assert_eq!(mat.rank(RankMode::Hybrid { seed }), exact);
        }
    }

    #[test]
    fn hybrid_certifies_full_rank_without_exact_pass() {
        let mat = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(mat.rank(RankMode::Hybrid { seed: 7 }), 3);
    }

    #[test]
    fn random_prime_is_deterministic_and_prime() {
        let p = random_prime_62(42);
        assert_eq!(p, random_prime_62(42));
        assert!(is_prime_u64(p));
        assert!(p > (1 << 61) && p < (1 << 62));
    }

    #[test]
    fn push_row_rejects_out_of_bounds_columns() {
        let mut mat = Matrix::new(2);
        assert!(mat.push_row(vec![(2, rat(1, 1))]).is_err());
    }

    #[test]
    fn normalize_merges_and_drops_zeros() {
        let row = normalize_row(vec![(3, rat(1, 2)), (1, rat(2, 1)), (3, rat(-1, 2))]);
        assert_eq!(row, vec![(1, rat(2, 1))]);
    }
}
