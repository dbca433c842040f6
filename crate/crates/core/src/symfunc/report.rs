//! Cocharacter multiplicities and colengths, computed two independent ways
//! and cross-checked.
//!
//! The symmetric group permutes the variables of multilinear monomials;
//! identities of the algebra are stable under this action, so the group
//! acts on the quotient captured by an evaluation matrix (monomial rows
//! modulo the kernel of evaluation). The row for a permuted monomial is
//! another row of the same matrix, so every computation below is linear
//! algebra over already-computed rows:
//!
//! * symmetrizer method — the multiplicity of the irreducible module
//!   indexed by a partition equals the rank of the rows obtained by
//!   applying the Young symmetrizer to (spanning) quotient-basis
//!   monomials;
//! * character method — the trace of each conjugacy-class representative
//!   on the quotient, paired with irreducible characters through the
//!   standard inner-product formula.
//!
//! A report is only produced when both methods agree (a symmetrizer whose
//! expanded support would be excessive is skipped, and the report is
//! tagged as single-method).

use super::{
    centralizer_order, class_representative, dim_irreducible, irreducible_character, partitions,
    sn_act, symmetrizer_support_bound, young_symmetrizer, Partition, SymmetrizerVariant,
    YoungTableau,
};
use crate::algebra::Algebra;
use crate::codim::{evaluation_matrix, Budget, EvaluationMatrix, QuotientBasis, Target};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, RankMode, Rational, SparseRow, SpanSolver};
use crate::freealg::Monomial;
use num::{BigInt, BigUint, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// How the multiplicities in a report were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    /// Symmetrizer ranks and character inner products, cross-checked.
    Both,
    /// Character inner products only (some symmetrizer was over budget).
    CharacterOnly,
}

impl MethodTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::Both => "both",
            MethodTag::CharacterOnly => "character-only",
        }
    }
}

/// One partition's line in a cocharacter report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterEntry {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub dim_irreducible: BigUint,
}

/// The degree-`n` cocharacter of an algebra: multiplicities for every
/// partition of height at most the algebra dimension, their sum (the
/// colength), and the codimension they must add up to.
#[derive(Clone, Debug)]
pub struct CocharacterReport {
    pub n: usize,
    pub entries: Vec<CocharacterEntry>,
    pub colength: usize,
    pub codimension: usize,
    pub method: MethodTag,
}

impl CocharacterReport {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                let dim = match e.dim_irreducible.to_u64() {
                    Some(v) => json!(v),
                    None => json!(e.dim_irreducible.to_string()),
                };
                json!({
                    "lambda": e.lambda.parts(),
                    "multiplicity": e.multiplicity,
                    "dim_irr": dim,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "codimension": self.codimension,
            "colength": self.colength,
            "method": self.method.as_str(),
            "entries": entries,
        })
    }

    /// Flat CSV with the report-level fields repeated on every row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda,multiplicity,dim_irr,colength,codimension,method\n");
        for e in &self.entries {
            let lambda = e
                .lambda
                .parts()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.n,
                lambda,
                e.multiplicity,
                e.dim_irreducible,
                self.colength,
                self.codimension,
                self.method.as_str()
            )
            .expect("write to string");
        }
        out
    }
}

fn monomial_index(em: &EvaluationMatrix) -> BTreeMap<Monomial, usize> {
    em.monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

fn row_of(index: &BTreeMap<Monomial, usize>, m: &Monomial) -> Result<usize> {
    index.get(m).copied().ok_or_else(|| Error::CrossCheckMismatch {
        context: "permuted monomial lookup".to_string(),
        left: m.to_string(),
        right: "not among the enumerated monomials".to_string(),
    })
}

/// Multiplicity of the irreducible module indexed by `lambda` in the
/// quotient modeled by the evaluation matrix: the rank of the rows
/// obtained by applying the Young symmetrizer of the canonical tableau to
/// each quotient-basis monomial. Spanning monomials suffice, so the
/// quotient-basis pivots are enough.
pub fn multiplicity(lambda: &Partition, em: &EvaluationMatrix) -> Result<usize> {
    let qb = em.quotient_basis();
    let index = monomial_index(em);
    multiplicity_inner(lambda, em, &qb, &index)
}

fn multiplicity_inner(
    lambda: &Partition,
    em: &EvaluationMatrix,
    qb: &QuotientBasis,
    index: &BTreeMap<Monomial, usize>,
) -> Result<usize> {
    if lambda.n() != em.n {
        return Err(Error::DomainViolation {
            detail: format!(
                "multiplicity of {lambda} against a degree-{} evaluation matrix",
                em.n
            ),
        });
    }
    let e = young_symmetrizer(
        &YoungTableau::row_major(lambda.clone()),
        SymmetrizerVariant::RowColumn,
    );
    let mut mat = Matrix::new(em.matrix.ncols());
    for w in &qb.pivot_monomials {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (sigma, coeff) in e.terms() {
            let ridx = row_of(index, &sn_act(sigma, w)?)?;
            for (c, v) in &em.matrix.rows()[ridx] {
                let slot = acc.entry(*c).or_insert_with(Rational::zero);
                *slot += coeff * v;
            }
        }
        let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        mat.push_row(row)?;
    }
    Ok(mat.rank(RankMode::Exact))
}

/// Trace of a canonical representative of each conjugacy class on the
/// quotient, in the basis of quotient-pivot monomial rows.
fn quotient_traces(
    em: &EvaluationMatrix,
    qb: &QuotientBasis,
    index: &BTreeMap<Monomial, usize>,
) -> Result<BTreeMap<Partition, Rational>> {
    let pivot_rows: Vec<SparseRow> = qb
        .pivot_monomials
        .iter()
        .map(|m| Ok(em.matrix.rows()[row_of(index, m)?].clone()))
        .collect::<Result<_>>()?;
    let solver = SpanSolver::new(&pivot_rows, em.matrix.ncols());
    let mut traces = BTreeMap::new();
    for mu in partitions(em.n, em.n) {
        let sigma = class_representative(&mu);
        let mut trace = Rational::zero();
        for (i, w) in qb.pivot_monomials.iter().enumerate() {
            let ridx = row_of(index, &sn_act(&sigma, w)?)?;
            let coords = solver.solve(&em.matrix.rows()[ridx]).ok_or_else(|| {
                Error::CrossCheckMismatch {
                    context: "permutation image in quotient".to_string(),
                    left: format!("image row of pivot monomial {w}"),
                    right: "not in the row space of the pivot rows".to_string(),
                }
            })?;
            trace += &coords[i];
        }
        traces.insert(mu, trace);
    }
    Ok(traces)
}

/// The degree-`n` cocharacter report for an algebra and target, built on a
/// fresh evaluation matrix.
pub fn cocharacter_report(
    n: usize,
    a: &Algebra,
    target: Target,
    assoc: bool,
    budget: &Budget,
    rank_mode: RankMode,
) -> Result<CocharacterReport> {
    let em = evaluation_matrix(n, a, target, assoc, budget)?;
    cocharacter_report_from_matrix(&em, rank_mode)
}

/// As [`cocharacter_report`], reusing an already-built evaluation matrix.
pub fn cocharacter_report_from_matrix(
    em: &EvaluationMatrix,
    rank_mode: RankMode,
) -> Result<CocharacterReport> {
    report_with_symmetrizer_cap(em, rank_mode, &BigUint::from(100_000u32))
}

fn report_with_symmetrizer_cap(
    em: &EvaluationMatrix,
    rank_mode: RankMode,
    symmetrizer_cap: &BigUint,
) -> Result<CocharacterReport> {
    let n = em.n;
    let s = em.adim();
    let codimension = em.codimension(rank_mode);
    let qb = em.quotient_basis();
    let index = monomial_index(em);
    let traces = quotient_traces(em, &qb, &index)?;
    let classes = partitions(n, n);

    let results: Vec<(CocharacterEntry, bool)> = partitions(n, s)
        .par_iter()
        .map(|lambda| -> Result<(CocharacterEntry, bool)> {
            // Character inner product: sum over classes of
            // chi(lambda, class) * trace(class) / centralizer order.
            let mut total = Rational::zero();
            for mu in &classes {
                let chi = irreducible_character(lambda, mu)?;
                if chi == 0 {
                    continue;
                }
                let z = Rational::from_integer(BigInt::from(centralizer_order(mu)));
                total += Rational::from_integer(BigInt::from(chi)) * &traces[mu] / z;
            }
            if !total.is_integer() || total < Rational::zero() {
                return Err(Error::CrossCheckMismatch {
                    context: format!("character-method multiplicity of {lambda} at degree {n}"),
                    left: total.to_string(),
                    right: "a nonnegative integer".to_string(),
                });
            }
            let m_char = total
                .to_integer()
                .to_usize()
                .expect("multiplicity fits a machine word");

            let within_budget = symmetrizer_support_bound(lambda) <= *symmetrizer_cap;
            if within_budget {
                let m_sym = multiplicity_inner(lambda, em, &qb, &index)?;
                if m_sym != m_char {
                    return Err(Error::CrossCheckMismatch {
                        context: format!("multiplicity of {lambda} at degree {n}"),
                        left: format!("symmetrizer rank: {m_sym}"),
                        right: format!("character inner product: {m_char}"),
                    });
                }
            }
            Ok((
                CocharacterEntry {
                    lambda: lambda.clone(),
                    multiplicity: m_char,
                    dim_irreducible: dim_irreducible(lambda),
                },
                within_budget,
            ))
        })
        .collect::<Result<_>>()?;

    let method = if results.iter().all(|(_, both)| *both) {
        MethodTag::Both
    } else {
        MethodTag::CharacterOnly
    };
    let entries: Vec<CocharacterEntry> = results.into_iter().map(|(e, _)| e).collect();
    let colength: usize = entries.iter().map(|e| e.multiplicity).sum();

    let mut weighted = BigUint::zero();
    for e in &entries {
        weighted += BigUint::from(e.multiplicity) * &e.dim_irreducible;
    }
    if weighted != BigUint::from(codimension) {
        return Err(Error::CrossCheckMismatch {
            context: format!("cocharacter decomposition at degree {n}"),
            left: format!("sum of multiplicity * irreducible dimension: {weighted}"),
            right: format!("codimension: {codimension}"),
        });
    }

    let bound = colength_bound(s, n);
    if BigUint::from(colength) > bound {
        return Err(Error::CrossCheckMismatch {
            context: format!("colength bound at degree {n}"),
            left: format!("colength: {colength}"),
            right: format!("dimension-driven bound: {bound}"),
        });
    }

    Ok(CocharacterReport {
        n,
        entries,
        colength,
        codimension,
        method,
    })
}

/// The proven colength ceiling for an algebra of dimension `s` at degree
/// `n`: s * (n+1)^(s^2 + s).
pub fn colength_bound(s: usize, n: usize) -> BigUint {
    BigUint::from(s) * BigUint::from(n + 1).pow((s * s + s) as u32)
}
