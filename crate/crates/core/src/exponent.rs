//! Growth-rate estimation: the entropy-style function Phi on the simplex,
//! per-degree growth tables (codimension roots, Phi maxima over partitions
//! with nonzero multiplicity), and the constant-free factorial bound that
//! every degree must satisfy.
//!
//! All combinatorial quantities stay exact; only Phi values and n-th roots
//! are doubles, and those are presentation-layer outputs, never inputs to
//! an assertion with exact semantics.

use crate::algebra::{
    grading_to_haction, is_h_simple, Algebra, SimplicityOptions, SimplicityVerdict,
};
use crate::codim::{evaluation_matrix, Budget, Target};
use crate::error::{Error, Result};
use crate::exactlin::RankMode;
use crate::symfunc::{cocharacter_report_from_matrix, colength_bound, Partition};
use num::{BigUint, One, Zero};
use rayon::prelude::*;
use serde_json::json;
use std::fmt::Write as _;

/// Default degree ceiling for undecorated reports.
pub const DEFAULT_N_MAX_ORDINARY: usize = 5;
/// Default degree ceiling when decorations multiply the monomial count.
pub const DEFAULT_N_MAX_DECORATED: usize = 4;

/// The function 1 / (x1^x1 ... xs^xs) on the unit cube, with 0^0 = 1.
///
/// On the probability simplex this is the exponential of the Shannon
/// entropy; the uniform point (1/s, ..., 1/s) gives s.
pub fn phi(xs: &[f64]) -> Result<f64> {
    let mut log_sum = 0.0f64;
    for &x in xs {
        if !(0.0..=1.0).contains(&x) || x.is_nan() {
            return Err(Error::DomainViolation {
                detail: format!("phi argument {x} outside [0, 1]"),
            });
        }
        if x > 0.0 {
            log_sum += x * x.ln();
        }
    }
    Ok((-log_sum).exp())
}

/// Finite surrogate for "1 / (x^x (xi - x)^(xi - x)) increases on
/// (0, xi/2)": sample a uniform interior grid and require strict increase.
pub fn pushing_boxes_monotonicity_check(xi: f64, grid: usize) -> Result<bool> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::DomainViolation {
            detail: format!("interval parameter {xi} outside (0, 1]"),
        });
    }
    if grid < 2 {
        return Err(Error::DomainViolation {
            detail: format!("grid of {grid} points cannot witness an increase"),
        });
    }
    let half = xi / 2.0;
    let mut previous = f64::NEG_INFINITY;
    for k in 1..=grid {
        let x = half * (k as f64) / ((grid + 1) as f64);
        let value = phi(&[x, xi - x])?;
        if value <= previous {
            return Ok(false);
        }
        previous = value;
    }
    Ok(true)
}

/// One degree's growth data.
#[derive(Clone, Debug)]
pub struct ExponentRow {
    pub n: usize,
    /// Exact codimension.
    pub codimension: usize,
    /// c_n^(1/n), presentation double.
    pub codimension_root: f64,
    /// Max of phi(lambda/n) over partitions with nonzero multiplicity;
    /// absent when every multiplicity vanishes.
    pub d_n: Option<f64>,
    /// First partition (in descending order) attaining that max.
    pub argmax: Option<Partition>,
    /// Exact colength.
    pub colength: usize,
    /// The proven dimension-driven colength ceiling at this degree.
    pub colength_bound: BigUint,
    /// colength * max over nonzero-multiplicity partitions of
    /// n!/(lambda_1! ... lambda_s!), the exact factorial codimension bound.
    pub factorial_bound: BigUint,
}

/// Growth table for degrees 1..n_max.
#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub algebra: String,
    pub rows: Vec<ExponentRow>,
    /// Whether the simplicity test certified the algebra simple for the
    /// acting structure; codimension monotonicity is asserted exactly
    /// when it did.
    pub simple: bool,
}

fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::one();
    for k in 2..=n {
        out *= BigUint::from(k);
    }
    out
}

/// n! / (lambda_1! ... lambda_k!), exactly.
fn multinomial(lambda: &Partition) -> BigUint {
    let mut denom = BigUint::one();
    for &p in lambda.parts() {
        denom *= factorial(p);
    }
    factorial(lambda.n()) / denom
}

/// Presentation rounding for doubles: fixed 12 fractional digits,
/// round-half-even as provided by the standard formatter.
pub fn present_double(x: f64) -> String {
    format!("{x:.12}")
}

/// Build the growth table for degrees 1..=n_max.
///
/// Every row cross-checks the exact factorial bound
/// c_n <= colength * max multinomial; when the algebra is certified simple
/// for the acting structure, consecutive codimensions must also be
/// monotone nondecreasing.
pub fn exponent_report(
    a: &Algebra,
    target: Target,
    assoc: bool,
    n_max: usize,
    budget: &Budget,
    rank_mode: RankMode,
) -> Result<ExponentReport> {
    if n_max == 0 {
        return Err(Error::DomainViolation {
            detail: "growth table needs at least degree 1".to_string(),
        });
    }

    let simple = {
        let opts = SimplicityOptions::default();
        let verdict = match &target {
            Target::Ordinary => is_h_simple(a, &a.trivial_action(), &opts),
            Target::HAction(act) => is_h_simple(a, act, &opts),
            Target::Graded(g) => is_h_simple(a, &grading_to_haction(a, g)?, &opts),
        };
        matches!(verdict, SimplicityVerdict::Simple { .. })
    };

    let rows: Vec<ExponentRow> = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<ExponentRow> {
            let em = evaluation_matrix(n, a, target, assoc, budget)?;
            let report = cocharacter_report_from_matrix(&em, rank_mode)?;

            let mut d_n: Option<f64> = None;
            let mut argmax: Option<Partition> = None;
            let mut max_multinomial = BigUint::zero();
            for entry in &report.entries {
                if entry.multiplicity == 0 {
                    continue;
                }
                let fractions: Vec<f64> = entry
                    .lambda
                    .parts()
                    .iter()
                    .map(|&p| p as f64 / n as f64)
                    .collect();
                let value = phi(&fractions)?;
                if d_n.is_none_or(|best| value > best) {
                    d_n = Some(value);
                    argmax = Some(entry.lambda.clone());
                }
                max_multinomial = max_multinomial.max(multinomial(&entry.lambda));
            }

            let factorial_bound = BigUint::from(report.colength) * max_multinomial;
            if BigUint::from(report.codimension) > factorial_bound {
                return Err(Error::CrossCheckMismatch {
                    context: format!("factorial codimension bound at degree {n}"),
                    left: format!("codimension: {}", report.codimension),
                    right: format!("colength * max multinomial: {factorial_bound}"),
                });
            }

            Ok(ExponentRow {
                n,
                codimension: report.codimension,
                codimension_root: (report.codimension as f64).powf(1.0 / n as f64),
                d_n,
                argmax,
                colength: report.colength,
                colength_bound: colength_bound(a.dim(), n),
                factorial_bound,
            })
        })
        .collect::<Result<_>>()?;

    if simple {
        for pair in rows.windows(2) {
            if pair[0].codimension > pair[1].codimension {
                return Err(Error::CrossCheckMismatch {
                    context: format!(
                        "codimension monotonicity of simple algebra {} between degrees {} and {}",
                        a.name(),
                        pair[0].n,
                        pair[1].n
                    ),
                    left: pair[0].codimension.to_string(),
                    right: pair[1].codimension.to_string(),
                });
            }
        }
    }

    Ok(ExponentReport {
        algebra: a.name().to_string(),
        rows,
        simple,
    })
}

impl ExponentReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "codimension": r.codimension,
                    "codimension_root": present_double(r.codimension_root),
                    "d_n": r.d_n.map(present_double),
                    "argmax": r.argmax.as_ref().map(|l| l.parts().to_vec()),
                    "colength": r.colength,
                    "colength_bound": r.colength_bound.to_string(),
                    "factorial_bound": r.factorial_bound.to_string(),
                })
            })
            .collect();
        json!({
            "algebra": self.algebra,
            "simple": self.simple,
            "rows": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,codimension,codimension_root,d_n,argmax,colength,colength_bound,factorial_bound\n",
        );
        for r in &self.rows {
            let argmax = r
                .argmax
                .as_ref()
                .map(|l| {
                    l.parts()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n,
                r.codimension,
                present_double(r.codimension_root),
                r.d_n.map(present_double).unwrap_or_default(),
                argmax,
                r.colength,
                r.colength_bound,
                r.factorial_bound
            )
            .expect("write to string");
        }
        out
    }
}
