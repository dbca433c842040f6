//! Evaluating decorated polynomials in a concrete algebra.
//!
//! Substitution is the unique homomorphic extension of an assignment of
//! coordinate vectors to variables: leaves evaluate to the decoration's
//! linear map applied to the assigned vector, internal nodes to the algebra
//! product. Decorations resolve against an [`ActionContext`] — projection
//! onto a grade component, or application of an acting-basis operator.
//!
//! A multilinear polynomial is an identity iff it vanishes on every tuple of
//! *basis* vectors; that is [`is_identity_multilinear`]. The general test
//! without multilinearity lives in the sibling generic-evaluation module.

use super::{Decoration, HPolynomial, Monomial};
use crate::algebra::{Algebra, GeneralizedHAction, Grading};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, SparseRow};
use num::{One, Zero};
use std::collections::BTreeMap;

/// How leaf decorations resolve during evaluation.
#[derive(Clone, Copy)]
pub enum ActionContext<'a> {
    /// Only undecorated variables are admissible.
    Trivial,
    /// `^hj` decorations apply the action's basis operators; `^(t)`
    /// decorations resolve through the action's basis labels (as produced
    /// by the grading-to-action conversion).
    Action(&'a GeneralizedHAction),
    /// `^(t)` decorations project onto grade components directly.
    Graded(&'a Grading),
    /// `^(t)` decorations act through the projector action derived from the
    /// grading; used to cross-check the direct projection semantics.
    GradedViaAction {
        grading: &'a Grading,
        action: &'a GeneralizedHAction,
    },
}

impl<'a> ActionContext<'a> {
    /// Check that a decoration is resolvable in this context without
    /// evaluating anything; used to validate a polynomial up front so the
    /// evaluation hot path may short-circuit on zeros.
    pub fn check(&self, d: &Decoration) -> Result<()> {
        match d {
            Decoration::None => Ok(()),
            Decoration::HBasis(j) => match self {
                ActionContext::Action(act)
                | ActionContext::GradedViaAction { action: act, .. } => {
                    if *j < act.hdim() {
                        Ok(())
                    } else {
                        Err(Error::UnknownDecoration {
                            decoration: format!("^h{}", j + 1),
                            detail: format!(
                                "the acting algebra has {} basis elements",
                                act.hdim()
                            ),
                        })
                    }
                }
                ActionContext::Trivial | ActionContext::Graded(_) => {
                    Err(Error::UnknownDecoration {
                        decoration: format!("^h{}", j + 1),
                        detail: "acting-basis decorations need an action context".to_string(),
                    })
                }
            },
            Decoration::Grade(t) => match self {
                ActionContext::Graded(g) | ActionContext::GradedViaAction { grading: g, .. } => {
                    if g.label_index(t).is_some() {
                        Ok(())
                    } else {
                        Err(Error::UnknownDecoration {
                            decoration: format!("^({t})"),
                            detail: format!("grading labels: {}", g.labels().join(", ")),
                        })
                    }
                }
                ActionContext::Action(act) => {
                    if act.hbasis_index(t).is_some() {
                        Ok(())
                    } else {
                        Err(Error::UnknownDecoration {
                            decoration: format!("^({t})"),
                            detail: format!(
                                "acting-basis labels: {}",
                                act.hbasis().join(", ")
                            ),
                        })
                    }
                }
                ActionContext::Trivial => Err(Error::UnknownDecoration {
                    decoration: format!("^({t})"),
                    detail: "grade decorations need a grading or action context".to_string(),
                }),
            },
        }
    }

    fn check_polynomial(&self, f: &HPolynomial) -> Result<()> {
        for (m, _) in f.terms() {
            for d in m.decorations() {
                self.check(d)?;
            }
        }
        Ok(())
    }
}

/// Apply a decoration's linear map to a dense vector. The decoration must
/// pass [`ActionContext::check`].
pub fn decoration_apply(
    ctx: &ActionContext,
    d: &Decoration,
    v: &[Rational],
) -> Result<Vec<Rational>> {
    ctx.check(d)?;
    Ok(match (d, ctx) {
        (Decoration::None, _) => v.to_vec(),
        (Decoration::HBasis(j), ActionContext::Action(act))
        | (Decoration::HBasis(j), ActionContext::GradedViaAction { action: act, .. }) => {
            act.apply_basis(*j, v)
        }
        (Decoration::Grade(t), ActionContext::Graded(g)) => {
            g.project_dense(g.label_index(t).expect("checked above"), v)
        }
        (Decoration::Grade(t), ActionContext::GradedViaAction { action, .. }) => {
            match action.hbasis_index(t) {
                Some(j) => action.apply_basis(j, v),
                // A label with an empty component has no projector in the
                // acting algebra; its projection is zero.
                None => vec![Rational::zero(); v.len()],
            }
        }
        (Decoration::Grade(t), ActionContext::Action(act)) => {
            act.apply_basis(act.hbasis_index(t).expect("checked above"), v)
        }
        _ => unreachable!("check rejects the remaining combinations"),
    })
}

/// Image of the basis vector `a_b` under a decoration's linear map, sparse.
pub fn decoration_column(
    ctx: &ActionContext,
    d: &Decoration,
    b: usize,
) -> Result<SparseRow> {
    ctx.check(d)?;
    let unit: SparseRow = vec![(b, Rational::one())];
    Ok(match (d, ctx) {
        (Decoration::None, _) => unit,
        (Decoration::HBasis(j), ActionContext::Action(act))
        | (Decoration::HBasis(j), ActionContext::GradedViaAction { action: act, .. }) => {
            act.apply_basis_sparse(*j, &unit)
        }
        (Decoration::Grade(t), ActionContext::Graded(g)) => {
            g.project_sparse(g.label_index(t).expect("checked above"), &unit)
        }
        (Decoration::Grade(t), ActionContext::GradedViaAction { action, .. }) => {
            match action.hbasis_index(t) {
                Some(j) => action.apply_basis_sparse(j, &unit),
                None => SparseRow::new(),
            }
        }
        (Decoration::Grade(t), ActionContext::Action(act)) => {
            act.apply_basis_sparse(act.hbasis_index(t).expect("checked above"), &unit)
        }
        _ => unreachable!("check rejects the remaining combinations"),
    })
}

/// Homomorphic evaluation of a polynomial at dense coordinate vectors;
/// `assignment[i]` is the value of `x_{i+1}`.
pub fn substitute(
    f: &HPolynomial,
    assignment: &[Vec<Rational>],
    a: &Algebra,
    ctx: &ActionContext,
) -> Result<Vec<Rational>> {
    let s = a.dim();
    for (i, v) in assignment.iter().enumerate() {
        if v.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: v.len(),
                context: format!("assignment for x{}", i + 1),
            });
        }
    }
    let mut out = vec![Rational::zero(); s];
    for (m, c) in f.terms() {
        let value = eval_dense(m, assignment, a, ctx)?;
        for (o, x) in out.iter_mut().zip(value) {
            *o += c * &x;
        }
    }
    Ok(out)
}

fn eval_dense(
    m: &Monomial,
    assignment: &[Vec<Rational>],
    a: &Algebra,
    ctx: &ActionContext,
) -> Result<Vec<Rational>> {
    match m {
        Monomial::Leaf { var, decoration } => {
            let v = assignment.get(*var - 1).ok_or(Error::UnassignedVariable {
                var: *var,
            })?;
            decoration_apply(ctx, decoration, v)
        }
        Monomial::Product(l, r) => {
            let lv = eval_dense(l, assignment, a, ctx)?;
            let rv = eval_dense(r, assignment, a, ctx)?;
            a.multiply(&lv, &rv)
        }
    }
}

/// Evaluate one monomial where variable `x_i` is the basis vector with
/// index `tuple[i-1]`. Decorations must already be checked; zero factors
/// short-circuit.
pub fn evaluate_monomial_on_basis_tuple(
    m: &Monomial,
    tuple: &[usize],
    a: &Algebra,
    ctx: &ActionContext,
) -> Result<SparseRow> {
    match m {
        Monomial::Leaf { var, decoration } => {
            let b = *tuple.get(*var - 1).ok_or(Error::UnassignedVariable {
                var: *var,
            })?;
            decoration_column(ctx, decoration, b)
        }
        Monomial::Product(l, r) => {
            let lv = evaluate_monomial_on_basis_tuple(l, tuple, a, ctx)?;
            if lv.is_empty() {
                return Ok(SparseRow::new());
            }
            let rv = evaluate_monomial_on_basis_tuple(r, tuple, a, ctx)?;
            if rv.is_empty() {
                return Ok(SparseRow::new());
            }
            Ok(a.multiply_sparse(&lv, &rv))
        }
    }
}

/// Decide whether a multilinear polynomial vanishes identically, by
/// exhausting all `s^n` basis tuples (sufficient by multilinearity).
pub fn is_identity_multilinear(
    f: &HPolynomial,
    a: &Algebra,
    ctx: &ActionContext,
) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let n = f.max_var();
    if !f.is_multilinear(n) {
        let offender = f
            .terms()
            .find(|(m, _)| !m.is_multilinear(n))
            .map(|(m, _)| m.to_string())
            .unwrap_or_default();
        return Err(Error::NotMultilinear {
            detail: format!("term {offender} is not multilinear in x1..x{n}"),
        });
    }
    ctx.check_polynomial(f)?;
    let s = a.dim();
    let mut tuple = vec![0usize; n];
    loop {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (m, c) in f.terms() {
            let value = evaluate_monomial_on_basis_tuple(m, &tuple, a, ctx)?;
            for (k, x) in value {
                let slot = acc.entry(k).or_insert_with(Rational::zero);
                *slot += c * &x;
            }
        }
        if acc.values().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        // Advance the odometer over basis tuples.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < s {
                break;
            }
            tuple[i] = 0;
        }
    }
}
