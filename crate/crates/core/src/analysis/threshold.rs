//! Sudden-death points by bisection.
//!
//! A bracket is accepted when the measure is positive at one end and
//! non-positive at the other. That covers both a genuine sign change (the
//! unclamped closed forms) and a negativity that decays to exactly zero (the
//! numeric pipeline, which reports no negative eigenvalue once the state
//! becomes PPT).

use super::measure::{evaluate, Measure, ScenarioTemplate};
use crate::error::{Error, Result};

pub const BRACKET_TOL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub measure: String,
    pub subsystem: String,
    pub scenario: String,
    /// Bracket as supplied.
    pub bracket: (f64, f64),
    /// Bracket after the last halving.
    pub final_bracket: (f64, f64),
    pub root: f64,
    pub iterations: usize,
    /// Measure value at `root`.
    pub residual: f64,
}

/// Bisects `f` on `[lo, hi]` for the boundary of `{f > 0}`.
///
/// Returns the final bracket and the number of halvings.
pub fn bisect_positive_boundary(
    f: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<((f64, f64), usize)> {
    let ordered = lo < hi;
    if !ordered {
        return Err(Error::InvalidConfig(format!(
            "bracket [{lo}, {hi}] is empty"
        )));
    }
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    let lo_positive = f_lo > 0.0;
    if lo_positive == (f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while b - a > tol {
        if iterations == MAX_ITERATIONS {
            break;
        }
        let mid = 0.5 * (a + b);
        if (f(mid)? > 0.0) == lo_positive {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Ok(((a, b), iterations))
}

/// Locates where `measure` stops being positive for the given scenario.
pub fn find_threshold(
    template: &ScenarioTemplate,
    measure: &Measure,
    bracket: (f64, f64),
) -> Result<ThresholdResult> {
    measure.validate()?;
    let f = |r: f64| evaluate(template, measure, r);
    let (final_bracket, iterations) =
        bisect_positive_boundary(f, bracket.0, bracket.1, BRACKET_TOL)?;
    let root = 0.5 * (final_bracket.0 + final_bracket.1);
    Ok(ThresholdResult {
        measure: measure.name().to_string(),
        subsystem: measure.subsystem_label(template),
        scenario: template.at(root)?.name(),
        bracket,
        final_bracket,
        root,
        iterations,
        residual: evaluate(template, measure, root)?,
    })
}
