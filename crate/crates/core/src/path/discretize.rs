use super::{PathSegment, PiecewisePath, SampledPath};
use crate::algebra::{log_unitary, Unitary};
use crate::error::{Error, Result};

const MAX_REFINE_DEPTH: u32 = 30;

/// Replaces a sampled path by a homotopic piecewise-exponential one.
///
/// Consecutive samples `u, v` become the segment `u·e^{2πi s a}` with
/// `a = (1/2πi) log(u*v)`, which needs `‖u*v - 1‖ < 1`. Intervals that miss the
/// bound are bisected through the sampler when there is one.
pub fn discretize(xi: &SampledPath) -> Result<PiecewisePath> {
    discretize_with_bound(xi, 1.0)
}

/// As [`discretize`], with the step bound `‖u*v - 1‖ < bound` (`0 < bound ≤ 1`).
pub fn discretize_with_bound(xi: &SampledPath, bound: f64) -> Result<PiecewisePath> {
    let bound = bound.min(1.0);
    let mut points: Vec<(f64, Unitary)> = vec![xi.samples()[0].clone()];
    for w in xi.samples().windows(2) {
        refine(xi, &w[0], &w[1], bound, 0, &mut points)?;
    }
    let mut segments = Vec::with_capacity(points.len() - 1);
    let mut knots = Vec::with_capacity(points.len());
    knots.push(0.0);
    for w in points.windows(2) {
        let ratio = w[0].1.adjoint().mul(&w[1].1)?;
        let a = log_unitary(&ratio)?;
        segments.push(PathSegment::new(w[0].1.clone(), a)?);
        knots.push(w[1].0);
    }
    PiecewisePath::with_knots(segments, knots)
}

fn step_ok(u: &Unitary, v: &Unitary, bound: f64) -> Result<bool> {
    Ok(u.adjoint().mul(v)?.distance_from_one() < bound)
}

fn refine(
    xi: &SampledPath,
    left: &(f64, Unitary),
    right: &(f64, Unitary),
    bound: f64,
    depth: u32,
    out: &mut Vec<(f64, Unitary)>,
) -> Result<()> {
    if step_ok(&left.1, &right.1, bound)? {
        out.push(right.clone());
        return Ok(());
    }
    let Some(f) = xi.sampler() else {
        return Err(Error::Resolution(format!(
            "samples at t = {} and t = {} are too far apart and no sampler is attached",
            left.0, right.0
        )));
    };
    if depth >= MAX_REFINE_DEPTH {
        return Err(Error::Resolution(format!(
            "step bound not reached near t = {} after {MAX_REFINE_DEPTH} bisections",
            left.0
        )));
    }
    let tm = 0.5 * (left.0 + right.0);
    let mid = (tm, f(tm));
    refine(xi, left, &mid, bound, depth + 1, out)?;
    refine(xi, &mid, right, bound, depth + 1, out)
}
