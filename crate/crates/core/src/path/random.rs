//! Seeded random piecewise-exponential paths.

use rand::Rng;

use super::{PathSegment, PiecewisePath};
use crate::algebra::random::random_selfadjoint_with;
use crate::algebra::Unitary;

/// A path from `start` with `segments` pieces, each generator of norm at most
/// `bound`, on random knots at least `1/(4·segments)` apart.
pub fn random_path_with<R: Rng + ?Sized>(start: Unitary, segments: usize, bound: f64, rng: &mut R) -> PiecewisePath {
    let k = segments.max(1);
    let shape = start.shape().clone();
    let mut pieces = Vec::with_capacity(k);
    let mut base = start;
    for _ in 0..k {
        let seg = PathSegment::new(base, random_selfadjoint_with(&shape, rng, bound)).expect("same shape");
        base = seg.end();
        pieces.push(seg);
    }
    // Each interval gets a quarter of the uniform width plus a random share of the rest.
    let shares: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = shares.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let mut knots = vec![0.0];
    for s in &shares {
        let width = 0.25 / k as f64 + 0.75 * s / total;
        knots.push(knots.last().unwrap() + width);
    }
    let scale = *knots.last().unwrap();
    for x in knots.iter_mut() {
        *x /= scale;
    }
    knots[k] = 1.0;
    PiecewisePath::with_knots(pieces, knots).expect("segments join by construction")
}
