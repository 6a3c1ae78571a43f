use std::sync::Arc;

use super::{discretize, pre_determinant_unnormalized, PathSegment, PiecewisePath, SampledPath, TOL_INT, TOL_JOIN};
use crate::algebra::{K0Class, SelfAdjoint, Unitary};
use crate::error::{Error, Result};

/// Minimum samples per knot interval when a product or image path is rebuilt.
pub(crate) const MIN_SAMPLES: usize = 16;
/// Samples per unit of generator norm.
pub(crate) const SAMPLES_PER_NORM: f64 = 32.0;

pub(crate) fn samples_for(norm: f64) -> usize {
    MIN_SAMPLES.max((SAMPLES_PER_NORM * norm).ceil() as usize)
}

/// Sorted union of two knot vectors.
pub(crate) fn merge_knots(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    all.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    all
}

/// Sample times covering each knot interval, knots included.
pub(crate) fn sample_times(knots: &[f64], per_interval: impl Fn(f64, f64) -> usize) -> Vec<f64> {
    let mut times = vec![knots[0]];
    for w in knots.windows(2) {
        let n = per_interval(w[0], w[1]).max(1);
        for i in 1..=n {
            times.push(if i == n { w[1] } else { w[0] + (w[1] - w[0]) * i as f64 / n as f64 });
        }
    }
    times
}

fn generator_norm_at(p: &PiecewisePath, t: f64) -> f64 {
    let (j, _) = p.locate(t);
    p.segments()[j].generator().operator_norm()
}

/// `t ↦ p1(t)·p2(t)`, sampled on a common refinement and rediscretized.
pub fn pointwise_product(p1: &PiecewisePath, p2: &PiecewisePath) -> Result<PiecewisePath> {
    if p1.shape() != p2.shape() {
        return Err(Error::Shape(format!("{} vs {}", p1.shape(), p2.shape())));
    }
    let knots = merge_knots(p1.knots(), p2.knots());
    let times = sample_times(&knots, |a, b| {
        let mid = 0.5 * (a + b);
        samples_for(generator_norm_at(p1, mid) + generator_norm_at(p2, mid))
    });
    let (a, b) = (p1.clone(), p2.clone());
    let sampler = Arc::new(move |t: f64| a.at(t).mul(&b.at(t)).expect("shapes checked"));
    let xi = SampledPath::from_sampler(sampler, &times)?.with_knots(knots)?;
    discretize(&xi)
}

/// `p1` followed by `p2`, each run at double speed.
pub fn concat(p1: &PiecewisePath, p2: &PiecewisePath) -> Result<PiecewisePath> {
    if p1.shape() != p2.shape() {
        return Err(Error::Shape(format!("{} vs {}", p1.shape(), p2.shape())));
    }
    let gap = p1.end().element().distance(p2.start().element())?;
    if gap > TOL_JOIN {
        return Err(Error::InvariantViolation(format!(
            "cannot concatenate: endpoints differ by {gap:.3e}"
        )));
    }
    let segments: Vec<PathSegment> = p1.segments().iter().chain(p2.segments()).cloned().collect();
    let knots: Vec<f64> = p1
        .knots()
        .iter()
        .map(|k| 0.5 * k)
        .chain(p2.knots()[1..].iter().map(|k| 0.5 + 0.5 * k))
        .collect();
    PiecewisePath::with_knots(segments, knots)
}

/// `t ↦ p(1 - t)`.
pub fn reverse(p: &PiecewisePath) -> Result<PiecewisePath> {
    let segments = p
        .segments()
        .iter()
        .rev()
        .map(|s| PathSegment::new(s.end(), s.generator().scale(-1.0)))
        .collect::<Result<Vec<_>>>()?;
    let knots = p.knots().iter().rev().map(|k| 1.0 - k).collect();
    PiecewisePath::with_knots(segments, knots)
}

/// `ξ_p(t) = p e^{2πit} + (1 - p)`: one segment from `1` with generator `p`.
pub fn projection_loop(p: &SelfAdjoint) -> Result<PiecewisePath> {
    if !p.is_projection(1e-9) {
        return Err(Error::InvariantViolation("generator is not a projection".into()));
    }
    PiecewisePath::exponential(Unitary::one(p.shape()), p.clone())
}

/// The class of a loop in `π₁(U(A)) ≅ K₀(A)`: its winding against each
/// unnormalized block trace.
pub fn loop_k0_class(l: &PiecewisePath) -> Result<K0Class> {
    if !l.is_loop(TOL_JOIN) {
        return Err(Error::InvariantViolation("path is not closed".into()));
    }
    let mut ranks = Vec::with_capacity(l.shape().block_count());
    for w in pre_determinant_unnormalized(l) {
        let r = w.round();
        if (w - r).abs() > TOL_INT {
            return Err(Error::NotALoop { value: w, tolerance: TOL_INT });
        }
        ranks.push(r as i64);
    }
    Ok(K0Class(ranks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_selfadjoint, AlgebraShape};
    use crate::path::pre_determinant;

    fn shape(b: &[usize]) -> AlgebraShape {
        AlgebraShape::new(b.to_vec()).unwrap()
    }

    fn circle() -> PiecewisePath {
        projection_loop(&SelfAdjoint::one(&shape(&[1]))).unwrap()
    }

    #[test]
    fn projection_loop_values() {
        let z = projection_loop(&SelfAdjoint::zero(&shape(&[2]))).unwrap();
        assert_eq!(pre_determinant(&z).0, vec![0.0]);
        assert_eq!(pre_determinant(&circle()).0, vec![1.0]);
        let p = SelfAdjoint::diagonal(&shape(&[2]), &[vec![1.0, 0.0]]).unwrap();
        assert_eq!(pre_determinant(&projection_loop(&p).unwrap()).0, vec![0.5]);
    }

    #[test]
    fn projection_loop_rejects_non_projection() {
        let a = SelfAdjoint::one(&shape(&[2])).scale(0.5);
        assert!(matches!(projection_loop(&a), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn reverse_and_concat() {
        let c = circle();
        assert_eq!(pre_determinant(&reverse(&c).unwrap()).0, vec![-1.0]);
        let s = shape(&[3]);
        let a = random_selfadjoint(&s, 3, 0.8);
        let p = PiecewisePath::exponential(Unitary::one(&s), a).unwrap();
        let back = concat(&p, &reverse(&p).unwrap()).unwrap();
        assert!(pre_determinant(&back).0[0].abs() < 1e-8);
    }

    #[test]
    fn concat_requires_matching_endpoints() {
        let s = shape(&[1]);
        let half = SelfAdjoint::one(&s).scale(0.25);
        let p = PiecewisePath::exponential(Unitary::one(&s), half).unwrap();
        assert!(matches!(concat(&p, &p), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn orthogonal_projection_loops_add() {
        let s = shape(&[3]);
        let p = SelfAdjoint::diagonal(&s, &[vec![1.0, 0.0, 0.0]]).unwrap();
        let q = SelfAdjoint::diagonal(&s, &[vec![0.0, 1.0, 1.0]]).unwrap();
        let both = concat(&projection_loop(&p).unwrap(), &projection_loop(&q).unwrap()).unwrap();
        assert!((pre_determinant(&both).0[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_of_circles_winds_twice() {
        let p = pointwise_product(&circle(), &circle()).unwrap();
        assert!((pre_determinant(&p).0[0] - 2.0).abs() < 1e-10);
        assert_eq!(loop_k0_class(&p).unwrap(), K0Class(vec![2]));
    }

    #[test]
    fn product_with_constant_identity_is_unchanged() {
        let s = shape(&[2, 1]);
        let a = random_selfadjoint(&s, 11, 1.5);
        let p = PiecewisePath::exponential(Unitary::one(&s), a).unwrap();
        let one = PiecewisePath::constant(Unitary::one(&s));
        let q = pointwise_product(&p, &one).unwrap();
        let d = pre_determinant(&q).sub(&pre_determinant(&p));
        assert!(d.sup_norm() < 1e-10);
    }

    #[test]
    fn loop_classes() {
        let s = shape(&[3, 2]);
        let p = SelfAdjoint::diagonal(&s, &[vec![0.0, 1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(loop_k0_class(&projection_loop(&p).unwrap()).unwrap(), K0Class(vec![2, 0]));
        let c = PiecewisePath::constant(Unitary::one(&s));
        assert_eq!(loop_k0_class(&c).unwrap(), K0Class(vec![0, 0]));
    }

    #[test]
    fn open_path_is_rejected() {
        let s = shape(&[1]);
        let half = SelfAdjoint::one(&s).scale(0.25);
        let p = PiecewisePath::exponential(Unitary::one(&s), half).unwrap();
        assert!(loop_k0_class(&p).is_err());
    }
}
