use super::PiecewisePath;
use crate::algebra::{universal_trace, unnormalized_block_trace, AffVector, TraceWeights, TracialFunctional};

/// Pre-determinant against the universal trace: `Σⱼ Tr_A(aⱼ)`.
pub fn pre_determinant(path: &PiecewisePath) -> AffVector {
    let k = path.shape().block_count();
    path.segments()
        .iter()
        .fold(AffVector::zeros(k), |acc, s| acc.add(&universal_trace(s.generator())))
}

/// Pre-determinant against an arbitrary bounded tracial functional.
pub fn pre_determinant_functional(path: &PiecewisePath, tau: &TracialFunctional) -> f64 {
    tau.apply(&pre_determinant(path))
}

pub fn pre_determinant_weights(path: &PiecewisePath, tau: &TraceWeights) -> f64 {
    pre_determinant(path).evaluate(tau)
}

/// Pre-determinant against each unnormalized block trace (integer on loops).
pub fn pre_determinant_unnormalized(path: &PiecewisePath) -> Vec<f64> {
    let k = path.shape().block_count();
    path.segments().iter().fold(vec![0.0; k], |mut acc, s| {
        for (a, x) in acc.iter_mut().zip(unnormalized_block_trace(s.generator())) {
            *a += x;
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraShape, SelfAdjoint, Unitary};

    #[test]
    fn constant_path_has_zero_determinant() {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let p = PiecewisePath::constant(Unitary::one(&s));
        assert_eq!(pre_determinant(&p), AffVector::zeros(2));
    }

    #[test]
    fn weights_pair_with_universal_value() {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let a = SelfAdjoint::diagonal(&s, &[vec![0.5, 0.0], vec![-1.0]]).unwrap();
        let p = PiecewisePath::exponential(Unitary::one(&s), a).unwrap();
        assert_eq!(pre_determinant(&p).0, vec![0.25, -1.0]);
        let w = TraceWeights::new(vec![0.5, 0.5]).unwrap();
        assert!((pre_determinant_weights(&p, &w) + 0.375).abs() < 1e-15);
        assert_eq!(pre_determinant_unnormalized(&p), vec![0.5, -1.0]);
    }
}
