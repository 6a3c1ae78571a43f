use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::lambda::LambdaMatrix;
use crate::algebra::linalg::{self, c};
use crate::algebra::{exp_generator, AlgebraShape, Element, K0Class, SelfAdjoint};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::path::ops::{sample_times, samples_for};
use crate::path::{discretize, loop_k0_class, projection_loop, PiecewisePath, SampledPath};

/// Tolerance for the image of the circle being scalar.
pub const CIRCLE_TOL: f64 = 1e-8;
const CIRCLE_PROBES: usize = 16;

/// `K₀(θ): ℤ^{k_A} → ℤ^{k_B}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Matrix {
    pub matrix: Vec<Vec<i64>>,
    pub source: AlgebraShape,
    pub target: AlgebraShape,
}

impl K0Matrix {
    pub fn apply(&self, x: &K0Class) -> K0Class {
        K0Class(self.matrix.iter().map(|row| row.iter().zip(&x.0).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn negated(&self) -> K0Matrix {
        K0Matrix {
            matrix: self.matrix.iter().map(|row| row.iter().map(|x| -x).collect()).collect(),
            ..self.clone()
        }
    }
}

/// `θ ∘ ξ`, sampled per segment at `max(16, ⌈32‖aⱼ‖⌉)` points and rediscretized.
pub fn pushforward(hom: &Homomorphism, path: &PiecewisePath) -> Result<PiecewisePath> {
    if path.shape() != hom.source() {
        return Err(Error::Shape(format!("path is over {}, map is from {}", path.shape(), hom.source())));
    }
    hom.apply(path.start())?;
    let knots = path.knots().to_vec();
    let times = sample_times(&knots, |a, b| {
        let (j, _) = path.locate(0.5 * (a + b));
        samples_for(path.segments()[j].generator().operator_norm())
    });
    let (h, p) = (hom.clone(), path.clone());
    let sampler = Arc::new(move |t: f64| h.apply(&p.at(t)).expect("source shape checked"));
    let xi = SampledPath::from_sampler(sampler, &times)?.with_knots(knots)?;
    discretize(&xi)
}

/// Column `i` is the class of `θ ∘ ξ_{eᵢ}` for a rank-one projection `eᵢ` in block `i`.
pub fn k0_map(hom: &Homomorphism) -> Result<K0Matrix> {
    let src = hom.source();
    let k = src.block_count();
    let mut matrix = vec![vec![0i64; k]; hom.target().block_count()];
    for i in 0..k {
        let e = SelfAdjoint::new(Element::matrix_unit(src, i, 0, 0))?;
        let class = loop_k0_class(&pushforward(hom, &projection_loop(&e)?)?)?;
        for (r, x) in class.0.into_iter().enumerate() {
            matrix[r][i] = x;
        }
    }
    Ok(K0Matrix { matrix, source: src.clone(), target: hom.target().clone() })
}

/// `‖ρ_B·K₀ - Λ·ρ_A‖_max`.
pub fn pairing_residual(lambda: &LambdaMatrix, k0: &K0Matrix) -> f64 {
    let (src, tgt) = (&lambda.source, &lambda.target);
    let mut worst: f64 = 0.0;
    for (r, (lrow, krow)) in lambda.matrix.iter().zip(&k0.matrix).enumerate() {
        for (i, (l, k)) in lrow.iter().zip(krow).enumerate() {
            let lhs = *k as f64 / tgt.block_size(r) as f64;
            let rhs = l / src.block_size(i) as f64;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// The `n` with `θ(z·1) = zⁿ·1`.
///
/// The image of the scalar circle must be scalar in every target block; the
/// degree is the unnormalized winding in block `j` divided by its size, and
/// has to agree across blocks.
pub fn circle_degree(hom: &Homomorphism) -> Result<i64> {
    let src = hom.source();
    let one = SelfAdjoint::one(src);
    for j in 0..CIRCLE_PROBES {
        let t = (j as f64 + 0.5) / CIRCLE_PROBES as f64;
        let y = hom.apply(&exp_generator(&one, t))?;
        for (r, b) in y.element().blocks().iter().enumerate() {
            let n = b.nrows();
            let scalar = b.trace() / c(n as f64, 0.0);
            let defect = linalg::max_abs(&(b - linalg::identity(n) * scalar));
            if defect > CIRCLE_TOL {
                return Err(Error::NotCircleValued(format!(
                    "target block {} at t = {t}: off-scalar part {defect:.3e}",
                    r + 1
                )));
            }
        }
    }
    let class = loop_k0_class(&pushforward(hom, &projection_loop(&one)?)?)?;
    let mut degree = None;
    for (r, &w) in class.0.iter().enumerate() {
        let m = hom.target().block_size(r) as i64;
        if w % m != 0 {
            return Err(Error::Inconsistency(format!("winding {w} in block {} of size {m}", r + 1)));
        }
        match degree {
            None => degree = Some(w / m),
            Some(d) if d != w / m => {
                return Err(Error::Inconsistency(format!(
                    "blocks disagree on the degree: {d} vs {}",
                    w / m
                )))
            }
            _ => {}
        }
    }
    degree.ok_or_else(|| Error::Inconsistency("target has no blocks".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_selfadjoint, Unitary};
    use crate::induced::lambda_matrix;
    use crate::path::pre_determinant;

    fn hom(e: &str, b: &[usize]) -> Homomorphism {
        Homomorphism::parse(e, AlgebraShape::new(b.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn k0_examples() {
        assert_eq!(k0_map(&hom("id", &[2, 1])).unwrap().matrix, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(k0_map(&hom("pad(1)", &[2])).unwrap().matrix, vec![vec![1]]);
        assert_eq!(k0_map(&hom("det", &[2])).unwrap().matrix, vec![vec![1]]);
        assert_eq!(k0_map(&hom("amplify(2)", &[1])).unwrap().matrix, vec![vec![2]]);
        assert_eq!(k0_map(&hom("power(-3)", &[1])).unwrap().matrix, vec![vec![-3]]);
        assert_eq!(
            k0_map(&hom("mult(power(-1) . proj1, proj2, proj3)", &[1, 1, 1])).unwrap().matrix,
            vec![vec![-1, 1, 1]]
        );
    }

    #[test]
    fn pairing_examples() {
        for (e, b) in [("pad(1)", vec![2]), ("id", vec![2, 3]), ("det", vec![3]), ("amplify(3)", vec![2])] {
            let h = hom(e, &b);
            let r = pairing_residual(&lambda_matrix(&h).unwrap(), &k0_map(&h).unwrap());
            assert!(r < 1e-9, "{e}: {r}");
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(circle_degree(&hom("power(3)", &[1])).unwrap(), 3);
        assert_eq!(circle_degree(&hom("bar", &[1])).unwrap(), -1);
        assert_eq!(circle_degree(&hom("amplify(2)", &[1])).unwrap(), 1);
        assert_eq!(circle_degree(&hom("det", &[3])).unwrap(), 3);
        assert!(matches!(circle_degree(&hom("pad(1)", &[2])), Err(Error::NotCircleValued(_))));
        assert!(matches!(
            circle_degree(&hom("dsum(id, bar) . amplify_src(2)", &[1])),
            Err(Error::Inconsistency(_))
        ));
    }

    #[test]
    fn pushforward_follows_the_image() {
        let s = AlgebraShape::new(vec![2]).unwrap();
        let a = random_selfadjoint(&s, 8, 1.5);
        let p = PiecewisePath::exponential(Unitary::one(&s), a).unwrap();
        let h = hom("pad(2)", &[2]);
        let q = pushforward(&h, &p).unwrap();
        for t in [0.0, 0.3, 0.77, 1.0] {
            let d = q.at(t).element().distance(h.apply(&p.at(t)).unwrap().element()).unwrap();
            assert!(d < 1e-10, "t = {t}: {d}");
        }
        // Unnormalized trace is preserved by padding.
        let lhs = pre_determinant(&q).0[0] * 4.0;
        let rhs = pre_determinant(&p).0[0] * 2.0;
        assert!((lhs - rhs).abs() < 1e-9);
    }
}
