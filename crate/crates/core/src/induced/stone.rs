use crate::algebra::{exp_generator, log_unitary, SelfAdjoint};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// Agreement required between the generator read at `t₀` and at `t₀/2`.
pub const STONE_CHECK_TOL: f64 = 1e-9;
const MAX_HALVINGS: u32 = 60;

/// `S_θ(a)` with the step at which it was read off.
#[derive(Debug, Clone, PartialEq)]
pub struct StoneResult {
    pub generator: SelfAdjoint,
    pub t0: f64,
    pub halvings: u32,
    /// `‖S(t₀) - S(t₀/2)‖`.
    pub consistency_residual: f64,
}

fn read_at(hom: &Homomorphism, a: &SelfAdjoint, t: f64) -> Result<SelfAdjoint> {
    let v = hom.apply(&exp_generator(a, t))?;
    Ok(log_unitary(&v)?.scale(1.0 / t))
}

/// The self-adjoint `b` with `θ(e^{2πita}) = e^{2πitb}` for all real `t`.
///
/// `t₀ = 2^{-m}` is the first step with `‖θ(e^{2πit₀a}) - 1‖ ≤ 1/2` and
/// `t₀·gain(θ)·‖a‖ ≤ 1/4`. The second condition keeps `t₀b` inside the principal
/// branch; without it `power(4)` at `a = 1` would read `0` at `t₀ = 1`.
pub fn stone_generator_detailed(hom: &Homomorphism, a: &SelfAdjoint) -> Result<StoneResult> {
    if a.shape() != hom.source() {
        return Err(Error::Shape(format!("generator is over {}, map is from {}", a.shape(), hom.source())));
    }
    let bound = hom.gain() * a.operator_norm();
    let mut t0 = 1.0;
    for halvings in 0..=MAX_HALVINGS {
        let v = hom.apply(&exp_generator(a, t0))?;
        if t0 * bound <= 0.25 && v.distance_from_one() <= 0.5 {
            let generator = log_unitary(&v)?.scale(1.0 / t0);
            let half = read_at(hom, a, 0.5 * t0)?;
            let consistency_residual = generator.element().distance(half.element())?;
            if consistency_residual > STONE_CHECK_TOL {
                return Err(Error::Inconsistency(format!(
                    "generator read at t = {t0} and t = {} differs by {consistency_residual:.3e}",
                    0.5 * t0
                )));
            }
            return Ok(StoneResult { generator, t0, halvings, consistency_residual });
        }
        t0 *= 0.5;
    }
    Err(Error::Convergence(format!("no step within {MAX_HALVINGS} halvings reaches the log ball")))
}

/// `S_θ(a)`.
pub fn stone_generator(hom: &Homomorphism, a: &SelfAdjoint) -> Result<SelfAdjoint> {
    Ok(stone_generator_detailed(hom, a)?.generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::c;
    use crate::algebra::{random_selfadjoint, AlgebraShape, Element};

    fn shape(b: &[usize]) -> AlgebraShape {
        AlgebraShape::new(b.to_vec()).unwrap()
    }

    #[test]
    fn identity_returns_input() {
        let s = shape(&[2, 3]);
        let a = random_selfadjoint(&s, 1, 2.0);
        let h = Homomorphism::parse("id", s).unwrap();
        let b = stone_generator(&h, &a).unwrap();
        assert!(b.element().distance(a.element()).unwrap() < 1e-12);
    }

    #[test]
    fn pad_gives_a_plus_zero() {
        let s = shape(&[2]);
        let a = random_selfadjoint(&s, 2, 1.0);
        let h = Homomorphism::parse("pad(1)", s).unwrap();
        let b = stone_generator(&h, &a).unwrap();
        let m = b.element().block(0);
        assert!((m.view((0, 0), (2, 2)) - a.element().block(0)).norm() < 1e-12);
        assert!(m.row(2).norm() < 1e-12 && m.column(2).norm() < 1e-12);
    }

    #[test]
    fn power_scales_without_aliasing() {
        let s = shape(&[1]);
        for n in [-3i64, 2, 4, 7] {
            let h = Homomorphism::new(crate::hom::HomExpr::Power(n), s.clone()).unwrap();
            let x = 1.0;
            let a = SelfAdjoint::one(&s).scale(x);
            let b = stone_generator(&h, &a).unwrap();
            assert!((b.element().block(0)[(0, 0)] - c(n as f64 * x, 0.0)).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn det_is_unnormalized_trace() {
        let s = shape(&[3]);
        let a = random_selfadjoint(&s, 4, 1.0);
        let h = Homomorphism::parse("det", s).unwrap();
        let b = stone_generator(&h, &a).unwrap();
        let tr = a.element().block(0).trace().re;
        assert!((b.element().block(0)[(0, 0)].re - tr).abs() < 1e-12);
    }

    #[test]
    fn zero_generator() {
        let s = shape(&[2]);
        let h = Homomorphism::parse("bar", s.clone()).unwrap();
        let r = stone_generator_detailed(&h, &SelfAdjoint::zero(&s)).unwrap();
        assert_eq!(r.t0, 1.0);
        assert_eq!(r.generator.element(), &Element::zero(&s));
    }

    #[test]
    fn shape_mismatch() {
        let h = Homomorphism::parse("det", shape(&[2])).unwrap();
        assert!(matches!(stone_generator(&h, &SelfAdjoint::one(&shape(&[3]))), Err(Error::Shape(_))));
    }
}
