use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::lambda::lambda_matrix;
use crate::algebra::linalg::{self, c};
use crate::algebra::{AlgebraShape, Element, TraceWeights, TracialFunctional};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// Agreement required between the values at `N` and `2N`.
pub const G_CHECK_TOL: f64 = 1e-8;
/// Agreement required between `F(τ)` and `τ ∘ S_θ`.
pub const F_TAU_TOL: f64 = 1e-8;
const MAX_DOUBLINGS: u32 = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct GThetaResult {
    pub value: Element,
    /// The `N` at which the limit was read.
    pub n: u64,
    /// `‖G(N) - G(2N)‖`.
    pub constancy_residual: f64,
}

fn read_at(hom: &Homomorphism, a: &Element, n: f64) -> Result<(Element, f64)> {
    let x = a.scale(c(0.0, 2.0 * PI / n)).expm();
    let y = hom.apply_gl(&x)?;
    let dist = (&y - &Element::one(y.shape())).operator_norm();
    Ok((y, dist))
}

fn log_scaled(y: &Element, n: f64) -> Result<Element> {
    let blocks = y.blocks().iter().map(linalg::log_near_identity).collect::<Result<Vec<_>>>()?;
    Ok(Element::new(y.shape().clone(), blocks)?.scale(c(0.0, -n / (2.0 * PI))))
}

/// `G_θ(a) = (N/2πi) log θ(e^{2πia/N})` for the first `N = 2^m` with
/// `‖θ(e^{2πia/N}) - 1‖ < 1/2` and `gain(θ)·‖a‖/N ≤ 1/4`, checked against `2N`.
pub fn g_theta_detailed(hom: &Homomorphism, a: &Element) -> Result<GThetaResult> {
    if a.shape() != hom.source() {
        return Err(Error::Shape(format!("input is over {}, map is from {}", a.shape(), hom.source())));
    }
    let bound = hom.gain() * a.operator_norm();
    let mut n = 1u64;
    for _ in 0..=MAX_DOUBLINGS {
        let nf = n as f64;
        // Large steps can overflow in θ before the gain condition is met.
        if bound / nf > 0.25 {
            n *= 2;
            continue;
        }
        let (y, dist) = read_at(hom, a, nf)?;
        if dist < 0.5 {
            let value = log_scaled(&y, nf)?;
            let (y2, _) = read_at(hom, a, 2.0 * nf)?;
            let constancy_residual = value.distance(&log_scaled(&y2, 2.0 * nf)?)?;
            if constancy_residual > G_CHECK_TOL {
                return Err(Error::Inconsistency(format!(
                    "values at N = {n} and N = {} differ by {constancy_residual:.3e}",
                    2 * n
                )));
            }
            return Ok(GThetaResult { value, n, constancy_residual });
        }
        n *= 2;
    }
    Err(Error::Convergence(format!("no N ≤ 2^{MAX_DOUBLINGS} brings θ(e^(2πia/N)) near 1")))
}

pub fn g_theta(hom: &Homomorphism, a: &Element) -> Result<Element> {
    Ok(g_theta_detailed(hom, a)?.value)
}

/// Real basis of `A` as a vector space over ℝ: `E_rc` then `i·E_rc`, per block,
/// entries row-major.
pub fn real_basis(shape: &AlgebraShape) -> Vec<Element> {
    let mut out = Vec::with_capacity(2 * shape.dimension());
    for (i, &n) in shape.blocks().iter().enumerate() {
        for r in 0..n {
            for col in 0..n {
                let e = Element::matrix_unit(shape, i, r, col);
                out.push(e.clone());
                out.push(e.scale(c(0.0, 1.0)));
            }
        }
    }
    out
}

/// Coordinates of `x` in [`real_basis`].
pub fn real_coordinates(x: &Element) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * x.shape().dimension());
    for b in x.blocks() {
        for r in 0..b.nrows() {
            for col in 0..b.ncols() {
                out.push(b[(r, col)].re);
                out.push(b[(r, col)].im);
            }
        }
    }
    out
}

/// `G_θ` as a real `2d_B × 2d_A` matrix (`d = Σ nᵢ²`), row-major.
pub fn gl_real_matrix(hom: &Homomorphism) -> Result<Vec<Vec<f64>>> {
    let cols = real_basis(hom.source())
        .iter()
        .map(|e| Ok(real_coordinates(&g_theta(hom, e)?)))
        .collect::<Result<Vec<_>>>()?;
    let rows = 2 * hom.target().dimension();
    Ok((0..rows).map(|r| cols.iter().map(|col| col[r]).collect()).collect())
}

/// `max_e ‖G_θ(i·e) - i·G_θ(e)‖` over the matrix units `e`; zero iff `G_θ` is ℂ-linear.
pub fn c_linearity_defect(hom: &Homomorphism) -> Result<f64> {
    let src = hom.source();
    let mut worst: f64 = 0.0;
    for (i, &n) in src.blocks().iter().enumerate() {
        for r in 0..n {
            for col in 0..n {
                let e = Element::matrix_unit(src, i, r, col);
                let lhs = g_theta(hom, &e.scale(c(0.0, 1.0)))?;
                let rhs = g_theta(hom, &e)?.scale(c(0.0, 1.0));
                worst = worst.max(lhs.distance(&rhs)?);
            }
        }
    }
    Ok(worst)
}

/// `F(τ)` on the block units of `A`, next to `τ ∘ S_θ` read from `Λ_θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FTauResult {
    /// Coefficients of `F(τ)` on the normalized block traces of `A`.
    pub functional: TracialFunctional,
    pub via_lambda: TracialFunctional,
    pub residual: f64,
}

/// `F(τ)(a) = lim τ((n/2πi) log θ(e^{2πia/n}))`, evaluated on each block unit.
pub fn f_tau_dual(hom: &Homomorphism, tau: &TraceWeights) -> Result<FTauResult> {
    tau.check_shape(hom.target())?;
    let src = hom.source();
    let w = tau.weights();
    let coefficients = (0..src.block_count())
        .map(|i| {
            let g = g_theta(hom, &Element::block_unit(src, i))?;
            Ok(g.blocks()
                .iter()
                .zip(w)
                .map(|(b, wr)| wr * b.trace().re / b.nrows() as f64)
                .sum())
        })
        .collect::<Result<Vec<f64>>>()?;
    let via_lambda = lambda_matrix(hom)?.pullback(&TracialFunctional::from(tau));
    let residual = coefficients
        .iter()
        .zip(&via_lambda.0)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > F_TAU_TOL {
        return Err(Error::Inconsistency(format!("F(τ) and τ∘S_θ differ by {residual:.3e}")));
    }
    Ok(FTauResult { functional: TracialFunctional(coefficients), via_lambda, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::{random_element_with, rng};

    fn hom(e: &str, b: &[usize]) -> Homomorphism {
        Homomorphism::parse(e, AlgebraShape::new(b.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_identity() {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let a = random_element_with(&s, &mut rng(1, 0), 0.7);
        let g = g_theta(&hom("id", &[2, 1]), &a).unwrap();
        assert!(g.distance(&a).unwrap() < 1e-10);
    }

    #[test]
    fn modtwist_matrix() {
        for (n, al, be) in [(1, 0.5, -0.3), (2, 0.0, 0.0), (-1, 1.0, 0.5), (3, -0.25, 0.75)] {
            let h = hom(&format!("modtwist({al}, {be}, {n})"), &[1]);
            let m = gl_real_matrix(&h).unwrap();
            let want = [[n as f64, -al], [0.0, n as f64 - be]];
            for r in 0..2 {
                for col in 0..2 {
                    assert!((m[r][col] - want[r][col]).abs() < 1e-8, "{n} {al} {be}: {m:?}");
                }
            }
        }
    }

    #[test]
    fn c_linearity() {
        assert!(c_linearity_defect(&hom("modtwist(0, 0) . power(3)", &[1])).unwrap() < 1e-10);
        assert!(c_linearity_defect(&hom("id", &[2])).unwrap() < 1e-10);
        assert!(c_linearity_defect(&hom("modtwist(0.5, -0.3) . power(1)", &[1])).unwrap() > 0.5);
    }

    #[test]
    fn f_tau_examples() {
        let r = f_tau_dual(&hom("pad(1)", &[2]), &TraceWeights::uniform(1)).unwrap();
        assert!((r.functional.0[0] - 2.0 / 3.0).abs() < 1e-10);
        let tau = TraceWeights::new(vec![0.2, 0.8]).unwrap();
        let r = f_tau_dual(&hom("id", &[2, 3]), &tau).unwrap();
        assert!((r.functional.0[0] - 0.2).abs() < 1e-10 && (r.functional.0[1] - 0.8).abs() < 1e-10);
    }
}
