use serde::{Deserialize, Serialize};

use super::k0::{circle_degree, k0_map, pairing_residual, K0Matrix};
use super::lambda::{lambda_matrix, LambdaMatrix};
use super::stone::stone_generator;
use crate::algebra::random::{random_selfadjoint_with, rng};
use crate::algebra::{universal_trace, SelfAdjoint, TraceWeights};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use rand::Rng;

/// Entries above `-POSITIVITY_TOL` count as non-negative.
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const UNITAL_TOL: f64 = 1e-8;

/// Which of `Λ`, `-Λ` is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
    None,
}

impl Sign {
    /// `±1`, with `1` for [`Sign::None`].
    pub fn factor(self) -> f64 {
        if self == Sign::Minus {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub sign: Sign,
    /// `±Λ` is entrywise non-negative for the chosen sign.
    pub positive: bool,
    /// Row sums of the sign-corrected matrix equal `1`.
    pub unital: bool,
    /// Maximum absolute row sum is at most `1`.
    pub contractive_sup: bool,
    pub circle_degree: Option<i64>,
}

fn nonnegative(m: &[Vec<f64>], s: f64) -> bool {
    m.iter().flatten().all(|&x| s * x >= -POSITIVITY_TOL)
}

/// Verdict from the matrix alone.
pub fn verdict_from_lambda(lambda: &LambdaMatrix) -> PositivityVerdict {
    let sign = if nonnegative(&lambda.matrix, 1.0) {
        Sign::Plus
    } else if nonnegative(&lambda.matrix, -1.0) {
        Sign::Minus
    } else {
        Sign::None
    };
    let sums = lambda.row_sums();
    let unital = sums.iter().all(|s| (sign.factor() * s - 1.0).abs() <= UNITAL_TOL);
    let contractive_sup = sums.iter().all(|s| s.abs() <= 1.0 + UNITAL_TOL);
    PositivityVerdict { sign, positive: sign != Sign::None, unital, contractive_sup, circle_degree: None }
}

/// [`verdict_from_lambda`] plus the circle degree when `θ` maps scalars to scalars.
pub fn positivity_report(lambda: &LambdaMatrix, hom: &Homomorphism) -> PositivityVerdict {
    PositivityVerdict { circle_degree: circle_degree(hom).ok(), ..verdict_from_lambda(lambda) }
}

/// `T_θ: T(B) → T(A)` as the transpose of `±Λ` (`k_A × k_B`).
pub fn trace_dual(lambda: &LambdaMatrix, verdict: &PositivityVerdict) -> Result<Vec<Vec<f64>>> {
    if verdict.sign == Sign::None {
        return Err(Error::NoDual("neither Λ nor -Λ is positive".into()));
    }
    if !verdict.unital {
        return Err(Error::NoDual("the sign-corrected Λ is not unital".into()));
    }
    Ok(lambda.scaled(verdict.sign.factor()).transpose())
}

/// Applies a dual matrix from [`trace_dual`] to a trace of `B`.
pub fn apply_trace_dual(dual: &[Vec<f64>], tau: &TraceWeights) -> Result<TraceWeights> {
    let w = tau.weights();
    TraceWeights::new(dual.iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StrictOrder {
    Holds { trials: usize, min_coordinate: Option<f64> },
    Violated { trial: usize, coordinate: usize, value: f64 },
    NotApplicable { reason: String },
}

/// For random `a` with `â ≫ 0`, every coordinate of `±Tr_B(S_θ(a))` must be
/// positive. Only checked when `±Λ` is unital and positive and `θ` has circle
/// degree `±1`.
pub fn strict_order_check(
    hom: &Homomorphism,
    verdict: &PositivityVerdict,
    trials: usize,
    seed: u64,
) -> Result<StrictOrder> {
    let reason = if verdict.sign == Sign::None {
        Some("no positive sign")
    } else if !verdict.unital {
        Some("not unital")
    } else if !matches!(verdict.circle_degree, Some(1) | Some(-1)) {
        Some("not injective on the circle")
    } else {
        None
    };
    if let Some(r) = reason {
        return Ok(StrictOrder::NotApplicable { reason: r.into() });
    }
    let src = hom.source();
    let mut r = rng(seed, 0x737472);
    let mut min_coordinate: Option<f64> = None;
    for trial in 0..trials {
        let a = random_selfadjoint_with(src, &mut r, 1.0);
        let hat = universal_trace(&a);
        let floor = hat.0.iter().copied().fold(f64::INFINITY, f64::min);
        let delta = r.random_range(0.01..1.0);
        let shift = SelfAdjoint::one(src).scale(delta - floor);
        let a = a.add(&shift)?;
        let image = universal_trace(&stone_generator(hom, &a)?).scale(verdict.sign.factor());
        for (coordinate, &value) in image.0.iter().enumerate() {
            if value <= 0.0 {
                return Ok(StrictOrder::Violated { trial, coordinate, value });
            }
            min_coordinate = Some(min_coordinate.map_or(value, |m| m.min(value)));
        }
    }
    Ok(StrictOrder::Holds { trials, min_coordinate })
}

/// The trivial morphism between the (zero) `K₁` groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum K1Morphism {
    Zero,
}

/// `(±K₀(θ), K₁(θ), ±Λ_θ)` with its consistency checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KtuReport {
    pub sign: Sign,
    pub k0: K0Matrix,
    pub k1: K1Morphism,
    pub lambda: LambdaMatrix,
    pub unit_class_image: Vec<i64>,
    pub target_unit_class: Vec<i64>,
    pub unit_class_preserved: bool,
    pub pairing_residual: f64,
}

/// Assembles the report from already computed pieces. With no positive sign
/// the matrices are left as they are.
pub fn ktu_report_from(lambda: &LambdaMatrix, k0: &K0Matrix, verdict: &PositivityVerdict) -> KtuReport {
    let (k0, lambda) = if verdict.sign == Sign::Minus {
        (k0.negated(), lambda.scaled(-1.0))
    } else {
        (k0.clone(), lambda.clone())
    };
    let unit_class_image = k0.apply(&crate::algebra::K0Class(lambda.source.unit_class())).0;
    let target_unit_class = lambda.target.unit_class();
    KtuReport {
        sign: verdict.sign,
        unit_class_preserved: unit_class_image == target_unit_class,
        pairing_residual: pairing_residual(&lambda, &k0),
        k1: K1Morphism::Zero,
        unit_class_image,
        target_unit_class,
        k0,
        lambda,
    }
}

pub fn ktu_report(hom: &Homomorphism) -> Result<KtuReport> {
    let lambda = lambda_matrix(hom)?;
    let k0 = k0_map(hom)?;
    Ok(ktu_report_from(&lambda, &k0, &verdict_from_lambda(&lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraShape;

    fn hom(e: &str, b: &[usize]) -> Homomorphism {
        Homomorphism::parse(e, AlgebraShape::new(b.to_vec()).unwrap()).unwrap()
    }

    fn verdict(e: &str, b: &[usize]) -> PositivityVerdict {
        let h = hom(e, b);
        positivity_report(&lambda_matrix(&h).unwrap(), &h)
    }

    #[test]
    fn verdict_examples() {
        let v = verdict("mult(power(-1) . proj1, proj2, proj3)", &[1, 1, 1]);
        assert_eq!((v.sign, v.positive, v.unital), (Sign::None, false, true));
        let v = verdict("det", &[2]);
        assert_eq!((v.sign, v.positive, v.unital, v.contractive_sup), (Sign::Plus, true, false, false));
        let v = verdict("power(-2)", &[1]);
        assert_eq!((v.sign, v.positive, v.unital, v.circle_degree), (Sign::Minus, true, false, Some(-2)));
        let v = verdict("pad(1)", &[2]);
        assert_eq!((v.sign, v.unital, v.contractive_sup, v.circle_degree), (Sign::Plus, false, true, None));
        let v = verdict("bar", &[1]);
        assert_eq!((v.sign, v.unital, v.circle_degree), (Sign::Minus, true, Some(-1)));
    }

    #[test]
    fn duals() {
        let h = hom("amplify(2)", &[1]);
        let l = lambda_matrix(&h).unwrap();
        let d = trace_dual(&l, &verdict_from_lambda(&l)).unwrap();
        assert!((d[0][0] - 1.0).abs() < 1e-12);
        let tau = apply_trace_dual(&d, &TraceWeights::uniform(1)).unwrap();
        assert!((tau.weights()[0] - 1.0).abs() < 1e-12);
        for (e, b) in [("pad(1)", vec![2]), ("mult(power(-1) . proj1, proj2, proj3)", vec![1, 1, 1])] {
            let l = lambda_matrix(&hom(e, &b)).unwrap();
            assert!(matches!(trace_dual(&l, &verdict_from_lambda(&l)), Err(Error::NoDual(_))), "{e}");
        }
    }

    #[test]
    fn dual_maps_simplex_to_simplex() {
        let h = hom("dsum(conj([[0, 1], [1, 0]]), id) . amplify_src(2)", &[2]);
        let l = lambda_matrix(&h).unwrap();
        let d = trace_dual(&l, &verdict_from_lambda(&l)).unwrap();
        let tau = apply_trace_dual(&d, &TraceWeights::new(vec![0.3, 0.7]).unwrap()).unwrap();
        assert!((tau.weights()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn strict_order() {
        let h = hom("amplify(2)", &[1]);
        let v = positivity_report(&lambda_matrix(&h).unwrap(), &h);
        assert!(matches!(strict_order_check(&h, &v, 20, 1).unwrap(), StrictOrder::Holds { .. }));
        let h = hom("id", &[2, 3]);
        let v = positivity_report(&lambda_matrix(&h).unwrap(), &h);
        assert!(matches!(strict_order_check(&h, &v, 20, 1).unwrap(), StrictOrder::Holds { .. }));
        let h = hom("pad(1)", &[2]);
        let v = positivity_report(&lambda_matrix(&h).unwrap(), &h);
        assert!(matches!(strict_order_check(&h, &v, 5, 1).unwrap(), StrictOrder::NotApplicable { .. }));
    }

    #[test]
    fn ktu_examples() {
        let r = ktu_report(&hom("amplify(2)", &[1])).unwrap();
        assert_eq!(r.k0.matrix, vec![vec![2]]);
        assert!(r.unit_class_preserved && r.pairing_residual < 1e-9);
        let r = ktu_report(&hom("pad(1)", &[2])).unwrap();
        assert_eq!(r.unit_class_image, vec![2]);
        assert!(!r.unit_class_preserved);
        let r = ktu_report(&hom("id", &[2, 1])).unwrap();
        assert!(r.unit_class_preserved && r.pairing_residual < 1e-12);
        let r = ktu_report(&hom("bar", &[3])).unwrap();
        assert_eq!((r.sign, r.k0.matrix.clone()), (Sign::Minus, vec![vec![1]]));
        assert!(r.unit_class_preserved);
    }
}
