use serde::{Deserialize, Serialize};

use super::stone::stone_generator;
use crate::algebra::random::{random_selfadjoint_with, rng};
use crate::algebra::{trace_zero_part, universal_trace, AffVector, AlgebraShape, SelfAdjoint, TracialFunctional};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// Tolerance for `S_θ(A₀) ⊆ B₀`.
pub const AUDIT_TOL: f64 = 1e-8;
/// Random `A₀` elements used by [`lambda_matrix`].
pub const AUDIT_SAMPLES: usize = 20;

/// `Λ_θ: Aff T(A) → Aff T(B)` in the extremal-trace bases, `k_B × k_A`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaMatrix {
    pub matrix: Vec<Vec<f64>>,
    pub source: AlgebraShape,
    pub target: AlgebraShape,
}

impl LambdaMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.source.block_count()
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.matrix[r][c]
    }

    pub fn apply(&self, x: &AffVector) -> AffVector {
        AffVector(self.matrix.iter().map(|row| row.iter().zip(&x.0).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn scaled(&self, s: f64) -> LambdaMatrix {
        LambdaMatrix {
            matrix: self.matrix.iter().map(|row| row.iter().map(|x| s * x).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.matrix.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn transpose(&self) -> Vec<Vec<f64>> {
        (0..self.cols()).map(|c| self.matrix.iter().map(|row| row[c]).collect()).collect()
    }

    /// `τ ↦ τ ∘ S_θ`: coefficients `Λᵀc` on the normalized block traces of `A`.
    pub fn pullback(&self, tau: &TracialFunctional) -> TracialFunctional {
        TracialFunctional(
            (0..self.cols())
                .map(|c| self.matrix.iter().zip(&tau.0).map(|(row, w)| row[c] * w).sum())
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &[Vec<f64>]) -> f64 {
        self.matrix
            .iter()
            .zip(other)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// `Λ_θ` with the `S_θ(A₀) ⊆ B₀` audit on `samples` random elements; also
/// returns the worst audit residual.
pub fn lambda_matrix_audited(hom: &Homomorphism, seed: u64, samples: usize) -> Result<(LambdaMatrix, f64)> {
    let src = hom.source();
    let k = src.block_count();
    let mut matrix = vec![vec![0.0; k]; hom.target().block_count()];
    for i in 0..k {
        let col = universal_trace(&stone_generator(hom, &SelfAdjoint::block_unit(src, i))?);
        for (r, x) in col.0.into_iter().enumerate() {
            matrix[r][i] = x;
        }
    }
    let mut r = rng(seed, 0x6c616d);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = trace_zero_part(&random_selfadjoint_with(src, &mut r, 1.0));
        let image = universal_trace(&stone_generator(hom, &a)?).sup_norm();
        worst = worst.max(image);
    }
    if worst > AUDIT_TOL {
        return Err(Error::WellDefinedness(format!(
            "S_θ moves a trace-zero element to trace {worst:.3e}"
        )));
    }
    let lambda = LambdaMatrix { matrix, source: src.clone(), target: hom.target().clone() };
    Ok((lambda, worst))
}

/// `Λ_θ`: column `i` is `Tr_B(S_θ(Eᵢ))` for the unit `Eᵢ` of source block `i`.
pub fn lambda_matrix(hom: &Homomorphism) -> Result<LambdaMatrix> {
    Ok(lambda_matrix_audited(hom, 0, AUDIT_SAMPLES)?.0)
}
