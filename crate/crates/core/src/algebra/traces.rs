use serde::{Deserialize, Serialize};

use super::shape::AlgebraShape;
use crate::error::{Error, Result};

/// An element of `Aff T(A) ≅ ℝᵏ`: one value per extremal (normalized block) trace.
///
/// Ordered coordinatewise; the order unit is `(1, …, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffVector(pub Vec<f64>);

impl AffVector {
    pub fn zeros(k: usize) -> Self {
        AffVector(vec![0.0; k])
    }

    pub fn order_unit(k: usize) -> Self {
        AffVector(vec![1.0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn add(&self, other: &AffVector) -> AffVector {
        AffVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &AffVector) -> AffVector {
        AffVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> AffVector {
        AffVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Sup norm, i.e. the uniform norm of the affine function on the simplex.
    pub fn sup_norm(&self) -> f64 {
        self.0.iter().map(|a| a.abs()).fold(0.0, f64::max)
    }

    /// `f ≫ 0`: every coordinate strictly positive.
    pub fn strictly_positive(&self) -> bool {
        self.0.iter().all(|&a| a > 0.0)
    }

    /// Evaluates the affine function at a trace.
    pub fn evaluate(&self, tau: &TraceWeights) -> f64 {
        self.0.iter().zip(tau.weights()).map(|(a, w)| a * w).sum()
    }
}

/// A tracial state `τ = Σ wᵢ τᵢ`, with `τᵢ` the normalized trace of block `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TraceWeights(Vec<f64>);

impl TraceWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvariantViolation("empty trace weights".into()));
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::InvariantViolation(format!(
                "trace weights must be non-negative: {weights:?}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "trace weights sum to {sum}, not 1"
            )));
        }
        Ok(TraceWeights(weights))
    }

    /// The normalized trace of block `i` (an extreme point of the simplex).
    pub fn extremal(k: usize, i: usize) -> Self {
        let mut w = vec![0.0; k];
        w[i] = 1.0;
        TraceWeights(w)
    }

    pub fn uniform(k: usize) -> Self {
        TraceWeights(vec![1.0 / k as f64; k])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_shape(&self, shape: &AlgebraShape) -> Result<()> {
        if self.0.len() != shape.block_count() {
            return Err(Error::Shape(format!(
                "{} trace weights for {} blocks",
                self.0.len(),
                shape.block_count()
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for TraceWeights {
    type Error = Error;

    fn try_from(w: Vec<f64>) -> Result<Self> {
        TraceWeights::new(w)
    }
}

impl From<TraceWeights> for Vec<f64> {
    fn from(w: TraceWeights) -> Self {
        w.0
    }
}

/// A bounded real tracial functional `a ↦ Σ cᵢ τᵢ(a)` on `A_sa`.
///
/// Covers tracial states, unnormalized block traces, and pullbacks `τ ∘ S_θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TracialFunctional(pub Vec<f64>);

impl TracialFunctional {
    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    /// Unnormalized trace of block `i`: `nᵢ τᵢ`.
    pub fn unnormalized_block(shape: &AlgebraShape, i: usize) -> Self {
        let mut c = vec![0.0; shape.block_count()];
        c[i] = shape.block_size(i) as f64;
        TracialFunctional(c)
    }

    /// Pairs the functional with `â`.
    pub fn apply(&self, hat: &AffVector) -> f64 {
        self.0.iter().zip(&hat.0).map(|(c, a)| c * a).sum()
    }
}

impl From<&TraceWeights> for TracialFunctional {
    fn from(w: &TraceWeights) -> Self {
        TracialFunctional(w.0.clone())
    }
}

/// A class in `K₀(A) ≅ ℤᵏ`, counted in rank-one projections per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct K0Class(pub Vec<i64>);

impl K0Class {
    pub fn ranks(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}
