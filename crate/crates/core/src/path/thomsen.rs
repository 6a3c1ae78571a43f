use serde::{Deserialize, Serialize};

use super::{concat, pre_determinant, PathSegment, PiecewisePath};
use crate::algebra::{log_unitary, AffVector, AlgebraShape, Unitary};
use crate::error::{Error, Result};

const MAX_SQRT_DEPTH: u32 = 40;
const CU_TOL: f64 = 1e-8;

/// An element of `Aff T(A) / Δ̃(π₁(U(A)))`, where the lattice is `diag(1/nᵢ)ℤᵏ`.
///
/// The stored representative is reduced into `[0, 1/nᵢ)` per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomsenClass {
    pub representative: AffVector,
    pub lattice_spacing: Vec<f64>,
}

impl ThomsenClass {
    /// Reduces `value` modulo the lattice of `shape`.
    pub fn reduce(value: &AffVector, shape: &AlgebraShape) -> Self {
        let spacing: Vec<f64> = shape.blocks().iter().map(|&n| 1.0 / n as f64).collect();
        let rep = value
            .0
            .iter()
            .zip(&spacing)
            .map(|(&x, &s)| x.rem_euclid(s))
            .collect();
        ThomsenClass {
            representative: AffVector(rep),
            lattice_spacing: spacing,
        }
    }

    /// Per-coordinate distance of the class from the lattice (max over coordinates).
    pub fn distance_from_zero(&self) -> f64 {
        self.representative
            .0
            .iter()
            .zip(&self.lattice_spacing)
            .map(|(&r, &s)| r.min(s - r).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.distance_from_zero() < tol
    }

    /// Largest per-coordinate distance between the two classes, measured on the
    /// quotient circle of each coordinate. Infinite for different lattices.
    pub fn distance(&self, other: &ThomsenClass) -> f64 {
        if self.lattice_spacing != other.lattice_spacing {
            return f64::INFINITY;
        }
        self.representative
            .0
            .iter()
            .zip(&other.representative.0)
            .zip(&self.lattice_spacing)
            .map(|((&a, &b), &s)| {
                let d = (a - b).rem_euclid(s);
                d.min(s - d)
            })
            .fold(0.0, f64::max)
    }

    /// Equality modulo the lattice within `tol` per coordinate.
    pub fn same_class(&self, other: &ThomsenClass, tol: f64) -> bool {
        self.distance(other) < tol
    }
}

/// A piecewise-exponential path from `1` to `u`.
///
/// Uses the principal logarithm when it exists; otherwise walks to the principal
/// square root `v` and continues along `v·(path to v)`.
pub fn path_from_identity(u: &Unitary) -> Result<PiecewisePath> {
    build(u, 0)
}

fn build(u: &Unitary, depth: u32) -> Result<PiecewisePath> {
    match log_unitary(u) {
        Ok(a) => PiecewisePath::exponential(Unitary::one(u.shape()), a),
        Err(Error::BranchCut { .. }) if depth < MAX_SQRT_DEPTH => {
            let root = u.sqrt();
            let first = build(&root, depth + 1)?;
            let second = first
                .segments()
                .iter()
                .map(|s| PathSegment::new(root.mul(s.base())?, s.generator().clone()))
                .collect::<Result<Vec<_>>>()?;
            let second = PiecewisePath::with_knots(second, first.knots().to_vec())?;
            concat(&first, &second)
        }
        Err(e) => Err(e),
    }
}

/// `Δ̄(u)`: the pre-determinant of a path `1 → u`, reduced modulo the loop lattice.
pub fn thomsen_class(u: &Unitary) -> Result<ThomsenClass> {
    let path = path_from_identity(u)?;
    Ok(ThomsenClass::reduce(&pre_determinant(&path), u.shape()))
}

/// Membership in the closed commutator subgroup, i.e. the kernel of `Δ̄`.
pub fn cu_membership(u: &Unitary) -> Result<bool> {
    Ok(thomsen_class(u)?.is_zero(CU_TOL))
}
