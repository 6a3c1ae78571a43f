use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{self, c, CMat, HermitianSpectrum};
use super::shape::AlgebraShape;
use crate::error::{Error, Result};

/// Numerical tolerances for the validated element roles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Self-adjointness: `‖a - a*‖`.
    pub sa: f64,
    /// Unitarity: `‖u*u - 1‖`.
    pub unitary: f64,
    /// Minimum distance of an eigenvalue from `-1` before a logarithm refuses.
    pub branch: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sa: 1e-9,
            unitary: 1e-9,
            branch: 1e-8,
        }
    }
}

/// A block-diagonal complex matrix over an [`AlgebraShape`].
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    shape: AlgebraShape,
    blocks: Vec<CMat>,
}

impl Element {
    pub fn new(shape: AlgebraShape, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != shape.block_count() {
            return Err(Error::Shape(format!(
                "{} blocks given for shape {shape}",
                blocks.len()
            )));
        }
        for (i, (b, &n)) in blocks.iter().zip(shape.blocks()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::Shape(format!(
                    "block {i} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Element { shape, blocks })
    }

    /// Builds blocks from a per-block closure `f(i, n)`.
    pub fn from_fn(shape: &AlgebraShape, mut f: impl FnMut(usize, usize) -> CMat) -> Self {
        let blocks = shape
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, &n)| f(i, n))
            .collect();
        Element {
            shape: shape.clone(),
            blocks,
        }
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        Self::from_fn(shape, |_, n| CMat::zeros(n, n))
    }

    pub fn one(shape: &AlgebraShape) -> Self {
        Self::from_fn(shape, |_, n| linalg::identity(n))
    }

    /// The unit of block `i`, zero elsewhere.
    pub fn block_unit(shape: &AlgebraShape, i: usize) -> Self {
        Self::from_fn(shape, |j, n| {
            if i == j {
                linalg::identity(n)
            } else {
                CMat::zeros(n, n)
            }
        })
    }

    /// Matrix unit `E_{rc}` in block `i`.
    pub fn matrix_unit(shape: &AlgebraShape, i: usize, r: usize, col: usize) -> Self {
        let mut e = Self::zero(shape);
        e.blocks[i][(r, col)] = c(1.0, 0.0);
        e
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.blocks[i]
    }

    pub fn into_blocks(self) -> Vec<CMat> {
        self.blocks
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint())
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.map_blocks(|b| b.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_blocks(|b| b * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn map_blocks(&self, mut f: impl FnMut(&CMat) -> CMat) -> Self {
        Element {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(|b| f(b)).collect(),
        }
    }

    pub fn zip_blocks(&self, other: &Element, mut f: impl FnMut(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Element {
            shape: self.shape.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn check_same_shape(&self, other: &Element) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// Operator norm: the largest singular value over all blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::smallest_singular_value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest absolute entry across blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    /// `‖self - other‖` in operator norm.
    pub fn distance(&self, other: &Element) -> Result<f64> {
        Ok(self.zip_blocks(other, |a, b| a - b)?.operator_norm())
    }

    pub fn self_adjoint_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| linalg::spectral_norm(&(b - b.adjoint())))
            .fold(0.0, f64::max)
    }

    pub fn unitary_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let n = b.nrows();
                linalg::spectral_norm(&(b.adjoint() * b - linalg::identity(n)))
            })
            .fold(0.0, f64::max)
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Element) -> Result<Self> {
        self.zip_blocks(other, |a, b| a * b - b * a)
    }

    /// Per-block raw trace (complex).
    pub fn block_traces(&self) -> Vec<Complex64> {
        self.blocks.iter().map(|b| b.trace()).collect()
    }

    /// General matrix exponential per block.
    pub fn expm(&self) -> Self {
        self.map_blocks(linalg::expm)
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        self.zip_blocks(rhs, |a, b| a + b).expect("shape mismatch in Element addition")
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.zip_blocks(rhs, |a, b| a - b).expect("shape mismatch in Element subtraction")
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        self.zip_blocks(rhs, |a, b| a * b).expect("shape mismatch in Element product")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale_real(-1.0)
    }
}

/// Self-adjoint element.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfAdjoint(Element);

impl SelfAdjoint {
    pub fn new(e: Element) -> Result<Self> {
        Self::with_tolerance(e, Tolerances::default().sa)
    }

    /// Validates within `tol` and then symmetrizes away the residue.
    pub fn with_tolerance(e: Element, tol: f64) -> Result<Self> {
        let defect = e.self_adjoint_defect();
        if defect > tol {
            return Err(Error::InvariantViolation(format!(
                "element is not self-adjoint (‖a - a*‖ = {defect:.3e})"
            )));
        }
        Ok(Self::hermitize(&e))
    }

    /// Takes the Hermitian part without validation.
    pub fn hermitize(e: &Element) -> Self {
        SelfAdjoint(e.map_blocks(linalg::hermitian_part))
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        SelfAdjoint(Element::zero(shape))
    }

    pub fn one(shape: &AlgebraShape) -> Self {
        SelfAdjoint(Element::one(shape))
    }

    pub fn block_unit(shape: &AlgebraShape, i: usize) -> Self {
        SelfAdjoint(Element::block_unit(shape, i))
    }

    /// Diagonal self-adjoint element from real diagonal entries per block.
    pub fn diagonal(shape: &AlgebraShape, diagonals: &[Vec<f64>]) -> Result<Self> {
        if diagonals.len() != shape.block_count() {
            return Err(Error::Shape("one diagonal per block required".into()));
        }
        let blocks = diagonals
            .iter()
            .map(|d| CMat::from_diagonal(&nalgebra::DVector::from_iterator(d.len(), d.iter().map(|&x| c(x, 0.0)))))
            .collect();
        Ok(SelfAdjoint(Element::new(shape.clone(), blocks)?))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.0.shape()
    }

    pub fn scale(&self, s: f64) -> Self {
        SelfAdjoint(self.0.scale_real(s))
    }

    pub fn add(&self, other: &SelfAdjoint) -> Result<Self> {
        Ok(SelfAdjoint(self.0.zip_blocks(&other.0, |a, b| a + b)?))
    }

    pub fn sub(&self, other: &SelfAdjoint) -> Result<Self> {
        Ok(SelfAdjoint(self.0.zip_blocks(&other.0, |a, b| a - b)?))
    }

    /// `u a u*`.
    pub fn conjugate_by(&self, u: &Unitary) -> Result<Self> {
        let e = self
            .0
            .zip_blocks(u.element(), |a, v| v * a * v.adjoint())?;
        Ok(Self::hermitize(&e))
    }

    /// `i[x, y]`, self-adjoint for self-adjoint `x, y`.
    pub fn i_commutator(&self, other: &SelfAdjoint) -> Result<Self> {
        let k = self.0.commutator(&other.0)?;
        Ok(Self::hermitize(&k.scale(c(0.0, 1.0))))
    }

    pub fn spectra(&self) -> Vec<HermitianSpectrum> {
        self.0.blocks().iter().map(HermitianSpectrum::new).collect()
    }

    pub fn operator_norm(&self) -> f64 {
        self.0.operator_norm()
    }

    /// `p² = p` within `tol` (self-adjointness is already guaranteed).
    pub fn is_projection(&self, tol: f64) -> bool {
        let sq = &self.0 * &self.0;
        (&sq - &self.0).operator_norm() <= tol
    }
}

/// Unitary element.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary(Element);

impl Unitary {
    pub fn new(e: Element) -> Result<Self> {
        Self::with_tolerance(e, Tolerances::default().unitary)
    }

    pub fn with_tolerance(e: Element, tol: f64) -> Result<Self> {
        let defect = e.unitary_defect();
        if defect > tol {
            return Err(Error::InvariantViolation(format!(
                "element is not unitary (‖u*u - 1‖ = {defect:.3e})"
            )));
        }
        Ok(Unitary(e))
    }

    /// Wraps an element known to be unitary by construction.
    pub(crate) fn trusted(e: Element) -> Self {
        Unitary(e)
    }

    pub fn one(shape: &AlgebraShape) -> Self {
        Unitary(Element::one(shape))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.0.shape()
    }

    pub fn adjoint(&self) -> Self {
        Unitary(self.0.adjoint())
    }

    pub fn mul(&self, other: &Unitary) -> Result<Self> {
        Ok(Unitary(self.0.zip_blocks(&other.0, |a, b| a * b)?))
    }

    /// `v w v* w*`.
    pub fn group_commutator(&self, other: &Unitary) -> Result<Self> {
        let e = self
            .0
            .zip_blocks(&other.0, |v, w| v * w * v.adjoint() * w.adjoint())?;
        Ok(Unitary(e))
    }

    /// `‖u - 1‖`.
    pub fn distance_from_one(&self) -> f64 {
        (&self.0 - &Element::one(self.shape())).operator_norm()
    }

    /// Principal square root, blockwise.
    pub fn sqrt(&self) -> Self {
        Unitary(self.0.map_blocks(linalg::sqrt_unitary_block))
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    shape: AlgebraShape,
    blocks: Vec<Vec<Vec<[f64; 2]>>>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (0..b.nrows())
                    .map(|r| (0..b.ncols()).map(|col| [b[(r, col)].re, b[(r, col)].im]).collect())
                    .collect()
            })
            .collect();
        ElementRepr {
            shape: self.shape.clone(),
            blocks,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let mut blocks = Vec::with_capacity(repr.blocks.len());
        for rows in repr.blocks {
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(serde::de::Error::custom("block is not square"));
            }
            blocks.push(CMat::from_fn(n, n, |r, col| c(rows[r][col][0], rows[r][col][1])));
        }
        Element::new(repr.shape, blocks).map_err(serde::de::Error::custom)
    }
}

impl Serialize for SelfAdjoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SelfAdjoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        SelfAdjoint::new(Element::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Unitary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Unitary {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Unitary::new(Element::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> AlgebraShape {
        AlgebraShape::matrix(2).unwrap()
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(Element::one(&m2()).operator_norm(), 1.0);
        assert_eq!(Element::zero(&m2()).operator_norm(), 0.0);
        let d = Element::new(
            m2(),
            vec![CMat::from_row_slice(2, 2, &[c(0.0, 3.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)])],
        )
        .unwrap();
        assert!((d.operator_norm() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let e = Element::new(
            m2(),
            vec![CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])],
        )
        .unwrap();
        assert!(matches!(SelfAdjoint::new(e), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn rejects_non_unitary() {
        let e = Element::one(&m2()).scale_real(2.0);
        assert!(matches!(Unitary::new(e), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn block_dimensions_are_checked() {
        assert!(Element::new(m2(), vec![CMat::zeros(3, 3)]).is_err());
        assert!(Element::new(m2(), vec![]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let shape = AlgebraShape::new(vec![2, 1]).unwrap();
        let e = Element::from_fn(&shape, |i, n| {
            CMat::from_fn(n, n, |r, col| c(r as f64 + i as f64, col as f64 - 0.5))
        });
        let json = serde_json::to_string(&e).unwrap();
        let back: Element = serde_json::from_str(&json).unwrap();
        assert_eq!(e, back);
    }
}
