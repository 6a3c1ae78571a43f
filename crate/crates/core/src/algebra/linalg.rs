//! Dense complex matrix kernels used by the block algebra.
//!
//! Everything here works on a single square block. Hermitian input goes through
//! `SymmetricEigen`; unitary input goes through the complex Schur form, which is
//! diagonal up to rounding for normal matrices.

use std::f64::consts::PI;

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// `(m + m*)/2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * c(0.5, 0.0)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Smallest singular value.
pub fn smallest_singular_value(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().min()
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues and unitary eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = hermitian_part(m).symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// `V diag(f(λ)) V*`.
pub fn reconstruct(vectors: &CMat, values: &[Complex64]) -> CMat {
    let mut scaled = vectors.clone();
    for (j, &v) in values.iter().enumerate() {
        for z in scaled.column_mut(j).iter_mut() {
            *z *= v;
        }
    }
    scaled * vectors.adjoint()
}

/// Spectral decomposition of a Hermitian block, kept so the exponential
/// `e^{2πi t a}` can be evaluated for many `t` without refactoring.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianSpectrum {
    pub fn new(m: &CMat) -> Self {
        let (values, vectors) = hermitian_eigen(m);
        HermitianSpectrum { values, vectors }
    }

    /// `e^{2πi t a}`.
    pub fn exp_2pi_i(&self, t: f64) -> CMat {
        let phases: Vec<Complex64> = self
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, 2.0 * PI * t * l))
            .collect();
        reconstruct(&self.vectors, &phases)
    }
}

/// Eigenvalues and Schur vectors of a unitary (or any normal) block.
pub fn unitary_eigen(u: &CMat) -> (Vec<Complex64>, CMat) {
    let n = u.nrows();
    if n == 1 {
        return (vec![u[(0, 0)]], identity(1));
    }
    let schur = Schur::try_new(u.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
        .or_else(|| Schur::try_new(u.clone(), 1e-13, 10 * SCHUR_MAX_ITER))
        .expect("Schur iteration failed on a unitary block");
    let (q, t) = schur.unpack();
    let values = (0..n).map(|i| t[(i, i)]).collect();
    (values, q)
}

/// Principal `a` with `u = e^{2πi a}`, eigenvalues of `a` in `(-1/2, 1/2)`.
pub fn log_unitary_block(u: &CMat, tol_branch: f64) -> Result<CMat> {
    let (values, vectors) = unitary_eigen(u);
    let mut angles = Vec::with_capacity(values.len());
    for z in values {
        let distance = (z + 1.0).norm();
        if distance < tol_branch {
            return Err(Error::BranchCut { distance });
        }
        angles.push(c(z.arg() / (2.0 * PI), 0.0));
    }
    Ok(hermitian_part(&reconstruct(&vectors, &angles)))
}

/// Principal square root of a unitary block: eigen-angles halved.
pub fn sqrt_unitary_block(u: &CMat) -> CMat {
    let (values, vectors) = unitary_eigen(u);
    let roots: Vec<Complex64> = values
        .iter()
        .map(|z| Complex64::from_polar(1.0, z.arg() / 2.0))
        .collect();
    reconstruct(&vectors, &roots)
}

/// General matrix exponential by scaling and squaring of a Taylor polynomial.
pub fn expm(m: &CMat) -> CMat {
    let n = m.nrows();
    let norm: f64 = (0..n)
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m * c(scale, 0.0);
    let mut term = identity(n);
    let mut sum = identity(n);
    for k in 1..=20 {
        term = &term * &a * c(1.0 / k as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `log(x)` by the Mercator series; requires `‖x - 1‖ < 1`.
pub fn log_near_identity(x: &CMat) -> Result<CMat> {
    let n = x.nrows();
    let d = x - identity(n);
    let r = spectral_norm(&d);
    if r >= 1.0 {
        return Err(Error::Convergence(format!(
            "log series needs ‖x - 1‖ < 1, got {r:.3}"
        )));
    }
    let mut power = d.clone();
    let mut sum = d.clone();
    let mut k = 1usize;
    while r.powi(k as i32) / k as f64 > 1e-18 && k < 4000 {
        k += 1;
        power = &power * &d;
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        sum += &power * c(sign / k as f64, 0.0);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_half_unit_is_minus_one() {
        let a = CMat::from_element(1, 1, c(0.5, 0.0));
        let e = HermitianSpectrum::new(&a).exp_2pi_i(1.0);
        assert!((e[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn log_of_i_is_quarter() {
        let u = CMat::from_element(1, 1, c(0.0, 1.0));
        let a = log_unitary_block(&u, 1e-8).unwrap();
        assert!((a[(0, 0)] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn log_of_minus_one_hits_the_cut() {
        let u = CMat::from_element(1, 1, c(-1.0, 0.0));
        assert!(matches!(
            log_unitary_block(&u, 1e-8),
            Err(Error::BranchCut { .. })
        ));
    }

    #[test]
    fn expm_and_series_log_invert_each_other() {
        let m = CMat::from_row_slice(2, 2, &[c(0.1, 0.2), c(-0.05, 0.0), c(0.3, -0.1), c(0.0, 0.1)]);
        let back = log_near_identity(&expm(&m)).unwrap();
        assert!(max_abs(&(back - &m)) < 1e-13);
    }

    #[test]
    fn log_series_rejects_far_points() {
        let x = CMat::from_element(1, 1, c(-0.5, 0.0));
        assert!(log_near_identity(&x).is_err());
    }

    #[test]
    fn sqrt_squares_back() {
        let u = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let r = sqrt_unitary_block(&u);
        assert!(max_abs(&(&r * &r - &u)) < 1e-12);
    }
}
