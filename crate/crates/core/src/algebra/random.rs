//! Seeded random elements for property checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::element::{Element, SelfAdjoint, Unitary};
use super::linalg::{self, c, CMat};
use super::shape::AlgebraShape;

/// Deterministic generator for a `(seed, stream)` pair.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn gaussian_block<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary block: QR of a Gaussian matrix with the phases of
/// `R`'s diagonal moved into `Q`.
fn haar_block<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let qr = gaussian_block(rng, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

pub fn random_unitary_with<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R) -> Unitary {
    Unitary::trusted(Element::from_fn(shape, |_, n| haar_block(rng, n)))
}

/// Self-adjoint element with operator norm at most `bound`.
pub fn random_selfadjoint_with<R: Rng + ?Sized>(
    shape: &AlgebraShape,
    rng: &mut R,
    bound: f64,
) -> SelfAdjoint {
    let raw = Element::from_fn(shape, |_, n| linalg::hermitian_part(&gaussian_block(rng, n)));
    let norm = raw.operator_norm();
    let target = bound * rng.random_range(0.05..=1.0);
    let s = if norm > 0.0 { target / norm } else { 0.0 };
    SelfAdjoint::hermitize(&raw.scale_real(s))
}

/// Arbitrary (generally non-normal) element with entries of size about `scale`.
pub fn random_element_with<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R, scale: f64) -> Element {
    Element::from_fn(shape, |_, n| gaussian_block(rng, n) * c(scale, 0.0))
}

pub fn random_unitary(shape: &AlgebraShape, seed: u64) -> Unitary {
    random_unitary_with(shape, &mut rng(seed, 0))
}

pub fn random_selfadjoint(shape: &AlgebraShape, seed: u64, bound: f64) -> SelfAdjoint {
    random_selfadjoint_with(shape, &mut rng(seed, 0), bound)
}

/// Random shape with at most `max_blocks` blocks of size at most `max_size`.
pub fn random_shape_with<R: Rng + ?Sized>(rng: &mut R, max_blocks: usize, max_size: usize) -> AlgebraShape {
    let k = rng.random_range(1..=max_blocks);
    let blocks = (0..k).map(|_| rng.random_range(1..=max_size)).collect();
    AlgebraShape::new(blocks).expect("random shape within default limits")
}
