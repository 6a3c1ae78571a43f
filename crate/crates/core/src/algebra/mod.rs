//! Finite-dimensional C*-algebra arithmetic.
//!
//! An algebra is `M_{n1} ⊕ … ⊕ M_{nk}`; elements are lists of square complex
//! blocks. The trace simplex `T(A)` is spanned by the normalized block traces,
//! so `Aff T(A) = ℝᵏ`, `K₀(A) = ℤᵏ` and the pairing is `diag(1/nᵢ)`.

pub mod element;
pub mod linalg;
pub mod random;
pub mod shape;
pub mod traces;

pub use element::{Element, SelfAdjoint, Tolerances, Unitary};
pub use random::{random_selfadjoint, random_unitary};
pub use shape::{AlgebraShape, ShapeLimits};
pub use traces::{AffVector, K0Class, TraceWeights, TracialFunctional};

use crate::error::Result;

/// `e^{2πi t a}`, blockwise through the Hermitian eigendecomposition.
pub fn exp_generator(a: &SelfAdjoint, t: f64) -> Unitary {
    let blocks = a
        .element()
        .blocks()
        .iter()
        .map(|b| linalg::HermitianSpectrum::new(b).exp_2pi_i(t))
        .collect();
    Unitary::trusted(Element::new(a.shape().clone(), blocks).expect("same shape"))
}

/// Validating variant of [`exp_generator`] for raw input.
pub fn exp_generator_checked(a: &Element, t: f64, tol: &Tolerances) -> Result<Unitary> {
    let a = SelfAdjoint::with_tolerance(a.clone(), tol.sa)?;
    Ok(exp_generator(&a, t))
}

/// Principal logarithm: `a` with `u = e^{2πi a}` and spectrum in `(-1/2, 1/2)`.
pub fn log_unitary(u: &Unitary) -> Result<SelfAdjoint> {
    log_unitary_with(u, Tolerances::default().branch)
}

pub fn log_unitary_with(u: &Unitary, tol_branch: f64) -> Result<SelfAdjoint> {
    let blocks = u
        .element()
        .blocks()
        .iter()
        .map(|b| linalg::log_unitary_block(b, tol_branch))
        .collect::<Result<Vec<_>>>()?;
    Ok(SelfAdjoint::hermitize(&Element::new(u.shape().clone(), blocks)?))
}

/// `Tr_A(a) = â`: coordinate `i` is the normalized trace of block `i`.
pub fn universal_trace(a: &SelfAdjoint) -> AffVector {
    AffVector(
        a.element()
            .blocks()
            .iter()
            .map(|b| b.trace().re / b.nrows() as f64)
            .collect(),
    )
}

/// Raw diagonal sums per block.
pub fn unnormalized_block_trace(a: &SelfAdjoint) -> Vec<f64> {
    a.element().block_traces().iter().map(|z| z.re).collect()
}

/// `ρ_A(x)`: coordinate `i` is `xᵢ / nᵢ`.
pub fn pairing_rho(shape: &AlgebraShape, x: &K0Class) -> AffVector {
    AffVector(
        x.ranks()
            .iter()
            .zip(shape.blocks())
            .map(|(&r, &n)| r as f64 / n as f64)
            .collect(),
    )
}

/// `ρ_A` as a `k × k` matrix (row-major): `diag(1/nᵢ)`.
pub fn pairing_matrix(shape: &AlgebraShape) -> Vec<Vec<f64>> {
    let k = shape.block_count();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { 1.0 / shape.block_size(i) as f64 } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Membership in `A₀`: every normalized block trace below `tol` in magnitude.
pub fn is_in_a0(a: &SelfAdjoint, tol: f64) -> bool {
    universal_trace(a).0.iter().all(|x| x.abs() < tol)
}

/// Projects onto `A₀` by removing the scalar part of each block.
pub fn trace_zero_part(a: &SelfAdjoint) -> SelfAdjoint {
    let hat = universal_trace(a);
    let scalars = Element::from_fn(a.shape(), |i, n| {
        linalg::identity(n) * linalg::c(hat.0[i], 0.0)
    });
    SelfAdjoint::hermitize(&(a.element() - &scalars))
}

pub fn operator_norm(a: &Element) -> f64 {
    a.operator_norm()
}
