//! Maps induced by a homomorphism `θ`: the Stone generator `S_θ`, the affine
//! trace map `Λ_θ`, the `K₀` map, positivity and duality verdicts, and the
//! general-linear generator `G_θ`.

mod gl;
mod k0;
mod lambda;
mod stone;
mod verdict;

pub use gl::{
    c_linearity_defect, f_tau_dual, g_theta, g_theta_detailed, gl_real_matrix, real_basis, real_coordinates,
    FTauResult, GThetaResult, F_TAU_TOL, G_CHECK_TOL,
};
pub use k0::{circle_degree, k0_map, pairing_residual, pushforward, K0Matrix, CIRCLE_TOL};
pub use lambda::{lambda_matrix, lambda_matrix_audited, LambdaMatrix, AUDIT_SAMPLES, AUDIT_TOL};
pub use stone::{stone_generator, stone_generator_detailed, StoneResult, STONE_CHECK_TOL};
pub use verdict::{
    apply_trace_dual, ktu_report, ktu_report_from, positivity_report, strict_order_check, trace_dual,
    verdict_from_lambda, K1Morphism, KtuReport, PositivityVerdict, Sign, StrictOrder, POSITIVITY_TOL, UNITAL_TOL,
};
