use serde::{Deserialize, Serialize};

use super::config::{Analysis, AnalysisConfig, ConfigEcho};
use super::types::{Checked, Outcome, Passes};
use crate::algebra::random::{random_element_with, random_selfadjoint_with, random_unitary_with, rng};
use crate::algebra::{exp_generator, universal_trace, AffVector, SelfAdjoint, TraceWeights, TracialFunctional};
use crate::error::Result;
use crate::hom::{Homomorphism, HOM_CHECK_TOL};
use crate::induced::{
    apply_trace_dual, f_tau_dual, g_theta, g_theta_detailed, gl_real_matrix, k0_map, ktu_report_from,
    lambda_matrix_audited, pairing_residual, positivity_report, pushforward, real_basis, stone_generator,
    stone_generator_detailed, strict_order_check, trace_dual, FTauResult, K0Matrix, KtuReport, LambdaMatrix,
    PositivityVerdict, StrictOrder, AUDIT_SAMPLES, AUDIT_TOL, F_TAU_TOL, G_CHECK_TOL, POSITIVITY_TOL,
    STONE_CHECK_TOL, UNITAL_TOL,
};
use crate::path::{path_from_identity, pre_determinant, random_path_with, thomsen_class, ThomsenClass};

/// Tolerance for linearity and equivariance of `S_θ`.
pub const STONE_PROPERTY_TOL: f64 = 1e-8;
/// Tolerance for additivity of `G_θ`.
pub const GL_ADDITIVITY_TOL: f64 = 1e-7;
/// `G_θ` counts as ℂ-linear when its defect is below this.
pub const C_LINEAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomSection {
    pub gain: f64,
    pub unit_defect: Checked,
    pub multiplicative_defect: Checked,
    pub adjoint_defect: Checked,
}

impl Passes for HomSection {
    fn passes(&self) -> bool {
        self.unit_defect.passed && self.multiplicative_defect.passed && self.adjoint_defect.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoneSection {
    pub trials: usize,
    /// `Tr_B(S_θ(1))`.
    pub unit_image: AffVector,
    pub smallest_t0: f64,
    /// Largest `‖S_θ(a)‖ / ‖a‖` over the sampled `a`.
    pub norm_estimate: f64,
    /// Largest `‖θ(u) - θ(v)‖ / ‖u - v‖` over sampled nearby pairs. Reported
    /// next to `norm_estimate`; no relation between the two is asserted.
    pub lipschitz_estimate: f64,
    pub consistency: Checked,
    pub linearity: Checked,
    pub equivariance: Checked,
}

impl Passes for StoneSection {
    fn passes(&self) -> bool {
        self.consistency.passed && self.linearity.passed && self.equivariance.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSection {
    pub lambda: LambdaMatrix,
    /// Largest `‖Tr_B(S_θ(a))‖` over random trace-zero `a`.
    pub audit: Checked,
}

impl Passes for LambdaSection {
    fn passes(&self) -> bool {
        self.audit.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSection {
    pub verdict: PositivityVerdict,
    pub strict_order: StrictOrder,
    pub positivity_tolerance: f64,
    pub unital_tolerance: f64,
}

impl Passes for VerdictSection {
    fn passes(&self) -> bool {
        !matches!(self.strict_order, StrictOrder::Violated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSection {
    /// `T_θ` as a `k_A × k_B` matrix.
    pub matrix: Vec<Vec<f64>>,
    /// Distance of the images of the extremal traces from the simplex.
    pub simplex: Checked,
}

impl Passes for DualSection {
    fn passes(&self) -> bool {
        self.simplex.passed
    }
}

impl Passes for K0Matrix {
    fn passes(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KtuSection {
    pub report: KtuReport,
    pub pairing: Checked,
}

impl Passes for KtuSection {
    fn passes(&self) -> bool {
        self.pairing.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomsenSection {
    pub trials: usize,
    /// `|Δ̃_τ(θ∘ξ) - Δ̃_{τ∘S_θ}(ξ)|` over random paths and traces.
    pub determinant_naturality: Checked,
    /// Distance between `Δ̄(θ(u))` and the reduction of `Λ_θ Δ̃(1 → u)`.
    pub class_naturality: Checked,
}

impl Passes for ThomsenSection {
    fn passes(&self) -> bool {
        self.determinant_naturality.passed && self.class_naturality.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlSection {
    /// `G_θ` on the real basis, `2d_B × 2d_A`.
    pub matrix: Vec<Vec<f64>>,
    pub constancy: Checked,
    pub additivity: Checked,
    pub c_linearity_defect: f64,
    pub c_linear: bool,
    pub c_linear_tolerance: f64,
}

impl Passes for GlSection {
    fn passes(&self) -> bool {
        self.constancy.passed && self.additivity.passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtauSection {
    pub tau: TraceWeights,
    pub result: FTauResult,
    pub residual: Checked,
}

impl Passes for FtauSection {
    fn passes(&self) -> bool {
        self.residual.passed
    }
}

/// One entry per analysis that ran; absent fields were not requested.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisResults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stone: Option<Outcome<StoneSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Outcome<LambdaSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Outcome<VerdictSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Outcome<DualSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<Outcome<K0Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Outcome<Checked>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ktu: Option<Outcome<KtuSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thomsen: Option<Outcome<ThomsenSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gl: Option<Outcome<GlSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ftau: Option<Outcome<FtauSection>>,
}

impl AnalysisResults {
    /// `(name, status, message, passes)` for every analysis present.
    pub fn summary(&self) -> Vec<(Analysis, &'static str, Option<&str>, bool)> {
        macro_rules! row {
            ($out:ident, $field:ident, $a:expr) => {
                if let Some(o) = &self.$field {
                    $out.push(($a, o.status(), o.message(), o.passes()));
                }
            };
        }
        let mut out = Vec::new();
        row!(out, stone, Analysis::Stone);
        row!(out, lambda, Analysis::Lambda);
        row!(out, verdict, Analysis::Verdict);
        row!(out, dual, Analysis::Dual);
        row!(out, k0, Analysis::K0);
        row!(out, pairing, Analysis::Pairing);
        row!(out, ktu, Analysis::Ktu);
        row!(out, thomsen, Analysis::Thomsen);
        row!(out, gl, Analysis::Gl);
        row!(out, ftau, Analysis::Ftau);
        out
    }

    pub fn passes(&self) -> bool {
        self.summary().iter().all(|r| r.3)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub config: ConfigEcho,
    pub homomorphism: HomSection,
    pub results: AnalysisResults,
}

impl AnalysisReport {
    pub fn passes(&self) -> bool {
        self.homomorphism.passes() && self.results.passes()
    }
}

fn skipped<T>(dep: Analysis) -> Outcome<T> {
    Outcome::Skipped { reason: format!("`{dep}` did not produce a value") }
}

/// Per-analysis random streams, so that adding an analysis leaves the others unchanged.
fn stream(a: Analysis) -> u64 {
    0x616e_0000 + a as u64
}

fn hom_section(hom: &Homomorphism, cfg: &AnalysisConfig) -> HomSection {
    let c = hom.check(cfg.trials.max(1), cfg.seed);
    let bad = if c.passed { 0.0 } else { f64::MAX };
    HomSection {
        gain: hom.gain(),
        unit_defect: Checked::at_most(c.unit_defect.max(bad), HOM_CHECK_TOL),
        multiplicative_defect: Checked::at_most(c.multiplicative_defect.max(bad), HOM_CHECK_TOL),
        adjoint_defect: Checked::at_most(c.adjoint_defect.max(bad), HOM_CHECK_TOL),
    }
}

fn stone_section(hom: &Homomorphism, cfg: &AnalysisConfig) -> Result<StoneSection> {
    let src = hom.source();
    let mut r = rng(cfg.seed, stream(Analysis::Stone));
    let unit_image = universal_trace(&stone_generator(hom, &SelfAdjoint::one(src))?);
    let (mut consistency, mut linearity, mut equivariance, mut smallest_t0) = (0.0f64, 0.0f64, 0.0f64, 1.0f64);
    let (mut norm_estimate, mut lipschitz_estimate) = (0.0f64, 0.0f64);
    for _ in 0..cfg.trials {
        let a = random_selfadjoint_with(src, &mut r, 1.0);
        let b = random_selfadjoint_with(src, &mut r, 1.0);
        let s: f64 = rand::Rng::random_range(&mut r, -2.0..2.0);
        let u = random_unitary_with(src, &mut r);
        let sa = stone_generator_detailed(hom, &a)?;
        consistency = consistency.max(sa.consistency_residual);
        smallest_t0 = smallest_t0.min(sa.t0);
        let sb = stone_generator(hom, &b)?;
        let lhs = stone_generator(hom, &a.scale(s).add(&b)?)?;
        let rhs = sa.generator.scale(s).add(&sb)?;
        linearity = linearity.max(lhs.element().distance(rhs.element())?);
        let lhs = stone_generator(hom, &a.conjugate_by(&u)?)?;
        let rhs = sa.generator.conjugate_by(&hom.apply(&u)?)?;
        equivariance = equivariance.max(lhs.element().distance(rhs.element())?);
        if a.operator_norm() > 0.0 {
            norm_estimate = norm_estimate.max(sa.generator.operator_norm() / a.operator_norm());
        }
        let v = u.mul(&exp_generator(&b, 1e-3))?;
        let step = (u.element() - v.element()).operator_norm();
        if step > 0.0 {
            let moved = (hom.apply(&u)?.element() - hom.apply(&v)?.element()).operator_norm();
            lipschitz_estimate = lipschitz_estimate.max(moved / step);
        }
    }
    Ok(StoneSection {
        trials: cfg.trials,
        unit_image,
        smallest_t0,
        norm_estimate,
        lipschitz_estimate,
        consistency: Checked::at_most(consistency, STONE_CHECK_TOL),
        linearity: Checked::at_most(linearity, STONE_PROPERTY_TOL),
        equivariance: Checked::at_most(equivariance, STONE_PROPERTY_TOL),
    })
}

fn dual_section(lambda: &LambdaMatrix, verdict: &PositivityVerdict) -> Result<DualSection> {
    let matrix = trace_dual(lambda, verdict)?;
    let mut worst: f64 = 0.0;
    for j in 0..lambda.rows() {
        let w = TraceWeights::extremal(lambda.rows(), j);
        let image: Vec<f64> = matrix.iter().map(|row| row.iter().zip(w.weights()).map(|(a, b)| a * b).sum()).collect();
        let negative = image.iter().fold(0.0f64, |m, &x| m.max(-x));
        worst = worst.max((image.iter().sum::<f64>() - 1.0).abs()).max(negative);
    }
    apply_trace_dual(&matrix, &TraceWeights::uniform(lambda.rows()))?;
    Ok(DualSection { matrix, simplex: Checked::at_most(worst, UNITAL_TOL) })
}

fn thomsen_section(hom: &Homomorphism, lambda: &LambdaMatrix, cfg: &AnalysisConfig) -> Result<ThomsenSection> {
    let (src, tgt) = (hom.source(), hom.target());
    let mut r = rng(cfg.seed, stream(Analysis::Thomsen));
    let (mut det, mut class) = (0.0f64, 0.0f64);
    for _ in 0..cfg.trials {
        let segments = rand::Rng::random_range(&mut r, 1..=3);
        let start = random_unitary_with(src, &mut r);
        let xi = random_path_with(start, segments, 1.0, &mut r);
        let w: Vec<f64> = (0..tgt.block_count()).map(|_| rand::Rng::random_range(&mut r, 0.0..1.0)).collect();
        let total: f64 = w.iter().sum();
        let tau = TraceWeights::new(w.iter().map(|x| x / total).collect())?;
        let lhs = pre_determinant(&pushforward(hom, &xi)?).evaluate(&tau);
        let rhs = lambda.pullback(&TracialFunctional::from(&tau)).apply(&pre_determinant(&xi));
        det = det.max((lhs - rhs).abs());

        let u = random_unitary_with(src, &mut r);
        let image = thomsen_class(&hom.apply(&u)?)?;
        let pushed = ThomsenClass::reduce(&lambda.apply(&pre_determinant(&path_from_identity(&u)?)), tgt);
        class = class.max(image.distance(&pushed));
    }
    Ok(ThomsenSection {
        trials: cfg.trials,
        determinant_naturality: Checked::at_most(det, cfg.tol),
        class_naturality: Checked::at_most(class, cfg.tol),
    })
}

fn gl_section(hom: &Homomorphism, cfg: &AnalysisConfig) -> Result<GlSection> {
    let src = hom.source();
    let mut constancy: f64 = 0.0;
    for e in real_basis(src) {
        constancy = constancy.max(g_theta_detailed(hom, &e)?.constancy_residual);
    }
    let matrix = gl_real_matrix(hom)?;
    let mut r = rng(cfg.seed, stream(Analysis::Gl));
    let mut additivity: f64 = 0.0;
    for _ in 0..cfg.trials {
        let a = random_element_with(src, &mut r, 0.5);
        let b = random_element_with(src, &mut r, 0.5);
        let lhs = g_theta(hom, &(&a + &b))?;
        let rhs = &g_theta(hom, &a)? + &g_theta(hom, &b)?;
        additivity = additivity.max(lhs.distance(&rhs)?);
    }
    let defect = crate::induced::c_linearity_defect(hom)?;
    Ok(GlSection {
        matrix,
        constancy: Checked::at_most(constancy, G_CHECK_TOL),
        additivity: Checked::at_most(additivity, GL_ADDITIVITY_TOL),
        c_linearity_defect: defect,
        c_linear: defect <= C_LINEAR_TOL,
        c_linear_tolerance: C_LINEAR_TOL,
    })
}

fn ftau_section(hom: &Homomorphism, cfg: &AnalysisConfig) -> Result<FtauSection> {
    let tau = cfg.tau_or_uniform();
    let result = f_tau_dual(hom, &tau)?;
    let residual = Checked::at_most(result.residual, F_TAU_TOL);
    Ok(FtauSection { tau, result, residual })
}

/// Runs the requested analyses in dependency order. A failing analysis is
/// recorded and its dependents are marked skipped; siblings still run.
pub fn run_analysis(cfg: &AnalysisConfig) -> AnalysisReport {
    let hom = &cfg.hom;
    let wants = |a: Analysis| cfg.analyses.contains(&a);
    let mut res = AnalysisResults::default();

    if wants(Analysis::Stone) {
        res.stone = Some(Outcome::from_result(stone_section(hom, cfg)));
    }
    if wants(Analysis::Lambda) {
        let section = lambda_matrix_audited(hom, cfg.seed, AUDIT_SAMPLES)
            .map(|(lambda, worst)| LambdaSection { lambda, audit: Checked::at_most(worst, AUDIT_TOL) });
        res.lambda = Some(Outcome::from_result(section));
    }
    let lambda = res.lambda.as_ref().and_then(|o| o.value()).map(|s| s.lambda.clone());

    if wants(Analysis::Verdict) {
        res.verdict = Some(match &lambda {
            None => skipped(Analysis::Lambda),
            Some(l) => {
                let verdict = positivity_report(l, hom);
                Outcome::from_result(strict_order_check(hom, &verdict, cfg.trials, cfg.seed).map(|strict_order| {
                    VerdictSection {
                        verdict,
                        strict_order,
                        positivity_tolerance: POSITIVITY_TOL,
                        unital_tolerance: UNITAL_TOL,
                    }
                }))
            }
        });
    }
    let verdict = res.verdict.as_ref().and_then(|o| o.value()).map(|s| s.verdict.clone());

    if wants(Analysis::Dual) {
        res.dual = Some(match (&lambda, &verdict) {
            (Some(l), Some(v)) => Outcome::from_result(dual_section(l, v)),
            _ => skipped(Analysis::Verdict),
        });
    }
    if wants(Analysis::K0) {
        res.k0 = Some(Outcome::from_result(k0_map(hom)));
    }
    let k0 = res.k0.as_ref().and_then(|o| o.value()).cloned();

    if wants(Analysis::Pairing) {
        res.pairing = Some(match (&lambda, &k0) {
            (Some(l), Some(k)) => Outcome::Ok { value: Checked::at_most(pairing_residual(l, k), cfg.tol) },
            (None, _) => skipped(Analysis::Lambda),
            (_, None) => skipped(Analysis::K0),
        });
    }
    if wants(Analysis::Ktu) {
        res.ktu = Some(match (&lambda, &k0, &verdict) {
            (Some(l), Some(k), Some(v)) => {
                let report = ktu_report_from(l, k, v);
                let pairing = Checked::at_most(report.pairing_residual, cfg.tol);
                Outcome::Ok { value: KtuSection { report, pairing } }
            }
            (_, None, _) => skipped(Analysis::K0),
            _ => skipped(Analysis::Verdict),
        });
    }
    if wants(Analysis::Thomsen) {
        res.thomsen = Some(match &lambda {
            Some(l) => Outcome::from_result(thomsen_section(hom, l, cfg)),
            None => skipped(Analysis::Lambda),
        });
    }
    if wants(Analysis::Gl) {
        res.gl = Some(Outcome::from_result(gl_section(hom, cfg)));
    }
    if wants(Analysis::Ftau) {
        res.ftau = Some(Outcome::from_result(ftau_section(hom, cfg)));
    }

    AnalysisReport { config: ConfigEcho::from(cfg), homomorphism: hom_section(hom, cfg), results: res }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induced::Sign;
    use crate::report::config::Mode;

    fn report(hom: &str, src: &str, mode: Mode) -> AnalysisReport {
        run_analysis(&AnalysisConfig::new(hom, src, mode).unwrap().with_trials(4))
    }

    #[test]
    fn pad_example() {
        let r = report("pad(1)", "M2", Mode::Unitary);
        let l = r.results.lambda.as_ref().unwrap().value().unwrap();
        assert!((l.lambda.matrix[0][0] - 2.0 / 3.0).abs() < 1e-9);
        let v = &r.results.verdict.as_ref().unwrap().value().unwrap().verdict;
        assert!(v.positive && !v.unital);
        assert_eq!(r.results.dual.as_ref().unwrap().status(), "undefined");
        assert!(r.passes(), "{:#?}", r.results.summary());
    }

    #[test]
    fn bar_example() {
        let r = report("bar", "M1", Mode::Unitary);
        let v = &r.results.verdict.as_ref().unwrap().value().unwrap().verdict;
        assert_eq!((v.sign, v.circle_degree), (Sign::Minus, Some(-1)));
        let l = &r.results.lambda.as_ref().unwrap().value().unwrap().lambda;
        assert!((l.matrix[0][0] + 1.0).abs() < 1e-9);
        assert!(r.passes());
    }

    #[test]
    fn gl_example() {
        let r = report("modtwist(0.5,-0.3) . power(1)", "M1", Mode::Gl);
        let g = r.results.gl.as_ref().unwrap().value().unwrap();
        let want = [[1.0, -0.5], [0.0, 1.3]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.matrix[i][j] - want[i][j]).abs() < 1e-8);
            }
        }
        assert!(!g.c_linear);
        assert!(r.passes());
    }

    #[test]
    fn tight_tolerance_fails_without_aborting() {
        let cfg = AnalysisConfig::new("pad(2)", "M2", Mode::Unitary)
            .unwrap()
            .with_trials(3)
            .with_tol(1e-300)
            .with_analyses(&[Analysis::Thomsen, Analysis::Stone]);
        let r = run_analysis(&cfg);
        assert!(!r.passes());
        assert_eq!(r.results.thomsen.as_ref().unwrap().status(), "ok");
        assert!(r.results.stone.as_ref().unwrap().passes());
        assert!(r.results.k0.is_none());
    }
}
