//! Seeded property suites. Every trial draws from its own random stream, so a
//! report depends only on `(seed, trials)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::types::{Checked, Relation};
use crate::algebra::linalg::c;
use crate::algebra::random::{
    random_element_with, random_selfadjoint_with, random_shape_with, random_unitary_with, rng,
};
use crate::algebra::{
    exp_generator, log_unitary, universal_trace, AlgebraShape, Element, SelfAdjoint, TraceWeights,
    TracialFunctional, Unitary,
};
use crate::error::{Error, Result};
use crate::hom::{parse_hom, random_hom_with, Homomorphism, RandomHomOptions};
use crate::induced::{
    f_tau_dual, g_theta, g_theta_detailed, k0_map, lambda_matrix, pairing_residual,
    positivity_report, pushforward, stone_generator, stone_generator_detailed, trace_dual,
};
use crate::path::{
    concat, cu_membership, loop_k0_class, pointwise_product, pre_determinant, pre_determinant_numeric,
    projection_loop, random_path_with, thomsen_class, PathSegment, PiecewisePath, UnitaryCurve,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Predeterminant,
    Thomsen,
    Hom,
    Stone,
    Induced,
    Gl,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Algebra, Suite::Predeterminant, Suite::Thomsen, Suite::Hom, Suite::Stone, Suite::Induced, Suite::Gl];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Predeterminant => "predeterminant",
            Suite::Thomsen => "thomsen",
            Suite::Hom => "hom",
            Suite::Stone => "stone",
            Suite::Induced => "induced",
            Suite::Gl => "gl",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub trials: usize,
    /// Trials that raised an error instead of producing a value.
    pub failures: usize,
    /// Worst value over the trials that produced one.
    pub worst: Checked,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<PropertyCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertiesReport {
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

/// Tolerances of the property checks.
pub mod tol {
    pub const EXP_LOG: f64 = 1e-9;
    pub const TRACE: f64 = 1e-9;
    pub const PATH: f64 = 1e-6;
    pub const QUADRATURE: f64 = 1e-9;
    pub const CU: f64 = 1e-8;
    /// Lower bound on the distance of `diag(e^{2πi/3}, 1)` from the commutator subgroup.
    pub const DIAG_DISTANCE: f64 = 0.16;
    pub const HOM: f64 = 1e-8;
    pub const HOM_UNIT: f64 = 1e-12;
    pub const STONE_CONSISTENCY: f64 = 1e-9;
    pub const STONE: f64 = 1e-8;
    pub const NATURALITY: f64 = 1e-6;
    pub const PAIRING: f64 = 1e-6;
    pub const NORM_BOUND: f64 = 1e-6;
    pub const SIMPLEX: f64 = 1e-8;
    pub const DEGREE: f64 = 1e-8;
    pub const G_CONSTANCY: f64 = 1e-8;
    pub const G_LINEARITY: f64 = 1e-7;
    pub const F_TAU: f64 = 1e-8;
    /// Upper bound on `defect(k = 128) / defect(k = 64)`.
    pub const COMMUTATOR_RATIO: f64 = 0.75;
}

struct Acc {
    name: &'static str,
    tolerance: f64,
    relation: Relation,
    trials: usize,
    failures: usize,
    worst: Option<f64>,
    first_error: Option<String>,
}

impl Acc {
    fn at_most(name: &'static str, tolerance: f64) -> Self {
        Acc { name, tolerance, relation: Relation::AtMost, trials: 0, failures: 0, worst: None, first_error: None }
    }

    fn at_least(name: &'static str, tolerance: f64) -> Self {
        Acc { relation: Relation::AtLeast, ..Acc::at_most(name, tolerance) }
    }

    fn record(&mut self, r: Result<f64>) {
        self.trials += 1;
        let r = r.and_then(|v| {
            if v.is_nan() {
                Err(Error::InvariantViolation("NaN".into()))
            } else {
                Ok(v)
            }
        });
        match r {
            Ok(v) => {
                self.worst = Some(match (self.worst, self.relation) {
                    (None, _) => v,
                    (Some(w), Relation::AtMost) => w.max(v),
                    (Some(w), Relation::AtLeast) => w.min(v),
                })
            }
            Err(e) => {
                self.failures += 1;
                self.first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }

    fn finish(self) -> PropertyCheck {
        let value = self.worst.unwrap_or(match self.relation {
            Relation::AtMost => 0.0,
            Relation::AtLeast => self.tolerance,
        });
        let worst = match self.relation {
            Relation::AtMost => Checked::at_most(value, self.tolerance),
            Relation::AtLeast => Checked::at_least(value, self.tolerance),
        };
        PropertyCheck {
            name: self.name.into(),
            trials: self.trials,
            failures: self.failures,
            passed: worst.passed && self.failures == 0,
            worst,
            first_error: self.first_error,
        }
    }
}

fn trial_rng(seed: u64, suite: Suite, trial: usize) -> ChaCha8Rng {
    rng(seed, ((suite as u64 + 1) << 40) | trial as u64)
}

fn small_shape(r: &mut ChaCha8Rng) -> AlgebraShape {
    random_shape_with(r, 3, 4)
}

fn random_hom(r: &mut ChaCha8Rng, allow_gl: bool) -> Homomorphism {
    let src = small_shape(r);
    random_hom_with(&src, &RandomHomOptions { allow_gl, ..RandomHomOptions::default() }, r)
}

fn random_trace(r: &mut ChaCha8Rng, k: usize) -> TraceWeights {
    let w: Vec<f64> = (0..k).map(|_| r.random_range(0.01..1.0)).collect();
    let total: f64 = w.iter().sum();
    TraceWeights::new(w.into_iter().map(|x| x / total).collect()).expect("normalized")
}

fn random_path(r: &mut ChaCha8Rng, shape: &AlgebraShape, bound: f64) -> PiecewisePath {
    let segments = r.random_range(1..=4);
    let start = random_unitary_with(shape, r);
    random_path_with(start, segments, bound, r)
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A random projection with rank drawn per block.
fn random_projection(r: &mut ChaCha8Rng, shape: &AlgebraShape) -> SelfAdjoint {
    let diag: Vec<Vec<f64>> = shape
        .blocks()
        .iter()
        .map(|&n| {
            let rank = r.random_range(0..=n);
            (0..n).map(|i| if i < rank { 1.0 } else { 0.0 }).collect()
        })
        .collect();
    let d = SelfAdjoint::diagonal(shape, &diag).expect("shape matches");
    d.conjugate_by(&random_unitary_with(shape, r)).expect("shape matches")
}

/// `t ↦ ξ(t²)`.
struct Squared<'a>(&'a PiecewisePath);

impl UnitaryCurve for Squared<'_> {
    fn shape(&self) -> &AlgebraShape {
        self.0.shape()
    }

    fn eval(&self, t: f64) -> Element {
        self.0.at(t * t).into_element()
    }

    fn knots(&self) -> Vec<f64> {
        self.0.knots().iter().map(|k| k.sqrt()).collect()
    }
}

fn algebra_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut round_trip = Acc::at_most("exp_log_round_trip", tol::EXP_LOG);
    let mut conj = Acc::at_most("trace_conjugation_invariance", tol::TRACE);
    let mut commutator = Acc::at_most("commutator_has_trace_zero", tol::TRACE);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Algebra, t);
        let s = small_shape(&mut r);
        let a = random_selfadjoint_with(&s, &mut r, 0.45);
        let u = random_unitary_with(&s, &mut r);
        round_trip.record((|| {
            let back = log_unitary(&exp_generator(&a, 1.0))?;
            let again = exp_generator(&log_unitary(&u)?, 1.0);
            Ok(back.element().distance(a.element())?.max(again.element().distance(u.element())?))
        })());
        conj.record(a.conjugate_by(&u).map(|b| sup_diff(&universal_trace(&b).0, &universal_trace(&a).0)));
        let b = random_selfadjoint_with(&s, &mut r, 1.0);
        commutator.record(a.i_commutator(&b).map(|x| universal_trace(&x).sup_norm()));
    }
    vec![round_trip.finish(), conj.finish(), commutator.finish()]
}

fn predeterminant_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut product = Acc::at_most("product_additivity", tol::PATH);
    let mut concatenation = Acc::at_most("concatenation_additivity", tol::PATH);
    let mut reparam = Acc::at_most("reparametrization_invariance", tol::PATH);
    let mut numeric = Acc::at_most("exact_matches_quadrature", tol::PATH);
    let mut near = Acc::at_most("near_identity_log", tol::PATH);
    let mut projection = Acc::at_most("projection_loop_values", tol::PATH);
    let mut loops = Acc::at_most("loop_class_additivity", 0.0);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Predeterminant, t);
        let s = small_shape(&mut r);
        let xi = random_path(&mut r, &s, 1.0);
        let eta = random_path(&mut r, &s, 1.0);
        let (dx, de) = (pre_determinant(&xi), pre_determinant(&eta));
        product.record(pointwise_product(&xi, &eta).map(|p| sup_diff(&pre_determinant(&p).0, &dx.add(&de).0)));
        // Start η where ξ ends.
        let tail = PiecewisePath::with_knots(
            eta.segments()
                .iter()
                .map(|seg| {
                    let base = xi.end().mul(&eta.start().adjoint()).and_then(|g| g.mul(seg.base()))?;
                    PathSegment::new(base, seg.generator().clone())
                })
                .collect::<Result<Vec<_>>>()
                .expect("shapes agree"),
            eta.knots().to_vec(),
        );
        concatenation.record(
            tail.and_then(|tail| concat(&xi, &tail)).map(|p| sup_diff(&pre_determinant(&p).0, &dx.add(&de).0)),
        );
        reparam.record(Ok(sup_diff(&pre_determinant_numeric(&Squared(&xi), tol::QUADRATURE).0, &dx.0)));
        numeric.record(Ok(sup_diff(&pre_determinant_numeric(&xi, tol::QUADRATURE).0, &dx.0)));

        let one = Unitary::one(&s);
        let segments = r.random_range(1..=3);
        let small = random_path_with(one, segments, 0.05, &mut r);
        near.record(log_unitary(&small.end()).map(|b| sup_diff(&pre_determinant(&small).0, &universal_trace(&b).0)));

        let p = random_projection(&mut r, &s);
        let q = random_projection(&mut r, &s);
        projection.record((|| {
            let lp = projection_loop(&p)?;
            let ranks = loop_k0_class(&lp)?;
            let expected: Vec<f64> = universal_trace(&p).0;
            let rank_err = ranks
                .0
                .iter()
                .zip(s.blocks())
                .zip(&expected)
                .map(|((&k, &n), &e)| (k as f64 / n as f64 - e).abs())
                .fold(0.0, f64::max);
            Ok(sup_diff(&pre_determinant(&lp).0, &expected).max(rank_err))
        })());
        loops.record((|| {
            let (lp, lq) = (projection_loop(&p)?, projection_loop(&q)?);
            let sum = loop_k0_class(&lp)?.add(&loop_k0_class(&lq)?);
            let prod = loop_k0_class(&pointwise_product(&lp, &lq)?)?;
            Ok(if sum == prod { 0.0 } else { 1.0 })
        })());
    }
    vec![
        product.finish(),
        concatenation.finish(),
        reparam.finish(),
        numeric.finish(),
        near.finish(),
        projection.finish(),
        loops.finish(),
    ]
}

/// `diag(e^{2πi/3}, 1)` in `M₂`.
pub fn cube_root_diagonal() -> Unitary {
    let s = AlgebraShape::matrix(2).expect("M2");
    let a = SelfAdjoint::diagonal(&s, &[vec![1.0 / 3.0, 0.0]]).expect("M2");
    exp_generator(&a, 1.0)
}

fn thomsen_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut cu = Acc::at_most("commutator_products_in_cu", tol::CU);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Thomsen, t);
        let s = AlgebraShape::matrix(2 + t % 2).expect("small matrix algebra");
        let count = r.random_range(1..=5);
        cu.record((|| {
            let mut u = Unitary::one(&s);
            for _ in 0..count {
                let (a, b) = (random_unitary_with(&s, &mut r), random_unitary_with(&s, &mut r));
                u = u.mul(&a.group_commutator(&b)?)?;
            }
            let d = thomsen_class(&u)?.distance_from_zero();
            if !cu_membership(&u)? {
                return Err(Error::Inconsistency(format!("commutator product outside CU (distance {d:.3e})")));
            }
            Ok(d)
        })());
    }
    let u = cube_root_diagonal();
    let mut far = Acc::at_least("cube_root_diagonal_distance", tol::DIAG_DISTANCE);
    far.record(thomsen_class(&u).map(|c| c.distance_from_zero()));
    let mut value = Acc::at_most("cube_root_diagonal_class", 1e-9);
    value.record(thomsen_class(&u).map(|c| (c.representative.0[0] - 1.0 / 6.0).abs()));
    vec![cu.finish(), far.finish(), value.finish()]
}

fn hom_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut identities = Acc::at_most("multiplicative_and_adjoint", tol::HOM);
    let mut unit = Acc::at_most("unit_preserved", tol::HOM_UNIT);
    let mut round_trip = Acc::at_most("parse_print_round_trip", 0.0);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Hom, t);
        let h = random_hom(&mut r, false);
        let c = h.check(5, seed ^ t as u64);
        identities.record(if c.passed || c.unit_defect > 0.0 {
            Ok(c.multiplicative_defect.max(c.adjoint_defect))
        } else {
            Err(Error::InvalidHom(format!("{h} failed to evaluate")))
        });
        unit.record(Ok(c.unit_defect));
        round_trip.record(parse_hom(&h.expr().to_string()).map(|e| if &e == h.expr() { 0.0 } else { 1.0 }));
    }
    vec![identities.finish(), unit.finish(), round_trip.finish()]
}

fn stone_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut consistency = Acc::at_most("consistency_t0_vs_half", tol::STONE_CONSISTENCY);
    let mut linearity = Acc::at_most("real_linearity", tol::STONE);
    let mut equivariance = Acc::at_most("equivariance", tol::STONE);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Stone, t);
        let h = random_hom(&mut r, false);
        let src = h.source().clone();
        let a = random_selfadjoint_with(&src, &mut r, 1.0);
        let b = random_selfadjoint_with(&src, &mut r, 1.0);
        let s: f64 = r.random_range(-2.0..2.0);
        let u = random_unitary_with(&src, &mut r);
        let sa = stone_generator_detailed(&h, &a);
        consistency.record(sa.as_ref().map(|x| x.consistency_residual).map_err(Clone::clone));
        let Ok(sa) = sa else { continue };
        linearity.record((|| {
            let lhs = stone_generator(&h, &a.scale(s).add(&b)?)?;
            let rhs = sa.generator.scale(s).add(&stone_generator(&h, &b)?)?;
            lhs.element().distance(rhs.element())
        })());
        equivariance.record((|| {
            let lhs = stone_generator(&h, &a.conjugate_by(&u)?)?;
            let rhs = sa.generator.conjugate_by(&h.apply(&u)?)?;
            lhs.element().distance(rhs.element())
        })());
    }
    vec![consistency.finish(), linearity.finish(), equivariance.finish()]
}

/// Largest `‖S_θ(a)‖` over `a = Σ ±Eᵢ` (norm one) and a few random unit-norm `a`.
fn sampled_stone_norm(h: &Homomorphism, r: &mut ChaCha8Rng) -> Result<f64> {
    let src = h.source();
    let k = src.block_count();
    let mut best: f64 = 0.0;
    for mask in 0..(1u32 << k) {
        let signs: Vec<Vec<f64>> = src
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, &n)| vec![if mask >> i & 1 == 1 { -1.0 } else { 1.0 }; n])
            .collect();
        let a = SelfAdjoint::diagonal(src, &signs)?;
        best = best.max(stone_generator(h, &a)?.operator_norm());
    }
    for _ in 0..4 {
        let a = random_selfadjoint_with(src, r, 1.0);
        let n = a.operator_norm();
        if n > 0.0 {
            best = best.max(stone_generator(h, &a)?.operator_norm() / n);
        }
    }
    Ok(best)
}

fn induced_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut naturality = Acc::at_most("determinant_naturality", tol::NATURALITY);
    let mut pairing = Acc::at_most("pairing_square", tol::PAIRING);
    let mut norm = Acc::at_most("lambda_norm_bound", tol::NORM_BOUND);
    let mut simplex = Acc::at_most("dual_maps_simplex_to_simplex", tol::SIMPLEX);
    let mut degree = Acc::at_most("stone_unit_is_degree", tol::DEGREE);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Induced, t);
        let h = random_hom(&mut r, false);
        let lambda = match lambda_matrix(&h) {
            Ok(l) => l,
            Err(e) => {
                naturality.record(Err(e));
                continue;
            }
        };
        let xi = random_path(&mut r, h.source(), 1.0);
        let tau = random_trace(&mut r, h.target().block_count());
        naturality.record(pushforward(&h, &xi).map(|p| {
            let lhs = pre_determinant(&p).evaluate(&tau);
            let rhs = lambda.pullback(&TracialFunctional::from(&tau)).apply(&pre_determinant(&xi));
            (lhs - rhs).abs()
        }));
        pairing.record(k0_map(&h).map(|k| pairing_residual(&lambda, &k)));
        norm.record(sampled_stone_norm(&h, &mut r).map(|s| {
            let row_max = lambda.matrix.iter().map(|row| row.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
            (row_max - s).max(0.0)
        }));
        let verdict = positivity_report(&lambda, &h);
        if let Ok(dual) = trace_dual(&lambda, &verdict) {
            let mut worst: f64 = 0.0;
            for j in 0..lambda.rows() {
                let col: Vec<f64> = dual.iter().map(|row| row[j]).collect();
                worst = worst.max((col.iter().sum::<f64>() - 1.0).abs());
                worst = worst.max(col.iter().fold(0.0f64, |m, &x| m.max(-x)));
            }
            simplex.record(Ok(worst));
        }
        if let Some(d) = verdict.circle_degree {
            degree.record(
                stone_generator(&h, &SelfAdjoint::one(h.source()))
                    .map(|s| universal_trace(&s).0.iter().map(|x| (x - d as f64).abs()).fold(0.0, f64::max)),
            );
        }
    }
    vec![naturality.finish(), pairing.finish(), norm.finish(), simplex.finish(), degree.finish()]
}

/// Defects at or below this count as converged.
const COMMUTATOR_FLOOR: f64 = 1e-8;

/// `(e^{x/k} e^{y/k} e^{-x/k} e^{-y/k})^{k²}` for `k` a power of two.
fn commutator_approximant(x: &Element, y: &Element, k: u32) -> Element {
    let kf = k as f64;
    let (ex, ey) = (x.scale_real(1.0 / kf).expm(), y.scale_real(1.0 / kf).expm());
    let (exi, eyi) = (x.scale_real(-1.0 / kf).expm(), y.scale_real(-1.0 / kf).expm());
    let mut m = &(&(&ex * &ey) * &exi) * &eyi;
    for _ in 0..2 * k.trailing_zeros() {
        m = &m * &m;
    }
    m
}

/// `x ↦ 2πi·G_θ(x/2πi)`, so that `θ(e^x) = e^{G̃(x)}`.
fn g_tilde(h: &Homomorphism, x: &Element) -> Result<Element> {
    Ok(g_theta(h, &x.scale(c(0.0, -1.0 / (2.0 * PI))))?.scale(c(0.0, 2.0 * PI)))
}

fn commutator_ratio(h: &Homomorphism, r: &mut ChaCha8Rng) -> Result<f64> {
    let src = h.source();
    let x = random_element_with(src, r, 0.3);
    let y = random_element_with(src, r, 0.3);
    let (gx, gy) = (g_tilde(h, &x)?, g_tilde(h, &y)?);
    let target = (&(&gx * &gy) - &(&gy * &gx)).expm();
    let defect = |k| -> Result<f64> { h.apply_gl(&commutator_approximant(&x, &y, k))?.distance(&target) };
    let (d64, d128) = (defect(64)?, defect(128)?);
    // Below the noise floor of 14 squarings both defects are rounding error.
    Ok(if d128 <= COMMUTATOR_FLOOR { 0.0 } else { d128 / d64 })
}

fn gl_suite(seed: u64, trials: usize) -> Vec<PropertyCheck> {
    let mut constancy = Acc::at_most("eventual_constancy", tol::G_CONSTANCY);
    let mut linearity = Acc::at_most("real_linearity", tol::G_LINEARITY);
    let mut duality = Acc::at_most("f_tau_duality", tol::F_TAU);
    let mut commutator = Acc::at_most("commutator_approximants_converge", tol::COMMUTATOR_RATIO);
    for t in 0..trials {
        let mut r = trial_rng(seed, Suite::Gl, t);
        let h = random_hom(&mut r, true);
        let src = h.source().clone();
        let a = random_element_with(&src, &mut r, 0.5);
        let b = random_element_with(&src, &mut r, 0.5);
        let s: f64 = r.random_range(-2.0..2.0);
        constancy.record((|| {
            let x = g_theta_detailed(&h, &a)?.constancy_residual;
            Ok(x.max(g_theta_detailed(&h, &b)?.constancy_residual))
        })());
        linearity.record((|| {
            let lhs = g_theta(&h, &(&a.scale_real(s) + &b))?;
            let rhs = &g_theta(&h, &a)?.scale_real(s) + &g_theta(&h, &b)?;
            lhs.distance(&rhs)
        })());
        let tau = random_trace(&mut r, h.target().block_count());
        duality.record(f_tau_dual(&h, &tau).map(|f| f.residual));
        commutator.record(commutator_ratio(&h, &mut r));
    }
    vec![constancy.finish(), linearity.finish(), duality.finish(), commutator.finish()]
}

/// One suite with `trials` trials per check.
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> SuiteReport {
    let checks = match suite {
        Suite::Algebra => algebra_suite(seed, trials),
        Suite::Predeterminant => predeterminant_suite(seed, trials),
        Suite::Thomsen => thomsen_suite(seed, trials),
        Suite::Hom => hom_suite(seed, trials),
        Suite::Stone => stone_suite(seed, trials),
        Suite::Induced => induced_suite(seed, trials),
        Suite::Gl => gl_suite(seed, trials),
    };
    let passed = checks.iter().all(|c| c.passed);
    SuiteReport { suite, checks, passed }
}

/// Every suite. `trials` is raised to at least one.
pub fn run_properties(seed: u64, trials: usize) -> PropertiesReport {
    let trials = trials.max(1);
    let suites: Vec<SuiteReport> = Suite::ALL.iter().map(|&s| run_suite(s, seed, trials)).collect();
    let passed = suites.iter().all(|s| s.passed);
    PropertiesReport { seed, trials, suites, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_few_trials() {
        for s in Suite::ALL {
            let r = run_suite(s, 7, 3);
            assert!(r.passed, "{r:#?}");
            assert!(r.checks.iter().all(|c| c.trials > 0 || c.name == "dual_maps_simplex_to_simplex" || c.name == "stone_unit_is_degree"));
        }
    }

    #[test]
    fn accumulator_treats_errors_and_nan_as_failures() {
        let mut a = Acc::at_most("x", 1.0);
        a.record(Ok(0.5));
        a.record(Ok(f64::NAN));
        let c = a.finish();
        assert_eq!((c.trials, c.failures, c.passed), (2, 1, false));
        assert_eq!(c.worst.value, 0.5);
    }

    #[test]
    fn commutator_approximant_matches_small_case() {
        let s = AlgebraShape::matrix(2).unwrap();
        let mut r = rng(5, 0);
        let x = random_element_with(&s, &mut r, 0.2);
        let y = random_element_with(&s, &mut r, 0.2);
        let target = (&(&x * &y) - &(&y * &x)).expm();
        let d64 = commutator_approximant(&x, &y, 64).distance(&target).unwrap();
        let d128 = commutator_approximant(&x, &y, 128).distance(&target).unwrap();
        assert!(d128 < d64 && d64 < 1e-2, "{d64} {d128}");
    }
}
