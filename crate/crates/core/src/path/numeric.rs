//! Direct quadrature of `∫ τ((1/2πi) ξ'(t) ξ(t)⁻¹) dt`.
//!
//! `ξ'` comes from a five-point finite-difference stencil that never crosses a
//! knot, and each knot interval is integrated with adaptive Simpson.

use std::f64::consts::PI;

use super::{discretize, PiecewisePath, SampledPath};
use crate::algebra::linalg::c;
use crate::algebra::{AffVector, AlgebraShape, Element};
use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 40;
const MIN_DEPTH: u32 = 2;
/// Finite-difference step relative to the knot interval length.
const REL_STEP: f64 = 2e-4;

/// A continuous path `[0, 1] → U(A)` that is smooth between its knots.
pub trait UnitaryCurve {
    fn shape(&self) -> &AlgebraShape;
    fn eval(&self, t: f64) -> Element;
    /// Breakpoints including `0` and `1`.
    fn knots(&self) -> Vec<f64>;
}

impl UnitaryCurve for PiecewisePath {
    fn shape(&self) -> &AlgebraShape {
        PiecewisePath::shape(self)
    }

    fn eval(&self, t: f64) -> Element {
        self.at(t).into_element()
    }

    fn knots(&self) -> Vec<f64> {
        PiecewisePath::knots(self).to_vec()
    }
}

/// Sampled paths with an attached sampler integrate against the sampler itself.
impl UnitaryCurve for SampledPath {
    fn shape(&self) -> &AlgebraShape {
        SampledPath::shape(self)
    }

    fn eval(&self, t: f64) -> Element {
        let f = self
            .sampler()
            .expect("UnitaryCurve for SampledPath requires a sampler");
        f(t).into_element()
    }

    fn knots(&self) -> Vec<f64> {
        SampledPath::knots(self).to_vec()
    }
}

/// Derivative of `curve` at `t`, with the stencil kept inside `[lo, hi]`.
fn derivative(curve: &dyn UnitaryCurve, t: f64, lo: f64, hi: f64) -> Element {
    let h = REL_STEP * (hi - lo);
    let f = |x: f64| curve.eval(x);
    let combine = |terms: &[(f64, f64)]| {
        let mut acc = Element::zero(curve.shape());
        for &(offset, weight) in terms {
            acc = &acc + &f(t + offset * h).scale_real(weight);
        }
        acc.scale_real(1.0 / (12.0 * h))
    };
    if t - 2.0 * h < lo {
        combine(&[(0.0, -25.0), (1.0, 48.0), (2.0, -36.0), (3.0, 16.0), (4.0, -3.0)])
    } else if t + 2.0 * h > hi {
        combine(&[(0.0, 25.0), (-1.0, -48.0), (-2.0, 36.0), (-3.0, -16.0), (-4.0, 3.0)])
    } else {
        combine(&[(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)])
    }
}

/// Normalized block traces of `(1/2πi) ξ'(t) ξ(t)*`.
fn integrand(curve: &dyn UnitaryCurve, t: f64, lo: f64, hi: f64) -> Vec<f64> {
    let d = derivative(curve, t, lo, hi);
    let u = curve.eval(t);
    let scale = c(0.0, -1.0 / (2.0 * PI));
    d.blocks()
        .iter()
        .zip(u.blocks())
        .map(|(db, ub)| ((db * ub.adjoint()).trace() * scale).re / db.nrows() as f64)
        .collect()
}

fn simpson(fa: &[f64], fm: &[f64], fb: &[f64], width: f64) -> Vec<f64> {
    fa.iter()
        .zip(fm)
        .zip(fb)
        .map(|((a, m), b)| width / 6.0 * (a + 4.0 * m + b))
        .collect()
}

struct Interval {
    a: f64,
    b: f64,
    fa: Vec<f64>,
    fm: Vec<f64>,
    fb: Vec<f64>,
    whole: Vec<f64>,
}

fn adaptive(f: &dyn Fn(f64) -> Vec<f64>, iv: Interval, tol: f64, depth: u32) -> Vec<f64> {
    let m = 0.5 * (iv.a + iv.b);
    let lm = 0.5 * (iv.a + m);
    let rm = 0.5 * (m + iv.b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(&iv.fa, &flm, &iv.fm, m - iv.a);
    let right = simpson(&iv.fm, &frm, &iv.fb, iv.b - m);
    let err = left
        .iter()
        .zip(&right)
        .zip(&iv.whole)
        .map(|((l, r), w)| (l + r - w).abs())
        .fold(0.0, f64::max);
    if depth >= MIN_DEPTH && (err <= 15.0 * tol || depth >= MAX_DEPTH) {
        return left
            .iter()
            .zip(&right)
            .zip(&iv.whole)
            .map(|((l, r), w)| l + r + (l + r - w) / 15.0)
            .collect();
    }
    let l = adaptive(
        f,
        Interval { a: iv.a, b: m, fa: iv.fa, fm: flm, fb: iv.fm.clone(), whole: left },
        tol / 2.0,
        depth + 1,
    );
    let r = adaptive(
        f,
        Interval { a: m, b: iv.b, fa: iv.fm, fm: frm, fb: iv.fb, whole: right },
        tol / 2.0,
        depth + 1,
    );
    l.iter().zip(&r).map(|(x, y)| x + y).collect()
}

/// Adaptive Simpson integral of a vector-valued function on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> Vec<f64>, a: f64, b: f64, tol: f64) -> Vec<f64> {
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = simpson(&fa, &fm, &fb, b - a);
    adaptive(f, Interval { a, b, fa, fm, fb, whole }, tol, 0)
}

/// Pre-determinant (universal trace) by quadrature of the defining integral.
pub fn pre_determinant_numeric(curve: &dyn UnitaryCurve, tol: f64) -> AffVector {
    let knots = curve.knots();
    let k = curve.shape().block_count();
    let mut total = vec![0.0; k];
    let pieces = (knots.len() - 1) as f64;
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let f = |t: f64| integrand(curve, t, lo, hi);
        let part = adaptive_simpson(&f, lo, hi, tol / pieces);
        for (acc, x) in total.iter_mut().zip(part) {
            *acc += x;
        }
    }
    AffVector(total)
}

/// Quadrature for a sampled path: against its sampler when one is attached,
/// otherwise against the geodesic interpolation of its samples.
pub fn pre_determinant_numeric_sampled(xi: &SampledPath, tol: f64) -> Result<AffVector> {
    if xi.sampler().is_some() {
        check_resolution(xi)?;
        Ok(pre_determinant_numeric(xi, tol))
    } else {
        let interpolant = discretize(xi)?;
        Ok(pre_determinant_numeric(&interpolant, tol))
    }
}

fn check_resolution(xi: &SampledPath) -> Result<()> {
    for w in xi.samples().windows(2) {
        let ratio = w[0].1.adjoint().mul(&w[1].1)?;
        let d = ratio.distance_from_one();
        if d >= 1.0 {
            return Err(Error::Resolution(format!(
                "samples at t = {} and t = {} are {d:.3} apart",
                w[0].0, w[1].0
            )));
        }
    }
    Ok(())
}
