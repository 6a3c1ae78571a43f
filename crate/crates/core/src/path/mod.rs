//! Paths in the unitary group and the de la Harpe–Skandalis pre-determinant.
//!
//! The working representation is [`PiecewisePath`]: a chain of exponential
//! segments `t ↦ base·e^{2πi t a}`. On such a path the pre-determinant is the
//! finite sum `Σ τ(aⱼ)`. Continuous input arrives as a [`SampledPath`] and is
//! turned into a piecewise-exponential path by [`discretize`]. The adaptive
//! quadrature in [`numeric`] evaluates the defining integral directly and is
//! kept as an independent check.

mod determinant;
mod discretize;
pub mod numeric;
pub mod random;
pub(crate) mod ops;
mod thomsen;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::HermitianSpectrum;
use crate::algebra::{AlgebraShape, Element, SelfAdjoint, Unitary};
use crate::error::{Error, Result};

pub use determinant::{
    pre_determinant, pre_determinant_functional, pre_determinant_unnormalized,
    pre_determinant_weights,
};
pub use discretize::{discretize, discretize_with_bound};
pub use numeric::{pre_determinant_numeric, pre_determinant_numeric_sampled, UnitaryCurve};
pub use ops::{concat, loop_k0_class, pointwise_product, projection_loop, reverse};
pub use random::random_path_with;
pub use thomsen::{cu_membership, path_from_identity, thomsen_class, ThomsenClass};

/// Joint tolerance for continuity of consecutive segments.
pub const TOL_JOIN: f64 = 1e-8;
/// Maximum distance of a loop's winding from an integer.
pub const TOL_INT: f64 = 1e-6;

/// `s ↦ base·e^{2πi s·generator}` for local time `s ∈ [0, 1]`.
#[derive(Clone)]
pub struct PathSegment {
    base: Unitary,
    generator: SelfAdjoint,
    spectra: Vec<HermitianSpectrum>,
}

impl PathSegment {
    pub fn new(base: Unitary, generator: SelfAdjoint) -> Result<Self> {
        if base.shape() != generator.shape() {
            return Err(Error::Shape(format!(
                "segment base over {} but generator over {}",
                base.shape(),
                generator.shape()
            )));
        }
        let spectra = generator.spectra();
        Ok(PathSegment {
            base,
            generator,
            spectra,
        })
    }

    pub fn base(&self) -> &Unitary {
        &self.base
    }

    pub fn generator(&self) -> &SelfAdjoint {
        &self.generator
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.base.shape()
    }

    pub fn at(&self, s: f64) -> Unitary {
        let e = Element::from_fn(self.shape(), |i, _| {
            self.base.element().block(i) * self.spectra[i].exp_2pi_i(s)
        });
        Unitary::trusted(e)
    }

    pub fn end(&self) -> Unitary {
        self.at(1.0)
    }
}

impl PartialEq for PathSegment {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.generator == other.generator
    }
}

impl fmt::Debug for PathSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathSegment")
            .field("base", &self.base)
            .field("generator", &self.generator)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SegmentRepr {
    base: Unitary,
    generator: SelfAdjoint,
}

impl Serialize for PathSegment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SegmentRepr {
            base: self.base.clone(),
            generator: self.generator.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PathSegment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = SegmentRepr::deserialize(deserializer)?;
        PathSegment::new(r.base, r.generator).map_err(serde::de::Error::custom)
    }
}

/// A continuous chain of exponential segments on `[0, 1]`.
///
/// Segment `j` occupies `[knots[j], knots[j+1]]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewisePath {
    segments: Vec<PathSegment>,
    knots: Vec<f64>,
}

#[derive(Deserialize)]
struct PathRepr {
    segments: Vec<PathSegment>,
    knots: Vec<f64>,
}

impl<'de> Deserialize<'de> for PiecewisePath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = PathRepr::deserialize(deserializer)?;
        PiecewisePath::with_knots(r.segments, r.knots).map_err(serde::de::Error::custom)
    }
}

impl PiecewisePath {
    /// Segments on a uniform grid `j/k`.
    pub fn new(segments: Vec<PathSegment>) -> Result<Self> {
        let k = segments.len();
        let knots = (0..=k).map(|j| j as f64 / k.max(1) as f64).collect();
        Self::with_knots(segments, knots)
    }

    pub fn with_knots(segments: Vec<PathSegment>, knots: Vec<f64>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvariantViolation("a path needs at least one segment".into()));
        }
        if knots.len() != segments.len() + 1 {
            return Err(Error::InvariantViolation(format!(
                "{} knots for {} segments",
                knots.len(),
                segments.len()
            )));
        }
        if knots[0] != 0.0 || *knots.last().unwrap() != 1.0 || knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvariantViolation(
                "knots must increase strictly from 0 to 1".into(),
            ));
        }
        let shape = segments[0].shape().clone();
        for (j, pair) in segments.windows(2).enumerate() {
            if pair[1].shape() != &shape {
                return Err(Error::Shape(format!("segment {} changes shape", j + 1)));
            }
            let gap = pair[0].end().element().distance(pair[1].base().element())?;
            if gap > TOL_JOIN {
                return Err(Error::InvariantViolation(format!(
                    "segments {j} and {} do not join (gap {gap:.3e})",
                    j + 1
                )));
            }
        }
        Ok(PiecewisePath { segments, knots })
    }

    /// `t ↦ base·e^{2πi t a}`.
    pub fn exponential(base: Unitary, generator: SelfAdjoint) -> Result<Self> {
        Self::new(vec![PathSegment::new(base, generator)?])
    }

    pub fn constant(u: Unitary) -> Self {
        let zero = SelfAdjoint::zero(u.shape());
        Self::exponential(u, zero).expect("constant path is valid")
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.segments[0].shape()
    }

    pub fn start(&self) -> &Unitary {
        self.segments[0].base()
    }

    pub fn end(&self) -> Unitary {
        self.segments.last().unwrap().end()
    }

    /// Index of the segment containing `t` and the local time within it.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let t = t.clamp(0.0, 1.0);
        let j = match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.segments.len() - 1),
            Err(i) => i - 1,
        };
        let (a, b) = (self.knots[j], self.knots[j + 1]);
        (j, (t - a) / (b - a))
    }

    pub fn at(&self, t: f64) -> Unitary {
        let (j, s) = self.locate(t);
        self.segments[j].at(s)
    }

    pub fn is_loop(&self, tol: f64) -> bool {
        self.end()
            .element()
            .distance(self.start().element())
            .map(|d| d <= tol)
            .unwrap_or(false)
    }
}

pub type Sampler = Arc<dyn Fn(f64) -> Unitary + Send + Sync>;

/// Samples of a continuous path, optionally with a sampler that can be queried
/// for more points.
#[derive(Clone)]
pub struct SampledPath {
    samples: Vec<(f64, Unitary)>,
    knots: Vec<f64>,
    sampler: Option<Sampler>,
}

impl fmt::Debug for SampledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledPath")
            .field("samples", &self.samples.len())
            .field("knots", &self.knots)
            .field("sampler", &self.sampler.is_some())
            .finish()
    }
}

impl SampledPath {
    pub fn new(samples: Vec<(f64, Unitary)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvariantViolation("a sampled path needs at least two samples".into()));
        }
        if samples[0].0 != 0.0 || samples.last().unwrap().0 != 1.0 {
            return Err(Error::InvariantViolation("samples must start at t = 0 and end at t = 1".into()));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvariantViolation("sample times must increase strictly".into()));
        }
        let shape = samples[0].1.shape();
        if samples.iter().any(|(_, u)| u.shape() != shape) {
            return Err(Error::Shape("samples over different shapes".into()));
        }
        Ok(SampledPath {
            samples,
            knots: vec![0.0, 1.0],
            sampler: None,
        })
    }

    /// Samples `f` at `times`; `f` stays attached for refinement.
    pub fn from_sampler(f: Sampler, times: &[f64]) -> Result<Self> {
        let samples = times.iter().map(|&t| (t, f(t))).collect();
        let mut p = Self::new(samples)?;
        p.sampler = Some(f);
        Ok(p)
    }

    /// `n ≥ 2` equally spaced samples of `f`.
    pub fn uniform(f: Sampler, n: usize) -> Result<Self> {
        let n = n.max(2);
        let times: Vec<f64> = (0..n).map(|j| j as f64 / (n - 1) as f64).collect();
        Self::from_sampler(f, &times)
    }

    /// Declares times where the underlying path may have a corner. Every knot must
    /// be a sample time.
    pub fn with_knots(mut self, knots: Vec<f64>) -> Result<Self> {
        for k in &knots {
            if !self.samples.iter().any(|(t, _)| t == k) {
                return Err(Error::InvariantViolation(format!("knot {k} is not a sample time")));
            }
        }
        self.knots = knots;
        Ok(self)
    }

    pub fn samples(&self) -> &[(f64, Unitary)] {
        &self.samples
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn sampler(&self) -> Option<&Sampler> {
        self.sampler.as_ref()
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.samples[0].1.shape()
    }
}
