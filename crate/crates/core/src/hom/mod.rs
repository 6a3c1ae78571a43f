//! The homomorphism language: syntax, shape inference and evaluation.

mod ast;
mod parser;
pub mod random;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use ast::HomExpr;
pub use parser::parse_hom;
pub use random::{random_hom_with, RandomHomOptions};

use crate::algebra::linalg::{self, c, CMat};
use crate::algebra::random::{random_unitary_with, rng};
use crate::algebra::{AlgebraShape, Element, Tolerances, Unitary};
use crate::error::{Error, Result};

/// Smallest singular value below which an input counts as singular.
pub const SINGULAR_TOL: f64 = 1e-10;
/// Multiplicativity tolerance used by [`Homomorphism::check`].
pub const HOM_CHECK_TOL: f64 = 1e-8;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidHom(msg.into())
}

/// Target shape of `e` over `source`, enforcing every generator's constraints.
pub fn infer_target(e: &HomExpr, source: &AlgebraShape) -> Result<AlgebraShape> {
    let single = |name: &str| -> Result<usize> {
        if source.block_count() == 1 {
            Ok(source.block_size(0))
        } else {
            Err(invalid(format!("{name} needs a single-block source, got {source}")))
        }
    };
    let abelian = |name: &str| -> Result<()> {
        if source.is_abelian() {
            Ok(())
        } else {
            Err(invalid(format!("{name} needs an abelian source, got {source}")))
        }
    };
    match e {
        HomExpr::Id | HomExpr::Bar => Ok(source.clone()),
        HomExpr::Conj(ms) => {
            if ms.len() != source.block_count() {
                return Err(invalid(format!(
                    "conj needs {} matrices for {source}, got {}",
                    source.block_count(),
                    ms.len()
                )));
            }
            let tol = Tolerances::default().unitary;
            for (i, (m, &n)) in ms.iter().zip(source.blocks()).enumerate() {
                if m.nrows() != n {
                    return Err(invalid(format!("conj matrix {} is {}x{}, block is {n}x{n}", i + 1, m.nrows(), m.ncols())));
                }
                let defect = linalg::spectral_norm(&(m.adjoint() * m - linalg::identity(n)));
                if defect > tol {
                    return Err(invalid(format!("conj matrix {} is not unitary (defect {defect:.3e})", i + 1)));
                }
            }
            Ok(source.clone())
        }
        HomExpr::Power(n) => {
            abelian("power")?;
            if n.unsigned_abs() > i32::MAX as u64 {
                return Err(invalid(format!("power({n}) exponent out of range")));
            }
            Ok(source.clone())
        }
        HomExpr::ModTwist { alpha, beta, n } => {
            abelian("modtwist")?;
            if !alpha.is_finite() || !beta.is_finite() || n.unsigned_abs() > i32::MAX as u64 {
                return Err(invalid("modtwist parameters out of range"));
            }
            Ok(source.clone())
        }
        HomExpr::Det => {
            single("det")?;
            AlgebraShape::matrix(1)
        }
        HomExpr::Pad(m) => AlgebraShape::matrix(single("pad")? + m),
        HomExpr::Amplify(m) => {
            if *m == 0 {
                return Err(invalid("amplify(0) has no target"));
            }
            AlgebraShape::matrix(single("amplify")? * m)
        }
        HomExpr::AmplifySrc(m) => {
            if *m == 0 {
                return Err(invalid("amplify_src(0) has no target"));
            }
            AlgebraShape::new(source.blocks().repeat(*m))
        }
        HomExpr::Join => AlgebraShape::matrix(source.dimension_sum()),
        HomExpr::Proj(i) => {
            if *i == 0 || *i > source.block_count() {
                return Err(invalid(format!("proj{i} out of range for {source}")));
            }
            Ok(source.block_shape(i - 1))
        }
        HomExpr::DirectSum(es) => {
            if es.len() != source.block_count() {
                return Err(invalid(format!(
                    "dsum has {} summands but {source} has {} blocks",
                    es.len(),
                    source.block_count()
                )));
            }
            let parts = es
                .iter()
                .enumerate()
                .map(|(i, e)| infer_target(e, &source.block_shape(i)))
                .collect::<Result<Vec<_>>>()?;
            AlgebraShape::direct_sum(&parts)
        }
        HomExpr::Compose(outer, inner) => infer_target(outer, &infer_target(inner, source)?),
        HomExpr::Mult(es) => {
            if es.len() < 2 {
                return Err(invalid("mult needs at least two factors"));
            }
            let first = infer_target(&es[0], source)?;
            for e in &es[1..] {
                let t = infer_target(e, source)?;
                if t != first {
                    return Err(invalid(format!("mult factors have targets {first} and {t}")));
                }
            }
            if !first.is_abelian() {
                return Err(invalid(format!("mult needs an abelian target, got {first}")));
            }
            Ok(first)
        }
    }
}

/// Upper bound on `‖θ(e^{x}) - 1‖ / ‖x‖` to first order, used to pick step sizes.
pub fn gain(e: &HomExpr, source: &AlgebraShape) -> f64 {
    match e {
        HomExpr::Power(n) => n.unsigned_abs() as f64,
        HomExpr::Det => source.blocks().first().copied().unwrap_or(1) as f64,
        HomExpr::ModTwist { alpha, beta, n } => n.unsigned_abs() as f64 + alpha.abs() + beta.abs(),
        HomExpr::DirectSum(es) => es
            .iter()
            .enumerate()
            .map(|(i, e)| gain(e, &source.block_shape(i.min(source.block_count() - 1))))
            .fold(0.0, f64::max),
        HomExpr::Mult(es) => es.iter().map(|e| gain(e, source)).sum(),
        HomExpr::Compose(outer, inner) => {
            let mid = infer_target(inner, source).unwrap_or_else(|_| source.clone());
            gain(outer, &mid) * gain(inner, source)
        }
        _ => 1.0,
    }
}

fn scalar_block(z: Complex64) -> CMat {
    CMat::from_element(1, 1, z)
}

fn block_diag(parts: &[&CMat]) -> CMat {
    let n: usize = parts.iter().map(|m| m.nrows()).sum();
    let mut out = CMat::zeros(n, n);
    let mut off = 0;
    for m in parts {
        let k = m.nrows();
        out.view_mut((off, off), (k, k)).copy_from(*m);
        off += k;
    }
    out
}

/// Structural evaluation on any element; shapes must already be validated.
fn eval(e: &HomExpr, x: &Element) -> Result<Element> {
    let shape = x.shape();
    match e {
        HomExpr::Id => Ok(x.clone()),
        HomExpr::Bar => Ok(x.conjugate()),
        HomExpr::Conj(ms) => Ok(Element::from_fn(shape, |i, _| &ms[i] * x.block(i) * ms[i].adjoint())),
        HomExpr::Power(n) => Ok(x.map_blocks(|b| scalar_block(b[(0, 0)].powi(*n as i32)))),
        HomExpr::ModTwist { alpha, beta, n } => Ok(x.map_blocks(|b| {
            let z = b[(0, 0)];
            let twist = (c(-*beta, *alpha) * z.norm().ln()).exp();
            scalar_block(twist * z.powi(*n as i32))
        })),
        HomExpr::Det => Element::new(AlgebraShape::matrix(1)?, vec![scalar_block(x.block(0).determinant())]),
        HomExpr::Pad(m) => {
            let one = linalg::identity(*m);
            Element::new(AlgebraShape::matrix(shape.block_size(0) + m)?, vec![block_diag(&[x.block(0), &one])])
        }
        HomExpr::Amplify(m) => {
            let parts: Vec<&CMat> = std::iter::repeat_n(x.block(0), *m).collect();
            Element::new(AlgebraShape::matrix(shape.block_size(0) * m)?, vec![block_diag(&parts)])
        }
        HomExpr::AmplifySrc(m) => {
            Element::new(AlgebraShape::new(shape.blocks().repeat(*m))?, x.blocks().iter().cycle().take(x.blocks().len() * m).cloned().collect())
        }
        HomExpr::Join => {
            let parts: Vec<&CMat> = x.blocks().iter().collect();
            Element::new(AlgebraShape::matrix(shape.dimension_sum())?, vec![block_diag(&parts)])
        }
        HomExpr::Proj(i) => Element::new(shape.block_shape(i - 1), vec![x.block(i - 1).clone()]),
        HomExpr::DirectSum(es) => {
            let mut shapes = Vec::with_capacity(es.len());
            let mut blocks = Vec::new();
            for (i, e) in es.iter().enumerate() {
                let xi = Element::new(shape.block_shape(i), vec![x.block(i).clone()])?;
                let yi = eval(e, &xi)?;
                shapes.push(yi.shape().clone());
                blocks.extend(yi.into_blocks());
            }
            Element::new(AlgebraShape::direct_sum(&shapes)?, blocks)
        }
        HomExpr::Compose(outer, inner) => eval(outer, &eval(inner, x)?),
        HomExpr::Mult(es) => {
            let mut acc = eval(&es[0], x)?;
            for e in &es[1..] {
                acc = acc.zip_blocks(&eval(e, x)?, |a, b| a * b)?;
            }
            Ok(acc)
        }
    }
}

/// A validated expression together with its source and target shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct Homomorphism {
    expr: HomExpr,
    source: AlgebraShape,
    target: AlgebraShape,
    gain: f64,
}

impl Homomorphism {
    pub fn new(expr: HomExpr, source: AlgebraShape) -> Result<Self> {
        let target = infer_target(&expr, &source)?;
        let gain = gain(&expr, &source);
        Ok(Homomorphism { expr, source, target, gain })
    }

    pub fn parse(text: &str, source: AlgebraShape) -> Result<Self> {
        Self::new(parse_hom(text)?, source)
    }

    /// Skips validation. Evaluation still needs consistent shapes; this exists
    /// to exercise the checker on maps the validator would refuse.
    pub fn unchecked(expr: HomExpr, source: AlgebraShape, target: AlgebraShape) -> Self {
        let gain = gain(&expr, &source);
        Homomorphism { expr, source, target, gain }
    }

    pub fn expr(&self) -> &HomExpr {
        &self.expr
    }

    pub fn source(&self) -> &AlgebraShape {
        &self.source
    }

    pub fn target(&self) -> &AlgebraShape {
        &self.target
    }

    /// See [`gain`].
    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn uses_gl_generators(&self) -> bool {
        self.expr.uses_gl_generators()
    }

    fn check_source(&self, x: &Element) -> Result<()> {
        if x.shape() != &self.source {
            return Err(Error::Shape(format!("input is over {}, map is from {}", x.shape(), self.source)));
        }
        Ok(())
    }

    fn check_output(&self, y: &Element) -> Result<()> {
        if y.shape() != &self.target {
            return Err(Error::Shape(format!("image is over {}, declared target {}", y.shape(), self.target)));
        }
        Ok(())
    }

    /// `θ(u)`.
    pub fn apply(&self, u: &Unitary) -> Result<Unitary> {
        self.check_source(u.element())?;
        let y = eval(&self.expr, u.element())?;
        self.check_output(&y)?;
        Ok(Unitary::trusted(y))
    }

    /// `θ(g)` for an invertible `g`.
    pub fn apply_gl(&self, g: &Element) -> Result<Element> {
        self.check_source(g)?;
        let s = g.smallest_singular_value();
        if s <= SINGULAR_TOL {
            return Err(Error::Singular(s));
        }
        let y = eval(&self.expr, g)?;
        self.check_output(&y)?;
        Ok(y)
    }

    /// Multiplicativity, unit and adjoint checks on seeded random unitaries.
    pub fn check(&self, trials: usize, seed: u64) -> HomCheck {
        let mut r = rng(seed, 0x686f6d);
        let mut out = HomCheck { trials, unit_defect: 0.0, multiplicative_defect: 0.0, adjoint_defect: 0.0, passed: true };
        let fail = |out: &mut HomCheck| out.passed = false;
        match self.apply(&Unitary::one(&self.source)) {
            Ok(one) => out.unit_defect = one.distance_from_one(),
            Err(_) => fail(&mut out),
        }
        for _ in 0..trials {
            let u = random_unitary_with(&self.source, &mut r);
            let v = random_unitary_with(&self.source, &mut r);
            let step = || -> Result<(f64, f64)> {
                let uv = self.apply(&u.mul(&v)?)?;
                let (tu, tv) = (self.apply(&u)?, self.apply(&v)?);
                let m = uv.element().distance(tu.mul(&tv)?.element())?;
                let a = self.apply(&u.adjoint())?.element().distance(tu.adjoint().element())?;
                Ok((m, a))
            };
            match step() {
                Ok((m, a)) => {
                    out.multiplicative_defect = out.multiplicative_defect.max(m);
                    out.adjoint_defect = out.adjoint_defect.max(a);
                }
                Err(_) => fail(&mut out),
            }
        }
        if out.unit_defect >= HOM_CHECK_TOL
            || out.multiplicative_defect >= HOM_CHECK_TOL
            || out.adjoint_defect >= HOM_CHECK_TOL
        {
            out.passed = false;
        }
        out
    }
}

impl std::fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} : {} -> {}", self.expr, self.source, self.target)
    }
}

/// Serialized as `{expr, source, target}` with the expression in concrete syntax.
impl Serialize for Homomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            expr: String,
            source: &'a AlgebraShape,
            target: &'a AlgebraShape,
        }
        Repr { expr: self.expr.to_string(), source: &self.source, target: &self.target }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Homomorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            expr: String,
            source: AlgebraShape,
        }
        let r = Repr::deserialize(d)?;
        Homomorphism::parse(&r.expr, r.source).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`Homomorphism::check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomCheck {
    pub trials: usize,
    pub unit_defect: f64,
    pub multiplicative_defect: f64,
    pub adjoint_defect: f64,
    pub passed: bool,
}

/// `true` when `θ` passes [`Homomorphism::check`].
pub fn homomorphism_check(hom: &Homomorphism, trials: usize, seed: u64) -> bool {
    hom.check(trials, seed).passed
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::algebra::random_unitary;

    fn shape(b: &[usize]) -> AlgebraShape {
        AlgebraShape::new(b.to_vec()).unwrap()
    }

    fn scalar_unitary(zs: &[Complex64]) -> Unitary {
        let s = AlgebraShape::abelian(zs.len()).unwrap();
        Unitary::new(Element::new(s, zs.iter().map(|&z| scalar_block(z)).collect()).unwrap()).unwrap()
    }

    #[test]
    fn targets() {
        let t = |e: &str, b: &[usize]| Homomorphism::parse(e, shape(b)).unwrap().target().blocks().to_vec();
        assert_eq!(t("pad(1)", &[2]), vec![3]);
        assert_eq!(t("det", &[2]), vec![1]);
        assert_eq!(t("amplify(2)", &[1]), vec![2]);
        assert_eq!(t("power(2) ∘ det", &[2]), vec![1]);
        assert_eq!(t("dsum(power(1), bar) . amplify_src(2)", &[1]), vec![1, 1]);
        assert_eq!(t("join . dsum(id, bar) . amplify_src(2)", &[1]), vec![2]);
        assert_eq!(t("dsum(pad(1), det)", &[2, 3]), vec![3, 1]);
        assert_eq!(t("proj2", &[2, 3]), vec![3]);
    }

    #[test]
    fn invalid_expressions() {
        let bad = |e: &str, b: &[usize]| Homomorphism::parse(e, shape(b)).unwrap_err();
        assert!(matches!(bad("power(2)", &[2]), Error::InvalidHom(_)));
        assert!(matches!(bad("det", &[1, 1]), Error::InvalidHom(_)));
        assert!(matches!(bad("dsum(id)", &[1, 1]), Error::InvalidHom(_)));
        assert!(matches!(bad("mult(id, id)", &[2]), Error::InvalidHom(_)));
        assert!(matches!(bad("mult(proj1, id)", &[1, 1]), Error::InvalidHom(_)));
        assert!(matches!(bad("proj3", &[1, 1]), Error::InvalidHom(_)));
        assert!(matches!(bad("conj([[1, 1], [0, 1]])", &[2]), Error::InvalidHom(_)));
        assert!(matches!(bad("modtwist(1, 1)", &[2]), Error::InvalidHom(_)));
        assert!(matches!(bad("pad(20)", &[2]), Error::Shape(_)));
    }

    #[test]
    fn bar_conjugates() {
        let h = Homomorphism::parse("bar", shape(&[1])).unwrap();
        let y = h.apply(&scalar_unitary(&[c(0.0, 1.0)])).unwrap();
        assert_eq!(y.element().block(0)[(0, 0)], c(0.0, -1.0));
    }

    #[test]
    fn det_of_diagonal() {
        let (a, b) = (0.7, -2.1);
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from_polar(1.0, a),
            Complex64::from_polar(1.0, b),
        ]));
        let u = Unitary::new(Element::new(shape(&[2]), vec![m]).unwrap()).unwrap();
        let y = Homomorphism::parse("det", shape(&[2])).unwrap().apply(&u).unwrap();
        assert!((y.element().block(0)[(0, 0)] - Complex64::from_polar(1.0, a + b)).norm() < 1e-14);
    }

    #[test]
    fn mult_gives_zbar_w_v() {
        let h = Homomorphism::parse("mult(power(-1) . proj1, proj2, proj3)", shape(&[1, 1, 1])).unwrap();
        let (z, w, v) = (Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, 1.1), Complex64::from_polar(1.0, -2.0));
        let y = h.apply(&scalar_unitary(&[z, w, v])).unwrap();
        assert!((y.element().block(0)[(0, 0)] - z.conj() * w * v).norm() < 1e-14);
    }

    #[test]
    fn example_six_is_lambda_lambdabar() {
        let h = Homomorphism::parse("join . dsum(id, bar) . amplify_src(2)", shape(&[1])).unwrap();
        let l = Complex64::from_polar(1.0, 0.4);
        let y = h.apply(&scalar_unitary(&[l])).unwrap();
        let b = y.element().block(0);
        assert_eq!((b[(0, 0)], b[(1, 1)], b[(0, 1)]), (l, l.conj(), c(0.0, 0.0)));
    }

    #[test]
    fn pad_and_amplify() {
        let s = shape(&[2]);
        let u = random_unitary(&s, 5);
        let p = Homomorphism::parse("pad(1)", s.clone()).unwrap().apply(&u).unwrap();
        assert_eq!(p.element().block(0)[(2, 2)], c(1.0, 0.0));
        assert_eq!(p.element().block(0).view((0, 0), (2, 2)), u.element().block(0).view((0, 0), (2, 2)));
        let a = Homomorphism::parse("amplify(3)", s).unwrap().apply(&u).unwrap();
        assert_eq!(a.shape().blocks(), &[6]);
        assert_eq!(a.element().block(0).view((4, 4), (2, 2)), u.element().block(0).view((0, 0), (2, 2)));
    }

    #[test]
    fn modtwist_values() {
        let s = shape(&[1]);
        let g = Element::new(s.clone(), vec![scalar_block(c(1.5, -0.7))]).unwrap();
        let id = Homomorphism::parse("modtwist(0, 0)", s.clone()).unwrap();
        assert!(id.apply_gl(&g).unwrap().distance(&g).unwrap() < 1e-14);
        // On the circle the twist disappears.
        let h = Homomorphism::parse("modtwist(0.5, -0.3, 3)", s.clone()).unwrap();
        let z = Complex64::from_polar(1.0, 0.9);
        let y = h.apply(&scalar_unitary(&[z])).unwrap();
        assert!((y.element().block(0)[(0, 0)] - z.powi(3)).norm() < 1e-14);
        // z = e^{2πi(a+bi)}: image is e^{2πi((na - αb) + i(n - β)b)}.
        let (a, b, n, al, be) = (0.13, 0.21, 3, 0.5, -0.3);
        let z = (c(0.0, 2.0 * PI) * c(a, b)).exp();
        let g = Element::new(s, vec![scalar_block(z)]).unwrap();
        let y = h.apply_gl(&g).unwrap().block(0)[(0, 0)];
        let expected = (c(0.0, 2.0 * PI) * c(n as f64 * a - al * b, (n as f64 - be) * b)).exp();
        assert!((y - expected).norm() < 1e-12);
    }

    #[test]
    fn singular_input_is_rejected() {
        let h = Homomorphism::parse("det", shape(&[2])).unwrap();
        let g = Element::zero(&shape(&[2]));
        assert!(matches!(h.apply_gl(&g), Err(Error::Singular(_))));
    }

    #[test]
    fn checker_accepts_generators() {
        for (e, b) in [
            ("id", vec![2, 1]),
            ("bar", vec![3]),
            ("det", vec![3]),
            ("pad(2)", vec![2]),
            ("amplify(2)", vec![2]),
            ("power(-3)", vec![1, 1]),
            ("conj([[0, 1], [1, 0]], [[0.6+0.8i]])", vec![2, 1]),
            ("mult(power(-1) . proj1, proj2, proj3)", vec![1, 1, 1]),
            ("join . dsum(id, bar) . amplify_src(2)", vec![2]),
        ] {
            let h = Homomorphism::parse(e, shape(&b)).unwrap();
            let r = h.check(100, 7);
            assert!(r.passed, "{e}: {r:?}");
            assert_eq!(r.unit_defect, 0.0, "{e}");
        }
    }

    #[test]
    fn checker_rejects_nonabelian_mult() {
        let s = shape(&[2]);
        let h = Homomorphism::unchecked(HomExpr::Mult(vec![HomExpr::Id, HomExpr::Id]), s.clone(), s);
        assert!(!homomorphism_check(&h, 20, 1));
    }

    #[test]
    fn serde_uses_concrete_syntax() {
        let h = Homomorphism::parse("power(2) . det", shape(&[2])).unwrap();
        let j = serde_json::to_string(&h).unwrap();
        assert!(j.contains("\"power(2) . det\""));
        assert_eq!(serde_json::from_str::<Homomorphism>(&j).unwrap(), h);
    }
}
