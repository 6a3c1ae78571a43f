//! Library results against the independent arithmetic in `common`, with the
//! expected values frozen here.

mod common;

use std::f64::consts::PI;

use common::*;
use unihom::algebra::random::{random_element_with, random_selfadjoint_with, random_unitary_with, rng};
use unihom::algebra::{exp_generator, AlgebraShape, Element, SelfAdjoint};
use unihom::hom::Homomorphism;
use unihom::induced::{gl_real_matrix, k0_map, lambda_matrix, stone_generator};
use unihom::path::{pre_determinant, random_path_with, thomsen_class};

fn shape(b: &[usize]) -> AlgebraShape {
    AlgebraShape::new(b.to_vec()).unwrap()
}

fn hom(e: &str, b: &[usize]) -> Homomorphism {
    Homomorphism::parse(e, shape(b)).unwrap()
}

fn close(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol))
}

fn diag_pad(u: &Mat, extra: usize) -> Mat {
    let n = u.len();
    let mut m = eye(n + extra);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = u[i][j];
        }
    }
    m
}

#[test]
fn exponential_matches_pade() {
    let mut r = rng(11, 1);
    for bl in [vec![1], vec![3], vec![2, 4], vec![1, 2, 3]] {
        let s = shape(&bl);
        for scale_ in [0.1, 1.0, 3.0] {
            let x = random_element_with(&s, &mut r, scale_);
            for (lib, want) in blocks_of(&x.expm()).iter().zip(blocks_of_pade(&x)) {
                let d = max_abs(&sub(lib, &want)) / max_abs(&want).max(1.0);
                assert!(d < 1e-11, "{bl:?} {scale_}: {d}");
            }
        }
        let a = random_selfadjoint_with(&s, &mut r, 2.0);
        let u = exp_generator(&a, 0.7);
        let want: Vec<Mat> = blocks(a.element()).iter().map(|b| expm_pade(&scale(b, cx(0.0, 2.0 * PI * 0.7)))).collect();
        for (lib, w) in blocks(u.element()).iter().zip(&want) {
            assert!(max_abs(&sub(lib, w)) < 1e-11);
        }
    }
}

fn blocks_of(e: &Element) -> Vec<Mat> {
    blocks(e)
}

fn blocks_of_pade(e: &Element) -> Vec<Mat> {
    blocks(e).iter().map(expm_pade).collect()
}

/// `Λ` for the basic examples, frozen from [`lambda_by_difference`] on
/// hand-written maps.
const FROZEN_LAMBDA: [(&str, &[usize], &[&[f64]]); 6] = [
    ("pad(1)", &[2], &[&[2.0 / 3.0]]),
    ("det", &[2], &[&[2.0]]),
    ("amplify(2)", &[1], &[&[1.0]]),
    ("dsum(pad(1), bar)", &[2, 1], &[&[2.0 / 3.0, 0.0], &[0.0, -1.0]]),
    ("mult(power(-1) . proj1, proj2, proj3)", &[1, 1, 1], &[&[-1.0, 1.0, 1.0]]),
    ("join . dsum(id, bar) . amplify_src(2)", &[1], &[&[0.0]]),
];

fn hand_written(expr: &str) -> Box<HomFn> {
    match expr {
        "pad(1)" => Box::new(|u: &[Mat]| vec![diag_pad(&u[0], 1)]),
        "det" => Box::new(|u: &[Mat]| {
            let m = &u[0];
            vec![vec![vec![m[0][0] * m[1][1] - m[0][1] * m[1][0]]]]
        }),
        "amplify(2)" => Box::new(|u: &[Mat]| {
            let z = u[0][0][0];
            vec![vec![vec![z, cx(0.0, 0.0)], vec![cx(0.0, 0.0), z]]]
        }),
        "dsum(pad(1), bar)" => Box::new(|u: &[Mat]| vec![diag_pad(&u[0], 1), vec![vec![u[1][0][0].conj()]]]),
        "mult(power(-1) . proj1, proj2, proj3)" => {
            Box::new(|u: &[Mat]| vec![vec![vec![u[1][0][0] * u[2][0][0] / u[0][0][0]]]])
        }
        "join . dsum(id, bar) . amplify_src(2)" => Box::new(|u: &[Mat]| {
            let z = u[0][0][0];
            vec![vec![vec![z * z.conj()]]]
        }),
        _ => unreachable!(),
    }
}

#[test]
fn lambda_matches_frozen_difference_oracle() {
    for (expr, src, want) in FROZEN_LAMBDA {
        let want: Vec<Vec<f64>> = want.iter().map(|r| r.to_vec()).collect();
        let oracle = lambda_by_difference(&*hand_written(expr), src);
        assert!(close(&oracle, &want, 1e-6), "oracle {expr}: {oracle:?}");
        let lib = lambda_matrix(&hom(expr, src)).unwrap().matrix;
        assert!(close(&lib, &want, 1e-9), "library {expr}: {lib:?}");
    }
}

#[test]
fn stone_generator_matches_difference_oracle() {
    let mut r = rng(12, 1);
    let cases: [(&str, &[usize]); 3] = [("pad(1)", &[2]), ("dsum(pad(1), bar)", &[2, 1]), ("det", &[2])];
    for (expr, src) in cases {
        let h = hom(expr, src);
        let theta = hand_written(expr);
        for _ in 0..5 {
            let a = random_selfadjoint_with(h.source(), &mut r, 1.0);
            let lib = blocks(stone_generator(&h, &a).unwrap().element());
            let want = stone_by_difference(&*theta, &blocks(a.element()));
            for (x, y) in lib.iter().zip(&want) {
                assert!(max_abs(&sub(x, y)) < 1e-6, "{expr}");
            }
        }
    }
}

/// The formula `z ↦ |z|^{α+βi} zⁿ` as literally written, evaluated by hand.
fn literal_modtwist(alpha: f64, beta: f64, n: i32) -> impl Fn(Complex) -> Complex {
    move |z: Complex| (cx(alpha, beta) * z.norm().ln()).exp() * z.powi(n)
}

type Complex = num_complex::Complex64;

/// `G` of a scalar map on `ℂ` as a real 2×2 matrix, by central differences.
fn g_by_difference(theta: &dyn Fn(Complex) -> Complex) -> [[f64; 2]; 2] {
    let h = 1e-6;
    let col = |a: Complex| {
        let x = |t: f64| theta((cx(0.0, 2.0 * PI * t) * a).exp());
        (x(h) - x(-h)) / cx(0.0, 4.0 * PI * h)
    };
    let (c1, ci) = (col(cx(1.0, 0.0)), col(cx(0.0, 1.0)));
    [[c1.re, ci.re], [c1.im, ci.im]]
}

#[test]
fn literal_modtwist_formula_gives_the_transposed_parameters() {
    for (n, al, be) in [(1, 0.5, -0.3), (2, -0.25, 0.75), (-1, 1.0, 0.5)] {
        let lit = g_by_difference(&literal_modtwist(al, be, n));
        let nf = n as f64;
        let want_literal = [[nf, -be], [0.0, nf + al]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((lit[i][j] - want_literal[i][j]).abs() < 1e-6, "{lit:?}");
            }
        }
        // The library's modtwist(α, β, n) is the literal map at (-β, α).
        let h = hom(&format!("modtwist({al}, {be}, {n})"), &[1]);
        let same = literal_modtwist(-be, al, n);
        for z in [cx(0.3, 1.2), cx(-2.0, 0.1), cx(0.05, -0.4)] {
            let x = Element::new(shape(&[1]), vec![unihom::algebra::linalg::CMat::from_element(1, 1, z)]).unwrap();
            let got = h.apply_gl(&x).unwrap().block(0)[(0, 0)];
            assert!((got - same(z)).norm() < 1e-12 * same(z).norm().max(1.0));
        }
        let g = gl_real_matrix(&h).unwrap();
        let want = [[nf, -al], [0.0, nf - be]];
        let oracle = g_by_difference(&same);
        for i in 0..2 {
            for j in 0..2 {
                assert!((g[i][j] - want[i][j]).abs() < 1e-8);
                assert!((oracle[i][j] - want[i][j]).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn predeterminant_matches_quadrature_oracle() {
    let mut r = rng(13, 1);
    for blocks_ in [vec![1], vec![2], vec![2, 1], vec![3, 1, 2]] {
        let s = shape(&blocks_);
        for segments in 1..=3 {
            let start = random_unitary_with(&s, &mut r);
            let p = random_path_with(start, segments, 1.0, &mut r);
            let xi = |t: f64| blocks(p.at(t).element());
            let oracle = predet_by_quadrature(&xi, p.knots(), 400);
            let lib = pre_determinant(&p);
            for (a, b) in oracle.iter().zip(&lib.0) {
                assert!((a - b).abs() < 1e-7, "{blocks_:?}: {oracle:?} vs {lib:?}");
            }
        }
    }
}

/// `Δ̃` of `t ↦ diag(e^{2πit/3}, 1)` is `(1/3 + 0)/2`.
const FROZEN_CUBE_ROOT_CLASS: f64 = 1.0 / 6.0;

#[test]
fn cube_root_diagonal_class() {
    let xi = |t: f64| vec![vec![vec![(cx(0.0, 2.0 * PI * t / 3.0)).exp(), cx(0.0, 0.0)], vec![cx(0.0, 0.0), cx(1.0, 0.0)]]];
    let oracle = predet_by_quadrature(&xi, &[0.0, 1.0], 200);
    assert!((oracle[0] - FROZEN_CUBE_ROOT_CLASS).abs() < 1e-9);
    let s = shape(&[2]);
    let u = exp_generator(&SelfAdjoint::diagonal(&s, &[vec![1.0 / 3.0, 0.0]]).unwrap(), 1.0);
    let c = thomsen_class(&u).unwrap();
    assert!((c.representative.0[0] - FROZEN_CUBE_ROOT_CLASS).abs() < 1e-9);
    assert!(c.distance_from_zero() >= 0.16);
}

/// Winding of `t ↦ diag(e^{2πit}, e^{2πit})` against the unnormalized trace.
const FROZEN_AMPLIFY_K0: i64 = 2;

#[test]
fn amplify_k0_against_winding_oracle() {
    let xi = |t: f64| {
        let z = (cx(0.0, 2.0 * PI * t)).exp();
        vec![vec![vec![z, cx(0.0, 0.0)], vec![cx(0.0, 0.0), z]]]
    };
    let w = predet_by_quadrature(&xi, &[0.0, 1.0], 200)[0] * 2.0;
    assert!((w - FROZEN_AMPLIFY_K0 as f64).abs() < 1e-9);
    assert_eq!(k0_map(&hom("amplify(2)", &[1])).unwrap().matrix, vec![vec![FROZEN_AMPLIFY_K0]]);
}
