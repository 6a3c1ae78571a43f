//! Independent reference arithmetic for the integration tests. Matrices are
//! plain `Vec<Vec<Complex64>>`; nothing here calls into nalgebra or the
//! library's own exponential, logarithm or trace code.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use unihom::algebra::Element;

pub type Mat = Vec<Vec<Complex64>>;

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn eye(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { cx(1.0, 0.0) } else { cx(0.0, 0.0) }).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn scale(a: &Mat, s: Complex64) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn adjoint(a: &Mat) -> Mat {
    let n = a.len();
    (0..a[0].len()).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn trace(a: &Mat) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn norm1(a: &Mat) -> f64 {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `X = A⁻¹B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut a = a.clone();
    let mut b = b.clone();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap()).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        let d = a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / d;
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            for k in 0..b[0].len() {
                let v = b[col][k];
                b[row][k] -= f * v;
            }
        }
    }
    let mut x = vec![vec![cx(0.0, 0.0); b[0].len()]; n];
    for k in 0..b[0].len() {
        for row in (0..n).rev() {
            let s: Complex64 = (row + 1..n).map(|j| a[row][j] * x[j][k]).sum();
            x[row][k] = (b[row][k] - s) / a[row][row];
        }
    }
    x
}

/// Diagonal (6,6) Padé approximant with scaling and squaring.
pub fn expm_pade(a: &Mat) -> Mat {
    const C: [f64; 7] = [1.0, 0.5, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0];
    let n = a.len();
    let mut s = 0;
    while norm1(a) / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let x = scale(a, cx(0.5f64.powi(s), 0.0));
    let mut num = eye(n);
    let mut den = eye(n);
    let mut power = eye(n);
    for (k, &ck) in C.iter().enumerate().skip(1) {
        power = mul(&power, &x);
        let term = scale(&power, cx(ck, 0.0));
        num = add(&num, &term);
        den = if k % 2 == 0 { add(&den, &term) } else { sub(&den, &term) };
    }
    let mut r = solve(&den, &num);
    for _ in 0..s {
        r = mul(&r, &r);
    }
    r
}

pub fn to_mat(m: &unihom::algebra::linalg::CMat) -> Mat {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn blocks(e: &Element) -> Vec<Mat> {
    e.blocks().iter().map(to_mat).collect()
}

/// A homomorphism given directly on block lists, written out by hand in each test.
pub type HomFn = dyn Fn(&[Mat]) -> Vec<Mat>;

/// `S_θ(a)` by a central difference of `t ↦ θ(e^{2πita})` at `0`.
pub fn stone_by_difference(theta: &HomFn, a: &[Mat]) -> Vec<Mat> {
    let h = 1e-5;
    let at = |t: f64| -> Vec<Mat> {
        let u: Vec<Mat> = a.iter().map(|b| expm_pade(&scale(b, cx(0.0, 2.0 * PI * t)))).collect();
        theta(&u)
    };
    let (p, m) = (at(h), at(-h));
    p.iter().zip(&m).map(|(x, y)| scale(&sub(x, y), cx(0.0, -1.0 / (4.0 * PI * h)))).collect()
}

/// `Λ_θ` for block units, from [`stone_by_difference`].
pub fn lambda_by_difference(theta: &HomFn, source: &[usize]) -> Vec<Vec<f64>> {
    let mut cols = Vec::new();
    for i in 0..source.len() {
        let unit: Vec<Mat> = source
            .iter()
            .enumerate()
            .map(|(j, &n)| if i == j { eye(n) } else { scale(&eye(n), cx(0.0, 0.0)) })
            .collect();
        let s = stone_by_difference(theta, &unit);
        cols.push(s.iter().map(|b| trace(b).re / b.len() as f64).collect::<Vec<f64>>());
    }
    (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// `Δ̃` against the normalized block traces by composite Simpson on `n`
/// panels per unit time, with `ξ'` from a central difference and `ξ⁻¹ = ξ*`.
pub fn predet_by_quadrature(xi: &dyn Fn(f64) -> Vec<Mat>, knots: &[f64], panels: usize) -> Vec<f64> {
    let integrand = |t: f64, lo: f64, hi: f64| -> Vec<f64> {
        let h = 1e-6 * (hi - lo);
        let t0 = t.clamp(lo + h, hi - h);
        let (p, m, x) = (xi(t0 + h), xi(t0 - h), xi(t));
        p.iter()
            .zip(&m)
            .zip(&x)
            .map(|((p, m), x)| {
                let d = scale(&sub(p, m), cx(1.0 / (2.0 * h), 0.0));
                let v = mul(&d, &adjoint(x));
                (trace(&v) / cx(0.0, 2.0 * PI)).re / x.len() as f64
            })
            .collect()
    };
    let mut total: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let n = (panels as f64 * (hi - lo)).ceil().max(2.0) as usize * 2;
        let step = (hi - lo) / n as f64;
        for k in 0..=n {
            let wgt = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            let v = integrand(lo + k as f64 * step, lo, hi);
            if total.is_empty() {
                total = vec![0.0; v.len()];
            }
            for (t, x) in total.iter_mut().zip(v) {
                *t += wgt * step / 3.0 * x;
            }
        }
    }
    total
}
