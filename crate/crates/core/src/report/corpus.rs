//! Fixed golden cases with known `Λ`, verdicts and `G` matrices.

use serde::{Deserialize, Serialize};

use super::types::Checked;
use crate::algebra::AlgebraShape;
use crate::hom::Homomorphism;
use crate::induced::{
    c_linearity_defect, gl_real_matrix, k0_map, lambda_matrix, positivity_report, trace_dual, PositivityVerdict,
};

/// Tolerance for `Λ` entries in the corpus.
pub const CORPUS_LAMBDA_TOL: f64 = 1e-9;
/// Tolerance for `G` entries in the corpus.
pub const CORPUS_G_TOL: f64 = 1e-8;
/// Defect below which `G` counts as ℂ-linear.
pub const CORPUS_C_LINEAR_TOL: f64 = 1e-10;

/// One comparison within a case. Numeric comparisons carry a residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Checked>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub source: AlgebraShape,
    pub hom: String,
    pub checks: Vec<CaseCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub cases: Vec<CaseReport>,
    /// A case with a deliberately wrong expectation; it must fail.
    pub self_test: CaseReport,
    pub self_test_detected: bool,
    pub passed: bool,
}

/// What a golden case asserts.
#[derive(Debug, Clone, PartialEq)]
pub enum Expect {
    Lambda(Vec<Vec<f64>>),
    Positive(bool),
    Unital(bool),
    CircleDegree(Option<i64>),
    K0(Vec<Vec<i64>>),
    Dual(Option<Vec<Vec<f64>>>),
    /// `G` on the real basis.
    GMatrix(Vec<Vec<f64>>),
    CLinear(bool),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCase {
    pub name: &'static str,
    pub source: Vec<usize>,
    pub hom: &'static str,
    pub expect: Vec<Expect>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use Expect::*;
    vec![
        GoldenCase {
            name: "power on the circle",
            source: vec![1],
            hom: "power(-2)",
            expect: vec![Lambda(vec![vec![-2.0]]), Positive(true), Unital(false), CircleDegree(Some(-2)), K0(vec![vec![-2]])],
        },
        GoldenCase {
            name: "product of coordinate maps",
            source: vec![1, 1, 1],
            hom: "mult(power(-1) . proj1, proj2, proj3)",
            expect: vec![Lambda(vec![vec![-1.0, 1.0, 1.0]]), Positive(false), Unital(true), Dual(None)],
        },
        GoldenCase {
            name: "determinant",
            source: vec![2],
            hom: "det",
            expect: vec![Lambda(vec![vec![2.0]]), Positive(true), Unital(false), CircleDegree(Some(2))],
        },
        GoldenCase {
            name: "corner embedding",
            source: vec![2],
            hom: "pad(1)",
            expect: vec![Lambda(vec![vec![2.0 / 3.0]]), Positive(true), Unital(false), K0(vec![vec![1]]), Dual(None)],
        },
        GoldenCase {
            name: "amplification",
            source: vec![1],
            hom: "amplify(2)",
            expect: vec![
                Lambda(vec![vec![1.0]]),
                Positive(true),
                Unital(true),
                CircleDegree(Some(1)),
                K0(vec![vec![2]]),
                Dual(Some(vec![vec![1.0]])),
            ],
        },
        GoldenCase {
            name: "z times its conjugate",
            source: vec![1],
            hom: "join . dsum(id, bar) . amplify_src(2)",
            expect: vec![Lambda(vec![vec![0.0]]), Unital(false), K0(vec![vec![0]])],
        },
        GoldenCase {
            name: "modulus twist",
            source: vec![1],
            hom: "modtwist(0.5, -0.3) . power(1)",
            expect: vec![GMatrix(vec![vec![1.0, -0.5], vec![0.0, 1.3]]), CLinear(false)],
        },
    ]
}

fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return f64::MAX;
    }
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .fold(0.0, f64::max)
}

/// Rows in brackets, entries to six decimals with trailing zeros dropped.
fn show(m: &[Vec<f64>]) -> String {
    let entry = |x: f64| {
        let s = format!("{x:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".to_string() } else { s.to_string() }
    };
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|&x| entry(x)).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn numeric(name: &str, expected: &[Vec<f64>], actual: &[Vec<f64>], tol: f64) -> CaseCheck {
    let residual = Checked::at_most(max_diff(expected, actual), tol);
    CaseCheck {
        name: name.into(),
        expected: show(expected),
        actual: show(actual),
        passed: residual.passed,
        residual: Some(residual),
    }
}

fn exact<T: PartialEq + std::fmt::Debug>(name: &str, expected: T, actual: T) -> CaseCheck {
    CaseCheck {
        name: name.into(),
        passed: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
        residual: None,
    }
}

fn run_checks(hom: &Homomorphism, expect: &[Expect]) -> crate::Result<Vec<CaseCheck>> {
    let mut lambda = None;
    let mut verdict: Option<PositivityVerdict> = None;
    let mut out = Vec::new();
    for e in expect {
        if lambda.is_none() && !matches!(e, Expect::GMatrix(_) | Expect::CLinear(_) | Expect::K0(_)) {
            let l = lambda_matrix(hom)?;
            verdict = Some(positivity_report(&l, hom));
            lambda = Some(l);
        }
        let check = match e {
            Expect::Lambda(want) => numeric("lambda", want, &lambda.as_ref().unwrap().matrix, CORPUS_LAMBDA_TOL),
            Expect::Positive(b) => exact("positive", *b, verdict.as_ref().unwrap().positive),
            Expect::Unital(b) => exact("unital", *b, verdict.as_ref().unwrap().unital),
            Expect::CircleDegree(d) => exact("circle_degree", *d, verdict.as_ref().unwrap().circle_degree),
            Expect::K0(want) => exact("k0", want.clone(), k0_map(hom)?.matrix),
            Expect::Dual(want) => {
                let got = trace_dual(lambda.as_ref().unwrap(), verdict.as_ref().unwrap()).ok();
                match (want, got) {
                    (Some(w), Some(g)) => numeric("dual", w, &g, CORPUS_LAMBDA_TOL),
                    (w, g) => exact("dual", w.is_some(), g.is_some()),
                }
            }
            Expect::GMatrix(want) => numeric("g_matrix", want, &gl_real_matrix(hom)?, CORPUS_G_TOL),
            Expect::CLinear(b) => {
                let d = c_linearity_defect(hom)?;
                let mut c = exact("c_linear", *b, d <= CORPUS_C_LINEAR_TOL);
                c.residual = Some(if *b {
                    Checked::at_most(d, CORPUS_C_LINEAR_TOL)
                } else {
                    Checked::at_least(d, CORPUS_C_LINEAR_TOL)
                });
                c
            }
        };
        out.push(check);
    }
    Ok(out)
}

/// Runs one case. Invalid expressions and analysis errors fail the case.
pub fn run_case(case: &GoldenCase) -> CaseReport {
    let source = AlgebraShape::new(case.source.clone()).expect("golden shapes are valid");
    let result = Homomorphism::parse(case.hom, source.clone()).and_then(|h| run_checks(&h, &case.expect));
    let (checks, error) = match result {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let passed = error.is_none() && checks.iter().all(|c| c.passed);
    CaseReport { name: case.name.into(), source, hom: case.hom.into(), checks, error, passed }
}

/// The corner embedding with `Λ` expected to be `0.7`.
pub fn perturbed_case() -> GoldenCase {
    GoldenCase {
        name: "self-test: perturbed expectation",
        source: vec![2],
        hom: "pad(1)",
        expect: vec![Expect::Lambda(vec![vec![0.7]])],
    }
}

/// All golden cases plus the harness self-test.
pub fn run_corpus() -> CorpusReport {
    let cases: Vec<CaseReport> = golden_cases().iter().map(run_case).collect();
    let self_test = run_case(&perturbed_case());
    let self_test_detected = !self_test.passed;
    let passed = self_test_detected && cases.iter().all(|c| c.passed);
    CorpusReport { cases, self_test, self_test_detected, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let r = run_corpus();
        for c in &r.cases {
            assert!(c.passed, "{c:#?}");
        }
        assert_eq!(r.cases.len(), 7);
        assert!(r.self_test_detected && r.passed);
    }

    #[test]
    fn compact_matrices() {
        assert_eq!(show(&[vec![1.0000000000000002, -0.5], vec![-5.8e-16, 2.0 / 3.0]]), "[[1, -0.5], [0, 0.666667]]");
    }

    #[test]
    fn broken_expressions_fail_the_case() {
        let case = GoldenCase { name: "bad", source: vec![2], hom: "power(2)", expect: vec![] };
        let r = run_case(&case);
        assert!(!r.passed && r.error.is_some());
    }
}
