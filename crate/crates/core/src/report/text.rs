use std::fmt::Write;

use super::analysis::AnalysisReport;
use super::corpus::{CaseReport, CorpusReport};
use super::properties::PropertiesReport;
use super::types::Checked;
use super::Report;
use crate::induced::StrictOrder;

struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { rows: vec![header.iter().map(|s| s.to_string()).collect()] }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        for r in &self.rows {
            let mut line = String::new();
            for (c, cell) in r.iter().enumerate() {
                if c + 1 == r.len() {
                    line.push_str(cell);
                } else {
                    let pad = widths[c] - cell.chars().count();
                    let _ = write!(line, "{cell}{}  ", " ".repeat(pad));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

fn num(x: f64) -> String {
    if (x - x.round()).abs() < 1e-12 && x.abs() < 1e9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.6}")
    }
}

fn matrix<T: Copy>(out: &mut String, title: &str, m: &[Vec<T>], f: impl Fn(T) -> String) {
    let _ = writeln!(out, "{title}");
    let mut t = Table { rows: Vec::new() };
    for row in m {
        let mut cells = vec![" ".to_string()];
        cells.extend(row.iter().map(|&x| f(x)));
        t.row(cells);
    }
    t.render(out);
}

fn check_row(t: &mut Table, name: &str, c: &Checked) {
    t.row(vec![name.into(), format!("{:.3e}", c.value), format!("{:e}", c.tolerance), mark(c.passed)]);
}

fn mark(ok: bool) -> String {
    if ok { "ok" } else { "FAIL" }.into()
}

fn analysis(out: &mut String, a: &AnalysisReport) {
    let c = &a.config;
    let _ = writeln!(out, "homomorphism  {} : {} -> {}", c.hom, c.source, c.target);
    let _ = writeln!(out, "mode {:?}, seed {}, trials {}, tol {:e}\n", c.mode, c.seed, c.trials, c.tol);

    let mut t = Table::new(&["check", "value", "tol", ""]);
    check_row(&mut t, "hom unit defect", &a.homomorphism.unit_defect);
    check_row(&mut t, "hom multiplicative defect", &a.homomorphism.multiplicative_defect);
    check_row(&mut t, "hom adjoint defect", &a.homomorphism.adjoint_defect);
    let r = &a.results;
    if let Some(s) = r.stone.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "stone consistency", &s.consistency);
        check_row(&mut t, "stone linearity", &s.linearity);
        check_row(&mut t, "stone equivariance", &s.equivariance);
    }
    if let Some(s) = r.lambda.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "lambda audit", &s.audit);
    }
    if let Some(s) = r.dual.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "dual simplex", &s.simplex);
    }
    if let Some(s) = r.pairing.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "pairing residual", s);
    }
    if let Some(s) = r.thomsen.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "determinant naturality", &s.determinant_naturality);
        check_row(&mut t, "class naturality", &s.class_naturality);
    }
    if let Some(s) = r.gl.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "G constancy", &s.constancy);
        check_row(&mut t, "G additivity", &s.additivity);
    }
    if let Some(s) = r.ftau.as_ref().and_then(|o| o.value()) {
        check_row(&mut t, "F(tau) vs tau o S", &s.residual);
    }
    t.render(out);
    out.push('\n');

    let mut t = Table::new(&["analysis", "status", "note"]);
    for (name, status, msg, ok) in r.summary() {
        let status = if ok { status.to_string() } else { format!("{status} (FAIL)") };
        t.row(vec![name.to_string(), status, msg.unwrap_or("").into()]);
    }
    t.render(out);

    if let Some(s) = r.stone.as_ref().and_then(|o| o.value()) {
        let v: Vec<String> = s.unit_image.0.iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "\nTr S(1) = ({})", v.join(", "));
        let _ = writeln!(out, "|S| estimate {:.6}, Lipschitz estimate {:.6}", s.norm_estimate, s.lipschitz_estimate);
    }
    if let Some(s) = r.lambda.as_ref().and_then(|o| o.value()) {
        out.push('\n');
        matrix(out, "Lambda", &s.lambda.matrix, num);
    }
    if let Some(v) = r.verdict.as_ref().and_then(|o| o.value()) {
        let p = &v.verdict;
        let degree = p.circle_degree.map_or("none".to_string(), |d| d.to_string());
        let _ = writeln!(
            out,
            "\nsign {:?}, positive {}, unital {}, contractive {}, circle degree {degree}",
            p.sign, p.positive, p.unital, p.contractive_sup
        );
        let strict = match &v.strict_order {
            StrictOrder::Holds { trials, .. } => format!("holds on {trials} trials"),
            StrictOrder::Violated { trial, coordinate, value } => {
                format!("violated at trial {trial}, coordinate {coordinate}: {value:e}")
            }
            StrictOrder::NotApplicable { reason } => format!("not applicable ({reason})"),
        };
        let _ = writeln!(out, "strict order {strict}");
    }
    if let Some(d) = r.dual.as_ref().and_then(|o| o.value()) {
        out.push('\n');
        matrix(out, "trace dual", &d.matrix, num);
    }
    if let Some(k) = r.k0.as_ref().and_then(|o| o.value()) {
        out.push('\n');
        matrix(out, "K0", &k.matrix, |x: i64| x.to_string());
    }
    if let Some(k) = r.ktu.as_ref().and_then(|o| o.value()) {
        let _ = writeln!(
            out,
            "\nunit class {:?} -> {:?}, target unit {:?}, preserved {}",
            k.report.lambda.source.unit_class(),
            k.report.unit_class_image,
            k.report.target_unit_class,
            k.report.unit_class_preserved
        );
    }
    if let Some(g) = r.gl.as_ref().and_then(|o| o.value()) {
        out.push('\n');
        matrix(out, "G (real basis)", &g.matrix, num);
        let _ = writeln!(out, "C-linearity defect {:.3e} (C-linear: {})", g.c_linearity_defect, g.c_linear);
    }
    if let Some(f) = r.ftau.as_ref().and_then(|o| o.value()) {
        let v: Vec<String> = f.result.functional.0.iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "\nF(tau) = ({})", v.join(", "));
    }
}

fn case_rows(t: &mut Table, c: &CaseReport) {
    if let Some(e) = &c.error {
        t.row(vec![c.name.clone(), "error".into(), String::new(), String::new(), e.clone(), mark(false)]);
    }
    for (i, k) in c.checks.iter().enumerate() {
        let name = if i == 0 { c.name.clone() } else { String::new() };
        let resid = k.residual.map_or(String::new(), |r| format!("{:.1e}", r.value));
        t.row(vec![name, k.name.clone(), k.expected.clone(), k.actual.clone(), resid, mark(k.passed)]);
    }
}

fn corpus(out: &mut String, c: &CorpusReport) {
    let mut t = Table::new(&["case", "check", "expected", "actual", "residual", ""]);
    for case in &c.cases {
        case_rows(&mut t, case);
    }
    t.render(out);
    let _ = writeln!(
        out,
        "\n{} of {} cases pass; self-test {}",
        c.cases.iter().filter(|x| x.passed).count(),
        c.cases.len(),
        if c.self_test_detected { "detected" } else { "NOT detected" }
    );
}

fn properties(out: &mut String, p: &PropertiesReport) {
    let _ = writeln!(out, "seed {}, {} trials per check\n", p.seed, p.trials);
    let mut t = Table::new(&["suite", "property", "trials", "errors", "worst", "bound", ""]);
    for s in &p.suites {
        for (i, c) in s.checks.iter().enumerate() {
            let suite = if i == 0 { s.suite.name().to_string() } else { String::new() };
            let rel = match c.worst.relation {
                super::Relation::AtMost => "<=",
                super::Relation::AtLeast => ">=",
            };
            t.row(vec![
                suite,
                c.name.clone(),
                c.trials.to_string(),
                c.failures.to_string(),
                format!("{:.3e}", c.worst.value),
                format!("{rel} {:e}", c.worst.tolerance),
                mark(c.passed),
            ]);
        }
    }
    t.render(out);
    for c in p.suites.iter().flat_map(|s| &s.checks) {
        if let Some(e) = &c.first_error {
            let _ = writeln!(out, "{}: {e}", c.name);
        }
    }
}

pub(super) fn render(r: &Report) -> String {
    let mut out = String::new();
    if let Some(a) = &r.analysis {
        analysis(&mut out, a);
        out.push('\n');
    }
    if let Some(c) = &r.corpus {
        corpus(&mut out, c);
        out.push('\n');
    }
    if let Some(p) = &r.properties {
        properties(&mut out, p);
        out.push('\n');
    }
    if let Some(t) = r.timing {
        let _ = writeln!(out, "time {:.3} s", t.seconds);
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}
