use std::fmt::Write as _;

use displacement_core::closed_forms::ReproductionEntry;
use displacement_core::{ComparisonReport, DenseMatrix, Trajectory};

pub fn matrix_csv(a: &DenseMatrix) -> String {
    let mut buf = Vec::new();
    a.write_csv(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn matrix_pretty(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for row in a.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>12.8}", clean(*v))).collect();
        writeln!(out, "  [{} ]", cells.join(" ")).unwrap();
    }
    out
}

/// Suppresses the sign of negative zero in tables.
fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

pub fn vector_csv(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}\n")).collect()
}

pub fn vector_pretty(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| format!("{:.10}", clean(*x))).collect();
    format!("  ({})\n", cells.join(", "))
}

pub fn coefficients_csv(c: &[f64]) -> String {
    let mut out = String::from("power,coefficient\n");
    for (k, v) in c.iter().enumerate() {
        writeln!(out, "{k},{v:?}").unwrap();
    }
    out
}

pub fn coefficients_pretty(c: &[f64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .map(|(k, v)| match k {
            0 => format!("{v:.12} Id"),
            1 => format!("{v:.12} R"),
            _ => format!("{v:.12} R^{k}"),
        })
        .collect();
    format!("  {}\n", terms.join("\n+ "))
}

pub fn reports_csv(reports: &[ComparisonReport]) -> String {
    let mut out = String::from("name,max_abs_deviation,mean_abs_deviation,samples,tolerance,seed,pass\n");
    for r in reports {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "\"{}\",{:?},{:?},{},{:?},{},{}",
            r.name.replace('"', "\"\""),
            r.max_abs_deviation,
            r.mean_abs_deviation,
            r.samples,
            r.tolerance,
            seed,
            r.pass
        )
        .unwrap();
    }
    out
}

pub fn reports_pretty(reports: &[ComparisonReport]) -> String {
    let width = reports.iter().map(|r| r.name.chars().count()).max().unwrap_or(4);
    let mut out = String::new();
    for r in reports {
        let pad = width - r.name.chars().count();
        writeln!(
            out,
            "{} {}{}  max {:.3e}  tol {:.0e}  n={}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            " ".repeat(pad),
            r.max_abs_deviation,
            r.tolerance,
            r.samples
        )
        .unwrap();
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    writeln!(out, "{} checks, {failed} failed", reports.len()).unwrap();
    out
}

pub fn reproduction_csv(entries: &[ReproductionEntry]) -> String {
    let mut out = String::from("instance,family,gamma,max_abs_deviation,pass\n");
    for e in entries {
        writeln!(out, "{},{},{:?},{:?},{}", e.instance, e.family, e.gamma, e.max_abs_deviation, e.pass).unwrap();
    }
    out
}

pub fn reproduction_pretty(entries: &[ReproductionEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        writeln!(
            out,
            "{} {} {} (γ = {}): max deviation {:.3e}",
            if e.pass { "PASS" } else { "FAIL" },
            e.instance,
            e.family,
            e.gamma,
            e.max_abs_deviation
        )
        .unwrap();
        out.push_str(&matrix_pretty(&e.computed));
    }
    out
}

pub fn trajectory_pretty(t: &Trajectory) -> String {
    let mut out = String::new();
    writeln!(out, "iterations {}  converged {}", t.iterations_used, t.converged).unwrap();
    for (k, r) in t.residuals.iter().enumerate() {
        writeln!(out, "{:>6}  {r:.6e}", k + 1).unwrap();
    }
    out.push_str("limit estimate\n");
    out.push_str(&vector_pretty(&t.limit_estimate));
    out
}
