mod args;
mod render;

use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{Cli, Command, Format, InstanceArgs, Kind, OperatorArgs};
use displacement_core::closed_forms::reproduce;
use displacement_core::matrix::load_vector;
use displacement_core::resolvent::{resolvent_inverse_operator, resolvent_operator, yosida_inverse_operator, yosida_operator};
use displacement_core::verify::{run_suite, SuiteConfig};
use displacement_core::{
    asymptotic_limit, materialize, projector_fix, projector_fix_complement, proximal_point, pseudo_inverse,
    set_valued_inverse, skew_t, DenseMatrix, FiniteOrderIsometry, Limit, PolynomialOperator,
};

const GAMMA_MIN: f64 = 1e-12;
const GAMMA_MAX: f64 = 1e12;

enum Status {
    Success,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Status> {
    let fmt = cli.format;
    match &cli.command {
        Command::Show { instance } => {
            let r = build_instance(instance)?;
            let parts = [
                ("R", materialize(r.as_ref(), r.dim())?),
                ("P_D", materialize(&projector_fix(&r), r.dim())?),
                ("T", materialize(&skew_t(&r), r.dim())?),
                ("M_pinv", materialize(&pseudo_inverse(&r), r.dim())?),
            ];
            let mut obj = serde_json::Map::new();
            obj.insert("kind".into(), json!(r.kind().to_string()));
            obj.insert("m".into(), json!(r.order()));
            obj.insert("dim".into(), json!(r.dim()));
            for (name, a) in &parts {
                obj.insert((*name).into(), serde_json::to_value(a)?);
            }
            let sections = |f: fn(&DenseMatrix) -> String, head: &str| {
                parts.iter().map(|(name, a)| format!("{head}{name}\n{}", f(a))).collect::<Vec<_>>().join("\n")
            };
            emit(fmt, &obj, || sections(render::matrix_csv, "# "), || sections(render::matrix_pretty, ""))?;
            Ok(Status::Success)
        }
        Command::Resolvent { instance, gamma, inverse, op } => {
            let r = build_instance(instance)?;
            let g = *gamma;
            let (name, poly) = match (*inverse, gamma_regime(g)) {
                (false, None) => ("J_{gM}", resolvent_operator(&r, g)?),
                (true, None) => ("J_{gM^-1}", resolvent_inverse_operator(&r, g)?),
                (false, Some(Limit::Zero)) => ("J_{gM}", limit_warning(g, "Id", asymptotic_limit(&r, Limit::Zero))),
                (false, Some(Limit::Infinity)) => ("J_{gM}", limit_warning(g, "P_D", asymptotic_limit(&r, Limit::Infinity))),
                (true, Some(Limit::Zero)) => ("J_{gM^-1}", limit_warning(g, "Id - P_D", projector_fix_complement(&r))),
                (true, Some(Limit::Infinity)) => ("J_{gM^-1}", limit_warning(g, "0", PolynomialOperator::scalar(r.clone(), 0.0))),
            };
            emit_operator(fmt, name, Some(g), &poly, op)?;
            Ok(Status::Success)
        }
        Command::Yosida { instance, gamma, inverse, op } => {
            let g = gamma_in_range(*gamma)?;
            let r = build_instance(instance)?;
            let (name, poly) = if *inverse {
                ("Yosida(M^-1)", yosida_inverse_operator(&r, g)?)
            } else {
                ("Yosida(M)", yosida_operator(&r, g)?)
            };
            emit_operator(fmt, name, Some(g), &poly, op)?;
            Ok(Status::Success)
        }
        Command::Pinv { instance, op } => {
            let r = build_instance(instance)?;
            emit_operator(fmt, "M_pinv", None, &pseudo_inverse(&r), op)?;
            Ok(Status::Success)
        }
        Command::Solve { instance, rhs, range_tol } => {
            let r = build_instance(instance)?;
            let y = read_vector(rhs, "--rhs", r.dim())?;
            let solution = set_valued_inverse(&r, &y, *range_tol).context("--range-tol")?;
            match solution {
                Some(s) => {
                    let value = json!({ "in_range": true, "point": s.point, "basis": s.basis });
                    let basis = || DenseMatrix::from_columns(&s.basis).map(|b| b.transpose());
                    emit(
                        fmt,
                        &value,
                        || {
                            let mut out = format!("# point\n{}", render::vector_csv(&s.point));
                            if let Ok(b) = basis() {
                                out.push_str(&format!("# basis\n{}", render::matrix_csv(&b)));
                            }
                            out
                        },
                        || {
                            let mut out = format!("point\n{}", render::vector_pretty(&s.point));
                            out.push_str(&format!("plus span of {} direction(s)\n", s.basis.len()));
                            for b in &s.basis {
                                out.push_str(&render::vector_pretty(b));
                            }
                            out
                        },
                    )?;
                }
                None => {
                    let value = json!({ "in_range": false, "result": "not in range of M" });
                    emit(fmt, &value, || "not in range of M\n".into(), || "not in range of M\n".into())?;
                }
            }
            Ok(Status::Success)
        }
        Command::Iterate { instance, gamma, x0, max_iter, tol } => {
            let g = gamma_in_range(*gamma)?;
            let r = build_instance(instance)?;
            let x0 = read_vector(x0, "--x0", r.dim())?;
            let t = proximal_point(&r, g, &x0, *max_iter, *tol).context("--max-iter/--tol")?;
            emit(fmt, &t, || t.residuals_csv(), || render::trajectory_pretty(&t))?;
            Ok(Status::Success)
        }
        Command::Verify { instance, gammas, samples } => {
            for g in gammas {
                gamma_in_range(*g)?;
            }
            let r = build_instance(instance)?;
            let cfg = SuiteConfig { gammas: gammas.clone(), samples: *samples, seed: cli.seed };
            let reports = run_suite(&r, &cfg)?;
            let pass = reports.iter().all(|rep| rep.pass);
            let value = json!({
                "kind": r.kind().to_string(),
                "m": r.order(),
                "dim": r.dim(),
                "seed": cli.seed,
                "pass": pass,
                "reports": reports,
            });
            emit(fmt, &value, || render::reports_csv(&reports), || render::reports_pretty(&reports))?;
            Ok(if pass { Status::Success } else { Status::Failed })
        }
        Command::ReproducePaper { gamma } => {
            let g = gamma_in_range(*gamma)?;
            let entries = reproduce(g)?;
            let pass = entries.iter().all(|e| e.pass);
            let value = json!({ "gamma": g, "pass": pass, "entries": entries });
            emit(fmt, &value, || render::reproduction_csv(&entries), || render::reproduction_pretty(&entries))?;
            Ok(if pass { Status::Success } else { Status::Failed })
        }
    }
}

fn build_instance(a: &InstanceArgs) -> Result<Arc<FiniteOrderIsometry>> {
    let reject = |present: bool, flag: &str| -> Result<()> {
        if present {
            bail!("{flag} does not apply to --kind {}", kind_name(a.kind));
        }
        Ok(())
    };
    let r = match a.kind {
        Kind::Rotator => {
            reject(a.block_dim.is_some(), "--block-dim")?;
            reject(a.matrix.is_some(), "--matrix")?;
            FiniteOrderIsometry::rotator(a.m, a.blocks.unwrap_or(1)).context("--m/--blocks")?
        }
        Kind::Shift => {
            reject(a.blocks.is_some(), "--blocks")?;
            reject(a.matrix.is_some(), "--matrix")?;
            FiniteOrderIsometry::circular_shift(a.m, a.block_dim.unwrap_or(1)).context("--m/--block-dim")?
        }
        Kind::Dense => {
            reject(a.blocks.is_some(), "--blocks")?;
            reject(a.block_dim.is_some(), "--block-dim")?;
            let Some(path) = &a.matrix else {
                bail!("--kind dense requires --matrix FILE");
            };
            let matrix = DenseMatrix::load(path).with_context(|| format!("--matrix {}", path.display()))?;
            FiniteOrderIsometry::dense(matrix, a.m, a.validation_tol)
                .with_context(|| format!("--matrix {} with --m {}", path.display(), a.m))?
        }
    };
    Ok(Arc::new(r))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Rotator => "rotator",
        Kind::Shift => "shift",
        Kind::Dense => "dense",
    }
}

fn read_vector(path: &Path, flag: &str, dim: usize) -> Result<Vec<f64>> {
    let v = load_vector(path).with_context(|| format!("{flag} {}", path.display()))?;
    if v.len() != dim {
        bail!("{flag} {}: vector has {} entries, the instance has dimension {dim}", path.display(), v.len());
    }
    Ok(v)
}

fn gamma_regime(g: f64) -> Option<Limit> {
    if g < GAMMA_MIN {
        Some(Limit::Zero)
    } else if g > GAMMA_MAX {
        Some(Limit::Infinity)
    } else {
        None
    }
}

fn gamma_in_range(g: f64) -> Result<f64> {
    if gamma_regime(g).is_some() {
        bail!("--gamma {g} is outside [{GAMMA_MIN:e}, {GAMMA_MAX:e}]");
    }
    Ok(g)
}

fn limit_warning(g: f64, value: &str, poly: PolynomialOperator) -> PolynomialOperator {
    eprintln!("warning: --gamma {g} is outside [{GAMMA_MIN:e}, {GAMMA_MAX:e}]; returning the limit {value}");
    poly
}

fn emit_operator(fmt: Format, name: &str, gamma: Option<f64>, poly: &PolynomialOperator, op: &OperatorArgs) -> Result<()> {
    let mut obj = serde_json::Map::new();
    obj.insert("operator".into(), json!(name));
    if let Some(g) = gamma {
        obj.insert("gamma".into(), json!(g));
    }
    obj.insert("m".into(), json!(poly.order()));
    obj.insert("dim".into(), json!(poly.dim()));
    if let Some(path) = &op.x {
        let x = read_vector(path, "--x", poly.dim())?;
        let y = poly.apply(&x)?;
        obj.insert("x".into(), json!(x));
        obj.insert("result".into(), json!(y));
        emit(fmt, &obj, || render::vector_csv(&y), || render::vector_pretty(&y))
    } else if op.materialize {
        let a = materialize(poly, poly.dim())?;
        obj.insert("matrix".into(), serde_json::to_value(&a)?);
        emit(fmt, &obj, || render::matrix_csv(&a), || format!("{name}\n{}", render::matrix_pretty(&a)))
    } else {
        let c = poly.coefficients();
        obj.insert("coefficients".into(), json!(c));
        emit(fmt, &obj, || render::coefficients_csv(c), || format!("{name} =\n{}", render::coefficients_pretty(c)))
    }
}

fn emit<T: Serialize>(fmt: Format, value: &T, csv: impl FnOnce() -> String, pretty: impl FnOnce() -> String) -> Result<()> {
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => csv(),
        Format::Pretty => pretty(),
    };
    print!("{text}");
    Ok(())
}
