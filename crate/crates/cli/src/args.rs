use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "displacement-kit", version, about = "Closed-form resolvents, inverses and projectors for Id - R, R a finite-order isometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. JSON is the stable machine interface.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for every random sample drawn by the command.
    #[arg(long, env = "DISPLACEMENT_KIT_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Block-diagonal rotation by 2π/m on `--blocks` planes.
    Rotator,
    /// Cyclic shift of m blocks of size `--block-dim`.
    Shift,
    /// Orthogonal matrix read from `--matrix` (JSON rows or CSV).
    Dense,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,

    /// Order of the isometry (R^m = Id).
    #[arg(long)]
    pub m: usize,

    /// Number of 2x2 rotation blocks (rotator only, default 1).
    #[arg(long)]
    pub blocks: Option<usize>,

    /// Size of each shifted block (shift only, default 1).
    #[arg(long)]
    pub block_dim: Option<usize>,

    /// Matrix file (dense only).
    #[arg(long)]
    pub matrix: Option<PathBuf>,

    /// Entrywise tolerance for the isometry and order checks on `--matrix`.
    #[arg(long, default_value_t = displacement_core::DEFAULT_VALIDATION_TOL)]
    pub validation_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    /// Print the full matrix instead of the coefficients over Id, R, ..., R^{m-1}.
    #[arg(long, conflicts_with = "x")]
    pub materialize: bool,

    /// Apply the operator to the vector in this file.
    #[arg(long)]
    pub x: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Materialize R, P_D, T and the pseudoinverse of M.
    Show {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Resolvent J_{γM}, or J_{γM⁻¹} with --inverse.
    Resolvent {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Step size: a positive decimal or a fraction p/q.
        #[arg(long, value_parser = parse_gamma)]
        gamma: f64,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Yosida approximation of M, or of M⁻¹ with --inverse.
    Yosida {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_parser = parse_gamma)]
        gamma: f64,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Moore-Penrose inverse of M.
    Pinv {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Solve M x = y: the affine solution set, or "not in range of M".
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Right-hand side y.
        #[arg(long)]
        rhs: PathBuf,
        /// Relative residual allowed for the component of y in Fix R.
        #[arg(long, default_value_t = 1e-9)]
        range_tol: f64,
    },
    /// Proximal-point iteration x_{k+1} = J_{γM} x_k.
    Iterate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_parser = parse_gamma)]
        gamma: f64,
        #[arg(long)]
        x0: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run every invariant against the dense oracle; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Step sizes to check (repeatable).
        #[arg(long = "gamma", value_parser = parse_gamma, default_values_t = [0.01, 1.0, 100.0])]
        gammas: Vec<f64>,
        /// Random vectors per sampled check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Materialize every operator family on the worked examples and diff
    /// against their written-out matrices; exit 1 on any mismatch.
    ReproducePaper {
        #[arg(long, value_parser = parse_gamma, default_value = "1")]
        gamma: f64,
    },
}

/// Accepts `1.5`, `1e-3` or `1/2`.
pub fn parse_gamma(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|_| format!("{s:?} is not a number or fraction"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("gamma must be positive and finite, got {s:?}"))
    }
}
