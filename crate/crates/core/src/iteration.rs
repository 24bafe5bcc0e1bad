//! Proximal-point iteration, ergodic averages and Lipschitz estimates.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::matrix::DenseMatrix;
use crate::oracle::{materialize, LinearMap};
use crate::resolvent::resolvent_operator;
use crate::sampling::{seeded_rng, standard_normal_vector};
use crate::vector::{axpy, check_dim, dot, norm, scale, sub, Vector};

pub const POWER_ITERATION_MAX_STEPS: usize = 10_000;
pub const POWER_ITERATION_TOL: f64 = 1e-12;

/// Iterates `x_0, x_1, ...` with step residuals `‖x_{k+1} - x_k‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub points: Vec<Vector>,
    pub residuals: Vec<f64>,
    pub limit_estimate: Vector,
    pub converged: bool,
    pub iterations_used: usize,
}

impl Trajectory {
    /// `iteration,residual` rows for external plotting.
    pub fn residuals_csv(&self) -> String {
        let mut out = String::from("iteration,residual\n");
        for (k, r) in self.residuals.iter().enumerate() {
            writeln!(out, "{},{r:?}", k + 1).expect("writing to a String");
        }
        out
    }
}

/// `x_{k+1} = J_{γM} x_k` until `‖x_{k+1} - x_k‖ ≤ stop_tol` or `max_iter`
/// steps.
pub fn proximal_point(
    r: &Arc<FiniteOrderIsometry>,
    gamma: f64,
    x0: &[f64],
    max_iter: usize,
    stop_tol: f64,
) -> Result<Trajectory> {
    check_dim(r.dim(), x0)?;
    if max_iter == 0 {
        return Err(Error::Parameter("max_iter must be at least 1".into()));
    }
    if !(stop_tol >= 0.0) {
        return Err(Error::Parameter(format!("stop tolerance must be non-negative, got {stop_tol}")));
    }
    let j = resolvent_operator(r, gamma)?;
    let mut points = vec![x0.to_vec()];
    let mut residuals = Vec::new();
    let mut converged = false;
    while residuals.len() < max_iter {
        let current = points.last().expect("non-empty");
        let next = j.apply(current)?;
        let step = norm(&sub(&next, current));
        points.push(next);
        residuals.push(step);
        if step <= stop_tol {
            converged = true;
            break;
        }
    }
    Ok(Trajectory {
        limit_estimate: points.last().expect("non-empty").clone(),
        iterations_used: residuals.len(),
        points,
        residuals,
        converged,
    })
}

/// `(1/n) Σ_{k<n} R^k x_0`.
pub fn ergodic_mean(r: &FiniteOrderIsometry, x0: &[f64], n: usize) -> Result<Vector> {
    check_dim(r.dim(), x0)?;
    if n == 0 {
        return Err(Error::Parameter("ergodic mean needs n >= 1".into()));
    }
    let mut power = x0.to_vec();
    let mut acc = vec![0.0; x0.len()];
    for k in 0..n {
        if k > 0 {
            power = r.apply_unchecked(&power);
        }
        axpy(1.0, &power, &mut acc);
    }
    Ok(scale(1.0 / n as f64, &acc))
}

/// `‖A‖₂` by power iteration on `AᵀA`.
///
/// Stops when the eigen-residual `‖AᵀA v - λ v‖` drops below
/// [`POWER_ITERATION_TOL`]`·λ`, or after [`POWER_ITERATION_MAX_STEPS`]. The
/// Rayleigh quotient never exceeds the true value, so the result is a lower
/// bound that is exact once the iteration has converged.
pub fn spectral_norm(a: &DenseMatrix) -> f64 {
    let n = a.cols();
    if n == 0 {
        return 0.0;
    }
    let gram = a.transpose().matmul(a).expect("shapes agree");
    let mut v = standard_normal_vector(&mut seeded_rng(0x5eed), n);
    let len = norm(&v);
    v = scale(1.0 / len, &v);
    let mut best: f64 = 0.0;
    for _ in 0..POWER_ITERATION_MAX_STEPS {
        let w = gram.matvec(&v).expect("square");
        let lambda = dot(&v, &w);
        best = best.max(lambda);
        let w_len = norm(&w);
        if w_len == 0.0 {
            break;
        }
        let mut resid = w.clone();
        axpy(-lambda, &v, &mut resid);
        if norm(&resid) <= POWER_ITERATION_TOL * lambda {
            break;
        }
        v = scale(1.0 / w_len, &w);
    }
    best.max(0.0).sqrt()
}

/// Lower bound on the Lipschitz constant of a linear map: the larger of
/// `max ‖Fx - Fy‖ / ‖x - y‖` over seeded random pairs and the power-iteration
/// spectral norm of the materialized matrix.
pub fn lipschitz_estimate(op: &dyn LinearMap, dim: usize, n_pairs: usize, seed: u64) -> Result<f64> {
    if n_pairs == 0 {
        return Err(Error::Parameter("lipschitz_estimate needs at least one pair".into()));
    }
    let matrix = materialize(op, dim)?;
    let mut rng = seeded_rng(seed);
    let mut sampled: f64 = 0.0;
    for _ in 0..n_pairs {
        let x = standard_normal_vector(&mut rng, dim);
        let y = standard_normal_vector(&mut rng, dim);
        let d = norm(&sub(&x, &y));
        if d == 0.0 {
            continue;
        }
        let fd = norm(&sub(&op.apply_map(&x)?, &op.apply_map(&y)?));
        sampled = sampled.max(fd / d);
    }
    Ok(sampled.max(spectral_norm(&matrix)))
}
