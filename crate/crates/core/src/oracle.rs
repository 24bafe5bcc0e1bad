//! Dense brute-force path: materialize operators and recompute resolvents,
//! pseudoinverses and fixed-space projectors by generic factorizations.
//!
//! Nothing here touches polynomial coefficients; the closed forms are only
//! ever observed through their action on vectors.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::matrix::DenseMatrix;
use crate::polynomial::PolynomialOperator;
use crate::sampling::standard_normal_vectors;
use crate::vector::{max_abs_diff, unit, Vector};

/// Default relative threshold on singular values, as a fraction of `σ_max`.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Anything that acts linearly on `R^n`.
pub trait LinearMap {
    fn dim(&self) -> usize;
    fn apply_map(&self, x: &[f64]) -> Result<Vector>;
}

impl LinearMap for FiniteOrderIsometry {
    fn dim(&self) -> usize {
        FiniteOrderIsometry::dim(self)
    }

    fn apply_map(&self, x: &[f64]) -> Result<Vector> {
        self.apply(x)
    }
}

impl LinearMap for PolynomialOperator {
    fn dim(&self) -> usize {
        PolynomialOperator::dim(self)
    }

    fn apply_map(&self, x: &[f64]) -> Result<Vector> {
        self.apply(x)
    }
}

impl LinearMap for DenseMatrix {
    fn dim(&self) -> usize {
        self.cols()
    }

    fn apply_map(&self, x: &[f64]) -> Result<Vector> {
        self.matvec(x)
    }
}

impl<T: LinearMap + ?Sized> LinearMap for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply_map(&self, x: &[f64]) -> Result<Vector> {
        (**self).apply_map(x)
    }
}

/// Adapts a closure to [`LinearMap`].
pub struct FnMap<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> Result<Vector>> FnMap<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> Result<Vector>> LinearMap for FnMap<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply_map(&self, x: &[f64]) -> Result<Vector> {
        (self.f)(x)
    }
}

/// Column `j` is `op(e_j)`.
pub fn materialize(op: &dyn LinearMap, dim: usize) -> Result<DenseMatrix> {
    if op.dim() != dim {
        return Err(Error::dim_mismatch(op.dim(), dim));
    }
    let columns = (0..dim).map(|j| op.apply_map(&unit(dim, j))).collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_columns(&columns)
}

fn require_square(a: &DenseMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Parameter(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    Ok(())
}

/// `(I + γ(I - A))⁻¹` by LU with partial pivoting.
pub fn oracle_resolvent(a: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
    require_square(a)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Parameter(format!("gamma must be positive and finite, got {gamma}")));
    }
    let n = a.rows();
    let eye = DMatrix::<f64>::identity(n, n);
    let system = &eye * (1.0 + gamma) - a.to_nalgebra() * gamma;
    let inv = system
        .clone()
        .lu()
        .solve(&eye)
        .ok_or_else(|| Error::Numeric("resolvent system is singular".into()))?;
    let residual = (&system * &inv - &eye).abs().max();
    if residual > 1e-10 {
        return Err(Error::Numeric(format!("resolvent residual {residual:e} exceeds 1e-10")));
    }
    Ok(DenseMatrix::from_nalgebra(&inv))
}

/// Moore-Penrose inverse by SVD, dropping singular values below
/// `rank_tol · σ_max`.
pub fn oracle_pinv(a: &DenseMatrix, rank_tol: f64) -> Result<DenseMatrix> {
    if !(rank_tol >= 0.0) {
        return Err(Error::Parameter(format!("rank tolerance must be non-negative, got {rank_tol}")));
    }
    let svd = a.to_nalgebra().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let pinv = svd
        .pseudo_inverse(rank_tol * sigma_max)
        .map_err(|e| Error::Numeric(e.to_string()))?;
    Ok(DenseMatrix::from_nalgebra(&pinv))
}

/// Orthogonal projector onto `ker(I - A)` from the SVD of `I - A`.
pub fn oracle_projector_fix(a: &DenseMatrix) -> Result<DenseMatrix> {
    require_square(a)?;
    let n = a.rows();
    let norm = a.to_nalgebra().singular_values().max();
    if norm > 1.0 + 1e-8 {
        return Err(Error::Validation(format!("operator norm {norm} exceeds 1")));
    }
    let eye = DMatrix::<f64>::identity(n, n);
    let svd = (&eye - a.to_nalgebra()).svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sigma_max = svd.singular_values.max();
    let threshold = DEFAULT_RANK_TOL * sigma_max.max(1.0);
    let mut p = DMatrix::<f64>::zeros(n, n);
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= threshold {
            let v = v_t.row(i).transpose();
            p += &v * v.transpose();
        }
    }
    Ok(DenseMatrix::from_nalgebra(&p))
}

/// `(1/n) Σ_{k<n} A^k`.
pub fn cesaro_average(a: &DenseMatrix, n: usize) -> Result<DenseMatrix> {
    require_square(a)?;
    if n == 0 {
        return Err(Error::Parameter("Cesàro average needs n >= 1".into()));
    }
    let a = a.to_nalgebra();
    let dim = a.nrows();
    let mut power = DMatrix::<f64>::identity(dim, dim);
    let mut sum = DMatrix::<f64>::zeros(dim, dim);
    for _ in 0..n {
        sum += &power;
        power = &a * &power;
    }
    Ok(DenseMatrix::from_nalgebra(&(sum / n as f64)))
}

/// Outcome of a numerical check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub name: String,
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub pass: bool,
}

impl ComparisonReport {
    /// Summarizes per-sample deviations; `pass` iff the max is within `tolerance`.
    pub fn from_deviations(name: impl Into<String>, deviations: &[f64], tolerance: f64, seed: Option<u64>) -> Self {
        let max = deviations.iter().copied().fold(0.0, f64::max);
        let max = if deviations.iter().any(|d| d.is_nan()) { f64::NAN } else { max };
        let mean = if deviations.is_empty() { 0.0 } else { deviations.iter().sum::<f64>() / deviations.len() as f64 };
        Self {
            name: name.into(),
            max_abs_deviation: max,
            mean_abs_deviation: mean,
            samples: deviations.len(),
            tolerance,
            seed,
            pass: max <= tolerance,
        }
    }

    pub fn scalar(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self::from_deviations(name, &[deviation], tolerance, None)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Applies both maps to `n_samples` seeded standard-normal vectors and to
/// every standard basis vector.
pub fn compare(
    a: &dyn LinearMap,
    b: &dyn LinearMap,
    dim: usize,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ComparisonReport> {
    if a.dim() != dim {
        return Err(Error::dim_mismatch(dim, a.dim()));
    }
    if b.dim() != dim {
        return Err(Error::dim_mismatch(dim, b.dim()));
    }
    if n_samples == 0 {
        return Err(Error::Parameter("compare needs at least one sample".into()));
    }
    let inputs = standard_normal_vectors(seed, n_samples, dim).into_iter().chain((0..dim).map(|j| unit(dim, j)));
    let mut deviations = Vec::with_capacity(n_samples + dim);
    for x in inputs {
        deviations.push(max_abs_diff(&a.apply_map(&x)?, &b.apply_map(&x)?));
    }
    Ok(ComparisonReport::from_deviations("compare", &deviations, tol, Some(seed)))
}
