//! Linear isometries `R` with a certified order `m` (`R^m = Id`).

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::vector::{check_dim, Vector};

/// Max-norm tolerance used when validating dense input.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    Rotator,
    CircularShift,
    Dense,
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometryKind::Rotator => "rotator",
            IsometryKind::CircularShift => "circular_shift",
            IsometryKind::Dense => "dense",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Payload {
    /// Block-diagonal rotation by `2π/m` in each of `blocks` planes.
    Rotator { blocks: usize, cos: f64, sin: f64 },
    /// Right shift of `m` blocks, each of dimension `block_dim`.
    CircularShift { block_dim: usize },
    Dense(DenseMatrix),
}

/// A linear isometry of finite order.
///
/// The order `m` is the one supplied to the constructor; it is verified
/// (`R^m = Id`) but never minimized.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteOrderIsometry {
    order: usize,
    dim: usize,
    payload: Payload,
}

fn check_order(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::Parameter(format!("order m must be at least 2, got {m}")));
    }
    Ok(())
}

/// `(cos, sin)` of `2π/m`, exact where the value is representable.
fn rotation_angle(m: usize) -> (f64, f64) {
    match m {
        2 => (-1.0, 0.0),
        4 => (0.0, 1.0),
        _ => {
            let theta = 2.0 * PI / m as f64;
            (theta.cos(), theta.sin())
        }
    }
}

impl FiniteOrderIsometry {
    /// Rotation by `2π/m` in each of `blocks` consecutive coordinate planes.
    pub fn rotator(m: usize, blocks: usize) -> Result<Self> {
        check_order(m)?;
        if blocks == 0 {
            return Err(Error::Parameter("rotator needs at least one block".into()));
        }
        let (cos, sin) = rotation_angle(m);
        Ok(Self { order: m, dim: 2 * blocks, payload: Payload::Rotator { blocks, cos, sin } })
    }

    /// `R(x_1, ..., x_m) = (x_m, x_1, ..., x_{m-1})` with `x_i ∈ R^d`.
    pub fn circular_shift(m: usize, block_dim: usize) -> Result<Self> {
        check_order(m)?;
        if block_dim == 0 {
            return Err(Error::Parameter("circular shift needs block dimension >= 1".into()));
        }
        Ok(Self { order: m, dim: m * block_dim, payload: Payload::CircularShift { block_dim } })
    }

    /// Wraps a square matrix after checking `‖AᵀA - I‖_max ≤ tol` and
    /// `‖A^m - I‖_max ≤ tol`.
    pub fn dense(matrix: DenseMatrix, m: usize, tol: f64) -> Result<Self> {
        check_order(m)?;
        if !matrix.is_square() {
            return Err(Error::Parameter(format!(
                "dense isometry must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() == 0 {
            return Err(Error::Parameter("dense isometry must have dimension >= 1".into()));
        }
        if !(tol > 0.0) {
            return Err(Error::Parameter(format!("validation tolerance must be positive, got {tol}")));
        }
        let n = matrix.rows();
        let eye = DenseMatrix::identity(n);
        let gram_err = matrix.transpose().matmul(&matrix)?.max_abs_diff(&eye)?;
        if gram_err > tol {
            return Err(Error::Validation(format!(
                "not an isometry: ‖AᵀA - I‖_max = {gram_err:e} exceeds {tol:e}"
            )));
        }
        let order_err = matrix.pow(m)?.max_abs_diff(&eye)?;
        if order_err > tol {
            return Err(Error::Validation(format!(
                "order check failed: ‖A^{m} - I‖_max = {order_err:e} exceeds {tol:e}"
            )));
        }
        Ok(Self { order: m, dim: n, payload: Payload::Dense(matrix) })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> IsometryKind {
        match self.payload {
            Payload::Rotator { .. } => IsometryKind::Rotator,
            Payload::CircularShift { .. } => IsometryKind::CircularShift,
            Payload::Dense(_) => IsometryKind::Dense,
        }
    }

    /// Number of 2×2 blocks of a rotator, or the block dimension `d` of a
    /// shift. `None` for dense operators.
    pub fn block_param(&self) -> Option<usize> {
        match self.payload {
            Payload::Rotator { blocks, .. } => Some(blocks),
            Payload::CircularShift { block_dim } => Some(block_dim),
            Payload::Dense(_) => None,
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vector> {
        check_dim(self.dim, x)?;
        Ok(self.apply_unchecked(x))
    }

    /// `R^{k mod m} x`.
    pub fn apply_power(&self, k: usize, x: &[f64]) -> Result<Vector> {
        check_dim(self.dim, x)?;
        Ok(self.power_unchecked(k % self.order, x))
    }

    /// `R* x = R^{m-1} x`.
    pub fn adjoint_apply(&self, x: &[f64]) -> Result<Vector> {
        check_dim(self.dim, x)?;
        Ok(match &self.payload {
            Payload::Rotator { cos, sin, .. } => rotate(x, *cos, -*sin),
            Payload::CircularShift { block_dim } => shift(x, *block_dim, self.order - 1),
            Payload::Dense(_) => self.power_unchecked(self.order - 1, x),
        })
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vector {
        match &self.payload {
            Payload::Rotator { cos, sin, .. } => rotate(x, *cos, *sin),
            Payload::CircularShift { block_dim } => shift(x, *block_dim, 1),
            Payload::Dense(a) => a.matvec(x).expect("dimension checked by caller"),
        }
    }

    fn power_unchecked(&self, k: usize, x: &[f64]) -> Vector {
        if let Payload::CircularShift { block_dim } = self.payload {
            return shift(x, block_dim, k);
        }
        let mut y = x.to_vec();
        for _ in 0..k {
            y = self.apply_unchecked(&y);
        }
        y
    }
}

fn rotate(x: &[f64], cos: f64, sin: f64) -> Vector {
    let mut y = vec![0.0; x.len()];
    for (out, inp) in y.chunks_exact_mut(2).zip(x.chunks_exact(2)) {
        out[0] = cos * inp[0] - sin * inp[1];
        out[1] = sin * inp[0] + cos * inp[1];
    }
    y
}

/// Block `i` of the result is block `i - k (mod m)` of `x`.
fn shift(x: &[f64], block_dim: usize, k: usize) -> Vector {
    let n = x.len();
    let offset = (k * block_dim) % n;
    let mut y = vec![0.0; n];
    y[offset..].copy_from_slice(&x[..n - offset]);
    y[..offset].copy_from_slice(&x[n - offset..]);
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::{dot, max_abs_diff, norm};

    #[test]
    fn rotator_examples() {
        let r2 = FiniteOrderIsometry::rotator(2, 1).unwrap();
        assert_eq!(r2.apply(&[1.0, 0.0]).unwrap(), vec![-1.0, 0.0]);
        let r4 = FiniteOrderIsometry::rotator(4, 1).unwrap();
        assert_eq!(r4.apply(&[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
        assert_eq!(r4.adjoint_apply(&[1.0, 0.0]).unwrap(), vec![0.0, -1.0]);

        // three explicit 2×2 rotations by 2π/3
        let (c, s) = ((2.0 * PI / 3.0).cos(), (2.0 * PI / 3.0).sin());
        let mut v = [0.3, -0.7];
        for _ in 0..3 {
            v = [c * v[0] - s * v[1], s * v[0] + c * v[1]];
        }
        assert!(max_abs_diff(&v, &[0.3, -0.7]) <= 1e-12);
        let r3 = FiniteOrderIsometry::rotator(3, 1).unwrap();
        let cubed = r3.apply(&r3.apply(&r3.apply(&[0.3, -0.7]).unwrap()).unwrap()).unwrap();
        assert!(max_abs_diff(&cubed, &[0.3, -0.7]) <= 1e-12);
        assert_eq!(r3.apply_power(3, &[0.3, -0.7]).unwrap(), vec![0.3, -0.7]);
    }

    #[test]
    fn rotator_blocks_are_independent() {
        let r = FiniteOrderIsometry::rotator(4, 3).unwrap();
        assert_eq!(r.dim(), 6);
        let y = r.apply(&[1.0, 0.0, 0.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(y, vec![0.0, 1.0, -1.0, 0.0, -2.0, 2.0]);
    }

    #[test]
    fn shift_examples() {
        let s = FiniteOrderIsometry::circular_shift(3, 1).unwrap();
        assert_eq!(s.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![3.0, 1.0, 2.0]);
        assert_eq!(s.apply_power(5, &[1.0, 2.0, 3.0]).unwrap(), vec![2.0, 3.0, 1.0]);
        assert_eq!(s.apply_power(2, &[1.0, 2.0, 3.0]).unwrap(), vec![2.0, 3.0, 1.0]);
        assert_eq!(s.adjoint_apply(&[1.0, 2.0, 3.0]).unwrap(), vec![2.0, 3.0, 1.0]);

        let b = FiniteOrderIsometry::circular_shift(2, 2).unwrap();
        assert_eq!(b.apply(&[1.0, 2.0, 3.0, 4.0]).unwrap(), vec![3.0, 4.0, 1.0, 2.0]);

        let s2 = FiniteOrderIsometry::circular_shift(2, 1).unwrap();
        assert_eq!(s2.apply_power(2, &[5.0, 7.0]).unwrap(), vec![5.0, 7.0]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(FiniteOrderIsometry::rotator(1, 1), Err(Error::Parameter(_))));
        assert!(matches!(FiniteOrderIsometry::rotator(3, 0), Err(Error::Parameter(_))));
        assert!(matches!(FiniteOrderIsometry::circular_shift(0, 1), Err(Error::Parameter(_))));
        assert!(matches!(FiniteOrderIsometry::circular_shift(3, 0), Err(Error::Parameter(_))));
        let r = FiniteOrderIsometry::rotator(3, 1).unwrap();
        assert!(matches!(r.apply(&[1.0, 2.0, 3.0]), Err(Error::Parameter(_))));
        assert!(matches!(r.adjoint_apply(&[1.0]), Err(Error::Parameter(_))));
    }

    #[test]
    fn dense_validation() {
        assert!(FiniteOrderIsometry::dense(DenseMatrix::identity(3), 2, 1e-12).is_ok());
        let quarter = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let r = FiniteOrderIsometry::dense(quarter.clone(), 4, 1e-12).unwrap();
        assert_eq!(r.kind(), IsometryKind::Dense);
        assert_eq!(r.adjoint_apply(&[1.0, 0.0]).unwrap(), vec![0.0, -1.0]);

        let stretch = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let err = FiniteOrderIsometry::dense(stretch, 2, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Validation(ref msg) if msg.contains("isometry")));

        // a quarter rotation is an isometry but not of order 2
        let err = FiniteOrderIsometry::dense(quarter, 2, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Validation(ref msg) if msg.contains("A^2")));

        let rect = DenseMatrix::zeros(2, 3);
        assert!(matches!(FiniteOrderIsometry::dense(rect, 2, 1e-12), Err(Error::Parameter(_))));
    }

    #[test]
    fn adjoint_consistency() {
        let x = [0.2, -1.3, 0.7, 2.1, -0.4, 0.9];
        let y = [1.1, 0.5, -0.8, 0.3, 1.7, -2.2];
        for r in [
            FiniteOrderIsometry::rotator(5, 3).unwrap(),
            FiniteOrderIsometry::circular_shift(3, 2).unwrap(),
            FiniteOrderIsometry::circular_shift(6, 1).unwrap(),
        ] {
            let lhs = dot(&r.apply(&x).unwrap(), &y);
            let rhs = dot(&x, &r.adjoint_apply(&y).unwrap());
            assert!((lhs - rhs).abs() <= 1e-12);
            assert!((norm(&r.apply(&x).unwrap()) - norm(&x)).abs() <= 1e-12);
            assert!(max_abs_diff(&r.apply_power(r.order(), &x).unwrap(), &x) <= 1e-12);
        }
    }
}
