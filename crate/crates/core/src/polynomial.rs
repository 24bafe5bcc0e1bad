//! Operators of the form `Σ_{k<m} c_k R^k` over a fixed isometry `R`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::vector::{axpy, check_dim, scale, Vector};

/// A polynomial in `R`, reduced modulo `R^m = Id`.
///
/// Polynomials over the same `R` form a commutative algebra: sums add
/// coefficients, products convolve them cyclically.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialOperator {
    isometry: Arc<FiniteOrderIsometry>,
    coefficients: Vec<f64>,
}

/// Wire form of a [`PolynomialOperator`]: `{"m": int, "coefficients": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialCoefficients {
    pub m: usize,
    pub coefficients: Vec<f64>,
}

impl PolynomialCoefficients {
    pub fn bind(self, isometry: Arc<FiniteOrderIsometry>) -> Result<PolynomialOperator> {
        if self.m != isometry.order() {
            return Err(Error::Parameter(format!(
                "polynomial of order {} cannot bind to an isometry of order {}",
                self.m,
                isometry.order()
            )));
        }
        PolynomialOperator::new(isometry, self.coefficients)
    }
}

impl PolynomialOperator {
    pub fn new(isometry: Arc<FiniteOrderIsometry>, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != isometry.order() {
            return Err(Error::Parameter(format!(
                "expected {} coefficients, got {}",
                isometry.order(),
                coefficients.len()
            )));
        }
        Ok(Self { isometry, coefficients })
    }

    /// `c_0 Id` as a polynomial.
    pub fn scalar(isometry: Arc<FiniteOrderIsometry>, c0: f64) -> Self {
        let mut coefficients = vec![0.0; isometry.order()];
        coefficients[0] = c0;
        Self { isometry, coefficients }
    }

    pub fn identity(isometry: Arc<FiniteOrderIsometry>) -> Self {
        Self::scalar(isometry, 1.0)
    }

    /// The monomial `R^k` (with `k` reduced mod `m`).
    pub fn monomial(isometry: Arc<FiniteOrderIsometry>, k: usize) -> Self {
        let m = isometry.order();
        let mut coefficients = vec![0.0; m];
        coefficients[k % m] = 1.0;
        Self { isometry, coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn dim(&self) -> usize {
        self.isometry.dim()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn isometry(&self) -> &Arc<FiniteOrderIsometry> {
        &self.isometry
    }

    pub fn to_wire(&self) -> PolynomialCoefficients {
        PolynomialCoefficients { m: self.order(), coefficients: self.coefficients.clone() }
    }

    /// Horner evaluation: `m - 1` applications of `R`.
    pub fn apply(&self, x: &[f64]) -> Result<Vector> {
        check_dim(self.dim(), x)?;
        let (last, rest) = self.coefficients.split_last().expect("order >= 2");
        let mut acc = scale(*last, x);
        for &c in rest.iter().rev() {
            acc = self.isometry.apply_unchecked(&acc);
            axpy(c, x, &mut acc);
        }
        Ok(acc)
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.isometry, &other.isometry) && self.isometry != other.isometry {
            return Err(Error::Parameter("polynomials are over different isometries".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        Ok(Self { isometry: self.isometry.clone(), coefficients })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect();
        Ok(Self { isometry: self.isometry.clone(), coefficients })
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self { isometry: self.isometry.clone(), coefficients: scale(alpha, &self.coefficients) }
    }

    /// Product `self ∘ other`, coefficients convolved mod `m`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        let m = self.order();
        let mut coefficients = vec![0.0; m];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                coefficients[(i + j) % m] += a * b;
            }
        }
        Ok(Self { isometry: self.isometry.clone(), coefficients })
    }

    /// The adjoint `Σ c_k R^{m-k}`, using `R* = R^{-1}`.
    pub fn adjoint(&self) -> Self {
        let m = self.order();
        let coefficients = (0..m).map(|k| self.coefficients[(m - k) % m]).collect();
        Self { isometry: self.isometry.clone(), coefficients }
    }
}

impl Serialize for PolynomialOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift3() -> Arc<FiniteOrderIsometry> {
        Arc::new(FiniteOrderIsometry::circular_shift(3, 1).unwrap())
    }

    #[test]
    fn evaluation_examples() {
        let r = shift3();
        let x = [1.0, 2.0, 3.0];
        let id = PolynomialOperator::identity(r.clone());
        assert_eq!(id.apply(&x).unwrap(), x.to_vec());
        let p = PolynomialOperator::new(r.clone(), vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(p.apply(&x).unwrap(), vec![3.0, 1.0, 2.0]);
        let avg = PolynomialOperator::new(r, vec![1.0 / 3.0; 3]).unwrap();
        for v in avg.apply(&x).unwrap() {
            assert!((v - 2.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn wrong_coefficient_count() {
        assert!(PolynomialOperator::new(shift3(), vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn over_different_isometries() {
        let a = PolynomialOperator::identity(shift3());
        let b = PolynomialOperator::identity(Arc::new(FiniteOrderIsometry::rotator(3, 1).unwrap()));
        assert!(a.compose(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn composition_wraps_powers() {
        let r = shift3();
        let rr = PolynomialOperator::monomial(r.clone(), 2);
        let p = rr.compose(&rr).unwrap();
        assert_eq!(p.coefficients(), &[0.0, 1.0, 0.0]);
        assert_eq!(PolynomialOperator::monomial(r, 1).adjoint().coefficients(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn wire_format() {
        let p = PolynomialOperator::new(shift3(), vec![0.5, 0.25, 0.25]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"m":3,"coefficients":[0.5,0.25,0.25]}"#);
        let wire: PolynomialCoefficients = serde_json::from_str(&json).unwrap();
        assert_eq!(wire.bind(shift3()).unwrap(), p);
    }
}
