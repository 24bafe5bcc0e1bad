//! The displacement mapping `M = Id - R` and its companions: the projectors
//! onto `D = Fix R = ker M` and `D⊥ = ran M`, the skew operator `T`, the
//! Moore-Penrose inverse `M†`, and the set-valued inverse `M⁻¹`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::orthogonal::orthonormalize;
use crate::polynomial::PolynomialOperator;
use crate::vector::{axpy, check_dim, dot, norm, sub, unit, Vector};

/// Relative threshold for `y ∈ ran M`: `‖P_D y‖ ≤ tol · max(‖y‖, 1)`.
pub const DEFAULT_RANGE_TOL: f64 = 1e-9;

/// Columns of `P_D` shorter than this after orthogonalization are dropped.
pub const BASIS_DROP_TOL: f64 = 1e-8;

/// `x - Rx`.
pub fn displacement_apply(r: &FiniteOrderIsometry, x: &[f64]) -> Result<Vector> {
    Ok(sub(x, &r.apply(x)?))
}

/// `M = Id - R` as a polynomial.
pub fn displacement_operator(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let mut c = vec![0.0; r.order()];
    c[0] = 1.0;
    c[1] = -1.0;
    PolynomialOperator::new(r.clone(), c).expect("length matches order")
}

/// `P_D = (1/m) Σ_{k<m} R^k`.
pub fn projector_fix(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let m = r.order();
    PolynomialOperator::new(r.clone(), vec![1.0 / m as f64; m]).expect("length matches order")
}

/// `P_{D⊥} = Id - P_D`.
pub fn projector_fix_complement(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let m = r.order() as f64;
    let c = (0..r.order())
        .map(|k| if k == 0 { (m - 1.0) / m } else { -1.0 / m })
        .collect();
    PolynomialOperator::new(r.clone(), c).expect("length matches order")
}

/// `T = (1/2m) Σ_{k=1}^{m-1} (m - 2k) R^k`.
pub fn skew_t(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let m = r.order();
    let c = (0..m)
        .map(|k| if k == 0 { 0.0 } else { (m as f64 - 2.0 * k as f64) / (2.0 * m as f64) })
        .collect();
    PolynomialOperator::new(r.clone(), c).expect("length matches order")
}

/// `T` assembled from its antisymmetric pairs
/// `(1/2m) Σ_{k=1}^{⌊m/2⌋} (m - 2k)(R^k - R^{m-k})`.
pub fn skew_t_half_range(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let m = r.order();
    let mut c = vec![0.0; m];
    for k in 1..=m / 2 {
        let w = (m as f64 - 2.0 * k as f64) / (2.0 * m as f64);
        c[k] += w;
        c[m - k] -= w;
    }
    PolynomialOperator::new(r.clone(), c).expect("length matches order")
}

/// `M† = Σ_{k<m} (m - 1 - 2k)/(2m) R^k`.
pub fn pseudo_inverse(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let m = r.order() as f64;
    let c = (0..r.order()).map(|k| (m - 1.0 - 2.0 * k as f64) / (2.0 * m)).collect();
    PolynomialOperator::new(r.clone(), c).expect("length matches order")
}

/// `M† = ½ P_{D⊥}(Id + 2T)`, evaluated by polynomial multiplication.
pub fn pseudo_inverse_factored(r: &Arc<FiniteOrderIsometry>) -> PolynomialOperator {
    let id_plus_2t = PolynomialOperator::identity(r.clone())
        .add(&skew_t(r).scaled(2.0))
        .expect("same base");
    projector_fix_complement(r).compose(&id_plus_2t).expect("same base").scaled(0.5)
}

/// Orthonormal basis of `D = range(P_D)`.
pub fn subspace_basis_d(r: &Arc<FiniteOrderIsometry>) -> Vec<Vector> {
    let p = projector_fix(r);
    let n = r.dim();
    let columns: Vec<Vector> = (0..n)
        .map(|j| p.apply(&unit(n, j)).expect("dimension matches"))
        .collect();
    orthonormalize(&columns, BASIS_DROP_TOL)
}

/// The affine subspace `point + span(basis)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub point: Vector,
    /// Orthonormal directions.
    pub basis: Vec<Vector>,
}

impl AffineSubspace {
    pub fn direction_dim(&self) -> usize {
        self.basis.len()
    }

    /// `point + Σ t_i b_i`.
    pub fn member(&self, t: &[f64]) -> Result<Vector> {
        if t.len() != self.basis.len() {
            return Err(Error::dim_mismatch(self.basis.len(), t.len()));
        }
        let mut x = self.point.clone();
        for (ti, b) in t.iter().zip(&self.basis) {
            axpy(*ti, b, &mut x);
        }
        Ok(x)
    }

    /// The element of least norm: `point` with its direction components removed.
    pub fn min_norm_point(&self) -> Vector {
        let mut x = self.point.clone();
        for b in &self.basis {
            let c = dot(b, &x);
            axpy(-c, b, &mut x);
        }
        x
    }

    /// Distance from `x` to the subspace.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.point.len(), x)?;
        let mut d = sub(x, &self.point);
        for b in &self.basis {
            let c = dot(b, &d);
            axpy(-c, b, &mut d);
        }
        Ok(norm(&d))
    }
}

/// `M⁻¹ y = M† y + D` when `y ∈ D⊥`, `None` otherwise.
pub fn set_valued_inverse(
    r: &Arc<FiniteOrderIsometry>,
    y: &[f64],
    tol: f64,
) -> Result<Option<AffineSubspace>> {
    check_dim(r.dim(), y)?;
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("range tolerance must be positive, got {tol}")));
    }
    let fixed_part = projector_fix(r).apply(y)?;
    if norm(&fixed_part) > tol * norm(y).max(1.0) {
        return Ok(None);
    }
    let point = pseudo_inverse(r).apply(y)?;
    Ok(Some(AffineSubspace { point, basis: subspace_basis_d(r) }))
}

/// `½ y + T y`, the single-valued part of `M⁻¹ = ½ Id + T + N_{D⊥}`.
pub fn inverse_selection(r: &Arc<FiniteOrderIsometry>, y: &[f64]) -> Result<Vector> {
    let mut x = skew_t(r).apply(y)?;
    axpy(0.5, y, &mut x);
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonal::orthonormality_defect;
    use crate::vector::max_abs_diff;

    fn rot(m: usize) -> Arc<FiniteOrderIsometry> {
        Arc::new(FiniteOrderIsometry::rotator(m, 1).unwrap())
    }

    fn shift(m: usize, d: usize) -> Arc<FiniteOrderIsometry> {
        Arc::new(FiniteOrderIsometry::circular_shift(m, d).unwrap())
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(displacement_apply(&rot(2), &[1.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        let mx = displacement_apply(&shift(3, 1), &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(mx, vec![-2.0, 1.0, 1.0]);
        assert_eq!(dot(&mx, &[1.0, 1.0, 1.0]), 0.0);
        assert!(displacement_apply(&shift(3, 1), &[1.0]).is_err());
    }

    #[test]
    fn projector_examples() {
        let p = projector_fix(&rot(2));
        assert_eq!(p.apply(&[3.0, -1.0]).unwrap(), vec![0.0, 0.0]);
        let p = projector_fix(&shift(3, 1));
        assert!(max_abs_diff(&p.apply(&[1.0, 2.0, 3.0]).unwrap(), &[2.0; 3]) <= 1e-15);
        assert!(max_abs_diff(&p.apply(&[4.5; 3]).unwrap(), &[4.5; 3]) <= 1e-15);
    }

    #[test]
    fn skew_t_coefficients() {
        assert_eq!(skew_t(&rot(2)).coefficients(), &[0.0, 0.0]);
        assert_eq!(skew_t(&shift(3, 1)).coefficients(), &[0.0, 1.0 / 6.0, -1.0 / 6.0]);
        let t4 = skew_t(&rot(4));
        assert_eq!(t4.apply(&[1.0, 0.0]).unwrap(), vec![0.0, 0.5]);
        assert_eq!(t4.apply(&[0.0, 1.0]).unwrap(), vec![-0.5, 0.0]);
        for m in 2..=9 {
            let a = skew_t(&shift(m, 1));
            let b = skew_t_half_range(&shift(m, 1));
            assert!(max_abs_diff(a.coefficients(), b.coefficients()) <= 1e-15, "m={m}");
        }
    }

    #[test]
    fn pseudo_inverse_coefficients() {
        assert_eq!(pseudo_inverse(&rot(2)).coefficients(), &[0.25, -0.25]);
        let mp = pseudo_inverse(&rot(2));
        assert_eq!(mp.apply(&[1.0, 0.0]).unwrap(), vec![0.5, 0.0]);
        assert_eq!(pseudo_inverse(&rot(4)).coefficients(), &[3.0 / 8.0, 1.0 / 8.0, -1.0 / 8.0, -3.0 / 8.0]);
        let three = pseudo_inverse(&shift(3, 1));
        assert!(max_abs_diff(three.coefficients(), &[1.0 / 3.0, 0.0, -1.0 / 3.0]) <= 1e-16);
        let y = [-2.0, 1.0, 1.0];
        let x = three.apply(&y).unwrap();
        assert!(max_abs_diff(&displacement_apply(&shift(3, 1), &x).unwrap(), &y) <= 1e-15);
        for m in 2..=9 {
            let a = pseudo_inverse(&shift(m, 1));
            let b = pseudo_inverse_factored(&shift(m, 1));
            assert!(max_abs_diff(a.coefficients(), b.coefficients()) <= 1e-15, "m={m}");
        }
    }

    #[test]
    fn basis_examples() {
        assert!(subspace_basis_d(&rot(3)).is_empty());
        let b = subspace_basis_d(&shift(2, 1));
        assert_eq!(b.len(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b[0][0].abs() - s).abs() <= 1e-15 && (b[0][0] - b[0][1]).abs() <= 1e-15);
        let b = subspace_basis_d(&shift(2, 2));
        assert_eq!(b.len(), 2);
        assert!(orthonormality_defect(&b) <= 1e-14);
        for v in &b {
            assert!(max_abs_diff(&v[..2], &v[2..]) <= 1e-15);
        }
    }

    #[test]
    fn set_valued_inverse_examples() {
        let s2 = shift(2, 1);
        let sol = set_valued_inverse(&s2, &[1.0, -1.0], DEFAULT_RANGE_TOL).unwrap().unwrap();
        assert!(max_abs_diff(&sol.point, &[0.5, -0.5]) <= 1e-15);
        assert_eq!(sol.direction_dim(), 1);
        // any member solves Mx = y
        let x = sol.member(&[3.7]).unwrap();
        assert!(max_abs_diff(&displacement_apply(&s2, &x).unwrap(), &[1.0, -1.0]) <= 1e-14);

        assert!(set_valued_inverse(&shift(3, 1), &[1.0, 1.0, 1.0], DEFAULT_RANGE_TOL).unwrap().is_none());

        let sol = set_valued_inverse(&rot(2), &[2.0, 0.0], DEFAULT_RANGE_TOL).unwrap().unwrap();
        assert_eq!(sol.point, vec![1.0, 0.0]);
        assert!(sol.basis.is_empty());

        assert!(set_valued_inverse(&rot(2), &[2.0], DEFAULT_RANGE_TOL).is_err());
        assert!(set_valued_inverse(&rot(2), &[2.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn zero_rhs_is_in_range() {
        let sol = set_valued_inverse(&shift(4, 1), &[0.0; 4], DEFAULT_RANGE_TOL).unwrap().unwrap();
        assert_eq!(sol.point, vec![0.0; 4]);
        assert_eq!(sol.direction_dim(), 1);
    }

    #[test]
    fn selection_differs_from_pinv_by_element_of_d() {
        let r = shift(5, 2);
        let y: Vector = displacement_apply(&r, &[0.3, -1.0, 2.0, 0.1, 0.0, 1.5, -0.7, 0.2, 0.9, -2.0]).unwrap();
        let diff = sub(&pseudo_inverse(&r).apply(&y).unwrap(), &inverse_selection(&r, &y).unwrap());
        let off_d = projector_fix_complement(&r).apply(&diff).unwrap();
        assert!(norm(&off_d) <= 1e-14);
    }

    #[test]
    fn affine_subspace_json() {
        let a = AffineSubspace { point: vec![0.5, -0.5], basis: vec![vec![1.0, 0.0]] };
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"point":[0.5,-0.5],"basis":[[1.0,0.0]]}"#);
        assert_eq!(a.min_norm_point(), vec![0.0, -0.5]);
        assert_eq!(a.distance(&[7.0, -0.5]).unwrap(), 0.0);
    }
}
