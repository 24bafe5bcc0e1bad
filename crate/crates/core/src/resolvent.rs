//! Resolvents and Yosida approximations of `γM` and `γM⁻¹`.
//!
//! All closed forms are computed in the ratio `q = γ/(1+γ) ∈ (0, 1)`:
//!
//! `J_{γM} = Σ_{k<m} c_k R^k`, `c_k = q^k (1 - q) / (1 - q^m)`,
//!
//! which is algebraically `(1+γ)^{m-1-k} γ^k / ((1+γ)^m - γ^m)` but neither
//! overflows for large `γ·m` nor cancels when `q^m` is close to one.

use std::sync::Arc;

use crate::displacement::projector_fix;
use crate::error::{Error, Result};
use crate::isometry::FiniteOrderIsometry;
use crate::iteration::spectral_norm;
use crate::matrix::DenseMatrix;
use crate::polynomial::PolynomialOperator;
use crate::vector::{axpy, check_dim, Vector};

/// Largest number of series terms [`series_resolvent_apply`] will sum.
pub const MAX_SERIES_TERMS: usize = 10_000_000;

/// A validated step size `γ`: strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ResolventParam(f64);

impl ResolventParam {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(Self(gamma))
        } else {
            Err(Error::Parameter(format!("gamma must be positive and finite, got {gamma}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn reciprocal(self) -> Result<Self> {
        Self::new(1.0 / self.0)
    }

    /// `q = γ/(1+γ)`.
    fn ratio(self) -> f64 {
        self.0 / (1.0 + self.0)
    }

    /// `1 - q = 1/(1+γ)`.
    fn complement_ratio(self) -> f64 {
        1.0 / (1.0 + self.0)
    }

    /// `1 - q^m`, via `ln q = -ln(1 + 1/γ)`.
    fn one_minus_ratio_pow(self, m: usize) -> f64 {
        let ln_q = -(1.0 / self.0).ln_1p();
        -(m as f64 * ln_q).exp_m1()
    }
}

/// Coefficients of `J_{γM}` over `Id, R, ..., R^{m-1}`.
pub fn resolvent_coefficients(m: usize, gamma: f64) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::Parameter(format!("order m must be at least 2, got {m}")));
    }
    let g = ResolventParam::new(gamma)?;
    Ok(coefficients_for(m, g))
}

fn coefficients_for(m: usize, g: ResolventParam) -> Vec<f64> {
    let q = g.ratio();
    let c0 = g.complement_ratio() / g.one_minus_ratio_pow(m);
    let mut out = Vec::with_capacity(m);
    let mut c = c0;
    for _ in 0..m {
        out.push(c);
        c *= q;
    }
    out
}

/// Replaces the `Id` coefficient of `Id - Σ c_k R^k` by `Σ_{k≥1} c_k`,
/// which equals `1 - c_0` without the cancellation.
fn identity_minus(c: &[f64]) -> Vec<f64> {
    let tail: f64 = c[1..].iter().sum();
    std::iter::once(tail).chain(c[1..].iter().map(|v| -v)).collect()
}

/// `J_{γM} = (Id + γM)⁻¹`.
pub fn resolvent_operator(r: &Arc<FiniteOrderIsometry>, gamma: f64) -> Result<PolynomialOperator> {
    PolynomialOperator::new(r.clone(), resolvent_coefficients(r.order(), gamma)?)
}

/// `J_{γM⁻¹} = Id - J_{(1/γ)M}`.
pub fn resolvent_inverse_operator(r: &Arc<FiniteOrderIsometry>, gamma: f64) -> Result<PolynomialOperator> {
    let g = ResolventParam::new(gamma)?.reciprocal()?;
    PolynomialOperator::new(r.clone(), identity_minus(&coefficients_for(r.order(), g)))
}

/// Yosida approximation `(Id - J_{γM}) / γ`.
pub fn yosida_operator(r: &Arc<FiniteOrderIsometry>, gamma: f64) -> Result<PolynomialOperator> {
    let g = ResolventParam::new(gamma)?;
    let m = r.order();
    // c_k / γ = q^{k-1} c_0 / (1+γ) for k ≥ 1
    let q = g.ratio();
    let mut scaled = coefficients_for(m, g);
    let a = scaled[0] / (1.0 + g.get());
    scaled[0] = 0.0;
    let mut w = a;
    for c in scaled.iter_mut().skip(1) {
        *c = w;
        w *= q;
    }
    PolynomialOperator::new(r.clone(), identity_minus(&scaled))
}

/// Yosida approximation of `M⁻¹`: `J_{(1/γ)M} / γ`, with coefficients
/// `(1+γ)^{m-1-k} / ((1+γ)^m - 1)`.
pub fn yosida_inverse_operator(r: &Arc<FiniteOrderIsometry>, gamma: f64) -> Result<PolynomialOperator> {
    let g = ResolventParam::new(gamma)?;
    let c = coefficients_for(r.order(), g.reciprocal()?);
    PolynomialOperator::new(r.clone(), c.iter().map(|v| v / g.get()).collect())
}

pub fn resolvent_apply(r: &Arc<FiniteOrderIsometry>, gamma: f64, x: &[f64]) -> Result<Vector> {
    resolvent_operator(r, gamma)?.apply(x)
}

pub fn resolvent_inverse_apply(r: &Arc<FiniteOrderIsometry>, gamma: f64, x: &[f64]) -> Result<Vector> {
    resolvent_inverse_operator(r, gamma)?.apply(x)
}

pub fn yosida_apply(r: &Arc<FiniteOrderIsometry>, gamma: f64, x: &[f64]) -> Result<Vector> {
    yosida_operator(r, gamma)?.apply(x)
}

pub fn yosida_inverse_apply(r: &Arc<FiniteOrderIsometry>, gamma: f64, x: &[f64]) -> Result<Vector> {
    yosida_inverse_operator(r, gamma)?.apply(x)
}

/// A linear map with `‖S‖ ≤ 1` for the truncated resolvent series.
#[derive(Debug, Clone, Copy)]
pub enum NonexpansiveMap<'a> {
    Isometry(&'a FiniteOrderIsometry),
    /// Checked with a spectral-norm estimate before use.
    Dense(&'a DenseMatrix),
}

impl NonexpansiveMap<'_> {
    fn dim(&self) -> usize {
        match self {
            NonexpansiveMap::Isometry(r) => r.dim(),
            NonexpansiveMap::Dense(a) => a.cols(),
        }
    }

    fn apply(&self, x: &[f64]) -> Vector {
        match self {
            NonexpansiveMap::Isometry(r) => r.apply_unchecked(x),
            NonexpansiveMap::Dense(a) => a.matvec(x).expect("dimension checked"),
        }
    }
}

/// `J_{γ(Id - S)} x ≈ Σ_{k=0}^{K} q^k (1-q) S^k x` with
/// `K = ⌈ln ε / ln q⌉`, so that the dropped tail is at most `ε ‖x‖`.
pub fn series_resolvent_apply(s: NonexpansiveMap<'_>, gamma: f64, x: &[f64], eps: f64) -> Result<Vector> {
    let g = ResolventParam::new(gamma)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    check_dim(s.dim(), x)?;
    if let NonexpansiveMap::Dense(a) = s {
        if !a.is_square() {
            return Err(Error::Parameter("series operator must be square".into()));
        }
        let norm = spectral_norm(a);
        if norm > 1.0 + 1e-8 {
            return Err(Error::Validation(format!("operator norm estimate {norm} exceeds 1")));
        }
    }
    let q = g.ratio();
    let terms = if eps >= 1.0 { 0.0 } else { (eps.ln() / q.ln()).ceil() };
    if !(terms <= MAX_SERIES_TERMS as f64) {
        return Err(Error::Parameter(format!(
            "series needs {terms} terms for gamma {gamma} and eps {eps}; limit is {MAX_SERIES_TERMS}"
        )));
    }
    let mut weight = g.complement_ratio();
    let mut power = x.to_vec();
    let mut acc = vec![0.0; x.len()];
    for k in 0..=terms as usize {
        if k > 0 {
            power = s.apply(&power);
            weight *= q;
        }
        axpy(weight, &power, &mut acc);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    /// `γ → 0⁺`: `J_{γM} → Id`.
    Zero,
    /// `γ → +∞`: `J_{γM} → P_D`.
    Infinity,
}

/// Pointwise limit of `J_{γM}` for `γ → 0⁺` or `γ → +∞`.
pub fn asymptotic_limit(r: &Arc<FiniteOrderIsometry>, which: Limit) -> PolynomialOperator {
    match which {
        Limit::Zero => PolynomialOperator::identity(r.clone()),
        Limit::Infinity => projector_fix(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::displacement::displacement_apply;
    use crate::vector::{max_abs_diff, norm, sub};

    fn rot(m: usize) -> Arc<FiniteOrderIsometry> {
        Arc::new(FiniteOrderIsometry::rotator(m, 1).unwrap())
    }

    fn shift(m: usize) -> Arc<FiniteOrderIsometry> {
        Arc::new(FiniteOrderIsometry::circular_shift(m, 1).unwrap())
    }

    /// Direct evaluation of `(1+γ)^{m-1-k} γ^k / ((1+γ)^m - γ^m)`.
    fn direct_coefficients(m: usize, g: f64) -> Vec<f64> {
        let den = (1.0 + g).powi(m as i32) - g.powi(m as i32);
        (0..m).map(|k| (1.0 + g).powi((m - 1 - k) as i32) * g.powi(k as i32) / den).collect()
    }

    #[test]
    fn coefficient_examples() {
        let c = resolvent_coefficients(2, 1.0).unwrap();
        assert!(max_abs_diff(&c, &[2.0 / 3.0, 1.0 / 3.0]) <= 1e-16);
        let c = resolvent_coefficients(3, 1e-8).unwrap();
        assert!(max_abs_diff(&c, &[1.0, 0.0, 0.0]) <= 1e-7);
        for g in [0.01, 0.5, 3.0, 250.0] {
            let c = resolvent_coefficients(4, g).unwrap();
            assert!(c.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn stable_form_matches_direct_form() {
        for m in 2..=8 {
            for g in [0.01, 0.3, 1.0, 2.0, 17.0, 100.0] {
                let a = resolvent_coefficients(m, g).unwrap();
                let b = direct_coefficients(m, g);
                assert!(max_abs_diff(&a, &b) <= 1e-14, "m={m} gamma={g}");
            }
        }
    }

    #[test]
    fn extreme_gamma_has_no_nan() {
        for g in [1e-300, 5e-324, 1e300] {
            let c = resolvent_coefficients(16, g).unwrap();
            assert!(c.iter().all(|v| v.is_finite() && *v >= 0.0), "gamma={g}: {c:?}");
            assert!((c.iter().sum::<f64>() - 1.0).abs() <= 1e-14, "gamma={g}");
        }
    }

    #[test]
    fn bad_gamma() {
        for g in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(resolvent_coefficients(3, g), Err(Error::Parameter(_))));
            assert!(resolvent_inverse_apply(&rot(3), g, &[1.0, 0.0]).is_err());
            assert!(yosida_apply(&rot(3), g, &[1.0, 0.0]).is_err());
            assert!(yosida_inverse_apply(&rot(3), g, &[1.0, 0.0]).is_err());
        }
        assert!(resolvent_coefficients(1, 1.0).is_err());
    }

    #[test]
    fn resolvent_examples() {
        let y = resolvent_apply(&rot(2), 1.0, &[3.0, 0.0]).unwrap();
        assert!(max_abs_diff(&y, &[1.0, 0.0]) <= 1e-15);
        let y = resolvent_apply(&shift(2), 1.0, &[1.0, 0.0]).unwrap();
        assert!(max_abs_diff(&y, &[2.0 / 3.0, 1.0 / 3.0]) <= 1e-15);
        let y = resolvent_apply(&rot(3), 1.0, &[1.0, 0.0]).unwrap();
        assert!(max_abs_diff(&y, &[5.0 / 14.0, 3f64.sqrt() / 14.0]) <= 1e-15);
    }

    #[test]
    fn resolvent_equation() {
        let r = Arc::new(FiniteOrderIsometry::circular_shift(5, 2).unwrap());
        let x: Vector = (0..10).map(|i| (i as f64 * 0.7).sin()).collect();
        for g in [0.01, 1.0, 100.0] {
            let jx = resolvent_apply(&r, g, &x).unwrap();
            let mut lhs = jx.clone();
            axpy(g, &displacement_apply(&r, &jx).unwrap(), &mut lhs);
            assert!(max_abs_diff(&lhs, &x) <= 1e-10);
        }
    }

    #[test]
    fn inverse_resolvent_examples() {
        let y = resolvent_inverse_apply(&rot(2), 2.0, &[1.0, 0.0]).unwrap();
        assert!(max_abs_diff(&y, &[0.5, 0.0]) <= 1e-15);
        let j = resolvent_inverse_operator(&shift(2), 2.0).unwrap();
        assert!(max_abs_diff(j.coefficients(), &[0.25, -0.25]) <= 1e-15);
        // J_{(1/γ)M} fixes D
        let y = resolvent_inverse_apply(&shift(4), 0.7, &[2.0; 4]).unwrap();
        assert!(norm(&y) <= 1e-15);
    }

    #[test]
    fn yosida_examples() {
        let y = yosida_operator(&rot(2), 1.0).unwrap();
        assert!(max_abs_diff(&y.apply(&[1.0, 0.0]).unwrap(), &[2.0 / 3.0, 0.0]) <= 1e-15);
        assert!(norm(&yosida_apply(&shift(3), 0.4, &[1.5; 3]).unwrap()) <= 1e-15);
        // (1/((2+γ)γ)) [[1+γ, 1], [1, 1+γ]] at γ = 1
        let yi = yosida_inverse_operator(&shift(2), 1.0).unwrap();
        assert!(max_abs_diff(yi.coefficients(), &[2.0 / 3.0, 1.0 / 3.0]) <= 1e-15);
    }

    #[test]
    fn yosida_consistency() {
        let r = rot(7);
        let x = [0.4, -1.2];
        for g in [1e-6, 0.01, 1.0, 100.0, 1e6] {
            let mut lhs = resolvent_apply(&r, g, &x).unwrap();
            axpy(g, &yosida_apply(&r, g, &x).unwrap(), &mut lhs);
            assert!(max_abs_diff(&lhs, &x) <= 1e-12, "gamma={g}");
            let yi = yosida_inverse_operator(&r, g).unwrap();
            let sum: f64 = yi.coefficients().iter().sum();
            assert!((sum * g - 1.0).abs() <= 1e-12, "gamma={g}");
        }
    }

    #[test]
    fn yosida_inverse_direct_form() {
        for m in 2..=6 {
            for g in [0.5, 1.0, 2.0, 9.0] {
                let c = yosida_inverse_operator(&shift(m), g).unwrap();
                let den = (1.0 + g).powi(m as i32) - 1.0;
                let direct: Vec<f64> = (0..m).map(|k| (1.0 + g).powi((m - 1 - k) as i32) / den).collect();
                assert!(max_abs_diff(c.coefficients(), &direct) <= 1e-14);
            }
        }
    }

    #[test]
    fn series_examples() {
        let x = [0.3, -2.0, 1.1];
        let id = DenseMatrix::identity(3);
        let y = series_resolvent_apply(NonexpansiveMap::Dense(&id), 2.5, &x, 1e-13).unwrap();
        assert!(max_abs_diff(&y, &x) <= 1e-12);

        let r4 = rot(4);
        let s = series_resolvent_apply(NonexpansiveMap::Isometry(&r4), 1.0, &[1.0, 2.0], 1e-12).unwrap();
        let c = resolvent_apply(&r4, 1.0, &[1.0, 2.0]).unwrap();
        assert!(max_abs_diff(&s, &c) <= 1e-11);

        let r2 = rot(2);
        let s = series_resolvent_apply(NonexpansiveMap::Isometry(&r2), 3.0, &[7.0, -14.0], 1e-13).unwrap();
        assert!(max_abs_diff(&s, &[1.0, -2.0]) <= 1e-12);
    }

    #[test]
    fn series_rejects_expansive_input() {
        let a = DenseMatrix::identity(2).scaled(1.5);
        let err = series_resolvent_apply(NonexpansiveMap::Dense(&a), 1.0, &[1.0, 0.0], 1e-6).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let r = rot(3);
        assert!(series_resolvent_apply(NonexpansiveMap::Isometry(&r), 1.0, &[1.0, 0.0], 0.0).is_err());
        assert!(series_resolvent_apply(NonexpansiveMap::Isometry(&r), -1.0, &[1.0, 0.0], 1e-3).is_err());
    }

    #[test]
    fn series_on_contraction() {
        // S = diag(0.5, -0.25): J = diag(1/(1+γ/2), 1/(1+5γ/4))
        let s = DenseMatrix::from_rows(&[vec![0.5, 0.0], vec![0.0, -0.25]]).unwrap();
        let g = 2.0;
        let y = series_resolvent_apply(NonexpansiveMap::Dense(&s), g, &[1.0, 1.0], 1e-14).unwrap();
        assert!(max_abs_diff(&y, &[1.0 / (1.0 + g * 0.5), 1.0 / (1.0 + g * 1.25)]) <= 1e-13);
    }

    #[test]
    fn limits() {
        assert_eq!(asymptotic_limit(&rot(3), Limit::Zero).coefficients(), &[1.0, 0.0, 0.0]);
        assert_eq!(asymptotic_limit(&shift(3), Limit::Infinity).coefficients(), &[1.0 / 3.0; 3]);
        let p = asymptotic_limit(&rot(2), Limit::Infinity);
        assert_eq!(p.apply(&[1.0, 5.0]).unwrap(), vec![0.0, 0.0]);

        let r = shift(4);
        let x = [1.0, -3.0, 0.5, 2.0];
        let mut last = f64::INFINITY;
        for e in 1..=8 {
            let g = 10f64.powi(-e);
            let d = norm(&sub(&resolvent_apply(&r, g, &x).unwrap(), &x));
            assert!(d < last);
            last = d;
        }
        let px = projector_fix(&r).apply(&x).unwrap();
        let mut last = f64::INFINITY;
        for e in 1..=8 {
            let g = 10f64.powi(e);
            let d = norm(&sub(&resolvent_apply(&r, g, &x).unwrap(), &px));
            assert!(d < last);
            last = d;
        }
    }
}
