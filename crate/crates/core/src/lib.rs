//! Operator calculus for displacement mappings `M = Id - R` of linear
//! isometries `R` of finite order `m` (`R^m = Id`).
//!
//! Every closed form in this crate (resolvents, Yosida approximations, the
//! fixed-space projector, the skew part `T`, the Moore-Penrose inverse) is a
//! polynomial in `R` and is stored as a [`PolynomialOperator`]: a vector of
//! `m` coefficients over the powers `Id, R, ..., R^{m-1}`. Application costs
//! `m - 1` evaluations of `R`.
//!
//! The [`oracle`] module is an independent dense path (LU and SVD through
//! `nalgebra`) used to cross-check the closed forms.

pub mod closed_forms;
pub mod displacement;
pub mod error;
pub mod isometry;
pub mod iteration;
pub mod matrix;
pub mod oracle;
pub mod orthogonal;
pub mod polynomial;
pub mod resolvent;
pub mod sampling;
pub mod vector;
pub mod verify;

pub use displacement::{
    displacement_apply, projector_fix, projector_fix_complement, pseudo_inverse,
    set_valued_inverse, skew_t, skew_t_half_range, subspace_basis_d, AffineSubspace,
};
pub use error::{Error, Result};
pub use isometry::{FiniteOrderIsometry, IsometryKind, DEFAULT_VALIDATION_TOL};
pub use iteration::{ergodic_mean, lipschitz_estimate, proximal_point, spectral_norm, Trajectory};
pub use matrix::DenseMatrix;
pub use oracle::{
    compare, materialize, oracle_pinv, oracle_projector_fix, oracle_resolvent, ComparisonReport,
    LinearMap,
};
pub use polynomial::PolynomialOperator;
pub use resolvent::{
    asymptotic_limit, resolvent_apply, resolvent_coefficients, resolvent_inverse_apply,
    series_resolvent_apply, yosida_apply, yosida_inverse_apply, Limit, NonexpansiveMap,
    ResolventParam,
};
pub use vector::Vector;
