//! Modified Gram-Schmidt with one re-orthogonalization pass.

use crate::vector::{axpy, dot, norm, scale, Vector};

/// Orthonormalizes `vectors` in order, discarding any direction whose
/// residual norm after projection falls below `drop_tol`.
pub fn orthonormalize(vectors: &[Vector], drop_tol: f64) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let len = norm(&w);
        if len >= drop_tol {
            basis.push(scale(1.0 / len, &w));
        }
    }
    basis
}

/// Largest `|⟨b_i, b_j⟩ - δ_ij|` over the given list.
pub fn orthonormality_defect(basis: &[Vector]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot(a, b) - target).abs());
        }
    }
    worst
}
