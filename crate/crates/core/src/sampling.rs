//! Seeded random inputs shared by the comparison and estimation routines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use rand::Rng;

use crate::isometry::{FiniteOrderIsometry, DEFAULT_VALIDATION_TOL};
use crate::matrix::DenseMatrix;
use crate::orthogonal::orthonormalize;
use crate::vector::Vector;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_normal_vector(rng: &mut SeededRng, n: usize) -> Vector {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn standard_normal_vectors(seed: u64, count: usize, n: usize) -> Vec<Vector> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| standard_normal_vector(&mut rng, n)).collect()
}

/// Haar-ish random orthogonal matrix: Gram-Schmidt on Gaussian columns.
pub fn random_orthogonal(rng: &mut SeededRng, n: usize) -> DenseMatrix {
    loop {
        let cols: Vec<Vector> = (0..n).map(|_| standard_normal_vector(rng, n)).collect();
        let q = orthonormalize(&cols, 1e-6);
        if q.len() == n {
            return DenseMatrix::from_columns(&q).expect("square");
        }
    }
}

/// `Q B Qᵀ` with `Q` random orthogonal and `B` block diagonal: 2×2
/// rotations by `2πj/m` for random `j` (so some blocks may be fixed), and a
/// trailing `±1` when `n` is odd (`-1` only for even `m`).
pub fn random_dense_isometry(rng: &mut SeededRng, n: usize, m: usize) -> crate::Result<FiniteOrderIsometry> {
    let mut b = DenseMatrix::zeros(n, n);
    for blk in 0..n / 2 {
        let j = rng.random_range(0..m);
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let (c, s) = (theta.cos(), theta.sin());
        let i = 2 * blk;
        b[(i, i)] = c;
        b[(i, i + 1)] = -s;
        b[(i + 1, i)] = s;
        b[(i + 1, i + 1)] = c;
    }
    if n % 2 == 1 {
        b[(n - 1, n - 1)] = if m % 2 == 0 && rng.random_bool(0.5) { -1.0 } else { 1.0 };
    }
    let q = random_orthogonal(rng, n);
    let a = q.matmul(&b)?.matmul(&q.transpose())?;
    FiniteOrderIsometry::dense(a, m, DEFAULT_VALIDATION_TOL)
}
