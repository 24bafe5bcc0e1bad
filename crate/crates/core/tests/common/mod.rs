#![allow(dead_code)]

use std::sync::Arc;

use displacement_core::sampling::{random_dense_isometry, seeded_rng};
use displacement_core::FiniteOrderIsometry;

pub const ORDERS: std::ops::RangeInclusive<usize> = 2..=8;
pub const MAX_DIM: usize = 64;

/// Every kind, `m ∈ 2..=8`, three sizes each with total dimension ≤ 64.
pub fn instance_grid() -> Vec<(String, Arc<FiniteOrderIsometry>)> {
    let mut out = Vec::new();
    let mut rng = seeded_rng(2024);
    for m in ORDERS {
        for blocks in [1, 4, MAX_DIM / 2] {
            out.push((format!("rotator m={m} blocks={blocks}"), FiniteOrderIsometry::rotator(m, blocks).unwrap()));
        }
        for d in [1, 3, MAX_DIM / m] {
            out.push((format!("shift m={m} d={d}"), FiniteOrderIsometry::circular_shift(m, d).unwrap()));
        }
        for n in [m + 1, 17, MAX_DIM] {
            out.push((format!("dense m={m} n={n}"), random_dense_isometry(&mut rng, n, m).unwrap()));
        }
    }
    out.into_iter().map(|(k, r)| (k, Arc::new(r))).collect()
}
