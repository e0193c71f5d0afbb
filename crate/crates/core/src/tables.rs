//! Published vertex bounds for `k = 4..=10` and the check against them.

use serde::{Deserialize, Serialize};

use crate::optimizer::{best_bound, OptimizerConfig};

/// `(k, [(z, bound)])`; `k = 5` has no `z = 2` entry.
pub const PUBLISHED: &[(u32, &[(i32, u64)])] = &[
    (4, &[(-1, 5), (0, 11), (1, 23), (2, 77)]),
    (5, &[(-1, 6), (0, 12), (1, 23)]),
    (6, &[(-1, 7), (0, 14), (1, 25), (2, 115)]),
    (7, &[(-1, 8), (0, 16), (1, 27), (2, 80)]),
    (8, &[(-1, 9), (0, 18), (1, 30), (2, 72)]),
    (9, &[(-1, 10), (0, 20), (1, 33), (2, 70)]),
    (10, &[(-1, 11), (0, 22), (1, 36), (2, 70)]),
];

/// Slack allowed at `z = 2`, where the published optimizer effort is unknown.
pub const Z2_FACTOR: f64 = 1.15;

/// Largest acceptable integer bound for a published cell.
pub fn limit(z: i32, published: u64) -> u64 {
    if z <= 1 {
        published
    } else {
        (Z2_FACTOR * published as f64).ceil() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellCheck {
    pub k: u32,
    pub z: f64,
    pub published: u64,
    pub limit: u64,
    pub bound: Option<u64>,
    pub real_bound: Option<f64>,
    pub method: Option<String>,
    pub error: Option<String>,
    pub pass: bool,
}

pub fn cells(ks: std::ops::RangeInclusive<u32>) -> Vec<(u32, i32, u64)> {
    PUBLISHED
        .iter()
        .filter(|(k, _)| ks.contains(k))
        .flat_map(|(k, row)| row.iter().map(move |&(z, b)| (*k, z, b)))
        .collect()
}

/// Computes the best bound for every published cell with `k` in `ks`.
pub fn verify_tables(ks: std::ops::RangeInclusive<u32>, cfg: &OptimizerConfig) -> Vec<CellCheck> {
    cells(ks)
        .into_iter()
        .map(|(k, z, published)| {
            let lim = limit(z, published);
            match best_bound(k, z as f64, cfg) {
                Ok(c) => CellCheck {
                    k,
                    z: z as f64,
                    published,
                    limit: lim,
                    bound: Some(c.vertex_bound_int),
                    real_bound: Some(c.vertex_bound),
                    method: Some(c.method.to_string()),
                    error: None,
                    pass: c.vertex_bound_int <= lim,
                },
                Err(e) => CellCheck {
                    k,
                    z: z as f64,
                    published,
                    limit: lim,
                    bound: None,
                    real_bound: None,
                    method: None,
                    error: Some(e.to_string()),
                    pass: false,
                },
            }
        })
        .collect()
}
