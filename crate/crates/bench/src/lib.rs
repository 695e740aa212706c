//! Fixtures shared by the benchmarks.

use qcube_core::{gen_random_subset, CubeParams, PointSet};

/// A seeded random subset of E_q^n with `m` points.
pub fn fixture(q: u32, n: usize, m: u64) -> PointSet {
    gen_random_subset(CubeParams::new(q, n).expect("valid cube"), m, 0xbe7c).expect("subset fits")
}
