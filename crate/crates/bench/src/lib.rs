//! Fixtures shared by the criterion benchmarks.

use k3split::{GPolicy, ScanRange, SurfaceSpec};

/// Triples with very different search bounds: tiny, near the hyperbolic
/// boundary (large bound), and at the top of the supported input range.
pub fn sample_specs() -> Vec<SurfaceSpec> {
    [
        (3, 8, 5),
        (2, 5, 3),
        (30, 199, 330),
        (1_000, 63_245, 1_000_000),
        (1_000_000_000, 999_999_999, 3),
    ]
    .into_iter()
    .map(|(n, d, g)| SurfaceSpec::new(n, d, g).expect("fixture triple is valid"))
    .collect()
}

pub fn small_box() -> ScanRange {
    ScanRange::new(2, 10, 1, 60, GPolicy::HyperbolicOnly).expect("fixture range is valid")
}
