//! Shared workloads for the criterion benchmarks.

use mgk_core::multigamma::log_gn;

/// Evaluation points used across benchmarks.
pub const GRID: [f64; 5] = [0.25, 1.0, 2.5, 5.0, 9.5];

/// `Σ_z log G_n(z+1)` over [`GRID`] with automatic method choice.
pub fn auto_grid(n: usize) -> f64 {
    GRID.iter().map(|&z| log_gn(n, z).map(|r| r.value).unwrap_or(f64::NAN)).sum()
}
