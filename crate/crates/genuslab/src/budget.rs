//! Search budgets.
//!
//! Every bounded search in the crate reads its limit from here. The
//! environment variable `GENUSLAB_BUDGET` (a positive float, default 1.0)
//! scales all of them at once.

use std::sync::OnceLock;

static SCALE: OnceLock<f64> = OnceLock::new();

/// The global budget multiplier from `GENUSLAB_BUDGET`.
pub fn scale() -> f64 {
    *SCALE.get_or_init(|| {
        std::env::var("GENUSLAB_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|x| x.is_finite() && *x > 0.0)
            .unwrap_or(1.0)
    })
}

/// `base` scaled by the global multiplier, never below 1.
pub fn scaled(base: u64) -> u64 {
    ((base as f64) * scale()).round().max(1.0) as u64
}

/// Trial division limit for integer factoring.
pub fn trial_division_limit() -> u64 {
    1_000_000
}

/// Pollard rho iterations per attempt.
pub fn rho_iterations() -> u64 {
    scaled(200_000)
}

/// Maximal continued fraction period for fundamental units.
pub fn period_bound() -> usize {
    scaled(10_000) as usize
}

/// Degree bound for polynomial factoring.
pub fn degree_bound() -> usize {
    64
}

/// Multiplier `m` in the ideal generator search: elements of norm up to
/// `m * N(I)` are enumerated.
pub fn generator_norm_factor() -> u64 {
    scaled(4)
}

/// Height bound for rational points in reduced norm searches.
pub fn norm_search_height() -> u64 {
    scaled(1_000)
}

/// Number of candidate tuples tried in a generic reduced norm search.
pub fn norm_search_candidates() -> u64 {
    scaled(200_000)
}
