//! Comparison tolerances shared by every solver.
//!
//! Coordinates are plain `f64`. Degenerate contacts (a center exactly at
//! clearance distance, a gap exactly equal to the spacing) are legal, so
//! counting code always errs on the permissive side by `abs()`.

use std::sync::OnceLock;

/// Relative tolerance for root bisection.
pub const REL: f64 = 1e-12;

static ABS: OnceLock<f64> = OnceLock::new();

/// Absolute tolerance, 1e-9 unless overridden by `DISPERSION_EPS`.
pub fn abs() -> f64 {
    *ABS.get_or_init(|| {
        std::env::var("DISPERSION_EPS")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
            .unwrap_or(1e-9)
    })
}

/// Floor that forgives `abs()` of downward noise: `floor_count(2.9999999999) == 3`.
///
/// Used for every "how many steps of length d fit" computation so that a
/// value pinned exactly at an optimum does not lose a center to rounding.
pub fn floor_count(x: f64) -> i64 {
    (x + abs()).floor() as i64
}

/// `a >= b` up to the absolute tolerance.
pub fn ge(a: f64, b: f64) -> bool {
    a >= b - abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_count_forgives_noise() {
        assert_eq!(floor_count(2.999_999_999_9), 3);
        assert_eq!(floor_count(3.0), 3);
        assert_eq!(floor_count(3.000_000_1), 3);
        assert_eq!(floor_count(-0.5), -1);
    }
}
