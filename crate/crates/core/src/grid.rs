//! Frequency grids in rad/s with low/high range tags.
//!
//! The low range ends at 10 Hz and the high range starts at 35 Hz; the band
//! between them is the separation gap that device dynamics must avoid.

use crate::error::{Error, Result};
use crate::scalar::{hz_to_rad, lit, Scalar};

/// Grid point spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// Edge of the low-frequency range: 2π·10 rad/s, inclusive.
pub fn low_edge<T: Scalar>() -> T {
    hz_to_rad(lit::<T>(10.0))
}

/// Edge of the high-frequency range: 2π·35 rad/s, inclusive.
pub fn high_edge<T: Scalar>() -> T {
    hz_to_rad(lit::<T>(35.0))
}

/// Strictly increasing grid of nonnegative angular frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqGrid<T> {
    omega: Vec<T>,
    spacing: Spacing,
}

impl<T: Scalar> FreqGrid<T> {
    /// Builds a grid from `f_min`..`f_max` in Hz.
    pub fn new(f_min_hz: T, f_max_hz: T, n_points: usize, spacing: Spacing) -> Result<Self> {
        if !(f_min_hz > T::zero()) || !(f_max_hz > f_min_hz) {
            return Err(Error::BadRange(format!(
                "need 0 < f_min < f_max, got [{f_min_hz}, {f_max_hz}]"
            )));
        }
        if n_points < 2 {
            return Err(Error::BadRange(format!("need at least 2 points, got {n_points}")));
        }
        let w0 = hz_to_rad(f_min_hz);
        let w1 = hz_to_rad(f_max_hz);
        let nm1 = lit::<T>((n_points - 1) as f64);
        let omega: Vec<T> = (0..n_points)
            .map(|k| {
                let t = lit::<T>(k as f64) / nm1;
                match spacing {
                    Spacing::Log => (w0.ln() + (w1.ln() - w0.ln()) * t).exp(),
                    Spacing::Linear => w0 + (w1 - w0) * t,
                }
            })
            .collect();
        Ok(Self { omega, spacing })
    }

    /// Wraps an explicit list of angular frequencies.
    pub fn from_omegas(omega: Vec<T>, spacing: Spacing) -> Result<Self> {
        if omega.len() < 2 {
            return Err(Error::BadRange("grid needs at least 2 points".into()));
        }
        if omega.iter().any(|w| !w.is_finite() || *w < T::zero()) {
            return Err(Error::BadRange("grid points must be finite and nonnegative".into()));
        }
        if omega.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::BadRange("grid points must be strictly increasing".into()));
        }
        Ok(Self { omega, spacing })
    }

    pub fn omegas(&self) -> &[T] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Ω ≤ 2π·10 rad/s.
    pub fn is_low(omega: T) -> bool {
        omega <= low_edge::<T>()
    }

    /// Ω ≥ 2π·35 rad/s.
    pub fn is_high(omega: T) -> bool {
        omega >= high_edge::<T>()
    }

    /// Default sweep for low-range checks: 0.01–10 Hz, 400 log points.
    pub fn default_low() -> Self {
        Self::new(lit(0.01), lit(10.0), 400, Spacing::Log).expect("static range")
    }

    /// Default sweep for high-range checks: 35 Hz up to `f_max_hz`.
    pub fn default_high(f_max_hz: T) -> Result<Self> {
        Self::new(lit(35.0), f_max_hz, 400, Spacing::Log)
    }

    /// Default wide sweep: 0.01–1000 Hz, 400 log points.
    pub fn default_full() -> Self {
        Self::new(lit(0.01), lit(1000.0), 400, Spacing::Log).expect("static range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_matches_scan_range() {
        let g = FreqGrid::<f64>::new(0.2, 200.0, 400, Spacing::Log).unwrap();
        assert_eq!(g.len(), 400);
        assert!((g.omegas()[0] - 1.2566370614359172).abs() < 1e-12);
        assert!((g.omegas()[399] - 2.0 * std::f64::consts::PI * 200.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_range_rejected() {
        assert!(FreqGrid::<f64>::new(1.0, 1.0, 10, Spacing::Log).is_err());
        assert!(FreqGrid::<f64>::new(-1.0, 5.0, 10, Spacing::Linear).is_err());
        assert!(FreqGrid::<f64>::new(1.0, 5.0, 1, Spacing::Linear).is_err());
    }

    #[test]
    fn ten_hz_boundary_is_low_inclusive() {
        let g = FreqGrid::<f64>::new(0.1, 10.0, 3, Spacing::Linear).unwrap();
        assert!(g.omegas().iter().all(|&w| FreqGrid::is_low(w)));
    }
}
