//! Shared domain types: time series, frequency grids, periodograms.
//!
//! All user-facing frequencies are in cycles per sample on `[0, 0.5]`.
//! Radian frequencies only show up in the truncation-bound calculations.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Result, SpectralError};
use crate::lag_window::WindowKind;

/// Uniformly sampled, finite, real-valued observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    sample_interval: f64,
}

impl TimeSeries {
    /// Validate raw observations. Missing values are rejected, never imputed.
    pub fn new(values: Vec<f64>, sample_interval: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(SpectralError::TooShort(values.len()));
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(SpectralError::NonFinite(idx));
        }
        if !(sample_interval.is_finite() && sample_interval > 0.0) {
            return Err(SpectralError::BadSampleInterval(sample_interval));
        }
        Ok(Self {
            values,
            sample_interval,
        })
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_interval(&self) -> f64 {
        self.sample_interval
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Free-function form of [`TimeSeries::new`].
pub fn validate_series(values: &[f64], sample_interval: f64) -> Result<TimeSeries> {
    TimeSeries::new(values.to_vec(), sample_interval)
}

/// Ascending, uniformly spaced frequencies starting at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    frequencies: Vec<f64>,
    spacing: f64,
}

impl FrequencyGrid {
    /// The grid `{j / m : j = 0..=m/2}` used by a KZ periodogram of window width `m`.
    pub fn kz(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(SpectralError::InvalidParameter(format!(
                "grid window width must be >= 2, got {m}"
            )));
        }
        let frequencies = (0..=m / 2).map(|j| j as f64 / m as f64).collect();
        Ok(Self {
            frequencies,
            spacing: 1.0 / m as f64,
        })
    }

    /// Build from explicit frequencies, checking the grid invariants.
    pub fn from_frequencies(frequencies: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(SpectralError::EmptyGrid);
        }
        if frequencies[0] != 0.0 {
            return Err(SpectralError::InvalidParameter("frequency grid must start at 0".into()));
        }
        if let Some(&f) = frequencies.iter().find(|f| !(0.0..=0.5).contains(*f)) {
            return Err(SpectralError::FrequencyOutOfRange(f));
        }
        if frequencies.len() == 1 {
            return Ok(Self {
                frequencies,
                spacing: 0.5,
            });
        }
        let spacing = frequencies[1] - frequencies[0];
        if spacing <= 0.0 {
            return Err(SpectralError::InvalidParameter(
                "frequency grid must be strictly ascending".into(),
            ));
        }
        for w in frequencies.windows(2) {
            if ((w[1] - w[0]) - spacing).abs() > 1e-12 {
                return Err(SpectralError::InvalidParameter(
                    "frequency grid spacing is not uniform".into(),
                ));
            }
        }
        Ok(Self { frequencies, spacing })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Index of the grid point nearest to `f`.
    pub fn nearest_index(&self, f: f64) -> usize {
        let raw = (f / self.spacing).round();
        (raw.max(0.0) as usize).min(self.frequencies.len() - 1)
    }
}

/// Raw KZ periodogram ordinates on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RawPeriodogram {
    pub(crate) grid: FrequencyGrid,
    pub(crate) ordinates: Vec<f64>,
    pub(crate) m: usize,
    pub(crate) k: usize,
}

impl RawPeriodogram {
    /// Wrap externally computed ordinates. Used when the periodogram comes from a file.
    pub fn new(grid: FrequencyGrid, ordinates: Vec<f64>, m: usize, k: usize) -> Result<Self> {
        if grid.len() != ordinates.len() {
            return Err(SpectralError::InvalidParameter(format!(
                "{} ordinates for a grid of {} frequencies",
                ordinates.len(),
                grid.len()
            )));
        }
        if let Some(&o) = ordinates.iter().find(|o| !(o.is_finite() && **o >= 0.0)) {
            return Err(SpectralError::NegativeOrdinate(o));
        }
        Ok(Self { grid, ordinates, m, k })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// KZFT window width.
    pub fn m(&self) -> usize {
        self.m
    }

    /// KZFT iteration count.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

/// Which smoother produced a [`SmoothedPeriodogram`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothingMethod {
    /// DiRienzo-Zurbenko: local variance criterion.
    Dz,
    /// Neagu-Zurbenko: local departure-from-linearity criterion.
    Nz,
    /// Fixed lag window with truncation point `m`.
    Static { kind: WindowKind, m: usize },
}

impl fmt::Display for SmoothingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothingMethod::Dz => write!(f, "DZ"),
            SmoothingMethod::Nz => write!(f, "NZ"),
            SmoothingMethod::Static { kind, m } => write!(f, "STATIC({kind}, {m})"),
        }
    }
}

/// Smoothed (log-)periodogram with per-frequency confidence bounds.
///
/// `half_widths[i]` is the half-width `h` of the realized window
/// `[i - h + 1, i + h - 1]` before clamping at the grid ends, and
/// `realized_lengths[i]` the number of ordinates actually averaged.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedPeriodogram {
    pub grid: FrequencyGrid,
    pub ordinates: Vec<f64>,
    pub log_scale: bool,
    pub half_widths: Vec<usize>,
    pub realized_lengths: Vec<usize>,
    pub ci_lower: Vec<f64>,
    pub ci_upper: Vec<f64>,
    pub alpha: f64,
    pub method: SmoothingMethod,
    /// Frequencies whose input ordinate had to be floored before taking a log.
    pub floored: Vec<bool>,
}

impl SmoothedPeriodogram {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn ci_width(&self, i: usize) -> f64 {
        self.ci_upper[i] - self.ci_lower[i]
    }

    pub fn floored_count(&self) -> usize {
        self.floored.iter().filter(|&&f| f).count()
    }

    /// Check the structural invariants. Returns the first violation found.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.ordinates.len();
        let lens = [
            self.grid.len(),
            self.half_widths.len(),
            self.realized_lengths.len(),
            self.ci_lower.len(),
            self.ci_upper.len(),
            self.floored.len(),
        ];
        if lens.iter().any(|&l| l != n) {
            return Err(SpectralError::InvalidParameter(
                "smoothed periodogram sequences differ in length".into(),
            ));
        }
        for i in 0..n {
            if !(self.ci_lower[i] <= self.ordinates[i] && self.ordinates[i] <= self.ci_upper[i]) {
                return Err(SpectralError::InvalidParameter(format!(
                    "confidence bounds do not bracket the ordinate at index {i}"
                )));
            }
            if self.half_widths[i] < 1 || self.realized_lengths[i] > 2 * self.half_widths[i] - 1 {
                return Err(SpectralError::InvalidParameter(format!(
                    "window bookkeeping inconsistent at index {i}"
                )));
            }
        }
        Ok(())
    }
}

/// Angular frequency in radians per sample, on `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RadianFrequency(f64);

impl RadianFrequency {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&value) {
            return Err(SpectralError::InvalidParameter(format!(
                "radian frequency {value} outside [0, pi]"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Convert cycles per sample to radians per sample.
pub fn to_radian(f: f64) -> Result<RadianFrequency> {
    if !(0.0..=0.5).contains(&f) {
        return Err(SpectralError::FrequencyOutOfRange(f));
    }
    Ok(RadianFrequency((2.0 * PI * f).min(PI)))
}
