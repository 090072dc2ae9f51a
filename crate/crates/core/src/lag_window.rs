//! Classical lag-window spectral estimation with constant-width confidence
//! intervals.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SpectralError};
use crate::inference::{check_alpha, ConfidenceSpec};
use crate::types::{FrequencyGrid, RadianFrequency, SmoothedPeriodogram, SmoothingMethod, TimeSeries};

/// Floor applied to nonpositive lag-window estimates before taking logs.
pub const ORDINATE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowKind {
    Rectangular,
    TukeyHamming,
    TukeyHanning,
    Bartlett,
    Parzen,
}

impl WindowKind {
    pub const ALL: [WindowKind; 5] = [
        WindowKind::Rectangular,
        WindowKind::TukeyHamming,
        WindowKind::TukeyHanning,
        WindowKind::Bartlett,
        WindowKind::Parzen,
    ];

    /// `c` in `nu = c * n / M`.
    pub fn df_constant(self) -> f64 {
        match self {
            WindowKind::Rectangular => 1.0,
            WindowKind::TukeyHamming => 2.5,
            WindowKind::TukeyHanning => 2.67,
            WindowKind::Bartlett => 3.0,
            WindowKind::Parzen => 3.7,
        }
    }

    /// `c` in `bandwidth = c * pi / M`.
    pub fn bandwidth_constant(self) -> f64 {
        self.df_constant()
    }

    pub fn name(self) -> &'static str {
        match self {
            WindowKind::Rectangular => "rectangular",
            WindowKind::TukeyHamming => "hamming",
            WindowKind::TukeyHanning => "hanning",
            WindowKind::Bartlett => "bartlett",
            WindowKind::Parzen => "parzen",
        }
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WindowKind {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rectangular" | "rect" => Ok(WindowKind::Rectangular),
            "hamming" | "tukey-hamming" => Ok(WindowKind::TukeyHamming),
            "hanning" | "hann" | "tukey-hanning" => Ok(WindowKind::TukeyHanning),
            "bartlett" => Ok(WindowKind::Bartlett),
            "parzen" => Ok(WindowKind::Parzen),
            other => Err(SpectralError::InvalidParameter(format!(
                "unknown window kind '{other}'"
            ))),
        }
    }
}

/// A lag window with its truncation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticWindowSpec {
    pub kind: WindowKind,
    pub truncation: usize,
}

impl StaticWindowSpec {
    pub fn new(kind: WindowKind, truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return Err(SpectralError::InvalidParameter("truncation point must be >= 1".into()));
        }
        Ok(Self { kind, truncation })
    }

    pub fn df_constant(&self) -> f64 {
        self.kind.df_constant()
    }

    pub fn bandwidth_constant(&self) -> f64 {
        self.kind.bandwidth_constant()
    }

    pub fn weight(&self, lag: usize) -> f64 {
        lag_weight_unchecked(self.kind, lag as f64 / self.truncation as f64)
    }
}

fn lag_weight_unchecked(kind: WindowKind, x: f64) -> f64 {
    let a = x.abs();
    match kind {
        WindowKind::Rectangular => 1.0,
        WindowKind::Bartlett => 1.0 - a,
        WindowKind::TukeyHanning => 0.5 * (1.0 + (PI * x).cos()),
        WindowKind::TukeyHamming => 0.54 + 0.46 * (PI * x).cos(),
        WindowKind::Parzen => {
            if a <= 0.5 {
                1.0 - 6.0 * a * a + 6.0 * a * a * a
            } else {
                2.0 * (1.0 - a).powi(3)
            }
        }
    }
}

/// Continuous lag weighting function `W(x)` on `[-1, 1]`.
pub fn lag_weight(kind: WindowKind, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(SpectralError::LagOutOfRange(x));
    }
    Ok(lag_weight_unchecked(kind, x))
}

fn check_truncation(n: usize, m: usize) -> Result<()> {
    if m < 1 || m >= n {
        return Err(SpectralError::TruncationTooLarge { m, n });
    }
    Ok(())
}

/// Tabulated equivalent degrees of freedom, `c * n / M`.
pub fn equivalent_df(kind: WindowKind, n: usize, m: usize) -> Result<f64> {
    check_truncation(n, m)?;
    Ok(kind.df_constant() * n as f64 / m as f64)
}

/// `2n / (M * integral of W(x)^2 over [-1, 1])` with the integral by quadrature.
pub fn equivalent_df_numeric(kind: WindowKind, n: usize, m: usize) -> Result<f64> {
    check_truncation(n, m)?;
    Ok(2.0 * n as f64 / (m as f64 * squared_weight_integral(kind)))
}

/// `integral of W(x)^2 dx` over `[-1, 1]`. The window is even and the Parzen
/// window has a kink at `|x| = 1/2`, so integrate `[0, 1/2]` and `[1/2, 1]` separately.
pub fn squared_weight_integral(kind: WindowKind) -> f64 {
    let g = |x: f64| lag_weight_unchecked(kind, x).powi(2);
    2.0 * (adaptive_simpson(&g, 0.0, 0.5, 1e-12) + adaptive_simpson(&g, 0.5, 1.0, 1e-12))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let c = 0.5 * (a + b);
    let fc = f(c);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_step(f, a, b, fa, fb, fc, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d);
    let fe = f(e);
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, c, fa, fc, fd, left, tol / 2.0, depth - 1)
        + simpson_step(f, c, b, fc, fb, fe, right, tol / 2.0, depth - 1)
}

/// Bandwidth `c * pi / M` in radians per sample.
pub fn bandwidth(kind: WindowKind, m: usize) -> Result<RadianFrequency> {
    if m < 1 {
        return Err(SpectralError::InvalidParameter("truncation point must be >= 1".into()));
    }
    RadianFrequency::new((kind.bandwidth_constant() * PI / m as f64).min(PI))
}

/// Mean-subtracted sample autocovariances `c(0..=max_lag)` with divisor `n`.
pub fn autocovariances(y: &[f64], max_lag: usize) -> Vec<f64> {
    let n = y.len();
    let mean = y.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = y.iter().map(|v| v - mean).collect();
    (0..=max_lag.min(n - 1))
        .map(|h| {
            centered[..n - h]
                .iter()
                .zip(&centered[h..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

/// Peak gain of the lag-window estimator for a unit-power sinusoid:
/// `sum over |h| <= M of W(h/M) (1 - |h|/n)`.
///
/// A sinusoid of amplitude `a` centered on a grid frequency produces an
/// estimate close to `a^2 / 4` times this gain.
pub fn window_gain(spec: StaticWindowSpec, n: usize) -> f64 {
    let mut gain = 1.0;
    for h in 1..=spec.truncation.min(n - 1) {
        gain += 2.0 * spec.weight(h) * (1.0 - h as f64 / n as f64);
    }
    gain
}

/// Raw-scale lag-window estimates `c(0) + 2 sum W(h/M) c(h) cos(2 pi f h)` on `grid`.
pub fn lag_window_estimate(y: &TimeSeries, spec: StaticWindowSpec, grid: &FrequencyGrid) -> Result<Vec<f64>> {
    let n = y.len();
    check_truncation(n, spec.truncation)?;
    if grid.is_empty() {
        return Err(SpectralError::EmptyGrid);
    }
    let acov = autocovariances(y.values(), spec.truncation);
    let weighted: Vec<f64> = (1..=spec.truncation).map(|h| spec.weight(h) * acov[h]).collect();
    Ok(grid
        .frequencies()
        .iter()
        .map(|&f| {
            let mut s = 0.0;
            for (h, w) in weighted.iter().enumerate() {
                s += w * (2.0 * PI * f * (h + 1) as f64).cos();
            }
            acov[0] + 2.0 * s
        })
        .collect())
}

/// Log lag-window estimate with constant-width confidence bounds.
pub fn static_smoothed_log_periodogram(
    y: &TimeSeries,
    spec: StaticWindowSpec,
    grid: &FrequencyGrid,
    alpha: f64,
) -> Result<SmoothedPeriodogram> {
    check_alpha(alpha)?;
    let raw = lag_window_estimate(y, spec, grid)?;
    let nu = equivalent_df(spec.kind, y.len(), spec.truncation)?;
    let (lo_off, hi_off) = ConfidenceSpec::new(alpha, nu)?.log_offsets();

    let mut floored = Vec::with_capacity(raw.len());
    let ordinates: Vec<f64> = raw
        .iter()
        .map(|&v| {
            let low = v.is_nan() || v <= ORDINATE_FLOOR;
            floored.push(low);
            if low { ORDINATE_FLOOR } else { v }.ln()
        })
        .collect();
    let report_width = (nu / 2.0).ceil().max(1.0) as usize;
    let len = ordinates.len();
    Ok(SmoothedPeriodogram {
        grid: grid.clone(),
        ci_lower: ordinates.iter().map(|o| o + lo_off).collect(),
        ci_upper: ordinates.iter().map(|o| o + hi_off).collect(),
        ordinates,
        log_scale: true,
        half_widths: vec![report_width; len],
        realized_lengths: vec![report_width; len],
        alpha,
        method: SmoothingMethod::Static {
            kind: spec.kind,
            m: spec.truncation,
        },
        floored,
    })
}
