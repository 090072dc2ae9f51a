//! Kolmogorov-Zurbenko periodograms with adaptive smoothing and chi-square
//! confidence intervals, classical lag-window estimates, and the truncation
//! bounds that decide when a lag window gives the tighter interval.
//!
//! Typical flow:
//!
//! ```
//! use kzp_core::{adaptive, kz, simulation};
//!
//! let noise = simulation::NoiseSpec::new(16.0, 7).unwrap();
//! let signal = simulation::SignalSpec::new(0.444, 3.58).unwrap();
//! let y = simulation::generate_series(5000, &[signal], &noise).unwrap();
//! let raw = kz::raw_periodogram(&y, 500, 1).unwrap();
//! let spec = adaptive::AdaptiveSpec::new(adaptive::AdaptiveMethod::Dz, 0.05, 0.05).unwrap();
//! let smoothed = adaptive::smooth_with_cis(&raw, &spec).unwrap();
//! let top = adaptive::summary_top(&smoothed, 1).unwrap();
//! assert!((top[0].frequency - 0.444).abs() <= 0.002);
//! ```

pub mod adaptive;
pub mod bounds;
pub mod error;
pub mod inference;
pub mod kz;
pub mod lag_window;
pub mod protocol;
pub mod rng;
pub mod simulation;
pub mod types;

pub use error::{Result, SpectralError};
pub use types::{
    to_radian, validate_series, FrequencyGrid, RadianFrequency, RawPeriodogram, SmoothedPeriodogram, SmoothingMethod,
    TimeSeries,
};
