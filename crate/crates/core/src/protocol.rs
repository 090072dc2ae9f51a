//! Detect-then-estimate analysis.
//!
//! Step one smooths the KZ periodogram dynamically and keeps its highest
//! local maxima. If the closest detected pair is resolvable by a lag window,
//! step two re-estimates the spectrum with that window at the median
//! admissible truncation point and reads signal strength there, where the
//! confidence interval is narrower. Otherwise the dynamic estimates stand.

use std::f64::consts::PI;

use crate::adaptive::{smooth_with_cis, summary_top, AdaptiveSpec};
use crate::bounds::{resolvable_by_static, truncation_bounds, BoundsReport};
use crate::error::{Result, SpectralError};
use crate::inference::check_alpha;
use crate::kz::{raw_periodogram, ORDINATE_NORMALIZATION};
use crate::lag_window::{static_smoothed_log_periodogram, window_gain, StaticWindowSpec, WindowKind};
use crate::types::{to_radian, RadianFrequency, SmoothedPeriodogram, TimeSeries};

/// Amplitude of a sinusoid whose raw KZ ordinate is `ordinate`:
/// `2 sqrt(ordinate / c)`, with `c` the periodogram normalization.
pub fn estimate_amplitude(ordinate: f64) -> Result<f64> {
    estimate_amplitude_with_gain(ordinate, ORDINATE_NORMALIZATION)
}

/// As [`estimate_amplitude`] for an estimator whose peak response to a
/// unit-power sinusoid is `gain / 4` (lag-window estimates use
/// [`window_gain`]).
pub fn estimate_amplitude_with_gain(ordinate: f64, gain: f64) -> Result<f64> {
    if ordinate.is_nan() || ordinate < 0.0 {
        return Err(SpectralError::NegativeOrdinate(ordinate));
    }
    Ok(2.0 * (ordinate / gain).sqrt())
}

/// Signal strength read off one smoothed estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthEstimate {
    pub frequency: f64,
    pub amplitude: f64,
    /// Log-ordinate interval.
    pub log_ci: (f64, f64),
    /// Interval mapped through the amplitude transform.
    pub amplitude_ci: (f64, f64),
}

/// Strength at grid index `i` of a log-scale smoothed estimate.
pub fn strength_at(sp: &SmoothedPeriodogram, i: usize, gain: f64) -> Result<StrengthEstimate> {
    if !sp.log_scale {
        return Err(SpectralError::InvalidParameter(
            "strength estimates need a log-scale periodogram".into(),
        ));
    }
    let amp = |log_value: f64| estimate_amplitude_with_gain(log_value.exp(), gain);
    Ok(StrengthEstimate {
        frequency: sp.grid.frequencies()[i],
        amplitude: amp(sp.ordinates[i])?,
        log_ci: (sp.ci_lower[i], sp.ci_upper[i]),
        amplitude_ci: (amp(sp.ci_lower[i])?, amp(sp.ci_upper[i])?),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    pub adaptive: AdaptiveSpec,
    pub m: usize,
    pub k: usize,
    pub preferred_kind: WindowKind,
    /// Significance level of the static pass.
    pub alpha: f64,
    /// Number of peaks kept from the dynamic pass.
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectedPeak {
    pub index: usize,
    pub frequency: f64,
    pub ordinate: f64,
    pub ci: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport {
    pub detected: Vec<DetectedPeak>,
    pub min_gap: RadianFrequency,
    /// Truncation bounds for all window kinds at `min_gap`.
    pub bounds: Vec<BoundsReport>,
    /// Window and truncation point of the static pass, when it ran.
    pub chosen: Option<(WindowKind, usize)>,
    pub strengths: Vec<StrengthEstimate>,
    /// Dynamic strengths at the same peaks, always reported for comparison.
    pub dynamic_strengths: Vec<StrengthEstimate>,
    pub fallback_used: bool,
    pub dynamic: SmoothedPeriodogram,
    pub static_estimate: Option<SmoothedPeriodogram>,
}

/// Smallest radian gap between any two detected frequencies; `pi` with fewer than two.
fn min_radian_gap(freqs: &[f64]) -> Result<f64> {
    let mut rad = freqs
        .iter()
        .map(|&f| to_radian(f).map(|r| r.value()))
        .collect::<Result<Vec<_>>>()?;
    rad.sort_by(f64::total_cmp);
    Ok(rad.windows(2).map(|w| w[1] - w[0]).fold(PI, f64::min))
}

pub fn run_two_step(y: &TimeSeries, config: &ProtocolConfig) -> Result<ProtocolReport> {
    check_alpha(config.alpha)?;
    let raw = raw_periodogram(y, config.m, config.k)?;
    let dynamic = smooth_with_cis(&raw, &config.adaptive)?;
    let peaks = summary_top(&dynamic, config.top)?;

    let detected: Vec<DetectedPeak> = peaks
        .iter()
        .map(|p| DetectedPeak {
            index: p.index,
            frequency: p.frequency,
            ordinate: p.ordinate,
            ci: (p.ci_lower, p.ci_upper),
        })
        .collect();
    let freqs: Vec<f64> = detected.iter().map(|d| d.frequency).collect();
    let gap = min_radian_gap(&freqs)?;
    let min_gap = RadianFrequency::new(gap)?;

    let n = y.len();
    let dynamic_strengths = if dynamic.log_scale {
        detected
            .iter()
            .map(|d| strength_at(&dynamic, d.index, ORDINATE_NORMALIZATION))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    // Zero gaps (duplicate frequencies) cannot be bounded; treat as unresolvable.
    let bounds = if gap > 0.0 {
        WindowKind::ALL
            .iter()
            .map(|&kind| truncation_bounds(kind, n, gap))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let resolvable = detected.len() < 2
        || (gap > 0.0 && {
            let mut rad: Vec<f64> = freqs.iter().map(|f| 2.0 * PI * f).collect();
            rad.sort_by(f64::total_cmp);
            rad.windows(2).all(|w| resolvable_by_static(n, w[0], w[1]))
        });
    let choice = bounds
        .iter()
        .find(|b| b.kind == config.preferred_kind)
        .and_then(|b| b.choices)
        .map(|c| c.median)
        .filter(|&m| m < n);

    match (resolvable, choice) {
        (true, Some(m)) => {
            let spec = StaticWindowSpec::new(config.preferred_kind, m)?;
            let est = static_smoothed_log_periodogram(y, spec, raw.grid(), config.alpha)?;
            let gain = window_gain(spec, n);
            let strengths = detected
                .iter()
                .map(|d| strength_at(&est, d.index, gain))
                .collect::<Result<Vec<_>>>()?;
            Ok(ProtocolReport {
                detected,
                min_gap,
                bounds,
                chosen: Some((config.preferred_kind, m)),
                strengths,
                dynamic_strengths,
                fallback_used: false,
                dynamic,
                static_estimate: Some(est),
            })
        }
        _ => Ok(ProtocolReport {
            detected,
            min_gap,
            bounds,
            chosen: None,
            strengths: dynamic_strengths.clone(),
            dynamic_strengths,
            fallback_used: true,
            dynamic,
            static_estimate: None,
        }),
    }
}
