//! Truncation-point bounds for lag windows that are both more precise than
//! the narrowest dynamic window and able to resolve the closest pair of
//! detected peaks, plus the CI-width comparison curves built from them.
//!
//! For a window with constant `c`:
//!
//! * precision: `nu = c n / M > 6` gives `M < c n / 6`;
//! * resolution: bandwidth `c pi / M <= gap` gives `M >= c pi / gap`.
//!
//! Both hold together exactly when `gap > 6 pi / n`, whatever the window.

use std::f64::consts::PI;

use crate::error::{Result, SpectralError};
use crate::inference::ci_width;
use crate::lag_window::{equivalent_df, WindowKind};
use crate::types::RadianFrequency;

/// Degrees of freedom of the narrowest possible dynamic window (three ordinates).
pub const DYNAMIC_MIN_DF: f64 = 6.0;

/// Smallest radian gap a lag window can resolve while beating the dynamic
/// precision limit: `6 pi / n`.
pub fn static_resolution_limit(n: usize) -> f64 {
    6.0 * PI / n as f64
}

/// Integer truncation points inside the admissible range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationChoices {
    pub min: usize,
    pub median: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub kind: WindowKind,
    pub n: usize,
    pub delta_lambda: RadianFrequency,
    /// Inclusive lower bound `c pi / gap`.
    pub lower_m: f64,
    /// Exclusive upper bound `c n / 6`.
    pub upper_m: f64,
    pub feasible: bool,
    /// `None` when infeasible or when no integer falls inside `[lower_m, upper_m)`.
    pub choices: Option<TruncationChoices>,
}

pub fn truncation_bounds(kind: WindowKind, n: usize, delta_lambda: f64) -> Result<BoundsReport> {
    if n < 2 {
        return Err(SpectralError::TooShort(n));
    }
    if !(delta_lambda > 0.0 && delta_lambda <= PI) {
        return Err(SpectralError::InvalidParameter(format!(
            "frequency gap must lie in (0, pi], got {delta_lambda}"
        )));
    }
    let c = kind.df_constant();
    let lower_m = kind.bandwidth_constant() * PI / delta_lambda;
    let upper_m = c * n as f64 / DYNAMIC_MIN_DF;
    // The two bounds share the window constant, so compare gaps directly
    // rather than two nearly equal products.
    let feasible = delta_lambda > static_resolution_limit(n);
    let choices = if feasible {
        let min = lower_m.ceil().max(1.0) as usize;
        let max = (upper_m.ceil() - 1.0) as usize;
        (min <= max).then(|| TruncationChoices {
            min,
            median: (min + max) / 2,
            max,
        })
    } else {
        None
    };
    Ok(BoundsReport {
        kind,
        n,
        delta_lambda: RadianFrequency::new(delta_lambda)?,
        lower_m,
        upper_m,
        feasible,
        choices,
    })
}

/// Whether two detected radian frequencies are far enough apart for a lag
/// window to resolve them: `|l2 - l1| > 6 pi / n`.
pub fn resolvable_by_static(n: usize, lambda_i: f64, lambda_ip1: f64) -> bool {
    (lambda_ip1 - lambda_i).abs() > static_resolution_limit(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicWidth {
    pub window_width: usize,
    pub ci_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticWidth {
    pub kind: WindowKind,
    pub truncation: usize,
    pub label: &'static str,
    pub df: f64,
    pub ci_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CiComparison {
    pub n: usize,
    pub smooth_level: f64,
    pub alpha: f64,
    pub dynamic: Vec<DynamicWidth>,
    /// Per window kind: widths at the maximum, median and minimum truncation point.
    pub static_widths: Vec<StaticWidth>,
}

/// Largest window width a dynamic smoother can reach: `floor(PoS * n)`.
fn max_dynamic_width(n: usize, smooth_level: f64) -> usize {
    // guard against 0.05 * 5000 = 249.99999...
    (smooth_level * n as f64 + 1e-9).floor() as usize
}

/// CI widths of every odd dynamic window width from 3 up to `PoS * n`, against
/// each lag window at its max/median/min truncation point (gap = pi).
pub fn ci_comparison_curves(n: usize, smooth_level: f64, alpha: f64) -> Result<CiComparison> {
    let upper = max_dynamic_width(n, smooth_level);
    if upper < 3 {
        return Err(SpectralError::InvalidParameter(format!(
            "PoS * n = {} leaves no room for a 3-point window",
            smooth_level * n as f64
        )));
    }
    let dynamic = (3..=upper)
        .step_by(2)
        .map(|w| {
            Ok(DynamicWidth {
                window_width: w,
                ci_width: ci_width(2.0 * w as f64, alpha)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut static_widths = Vec::new();
    for kind in WindowKind::ALL {
        let report = truncation_bounds(kind, n, PI)?;
        let Some(ch) = report.choices else { continue };
        for (label, m) in [("max", ch.max), ("median", ch.median), ("min", ch.min)] {
            let df = equivalent_df(kind, n, m)?;
            static_widths.push(StaticWidth {
                kind,
                truncation: m,
                label,
                df,
                ci_width: ci_width(df, alpha)?,
            });
        }
    }
    Ok(CiComparison {
        n,
        smooth_level,
        alpha,
        dynamic,
        static_widths,
    })
}
