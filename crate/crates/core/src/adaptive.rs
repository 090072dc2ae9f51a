//! Dynamic (frequency-adaptive) smoothing of the log-periodogram.
//!
//! For every frequency `i` the smoothing half-width `m[i]` is the number of
//! candidate half-widths `j` whose local window `[i - j + 1, i + j - 1]` holds
//! no more than `smooth_level` of the total variation of the whole sequence.
//! Two variation measures are supported:
//!
//! * DZ (DiRienzo-Zurbenko): sum of squared deviations from the window mean.
//! * NZ (Neagu-Zurbenko): residual sum of squares of a least-squares line.
//!
//! Windows shrink around peaks and grow over flat stretches, so the
//! confidence interval, which has `2 * M[i]` degrees of freedom for a window
//! of `M[i]` ordinates, is widest where a signal is present.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SpectralError};
use crate::inference::{check_alpha, ConfidenceSpec};
use crate::types::{RawPeriodogram, SmoothedPeriodogram, SmoothingMethod};

/// Raw ordinates at or below this value are floored before taking logs.
pub const LOG_FLOOR: f64 = 1e-300;

/// Relative size below which a window variation is treated as exactly zero.
const ZERO_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdaptiveMethod {
    Dz,
    Nz,
}

impl fmt::Display for AdaptiveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdaptiveMethod::Dz => "dz",
            AdaptiveMethod::Nz => "nz",
        })
    }
}

impl FromStr for AdaptiveMethod {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dz" => Ok(AdaptiveMethod::Dz),
            "nz" => Ok(AdaptiveMethod::Nz),
            other => Err(SpectralError::InvalidParameter(format!(
                "unknown smoothing method '{other}'"
            ))),
        }
    }
}

/// How a selected half-width `m` turns into the averaging window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WindowRule {
    /// `[i - m + 1, i + m - 1]` clamped to the grid. A half-width of 1 averages
    /// the single ordinate at `i` (two degrees of freedom).
    #[default]
    Clamped,
    /// As `Clamped`, but never narrower than the symmetric three-point window
    /// `[i - 1, i + 1]`; only the grid ends can cut it shorter.
    MinThree,
    /// `[i - m, i + m]` clamped to the grid: width `2m + 1`, `4m + 2` degrees of
    /// freedom in the interior.
    Centered,
}

impl WindowRule {
    /// Half-width `h` such that the realized window is `[i - h + 1, i + h - 1]`.
    pub fn effective_half_width(self, m: usize) -> usize {
        match self {
            WindowRule::Clamped => m,
            WindowRule::MinThree => m.max(2),
            WindowRule::Centered => m + 1,
        }
    }
}

impl FromStr for WindowRule {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "clamped" => Ok(WindowRule::Clamped),
            "min-three" | "min3" => Ok(WindowRule::MinThree),
            "centered" => Ok(WindowRule::Centered),
            other => Err(SpectralError::InvalidParameter(format!(
                "unknown window rule '{other}'"
            ))),
        }
    }
}

/// Configuration for [`smooth_with_cis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveSpec {
    pub method: AdaptiveMethod,
    pub smooth_level: f64,
    pub alpha: f64,
    pub log_scale: bool,
    pub window_rule: WindowRule,
}

impl AdaptiveSpec {
    pub fn new(method: AdaptiveMethod, smooth_level: f64, alpha: f64) -> Result<Self> {
        let spec = Self {
            method,
            smooth_level,
            alpha,
            log_scale: true,
            window_rule: WindowRule::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_log_scale(mut self, log_scale: bool) -> Self {
        self.log_scale = log_scale;
        self
    }

    pub fn with_window_rule(mut self, rule: WindowRule) -> Self {
        self.window_rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.smooth_level > 0.0 && self.smooth_level < 1.0) {
            return Err(SpectralError::InvalidParameter(format!(
                "smooth_level must lie in (0, 1), got {}",
                self.smooth_level
            )));
        }
        check_alpha(self.alpha)
    }
}

/// Local variation `v(i, j)` of every clamped window, evaluated on demand
/// from prefix sums.
#[derive(Debug, Clone)]
pub struct VariationProfile {
    method: AdaptiveMethod,
    n: usize,
    // prefix sums over centered values c_t = p_t - mean(p)
    s1: Vec<f64>,
    s2: Vec<f64>,
    st: Vec<f64>,
    constant: bool,
    total: f64,
}

impl VariationProfile {
    pub fn method(&self) -> AdaptiveMethod {
        self.method
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Inclusive 0-based bounds of the window centered at `i` with half-width `j`.
    pub fn window(&self, i: usize, j: usize) -> (usize, usize) {
        window_bounds(self.n, i, j)
    }

    /// Variation of the window centered at `i` (0-based) with half-width `j >= 1`.
    pub fn variation(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j >= 1, "window ({i}, {j}) out of range");
        let (a, b) = self.window(i, j);
        self.range_variation(a, b)
    }

    fn range_variation(&self, a: usize, b: usize) -> f64 {
        if self.constant {
            return 0.0;
        }
        let w = (b - a + 1) as f64;
        let s1 = self.s1[b + 1] - self.s1[a];
        let s2 = self.s2[b + 1] - self.s2[a];
        let ss = s2 - s1 * s1 / w;
        let v = match self.method {
            AdaptiveMethod::Dz => ss,
            AdaptiveMethod::Nz => {
                if b - a < 2 {
                    return 0.0;
                }
                // abscissa centered on the window midpoint; Sxx has a closed form
                let mid = 0.5 * (a + b) as f64;
                let sxy = (self.st[b + 1] - self.st[a]) - mid * s1;
                let sxx = w * (w * w - 1.0) / 12.0;
                ss - sxy * sxy / sxx
            }
        };
        if v <= ZERO_SNAP * s2.max(0.0) {
            0.0
        } else {
            v
        }
    }
}

fn window_bounds(n: usize, i: usize, j: usize) -> (usize, usize) {
    let a = (i + 1).saturating_sub(j);
    let b = (i + j - 1).min(n - 1);
    (a, b)
}

pub fn variation_profile(p: &[f64], method: AdaptiveMethod) -> Result<VariationProfile> {
    let n = p.len();
    if n < 3 {
        return Err(SpectralError::InvalidParameter(format!(
            "need at least 3 ordinates to smooth, got {n}"
        )));
    }
    if let Some(idx) = p.iter().position(|v| !v.is_finite()) {
        return Err(SpectralError::NonFinite(idx));
    }
    let constant = p.iter().all(|&v| v == p[0]);
    let mean = p.iter().sum::<f64>() / n as f64;
    let mut s1 = Vec::with_capacity(n + 1);
    let mut s2 = Vec::with_capacity(n + 1);
    let mut st = Vec::with_capacity(n + 1);
    let (mut a1, mut a2, mut at) = (0.0, 0.0, 0.0);
    s1.push(0.0);
    s2.push(0.0);
    st.push(0.0);
    for (t, &v) in p.iter().enumerate() {
        let c = v - mean;
        a1 += c;
        a2 += c * c;
        at += t as f64 * c;
        s1.push(a1);
        s2.push(a2);
        st.push(at);
    }
    let mut profile = VariationProfile {
        method,
        n,
        s1,
        s2,
        st,
        constant,
        total: 0.0,
    };
    profile.total = profile.range_variation(0, n - 1);
    Ok(profile)
}

/// `m[i]` = number of half-widths `j in 1..=n` with `v(i, j) <= smooth_level * total`.
pub fn select_halfwidths(profile: &VariationProfile, smooth_level: f64) -> Vec<usize> {
    let n = profile.len();
    if profile.total() == 0.0 {
        return vec![n; n];
    }
    let threshold = smooth_level * profile.total();
    (0..n)
        .map(|i| (1..=n).filter(|&j| profile.variation(i, j) <= threshold).count().max(1))
        .collect()
}

/// Smooth a raw periodogram with frequency-dependent windows and attach
/// `(1 - alpha)` confidence bounds at every frequency.
pub fn smooth_with_cis(raw: &RawPeriodogram, spec: &AdaptiveSpec) -> Result<SmoothedPeriodogram> {
    spec.validate()?;
    let n = raw.len();
    let mut floored = vec![false; n];
    let p: Vec<f64> = if spec.log_scale {
        raw.ordinates()
            .iter()
            .zip(floored.iter_mut())
            .map(|(&o, flag)| {
                if o <= LOG_FLOOR {
                    *flag = true;
                    LOG_FLOOR.ln()
                } else {
                    o.ln()
                }
            })
            .collect()
    } else {
        raw.ordinates().to_vec()
    };

    let profile = variation_profile(&p, spec.method)?;
    let selected = select_halfwidths(&profile, spec.smooth_level);

    let mut offsets: HashMap<usize, (f64, f64)> = HashMap::new();
    let mut ordinates = Vec::with_capacity(n);
    let mut half_widths = Vec::with_capacity(n);
    let mut realized = Vec::with_capacity(n);
    let mut ci_lower = Vec::with_capacity(n);
    let mut ci_upper = Vec::with_capacity(n);
    for (i, &m) in selected.iter().enumerate() {
        let h = spec.window_rule.effective_half_width(m);
        let (a, b) = window_bounds(n, i, h);
        let window = &p[a..=b];
        let count = window.len();
        let mean = window.iter().sum::<f64>() / count as f64;
        let (lo, hi) = match offsets.get(&count) {
            Some(&o) => o,
            None => {
                let o = ConfidenceSpec::new(spec.alpha, 2.0 * count as f64)?.log_offsets();
                offsets.insert(count, o);
                o
            }
        };
        let (lower, upper) = if spec.log_scale {
            (mean + lo, mean + hi)
        } else {
            (mean * lo.exp(), mean * hi.exp())
        };
        ordinates.push(mean);
        half_widths.push(h);
        realized.push(count);
        ci_lower.push(lower);
        ci_upper.push(upper);
    }

    Ok(SmoothedPeriodogram {
        grid: raw.grid().clone(),
        ordinates,
        log_scale: spec.log_scale,
        half_widths,
        realized_lengths: realized,
        ci_lower,
        ci_upper,
        alpha: spec.alpha,
        method: match spec.method {
            AdaptiveMethod::Dz => SmoothingMethod::Dz,
            AdaptiveMethod::Nz => SmoothingMethod::Nz,
        },
        floored,
    })
}

/// One entry of [`summary_top`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeakSummary {
    pub index: usize,
    pub frequency: f64,
    /// `1 / frequency`; absent at zero frequency.
    pub period: Option<f64>,
    pub ordinate: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
}

impl PeakSummary {
    /// Copy with every value rounded to `digits` significant digits.
    pub fn rounded(&self, digits: u32) -> Self {
        Self {
            index: self.index,
            frequency: round_significant(self.frequency, digits),
            period: self.period.map(|p| round_significant(p, digits)),
            ordinate: round_significant(self.ordinate, digits),
            ci_lower: round_significant(self.ci_lower, digits),
            ci_upper: round_significant(self.ci_upper, digits),
        }
    }
}

pub fn round_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() || digits == 0 {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits as i32 - 1 - magnitude);
    (x * scale).round() / scale
}

/// Indices of strict interior local maxima. A flat top counts once, at its
/// leftmost index.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if values[i] > values[i - 1] {
            let mut end = i;
            while end + 1 < n && values[end + 1] == values[i] {
                end += 1;
            }
            if end + 1 < n && values[i] > values[end + 1] {
                peaks.push(i);
            }
            i = end + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// The `top` highest local maxima of the smoothed ordinates, highest first.
pub fn summary_top(sp: &SmoothedPeriodogram, top: usize) -> Result<Vec<PeakSummary>> {
    if top < 1 {
        return Err(SpectralError::InvalidParameter("top must be >= 1".into()));
    }
    let mut peaks = local_maxima(&sp.ordinates);
    peaks.sort_by(|&a, &b| sp.ordinates[b].total_cmp(&sp.ordinates[a]).then(a.cmp(&b)));
    peaks.truncate(top);
    Ok(peaks
        .into_iter()
        .map(|i| {
            let f = sp.grid.frequencies()[i];
            PeakSummary {
                index: i,
                frequency: f,
                period: (f > 0.0).then(|| 1.0 / f),
                ordinate: sp.ordinates[i],
                ci_lower: sp.ci_lower[i],
                ci_upper: sp.ci_upper[i],
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::ci_width;
    use crate::types::FrequencyGrid;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn raw_from_log(p: &[f64]) -> RawPeriodogram {
        let m = 2 * (p.len() - 1);
        let grid = FrequencyGrid::kz(m).unwrap();
        RawPeriodogram::new(grid, p.iter().map(|v| v.exp()).collect(), m, 1).unwrap()
    }

    fn brute_variation(p: &[f64], method: AdaptiveMethod, a: usize, b: usize) -> f64 {
        let w = &p[a..=b];
        let n = w.len() as f64;
        let mean = w.iter().sum::<f64>() / n;
        match method {
            AdaptiveMethod::Dz => w.iter().map(|v| (v - mean).powi(2)).sum(),
            AdaptiveMethod::Nz => {
                if w.len() < 3 {
                    return 0.0;
                }
                let tm = (n - 1.0) / 2.0;
                let sxx: f64 = (0..w.len()).map(|t| (t as f64 - tm).powi(2)).sum();
                let sxy: f64 = w.iter().enumerate().map(|(t, v)| (t as f64 - tm) * (v - mean)).sum();
                let slope = sxy / sxx;
                w.iter()
                    .enumerate()
                    .map(|(t, v)| (v - mean - slope * (t as f64 - tm)).powi(2))
                    .sum()
            }
        }
    }

    #[test]
    fn constant_sequence_has_no_variation() {
        for method in [AdaptiveMethod::Dz, AdaptiveMethod::Nz] {
            let p = vec![0.1; 9];
            let prof = variation_profile(&p, method).unwrap();
            assert_eq!(prof.total(), 0.0);
            for i in 0..9 {
                for j in 1..=9 {
                    assert_eq!(prof.variation(i, j), 0.0);
                }
            }
            assert_eq!(select_halfwidths(&prof, 0.3), vec![9; 9]);
        }
    }

    #[test]
    fn line_has_no_nonlinearity() {
        let p: Vec<f64> = (1..=20).map(|t| 2.0 * t as f64).collect();
        let nz = variation_profile(&p, AdaptiveMethod::Nz).unwrap();
        assert_eq!(nz.total(), 0.0);
        for i in 0..20 {
            for j in 1..=20 {
                assert_eq!(nz.variation(i, j), 0.0);
            }
        }
        let dz = variation_profile(&p, AdaptiveMethod::Dz).unwrap();
        assert!(dz.total() > 0.0);
    }

    #[test]
    fn three_point_window_example() {
        let p = [0.0, 0.0, 1.0, 0.0, 0.0];
        let prof = variation_profile(&p, AdaptiveMethod::Dz).unwrap();
        assert_abs_diff_eq!(prof.variation(2, 2), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(prof.variation(2, 1), 0.0);
        assert_eq!(prof.window(0, 3), (0, 2));
    }

    #[test]
    fn spike_gets_unit_halfwidth() {
        let p = [0.0, 0.0, 10.0, 0.0, 0.0];
        let prof = variation_profile(&p, AdaptiveMethod::Dz).unwrap();
        // total = 80; v(3rd, 2) = 66.7, so any level below 0.83 leaves only j = 1
        let m = select_halfwidths(&prof, 0.5);
        assert_eq!(m[2], 1);
        // brute force over the 5-point example
        let cc = 0.5 * brute_variation(&p, AdaptiveMethod::Dz, 0, 4);
        for (i, &mi) in m.iter().enumerate() {
            let count = (1..=5)
                .filter(|&j| {
                    let (a, b) = window_bounds(5, i, j);
                    brute_variation(&p, AdaptiveMethod::Dz, a, b) <= cc
                })
                .count();
            assert_eq!(mi, count);
        }
    }

    #[test]
    fn constant_log_periodogram_smoothing() {
        let p = vec![1.7; 101];
        let raw = raw_from_log(&p);
        let spec = AdaptiveSpec::new(AdaptiveMethod::Dz, 0.05, 0.05).unwrap();
        let sp = smooth_with_cis(&raw, &spec).unwrap();
        let w = ci_width(202.0, 0.05).unwrap();
        for i in 0..101 {
            assert_abs_diff_eq!(sp.ordinates[i], 1.7, epsilon = 1e-12);
            assert_eq!(sp.realized_lengths[i], 101);
            assert_abs_diff_eq!(sp.ci_width(i), w, epsilon = 1e-12);
        }
        sp.check_invariants().unwrap();
    }

    #[test]
    fn min_three_floor_widens_peak_windows() {
        let mut p = vec![0.0; 21];
        p[10] = 8.0;
        let raw = raw_from_log(&p);
        let base = AdaptiveSpec::new(AdaptiveMethod::Dz, 0.05, 0.05).unwrap();
        let clamped = smooth_with_cis(&raw, &base).unwrap();
        assert_eq!(clamped.realized_lengths[10], 1);
        let floored = smooth_with_cis(&raw, &base.with_window_rule(WindowRule::MinThree)).unwrap();
        assert_eq!(floored.realized_lengths[10], 3);
        assert!(floored.realized_lengths.iter().all(|&m| m >= 2));
        floored.check_invariants().unwrap();
        let centered = smooth_with_cis(&raw, &base.with_window_rule(WindowRule::Centered)).unwrap();
        assert_eq!(centered.realized_lengths[10], 3);
        centered.check_invariants().unwrap();
    }

    #[test]
    fn zero_ordinates_are_floored_and_flagged() {
        let grid = FrequencyGrid::kz(8).unwrap();
        let raw = RawPeriodogram::new(grid, vec![0.0, 1.0, 2.0, 1.0, 0.5], 8, 1).unwrap();
        let sp = smooth_with_cis(&raw, &AdaptiveSpec::new(AdaptiveMethod::Nz, 0.1, 0.05).unwrap()).unwrap();
        assert_eq!(sp.floored, vec![true, false, false, false, false]);
        assert_eq!(sp.floored_count(), 1);
    }

    #[test]
    fn raw_scale_bounds_are_multiplicative() {
        let grid = FrequencyGrid::kz(8).unwrap();
        let raw = RawPeriodogram::new(grid, vec![1.0, 3.0, 2.0, 5.0, 0.5], 8, 1).unwrap();
        let spec = AdaptiveSpec::new(AdaptiveMethod::Dz, 0.2, 0.05)
            .unwrap()
            .with_log_scale(false);
        let sp = smooth_with_cis(&raw, &spec).unwrap();
        assert!(!sp.log_scale);
        sp.check_invariants().unwrap();
        for i in 0..sp.len() {
            let nu = 2.0 * sp.realized_lengths[i] as f64;
            assert_abs_diff_eq!(
                (sp.ci_upper[i] / sp.ci_lower[i]).ln(),
                ci_width(nu, 0.05).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn spec_validation() {
        assert!(AdaptiveSpec::new(AdaptiveMethod::Dz, 0.0, 0.05).is_err());
        assert!(AdaptiveSpec::new(AdaptiveMethod::Dz, 1.0, 0.05).is_err());
        assert!(AdaptiveSpec::new(AdaptiveMethod::Dz, 0.5, 1.0).is_err());
        assert!(variation_profile(&[1.0, 2.0], AdaptiveMethod::Dz).is_err());
        assert_eq!("NZ".parse::<AdaptiveMethod>().unwrap(), AdaptiveMethod::Nz);
    }

    #[test]
    fn local_maxima_rules() {
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0]), vec![1]);
        assert!(local_maxima(&[1.0, 2.0, 3.0, 4.0]).is_empty());
        assert!(local_maxima(&[4.0, 3.0, 2.0]).is_empty());
        assert_eq!(local_maxima(&[0.0, 2.0, 2.0, 2.0, 1.0, 3.0, 0.0]), vec![1, 5]);
        // a shoulder is not a peak
        assert!(local_maxima(&[0.0, 2.0, 2.0, 3.0]).is_empty());
    }

    #[test]
    fn summary_orders_by_height() {
        let p = [0.0, 3.0, 0.0, 5.0, 0.0, 1.0, 0.0];
        let raw = raw_from_log(&p);
        let mut sp = smooth_with_cis(&raw, &AdaptiveSpec::new(AdaptiveMethod::Dz, 0.05, 0.05).unwrap()).unwrap();
        sp.ordinates = p.to_vec();
        let top = summary_top(&sp, 2).unwrap();
        assert_eq!(top.iter().map(|e| e.index).collect::<Vec<_>>(), vec![3, 1]);
        assert_abs_diff_eq!(top[0].frequency, 0.25);
        assert_abs_diff_eq!(top[0].period.unwrap(), 4.0);
        assert!(summary_top(&sp, 0).is_err());

        let mut single = sp.clone();
        single.ordinates = vec![0.0, 1.0, 0.0, -1.0, -2.0, -3.0, -4.0];
        assert_eq!(summary_top(&single, 5).unwrap().len(), 1);
        single.ordinates = (0..7).map(|v| v as f64).collect();
        assert!(summary_top(&single, 5).unwrap().is_empty());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_significant(0.4441234, 3), 0.444);
        assert_eq!(round_significant(2.2522522, 4), 2.252);
        assert_eq!(round_significant(-1234.5, 2), -1200.0);
        assert_eq!(round_significant(0.0, 3), 0.0);
    }

    proptest! {
        #[test]
        fn prefix_profile_matches_brute_force(
            p in prop::collection::vec(-5.0f64..5.0, 3..40),
            nz in any::<bool>(),
        ) {
            let method = if nz { AdaptiveMethod::Nz } else { AdaptiveMethod::Dz };
            let prof = variation_profile(&p, method).unwrap();
            let n = p.len();
            prop_assert!((prof.total() - brute_variation(&p, method, 0, n - 1)).abs() < 1e-9);
            for i in 0..n {
                let mut prev = 0.0;
                for j in 1..=n {
                    let (a, b) = prof.window(i, j);
                    let v = prof.variation(i, j);
                    prop_assert!((v - brute_variation(&p, method, a, b)).abs() < 1e-9);
                    prop_assert!(v >= prev - 1e-9);
                    prev = v;
                }
            }
        }

        #[test]
        fn raising_level_never_shrinks_windows(
            p in prop::collection::vec(-5.0f64..5.0, 3..30),
            lo in 0.01f64..0.5,
            bump in 0.0f64..0.4,
        ) {
            for method in [AdaptiveMethod::Dz, AdaptiveMethod::Nz] {
                let prof = variation_profile(&p, method).unwrap();
                let a = select_halfwidths(&prof, lo);
                let b = select_halfwidths(&prof, lo + bump);
                prop_assert!(a.iter().zip(&b).all(|(x, y)| x <= y));
                prop_assert!(a.iter().all(|&m| m >= 1));
            }
        }

        #[test]
        fn bracket_and_width_depend_only_on_window(
            p in prop::collection::vec(-5.0f64..5.0, 3..30),
            level in 0.01f64..0.9,
            nz in any::<bool>(),
        ) {
            let method = if nz { AdaptiveMethod::Nz } else { AdaptiveMethod::Dz };
            let raw = raw_from_log(&p);
            let sp = smooth_with_cis(&raw, &AdaptiveSpec::new(method, level, 0.05).unwrap()).unwrap();
            sp.check_invariants().unwrap();
            for i in 0..sp.len() {
                prop_assert!(sp.ci_lower[i] < sp.ordinates[i] && sp.ordinates[i] < sp.ci_upper[i]);
                let expect = ci_width(2.0 * sp.realized_lengths[i] as f64, 0.05).unwrap();
                prop_assert!((sp.ci_width(i) - expect).abs() < 1e-12);
                for j in 0..sp.len() {
                    if sp.realized_lengths[i] < sp.realized_lengths[j] {
                        prop_assert!(sp.ci_width(i) > sp.ci_width(j));
                    }
                }
            }
        }
    }
}
