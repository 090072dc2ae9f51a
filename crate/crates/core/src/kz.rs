//! Kolmogorov-Zurbenko Fourier transform and the raw KZ periodogram.
//!
//! The series is cut into non-overlapping blocks of length `L = k(m - 1) + 1`.
//! Each block is demodulated at every grid frequency `j / m` and filtered with
//! the KZ weights (the uniform length-`m` kernel convolved with itself `k`
//! times). The ordinate is the mean squared modulus of the filtered
//! coefficient across blocks. Trailing samples that do not fill a block are
//! dropped.
//!
//! With this normalization a noiseless `a * cos(2 pi f t)` at an interior grid
//! frequency yields the ordinate `a^2 / 4` exactly.

use std::f64::consts::PI;

use crate::error::{Result, SpectralError};
use crate::types::{FrequencyGrid, RawPeriodogram, TimeSeries};

/// Calibration constant for the ordinate scale. Pinned by the amplitude
/// recovery tests; see `protocol::estimate_amplitude`.
pub const ORDINATE_NORMALIZATION: f64 = 1.0;

/// Filter weights of the KZFT.
#[derive(Debug, Clone, PartialEq)]
pub struct KzftWeights {
    weights: Vec<f64>,
    m: usize,
    k: usize,
}

impl KzftWeights {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k(m - 1) + 1`
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

pub fn kzft_weights(m: usize, k: usize) -> Result<KzftWeights> {
    if m < 2 {
        return Err(SpectralError::InvalidParameter(format!(
            "KZFT window width must be >= 2, got {m}"
        )));
    }
    if k < 1 {
        return Err(SpectralError::InvalidParameter(format!(
            "KZFT iteration count must be >= 1, got {k}"
        )));
    }
    // Convolve integer counts so the kernel is exactly symmetric, then scale by m^-k.
    let mut counts = vec![1.0f64; m];
    for _ in 1..k {
        let mut next = vec![0.0f64; counts.len() + m - 1];
        for (i, &c) in counts.iter().enumerate() {
            for slot in &mut next[i..i + m] {
                *slot += c;
            }
        }
        counts = next;
    }
    let total: f64 = counts.iter().sum();
    let weights = counts.iter().map(|c| c / total).collect();
    Ok(KzftWeights { weights, m, k })
}

/// Raw KZ periodogram on the grid `{j / m : j = 0..=m/2}`.
pub fn raw_periodogram(y: &TimeSeries, m: usize, k: usize) -> Result<RawPeriodogram> {
    let kernel = kzft_weights(m, k)?;
    let span = kernel.len();
    let n = y.len();
    if n < span {
        return Err(SpectralError::SeriesShorterThanWindow { n, window: span });
    }
    let grid = FrequencyGrid::kz(m)?;
    let blocks = n / span;
    let values = y.values();

    // Grid frequencies are j/m, so the phase 2 pi j t / m only depends on (j t) mod m.
    let (cos_tab, sin_tab): (Vec<f64>, Vec<f64>) = (0..m)
        .map(|r| {
            let angle = 2.0 * PI * r as f64 / m as f64;
            (angle.cos(), angle.sin())
        })
        .unzip();

    let ordinates = (0..grid.len())
        .map(|j| {
            let mut power = 0.0;
            for b in 0..blocks {
                let start = b * span;
                let (mut re, mut im) = (0.0, 0.0);
                for (s, w) in kernel.weights().iter().enumerate() {
                    let t = start + s;
                    let r = (j * t) % m;
                    let v = w * values[t];
                    re += v * cos_tab[r];
                    im -= v * sin_tab[r];
                }
                power += re * re + im * im;
            }
            ORDINATE_NORMALIZATION * power / blocks as f64
        })
        .collect();

    Ok(RawPeriodogram { grid, ordinates, m, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weight_examples() {
        let w = kzft_weights(3, 1).unwrap();
        assert_eq!(w.len(), 3);
        for v in w.weights() {
            assert_abs_diff_eq!(*v, 1.0 / 3.0, epsilon = 1e-15);
        }
        let w = kzft_weights(3, 2).unwrap();
        let expect = [1.0, 2.0, 3.0, 2.0, 1.0].map(|v| v / 9.0);
        for (a, b) in w.weights().iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let w = kzft_weights(2, 3).unwrap();
        let expect = [1.0, 3.0, 3.0, 1.0].map(|v| v / 8.0);
        for (a, b) in w.weights().iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(kzft_weights(1, 1).is_err());
        assert!(kzft_weights(4, 0).is_err());
    }

    #[test]
    fn weights_symmetric_unit_sum() {
        for m in 2..=64 {
            for k in 1..=5 {
                let w = kzft_weights(m, k).unwrap();
                assert_eq!(w.len(), k * (m - 1) + 1);
                let sum: f64 = w.weights().iter().sum();
                assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
                let ws = w.weights();
                for i in 0..ws.len() {
                    assert_eq!(ws[i], ws[ws.len() - 1 - i]);
                    assert!(ws[i] > 0.0);
                }
            }
        }
    }

    #[test]
    fn grid_sinusoid_is_recovered() {
        let (a, m, j) = (2.0, 50, 5);
        let f = j as f64 / m as f64;
        let y: Vec<f64> = (0..1000).map(|t| a * (2.0 * PI * f * t as f64).cos()).collect();
        let p = raw_periodogram(&TimeSeries::from_values(y).unwrap(), m, 1).unwrap();
        let arg = (0..p.len())
            .max_by(|&x, &y| p.ordinates()[x].total_cmp(&p.ordinates()[y]))
            .unwrap();
        assert_eq!(p.grid().frequencies()[arg], 0.1);
        assert_abs_diff_eq!(p.ordinates()[arg], a * a / 4.0, epsilon = 1e-12);
        for (i, o) in p.ordinates().iter().enumerate() {
            if i != arg {
                assert!(*o < 1e-20, "leak at {i}: {o}");
            }
        }
    }

    #[test]
    fn constant_series_has_no_oscillatory_power() {
        let y = TimeSeries::from_values(vec![7.0; 300]).unwrap();
        let p = raw_periodogram(&y, 20, 2).unwrap();
        assert_abs_diff_eq!(p.ordinates()[0], 49.0, epsilon = 1e-9);
        for o in &p.ordinates()[1..] {
            assert!(o.abs() < 1e-9);
        }
    }

    #[test]
    fn power_scales_quadratically() {
        let y: Vec<f64> = (0..500).map(|t| ((t * 7919) % 113) as f64 - 56.0).collect();
        let p1 = raw_periodogram(&TimeSeries::from_values(y.clone()).unwrap(), 30, 3).unwrap();
        let p2 = raw_periodogram(
            &TimeSeries::from_values(y.iter().map(|v| -3.5 * v).collect()).unwrap(),
            30,
            3,
        )
        .unwrap();
        for (a, b) in p1.ordinates().iter().zip(p2.ordinates()) {
            assert!((b - 12.25 * a).abs() <= 1e-9 * b.abs().max(1e-300));
        }
    }

    #[test]
    fn too_short_series() {
        let y = TimeSeries::from_values(vec![1.0; 20]).unwrap();
        assert_eq!(
            raw_periodogram(&y, 8, 3),
            Err(SpectralError::SeriesShorterThanWindow { n: 20, window: 22 })
        );
    }

    #[test]
    fn odd_m_grid() {
        let y = TimeSeries::from_values((0..70).map(|t| (t as f64).sin()).collect()).unwrap();
        let p = raw_periodogram(&y, 7, 1).unwrap();
        assert_eq!(p.len(), 4);
        assert_abs_diff_eq!(p.grid().spacing(), 1.0 / 7.0);
    }
}
