//! Sinusoids buried in seeded noise.

use std::f64::consts::PI;

use crate::error::{Result, SpectralError};
use crate::rng::Xoshiro256pp;
use crate::types::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalSpec {
    pub frequency: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl SignalSpec {
    pub fn new(frequency: f64, amplitude: f64) -> Result<Self> {
        Self::with_phase(frequency, amplitude, 0.0)
    }

    pub fn with_phase(frequency: f64, amplitude: f64, phase: f64) -> Result<Self> {
        if !(frequency > 0.0 && frequency < 0.5) {
            return Err(SpectralError::FrequencyOutOfRange(frequency));
        }
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(SpectralError::InvalidParameter(format!(
                "signal amplitude must be positive, got {amplitude}"
            )));
        }
        if !phase.is_finite() {
            return Err(SpectralError::InvalidParameter("phase must be finite".into()));
        }
        Ok(Self {
            frequency,
            amplitude,
            phase,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseDistribution {
    /// Uniform on `[-a_n, a_n]`.
    #[default]
    Uniform,
    /// Zero-mean normal with standard deviation `a_n`.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub amplitude: f64,
    pub seed: u64,
    pub distribution: NoiseDistribution,
}

impl NoiseSpec {
    pub fn new(amplitude: f64, seed: u64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(SpectralError::InvalidParameter(format!(
                "noise amplitude must be positive, got {amplitude}"
            )));
        }
        Ok(Self {
            amplitude,
            seed,
            distribution: NoiseDistribution::Uniform,
        })
    }

    pub fn with_distribution(mut self, distribution: NoiseDistribution) -> Self {
        self.distribution = distribution;
        self
    }
}

/// `y_t = sum_j a_j sin(2 pi f_j t + phi_j) + u_t` for `t = 1..=n`.
pub fn generate_series(n: usize, signals: &[SignalSpec], noise: &NoiseSpec) -> Result<TimeSeries> {
    if n < 2 {
        return Err(SpectralError::TooShort(n));
    }
    let mut rng = Xoshiro256pp::seed_from_u64(noise.seed);
    let values = (1..=n)
        .map(|t| {
            let tt = t as f64;
            let signal: f64 = signals
                .iter()
                .map(|s| s.amplitude * (2.0 * PI * s.frequency * tt + s.phase).sin())
                .sum();
            let u = match noise.distribution {
                NoiseDistribution::Uniform => rng.uniform(-noise.amplitude, noise.amplitude),
                NoiseDistribution::Normal => noise.amplitude * rng.standard_normal(),
            };
            signal + u
        })
        .collect();
    TimeSeries::from_values(values)
}

/// Signal-to-noise ratio `sum a_j^2 / a_n^2`.
pub fn snr(signals: &[SignalSpec], noise: &NoiseSpec) -> f64 {
    signals.iter().map(|s| s.amplitude * s.amplitude).sum::<f64>() / (noise.amplitude * noise.amplitude)
}
