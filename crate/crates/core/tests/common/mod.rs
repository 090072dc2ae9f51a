//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library paths being checked.

#![allow(dead_code)]

use std::f64::consts::PI;

/// `P(chi2(nu) <= x)` for even `nu`, by composite Simpson quadrature of the density.
pub fn chisq_cdf_by_quadrature(x: f64, nu: u32) -> f64 {
    assert!(nu.is_multiple_of(2) && nu > 0, "oracle handles even nu only");
    let k = nu / 2;
    let gamma_k: f64 = (1..k).map(|i| i as f64).product();
    let norm = 2f64.powi(k as i32) * gamma_k;
    let density = |t: f64| t.powi(k as i32 - 1) * (-t / 2.0).exp() / norm;
    let steps = 20_000;
    let h = x / steps as f64;
    let mut s = density(0.0) + density(x);
    for i in 1..steps {
        let t = i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * density(t);
    }
    s * h / 3.0
}

/// Inverse of [`chisq_cdf_by_quadrature`] by bisection.
pub fn chisq_quantile_by_bisection(p: f64, nu: u32) -> f64 {
    let (mut lo, mut hi) = (0.0, 10.0 * nu as f64 + 100.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chisq_cdf_by_quadrature(mid, nu) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Direct evaluation of the block-averaged squared modulus of the
/// uniformly weighted Fourier sum (k = 1) at frequency `f`, with full-angle
/// trigonometry instead of any phase table.
pub fn brute_block_power(y: &[f64], m: usize, f: f64) -> f64 {
    let blocks = y.len() / m;
    let mut acc = 0.0;
    for b in 0..blocks {
        let (mut re, mut im) = (0.0, 0.0);
        for (t, v) in y.iter().enumerate().skip(b * m).take(m) {
            let ang = 2.0 * PI * f * t as f64;
            re += v * ang.cos() / m as f64;
            im -= v * ang.sin() / m as f64;
        }
        acc += re * re + im * im;
    }
    acc / blocks as f64
}

/// Kolmogorov-Smirnov distance between a sample and a CDF.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

/// Stephens' small-sample approximation to the one-sample KS critical value.
pub fn ks_critical(n: usize, c_alpha: f64) -> f64 {
    let s = (n as f64).sqrt();
    c_alpha / (s + 0.12 + 0.11 / s)
}

/// c(alpha) for alpha = 0.01.
pub const KS_C_01: f64 = 1.628;
