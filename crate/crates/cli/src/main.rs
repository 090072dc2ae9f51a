//! `kzp`: KZ periodograms, adaptive and lag-window smoothing, truncation
//! bounds and the detect-then-estimate protocol from the command line.
//!
//! Every subcommand writes one CSV table (to `--out` or stdout). Floating
//! point values carry 17 significant digits, so tables round-trip exactly.

mod error;
mod plot;
mod table;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kzp_core::adaptive::{smooth_with_cis, summary_top, AdaptiveMethod, AdaptiveSpec, WindowRule};
use kzp_core::bounds::{ci_comparison_curves, truncation_bounds, BoundsReport};
use kzp_core::inference::{p_value_greater, p_value_less};
use kzp_core::kz::raw_periodogram;
use kzp_core::lag_window::{static_smoothed_log_periodogram, StaticWindowSpec, WindowKind};
use kzp_core::protocol::{run_two_step, ProtocolConfig, StrengthEstimate};
use kzp_core::simulation::{generate_series, NoiseDistribution, NoiseSpec, SignalSpec};
use kzp_core::{FrequencyGrid, SmoothedPeriodogram, TimeSeries};

use error::Result;
use plot::render_plot;
use table::{fmt_f64, read_series, Table};

#[derive(Parser, Debug)]
#[command(name = "kzp", version, about = "KZ periodogram spectral analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate sinusoids in noise; writes index,value.
    Simulate(SimulateArgs),
    /// Raw KZ periodogram of a series.
    Periodogram(PeriodogramArgs),
    /// Adaptive (DZ/NZ) smoothing with confidence bounds.
    Smooth(SmoothArgs),
    /// Lag-window smoothing with constant-width confidence bounds.
    Static(StaticArgs),
    /// Highest local maxima of the adaptively smoothed periodogram.
    Summary(SummaryArgs),
    /// Admissible lag-window truncation points for a frequency gap.
    Bounds(BoundsArgs),
    /// Confidence-interval widths: dynamic windows against lag windows.
    CompareCi(CompareCiArgs),
    /// Tail probabilities of the ratio of two spectral estimates.
    Pvalue(PvalueArgs),
    /// Detect with adaptive smoothing, then estimate strengths with a lag window.
    Protocol(ProtocolArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Series CSV: one column (value) or two (index,value).
    #[arg(long)]
    input: PathBuf,
    /// The input has no header row.
    #[arg(long)]
    no_header: bool,
}

impl InputArgs {
    fn load(&self) -> Result<TimeSeries> {
        read_series(&self.input, !self.no_header)
    }
}

#[derive(Args, Debug)]
struct KzArgs {
    /// KZ window length; the frequency grid is j/m.
    #[arg(long, default_value_t = 500)]
    m: usize,
    /// Number of iterations of the moving average.
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args, Debug)]
struct AdaptiveArgs {
    /// dz or nz.
    #[arg(long, default_value = "dz")]
    method: AdaptiveMethod,
    /// Proportion of total variation allowed inside a window.
    #[arg(long, default_value_t = 0.05)]
    smooth_level: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Window realization: clamped, min-three or centered.
    #[arg(long, default_value = "clamped")]
    window_rule: WindowRule,
}

impl AdaptiveArgs {
    fn spec(&self) -> Result<AdaptiveSpec> {
        Ok(AdaptiveSpec::new(self.method, self.smooth_level, self.alpha)?.with_window_rule(self.window_rule))
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NoiseDist {
    Uniform,
    Normal,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, default_value_t = 5000)]
    n: usize,
    /// Sinusoid as frequency:amplitude[:phase]; repeatable.
    #[arg(long = "signal", value_parser = parse_signal)]
    signals: Vec<SignalSpec>,
    /// Noise half-range (uniform) or standard deviation (normal).
    #[arg(long, default_value_t = 16.0)]
    noise_amp: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    noise_dist: NoiseDist,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct PeriodogramArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    kz: KzArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct SmoothArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    kz: KzArgs,
    #[command(flatten)]
    adaptive: AdaptiveArgs,
    /// Smooth raw ordinates instead of their logarithms.
    #[arg(long)]
    raw_scale: bool,
    #[command(flatten)]
    out: OutArgs,
    /// Write an SVG plot of the band here.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StaticArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Evaluate on the grid j/m.
    #[arg(long, default_value_t = 500)]
    m: usize,
    /// rectangular, hamming, hanning, bartlett or parzen.
    #[arg(long, default_value = "parzen")]
    window: WindowKind,
    #[arg(long)]
    truncation_m: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[command(flatten)]
    out: OutArgs,
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SummaryArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    kz: KzArgs,
    #[command(flatten)]
    adaptive: AdaptiveArgs,
    #[arg(long, default_value_t = 5)]
    top: usize,
    /// Round reported values to this many significant digits.
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Restrict to one window; all five when omitted.
    #[arg(long)]
    window: Option<WindowKind>,
    #[arg(long)]
    n: usize,
    /// Gap between adjacent frequencies in radians per sample.
    #[arg(long, default_value_t = PI)]
    gap_rad: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct CompareCiArgs {
    #[arg(long)]
    n: usize,
    /// Proportion of smoothness; dynamic widths run up to pos * n.
    #[arg(long, default_value_t = 0.05)]
    pos: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct PvalueArgs {
    #[arg(long)]
    f1: f64,
    #[arg(long)]
    f2: f64,
    /// Degrees of freedom of each estimate.
    #[arg(long)]
    nu: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ProtocolArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    kz: KzArgs,
    #[command(flatten)]
    adaptive: AdaptiveArgs,
    /// Lag window for the estimation step.
    #[arg(long, default_value = "parzen")]
    window: WindowKind,
    /// Number of peaks kept from the detection step.
    #[arg(long, default_value_t = 2)]
    top: usize,
    #[command(flatten)]
    out: OutArgs,
    /// Plot of the estimate the strengths were read from.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn parse_signal(s: &str) -> std::result::Result<SignalSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(format!("expected frequency:amplitude[:phase], got {s:?}"));
    }
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    let (f, a) = (num(parts[0])?, num(parts[1])?);
    let phase = parts.get(2).map(|p| num(p)).transpose()?.unwrap_or(0.0);
    SignalSpec::with_phase(f, a, phase).map_err(|e| e.to_string())
}

fn opt_usize(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn smoothed_table(sp: &SmoothedPeriodogram) -> Table {
    let mut t = Table::new(&[
        "frequency",
        "ordinate",
        "ci_lower",
        "ci_upper",
        "half_width",
        "realized_length",
        "floor_flag",
    ]);
    for i in 0..sp.len() {
        t.push(vec![
            fmt_f64(sp.grid.frequencies()[i]),
            fmt_f64(sp.ordinates[i]),
            fmt_f64(sp.ci_lower[i]),
            fmt_f64(sp.ci_upper[i]),
            sp.half_widths[i].to_string(),
            sp.realized_lengths[i].to_string(),
            u8::from(sp.floored[i]).to_string(),
        ]);
    }
    t
}

fn warn_floored(sp: &SmoothedPeriodogram) {
    let count = sp.floored_count();
    if count > 0 {
        eprintln!("kzp: warning: {count} nonpositive ordinates floored before taking logs");
    }
}

fn finish_smoothed(sp: &SmoothedPeriodogram, out: Option<&Path>, plot: Option<&Path>) -> Result<()> {
    warn_floored(sp);
    smoothed_table(sp).write(out)?;
    if let Some(path) = plot {
        render_plot(sp, path)?;
    }
    Ok(())
}

fn bounds_row(t: &mut Table, r: &BoundsReport) {
    t.push(vec![
        r.kind.name().to_string(),
        r.n.to_string(),
        fmt_f64(r.delta_lambda.value()),
        fmt_f64(r.lower_m),
        fmt_f64(r.upper_m),
        r.feasible.to_string(),
        opt_usize(r.choices.map(|c| c.min)),
        opt_usize(r.choices.map(|c| c.median)),
        opt_usize(r.choices.map(|c| c.max)),
    ]);
}

const BOUNDS_HEADER: [&str; 9] = [
    "window",
    "n",
    "delta_lambda",
    "lower_m",
    "upper_m",
    "feasible",
    "m_min",
    "m_median",
    "m_max",
];

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => {
            let dist = match a.noise_dist {
                NoiseDist::Uniform => NoiseDistribution::Uniform,
                NoiseDist::Normal => NoiseDistribution::Normal,
            };
            let noise = NoiseSpec::new(a.noise_amp, a.seed)?.with_distribution(dist);
            let y = generate_series(a.n, &a.signals, &noise)?;
            let mut t = Table::new(&["index", "value"]);
            for (i, v) in y.values().iter().enumerate() {
                t.push(vec![(i + 1).to_string(), fmt_f64(*v)]);
            }
            t.write(a.out.out.as_deref())
        }
        Command::Periodogram(a) => {
            let raw = raw_periodogram(&a.input.load()?, a.kz.m, a.kz.k)?;
            let mut t = Table::new(&["frequency", "ordinate"]);
            for (f, o) in raw.grid().frequencies().iter().zip(raw.ordinates()) {
                t.push(vec![fmt_f64(*f), fmt_f64(*o)]);
            }
            t.write(a.out.out.as_deref())
        }
        Command::Smooth(a) => {
            let raw = raw_periodogram(&a.input.load()?, a.kz.m, a.kz.k)?;
            let spec = a.adaptive.spec()?.with_log_scale(!a.raw_scale);
            let sp = smooth_with_cis(&raw, &spec)?;
            finish_smoothed(&sp, a.out.out.as_deref(), a.plot.as_deref())
        }
        Command::Static(a) => {
            let y = a.input.load()?;
            let spec = StaticWindowSpec::new(a.window, a.truncation_m)?;
            let sp = static_smoothed_log_periodogram(&y, spec, &FrequencyGrid::kz(a.m)?, a.alpha)?;
            finish_smoothed(&sp, a.out.out.as_deref(), a.plot.as_deref())
        }
        Command::Summary(a) => {
            let raw = raw_periodogram(&a.input.load()?, a.kz.m, a.kz.k)?;
            let sp = smooth_with_cis(&raw, &a.adaptive.spec()?)?;
            warn_floored(&sp);
            let mut t = Table::new(&[
                "rank",
                "index",
                "frequency",
                "period",
                "ordinate",
                "ci_lower",
                "ci_upper",
            ]);
            for (rank, p) in summary_top(&sp, a.top)?.into_iter().enumerate() {
                let p = match a.digits {
                    Some(d) => p.rounded(d),
                    None => p,
                };
                t.push(vec![
                    (rank + 1).to_string(),
                    p.index.to_string(),
                    fmt_f64(p.frequency),
                    p.period.map(fmt_f64).unwrap_or_default(),
                    fmt_f64(p.ordinate),
                    fmt_f64(p.ci_lower),
                    fmt_f64(p.ci_upper),
                ]);
            }
            t.write(a.out.out.as_deref())
        }
        Command::Bounds(a) => {
            let kinds = a.window.map_or(WindowKind::ALL.to_vec(), |k| vec![k]);
            let mut t = Table::new(&BOUNDS_HEADER);
            for kind in kinds {
                bounds_row(&mut t, &truncation_bounds(kind, a.n, a.gap_rad)?);
            }
            t.write(a.out.out.as_deref())
        }
        Command::CompareCi(a) => {
            let c = ci_comparison_curves(a.n, a.pos, a.alpha)?;
            let mut t = Table::new(&[
                "series",
                "window",
                "label",
                "window_width",
                "truncation",
                "df",
                "ci_width",
            ]);
            for d in &c.dynamic {
                let df = 2.0 * d.window_width as f64;
                t.push(vec![
                    "dynamic".into(),
                    String::new(),
                    String::new(),
                    d.window_width.to_string(),
                    String::new(),
                    fmt_f64(df),
                    fmt_f64(d.ci_width),
                ]);
            }
            for s in &c.static_widths {
                t.push(vec![
                    "static".into(),
                    s.kind.name().into(),
                    s.label.into(),
                    String::new(),
                    s.truncation.to_string(),
                    fmt_f64(s.df),
                    fmt_f64(s.ci_width),
                ]);
            }
            t.write(a.out.out.as_deref())
        }
        Command::Pvalue(a) => {
            let mut t = Table::new(&["greater", "less"]);
            t.push(vec![
                fmt_f64(p_value_greater(a.f1, a.f2, a.nu)?),
                fmt_f64(p_value_less(a.f1, a.f2, a.nu)?),
            ]);
            t.write(a.out.out.as_deref())
        }
        Command::Protocol(a) => {
            let y = a.input.load()?;
            let config = ProtocolConfig {
                adaptive: a.adaptive.spec()?,
                m: a.kz.m,
                k: a.kz.k,
                preferred_kind: a.window,
                alpha: a.adaptive.alpha,
                top: a.top,
            };
            let report = run_two_step(&y, &config)?;
            let (source, window, truncation) = match report.chosen {
                Some((kind, m)) => ("static", kind.name().to_string(), m.to_string()),
                None => ("dynamic", String::new(), String::new()),
            };
            let mut t = Table::new(&[
                "frequency",
                "source",
                "window",
                "truncation",
                "min_gap_rad",
                "fallback",
                "amplitude",
                "amplitude_lower",
                "amplitude_upper",
                "log_ci_lower",
                "log_ci_upper",
                "dynamic_amplitude",
                "dynamic_amplitude_lower",
                "dynamic_amplitude_upper",
            ]);
            for (s, d) in report.strengths.iter().zip(&report.dynamic_strengths) {
                let amp = |e: &StrengthEstimate| {
                    [
                        fmt_f64(e.amplitude),
                        fmt_f64(e.amplitude_ci.0),
                        fmt_f64(e.amplitude_ci.1),
                    ]
                };
                let mut row = vec![
                    fmt_f64(s.frequency),
                    source.into(),
                    window.clone(),
                    truncation.clone(),
                    fmt_f64(report.min_gap.value()),
                    report.fallback_used.to_string(),
                ];
                row.extend(amp(s));
                row.extend([fmt_f64(s.log_ci.0), fmt_f64(s.log_ci.1)]);
                row.extend(amp(d));
                t.push(row);
            }
            t.write(a.out.out.as_deref())?;
            if let Some(path) = a.plot.as_deref() {
                render_plot(report.static_estimate.as_ref().unwrap_or(&report.dynamic), path)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kzp: error: {e}");
            ExitCode::FAILURE
        }
    }
}
