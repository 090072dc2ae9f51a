//! Mean-centered SVG plot of a smoothed periodogram and its confidence band.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use kzp_core::SmoothedPeriodogram;

use crate::error::Result;
use crate::table::io_error;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;

/// The three curves shifted by the mean of the smoothed ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotDocument {
    pub frequencies: Vec<f64>,
    pub center: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub y_range: (f64, f64),
}

impl PlotDocument {
    pub fn from_smoothed(sp: &SmoothedPeriodogram) -> Self {
        let mean = sp.ordinates.iter().sum::<f64>() / sp.len() as f64;
        let shift = |v: &[f64]| v.iter().map(|x| x - mean).collect::<Vec<_>>();
        let upper = shift(&sp.ci_upper);
        let lower = shift(&sp.ci_lower);
        let y_min = lower.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
        let y_max = upper.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
        Self {
            frequencies: sp.grid.frequencies().to_vec(),
            center: shift(&sp.ordinates),
            upper,
            lower,
            y_range: (y_min, y_max),
        }
    }

    pub fn to_svg(&self) -> String {
        let f_min = self.frequencies.first().copied().unwrap_or(0.0);
        let f_max = self
            .frequencies
            .last()
            .copied()
            .unwrap_or(0.5)
            .max(f_min + f64::EPSILON);
        let (y_min, y_max) = self.y_range;
        let px = |f: f64| MARGIN + (f - f_min) / (f_max - f_min) * (WIDTH - 2.0 * MARGIN);
        let py = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-ymin="{y_min:e}" data-ymax="{y_max:e}">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let (x0, x1, yb, yt) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
        let _ = writeln!(
            svg,
            r#"<path d="M{x0},{yt} L{x0},{yb} L{x1},{yb}" fill="none" stroke="gray" stroke-width="1"/>"#
        );
        for (name, color, curve) in [
            ("upper", "blue", &self.upper),
            ("lower", "red", &self.lower),
            ("center", "black", &self.center),
        ] {
            let mut points = String::new();
            for (f, y) in self.frequencies.iter().zip(curve.iter()) {
                let _ = write!(points, "{:.3},{:.3} ", px(*f), py(*y));
            }
            let _ = writeln!(
                svg,
                r#"<polyline class="{name}" points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
                points.trim_end()
            );
        }
        for (value, anchor_x, anchor) in [(f_min, x0, "start"), (f_max, x1, "end")] {
            let _ = writeln!(
                svg,
                r#"<text x="{anchor_x}" y="{}" font-size="12" text-anchor="{anchor}">{value:.3}</text>"#,
                yb + 16.0
            );
        }
        for (value, y) in [(y_min, yb), (y_max, yt)] {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{y}" font-size="12" text-anchor="end">{value:.2}</text>"#,
                x0 - 4.0
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">Frequency</text>"#,
            WIDTH / 2.0,
            HEIGHT - 15.0
        );
        svg.push_str("</svg>\n");
        svg
    }
}

pub fn render_plot(sp: &SmoothedPeriodogram, path: &Path) -> Result<()> {
    fs::write(path, PlotDocument::from_smoothed(sp).to_svg()).map_err(|source| io_error(path, source))
}
