//! Minimal SVG boxplots.

use std::fmt::Write as _;
use std::path::Path;

use infodensity_core::stats::DescriptiveStats;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotSeries {
    pub label: String,
    pub stats: DescriptiveStats,
}

/// Right-hand axis showing `target * v / reference_mean` for each left value `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondaryAxis {
    pub label: String,
    pub reference_mean: f64,
    pub target: f64,
}

impl SecondaryAxis {
    pub fn map(&self, v: f64) -> f64 {
        self.target * (v / self.reference_mean)
    }
}

const BOX_WIDTH: f64 = 48.0;
const SLOT: f64 = 90.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 80.0;
const TOP: f64 = 40.0;
const PLOT_HEIGHT: f64 = 300.0;
const BOTTOM: f64 = 50.0;

fn nice_step(span: f64, target_ticks: f64) -> f64 {
    let raw = span / target_ticks;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo, 6.0);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders one box per series. Coordinates are printed with two decimals so
/// output is byte-stable.
pub fn render_boxplot(
    series: &[BoxplotSeries],
    title: &str,
    secondary: Option<&SecondaryAxis>,
) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Usage("nothing to plot".into()));
    }
    if let Some(ax) = secondary {
        if !(ax.reference_mean.is_finite() && ax.reference_mean != 0.0) {
            return Err(Error::Usage(
                "secondary axis reference mean must be finite and non-zero".into(),
            ));
        }
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in series {
        lo = lo.min(s.stats.min).min(s.stats.mean);
        hi = hi.max(s.stats.max).max(s.stats.mean);
    }
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let pad = (hi - lo) * 0.05;
    let (lo, hi) = (lo - pad, hi + pad);

    let width = LEFT + SLOT * series.len() as f64 + RIGHT;
    let height = TOP + PLOT_HEIGHT + BOTTOM;
    let y = |v: f64| TOP + (hi - v) / (hi - lo) * PLOT_HEIGHT;
    let x_right = width - RIGHT;

    let mut o = String::new();
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        o,
        r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );
    let _ = writeln!(
        o,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        width / 2.0,
        escape(title)
    );
    let _ = writeln!(
        o,
        r#"<line class="axis" x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{:.2}" stroke="black"/>"#,
        TOP + PLOT_HEIGHT
    );
    for t in ticks(lo, hi) {
        let _ = writeln!(
            o,
            r#"<line x1="{:.2}" y1="{yt:.2}" x2="{LEFT:.2}" y2="{yt:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y(t) + 4.0,
            fmt_tick(t),
            yt = y(t)
        );
    }
    if let Some(ax) = secondary {
        let _ = writeln!(
            o,
            r#"<line class="axis secondary" x1="{x_right:.2}" y1="{TOP:.2}" x2="{x_right:.2}" y2="{:.2}" stroke="black"/>"#,
            TOP + PLOT_HEIGHT
        );
        let (a, b) = (ax.map(lo), ax.map(hi));
        for t in ticks(a.min(b), a.max(b)) {
            // invert the linear map to place the tick on the left scale
            let v = t * ax.reference_mean / ax.target;
            let _ = writeln!(
                o,
                r#"<line x1="{x_right:.2}" y1="{yt:.2}" x2="{:.2}" y2="{yt:.2}" stroke="black"/><text x="{:.2}" y="{:.2}">{}</text>"#,
                x_right + 5.0,
                x_right + 8.0,
                y(v) + 4.0,
                fmt_tick(t),
                yt = y(v)
            );
        }
        let _ = writeln!(
            o,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" transform="rotate(90 {:.2} {:.2})">{}</text>"#,
            width - 15.0,
            TOP + PLOT_HEIGHT / 2.0,
            width - 15.0,
            TOP + PLOT_HEIGHT / 2.0,
            escape(&ax.label)
        );
    }

    for (i, s) in series.iter().enumerate() {
        let st = &s.stats;
        let cx = LEFT + SLOT * (i as f64 + 0.5);
        let (x0, x1) = (cx - BOX_WIDTH / 2.0, cx + BOX_WIDTH / 2.0);
        let _ = writeln!(o, r#"<g class="series" data-label="{}">"#, escape(&s.label));
        let _ = writeln!(
            o,
            r#"<line class="whisker" x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/>"#,
            y(st.whisker_high),
            y(st.q3)
        );
        let _ = writeln!(
            o,
            r#"<line class="whisker" x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/>"#,
            y(st.q1),
            y(st.whisker_low)
        );
        for w in [st.whisker_low, st.whisker_high] {
            let _ = writeln!(
                o,
                r#"<line class="cap" x1="{:.2}" y1="{yw:.2}" x2="{:.2}" y2="{yw:.2}" stroke="black"/>"#,
                cx - BOX_WIDTH / 4.0,
                cx + BOX_WIDTH / 4.0,
                yw = y(w)
            );
        }
        let _ = writeln!(
            o,
            r#"<rect class="box" x="{x0:.2}" y="{:.2}" width="{BOX_WIDTH:.2}" height="{:.2}" fill="none" stroke="black" data-q1="{}" data-q3="{}"/>"#,
            y(st.q3),
            y(st.q1) - y(st.q3),
            st.q1,
            st.q3
        );
        let _ = writeln!(
            o,
            r#"<line class="median" x1="{x0:.2}" y1="{ym:.2}" x2="{x1:.2}" y2="{ym:.2}" stroke="orange" stroke-width="2" data-median="{}"/>"#,
            st.median,
            ym = y(st.median)
        );
        let _ = writeln!(
            o,
            r#"<rect class="mean" x="{:.2}" y="{:.2}" width="6" height="6" fill="red" data-mean="{}"/>"#,
            cx - 3.0,
            y(st.mean) - 3.0,
            st.mean
        );
        for v in &st.outliers {
            let _ = writeln!(
                o,
                r#"<circle class="outlier" cx="{cx:.2}" cy="{:.2}" r="3" fill="none" stroke="black"/>"#,
                y(*v)
            );
        }
        let _ = writeln!(
            o,
            r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + PLOT_HEIGHT + 20.0,
            escape(&s.label)
        );
        let _ = writeln!(o, "</g>");
    }
    o.push_str("</svg>\n");
    Ok(o)
}

pub fn write_boxplot(
    path: &Path,
    series: &[BoxplotSeries],
    title: &str,
    secondary: Option<&SecondaryAxis>,
) -> Result<()> {
    let svg = render_boxplot(series, title, secondary)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
