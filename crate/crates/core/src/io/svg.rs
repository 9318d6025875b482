//! Minimal SVG rendering for line and grouped-bar charts. Output depends
//! only on the input numbers, so a chart can be regenerated byte for byte.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

pub struct Bar<'a> {
    pub label: &'a str,
    pub mean: f64,
    pub std: f64,
}

pub struct Panel<'a> {
    pub title: &'a str,
    pub bars: Vec<Bar<'a>>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Compact tick label: 1.2e9 -> "1.2e9", 350 -> "350".
fn label(v: f64) -> String {
    if v == 0.0 {
        "0".to_owned()
    } else if v.abs() >= 1e5 || v.abs() < 1e-2 {
        format!("{v:.2e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let lo = lo.min(0.0);
    if hi <= lo {
        (lo, lo + 1.0)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

/// Line chart of one or more series sharing both axes.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series<'_>]) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let (x_lo, x_hi) = bounds(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y_lo, y_hi) = bounds(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, x_label, y_label, (x_lo, x_hi), (y_lo, y_hi));
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        let ly = MARGIN_TOP + 16.0 * i as f64;
        let lx = WIDTH - MARGIN_RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="3"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 18.0,
            lx + 24.0,
            ly + 4.0,
            escape(s.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn axes(out: &mut String, x_label: &str, y_label: &str, x: (f64, f64), y: (f64, f64)) {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let bottom = MARGIN_TOP + plot_h;
    let _ = writeln!(
        out,
        r#"<path d="M{MARGIN_LEFT:.2},{MARGIN_TOP:.2} V{bottom:.2} H{:.2}" fill="none" stroke="black"/>"#,
        MARGIN_LEFT + plot_w
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let px = MARGIN_LEFT + f * plot_w;
        let py = bottom - f * plot_h;
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 16.0,
            label(x.0 + f * (x.1 - x.0))
        );
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN_LEFT:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            MARGIN_LEFT + plot_w,
            MARGIN_LEFT - 6.0,
            py + 4.0,
            label(y.0 + f * (y.1 - y.0))
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(y_label)
    );
}

/// Side-by-side panels of bars with one-standard-deviation whiskers.
pub fn grouped_bar_chart(title: &str, panels: &[Panel<'_>]) -> String {
    let panel_w = (WIDTH - 40.0) / panels.len().max(1) as f64;
    let top = MARGIN_TOP + 24.0;
    let plot_h = HEIGHT - top - 70.0;
    let bottom = top + plot_h;

    let mut out = String::new();
    header(&mut out, title);
    for (p, panel) in panels.iter().enumerate() {
        let x0 = 20.0 + p as f64 * panel_w;
        let (lo, hi) = bounds(panel.bars.iter().flat_map(|b| [b.mean + b.std, b.mean - b.std, b.mean]));
        let sy = |v: f64| bottom - (v - lo) / (hi - lo) * plot_h;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
            x0 + panel_w / 2.0,
            top - 8.0,
            escape(panel.title)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{bottom:.2}" x2="{:.2}" y2="{bottom:.2}" stroke="black"/><text x="{:.2}" y="{:.2}">{}</text><text x="{:.2}" y="{:.2}">{}</text>"#,
            x0 + 10.0,
            x0 + panel_w - 10.0,
            x0 + 2.0,
            top + 10.0,
            label(hi),
            x0 + 2.0,
            bottom - 2.0,
            label(lo)
        );
        let slot = (panel_w - 20.0) / panel.bars.len().max(1) as f64;
        for (i, bar) in panel.bars.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let bx = x0 + 10.0 + i as f64 * slot + slot * 0.15;
            let bw = slot * 0.7;
            let (y_mean, y_zero) = (sy(bar.mean), sy(lo.max(0.0).min(hi)));
            let _ = writeln!(
                out,
                r#"<rect x="{bx:.2}" y="{:.2}" width="{bw:.2}" height="{:.2}" fill="{color}"/>"#,
                y_mean.min(y_zero),
                (y_zero - y_mean).abs()
            );
            let cx = bx + bw / 2.0;
            let _ = writeln!(
                out,
                r#"<line x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="black"/>"#,
                sy(bar.mean + bar.std),
                sy(bar.mean - bar.std)
            );
            let _ = writeln!(
                out,
                r#"<text x="{cx:.2}" y="{:.2}" text-anchor="end" transform="rotate(-45 {cx:.2} {:.2})">{}</text>"#,
                bottom + 14.0,
                bottom + 14.0,
                escape(bar.label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
