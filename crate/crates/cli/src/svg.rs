//! Self-contained SVG polyline plots.

use std::fmt::Write;

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
const PAD: f64 = 56.0;

/// Line colors in order, one per curve of a figure.
pub const COLORS: [&str; 5] = ["blue", "green", "black", "orange", "red"];

pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
}

/// Data bounds widened by 5% on each side; a flat range gets unit width.
fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    (lo - 0.05 * span, hi + 0.05 * span)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let finite = |v: &f64| v.is_finite();
    let (x0, x1) = bounds(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0))
            .filter(finite),
    );
    let (y0, y1) = bounds(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1))
            .filter(finite),
    );
    let (pw, ph) = (WIDTH - 2.0 * PAD, HEIGHT - 2.0 * PAD);
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| HEIGHT - PAD - (y - y0) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{PAD}" y="{PAD}" width="{pw}" height="{ph}" fill="none" stroke="gray" stroke-width="1"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        PAD / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
    for (v, anchor, x, y) in [
        (x0, "start", PAD, HEIGHT - PAD + 16.0),
        (x1, "end", WIDTH - PAD, HEIGHT - PAD + 16.0),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for (v, y) in [(y0, HEIGHT - PAD), (y1, PAD + 10.0)] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}" text-anchor="end">{v:.3}</text>"#,
            PAD - 4.0
        );
    }
    for s in series {
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"/>"#,
            s.color,
            pts.join(" ")
        );
    }
    for (i, s) in series.iter().enumerate() {
        let y = PAD + 16.0 + 16.0 * i as f64;
        let x = WIDTH - PAD - 110.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>"#,
            y - 4.0,
            x + 18.0,
            y - 4.0,
            s.color
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}">{}</text>"#,
            x + 24.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}
