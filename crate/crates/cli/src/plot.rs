//! Bare SVG 1.1 scatter and line plots.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Scatter,
    Line,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn svg(points: &[(f64, f64)], mode: Mode, xlabel: &str, ylabel: &str) -> String {
    let pts: Vec<(f64, f64)> = points.iter().copied().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    let (x0, x1) = span(pts.iter().map(|p| p.0));
    let (y0, y1) = span(pts.iter().map(|p| p.1));
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let (bx, by) = (PAD, H - PAD);
    let _ = writeln!(s, r#"<polyline points="{bx},{PAD} {bx},{by} {},{by}" fill="none" stroke="black"/>"#, W - PAD);
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{y:.1}" font-size="11" text-anchor="{anchor}">{text}</text>"#);
    };
    label(&mut s, bx, by + 16.0, "middle", &format!("{x0:.4}"));
    label(&mut s, W - PAD, by + 16.0, "middle", &format!("{x1:.4}"));
    label(&mut s, bx - 4.0, by, "end", &format!("{y0:.4}"));
    label(&mut s, bx - 4.0, PAD + 4.0, "end", &format!("{y1:.4}"));
    label(&mut s, W / 2.0, H - 10.0, "middle", &escape(xlabel));
    label(&mut s, 14.0, H / 2.0, "middle", &escape(ylabel));
    match mode {
        Mode::Scatter => {
            for &(x, y) in &pts {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="steelblue"/>"#, sx(x), sy(y));
            }
        }
        Mode::Line => {
            let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="steelblue"/>"#, path.join(" "));
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
