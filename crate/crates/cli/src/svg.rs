use std::fmt::Write;

use levelpeaks_core::oracle::TrajectorySample;
use levelpeaks_core::peak::{Peak, PeakKind};
use levelpeaks_core::rational::to_f64;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Static plot of a trajectory polyline with a marker per peak.
pub fn render(title: &str, trajectory: &TrajectorySample, peaks: &[Peak]) -> String {
    let xs: Vec<f64> = trajectory.breakpoints.iter().map(to_f64).collect();
    let ys: Vec<f64> = trajectory.values.iter().map(to_f64).collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#bbb"/>"##,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let points: Vec<String> = xs.iter().zip(&ys).map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(out, r##"<polyline fill="none" stroke="#222" stroke-width="1.5" points="{}"/>"##, points.join(" "));
    for p in peaks {
        let colour = match p.kind {
            PeakKind::Maximal => "#c0392b",
            PeakKind::Minimal => "#2471a3",
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{colour}"><title>{} ({}, {})</title></circle>"#,
            sx(to_f64(&p.at.x)),
            sy(to_f64(&p.at.y)),
            p.kind.as_str(),
            levelpeaks_core::format_rational(&p.at.x),
            levelpeaks_core::format_rational(&p.at.y),
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > 1e-12 {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
