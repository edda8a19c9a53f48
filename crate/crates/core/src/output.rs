//! CSV tables and small hand-written SVG plots.

use std::fmt::Write as _;
use std::io::Write;

use crate::families::ScanRecord;
use crate::geometry::Shape;
use crate::{Error, Real, Result};

pub const SCAN_HEADER: &str = "param,delta,lambda0,lambda,ratio";

/// Scan records as CSV with header [`SCAN_HEADER`]; a missing `lambda` is
/// an empty field.
pub fn write_scan_csv<T: Real, W: Write>(records: &[ScanRecord<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(SCAN_HEADER.split(',')).map_err(io)?;
    for r in records {
        let f = |x: T| format!("{:.15e}", x.to_f64_lossy());
        w.write_record([f(r.param), f(r.delta), f(r.lambda0), r.lambda.map(f).unwrap_or_default(), f(r.ratio)])
            .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn scan_csv<T: Real>(records: &[ScanRecord<T>]) -> String {
    let mut buf = Vec::new();
    write_scan_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// One named curve of a line plot.
#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 4] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"];

fn extent(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) =
        vals.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

/// Line plot with axes, tick labels at the ends and a legend.
pub fn svg_line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let (x0, x1) = extent(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y0, y1) = extent(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let (ax, ay) = (sx(x0), sy(y0));
    let _ = writeln!(
        s,
        r#"<path d="M{ax:.2},{:.2} L{ax:.2},{ay:.2} L{:.2},{ay:.2}" stroke="black" fill="none"/>"#,
        sy(y1),
        sx(x1)
    );
    for (v, x) in [(x0, sx(x0)), (x1, sx(x1))] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
            ay + 16.0,
            tick(v)
        );
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
            ax - 6.0,
            y + 4.0,
            tick(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        W / 2.0,
        H - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ =
            writeln!(s, r#"<polyline points="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#, pts.join(" "));
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" text-anchor="end" fill="{color}" font-family="sans-serif" font-size="12">{}</text>"#,
            W - MARGIN,
            escape(&ser.name)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// The boundary of a shape with the unit circle for reference.
pub fn svg_shape<T: Real>(shape: &Shape<T>) -> String {
    let bb = shape.bbox();
    let f = |x: T| x.to_f64_lossy();
    let half = [f(bb.min.x).abs(), f(bb.max.x).abs(), f(bb.min.y).abs(), f(bb.max.y).abs(), 1.0]
        .into_iter()
        .fold(0.0, f64::max)
        * 1.1;
    let scale = (W.min(H) - 2.0 * MARGIN) / (2.0 * half);
    let (cx, cy) = (W / 2.0, H / 2.0);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<circle cx="{cx}" cy="{cy}" r="{scale:.3}" stroke="#999" stroke-dasharray="4 3" fill="none"/>"##
    );
    let step = shape.diameter() / T::lit(2000.0);
    for poly in shape.boundary_polylines(step) {
        let pts: Vec<String> =
            poly.iter().map(|p| format!("{:.2},{:.2}", cx + f(p.x) * scale, cy - f(p.y) * scale)).collect();
        let _ =
            writeln!(s, r##"<polyline points="{}" stroke="#1f5fa8" stroke-width="1.5" fill="none"/>"##, pts.join(" "));
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_csv_layout() {
        let rows = vec![ScanRecord::new(0.5, 0.2, 0.7, None), ScanRecord::new(0.6, 0.1, 0.5, Some(0.4))];
        let text = scan_csv(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SCAN_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].split(',').nth(3).unwrap().is_empty());
        assert_eq!(lines[2].split(',').count(), 5);
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let plot =
            svg_line_plot("a < b", "x", "y", &[Series { name: "s".into(), points: vec![(0.0, 1.0), (1.0, 2.0)] }]);
        assert!(plot.starts_with("<svg") && plot.trim_end().ends_with("</svg>"));
        assert!(plot.contains("a &lt; b") && plot.contains("<polyline"));
        let shape = svg_shape(&Shape::<f64>::unit_disk());
        assert_eq!(shape.matches("<polyline").count(), 1);
    }
}
