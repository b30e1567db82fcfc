//! Deterministic SVG rendering of a region and, optionally, the spectrum
//! that produced it.
//!
//! The drawing is a pure function of its inputs: a 600x600 canvas, a square
//! bounding box padded by 10%, and the usual y-flip from mathematical to
//! screen coordinates.

use crate::geometry::{CPoint, ConvexRegion};
use crate::spectrum::NormalSpectrum;
use std::fmt::Write as _;

const CANVAS: f64 = 600.0;
const PAD_FRACTION: f64 = 0.10;

struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[CPoint]) -> Frame {
        let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo_x = lo_x.min(p.re);
            hi_x = hi_x.max(p.re);
            lo_y = lo_y.min(p.im);
            hi_y = hi_y.max(p.im);
        }
        if points.is_empty() {
            (lo_x, hi_x, lo_y, hi_y) = (-1.0, 1.0, -1.0, 1.0);
        }
        let cx = 0.5 * (lo_x + hi_x);
        let cy = 0.5 * (lo_y + hi_y);
        let half = 0.5 * (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
        let half = half * (1.0 + 2.0 * PAD_FRACTION);
        Frame {
            cx,
            cy,
            scale: CANVAS / (2.0 * half),
        }
    }

    fn map(&self, p: CPoint) -> (f64, f64) {
        (
            CANVAS / 2.0 + (p.re - self.cx) * self.scale,
            CANVAS / 2.0 - (p.im - self.cy) * self.scale,
        )
    }
}

fn fmt_coord(x: f64) -> String {
    format!("{x:.2}")
}

/// Render `region`, and the eigenvalues of `spectrum` if given, as a
/// standalone SVG document.
pub fn render_svg(region: &ConvexRegion, spectrum: Option<&NormalSpectrum>) -> String {
    let mut anchors: Vec<CPoint> = region.vertices();
    if let Some(sp) = spectrum {
        anchors.extend(sp.entries().iter().map(|e| e.value));
    }
    let frame = Frame::fit(&anchors);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS}\" height=\"{CANVAS}\" \
         viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>"
    );

    match region {
        ConvexRegion::Empty => {
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"monospace\" \
                 font-size=\"16\" fill=\"#888\">empty region</text>",
                CANVAS / 2.0,
                CANVAS / 2.0
            );
        }
        ConvexRegion::Point(z) => {
            let (x, y) = frame.map(*z);
            let _ = writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f77b4\"/>",
                fmt_coord(x),
                fmt_coord(y)
            );
        }
        ConvexRegion::Segment(a, b) => {
            let (x1, y1) = frame.map(*a);
            let (x2, y2) = frame.map(*b);
            let _ = writeln!(
                out,
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f77b4\" \
                 stroke-width=\"2.5\" stroke-linecap=\"round\"/>",
                fmt_coord(x1),
                fmt_coord(y1),
                fmt_coord(x2),
                fmt_coord(y2)
            );
        }
        ConvexRegion::Polygon(vs) => {
            let pts: Vec<String> = vs
                .iter()
                .map(|v| {
                    let (x, y) = frame.map(*v);
                    format!("{},{}", fmt_coord(x), fmt_coord(y))
                })
                .collect();
            let _ = writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"#1f77b4\" fill-opacity=\"0.3\" \
                 stroke=\"#1f77b4\" stroke-width=\"1.5\"/>",
                pts.join(" ")
            );
        }
    }

    if let Some(sp) = spectrum {
        const R: f64 = 4.0;
        for e in sp.entries() {
            let (x, y) = frame.map(e.value);
            // Three crossed strokes make a small asterisk marker.
            for (dx, dy) in [(R, 0.0), (R * 0.5, R * 0.866), (R * 0.5, -R * 0.866)] {
                let _ = writeln!(
                    out,
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" \
                     stroke-width=\"1.2\"/>",
                    fmt_coord(x - dx),
                    fmt_coord(y - dy),
                    fmt_coord(x + dx),
                    fmt_coord(y + dy)
                );
            }
            if e.multiplicity > 1 {
                let _ = writeln!(
                    out,
                    "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" \
                     fill=\"#d62728\">x{}</text>",
                    fmt_coord(x + R + 2.0),
                    fmt_coord(y - R),
                    e.multiplicity
                );
            }
        }
    }

    out.push_str("</svg>\n");
    out
}
