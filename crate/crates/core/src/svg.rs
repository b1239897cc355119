//! Static SVG rendering of a graph signal.
//!
//! Vertices are drawn as circles at their coordinates and colored with a
//! blue–white–red diverging map: the signal minimum maps to `#3b4cc0`, the
//! midpoint of `[min, max]` to white, the maximum to `#b40426`. A constant
//! signal is drawn entirely in the midpoint color. Edges are gray lines.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::graph::Graph;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 16.0;
const LOW: [f64; 3] = [59.0, 76.0, 192.0];
const MID: [f64; 3] = [255.0, 255.0, 255.0];
const HIGH: [f64; 3] = [180.0, 4.0, 38.0];

/// Color for `t ∈ [0, 1]` on the diverging map.
pub fn diverging_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (from, to, u) = if t < 0.5 {
        (LOW, MID, t * 2.0)
    } else {
        (MID, HIGH, (t - 0.5) * 2.0)
    };
    let c: Vec<u8> = (0..3)
        .map(|i| (from[i] + (to[i] - from[i]) * u).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

pub fn render_svg(g: &Graph, x: &DVector<f64>) -> Result<String> {
    let coords = g.coords().ok_or(Error::MissingCoordinates)?;
    if x.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch {
            op: "render_svg",
            expected: format!("signal of length {}", g.num_vertices()),
            got: x.len().to_string(),
        });
    }
    let (lo, hi) = (x.min(), x.max());
    let span = hi - lo;
    let place = |p: [f64; 2]| {
        let usable = SIZE - 2.0 * MARGIN;
        (MARGIN + p[0] * usable, MARGIN + (1.0 - p[1]) * usable)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"<g stroke="#999999" stroke-width="0.8">"##);
    for e in g.edges() {
        let (x1, y1) = place(coords[e.u]);
        let (x2, y2) = place(coords[e.v]);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        );
    }
    out.push_str("</g>\n<g stroke=\"#333333\" stroke-width=\"0.5\">\n");
    for (i, &p) in coords.iter().enumerate() {
        let t = if span > 0.0 { (x[i] - lo) / span } else { 0.5 };
        let (cx, cy) = place(p);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="5" fill="{}"/>"#,
            diverging_color(t)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn emit_svg(g: &Graph, x: &DVector<f64>, path: &Path) -> Result<()> {
    fs::write(path, render_svg(g, x)?)?;
    Ok(())
}
