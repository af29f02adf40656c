//! Deterministic CSV and SVG renderings of projected loops.

use nilgeo::geometry::PlanarLoop;
use std::fmt::Write as _;

/// One `x,y` row per vertex.
pub fn loop_to_csv(poly: &PlanarLoop) -> String {
    let mut out = String::new();
    for (x, y) in poly.points() {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

const SVG_STEP: i64 = 40;
const SVG_MARGIN: i64 = 60;

/// A single polyline, 40 units per lattice step, in an origin-centered
/// viewBox. Byte output is a pure function of the loop.
pub fn loop_to_svg(poly: &PlanarLoop) -> String {
    let extent = poly
        .points()
        .iter()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .max()
        .unwrap_or(0)
        * SVG_STEP
        + SVG_MARGIN;
    let size = 2 * extent;
    let points: Vec<String> = poly
        .points()
        .iter()
        .map(|&(x, y)| format!("{},{}", x * SVG_STEP, -y * SVG_STEP))
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        -extent, -extent, size, size
    );
    let _ = writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"4\" stroke-linejoin=\"round\"/>",
        points.join(" ")
    );
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_match_vertices() {
        let poly = PlanarLoop::new(vec![(0, 0), (1, 0), (1, 1), (0, 0)]);
        assert_eq!(loop_to_csv(&poly), "0,0\n1,0\n1,1\n0,0\n");
    }

    #[test]
    fn svg_is_deterministic_and_flips_y() {
        let poly = PlanarLoop::new(vec![(0, 0), (1, 2), (0, 0)]);
        let a = loop_to_svg(&poly);
        let b = loop_to_svg(&poly);
        assert_eq!(a, b);
        assert!(a.contains("40,-80"));
        assert!(a.contains("viewBox=\"-140 -140 280 280\""));
    }
}
