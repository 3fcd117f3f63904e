//! Disk tilings as SVG: the unit disk fills a 1000×1000 viewport and every
//! octagon side is drawn as a true circular arc (or a straight segment for
//! diameters).

use std::fmt::Write;

use teich2_core::{Cell, Complex};

const SIZE: f64 = 1000.0;
const HALF: f64 = SIZE / 2.0;

fn screen(z: Complex) -> (f64, f64) {
    (HALF + HALF * z.re, HALF - HALF * z.im)
}

/// The geodesic through `z` and `w`: its circle centre and radius, or `None`
/// when the two points are collinear with the origin.
fn geodesic_circle(z: Complex, w: Complex) -> Option<(Complex, f64)> {
    let cross = z.re * w.im - z.im * w.re;
    if cross.abs() < 1e-12 {
        return None;
    }
    // centre c solves Re(c·conj(z)) = (1 + |z|²)/2 and likewise for w
    let (rz, rw) = ((1.0 + z.norm_sqr()) / 2.0, (1.0 + w.norm_sqr()) / 2.0);
    let cx = (rz * w.im - rw * z.im) / cross;
    let cy = (rw * z.re - rz * w.re) / cross;
    let c = Complex::new(cx, cy);
    Some((c, (c.norm_sqr() - 1.0).max(0.0).sqrt()))
}

fn side_command(out: &mut String, z: Complex, w: Complex) {
    let (x, y) = screen(w);
    match geodesic_circle(z, w) {
        Some((c, r)) if r * HALF < 1e7 => {
            // counterclockwise in the disk is clockwise on screen (y flipped),
            // which is SVG's sweep-flag 1
            let cross = (z - c).re * (w - c).im - (z - c).im * (w - c).re;
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let _ = write!(out, " A {:.4} {:.4} 0 0 {} {:.4} {:.4}", r * HALF, r * HALF, sweep, x, y);
        }
        _ => {
            let _ = write!(out, " L {x:.4} {y:.4}");
        }
    }
}

/// One `<path>` per cell, in the order given.
pub fn tiling_svg(cells: &[Cell]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        out,
        "<circle cx=\"{HALF}\" cy=\"{HALF}\" r=\"{HALF}\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    for cell in cells {
        let v = &cell.vertices;
        let (x0, y0) = screen(v[0]);
        let mut d = format!("M {x0:.4} {y0:.4}");
        for k in 0..8 {
            side_command(&mut d, v[k], v[(k + 1) % 8]);
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            "<path data-word=\"{}\" d=\"{}\" fill=\"none\" stroke=\"#234\" stroke-width=\"0.6\"/>",
            cell.word, d
        );
    }
    out.push_str("</svg>\n");
    out
}
