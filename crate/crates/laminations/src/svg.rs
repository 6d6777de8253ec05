//! SVG rendering: the unit circle with one chord per leaf and polygon
//! classes filled.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use cyclic_order::Angle;

use crate::Lamination;

fn point(a: &Angle, size: f64) -> (f64, f64) {
    let r = size * 0.45;
    let t = TAU * a.to_f64();
    (size / 2.0 + r * t.cos(), size / 2.0 - r * t.sin())
}

/// An SVG 1.1 document `size` pixels square.
pub fn to_svg(lam: &Lamination, size: u32) -> String {
    let s = f64::from(size);
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <title>{} lamination, generation {}</title>\n\
         <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        lam.seed_kind(),
        lam.generation(),
        s / 2.0,
        s / 2.0,
        s * 0.45
    );
    for class in lam.classes().iter().filter(|c| c.len() >= 3) {
        let pts: Vec<String> = class
            .angles
            .iter()
            .map(|a| {
                let (x, y) = point(a, s);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"#9ab\" stroke=\"none\"/>",
            pts.join(" ")
        );
    }
    for leaf in lam.leaves() {
        let (a, b) = leaf.endpoints();
        let ((x1, y1), (x2, y2)) = (point(a, s), point(b, s));
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#234\" stroke-width=\"0.8\"><title>{leaf}</title></line>"
        );
    }
    out.push_str("</svg>\n");
    out
}
