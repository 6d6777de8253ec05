//! SVG drawings of graph expansions: vertices on a circle, edges as arcs
//! bent apart when parallel, loops as small circles outside.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use replacement::GraphExpansion;

const SIZE: f64 = 800.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn expansion_svg(g: &GraphExpansion) -> String {
    let verts: Vec<_> = g.vertices().collect();
    let n = verts.len().max(1) as f64;
    let (c, r) = (SIZE / 2.0, SIZE * 0.38);
    let pos: BTreeMap<_, (f64, f64)> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = std::f64::consts::TAU * i as f64 / n - std::f64::consts::FRAC_PI_2;
            (*v, (c + r * t.cos(), c + r * t.sin()))
        })
        .collect();
    let mut s = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n  <title>{}</title>\n",
        escape(&g.system().name)
    );
    let mut seen: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (w, e) in g.edges() {
        let (a, b) = (pos[&e.from], pos[&e.to]);
        let color = escape(&e.color);
        let label = escape(&w.to_string());
        if e.from == e.to {
            let k = seen.entry((e.from.to_string(), e.to.to_string())).or_insert(0);
            let (dx, dy) = (a.0 - c, a.1 - c);
            let len = (dx * dx + dy * dy).sqrt().max(1.0);
            let rad = 14.0 + 8.0 * *k as f64;
            let (x, y) = (a.0 + dx / len * rad, a.1 + dy / len * rad);
            *k += 1;
            let _ = writeln!(
                s,
                "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{rad:.2}\" fill=\"none\" stroke=\"{color}\"><title>{label}</title></circle>"
            );
            continue;
        }
        let key = if e.from < e.to {
            (e.from.to_string(), e.to.to_string())
        } else {
            (e.to.to_string(), e.from.to_string())
        };
        let k = seen.entry(key).or_insert(0);
        // Alternate sides, growing bends for further parallel edges.
        let bend = if *k == 0 {
            0.0
        } else {
            18.0 * (*k as f64 + 1.0).div_euclid(2.0) * if *k % 2 == 1 { 1.0 } else { -1.0 }
        };
        *k += 1;
        let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let (qx, qy) = (mx - dy / len * bend, my + dx / len * bend);
        let _ = writeln!(
            s,
            "  <path d=\"M {:.2} {:.2} Q {qx:.2} {qy:.2} {:.2} {:.2}\" fill=\"none\" stroke=\"{color}\"><title>{label}</title></path>",
            a.0, a.1, b.0, b.1
        );
    }
    for (v, (x, y)) in &pos {
        let _ = writeln!(
            s,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"><title>{}</title></circle>",
            escape(&v.to_string())
        );
    }
    s.push_str("</svg>\n");
    s
}
