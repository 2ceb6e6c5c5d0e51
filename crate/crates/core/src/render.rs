//! SVG drawing of diagrams.
//!
//! Every edge is subdivided twice so loops and parallel edges become simple
//! paths. The edge points of a face of largest degree are pinned to a
//! circle; the remaining points, crossings included, are placed by
//! barycentric (Tutte) relaxation. Each crossing gets one `under-gap` mark:
//! a background-colored stroke that interrupts the under-strand, after
//! which the over-strand is redrawn on top.

use std::fmt::Write as _;

use crate::diagram::{Dart, Diagram};

const RADIUS: f64 = 120.0;
const MARGIN: f64 = 20.0;
const GAP: f64 = 9.0;
const RELAX_ROUNDS: usize = 3000;
const PALETTE: [&str; 6] = [
    "#1f4e9c", "#c0392b", "#1e8449", "#8e44ad", "#d68910", "#117a65",
];

type Point = (f64, f64);

/// Point layout of one connected piece: crossing `c` sits at `pos[c]`, the
/// point of dart `x` near its crossing at `pos[n + x]`.
fn layout(d: &Diagram) -> Vec<Point> {
    let n = d.crossing_count();
    let total = n + d.dart_count();
    let cross = |x: Dart| x.crossing();
    let near = |x: Dart| n + x.index();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for x in d.darts() {
        adj[cross(x)].push(near(x));
        adj[near(x)].push(cross(x));
        adj[near(x)].push(near(d.partner(x)));
    }

    let outer = d
        .faces()
        .into_iter()
        .max_by_key(|f| f.degree())
        .expect("a diagram with crossings has faces");
    let mut ring: Vec<usize> = Vec::new();
    for &x in &outer.corners {
        // Crossings stay free so that each is drawn as a true crossing.
        for v in [near(x), near(d.partner(x))] {
            if !ring.contains(&v) {
                ring.push(v);
            }
        }
    }

    let mut pos = vec![(0.0, 0.0); total];
    let mut fixed = vec![false; total];
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        // Clockwise around the outside keeps the counterclockwise slot
        // order of interior crossings.
        let t = -2.0 * std::f64::consts::PI * i as f64 / k;
        pos[v] = (RADIUS * t.cos(), RADIUS * t.sin());
        fixed[v] = true;
    }
    for _ in 0..RELAX_ROUNDS {
        for v in 0..total {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let m = adj[v].len() as f64;
            let (sx, sy) = adj[v]
                .iter()
                .fold((0.0, 0.0), |(a, b), &u| (a + pos[u].0, b + pos[u].1));
            pos[v] = (sx / m, sy / m);
        }
    }
    pos
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn unit(v: Point) -> Point {
    let len = (v.0 * v.0 + v.1 * v.1).sqrt();
    if len < 1e-9 {
        (1.0, 0.0)
    } else {
        (v.0 / len, v.1 / len)
    }
}

fn along(a: Point, dir: Point, r: f64) -> Point {
    (a.0 + dir.0 * r, a.1 + dir.1 * r)
}

fn fmt_pt(p: Point, off: Point) -> String {
    format!("{:.2},{:.2}", p.0 + off.0, p.1 + off.1)
}

fn draw_piece(d: &Diagram, off: Point, out: &mut String) {
    let n = d.crossing_count();
    let pos = layout(d);
    let ids = d.strand_ids();
    let at = |x: Dart| pos[x.crossing()];
    let near = |x: Dart| pos[n + x.index()];
    let color = |x: Dart| PALETTE[ids[x.index()] % PALETTE.len()];
    // Opposite darts leave a crossing in opposite directions, so each
    // strand passes straight through.
    let heading = |x: Dart| {
        let a = unit(sub(near(x), at(x)));
        let b = unit(sub(near(x.opposite()), at(x)));
        unit(sub(a, b))
    };

    for x in d.darts() {
        let y = d.partner(x);
        if x > y {
            continue;
        }
        let (p, q) = (at(x), at(y));
        let span = {
            let v = sub(near(x), p);
            let w = sub(near(y), q);
            ((v.0 * v.0 + v.1 * v.1).sqrt() + (w.0 * w.0 + w.1 * w.1).sqrt()).max(12.0)
        };
        let _ = writeln!(
            out,
            r#"  <path class="strand" stroke="{}" d="M {} C {} {} {}"/>"#,
            color(x),
            fmt_pt(p, off),
            fmt_pt(along(p, heading(x), span), off),
            fmt_pt(along(q, heading(y), span), off),
            fmt_pt(q, off),
        );
    }
    for c in 0..n {
        let centre = pos[c];
        let u = heading(Dart::new(c, 0));
        let o = heading(Dart::new(c, 1));
        let _ = writeln!(
            out,
            r#"  <path class="under-gap" d="M {} L {}"/>"#,
            fmt_pt(along(centre, u, GAP), off),
            fmt_pt(along(centre, u, -GAP), off),
        );
        let _ = writeln!(
            out,
            r#"  <path class="strand over" stroke="{}" d="M {} L {}"/>"#,
            color(Dart::new(c, 1)),
            fmt_pt(along(centre, o, GAP * 1.4), off),
            fmt_pt(along(centre, o, -GAP * 1.4), off),
        );
    }
}

/// SVG 1.1 document for `d`. Split diagrams are drawn piece by piece from
/// left to right, free circles last.
pub fn render_svg(d: &Diagram) -> String {
    let pieces = d.pieces();
    let cell = 2.0 * (RADIUS + MARGIN);
    let count = (pieces.len() + d.free_loops()).max(1);
    let width = cell * count as f64;
    let mut body = String::new();
    for (i, p) in pieces.iter().enumerate() {
        draw_piece(p, (cell * i as f64 + cell / 2.0, cell / 2.0), &mut body);
    }
    for j in 0..d.free_loops() {
        let cx = cell * (pieces.len() + j) as f64 + cell / 2.0;
        let _ = writeln!(
            body,
            r#"  <circle class="strand" stroke="{}" cx="{cx:.2}" cy="{:.2}" r="{RADIUS:.2}"/>"#,
            PALETTE[j % PALETTE.len()],
            cell / 2.0,
        );
    }
    format!(
        r##"<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{cell:.0}" viewBox="0 0 {width:.0} {cell:.0}">
  <title>{n}-crossing diagram</title>
  <style>
    .strand {{ fill: none; stroke-width: 3; stroke-linejoin: round; stroke-linecap: round; }}
    .under-gap {{ fill: none; stroke: #ffffff; stroke-width: 9; stroke-linecap: butt; }}
  </style>
  <rect width="100%" height="100%" fill="#ffffff"/>
{body}</svg>
"##,
        n = d.crossing_count()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn trefoil_has_three_gaps() {
        let svg = render_svg(&trefoil());
        assert_eq!(count(&svg, r#"class="under-gap""#), 3);
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn unknot_is_a_circle() {
        let svg = render_svg(&Diagram::unknot());
        assert_eq!(count(&svg, "<circle"), 1);
        assert_eq!(count(&svg, "under-gap\""), 0);
    }

    #[test]
    fn layout_is_finite_and_spread() {
        let d = figure_eight();
        let pos = layout(&d);
        assert!(pos.iter().all(|p| p.0.is_finite() && p.1.is_finite()));
        for i in 0..d.crossing_count() {
            for j in i + 1..d.crossing_count() {
                let dist = ((pos[i].0 - pos[j].0).powi(2) + (pos[i].1 - pos[j].1).powi(2)).sqrt();
                assert!(dist > 1.0);
            }
        }
    }
}
