//! SVG 1.1 drawings.
//!
//! Removed edges are dashed, matching edges solid. Subdivision leaf cells are
//! the bounding box clipped by the leaf's half-planes, tinted by index.

use std::fmt::Write;

use ncmatch::ham_sandwich::HalfPlane;
use ncmatch::{Matching, PointSet, RemovalSet, SubdivisionTree};

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(ps: &PointSet) -> Self {
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in ps.points() {
            lo_x = lo_x.min(p.x as f64);
            lo_y = lo_y.min(p.y as f64);
            hi_x = hi_x.max(p.x as f64);
            hi_y = hi_y.max(p.y as f64);
        }
        if ps.is_empty() {
            (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
        Frame { min_x: lo_x, max_y: hi_y, scale: (CANVAS - 2.0 * MARGIN) / span }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }
}

/// Keeps the part of a convex polygon inside a half-plane. Polygon
/// coordinates are in the doubled frame used by the subdivision.
fn clip(poly: &[(f64, f64)], h: &HalfPlane) -> Vec<(f64, f64)> {
    let (ox, oy) = (h.origin.0 as f64, h.origin.1 as f64);
    let (dx, dy) = (h.direction.0 as f64, h.direction.1 as f64);
    let side = |p: (f64, f64)| dx * (p.1 - oy) - dy * (p.0 - ox);
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (k, &a) in poly.iter().enumerate() {
        let b = poly[(k + 1) % poly.len()];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            let t = sa / (sa - sb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

fn cell_polygon(ps: &PointSet, constraints: &[HalfPlane]) -> Vec<(f64, f64)> {
    let xs = ps.points().iter().map(|p| p.x);
    let ys = ps.points().iter().map(|p| p.y);
    let (lo_x, hi_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(1));
    let (lo_y, hi_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(1));
    let pad = ((hi_x - lo_x).max(hi_y - lo_y) / 20).max(1);
    let (a, b, c, d) = (2 * (lo_x - pad), 2 * (lo_y - pad), 2 * (hi_x + pad), 2 * (hi_y + pad));
    let mut poly = vec![(a as f64, b as f64), (c as f64, b as f64), (c as f64, d as f64), (a as f64, d as f64)];
    for h in constraints {
        poly = clip(&poly, h);
        if poly.is_empty() {
            break;
        }
    }
    poly.into_iter().map(|(x, y)| (x / 2.0, y / 2.0)).collect()
}

pub fn svg(
    ps: &PointSet,
    matching: Option<&Matching>,
    removal: Option<&RemovalSet>,
    tree: Option<&SubdivisionTree>,
) -> String {
    let f = Frame::new(ps);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>"#).unwrap();

    if let Some(tree) = tree {
        writeln!(s, r##"<g id="cells" stroke="#999999" stroke-width="0.5" fill-opacity="0.25">"##).unwrap();
        for (k, leaf) in tree.leaves().iter().enumerate() {
            let poly = cell_polygon(ps, &leaf.constraints);
            if poly.len() < 3 {
                continue;
            }
            let pts: Vec<String> = poly
                .iter()
                .map(|&(x, y)| {
                    let (u, v) = f.map(x, y);
                    format!("{u:.2},{v:.2}")
                })
                .collect();
            let hue = (k * 137) % 360;
            writeln!(s, r#"<polygon points="{}" fill="hsl({hue},70%,60%)"/>"#, pts.join(" ")).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }

    let line = |s: &mut String, i: usize, j: usize, extra: &str| {
        let (a, b) = (ps.get(i), ps.get(j));
        let (x1, y1) = f.map(a.x as f64, a.y as f64);
        let (x2, y2) = f.map(b.x as f64, b.y as f64);
        writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"{extra}/>"#).unwrap();
    };

    if let Some(r) = removal {
        writeln!(s, r##"<g id="removal" stroke="#cc3333" stroke-width="1" stroke-dasharray="4 3">"##).unwrap();
        for e in r.edges() {
            line(&mut s, e.i, e.j, "");
        }
        writeln!(s, "</g>").unwrap();
    }
    if let Some(m) = matching {
        writeln!(s, r##"<g id="matching" stroke="#1f4e99" stroke-width="2">"##).unwrap();
        for e in m.edges() {
            line(&mut s, e.i, e.j, "");
        }
        writeln!(s, "</g>").unwrap();
    }

    writeln!(s, r#"<g id="points" fill="black">"#).unwrap();
    for (i, p) in ps.points().iter().enumerate() {
        let (x, y) = f.map(p.x as f64, p.y as f64);
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"><title>{i}: ({}, {})</title></circle>"#, p.x, p.y)
            .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}
