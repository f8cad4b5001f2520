//! Generators for the extremal configurations, each returned with a
//! certificate that is recomputed from the generated output alone.

use std::collections::HashSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocking::{is_blocking, RemovalSet};
use crate::error::{Error, Result};
use crate::geom::{
    convex_hull, cross, find_collinear_triple, open_segments_intersect, strictly_inside_convex, EdgeRef, Point,
    PointSet, COORD_BOUND,
};
use crate::matcher::{Matching, ORACLE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    Convex,
    Example1,
    Example2,
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertItem {
    pub name: &'static str,
    pub ok: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub items: Vec<CertItem>,
}

impl Certificate {
    fn push(&mut self, name: &'static str, ok: bool, evidence: impl Into<String>) {
        self.items.push(CertItem { name, ok, evidence: evidence.into() });
    }

    pub fn all_ok(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn get(&self, name: &str) -> Option<&CertItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn failures(&self) -> String {
        let bad: Vec<String> =
            self.items.iter().filter(|i| !i.ok).map(|i| format!("{}: {}", i.name, i.evidence)).collect();
        bad.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedConfig {
    pub kind: ConfigKind,
    pub n: usize,
    pub points: PointSet,
    pub removal: Option<RemovalSet>,
    /// Witness matchings (pairwise edge-disjoint) where the configuration has them.
    pub matchings: Vec<Matching>,
    pub certificate: Certificate,
}

impl NamedConfig {
    /// Recomputes the certificate from points, removal set and matchings.
    pub fn recompute_certificate(&self) -> Certificate {
        match self.kind {
            ConfigKind::Convex => certify_convex(self.n, &self.points, &self.matchings),
            ConfigKind::Example1 => certify_example1(self.n, &self.points, self.removal.as_ref()),
            ConfigKind::Example2 => certify_example2(self.n, &self.points, self.removal.as_ref()),
            ConfigKind::G2 => certify_g2(self.n, &self.points, &self.matchings),
        }
    }
}

/// Checks that `ids` (a cyclic order of points in convex position) carries
/// the matching chords without crossings, by bracket nesting. Endpoints not in
/// `ids` are ignored. Returns the first offending chord.
fn chords_nest(ids: &[usize], edges: &[EdgeRef], total: usize) -> std::result::Result<(), EdgeRef> {
    let mut pos = vec![usize::MAX; total];
    for (k, &v) in ids.iter().enumerate() {
        pos[v] = k;
    }
    let mut partner = vec![usize::MAX; ids.len()];
    for e in edges {
        let (a, b) = (pos[e.i], pos[e.j]);
        if a != usize::MAX && b != usize::MAX {
            partner[a] = b;
            partner[b] = a;
        }
    }
    let mut stack = Vec::new();
    for k in 0..ids.len() {
        let q = partner[k];
        if q == usize::MAX {
            continue;
        }
        if q > k {
            stack.push(k);
        } else if stack.pop() != Some(q) {
            return Err(EdgeRef::new(ids[k], ids[q]));
        }
    }
    Ok(())
}

fn general_position_item(cert: &mut Certificate, ps: &PointSet) {
    match find_collinear_triple(ps.points()) {
        None => cert.push("general_position", true, "no three points collinear"),
        Some(t) => cert.push("general_position", false, format!("collinear {t:?}")),
    }
}

fn hull_item(cert: &mut Certificate, ps: &PointSet, expect: &[usize]) {
    let mut hull = convex_hull(ps);
    hull.sort_unstable();
    let mut want = expect.to_vec();
    want.sort_unstable();
    cert.push("hull_vertices", hull == want, format!("hull has {} vertices, expected {}", hull.len(), want.len()));
}

fn disjoint_item(cert: &mut Certificate, matchings: &[Matching]) {
    let mut seen = HashSet::new();
    let clash = matchings.iter().flat_map(|m| m.edges()).find(|e| !seen.insert(**e));
    match clash {
        None => cert.push("pairwise_edge_disjoint", true, format!("{} matchings", matchings.len())),
        Some(e) => cert.push("pairwise_edge_disjoint", false, format!("edge {e} reused")),
    }
}

fn blocking_item(cert: &mut Certificate, ps: &PointSet, removal: Option<&RemovalSet>, limit: usize) {
    match removal {
        None => cert.push("blocking", false, "no removal set"),
        Some(_) if ps.len() > limit.min(ORACLE_LIMIT) => {
            cert.push("blocking", true, format!("not checked: {} points exceed the oracle guard", ps.len()))
        }
        Some(r) => match is_blocking(ps, r) {
            Ok(b) => cert.push("blocking", b, if b { "oracle: no matching survives" } else { "oracle found a matching" }),
            Err(e) => cert.push("blocking", false, e.to_string()),
        },
    }
}

/// Centrally symmetric convex `2n`-gon: edge vectors are the `n` shortest
/// primitive vectors of the upper half-plane in angular order, followed by
/// their negatives. Distinct directions make it strictly convex.
fn primitive_polygon(n: usize) -> Vec<Point> {
    let mut r = 1i64;
    let mut dirs = loop {
        let mut v: Vec<(i64, i64)> = Vec::new();
        for b in 0..=r {
            for a in -r..=r {
                let upper = b > 0 || a > 0;
                if upper && a * a + b * b <= r * r && a.gcd(&b) == 1 {
                    v.push((a, b));
                }
            }
        }
        if v.len() >= n {
            break v;
        }
        r *= 2;
    };
    dirs.sort_by_key(|&(a, b)| (a * a + b * b, a, b));
    dirs.truncate(n);
    // Angular order; all directions lie in [0, pi), so the cross product is a total order.
    dirs.sort_by(|p, q| 0.cmp(&(p.0 * q.1 - p.1 * q.0)));
    let mut pts = Vec::with_capacity(2 * n);
    let (mut x, mut y) = (0i64, 0i64);
    for &(a, b) in dirs.iter().chain(dirs.iter().map(|(a, b)| (-*a, -*b)).collect::<Vec<_>>().iter()) {
        pts.push(Point::new(x, y));
        x += a;
        y += b;
    }
    let (xmin, xmax) = (pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.x).max().unwrap());
    let (ymin, ymax) = (pts.iter().map(|p| p.y).min().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
    let (cx, cy) = ((xmin + xmax) / 2, (ymin + ymax) / 2);
    pts.iter().map(|p| Point::new(p.x - cx, p.y - cy)).collect()
}

fn certify_convex(n: usize, ps: &PointSet, matchings: &[Matching]) -> Certificate {
    let mut cert = Certificate::default();
    let ids: Vec<usize> = (0..ps.len()).collect();
    let m = ps.len();
    let hull = convex_hull(ps);
    let in_order = hull.len() == m && (0..m).all(|k| hull[(k + 1) % m] == (hull[k] + 1) % m);
    cert.push(
        "convex_position",
        m == 2 * n && (m < 3 || in_order),
        format!("{} of {m} points on the hull in index order: {in_order}", hull.len()),
    );
    let mut fine = matchings.len() == n;
    let mut evidence = format!("{} matchings", matchings.len());
    for (i, mt) in matchings.iter().enumerate() {
        if let Err(d) = mt.check_perfect(ps.len()) {
            fine = false;
            evidence = format!("matching {i}: {d}");
            break;
        }
        if let Err(e) = chords_nest(&ids, mt.edges(), ps.len()) {
            fine = false;
            evidence = format!("matching {i}: chord {e} crosses");
            break;
        }
    }
    cert.push("matchings_perfect_non_crossing", fine, evidence);
    // Matching i only uses edges {a, b} with a + b = 2i + 1 (mod 2n), so the
    // classes are disjoint without comparing edge sets pairwise.
    let stray = matchings.iter().enumerate().find_map(|(i, mt)| {
        mt.edges().iter().find(|e| (e.i + e.j) % m != (2 * i + 1) % m.max(1)).map(|e| (i, *e))
    });
    match stray {
        None => cert.push("pairwise_edge_disjoint", true, "every edge lies in its rotation class"),
        Some((i, e)) => cert.push("pairwise_edge_disjoint", false, format!("matching {i} uses {e} outside its class")),
    }
    cert
}

/// `2n` points in strictly convex position with the `n` rotation matchings
/// `{a, b : a + b = 2i + 1 mod 2n}`, which are pairwise edge-disjoint.
pub fn gen_convex(n: usize) -> Result<NamedConfig> {
    if !(1..=10_000).contains(&n) {
        return Err(Error::Range(format!("n = {n} must be in 1..=10000")));
    }
    let pts = primitive_polygon(n);
    let points = PointSet::new(pts)?;
    let m = 2 * n;
    let matchings = (0..n)
        .map(|i| {
            let s = 2 * i + 1;
            Matching::new((0..m).filter(|&a| (s + m - a) % m > a).map(|a| EdgeRef::new(a, (s + m - a) % m)).collect())
        })
        .collect();
    let mut cfg = NamedConfig { kind: ConfigKind::Convex, n, points, removal: None, matchings, certificate: Certificate::default() };
    cfg.certificate = cfg.recompute_certificate();
    if !cfg.certificate.all_ok() {
        return Err(Error::ConstructionFailed(cfg.certificate.failures()));
    }
    Ok(cfg)
}

/// Parabola polygon `S * (i, i^2)` for `i < k`.
fn parabola_polygon(k: usize, s: i64) -> Vec<Point> {
    (0..k as i64).map(|i| Point::new(s * i, s * i * i)).collect()
}

fn certify_example1(n: usize, ps: &PointSet, removal: Option<&RemovalSet>) -> Certificate {
    let mut cert = Certificate::default();
    let pts = ps.points();
    let k = n + 1;
    general_position_item(&mut cert, ps);
    hull_item(&mut cert, ps, &(0..k).collect::<Vec<_>>());
    let poly = &pts[..k.min(pts.len())];
    let hull_order: Vec<Point> = convex_hull_of_order(poly);
    let inside = pts[k.min(pts.len())..].iter().all(|&p| strictly_inside_convex(&hull_order, p));
    cert.push("interior_points_inside", inside && pts.len() == 2 * n, format!("{} interior points", pts.len().saturating_sub(k)));

    let mut same_side = true;
    let mut evidence = String::from("all diagonals");
    'outer: for a in 0..k {
        for b in a + 2..k {
            if a == 0 && b == k - 1 {
                continue;
            }
            let signs: HashSet<i64> = pts[k..].iter().map(|&p| cross(pts[a], pts[b], p).signum()).collect();
            if signs.len() > 1 || signs.contains(&0) {
                same_side = false;
                evidence = format!("diagonal {a}-{b} splits the cluster");
                break 'outer;
            }
        }
    }
    cert.push("same_side_of_all_diagonals", same_side, evidence);

    let cycle: Vec<EdgeRef> = (0..k).map(|i| EdgeRef::new(i, (i + 1) % k)).collect();
    let is_cycle = removal.is_some_and(|r| {
        let mut c = cycle.clone();
        c.sort();
        r.edges() == &c[..]
    });
    cert.push("removal_is_boundary_cycle", is_cycle, format!("{k} boundary edges"));
    blocking_item(&mut cert, ps, removal, 14);
    cert
}

fn convex_hull_of_order(poly: &[Point]) -> Vec<Point> {
    crate::geom::convex_hull_of(poly).into_iter().map(|i| poly[i]).collect()
}

/// `(n+1)`-gon with `n-1` points clustered just inside one edge's midpoint;
/// removing the `n+1` boundary edges blocks every matching.
pub fn gen_example1(n: usize) -> Result<NamedConfig> {
    if n < 2 {
        return Err(Error::Range(format!("n = {n} must be at least 2")));
    }
    let k = n + 1;
    let removal = RemovalSet::new((0..k).map(|i| EdgeRef::new(i, (i + 1) % k)).collect())?;
    let mut last = String::from("grid too small");
    let mut s: i64 = 4;
    while s * (k as i64 - 1).pow(2) <= COORD_BOUND {
        // Cluster along a small parabola in the frame of edge P0P1, whose
        // inward normal is (-1, 1).
        let (mx, my) = (s / 2, s / 2);
        let c = (n as i64 - 2) / 2;
        let mut pts = parabola_polygon(k, s);
        for j in 0..n as i64 - 1 {
            let t = j - c;
            let h = 1 + t * t;
            pts.push(Point::new(mx + t - h, my + t + h));
        }
        if let Ok(points) = PointSet::new(pts) {
            let cert = certify_example1(n, &points, Some(&removal));
            if cert.all_ok() {
                return Ok(NamedConfig {
                    kind: ConfigKind::Example1,
                    n,
                    points,
                    removal: Some(removal),
                    matchings: Vec::new(),
                    certificate: cert,
                });
            }
            last = cert.failures();
        }
        s *= 2;
    }
    Err(Error::ConstructionFailed(last))
}

fn certify_example2(n: usize, ps: &PointSet, removal: Option<&RemovalSet>) -> Certificate {
    let mut cert = Certificate::default();
    let pts = ps.points();
    let k = n + 2;
    general_position_item(&mut cert, ps);
    hull_item(&mut cert, ps, &(0..k).collect::<Vec<_>>());
    let hull_order = convex_hull_of_order(&pts[..k.min(pts.len())]);
    let inside = pts[k.min(pts.len())..].iter().all(|&p| strictly_inside_convex(&hull_order, p));
    cert.push("interior_points_inside", inside && pts.len() == 2 * n, format!("{} interior points", pts.len().saturating_sub(k)));

    // The cluster must lie on P0's side of every chord avoiding P0.
    let mut near = true;
    let mut evidence = String::from("all chords avoiding P0");
    'outer: for a in 1..k {
        for b in a + 1..k {
            let want = cross(pts[a], pts[b], pts[0]).signum();
            if let Some(p) = pts[k..].iter().find(|&&p| cross(pts[a], pts[b], p).signum() != want) {
                near = false;
                evidence = format!("chord {a}-{b} separates {p} from P0");
                break 'outer;
            }
        }
    }
    cert.push("cluster_near_p0", near, evidence);

    let want: Vec<EdgeRef> = (1..=n).map(|i| EdgeRef::new(i, i + 1)).collect();
    let ok = removal.is_some_and(|r| r.edges() == &want[..]);
    cert.push("removal_is_boundary_path", ok, format!("{n} edges P1P2 .. P{n}P{}", n + 1));
    blocking_item(&mut cert, ps, removal, 12);
    cert
}

/// `(n+2)`-gon with `n-2` points near vertex `P0`; removing the `n` boundary
/// edges not incident to `P0` blocks every matching.
pub fn gen_example2(n: usize) -> Result<NamedConfig> {
    if n < 2 {
        return Err(Error::Range(format!("n = {n} must be at least 2")));
    }
    let k = n + 2;
    let removal = RemovalSet::new((1..=n).map(|i| EdgeRef::new(i, i + 1)).collect())?;
    let mut last = String::from("grid too small");
    let mut s: i64 = 1;
    while s * (k as i64 - 1).pow(2) <= COORD_BOUND {
        let mut pts = parabola_polygon(k, s);
        // Seen from P0 the slopes (3 + 2x)/2 are half-integers strictly between
        // the slopes 1 and n + 1 of its two boundary edges, so no cluster
        // point is collinear with P0 and a polygon vertex.
        for x in 1..n as i64 - 1 {
            pts.push(Point::new(2 * x, 3 * x + 2 * x * x));
        }
        if let Ok(points) = PointSet::new(pts) {
            let cert = certify_example2(n, &points, Some(&removal));
            if cert.all_ok() {
                return Ok(NamedConfig {
                    kind: ConfigKind::Example2,
                    n,
                    points,
                    removal: Some(removal),
                    matchings: Vec::new(),
                    certificate: cert,
                });
            }
            last = cert.failures();
        }
        s *= 2;
    }
    Err(Error::ConstructionFailed(last))
}

fn g2_matchings(n: usize) -> Vec<Matching> {
    let m = 2 * n - 1;
    (0..m)
        .map(|i| {
            let mut edges: Vec<EdgeRef> = (1..n).map(|j| EdgeRef::new((i + m - j) % m, (i + j) % m)).collect();
            edges.push(EdgeRef::new(i, m));
            Matching::new(edges)
        })
        .collect()
}

fn certify_g2(n: usize, ps: &PointSet, matchings: &[Matching]) -> Certificate {
    let mut cert = Certificate::default();
    let m = 2 * n - 1;
    let pts = ps.points();
    general_position_item(&mut cert, ps);
    let arc: Vec<usize> = (0..m).collect();
    let arc_pts = &pts[..m.min(pts.len())];
    let hull = crate::geom::convex_hull_of(arc_pts);
    cert.push("arc_convex_position", hull.len() == m && ps.len() == 2 * n, format!("{} of {m} arc points on their hull", hull.len()));

    // P sees every P_i: PP_i meets no boundary edge of C except at P_i.
    let apex = pts[m.min(pts.len() - 1)];
    let ring: Vec<Point> = hull.iter().map(|&i| arc_pts[i]).collect();
    let blocked = (0..m).find(|&i| {
        (0..ring.len()).any(|e| {
            let (a, b) = (ring[e], ring[(e + 1) % ring.len()]);
            a != arc_pts[i] && b != arc_pts[i] && open_segments_intersect(apex, arc_pts[i], a, b)
        }) || strictly_inside_convex(&ring, apex)
    });
    cert.push(
        "apex_sees_all",
        blocked.is_none(),
        match blocked {
            None => "no segment from the apex enters the arc polygon".to_string(),
            Some(i) => format!("segment apex-{i} crosses the arc polygon"),
        },
    );

    // Chords of C nest; apex edges cannot cross chords since the apex sees
    // its partner from outside C.
    let mut fine = matchings.len() == m;
    let mut evidence = format!("{} matchings", matchings.len());
    for (i, mt) in matchings.iter().enumerate() {
        let apex_edges = mt.edges().iter().filter(|e| e.j == m).count();
        if let Err(d) = mt.check_perfect(ps.len()) {
            (fine, evidence) = (false, format!("matching {i}: {d}"));
            break;
        }
        if apex_edges != 1 {
            (fine, evidence) = (false, format!("matching {i}: apex degree {apex_edges}"));
            break;
        }
        if let Err(e) = chords_nest(&arc, mt.edges(), ps.len()) {
            (fine, evidence) = (false, format!("matching {i}: chord {e} crosses"));
            break;
        }
    }
    cert.push("matchings_perfect_non_crossing", fine, evidence);
    disjoint_item(&mut cert, matchings);
    cert
}

/// `2n - 1` points on a convex arc plus an apex that sees all of them; the
/// `2n - 1` matchings `M_i` are pairwise edge-disjoint.
pub fn gen_g2(n: usize) -> Result<NamedConfig> {
    if n < 2 {
        return Err(Error::Range(format!("n = {n} must be at least 2")));
    }
    let half = n as i64 - 1;
    if half * half > COORD_BOUND / 2 {
        return Err(Error::Range(format!("n = {n} too large for the grid")));
    }
    let arc: Vec<Point> = (-half..=half).map(|t| Point::new(t, t * t)).collect();
    let matchings = g2_matchings(n);
    // Cheap screen: the apex must not lie inside the interior angle of any
    // arc vertex. The full certificate below is the actual check.
    let ring: Vec<Point> = crate::geom::convex_hull_of(&arc).iter().map(|&i| arc[i]).collect();
    let k = ring.len();
    let screened = |apex: Point| {
        (0..k).all(|i| {
            let (a, b, c) = (ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]);
            !(cross(a, b, apex) > 0 && cross(b, c, apex) > 0)
        })
    };
    let mut d: i64 = 1;
    let mut last = String::new();
    while d <= COORD_BOUND {
        if !screened(Point::new(0, -d)) {
            last = format!("apex at depth {d} is hidden from part of the arc");
            d *= 2;
            continue;
        }
        let mut pts = arc.clone();
        pts.push(Point::new(0, -d));
        let points = PointSet::new(pts)?;
        let cert = certify_g2(n, &points, &matchings);
        if cert.all_ok() {
            return Ok(NamedConfig { kind: ConfigKind::G2, n, points, removal: None, matchings, certificate: cert });
        }
        last = cert.failures();
        d *= 2;
    }
    Err(Error::ConstructionFailed(last))
}

/// `2n` points in general position whose hull has exactly `hull_size`
/// vertices, the rest sampled uniformly inside.
pub fn gen_small_hull(n: usize, hull_size: usize, seed: u64) -> Result<PointSet> {
    if hull_size < 3 || hull_size > n + 1 {
        return Err(Error::Range(format!("hull_size {hull_size} must be in 3..={}", n + 1)));
    }
    let h = hull_size as i64;
    let s = COORD_BOUND / ((h - 1) * (h - 1));
    let hull = parabola_polygon(hull_size, s);
    let ring = convex_hull_of_order(&hull);
    let (xmax, ymax) = (hull.iter().map(|p| p.x).max().unwrap(), hull.iter().map(|p| p.y).max().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| loop {
        let p = Point::new(rng.gen_range(0..=xmax), rng.gen_range(0..=ymax));
        if strictly_inside_convex(&ring, p) {
            return p;
        }
    };
    let mut pts = hull.clone();
    let mut seen: HashSet<Point> = pts.iter().copied().collect();
    let fresh = |rng: &mut ChaCha8Rng, seen: &mut HashSet<Point>| loop {
        let p = sample(rng);
        if seen.insert(p) {
            return p;
        }
    };
    while pts.len() < 2 * n {
        pts.push(fresh(&mut rng, &mut seen));
    }
    // No three parabola points are collinear, so every collinear triple has
    // an interior point as its largest index.
    for _ in 0..100_000 {
        match find_collinear_triple(&pts) {
            None => return PointSet::new_general(pts),
            Some(t) => {
                let i = *t.iter().max().unwrap();
                pts[i] = fresh(&mut rng, &mut seen);
            }
        }
    }
    Err(Error::ConstructionFailed("could not reach general position".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocking::min_blocking_size;

    fn brute_non_crossing(ps: &PointSet, m: &Matching) -> bool {
        let e = m.edges();
        (0..e.len()).all(|a| (a + 1..e.len()).all(|b| !crate::geom::segments_cross(e[a], e[b], ps)))
    }

    #[test]
    fn convex_small_cases() {
        let c1 = gen_convex(1).unwrap();
        assert_eq!((c1.points.len(), c1.matchings.len()), (2, 1));
        let c3 = gen_convex(3).unwrap();
        assert_eq!(c3.points.len(), 6);
        assert_eq!(convex_hull(&c3.points).len(), 6);
        for m in &c3.matchings {
            assert!(m.is_valid(&c3.points));
        }
        assert_eq!(min_blocking_size(&c3.points).unwrap().min_blocking_size, 3);
    }

    #[test]
    fn convex_large_fits_grid() {
        let c = gen_convex(10_000).unwrap();
        assert!(c.certificate.all_ok());
        assert!(c.points.points().iter().all(|p| p.in_range()));
        let c = gen_convex(40).unwrap();
        assert_eq!(convex_hull(&c.points).len(), 80);
        assert!(c.matchings.iter().all(|m| brute_non_crossing(&c.points, m)));
        assert!(gen_convex(0).is_err() && gen_convex(10_001).is_err());
    }

    #[test]
    fn nesting_detects_crossing_chords() {
        let ids = [0, 1, 2, 3];
        assert!(chords_nest(&ids, &[EdgeRef::new(0, 1), EdgeRef::new(2, 3)], 4).is_ok());
        assert!(chords_nest(&ids, &[EdgeRef::new(0, 3), EdgeRef::new(1, 2)], 4).is_ok());
        assert!(chords_nest(&ids, &[EdgeRef::new(0, 2), EdgeRef::new(1, 3)], 4).is_err());
    }

    #[test]
    fn example1_blocks() {
        for n in 2..=6 {
            let c = gen_example1(n).unwrap();
            assert_eq!(c.points.len(), 2 * n);
            assert_eq!(convex_hull(&c.points).len(), n + 1);
            assert_eq!(c.removal.as_ref().unwrap().len(), n + 1);
            assert!(is_blocking(&c.points, c.removal.as_ref().unwrap()).unwrap());
            assert_eq!(c.recompute_certificate(), c.certificate);
        }
        assert!(gen_example1(5).unwrap().certificate.get("same_side_of_all_diagonals").unwrap().ok);
    }

    #[test]
    fn example2_blocks() {
        for n in 2..=6 {
            let c = gen_example2(n).unwrap();
            assert_eq!(convex_hull(&c.points).len(), n + 2);
            assert_eq!(c.removal.as_ref().unwrap().len(), n);
            assert!(is_blocking(&c.points, c.removal.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn g2_small_and_brute_force() {
        let g = gen_g2(2).unwrap();
        assert_eq!((g.points.len(), g.matchings.len()), (4, 3));
        for n in 2..=12 {
            let g = gen_g2(n).unwrap();
            for m in &g.matchings {
                assert!(brute_non_crossing(&g.points, m) && m.check_perfect(2 * n).is_ok());
            }
        }
        assert_eq!(min_blocking_size(&gen_g2(3).unwrap().points).unwrap().min_blocking_size, 5);
        assert_eq!(gen_g2(50).unwrap().matchings.len(), 99);
    }

    #[test]
    fn certificate_catches_a_bad_matching() {
        let mut g = gen_g2(4).unwrap();
        g.matchings[0] = g.matchings[1].clone();
        let cert = g.recompute_certificate();
        assert!(!cert.get("pairwise_edge_disjoint").unwrap().ok);
    }

    #[test]
    fn small_hull_sizes() {
        for (n, h) in [(3, 4), (3, 3), (8, 5)] {
            let ps = gen_small_hull(n, h, 9).unwrap();
            assert_eq!(ps.len(), 2 * n);
            assert_eq!(convex_hull(&ps).len(), h);
        }
        assert!(matches!(gen_small_hull(3, 5, 0), Err(Error::Range(_))));
        assert_eq!(gen_small_hull(4, 4, 1).unwrap(), gen_small_hull(4, 4, 1).unwrap());
    }
}
