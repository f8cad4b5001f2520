//! Lattice triangles around and inside convex bodies.
//!
//! Bodies have exact rational vertices; the lattice is `(1/M) Z^2`. Every
//! construction is checked with exact arithmetic before it is returned.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoint {
    pub x: Q,
    pub y: Q,
}

impl QPoint {
    pub fn new(x: Q, y: Q) -> Self {
        QPoint { x, y }
    }

    fn sub(&self, o: &QPoint) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

fn cross_q(a: &QPoint, b: &QPoint, c: &QPoint) -> Q {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    ux * vy - uy * vx
}

fn dist2(a: &QPoint, b: &QPoint) -> Q {
    let (dx, dy) = b.sub(a);
    &dx * &dx + &dy * &dy
}

/// Twice the signed area of a polygon.
fn twice_area(poly: &[QPoint]) -> Q {
    let mut s = Q::zero();
    for k in 0..poly.len() {
        let (a, b) = (&poly[k], &poly[(k + 1) % poly.len()]);
        s += &a.x * &b.y - &a.y * &b.x;
    }
    s
}

/// Weak containment in a counter-clockwise convex polygon.
fn inside_q(poly: &[QPoint], p: &QPoint) -> bool {
    (0..poly.len()).all(|k| !cross_q(&poly[k], &poly[(k + 1) % poly.len()], p).is_negative())
}

fn strictly_inside_q(poly: &[QPoint], p: &QPoint) -> bool {
    (0..poly.len()).all(|k| cross_q(&poly[k], &poly[(k + 1) % poly.len()], p).is_positive())
}

fn diameter2(pts: &[QPoint]) -> Q {
    let mut best = Q::zero();
    for (k, a) in pts.iter().enumerate() {
        for b in &pts[k + 1..] {
            let d = dist2(a, b);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// A strictly convex polygon with rational vertices in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexBody {
    vertices: Vec<QPoint>,
}

impl ConvexBody {
    /// Accepts the vertices of a strictly convex polygon in either cyclic
    /// orientation.
    pub fn new(mut vertices: Vec<QPoint>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::Degenerate(format!("{k} vertices")));
        }
        if twice_area(&vertices).is_negative() {
            vertices.reverse();
        }
        let turns_left = (0..k).all(|i| cross_q(&vertices[i], &vertices[(i + 1) % k], &vertices[(i + 2) % k]).is_positive());
        // Left turns alone allow a star that winds twice; the edge directions
        // must also pass the upward half-turn exactly once.
        let flips = (0..k)
            .filter(|&i| {
                let (a, b, c) = (&vertices[i], &vertices[(i + 1) % k], &vertices[(i + 2) % k]);
                let up = |p: &QPoint, r: &QPoint| (&r.y - &p.y, &r.x - &p.x);
                let (d0, e0) = up(a, b);
                let (d1, e1) = up(b, c);
                let half = |dy: &Q, dx: &Q| dy.is_positive() || (dy.is_zero() && dx.is_positive());
                half(&d0, &e0) && !half(&d1, &e1)
            })
            .count();
        if !turns_left || flips != 1 {
            return Err(Error::Degenerate("vertices do not form a strictly convex polygon".into()));
        }
        Ok(ConvexBody { vertices })
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.vertices
    }

    pub fn area(&self) -> Q {
        twice_area(&self.vertices) / q(2)
    }

    pub fn diameter2(&self) -> Q {
        diameter2(&self.vertices)
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        inside_q(&self.vertices, p)
    }

    /// Vertex average, an interior point.
    pub fn centroid(&self) -> QPoint {
        let k = q(self.vertices.len() as i64);
        let sx: Q = self.vertices.iter().map(|v| v.x.clone()).sum();
        let sy: Q = self.vertices.iter().map(|v| v.y.clone()).sum();
        QPoint::new(sx / &k, sy / k)
    }
}

/// Triangle with vertices `(num / m)` on the lattice `(1/m) Z^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeTriangle {
    pub m: i64,
    pub numerators: [(i64, i64); 3],
}

impl LatticeTriangle {
    pub fn vertices(&self) -> Vec<QPoint> {
        let mut v: Vec<QPoint> =
            self.numerators.iter().map(|&(a, b)| QPoint::new(frac(a, self.m), frac(b, self.m))).collect();
        if twice_area(&v).is_negative() {
            v.swap(1, 2);
        }
        v
    }

    pub fn area(&self) -> Q {
        twice_area(&self.vertices()).abs() / q(2)
    }

    pub fn diameter2(&self) -> Q {
        diameter2(&self.vertices())
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        inside_q(&self.vertices(), p)
    }

    pub fn contains_body(&self, k: &ConvexBody) -> bool {
        let v = self.vertices();
        k.vertices().iter().all(|p| inside_q(&v, p))
    }

    pub fn is_degenerate(&self) -> bool {
        self.area().is_zero()
    }
}

/// Axis-parallel lattice square `[x0, x0 + side] x [y0, y0 + side]`, in units of `1/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSquare {
    pub m: i64,
    pub lower_left: (i64, i64),
    pub side: i64,
}

impl LatticeSquare {
    pub fn corners(&self) -> [QPoint; 4] {
        let (x, y, s, m) = (self.lower_left.0, self.lower_left.1, self.side, self.m);
        [(x, y), (x + s, y), (x + s, y + s), (x, y + s)].map(|(a, b)| QPoint::new(frac(a, m), frac(b, m)))
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        let c = self.corners();
        p.x >= c[0].x && p.x <= c[2].x && p.y >= c[0].y && p.y <= c[2].y
    }

    pub fn contains_triangle(&self, t: &LatticeTriangle) -> bool {
        t.vertices().iter().all(|p| self.contains(p))
    }
}

/// Intermediate quantities of [`bounding_triangle`], exposed for auditing.
#[derive(Clone, Debug)]
pub struct BoundingTrace {
    pub triangle: LatticeTriangle,
    pub small_case: bool,
    pub body_area: Q,
    pub rectangle_area: Q,
    /// The doubled triangle around the rectangle.
    pub abc: [QPoint; 3],
    /// `abc` scaled by 4 about its centroid; contains the result.
    pub outer: [QPoint; 3],
}

fn nearest_lattice(p: (f64, f64), m: i64) -> (i64, i64) {
    ((p.0 * m as f64).round() as i64, (p.1 * m as f64).round() as i64)
}

/// Lattice point strictly inside the counter-clockwise triangle `tri`: the
/// rounded incenter, or failing that the nearest lattice point found by
/// scanning square rings around it.
fn lattice_point_inside(tri: &[QPoint; 3], m: i64) -> Option<(i64, i64)> {
    let f: Vec<(f64, f64)> = tri.iter().map(QPoint::to_f64).collect();
    let len = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
    let (la, lb, lc) = (len(f[1], f[2]), len(f[0], f[2]), len(f[0], f[1]));
    let per = la + lb + lc;
    let inc = ((la * f[0].0 + lb * f[1].0 + lc * f[2].0) / per, (la * f[0].1 + lb * f[1].1 + lc * f[2].1) / per);
    let (cx, cy) = nearest_lattice(inc, m);
    let ok = |a: i64, b: i64| strictly_inside_q(tri, &QPoint::new(frac(a, m), frac(b, m)));
    for r in 0..64i64 {
        for dx in -r..=r {
            for dy in -r..=r {
                if (dx.abs() == r || dy.abs() == r) && ok(cx + dx, cy + dy) {
                    return Some((cx + dx, cy + dy));
                }
            }
        }
    }
    None
}

fn check_precondition(k: &ConvexBody, m: i64) -> Result<()> {
    if m < 200 {
        return Err(Error::Precondition(format!("M = {m} must be at least 200")));
    }
    if k.diameter2() > q(1) {
        return Err(Error::Precondition("body diameter exceeds 1".into()));
    }
    Ok(())
}

/// Lattice triangle containing `k`, with area at most `64 S` when the body
/// area `S` exceeds `100/M`, and otherwise area at most `6400/M` and
/// diameter at most 12.
pub fn bounding_triangle(k: &ConvexBody, m: i64) -> Result<LatticeTriangle> {
    bounding_triangle_traced(k, m).map(|t| t.triangle)
}

pub fn bounding_triangle_traced(k: &ConvexBody, m: i64) -> Result<BoundingTrace> {
    check_precondition(k, m)?;
    let s_area = k.area();
    if s_area.is_zero() {
        return Err(Error::Degenerate("body has zero area".into()));
    }
    let v = k.vertices();

    // Diameter pair and the frame u = y - x, w = perp(u). A point with frame
    // coordinates (s, t) is x + (s u + t w) / |u|^2.
    let (mut xi, mut yi, mut best) = (0, 1, Q::zero());
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            let d = dist2(&v[a], &v[b]);
            if d > best {
                (xi, yi, best) = (a, b, d);
            }
        }
    }
    let (x, y) = (&v[xi], &v[yi]);
    let (ux, uy) = y.sub(x);
    let l2 = best;
    let (wx, wy) = (-uy.clone(), ux.clone());
    let coords = |p: &QPoint| {
        let (dx, dy) = p.sub(x);
        (&dx * &ux + &dy * &uy, &dx * &wx + &dy * &wy)
    };
    let ts: Vec<Q> = v.iter().map(|p| coords(p).1).collect();
    let (t1, t2) = (ts.iter().min().unwrap().clone(), ts.iter().max().unwrap().clone());
    let (mut s_lo, mut s_hi, mut t_lo, mut t_hi) = (Q::zero(), l2.clone(), t1.clone(), t2.clone());
    let rect_area = |s_lo: &Q, s_hi: &Q, t_lo: &Q, t_hi: &Q| (s_hi - s_lo) * (t_hi - t_lo) / &l2;
    let base_rect = rect_area(&s_lo, &s_hi, &t_lo, &t_hi);
    assert!(base_rect <= &s_area * q(2), "bounding rectangle exceeds twice the body area");

    let threshold = frac(100, m);
    let small_case = s_area <= threshold;
    if small_case {
        // Grow the rectangle to the area it would have for a body of area
        // 100/M, keeping it around the original one.
        let target = frac(200, m) * &l2;
        let mid_t = (&t_lo + &t_hi) / q(2);
        if l2 >= frac(200, m) {
            let dt = &target / &l2;
            t_lo = &mid_t - &dt / q(2);
            t_hi = &mid_t + &dt / q(2);
        } else {
            let root = target.to_f64().unwrap().sqrt();
            let mut side = Q::from_float(root).unwrap_or_else(|| l2.clone());
            while &side * &side > target {
                side = side * frac(999_999, 1_000_000);
            }
            if side < l2 {
                side = l2.clone();
            }
            let dt = &target / &side;
            let mid_s = &l2 / q(2);
            s_lo = &mid_s - &side / q(2);
            s_hi = &mid_s + &side / q(2);
            t_lo = &mid_t - &dt / q(2);
            t_hi = &mid_t + &dt / q(2);
        }
        assert!(s_lo <= Q::zero() && s_hi >= l2 && t_lo <= t1 && t_hi >= t2);
    }
    let rect = rect_area(&s_lo, &s_hi, &t_lo, &t_hi);

    // Triangle with base on the t_lo side, extended by half the rectangle
    // length at both ends, and apex at twice the rectangle height.
    let len = &s_hi - &s_lo;
    let hgt = &t_hi - &t_lo;
    let to_point = |s: Q, t: Q| {
        QPoint::new(&x.x + (&s * &ux + &t * &wx) / &l2, &x.y + (&s * &uy + &t * &wy) / &l2)
    };
    let a = to_point(&s_lo - &len / q(2), t_lo.clone());
    let b = to_point(&s_hi + &len / q(2), t_lo.clone());
    let c = to_point((&s_lo + &s_hi) / q(2), &t_lo + &hgt * q(2));
    let mut abc = [a, b, c];
    if twice_area(&abc).is_negative() {
        abc.swap(1, 2);
    }
    let abc_area = twice_area(&abc) / q(2);
    assert_eq!(abc_area, &rect * q(2));
    if !small_case {
        assert!(abc_area >= &s_area * q(2) && abc_area <= &s_area * q(4));
    }
    assert!(v.iter().all(|p| inside_q(&abc, p)), "doubled triangle misses the body");

    let third = frac(1, 3);
    let g = QPoint::new((&abc[0].x + &abc[1].x + &abc[2].x) * &third, (&abc[0].y + &abc[1].y + &abc[2].y) * &third);
    let outer = abc.clone().map(|p| QPoint::new(&g.x + (&p.x - &g.x) * q(4), &g.y + (&p.y - &g.y) * q(4)));

    let mut nums = [(0i64, 0i64); 3];
    for i in 0..3 {
        let (p, r1, r2) = (&abc[i], &abc[(i + 1) % 3], &abc[(i + 2) % 3]);
        // Reflection of ABC through the vertex: (p, 2p - r1, 2p - r2), same orientation.
        let refl = [
            p.clone(),
            QPoint::new(&p.x * q(2) - &r1.x, &p.y * q(2) - &r1.y),
            QPoint::new(&p.x * q(2) - &r2.x, &p.y * q(2) - &r2.y),
        ];
        nums[i] = lattice_point_inside(&refl, m)
            .ok_or_else(|| Error::ConstructionFailed("no lattice point in a reflected triangle".into()))?;
    }
    let tri = LatticeTriangle { m, numerators: nums };
    let tv = tri.vertices();
    assert!(abc.iter().all(|p| inside_q(&tv, p)), "lattice triangle misses the doubled triangle");
    assert!(tv.iter().all(|p| inside_q(&outer, p)), "lattice triangle leaves the 4x triangle");
    if !tri.contains_body(k) {
        return Err(Error::ConstructionFailed("lattice triangle does not contain the body".into()));
    }
    let area = tri.area();
    let ok = if small_case {
        area <= frac(6400, m) && tri.diameter2() <= q(144)
    } else {
        area <= &s_area * q(64)
    };
    if !ok {
        return Err(Error::ConstructionFailed("area or diameter bound violated".into()));
    }
    Ok(BoundingTrace { triangle: tri, small_case, body_area: s_area, rectangle_area: rect, abc, outer })
}

/// Lattice triangle inside `k` with area at least `S/100`, for `S > 100/M`.
///
/// Takes the larger of the two triangles spanned by the diameter and the
/// extreme points on either side (area at least `S/4`), shrinks it toward its
/// centroid and rounds the vertices; factors 1/2, 2/3, 3/4 are tried in turn.
pub fn contained_triangle(k: &ConvexBody, m: i64) -> Result<LatticeTriangle> {
    check_precondition(k, m)?;
    let s_area = k.area();
    if s_area <= frac(100, m) {
        return Err(Error::Precondition(format!("body area must exceed 100/M = 100/{m}")));
    }
    let v = k.vertices();
    let (mut xi, mut yi, mut best) = (0, 1, Q::zero());
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            let d = dist2(&v[a], &v[b]);
            if d > best {
                (xi, yi, best) = (a, b, d);
            }
        }
    }
    let (x, y) = (&v[xi], &v[yi]);
    let side = |p: &QPoint| cross_q(x, y, p);
    let zi = (0..v.len()).max_by_key(|&i| side(&v[i])).unwrap();
    let wi = (0..v.len()).min_by_key(|&i| side(&v[i])).unwrap();
    let (big, far) = if side(&v[zi]) >= -side(&v[wi]) { (side(&v[zi]), zi) } else { (-side(&v[wi]), wi) };
    debug_assert!(big.is_positive());
    let base = [x.clone(), y.clone(), v[far].clone()];
    let third = frac(1, 3);
    let g = QPoint::new((&base[0].x + &base[1].x + &base[2].x) * &third, (&base[0].y + &base[1].y + &base[2].y) * &third);
    let need = &s_area / q(100);
    for f in [frac(1, 2), frac(2, 3), frac(3, 4)] {
        let mut nums = [(0i64, 0i64); 3];
        for (i, p) in base.iter().enumerate() {
            let c = QPoint::new(&g.x + (&p.x - &g.x) * &f, &g.y + (&p.y - &g.y) * &f);
            nums[i] = nearest_lattice(c.to_f64(), m);
        }
        let tri = LatticeTriangle { m, numerators: nums };
        if tri.vertices().iter().all(|p| k.contains(p)) && tri.area() >= need && !tri.is_degenerate() {
            return Ok(tri);
        }
    }
    Err(Error::ConstructionFailed("no contraction factor gave a valid inscribed triangle".into()))
}

/// Side-100 lattice square centred at a lattice point near the vertex average
/// of `gamma`. For `K` inside a diameter-1 `gamma`, every bounding triangle
/// has diameter at most 12 and meets `gamma`, so it stays within distance 13
/// of that centre.
pub fn bounding_square(gamma: &ConvexBody, m: i64) -> Result<LatticeSquare> {
    if gamma.diameter2() > q(1) {
        return Err(Error::Precondition("gamma diameter exceeds 1".into()));
    }
    if m < 1 {
        return Err(Error::Precondition("M must be positive".into()));
    }
    let (cx, cy) = nearest_lattice(gamma.centroid().to_f64(), m);
    Ok(LatticeSquare { m, lower_left: (cx - 50 * m, cy - 50 * m), side: 100 * m })
}

/// Number of lattice triangles (unordered vertex triples) in a side-100
/// square at resolution `m`, i.e. `C((100m + 1)^2, 3)`.
pub fn lattice_triangle_count(m: u64) -> BigUint {
    let side = BigUint::from(100 * m + 1);
    let p = &side * &side;
    let one = BigUint::one();
    if p < BigUint::from(3u32) {
        return BigUint::zero();
    }
    &p * (&p - &one) * (&p - &one - &one) / BigUint::from(6u32)
}

/// Random convex polygon inside `[0, 7/10]^2` (diameter below 1): hull of a
/// few points drawn from a random sub-box whose side is `10^-e` for `e`
/// uniform in `[0, max_exp]`.
pub fn random_convex_body<R: Rng>(rng: &mut R, max_exp: f64) -> ConvexBody {
    const DEN: i64 = 1 << 24;
    let limit = DEN * 7 / 10;
    loop {
        let e: f64 = rng.gen_range(0.0..=max_exp);
        let side = ((limit as f64) * 10f64.powf(-e)).max(4.0) as i64;
        let x0 = rng.gen_range(0..=limit - side);
        let y0 = rng.gen_range(0..=limit - side);
        let k = rng.gen_range(3..=12);
        let pts: Vec<crate::geom::Point> = (0..k)
            .map(|_| crate::geom::Point::new(rng.gen_range(0..=side), rng.gen_range(0..=side)))
            .collect();
        let hull = crate::geom::convex_hull_of(&pts);
        if hull.len() < 3 {
            continue;
        }
        let verts =
            hull.iter().map(|&i| QPoint::new(frac(x0 + pts[i].x, DEN), frac(y0 + pts[i].y, DEN))).collect();
        if let Ok(body) = ConvexBody::new(verts) {
            return body;
        }
    }
}

/// Convex body from `(p, q)` fraction pairs, as read from a file.
pub fn body_from_pairs(pairs: Vec<(Q, Q)>) -> Result<ConvexBody> {
    ConvexBody::new(pairs.into_iter().map(|(x, y)| QPoint::new(x, y)).collect())
}

/// Square `[a, b]^2` as a convex body.
pub fn square_body(a: Q, b: Q) -> ConvexBody {
    ConvexBody::new(vec![
        QPoint::new(a.clone(), a.clone()),
        QPoint::new(b.clone(), a.clone()),
        QPoint::new(b.clone(), b.clone()),
        QPoint::new(a, b),
    ])
    .expect("square is convex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_bounding_triangle() {
        let k = square_body(q(0), frac(1, 5));
        let t = bounding_triangle(&k, 10_000).unwrap();
        assert!(t.contains_body(&k));
        assert!(t.area() <= frac(256, 100));
    }

    #[test]
    fn thin_triangle_small_case() {
        let k = ConvexBody::new(vec![
            QPoint::new(frac(1, 10), frac(1, 10)),
            QPoint::new(frac(2, 10), frac(1, 10)),
            QPoint::new(frac(15, 100), frac(1_000_002, 10_000_000)),
        ])
        .unwrap();
        assert!(k.area() <= frac(100, 10_000));
        let tr = bounding_triangle_traced(&k, 10_000).unwrap();
        assert!(tr.small_case);
        assert!(tr.triangle.contains_body(&k));
        assert!(tr.triangle.area() <= frac(6400, 10_000));
        assert!(tr.triangle.diameter2() <= q(144));
    }

    #[test]
    fn random_bodies_bounding_and_contained() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let k = random_convex_body(&mut rng, 3.0);
            for m in [1000, 10_000] {
                let t = bounding_triangle(&k, m).unwrap();
                assert!(t.contains_body(&k));
                if k.area() > frac(100, m) {
                    let inner = contained_triangle(&k, m).unwrap();
                    assert!(inner.vertices().iter().all(|p| k.contains(p)));
                    assert!(inner.area() >= k.area() / q(100));
                }
            }
        }
    }

    #[test]
    fn contained_in_half_square_and_disk() {
        let k = square_body(q(0), frac(1, 2));
        let t = contained_triangle(&k, 1000).unwrap();
        assert!(t.area() >= frac(25, 10_000));
        let disk: Vec<QPoint> = (0..64)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 64.0;
                QPoint::new(Q::from_float(0.5 + 0.49 * a.cos()).unwrap(), Q::from_float(0.5 + 0.49 * a.sin()).unwrap())
            })
            .collect();
        let disk = ConvexBody::new(disk).unwrap();
        let t = contained_triangle(&disk, 10_000).unwrap();
        assert!(t.vertices().iter().all(|p| disk.contains(p)) && t.area() >= disk.area() / q(100));
    }

    #[test]
    fn contained_boundary_case_is_rejected() {
        // area exactly 100/M
        let k = square_body(q(0), frac(1, 10));
        assert!(matches!(contained_triangle(&k, 10_000), Err(Error::Precondition(_))));
    }

    #[test]
    fn square_holds_triangles_and_is_aligned() {
        let gamma = square_body(q(0), frac(7, 10));
        let m = 1000;
        let sq = bounding_square(&gamma, m).unwrap();
        assert_eq!(sq.side, 100 * m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let k = random_convex_body(&mut rng, 3.0);
            assert!(sq.contains_triangle(&bounding_triangle(&k, m).unwrap()));
        }
    }

    #[test]
    fn count_grows_like_m_to_the_sixth() {
        let ratio = |m: u64| {
            let c = lattice_triangle_count(m);
            c.to_f64().unwrap() / (m as f64).powi(6)
        };
        assert_eq!(lattice_triangle_count(0), BigUint::zero());
        let (a, b) = (ratio(100), ratio(1000));
        assert!((a / b - 1.0).abs() < 0.05);
        assert!((b - 1e12 / 6.0).abs() / (1e12 / 6.0) < 0.01);
    }

    #[test]
    fn rejects_bad_input() {
        let k = square_body(q(0), q(1));
        assert!(matches!(bounding_triangle(&k, 1000), Err(Error::Precondition(_))));
        let k = square_body(q(0), frac(1, 2));
        assert!(matches!(bounding_triangle(&k, 100), Err(Error::Precondition(_))));
        let bow = vec![
            QPoint::new(q(0), q(0)),
            QPoint::new(q(1), q(1)),
            QPoint::new(q(1), q(0)),
            QPoint::new(q(0), q(1)),
        ];
        assert!(ConvexBody::new(bow).is_err());
    }
}
