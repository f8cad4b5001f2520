//! Exact planar primitives on the integer grid.
//!
//! Every predicate here is evaluated with integer arithmetic. Input coordinates
//! are bounded by [`COORD_BOUND`]; internal frames may double them once (edge
//! midpoints), and all cross products of such points fit comfortably in `i64`.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate of an input point.
pub const COORD_BOUND: i64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(v: i64) -> Self {
        match v.signum() {
            1 => Orientation::CounterClockwise,
            -1 => Orientation::Clockwise,
            _ => Orientation::Collinear,
        }
    }
}

/// Cross product of `(b - a)` and `(c - a)`.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[inline]
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    Orientation::from_sign(cross(a, b, c))
}

/// An undirected edge between two vertex indices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub i: usize,
    pub j: usize,
}

impl EdgeRef {
    /// Builds the edge `{a, b}`; panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        EdgeRef { i: a.min(b), j: a.max(b) }
    }

    pub fn try_new(a: usize, b: usize, len: usize) -> Result<Self> {
        if a == b || a >= len || b >= len {
            return Err(Error::InvalidEdge { i: a, j: b, len });
        }
        Ok(EdgeRef::new(a, b))
    }

    pub fn touches(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }

    pub fn shares_endpoint(&self, other: &EdgeRef) -> bool {
        self.touches(other.i) || self.touches(other.j)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

/// An ordered set of distinct grid points.
///
/// `general` records that "no three collinear" has been verified; solvers that
/// need general position check the flag and fall back to an explicit check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
    general: bool,
}

impl PointSet {
    /// Distinct, in-range points; general position is not checked.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !p.in_range() {
                return Err(Error::CoordinateRange { x: p.x, y: p.y, bound: COORD_BOUND });
            }
            if !seen.insert(*p) {
                return Err(Error::DuplicatePoint(*p));
            }
        }
        Ok(PointSet { points, general: false })
    }

    /// Distinct, in-range points with no three collinear.
    pub fn new_general(points: Vec<Point>) -> Result<Self> {
        let mut ps = PointSet::new(points)?;
        if let Some(t) = find_collinear_triple(&ps.points) {
            return Err(Error::NotGeneralPosition(t));
        }
        ps.general = true;
        Ok(ps)
    }

    /// Caller has already established general position.
    pub(crate) fn new_unchecked_general(points: Vec<Point>) -> Result<Self> {
        let mut ps = PointSet::new(points)?;
        ps.general = true;
        Ok(ps)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn is_flagged_general(&self) -> bool {
        self.general
    }

    /// Errors unless the set is in general position (flag or explicit check).
    pub fn require_general(&self) -> Result<()> {
        if self.general {
            return Ok(());
        }
        match find_collinear_triple(&self.points) {
            Some(t) => Err(Error::NotGeneralPosition(t)),
            None => Ok(()),
        }
    }

    pub fn edge(&self, a: usize, b: usize) -> Result<EdgeRef> {
        EdgeRef::try_new(a, b, self.len())
    }

    /// Sub-set by index list, preserving order.
    pub fn subset(&self, idx: &[usize]) -> PointSet {
        PointSet {
            points: idx.iter().map(|&i| self.points[i]).collect(),
            general: self.general,
        }
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

/// True iff the open segments `ab` and `cd` share a point.
///
/// Touching at an endpoint never counts; collinear overlap does.
pub fn open_segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    if o1 == 0 && o2 == 0 {
        // Collinear: project on the dominant axis and compare open intervals.
        let key = |p: Point| if a.x != b.x { p.x } else { p.y };
        let (lo1, hi1) = min_max(key(a), key(b));
        let (lo2, hi2) = min_max(key(c), key(d));
        return lo1.max(lo2) < hi1.min(hi2);
    }
    false
}

fn min_max(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Proper crossing of two edges of `ps`. Edges sharing an endpoint never cross.
pub fn segments_cross(e1: EdgeRef, e2: EdgeRef, ps: &PointSet) -> bool {
    if e1.shares_endpoint(&e2) {
        return false;
    }
    let p = ps.points();
    open_segments_intersect(p[e1.i], p[e1.j], p[e2.i], p[e2.j])
}

/// Convex hull of `ps`: vertex indices in counter-clockwise order, starting at
/// the lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull(ps: &PointSet) -> Vec<usize> {
    convex_hull_of(ps.points())
}

/// Same as [`convex_hull`] on a raw slice of distinct points.
pub fn convex_hull_of(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| points[i]);
    if n <= 2 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    // lower chain
    for &i in &order {
        while hull.len() >= 2
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    // upper chain
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// True iff no three points of `ps` are collinear.
pub fn is_general_position(ps: &PointSet) -> bool {
    find_collinear_triple(ps.points()).is_none()
}

/// Finds some collinear triple `[a, b, c]` (with `c` the largest index), if any.
///
/// For each point, the reduced directions towards all earlier points are
/// hashed; a repeated direction is a collinear triple. Expected `O(n^2)`.
pub fn find_collinear_triple(points: &[Point]) -> Option<[usize; 3]> {
    let mut dirs: FxHashMap<(i64, i64), usize> = FxHashMap::default();
    for (c, &pc) in points.iter().enumerate() {
        dirs.clear();
        for (j, &pj) in points[..c].iter().enumerate() {
            let key = reduced_direction(pj.x - pc.x, pj.y - pc.y);
            if let Some(prev) = dirs.insert(key, j) {
                return Some([prev, j, c]);
            }
        }
    }
    None
}

/// Primitive direction with a canonical sign (lines, not rays).
pub(crate) fn reduced_direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = dx.gcd(&dy).max(1);
    let (mut x, mut y) = (dx / g, dy / g);
    if x < 0 || (x == 0 && y < 0) {
        x = -x;
        y = -y;
    }
    (x, y)
}

/// Strict containment of `p` in a counter-clockwise convex polygon.
pub fn strictly_inside_convex(poly: &[Point], p: Point) -> bool {
    if poly.len() < 3 {
        return false;
    }
    (0..poly.len()).all(|k| cross(poly[k], poly[(k + 1) % poly.len()], p) > 0)
}

/// Weak containment (boundary included) in a counter-clockwise convex polygon.
pub fn inside_convex(poly: &[Point], p: Point) -> bool {
    (0..poly.len()).all(|k| cross(poly[k], poly[(k + 1) % poly.len()], p) >= 0)
}

/// Strict side counts of `pts` relative to the directed line `a -> b`:
/// `(left, right)`; points on the line are skipped.
pub fn side_counts(a: Point, b: Point, pts: impl IntoIterator<Item = Point>) -> (usize, usize) {
    let (mut left, mut right) = (0, 0);
    for p in pts {
        match cross(a, b, p).signum() {
            1 => left += 1,
            -1 => right += 1,
            _ => {}
        }
    }
    (left, right)
}
