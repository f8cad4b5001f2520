//! Discrete ham-sandwich cuts for two-coloured point sets, and the recursive
//! balanced subdivision built on top of them.
//!
//! A cut is the line through two input points (the anchors). Every other point
//! is classified by a symbolically perturbed orientation test, so points that
//! happen to lie on the anchor line still get a definite side. Each anchor is
//! either placed on one side or left on the line.

mod subdivision;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{cross, Point, PointSet};

pub use subdivision::{
    default_stop_threshold, recursive_subdivision, Anchor, HalfPlane, NodeCut, OddFix, RecursionCheck,
    SubdivisionNode, SubdivisionTree,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    OnLine,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::OnLine => Side::OnLine,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointId {
    pub color: Color,
    pub index: usize,
}

/// A balancing line through two anchors with their symbolic sides.
///
/// "Left" is the counter-clockwise side of the direction `anchor_a -> anchor_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub anchor_a: PointId,
    pub anchor_b: PointId,
    pub side_a: Side,
    pub side_b: Side,
    pub direction: (i64, i64),
}

/// Side tallies of a cut recomputed from scratch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutBalance {
    pub left_red: usize,
    pub right_red: usize,
    pub on_red: usize,
    pub left_blue: usize,
    pub right_blue: usize,
    pub on_blue: usize,
    /// Non-anchor points lying exactly on the cut line.
    pub degenerate: usize,
}

impl CutBalance {
    pub fn is_balanced(&self) -> bool {
        self.degenerate == 0 && self.left_red == self.right_red && self.left_blue == self.right_blue
    }
}

/// Orientation of `(pts[i], pts[j], pts[k])` under an index-driven infinitesimal
/// perturbation ("simulation of simplicity"). Returns `+1` (counter-clockwise)
/// or `-1`; never zero for three distinct indices.
///
/// Point `r` is moved by `(e^(2^(2r)), e^(2^(2r+1)))`. The perturbed
/// determinant is a polynomial in `e`; after sorting the indices to
/// `a < b < c`, its leading nonzero coefficients are, in order of dominance:
/// the exact determinant, `y_b - y_c`, `x_c - x_b`, `y_c - y_a`, and `-1`.
pub(crate) fn sos_orient(pts: &[Point], i: usize, j: usize, k: usize) -> i64 {
    debug_assert!(i != j && j != k && i != k);
    let d = cross(pts[i], pts[j], pts[k]);
    if d != 0 {
        return d.signum();
    }
    let (mut idx, mut parity) = ([i, j, k], 1i64);
    for pass in 0..2 {
        for m in 0..2 - pass {
            if idx[m] > idx[m + 1] {
                idx.swap(m, m + 1);
                parity = -parity;
            }
        }
    }
    let [a, b, c] = idx.map(|t| pts[t]);
    let terms = [b.y - c.y, c.x - b.x, c.y - a.y];
    let lead = terms.iter().copied().find(|&t| t != 0).unwrap_or(-1);
    lead.signum() * parity
}

/// Anchor pair and side assignment found by [`find_cut`], in combined indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RawCut {
    pub a: usize,
    pub b: usize,
    pub side_a: Side,
    pub side_b: Side,
}

impl RawCut {
    /// Side of combined index `k` relative to this cut.
    pub fn side_of(&self, pts: &[Point], k: usize) -> Side {
        if k == self.a {
            self.side_a
        } else if k == self.b {
            self.side_b
        } else if sos_orient(pts, self.a, self.b, k) > 0 {
            Side::Left
        } else {
            Side::Right
        }
    }
}

const ASSIGNMENTS: [Side; 3] = [Side::Left, Side::Right, Side::OnLine];

/// Exhaustive discrete ham-sandwich search over a combined red/blue list.
///
/// Returns the first (anchor pair, assignment) in lexicographic order such
/// that each colour has equally many points on both sides and exactly
/// `count mod 2` of its points left on the line.
///
/// Completeness: under the symbolic perturbation the points are in general
/// position, so a bisecting line exists for both colours. If it carries two
/// points of one colour, a tiny rotation about their midpoint puts one on each
/// side; afterwards at most one point per odd colour stays on it. Translate
/// the line (when nothing is on it) until it first meets a point, and record
/// that point on the side it came from; then rotate about a point that is on
/// the line until a second point is met, again keeping the side it came from.
/// Neither motion changes any side count, and the result is a line through
/// two input points with one of the nine assignments checked here. Hence the
/// `O(n^2)` pairs times `O(n)` tallies cannot miss a cut.
pub(crate) fn find_cut(pts: &[Point], is_red: &[bool]) -> Option<RawCut> {
    find_cut_where(pts, is_red, |_| true)
}

/// Like [`find_cut`], but returns the first balanced cut that `accept` approves.
pub(crate) fn find_cut_where(
    pts: &[Point],
    is_red: &[bool],
    mut accept: impl FnMut(&RawCut) -> bool,
) -> Option<RawCut> {
    let n = pts.len();
    debug_assert_eq!(n, is_red.len());
    let total_red = is_red.iter().filter(|&&r| r).count();
    let total_blue = n - total_red;
    let need_on_red = total_red % 2;
    let need_on_blue = total_blue % 2;

    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (pts[a], pts[b]);
            if pa == pb {
                // Coincident anchors do not define a real line.
                continue;
            }
            let (dx, dy) = (pb.x - pa.x, pb.y - pa.y);
            let c0 = dx * pa.y - dy * pa.x;
            let mut left = [0usize; 2]; // [blue, red]
            let mut right = [0usize; 2];
            for (k, p) in pts.iter().enumerate() {
                if k == a || k == b {
                    continue;
                }
                let v = dx * p.y - dy * p.x - c0;
                let s = if v != 0 { v.signum() } else { sos_orient(pts, a, b, k) };
                let c = is_red[k] as usize;
                if s > 0 {
                    left[c] += 1;
                } else {
                    right[c] += 1;
                }
            }
            for &sa in &ASSIGNMENTS {
                for &sb in &ASSIGNMENTS {
                    let (mut l, mut r, mut on) = (left, right, [0usize; 2]);
                    for (k, s) in [(a, sa), (b, sb)] {
                        let c = is_red[k] as usize;
                        match s {
                            Side::Left => l[c] += 1,
                            Side::Right => r[c] += 1,
                            Side::OnLine => on[c] += 1,
                        }
                    }
                    if on[1] == need_on_red && on[0] == need_on_blue && l == r {
                        let cut = RawCut { a, b, side_a: sa, side_b: sb };
                        if accept(&cut) {
                            return Some(cut);
                        }
                    }
                }
            }
        }
    }
    None
}

fn combined(red: &PointSet, blue: &PointSet) -> (Vec<Point>, Vec<bool>) {
    let mut pts = Vec::with_capacity(red.len() + blue.len());
    pts.extend_from_slice(red.points());
    pts.extend_from_slice(blue.points());
    let mut is_red = vec![true; red.len()];
    is_red.resize(pts.len(), false);
    (pts, is_red)
}

fn id_of(k: usize, red_len: usize) -> PointId {
    if k < red_len {
        PointId { color: Color::Red, index: k }
    } else {
        PointId { color: Color::Blue, index: k - red_len }
    }
}

/// Finds a line that simultaneously bisects `red` and `blue`.
///
/// When a colour has odd size exactly one of its points is left on the line;
/// in particular an odd/odd input yields a cut through one red and one blue
/// point, both flagged [`Side::OnLine`].
pub fn ham_sandwich_cut(red: &PointSet, blue: &PointSet) -> Result<Cut> {
    if red.is_empty() || blue.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = red.points().iter().find(|p| blue.points().contains(p)) {
        return Err(Error::DuplicatePoint(*p));
    }
    let (pts, is_red) = combined(red, blue);
    let raw = find_cut(&pts, &is_red).ok_or(Error::NoCutFound)?;
    let (pa, pb) = (pts[raw.a], pts[raw.b]);
    Ok(Cut {
        anchor_a: id_of(raw.a, red.len()),
        anchor_b: id_of(raw.b, red.len()),
        side_a: raw.side_a,
        side_b: raw.side_b,
        direction: (pb.x - pa.x, pb.y - pa.y),
    })
}

/// Recounts both colours against `cut` with plain exact orientation.
///
/// Non-anchor points exactly on the line are reported in `degenerate`; such a
/// cut relies on the symbolic tie-break and is not certified here.
pub fn verify_cut(red: &PointSet, blue: &PointSet, cut: &Cut) -> CutBalance {
    let point = |id: PointId| match id.color {
        Color::Red => red.get(id.index),
        Color::Blue => blue.get(id.index),
    };
    let (a, b) = (point(cut.anchor_a), point(cut.anchor_b));
    let mut bal = CutBalance::default();
    let tally = |color: Color, side: Side, bal: &mut CutBalance| match (color, side) {
        (Color::Red, Side::Left) => bal.left_red += 1,
        (Color::Red, Side::Right) => bal.right_red += 1,
        (Color::Red, Side::OnLine) => bal.on_red += 1,
        (Color::Blue, Side::Left) => bal.left_blue += 1,
        (Color::Blue, Side::Right) => bal.right_blue += 1,
        (Color::Blue, Side::OnLine) => bal.on_blue += 1,
    };
    for (color, set) in [(Color::Red, red), (Color::Blue, blue)] {
        for (index, &p) in set.points().iter().enumerate() {
            let id = PointId { color, index };
            let side = if id == cut.anchor_a {
                cut.side_a
            } else if id == cut.anchor_b {
                cut.side_b
            } else {
                match cross(a, b, p).signum() {
                    1 => Side::Left,
                    -1 => Side::Right,
                    _ => {
                        bal.degenerate += 1;
                        continue;
                    }
                }
            };
            tally(color, side, &mut bal);
        }
    }
    bal
}
