use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{find_cut, find_cut_where, RawCut, Side};
use crate::error::{Error, Result};
use crate::geom::{EdgeRef, Point, PointSet};

/// `ceil(4 * log2(two_n))`, the default leaf-size threshold.
pub fn default_stop_threshold(two_n: usize) -> usize {
    if two_n <= 1 {
        return 3;
    }
    ((4.0 * (two_n as f64).log2()).ceil() as usize).max(3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Anchor {
    Blue(usize),
    /// Midpoint of a forbidden edge.
    Red(EdgeRef),
}

/// A closed half-plane `{p : cross(direction, p - origin) >= 0}` in doubled
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub origin: (i64, i64),
    pub direction: (i64, i64),
}

impl HalfPlane {
    pub fn contains_doubled(&self, x: i64, y: i64) -> bool {
        let (dx, dy) = self.direction;
        dx * (y - self.origin.1) - dy * (x - self.origin.0) >= 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddFix {
    /// Blue index that was pushed across.
    pub moved: usize,
    pub from: Side,
    pub to: Side,
    /// `|cross|` offset of the moved point from the cut line (doubled frame).
    pub offset: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionCheck {
    /// `B(child) >= B(parent)/2 - 1`
    pub blue_ok: bool,
    /// `H(child) <= (H(parent) + 1)/2`
    pub excess_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCut {
    pub anchors: [Anchor; 2],
    pub sides: [Side; 2],
    /// Ham-sandwich line through the first anchor, doubled frame.
    pub origin: (i64, i64),
    pub direction: (i64, i64),
    pub odd_fix: Option<OddFix>,
    /// Line actually separating the children (equals `origin` unless fixed).
    pub separator: (i64, i64),
    /// Forbidden edges whose endpoints ended up in different children.
    pub dropped_edges: Vec<EdgeRef>,
    /// One entry per child, left child first.
    pub checks: [RecursionCheck; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionNode {
    pub depth: usize,
    pub blue_members: Vec<usize>,
    pub active_edges: Vec<EdgeRef>,
    /// Accumulated half-planes from the ancestors' separators.
    pub constraints: Vec<HalfPlane>,
    pub cut: Option<NodeCut>,
    pub children: Vec<SubdivisionNode>,
}

impl SubdivisionNode {
    pub fn blue_count(&self) -> usize {
        self.blue_members.len()
    }

    pub fn red_count(&self) -> usize {
        self.active_edges.len()
    }

    /// `H = R - B/2`.
    pub fn excess(&self) -> i64 {
        self.red_count() as i64 - (self.blue_count() / 2) as i64
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a SubdivisionNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionTree {
    pub stop_threshold: usize,
    pub forbidden: Vec<EdgeRef>,
    pub root: SubdivisionNode,
}

impl SubdivisionTree {
    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&SubdivisionNode> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }

    pub fn leaves(&self) -> Vec<&SubdivisionNode> {
        self.nodes().into_iter().filter(|n| n.is_leaf()).collect()
    }

    pub fn depth(&self) -> usize {
        self.nodes().iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Human-readable descriptions of every failed recursion or leaf-size check.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for node in self.nodes() {
            if let Some(cut) = &node.cut {
                for (side, (check, child)) in cut.checks.iter().zip(&node.children).enumerate() {
                    let name = if side == 0 { "left" } else { "right" };
                    if !check.blue_ok {
                        out.push(format!(
                            "depth {}: {name} child has B={} < B/2-1 with parent B={}",
                            node.depth,
                            child.blue_count(),
                            node.blue_count()
                        ));
                    }
                    if !check.excess_ok {
                        out.push(format!(
                            "depth {}: {name} child has H={} > (H+1)/2 with parent H={}",
                            node.depth,
                            child.excess(),
                            node.excess()
                        ));
                    }
                }
            } else if !self.root.is_leaf() && 2 * node.blue_count() + 2 < self.stop_threshold {
                out.push(format!(
                    "leaf at depth {} has B={} < threshold/2-1",
                    node.depth,
                    node.blue_count()
                ));
            }
        }
        out
    }

    /// Indented text dump, one node per line.
    pub fn dump_text(&self) -> String {
        let mut s = String::new();
        for node in self.nodes() {
            let pad = "  ".repeat(node.depth);
            let _ = write!(
                s,
                "{pad}B={} R={} H={}",
                node.blue_count(),
                node.red_count(),
                node.excess()
            );
            match &node.cut {
                Some(cut) => {
                    let _ = write!(s, " cut={:?}/{:?}", cut.anchors, cut.sides);
                    if let Some(fix) = cut.odd_fix {
                        let _ = write!(s, " fix=blue {} {:?}->{:?}", fix.moved, fix.from, fix.to);
                    }
                    if !cut.dropped_edges.is_empty() {
                        let _ = write!(s, " dropped={}", cut.dropped_edges.len());
                    }
                }
                None => {
                    let _ = write!(s, " members={:?}", node.blue_members);
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Recursively splits `blue` by ham-sandwich cuts against the midpoints of the
/// forbidden edges until every cell holds fewer than `stop_threshold` points.
///
/// Violations of the size and excess recursions are recorded in the tree
/// (see [`SubdivisionTree::violations`]) rather than treated as errors.
pub fn recursive_subdivision(
    blue: &PointSet,
    forbidden: &[EdgeRef],
    stop_threshold: usize,
) -> Result<SubdivisionTree> {
    if blue.len() % 2 == 1 {
        return Err(Error::OddInput(blue.len()));
    }
    // With a threshold of 2 a pair of points can never be split further.
    if stop_threshold < 3 {
        return Err(Error::Range(format!("stop_threshold {stop_threshold} must be at least 3")));
    }
    blue.require_general()?;
    let mut edges = Vec::with_capacity(forbidden.len());
    for e in forbidden {
        edges.push(EdgeRef::try_new(e.i, e.j, blue.len())?);
    }
    edges.sort();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEdge(w[0]));
    }
    let members: Vec<usize> = (0..blue.len()).collect();
    let root = build(blue.points(), members, edges.clone(), Vec::new(), 0, stop_threshold)?;
    Ok(SubdivisionTree { stop_threshold, forbidden: edges, root })
}

fn build(
    pts: &[Point],
    members: Vec<usize>,
    active: Vec<EdgeRef>,
    constraints: Vec<HalfPlane>,
    depth: usize,
    threshold: usize,
) -> Result<SubdivisionNode> {
    let mut node = SubdivisionNode {
        depth,
        blue_members: members,
        active_edges: active,
        constraints,
        cut: None,
        children: Vec::new(),
    };
    if node.blue_count() < threshold {
        return Ok(node);
    }
    let b = node.blue_count();

    // Blues at 2p and reds at p_i + p_j so that midpoints are grid points.
    let mut local: Vec<Point> = node.blue_members.iter().map(|&i| double(pts[i])).collect();
    local.extend(node.active_edges.iter().map(|e| {
        Point::new(pts[e.i].x + pts[e.j].x, pts[e.i].y + pts[e.j].y)
    }));
    let mut is_red = vec![false; b];
    is_red.resize(local.len(), true);
    // Any balanced cut will do. Prefer one whose children satisfy the size
    // recursions: a cut through both endpoints of a removed edge, or a moved
    // point taking several removed edges along, can otherwise overfill a child.
    let h = node.excess();
    let splits_well = |raw: &RawCut| {
        let s = split(pts, &node, &local, raw);
        (0..2).all(|g| {
            let (bc, rc) = (s.groups[g].len(), s.child_edges[g].len());
            2 * bc + 2 >= b && 2 * rc as i64 - bc as i64 <= h + 1
        })
    };
    let raw = find_cut_where(&local, &is_red, splits_well)
        .or_else(|| find_cut(&local, &is_red))
        .ok_or(Error::NoCutFound)?;

    let anchor = |k: usize| {
        if k < b {
            Anchor::Blue(node.blue_members[k])
        } else {
            Anchor::Red(node.active_edges[k - b])
        }
    };
    let (pa, pb) = (local[raw.a], local[raw.b]);
    let direction = (pb.x - pa.x, pb.y - pa.y);
    let Split { odd_fix, separator, groups, child_edges, dropped } = split(pts, &node, &local, &raw);

    let half = |dir: (i64, i64)| {
        let mut c = node.constraints.clone();
        c.push(HalfPlane { origin: separator, direction: dir });
        c
    };
    let [gl, gr] = groups;
    let [el, er] = child_edges;
    let (cl, cr) = (half(direction), half((-direction.0, -direction.1)));
    let (left_child, right_child) = rayon::join(
        || build(pts, gl, el, cl, depth + 1, threshold),
        || build(pts, gr, er, cr, depth + 1, threshold),
    );
    let children = vec![left_child?, right_child?];

    let check = |c: &SubdivisionNode| RecursionCheck {
        blue_ok: 2 * c.blue_count() + 2 >= b,
        excess_ok: 2 * c.excess() <= h + 1,
    };
    node.cut = Some(NodeCut {
        anchors: [anchor(raw.a), anchor(raw.b)],
        sides: [raw.side_a, raw.side_b],
        origin: (pa.x, pa.y),
        direction,
        odd_fix,
        separator,
        dropped_edges: dropped,
        checks: [check(&children[0]), check(&children[1])],
    });
    node.children = children;
    Ok(node)
}

struct Split {
    odd_fix: Option<OddFix>,
    separator: (i64, i64),
    groups: [Vec<usize>; 2],
    child_edges: [Vec<EdgeRef>; 2],
    dropped: Vec<EdgeRef>,
}

/// Assigns the node's blues and active edges to the two sides of `raw`,
/// moving one blue across when the left side would be odd.
fn split(pts: &[Point], node: &SubdivisionNode, local: &[Point], raw: &RawCut) -> Split {
    let b = node.blue_count();
    let (pa, pb) = (local[raw.a], local[raw.b]);
    let direction = (pb.x - pa.x, pb.y - pa.y);
    let offset = |p: Point| direction.0 * (p.y - pa.y) - direction.1 * (p.x - pa.x);
    // Blue count is even, so the cut never leaves a blue point on the line.
    let mut sides: Vec<Side> = (0..b).map(|k| raw.side_of(&local, k)).collect();
    debug_assert!(sides.iter().all(|&s| s != Side::OnLine));
    let left = sides.iter().filter(|&&s| s == Side::Left).count();

    let mut odd_fix = None;
    let mut separator = (pa.x, pa.y);
    if left % 2 == 1 {
        // Nearest blue on each side, measured by |cross|; ties go to the
        // lexicographically smaller point.
        let nearest = |want: Side| {
            (0..b)
                .filter(|&k| sides[k] == want)
                .min_by_key(|&k| (offset(local[k]).abs(), pts[node.blue_members[k]]))
        };
        let l = nearest(Side::Left).expect("odd side is nonempty");
        let r = nearest(Side::Right).expect("odd side is nonempty");
        let key = |k: usize| (offset(local[k]).abs(), pts[node.blue_members[k]]);
        let k = if key(l) <= key(r) { l } else { r };
        let from = sides[k];
        sides[k] = from.opposite();
        separator = (local[k].x, local[k].y);
        odd_fix = Some(OddFix {
            moved: node.blue_members[k],
            from,
            to: sides[k],
            offset: offset(local[k]).abs(),
        });
    }

    let mut side_of = vec![None; pts.len()];
    let mut groups = [Vec::new(), Vec::new()];
    for (k, &i) in node.blue_members.iter().enumerate() {
        let g = (sides[k] == Side::Right) as usize;
        side_of[i] = Some(g);
        groups[g].push(i);
    }
    let mut child_edges = [Vec::new(), Vec::new()];
    let mut dropped = Vec::new();
    for &e in &node.active_edges {
        match (side_of[e.i], side_of[e.j]) {
            (Some(x), Some(y)) if x == y => child_edges[x].push(e),
            _ => dropped.push(e),
        }
    }

    Split { odd_fix, separator, groups, child_edges, dropped }
}

fn double(p: Point) -> Point {
    Point::new(2 * p.x, 2 * p.y)
}
