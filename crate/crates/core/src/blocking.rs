//! Removal sets and the question of whether they destroy every non-crossing
//! perfect matching.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, cross, side_counts, EdgeRef, PointSet};
use crate::matcher::{enumerate_ncpm, match_in_cell, ORACLE_LIMIT};

/// Guard for [`min_blocking_size`]; 45 candidate edges fit a `u64` mask.
pub const HMIN_LIMIT: usize = 10;

/// A set of removed edges together with the graph they span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalSet {
    edges: Vec<EdgeRef>,
    #[serde(skip)]
    adjacency: BTreeMap<usize, Vec<usize>>,
}

impl RemovalSet {
    pub fn new(mut edges: Vec<EdgeRef>) -> Result<Self> {
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &edges {
            adjacency.entry(e.i).or_default().push(e.j);
            adjacency.entry(e.j).or_default().push(e.i);
        }
        for nb in adjacency.values_mut() {
            nb.sort_unstable();
        }
        Ok(RemovalSet { edges, adjacency })
    }

    /// Like [`RemovalSet::new`] but also checks indices against `n` points.
    pub fn for_points(edges: Vec<EdgeRef>, n: usize) -> Result<Self> {
        let rs = RemovalSet::new(edges)?;
        rs.check_range(n)?;
        Ok(rs)
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.edges.iter().find(|e| e.j >= n) {
            Some(e) => Err(Error::InvalidEdge { i: e.i, j: e.j, len: n }),
            None => Ok(()),
        }
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeRef) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Vertices touched by at least one edge, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.adjacency.keys().copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.get(&v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.adjacency.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Connected components of the spanned graph, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adjacency.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        !self.edges.is_empty()
            && self.components().len() == 1
            && self.edges.len() + 1 == self.adjacency.len()
    }
}

/// True iff every non-crossing perfect matching of `ps` uses a removed edge.
pub fn is_blocking(ps: &PointSet, removal: &RemovalSet) -> Result<bool> {
    removal.check_range(ps.len())?;
    let all: Vec<usize> = (0..ps.len()).collect();
    Ok(match_in_cell(ps, &all, removal.edges())?.is_none())
}

/// Balance of one removed edge's supporting line: `(#red - #blue)` strictly on
/// the left and on the right, red meaning "touched by a removed edge".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBalance {
    pub edge: EdgeRef,
    pub left: i64,
    pub right: i64,
}

/// Structural conclusions for a blocking set of exactly `n` edges, with the
/// evidence each boolean is computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_tree: bool,
    pub high_degree_on_hull: bool,
    pub balanced_lines: bool,
    pub hull_edges_are_boundary: bool,
    pub leaf_lines_uncrossed: bool,
    pub hull_size: usize,
    /// The last two conclusions are only claimed when the hull has at most
    /// `n + 1` vertices; otherwise they are reported as holding vacuously
    /// and the evidence lists are informational.
    pub hull_claims_apply: bool,
    pub component_count: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub per_edge_balance: Vec<EdgeBalance>,
    /// Vertices of degree at least two that are not hull vertices.
    pub interior_branch_vertices: Vec<usize>,
    /// Removed edges joining two hull vertices that are not hull neighbours.
    pub hull_diagonals: Vec<EdgeRef>,
    /// `(leaf edge, other edge)` pairs where the other edge crosses the leaf
    /// edge's supporting line.
    pub crossed_leaf_lines: Vec<(EdgeRef, EdgeRef)>,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.is_tree
            && self.high_degree_on_hull
            && self.balanced_lines
            && self.hull_edges_are_boundary
            && self.leaf_lines_uncrossed
    }

    /// Recomputes the booleans from the evidence fields.
    pub fn consistent(&self) -> bool {
        self.is_tree == (self.component_count == 1 && self.edge_count + 1 == self.vertex_count)
            && self.high_degree_on_hull == self.interior_branch_vertices.is_empty()
            && self.balanced_lines == self.per_edge_balance.iter().all(|b| b.left == 0 && b.right == 0)
            && self.hull_edges_are_boundary == (!self.hull_claims_apply || self.hull_diagonals.is_empty())
            && self.leaf_lines_uncrossed == (!self.hull_claims_apply || self.crossed_leaf_lines.is_empty())
    }
}

/// Checks the structure every blocking set of `n` edges must have: a tree
/// whose branching vertices are hull vertices and whose edges' lines balance
/// touched against untouched points. When the hull has at most `n + 1`
/// vertices it also checks that hull-to-hull edges are boundary edges and
/// that leaf edges' lines meet no other removed edge.
pub fn verify_blocking_structure(ps: &PointSet, removal: &RemovalSet) -> Result<StructureReport> {
    let total = ps.len();
    if removal.len() * 2 != total {
        return Err(Error::WrongSize { expected: total / 2, actual: removal.len() });
    }
    removal.check_range(total)?;
    ps.require_general()?;
    let pts = ps.points();

    let hull = convex_hull(ps);
    let pos: BTreeMap<usize, usize> = hull.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let red: BTreeSet<usize> = removal.vertices().into_iter().collect();

    let interior_branch_vertices: Vec<usize> = removal
        .vertices()
        .into_iter()
        .filter(|&v| removal.degree(v) >= 2 && !pos.contains_key(&v))
        .collect();

    let per_edge_balance: Vec<EdgeBalance> = removal
        .edges()
        .iter()
        .map(|&e| {
            let (a, b) = (pts[e.i], pts[e.j]);
            let (mut left, mut right) = (0i64, 0i64);
            for (v, &p) in pts.iter().enumerate() {
                let w = if red.contains(&v) { 1 } else { -1 };
                match cross(a, b, p).signum() {
                    1 => left += w,
                    -1 => right += w,
                    _ => {}
                }
            }
            EdgeBalance { edge: e, left, right }
        })
        .collect();

    let h = hull.len();
    let hull_diagonals: Vec<EdgeRef> = removal
        .edges()
        .iter()
        .copied()
        .filter(|e| match (pos.get(&e.i), pos.get(&e.j)) {
            (Some(&x), Some(&y)) => (x + 1) % h != y && (y + 1) % h != x,
            _ => false,
        })
        .collect();

    let mut crossed_leaf_lines = Vec::new();
    for &e in removal.edges() {
        if removal.degree(e.i) != 1 && removal.degree(e.j) != 1 {
            continue;
        }
        let (a, b) = (pts[e.i], pts[e.j]);
        for &f in removal.edges() {
            if f == e {
                continue;
            }
            let s = cross(a, b, pts[f.i]).signum() * cross(a, b, pts[f.j]).signum();
            if s < 0 {
                crossed_leaf_lines.push((e, f));
            }
        }
    }

    let component_count = removal.components().len();
    let vertex_count = red.len();
    let hull_claims_apply = h <= total / 2 + 1;
    Ok(StructureReport {
        is_tree: component_count == 1 && removal.len() + 1 == vertex_count,
        high_degree_on_hull: interior_branch_vertices.is_empty(),
        balanced_lines: per_edge_balance.iter().all(|b| b.left == 0 && b.right == 0),
        hull_edges_are_boundary: !hull_claims_apply || hull_diagonals.is_empty(),
        leaf_lines_uncrossed: !hull_claims_apply || crossed_leaf_lines.is_empty(),
        hull_size: h,
        hull_claims_apply,
        component_count,
        vertex_count,
        edge_count: removal.len(),
        per_edge_balance,
        interior_branch_vertices,
        hull_diagonals,
        crossed_leaf_lines,
    })
}

/// All candidate edges of `ps` in lexicographic order, and every non-crossing
/// perfect matching as a bitmask over that order.
pub fn matching_masks(ps: &PointSet) -> Result<(Vec<EdgeRef>, Vec<u64>)> {
    if ps.len() > HMIN_LIMIT {
        return Err(Error::TooLarge { size: ps.len() as u128, limit: HMIN_LIMIT as u128 });
    }
    let n = ps.len();
    let edges: Vec<EdgeRef> = (0..n).flat_map(|i| (i + 1..n).map(move |j| EdgeRef::new(i, j))).collect();
    let slot = |e: &EdgeRef| edges.binary_search(e).expect("edge in universe");
    let masks = enumerate_ncpm(ps)?
        .iter()
        .map(|m| m.edges().iter().fold(0u64, |acc, e| acc | 1 << slot(e)))
        .collect();
    Ok((edges, masks))
}

/// Every removal set of exactly `k` edges that blocks all matchings.
pub fn blocking_sets_of_size(ps: &PointSet, k: usize) -> Result<Vec<RemovalSet>> {
    let (edges, masks) = matching_masks(ps)?;
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(
        start: usize,
        k: usize,
        m: usize,
        chosen: u64,
        pick: &mut Vec<usize>,
        masks: &[u64],
        found: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == k {
            if masks.iter().all(|&x| x & chosen != 0) {
                found.push(pick.clone());
            }
            return;
        }
        for e in start..m {
            if m - e < k - pick.len() {
                break;
            }
            pick.push(e);
            rec(e + 1, k, m, chosen | 1 << e, pick, masks, found);
            pick.pop();
        }
    }
    let mut found = Vec::new();
    rec(0, k, edges.len(), 0, &mut pick, &masks, &mut found);
    for f in found {
        out.push(RemovalSet::new(f.into_iter().map(|e| edges[e]).collect())?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HgResult {
    pub min_blocking_size: usize,
    /// `min_blocking_size - 1`: every removal of this many edges leaves a matching.
    pub h: usize,
    /// Lexicographically least blocking set of minimum size.
    pub witness: RemovalSet,
    pub matching_count: usize,
}

/// Size of a greedily packed family of pairwise disjoint unhit matchings, a
/// lower bound on the number of further edges needed.
fn packing_bound(masks: &[u64], allowed: u64) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &m in masks {
        if m & allowed & used == 0 {
            used |= m & allowed;
            count += 1;
        }
    }
    count
}

/// Can the matchings in `masks` (none hit yet) all be hit by at most `budget`
/// edges drawn from `allowed`?
fn can_hit(masks: &[u64], allowed: u64, budget: usize) -> bool {
    if masks.is_empty() {
        return true;
    }
    if budget == 0 || packing_bound(masks, allowed) > budget {
        return false;
    }
    let branch = *masks.iter().min_by_key(|&&m| (m & allowed).count_ones()).unwrap();
    let mut options = branch & allowed;
    if options == 0 {
        return false;
    }
    let mut allowed = allowed;
    while options != 0 {
        let e = options.trailing_zeros();
        options &= options - 1;
        let rest: Vec<u64> = masks.iter().copied().filter(|&m| m >> e & 1 == 0).collect();
        if can_hit(&rest, allowed, budget - 1) {
            return true;
        }
        // Later branches may assume this edge is not used.
        allowed &= !(1u64 << e);
    }
    false
}

/// Exact minimum number of edges whose removal leaves no non-crossing perfect
/// matching, by branch and bound over the enumerated matchings.
pub fn min_blocking_size(ps: &PointSet) -> Result<HgResult> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (edges, masks) = matching_masks(ps)?;
    if masks.is_empty() {
        return Err(Error::Degenerate("point set has no non-crossing perfect matching".into()));
    }
    let full = if edges.len() == 64 { u64::MAX } else { (1u64 << edges.len()) - 1 };
    let mut k = packing_bound(&masks, full).max(1);
    while !can_hit(&masks, full, k) {
        k += 1;
    }

    // Lexicographically least witness: fix edges one at a time, smallest
    // first, keeping a completion of the remaining budget feasible.
    let mut chosen = Vec::with_capacity(k);
    let mut unhit = masks.clone();
    let mut start = 0;
    while chosen.len() < k && !unhit.is_empty() {
        let budget = k - chosen.len();
        let e = (start..edges.len())
            .find(|&e| {
                let rest: Vec<u64> = unhit.iter().copied().filter(|&m| m >> e & 1 == 0).collect();
                let later = full & !((1u64 << (e + 1)) - 1);
                can_hit(&rest, later, budget - 1)
            })
            .expect("optimal budget admits a witness");
        chosen.push(edges[e]);
        unhit.retain(|&m| m >> e & 1 == 0);
        start = e + 1;
    }
    Ok(HgResult {
        min_blocking_size: k,
        h: k - 1,
        witness: RemovalSet::new(chosen)?,
        matching_count: masks.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddSplit {
    pub p0: usize,
    /// Hull vertices whose chord to `p0` leaves odd counts on both sides.
    pub odd_set: Vec<usize>,
    pub removal: RemovalSet,
    /// Oracle decision, when the point set is within the enumeration guard.
    pub oracle_blocking: Option<bool>,
}

/// Removes every edge at hull vertex `p0` except those to odd-split hull
/// vertices. Those survivors leave an odd number of points on each side, so
/// `p0` has no usable partner and no matching survives.
pub fn odd_split_blocking(ps: &PointSet, p0: usize) -> Result<OddSplit> {
    let total = ps.len();
    if total % 2 == 1 {
        return Err(Error::OddInput(total));
    }
    if p0 >= total {
        return Err(Error::Range(format!("vertex {p0} out of range")));
    }
    let hull = convex_hull(ps);
    if !hull.contains(&p0) {
        return Err(Error::NotHullVertex(p0));
    }
    let pts = ps.points();
    let mut odd_set: Vec<usize> = hull
        .iter()
        .copied()
        .filter(|&v| v != p0)
        .filter(|&v| side_counts(pts[p0], pts[v], pts.iter().copied()).0 % 2 == 1)
        .collect();
    odd_set.sort_unstable();
    let removal = RemovalSet::new(
        (0..total)
            .filter(|&v| v != p0 && odd_set.binary_search(&v).is_err())
            .map(|v| EdgeRef::new(p0, v))
            .collect(),
    )?;
    let oracle_blocking = if total <= ORACLE_LIMIT { Some(is_blocking(ps, &removal)?) } else { None };
    Ok(OddSplit { p0, odd_set, removal, oracle_blocking })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn convex(two_n: usize) -> PointSet {
        PointSet::new_general((0..two_n as i64).map(|i| Point::new(i, i * i)).collect()).unwrap()
    }

    fn rs(v: &[(usize, usize)]) -> RemovalSet {
        RemovalSet::new(v.iter().map(|&(a, b)| EdgeRef::new(a, b)).collect()).unwrap()
    }

    /// Independent hitting-set oracle: smallest k with some k-subset of edges
    /// meeting every matching, trying subsets in increasing size.
    fn brute_hmin(ps: &PointSet) -> usize {
        let (edges, masks) = matching_masks(ps).unwrap();
        (1..=edges.len())
            .find(|&k| !blocking_sets_of_size(ps, k).unwrap().is_empty() || masks.is_empty())
            .unwrap()
    }

    #[test]
    fn removal_set_derived_data() {
        let r = rs(&[(0, 1), (1, 2), (4, 5)]);
        assert_eq!(r.vertices(), vec![0, 1, 2, 4, 5]);
        assert_eq!(r.degree(1), 2);
        assert_eq!(r.components(), vec![vec![0, 1, 2], vec![4, 5]]);
        assert!(!r.is_tree());
        assert!(rs(&[(0, 1), (1, 2)]).is_tree());
        assert!(matches!(
            RemovalSet::new(vec![EdgeRef::new(0, 1), EdgeRef::new(0, 1)]),
            Err(Error::DuplicateEdge(_))
        ));
    }

    #[test]
    fn blocking_examples() {
        let sq = PointSet::new_general(vec![Point::new(0, 0), Point::new(2, 0), Point::new(2, 2), Point::new(0, 2)]).unwrap();
        assert!(is_blocking(&sq, &rs(&[(0, 1), (1, 2)])).unwrap());
        assert!(!is_blocking(&sq, &rs(&[(0, 1)])).unwrap());
        let two = convex(2);
        assert!(is_blocking(&two, &rs(&[(0, 1)])).unwrap());
    }

    #[test]
    fn hmin_convex_and_pair() {
        let r = min_blocking_size(&convex(6)).unwrap();
        assert_eq!((r.min_blocking_size, r.h), (3, 2));
        assert!(is_blocking(&convex(6), &r.witness).unwrap());
        assert_eq!(min_blocking_size(&convex(2)).unwrap().h, 0);
        for two_n in [4, 6, 8] {
            assert_eq!(min_blocking_size(&convex(two_n)).unwrap().min_blocking_size, brute_hmin(&convex(two_n)));
        }
    }

    #[test]
    fn hmin_witness_is_lexicographically_least() {
        let ps = convex(6);
        let r = min_blocking_size(&ps).unwrap();
        let all = blocking_sets_of_size(&ps, r.min_blocking_size).unwrap();
        let least = all.iter().map(|s| s.edges().to_vec()).min().unwrap();
        assert_eq!(r.witness.edges(), &least[..]);
    }

    #[test]
    fn structure_of_non_tree() {
        let ps = convex(6);
        let rep = verify_blocking_structure(&ps, &rs(&[(0, 1), (2, 3), (4, 5)])).unwrap();
        assert!(!rep.is_tree);
        assert!(rep.consistent());
        assert!(matches!(
            verify_blocking_structure(&ps, &rs(&[(0, 1)])),
            Err(Error::WrongSize { expected: 3, actual: 1 })
        ));
    }

    #[test]
    fn interior_branch_vertex_is_flagged() {
        // Triangle with one interior point; path through the interior point.
        let ps = PointSet::new_general(vec![Point::new(0, 0), Point::new(10, 0), Point::new(5, 9), Point::new(5, 3)])
            .unwrap();
        let path = rs(&[(0, 3), (3, 1)]);
        let rep = verify_blocking_structure(&ps, &path).unwrap();
        assert!(!rep.high_degree_on_hull);
        assert_eq!(rep.interior_branch_vertices, vec![3]);
        assert!(!is_blocking(&ps, &path).unwrap());
    }

    #[test]
    fn convex_blocking_sets_have_the_structure() {
        let ps = convex(6);
        let sets = blocking_sets_of_size(&ps, 3).unwrap();
        assert!(!sets.is_empty());
        for s in sets {
            let rep = verify_blocking_structure(&ps, &s).unwrap();
            assert!(rep.all_hold() && rep.consistent(), "{:?}", s.edges());
        }
        // A star through a diagonal blocks; the boundary-edge claim does not
        // apply to a hexagon, but the evidence still records the diagonal.
        let star = rs(&[(0, 1), (0, 3), (0, 5)]);
        let hull = convex_hull(&ps);
        let star = RemovalSet::new(star.edges().iter().map(|e| EdgeRef::new(hull[e.i], hull[e.j])).collect()).unwrap();
        assert!(is_blocking(&ps, &star).unwrap());
        let rep = verify_blocking_structure(&ps, &star).unwrap();
        assert!(!rep.hull_claims_apply && rep.all_hold());
        assert_eq!(rep.hull_diagonals.len(), 1);
    }

    #[test]
    fn odd_split_examples() {
        let four = convex(4);
        let hull = convex_hull(&four);
        let r = odd_split_blocking(&four, hull[0]).unwrap();
        assert_eq!(r.odd_set, vec![hull[2]]);
        assert_eq!(r.removal.len(), 2);
        assert_eq!(r.oracle_blocking, Some(true));

        let six = convex(6);
        let hull = convex_hull(&six);
        let r = odd_split_blocking(&six, hull[0]).unwrap();
        let mut expect = vec![hull[2], hull[4]];
        expect.sort_unstable();
        assert_eq!(r.odd_set, expect);
        assert_eq!(r.removal.len(), 3);
        assert_eq!(r.oracle_blocking, Some(true));

        let two = convex(2);
        let r = odd_split_blocking(&two, 0).unwrap();
        assert!(r.odd_set.is_empty());
        assert_eq!(r.removal.len(), 1);
    }

    #[test]
    fn odd_split_rejects_interior_vertex() {
        let ps = PointSet::new_general(vec![Point::new(0, 0), Point::new(10, 0), Point::new(5, 9), Point::new(5, 3)])
            .unwrap();
        assert!(matches!(odd_split_blocking(&ps, 3), Err(Error::NotHullVertex(3))));
    }
}
