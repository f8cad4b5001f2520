//! Perfect non-crossing matchings: the exhaustive oracle and the constructive
//! solvers (bichromatic, few removed edges, red minority, cell-by-cell).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocking::RemovalSet;
use crate::error::{Error, Result};
use crate::geom::{open_segments_intersect, EdgeRef, Point, PointSet};
use crate::ham_sandwich::{find_cut, recursive_subdivision, Side, SubdivisionTree};

/// Largest point count the exhaustive enumerators accept.
pub const ORACLE_LIMIT: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<EdgeRef>,
}

/// Why a candidate matching is not a valid answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingDefect {
    OutOfRange(EdgeRef),
    Uncovered(usize),
    Repeated(usize),
    Crossing(EdgeRef, EdgeRef),
    UsesRemoved(EdgeRef),
}

impl fmt::Display for MatchingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingDefect::OutOfRange(e) => write!(f, "edge {e} refers to a missing point"),
            MatchingDefect::Uncovered(v) => write!(f, "vertex {v} is unmatched"),
            MatchingDefect::Repeated(v) => write!(f, "vertex {v} is matched twice"),
            MatchingDefect::Crossing(a, b) => write!(f, "edges {a} and {b} cross"),
            MatchingDefect::UsesRemoved(e) => write!(f, "edge {e} was removed"),
        }
    }
}

impl Matching {
    pub fn new(mut edges: Vec<EdgeRef>) -> Self {
        edges.sort();
        Matching { edges }
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

    /// Checks that every one of the `ps.len()` vertices is covered exactly once.
    pub fn check_perfect(&self, n: usize) -> std::result::Result<(), MatchingDefect> {
        let mut seen = vec![false; n];
        for &e in &self.edges {
            if e.j >= n {
                return Err(MatchingDefect::OutOfRange(e));
            }
            for v in [e.i, e.j] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(MatchingDefect::Repeated(v));
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(MatchingDefect::Uncovered(v)),
            None => Ok(()),
        }
    }

    pub fn check_non_crossing(&self, ps: &PointSet) -> std::result::Result<(), MatchingDefect> {
        for (k, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[k + 1..] {
                if edges_cross(ps.points(), a, b) {
                    return Err(MatchingDefect::Crossing(a, b));
                }
            }
        }
        Ok(())
    }

    /// Full recheck: perfect, non-crossing, and disjoint from `removed`.
    pub fn validate(&self, ps: &PointSet, removed: &[EdgeRef]) -> std::result::Result<(), MatchingDefect> {
        self.check_perfect(ps.len())?;
        self.check_non_crossing(ps)?;
        match removed.iter().find(|e| self.contains(**e)) {
            Some(&e) => Err(MatchingDefect::UsesRemoved(e)),
            None => Ok(()),
        }
    }

    pub fn is_valid(&self, ps: &PointSet) -> bool {
        self.validate(ps, &[]).is_ok()
    }
}

/// Partition of a point set into red and blue indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

impl Coloring {
    /// Colours `red` red and every other index in `0..n` blue.
    pub fn from_red(n: usize, red: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = red.iter().copied().collect();
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(Error::Range(format!("red index {v} out of range for {n} points")));
        }
        if set.len() != red.len() {
            return Err(Error::Range("red index listed twice".into()));
        }
        let blue = (0..n).filter(|v| !set.contains(v)).collect();
        Ok(Coloring { red: set.into_iter().collect(), blue })
    }

    pub fn is_red(&self, v: usize) -> bool {
        self.red.binary_search(&v).is_ok()
    }
}

fn edges_cross(pts: &[Point], a: EdgeRef, b: EdgeRef) -> bool {
    !a.shares_endpoint(&b) && open_segments_intersect(pts[a.i], pts[a.j], pts[b.i], pts[b.j])
}

/// Depth-first enumeration of non-crossing perfect matchings of `members`
/// (global indices), skipping edges for which `allowed` is false. Pairs the
/// lowest unmatched member with each later member in turn, so matchings are
/// produced in lexicographic order of their sorted edge lists. `visit`
/// returns `false` to stop early.
fn enumerate_members(
    pts: &[Point],
    members: &[usize],
    allowed: impl Fn(EdgeRef) -> bool,
    mut visit: impl FnMut(&[EdgeRef]) -> bool,
) -> Result<()> {
    let m = members.len();
    if m > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: m as u128, limit: ORACLE_LIMIT as u128 });
    }
    if m % 2 == 1 {
        return Err(Error::OddInput(m));
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();

    // Local edge ids and, per edge, the bitmask of edges it crosses.
    let id = |a: usize, b: usize| a * m + b;
    let mut ok = vec![false; m * m];
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let e = EdgeRef::new(sorted[a], sorted[b]);
            if allowed(e) {
                ok[id(a, b)] = true;
                edges.push((a, b));
            }
        }
    }
    let slot: std::collections::HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut crosses = vec![0u128; edges.len()];
    for (x, &(a, b)) in edges.iter().enumerate() {
        for (y, &(c, d)) in edges.iter().enumerate().skip(x + 1) {
            let (ea, eb) = (EdgeRef::new(sorted[a], sorted[b]), EdgeRef::new(sorted[c], sorted[d]));
            if edges_cross(pts, ea, eb) {
                crosses[x] |= 1 << y;
                crosses[y] |= 1 << x;
            }
        }
    }

    struct Dfs<'a, F> {
        m: usize,
        sorted: &'a [usize],
        ok: &'a [bool],
        slot: &'a std::collections::HashMap<(usize, usize), usize>,
        crosses: &'a [u128],
        used: Vec<bool>,
        stack: Vec<EdgeRef>,
        visit: F,
    }
    impl<F: FnMut(&[EdgeRef]) -> bool> Dfs<'_, F> {
        fn go(&mut self, blocked: u128) -> bool {
            let Some(a) = (0..self.m).find(|&v| !self.used[v]) else {
                return (self.visit)(&self.stack);
            };
            self.used[a] = true;
            for b in a + 1..self.m {
                if self.used[b] || !self.ok[a * self.m + b] {
                    continue;
                }
                let k = self.slot[&(a, b)];
                if blocked >> k & 1 == 1 {
                    continue;
                }
                self.used[b] = true;
                self.stack.push(EdgeRef::new(self.sorted[a], self.sorted[b]));
                let keep_going = self.go(blocked | self.crosses[k]);
                self.stack.pop();
                self.used[b] = false;
                if !keep_going {
                    self.used[a] = false;
                    return false;
                }
            }
            self.used[a] = false;
            true
        }
    }
    let mut dfs = Dfs {
        m,
        sorted: &sorted,
        ok: &ok,
        slot: &slot,
        crosses: &crosses,
        used: vec![false; m],
        stack: Vec::with_capacity(m / 2),
        visit: &mut visit,
    };
    dfs.go(0);
    Ok(())
}

/// All perfect non-crossing matchings of `ps`, in lexicographic order.
pub fn enumerate_ncpm(ps: &PointSet) -> Result<Vec<Matching>> {
    let members: Vec<usize> = (0..ps.len()).collect();
    let mut out = Vec::new();
    enumerate_members(ps.points(), &members, |_| true, |m| {
        out.push(Matching { edges: m.to_vec() });
        true
    })?;
    Ok(out)
}

/// Number of perfect non-crossing matchings of `ps` avoiding `removed`.
pub fn count_avoiding(ps: &PointSet, removed: &[EdgeRef]) -> Result<usize> {
    let members: Vec<usize> = (0..ps.len()).collect();
    let forbidden: BTreeSet<EdgeRef> = removed.iter().copied().collect();
    let mut count = 0;
    enumerate_members(ps.points(), &members, |e| !forbidden.contains(&e), |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// First matching of the `members` sub-configuration (lexicographic order)
/// that avoids `forbidden`, or `None` if every one uses a forbidden edge.
pub fn match_in_cell(ps: &PointSet, members: &[usize], forbidden: &[EdgeRef]) -> Result<Option<Matching>> {
    if let Some(&v) = members.iter().find(|&&v| v >= ps.len()) {
        return Err(Error::Range(format!("member {v} out of range")));
    }
    let forbidden: BTreeSet<EdgeRef> = forbidden.iter().copied().collect();
    let mut found = None;
    enumerate_members(ps.points(), members, |e| !forbidden.contains(&e), |m| {
        found = Some(Matching { edges: m.to_vec() });
        false
    })?;
    Ok(found)
}

/// Perfect non-crossing matching in which every edge joins a red and a blue
/// point, built by recursive ham-sandwich cuts.
pub fn red_blue_matching(ps: &PointSet, coloring: &Coloring) -> Result<Matching> {
    let (r, b) = (coloring.red.len(), coloring.blue.len());
    if r != b {
        return Err(Error::Unbalanced { red: r, blue: b });
    }
    if r == 0 {
        return Err(Error::EmptyInput);
    }
    let mut hits = vec![0u8; ps.len()];
    for &v in coloring.red.iter().chain(&coloring.blue) {
        if v < ps.len() {
            hits[v] += 1;
        }
    }
    if r + b != ps.len() || hits.iter().any(|&h| h != 1) {
        return Err(Error::Range("colouring must partition the point set".into()));
    }
    ps.require_general()?;
    let mut out = Vec::with_capacity(r);
    rb_recurse(ps.points(), coloring.red.clone(), coloring.blue.clone(), &mut out)?;
    Ok(Matching::new(out))
}

fn rb_recurse(pts: &[Point], red: Vec<usize>, blue: Vec<usize>, out: &mut Vec<EdgeRef>) -> Result<()> {
    debug_assert_eq!(red.len(), blue.len());
    match red.len() {
        0 => return Ok(()),
        1 => {
            out.push(EdgeRef::new(red[0], blue[0]));
            return Ok(());
        }
        _ => {}
    }
    let ids: Vec<usize> = red.iter().chain(&blue).copied().collect();
    let local: Vec<Point> = ids.iter().map(|&v| pts[v]).collect();
    let mut is_red = vec![true; red.len()];
    is_red.resize(ids.len(), false);
    let cut = find_cut(&local, &is_red).ok_or(Error::NoCutFound)?;

    let mut parts = [(Vec::new(), Vec::new()), (Vec::new(), Vec::new())];
    let mut on = Vec::new();
    for (k, &v) in ids.iter().enumerate() {
        let part = match cut.side_of(&local, k) {
            Side::Left => &mut parts[0],
            Side::Right => &mut parts[1],
            Side::OnLine => {
                on.push(v);
                continue;
            }
        };
        if is_red[k] { part.0.push(v) } else { part.1.push(v) }
    }
    if let [x, y] = on[..] {
        out.push(EdgeRef::new(x, y));
    }
    for (r, b) in parts {
        rb_recurse(pts, r, b, out)?;
    }
    Ok(())
}

/// Matching avoiding red-red `forbidden` edges when blue points are at least
/// as numerous as red ones: surplus blues are recoloured red and every edge of
/// the bichromatic matching is then red-blue.
pub fn matchable_mixed(ps: &PointSet, red: &[usize], forbidden: &[EdgeRef]) -> Result<Matching> {
    let n = ps.len();
    if n % 2 == 1 {
        return Err(Error::OddInput(n));
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let coloring = Coloring::from_red(n, red)?;
    let (r, b) = (coloring.red.len(), coloring.blue.len());
    if r > b {
        return Err(Error::RedMajority { red: r, blue: b });
    }
    if let Some(&e) = forbidden.iter().find(|e| !(coloring.is_red(e.i) && coloring.is_red(e.j))) {
        return Err(Error::BadForbidden(e));
    }
    let mut promote = coloring.blue.clone();
    promote.sort_by_key(|&v| ps.get(v));
    promote.truncate((b - r) / 2);
    let mut reds = coloring.red.clone();
    reds.extend(promote);
    let matching = red_blue_matching(ps, &Coloring::from_red(n, &reds)?)?;
    debug_assert!(forbidden.iter().all(|&e| !matching.contains(e)));
    Ok(matching)
}

/// Matching of `2n` points avoiding at most `n - 1` removed edges.
///
/// Components of the removed graph are packed, largest first, into one half;
/// the half is topped up with isolated vertices and coloured red, so every
/// removed edge is monochromatic and the bichromatic matching avoids it.
pub fn match_avoiding_few(ps: &PointSet, removal: &RemovalSet) -> Result<Matching> {
    let total = ps.len();
    if total % 2 == 1 {
        return Err(Error::OddInput(total));
    }
    if total == 0 {
        return Err(Error::EmptyInput);
    }
    let n = total / 2;
    if removal.len() >= n {
        return Err(Error::TooManyEdges { edges: removal.len(), limit: n - 1 });
    }
    removal.check_range(total)?;

    let mut comps = removal.components();
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut side_a = Vec::new();
    for c in &comps {
        if side_a.len() + c.len() > n {
            break;
        }
        side_a.extend_from_slice(c);
    }
    let in_h: BTreeSet<usize> = removal.vertices().into_iter().collect();
    let mut free: Vec<usize> = (0..total).filter(|v| !in_h.contains(v)).collect();
    free.sort_by_key(|&v| ps.get(v));
    let need = n - side_a.len();
    if free.len() < need {
        return Err(Error::ConstructionFailed(format!(
            "only {} isolated vertices available to fill {need} slots",
            free.len()
        )));
    }
    side_a.extend_from_slice(&free[..need]);

    let matching = red_blue_matching(ps, &Coloring::from_red(total, &side_a)?)?;
    assert!(
        removal.edges().iter().all(|&e| !matching.contains(e)),
        "partition left a removed edge bichromatic"
    );
    Ok(matching)
}

/// Result of the subdivision-based matcher.
#[derive(Clone, Debug)]
pub enum ResilientOutcome {
    Matched { matching: Matching, tree: SubdivisionTree },
    /// A leaf cell had no matching avoiding its active edges.
    LeafFailed { members: Vec<usize>, active_edges: Vec<EdgeRef>, tree: SubdivisionTree },
}

impl ResilientOutcome {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            ResilientOutcome::Matched { matching, .. } => Some(matching),
            ResilientOutcome::LeafFailed { .. } => None,
        }
    }

    pub fn tree(&self) -> &SubdivisionTree {
        match self {
            ResilientOutcome::Matched { tree, .. } | ResilientOutcome::LeafFailed { tree, .. } => tree,
        }
    }
}

/// Subdivides by ham-sandwich cuts against the removed-edge midpoints, then
/// solves every leaf cell by enumeration. Leaf cells are disjoint convex
/// regions, so the union of the leaf matchings is non-crossing. A failed
/// leaf does not mean the removal is blocking.
pub fn match_avoiding_resilient(
    ps: &PointSet,
    removal: &RemovalSet,
    stop_threshold: usize,
) -> Result<ResilientOutcome> {
    let tree = recursive_subdivision(ps, removal.edges(), stop_threshold)?;
    let leaves = tree.leaves();
    let solved: Vec<Result<Option<Matching>>> = leaves
        .par_iter()
        .map(|leaf| match_in_cell(ps, &leaf.blue_members, &leaf.active_edges))
        .collect();
    let mut edges = Vec::with_capacity(ps.len() / 2);
    for (leaf, res) in leaves.iter().zip(solved) {
        match res? {
            Some(m) => edges.extend_from_slice(m.edges()),
            None => {
                let (members, active_edges) = (leaf.blue_members.clone(), leaf.active_edges.clone());
                return Ok(ResilientOutcome::LeafFailed { members, active_edges, tree });
            }
        }
    }
    Ok(ResilientOutcome::Matched { matching: Matching::new(edges), tree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[(i64, i64)]) -> PointSet {
        PointSet::new_general(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    /// Convex 2n-gon on the parabola y = x^2.
    fn convex(two_n: usize) -> PointSet {
        set(&(0..two_n as i64).map(|i| (i, i * i)).collect::<Vec<_>>())
    }

    fn random_general(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
        loop {
            let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(0..1000), rng.gen_range(0..1000))).collect();
            if let Ok(ps) = PointSet::new_general(pts) {
                return ps;
            }
        }
    }

    /// Independent oracle: all (2n-1)!! pairings, filtered by pairwise crossing.
    fn all_pairings(ps: &PointSet) -> Vec<Matching> {
        fn rec(rest: &[usize], cur: &mut Vec<EdgeRef>, out: &mut Vec<Vec<EdgeRef>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for k in 1..rest.len() {
                cur.push(EdgeRef::new(rest[0], rest[k]));
                let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&v| v != rest[k]).collect();
                rec(&remaining, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&(0..ps.len()).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
        let mut ms: Vec<Matching> =
            out.into_iter().map(Matching::new).filter(|m| m.check_non_crossing(ps).is_ok()).collect();
        ms.sort();
        ms
    }

    #[test]
    fn catalan_counts_on_convex_sets() {
        assert_eq!(enumerate_ncpm(&convex(2)).unwrap().len(), 1);
        for (two_n, c) in [(4, 2), (6, 5), (8, 14), (10, 42), (12, 132)] {
            assert_eq!(enumerate_ncpm(&convex(two_n)).unwrap().len(), c, "2n = {two_n}");
        }
    }

    #[test]
    fn enumeration_matches_filtered_pairings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ps = random_general(&mut rng, 8);
            let fast = enumerate_ncpm(&ps).unwrap();
            assert_eq!(fast, all_pairings(&ps));
            assert!(fast.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(enumerate_ncpm(&convex(3)), Err(Error::OddInput(3))));
        let big = random_general(&mut ChaCha8Rng::seed_from_u64(1), 18);
        assert!(matches!(enumerate_ncpm(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn single_bichromatic_edge() {
        let ps = set(&[(0, 0), (3, 1)]);
        let m = red_blue_matching(&ps, &Coloring::from_red(2, &[0]).unwrap()).unwrap();
        assert_eq!(m.edges(), &[EdgeRef::new(0, 1)]);
    }

    #[test]
    fn two_columns() {
        let ps = set(&[(0, 0), (1, 10), (0, 21), (10, 1), (11, 11), (10, 20)]);
        let col = Coloring::from_red(6, &[0, 1, 2]).unwrap();
        let m = red_blue_matching(&ps, &col).unwrap();
        assert!(m.is_valid(&ps));
        assert!(m.edges().iter().all(|e| col.is_red(e.i) != col.is_red(e.j)));
    }

    #[test]
    fn random_bichromatic_five_plus_five() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let ps = random_general(&mut rng, 10);
            let col = Coloring::from_red(10, &[0, 1, 2, 3, 4]).unwrap();
            let m = red_blue_matching(&ps, &col).unwrap();
            assert_eq!(m.validate(&ps, &[]), Ok(()));
            assert!(m.edges().iter().all(|e| col.is_red(e.i) != col.is_red(e.j)));
        }
    }

    #[test]
    fn unbalanced_colouring_rejected() {
        let ps = convex(4);
        let col = Coloring::from_red(4, &[0]).unwrap();
        assert!(matches!(red_blue_matching(&ps, &col), Err(Error::Unbalanced { red: 1, blue: 3 })));
    }

    #[test]
    fn mixed_with_two_reds() {
        let ps = set(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let m = matchable_mixed(&ps, &[0, 2], &[EdgeRef::new(0, 2)]).unwrap();
        assert!(m.is_valid(&ps) && !m.contains(EdgeRef::new(0, 2)));
        assert!(m.edges().iter().all(|e| (e.i % 2) != (e.j % 2)));

        let two = set(&[(0, 0), (1, 1)]);
        assert_eq!(matchable_mixed(&two, &[], &[]).unwrap().edges(), &[EdgeRef::new(0, 1)]);
    }

    #[test]
    fn mixed_cross_checked_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let ps = random_general(&mut rng, 6);
            let f = EdgeRef::new(1, 4);
            let m = matchable_mixed(&ps, &[1, 4], &[f]).unwrap();
            assert!(all_pairings(&ps).iter().filter(|o| !o.contains(f)).any(|o| *o == m));
        }
    }

    #[test]
    fn mixed_errors() {
        let ps = convex(4);
        assert!(matches!(matchable_mixed(&ps, &[0, 1, 2], &[]), Err(Error::RedMajority { .. })));
        assert!(matches!(
            matchable_mixed(&ps, &[0], &[EdgeRef::new(0, 1)]),
            Err(Error::BadForbidden(_))
        ));
    }

    #[test]
    fn few_removed_edges() {
        let ps = convex(4);
        for e in [EdgeRef::new(0, 1), EdgeRef::new(0, 3), EdgeRef::new(1, 2)] {
            let rs = RemovalSet::new(vec![e]).unwrap();
            let m = match_avoiding_few(&ps, &rs).unwrap();
            assert_eq!(m.validate(&ps, &[e]), Ok(()));
        }
        let two = convex(2);
        let m = match_avoiding_few(&two, &RemovalSet::new(vec![]).unwrap()).unwrap();
        assert_eq!(m.len(), 1);
        let rs = RemovalSet::new(vec![EdgeRef::new(0, 1), EdgeRef::new(2, 3)]).unwrap();
        assert!(matches!(match_avoiding_few(&ps, &rs), Err(Error::TooManyEdges { .. })));
    }

    #[test]
    fn few_removed_star_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let ps = random_general(&mut rng, 8);
            let c = rng.gen_range(0..8);
            let mut leaves: Vec<usize> = (0..8).filter(|&v| v != c).collect();
            leaves.truncate(3);
            let rs = RemovalSet::new(leaves.iter().map(|&v| EdgeRef::new(c, v)).collect()).unwrap();
            let m = match_avoiding_few(&ps, &rs).unwrap();
            let avoiding: Vec<Matching> = all_pairings(&ps)
                .into_iter()
                .filter(|o| rs.edges().iter().all(|&e| !o.contains(e)))
                .collect();
            assert!(avoiding.contains(&m));
        }
    }

    #[test]
    fn cell_solver_cases() {
        let two = set(&[(0, 0), (1, 1)]);
        assert_eq!(match_in_cell(&two, &[0, 1], &[EdgeRef::new(0, 1)]).unwrap(), None);

        let sq = set(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let m = match_in_cell(&sq, &[0, 1, 2, 3], &[EdgeRef::new(0, 1)]).unwrap().unwrap();
        assert_eq!(m.edges(), &[EdgeRef::new(0, 3), EdgeRef::new(1, 2)]);
        let adjacent = [EdgeRef::new(0, 1), EdgeRef::new(1, 2)];
        assert_eq!(match_in_cell(&sq, &[0, 1, 2, 3], &adjacent).unwrap(), None);
    }

    #[test]
    fn resilient_single_cell() {
        let ps = set(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let rs = RemovalSet::new(vec![EdgeRef::new(0, 1)]).unwrap();
        let out = match_avoiding_resilient(&ps, &rs, 8).unwrap();
        assert!(out.tree().root.is_leaf());
        let m = out.matching().unwrap();
        assert_eq!(m.validate(&ps, rs.edges()), Ok(()));
    }

    #[test]
    fn resilient_multi_cell_output_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let ps = random_general(&mut rng, 32);
            let mut edges = BTreeSet::new();
            while edges.len() < 15 {
                let (a, b) = (rng.gen_range(0..32), rng.gen_range(0..32));
                if a != b {
                    edges.insert(EdgeRef::new(a, b));
                }
            }
            let rs = RemovalSet::new(edges.into_iter().collect()).unwrap();
            if let ResilientOutcome::Matched { matching, .. } = match_avoiding_resilient(&ps, &rs, 8).unwrap() {
                assert_eq!(matching.validate(&ps, rs.edges()), Ok(()));
            }
        }
    }
}
