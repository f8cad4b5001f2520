//! Seeded Monte Carlo experiments on random point sets.
//!
//! Every experiment is a pure function of its parameters and a master seed.
//! Trial `i` runs on `ChaCha8Rng::seed_from_u64(trial_seed(master, i))`,
//! where `trial_seed` is one round of splitmix64 over
//! `master + (i + 1) * 0x9E3779B97F4A7C15`. Trials run in parallel and are
//! collected in index order, so reports do not depend on scheduling.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blocking::{odd_split_blocking, RemovalSet};
use crate::error::{Error, Result};
use crate::geom::{
    convex_hull, convex_hull_of, cross, inside_convex, reduced_direction, strictly_inside_convex, EdgeRef, Point, PointSet,
    COORD_BOUND,
};
use crate::ham_sandwich::default_stop_threshold;
use crate::matcher::{match_avoiding_few, match_avoiding_resilient, ResilientOutcome};

/// Largest number of k-subsets [`empty_kgon_scan`] will visit.
pub const KGON_LIMIT: u128 = 10_000_000;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    splitmix64(master.wrapping_add((trial as u64 + 1).wrapping_mul(GOLDEN)))
}

fn trial_rng(master: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, trial))
}

/// Closed convex sampling region on the integer grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleRegion {
    /// `[0, side]²`.
    Square { side: i64 },
    /// Closed disk of integer centre and radius.
    Disk { cx: i64, cy: i64, r: i64 },
    /// Convex polygon with integer vertices.
    Polygon { vertices: Vec<Point> },
}

impl SampleRegion {
    pub fn square() -> Self {
        SampleRegion::Square { side: COORD_BOUND }
    }

    pub fn disk() -> Self {
        let h = COORD_BOUND / 2;
        SampleRegion::Disk { cx: h, cy: h, r: h }
    }

    /// Validates a polygon region; the vertices are replaced by their hull.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        let ps = PointSet::new(vertices)?;
        let hull = convex_hull(&ps);
        if hull.len() < 3 {
            return Err(Error::Degenerate("polygon region has no interior".into()));
        }
        if hull.len() != ps.len() {
            return Err(Error::Precondition("polygon region must be strictly convex".into()));
        }
        Ok(SampleRegion::Polygon { vertices: hull.iter().map(|&i| ps.get(i)).collect() })
    }

    fn validate(&self) -> Result<()> {
        let ok = |p: Point| p.in_range();
        let fine = match self {
            SampleRegion::Square { side } => *side >= 1 && ok(Point::new(*side, *side)),
            SampleRegion::Disk { cx, cy, r } => {
                *r >= 1 && ok(Point::new(cx - r, cy - r)) && ok(Point::new(cx + r, cy + r))
            }
            SampleRegion::Polygon { vertices } => vertices.len() >= 3 && vertices.iter().all(|&p| ok(p)),
        };
        if fine {
            Ok(())
        } else {
            Err(Error::Range(format!("region {self:?} is empty or leaves the coordinate box")))
        }
    }

    /// Number of grid points in the region (approximate for the disk).
    pub fn cells(&self) -> f64 {
        match self {
            SampleRegion::Square { side } => ((side + 1) as f64).powi(2),
            SampleRegion::Disk { r, .. } => std::f64::consts::PI * (*r as f64).powi(2),
            SampleRegion::Polygon { vertices } => {
                // Pick's theorem: I + B = A + B/2 + 1.
                let n = vertices.len();
                let mut twice_area = 0i128;
                let mut boundary = 0i64;
                for k in 0..n {
                    let (p, q) = (vertices[k], vertices[(k + 1) % n]);
                    twice_area += p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128;
                    boundary += (q.x - p.x).abs().gcd(&(q.y - p.y).abs());
                }
                (twice_area.unsigned_abs() as f64 + boundary as f64) / 2.0 + 1.0
            }
        }
    }

    fn bbox(&self) -> (i64, i64, i64, i64) {
        match self {
            SampleRegion::Square { side } => (0, 0, *side, *side),
            SampleRegion::Disk { cx, cy, r } => (cx - r, cy - r, cx + r, cy + r),
            SampleRegion::Polygon { vertices } => {
                let xs = vertices.iter().map(|p| p.x);
                let ys = vertices.iter().map(|p| p.y);
                (xs.clone().min().unwrap(), ys.clone().min().unwrap(), xs.max().unwrap(), ys.max().unwrap())
            }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            SampleRegion::Square { side } => (0..=*side).contains(&p.x) && (0..=*side).contains(&p.y),
            SampleRegion::Disk { cx, cy, r } => (p.x - cx).pow(2) + (p.y - cy).pow(2) <= r * r,
            SampleRegion::Polygon { vertices } => inside_convex(vertices, p),
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> Point {
        let (x0, y0, x1, y1) = self.bbox();
        loop {
            let p = Point::new(rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
            if self.contains(p) {
                return p;
            }
        }
    }
}

/// True iff no two points of `pts` lie on a common line through `p`.
///
/// Equal rationals give bit-identical correctly rounded quotients, so the
/// f64 slope is a sound hash key; a key collision is settled exactly, and
/// only an inexact collision falls back to reduced integer directions.
fn no_collinear_pair(
    p: Point,
    pts: &[Point],
    slopes: &mut FxHashMap<u64, usize>,
    dirs: &mut FxHashSet<(i64, i64)>,
) -> bool {
    slopes.clear();
    let mut ambiguous = false;
    for (j, q) in pts.iter().enumerate() {
        let (dx, dy) = (q.x - p.x, q.y - p.y);
        let key = if dx == 0 { f64::INFINITY } else { dy as f64 / dx as f64 + 0.0 };
        if let Some(k) = slopes.insert(key.to_bits(), j) {
            if cross(p, pts[k], *q) == 0 {
                return false;
            }
            ambiguous = true;
        }
    }
    if ambiguous {
        dirs.clear();
        return pts.iter().all(|q| dirs.insert(reduced_direction(p.x - q.x, p.y - q.y)));
    }
    true
}

pub fn sample_points_with<R: Rng>(region: &SampleRegion, n: usize, rng: &mut R) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    region.validate()?;
    let needed = 4.0 * (n as f64).powi(2);
    let cells = region.cells();
    if cells < needed {
        return Err(Error::RegionTooSmall { cells, needed });
    }
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut seen: HashSet<Point> = HashSet::with_capacity(n);
    let mut slopes: FxHashMap<u64, usize> = FxHashMap::default();
    let mut dirs: FxHashSet<(i64, i64)> = FxHashSet::default();
    while pts.len() < n {
        let p = region.draw(rng);
        if seen.contains(&p) {
            continue;
        }
        if no_collinear_pair(p, &pts, &mut slopes, &mut dirs) {
            seen.insert(p);
            pts.push(p);
        }
    }
    PointSet::new_unchecked_general(pts)
}

/// `n` grid points drawn uniformly from `region`, resampling collisions
/// and collinear draws.
pub fn sample_points(region: &SampleRegion, n: usize, seed: u64) -> Result<PointSet> {
    sample_points_with(region, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Mean with a 95% normal-approximation half width.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub half_width: f64,
    pub count: usize,
}

impl Stat {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Stat {
        let v: Vec<f64> = values.into_iter().collect();
        let count = v.len();
        if count == 0 {
            return Stat { mean: f64::NAN, half_width: f64::NAN, count };
        }
        let mean = v.iter().sum::<f64>() / count as f64;
        let half_width = if count > 1 {
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            1.96 * (var / count as f64).sqrt()
        } else {
            f64::INFINITY
        };
        Stat { mean, half_width, count }
    }

    pub fn rate(successes: usize, count: usize) -> Stat {
        let p = successes as f64 / count as f64;
        Stat { mean: p, half_width: 1.96 * (p * (1.0 - p) / count as f64).sqrt(), count }
    }

    fn value(mean: f64) -> Stat {
        Stat { mean, half_width: 0.0, count: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Value,
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<Value>,
    pub aggregates: BTreeMap<String, Stat>,
    pub wall_clock_ms: u128,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn aggregate(&self, key: &str) -> Option<&Stat> {
        self.aggregates.get(key)
    }

    /// Same report with the clock zeroed, for reproducibility comparisons.
    pub fn without_clock(&self) -> ExperimentReport {
        ExperimentReport { wall_clock_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One `name,mean,half_width,count` row per aggregate.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,mean,half_width,count\n");
        for (k, v) in &self.aggregates {
            s.push_str(&format!("{k},{},{},{}\n", v.mean, v.half_width, v.count));
        }
        s
    }
}

fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> Result<T> + Sync,
{
    (0..trials).into_par_iter().map(|i| f(i, &mut trial_rng(seed, i))).collect()
}

fn to_values<T: Serialize>(items: &[T]) -> Vec<Value> {
    items.iter().map(|t| serde_json::to_value(t).expect("outcome serializes")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalModel {
    /// Distinct edges drawn uniformly.
    Uniform,
    /// Random labelled tree on a random set of n+1 points, topped up with
    /// uniform edges if more are needed.
    SpanningTree,
    /// Edges at one random vertex, topped up uniformly beyond 2n−1.
    Star,
    /// Edges with a hull endpoint first, in random order, then uniform.
    HullBiased,
}

impl RemovalModel {
    pub const ALL: [RemovalModel; 4] =
        [RemovalModel::Uniform, RemovalModel::SpanningTree, RemovalModel::Star, RemovalModel::HullBiased];
}

/// Removal-set size used by the resilience experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalSize {
    /// ⌈n + n/(3·log₂(2n))⌉.
    Default,
    Fixed(usize),
}

impl RemovalSize {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            RemovalSize::Default => default_removal_size(n),
            RemovalSize::Fixed(k) => k,
        }
    }
}

pub fn default_removal_size(n: usize) -> usize {
    let nf = n as f64;
    (nf + nf / (3.0 * (2.0 * nf).log2())).ceil() as usize
}

fn fill_uniform<R: Rng>(edges: &mut Vec<EdgeRef>, total: usize, k: usize, rng: &mut R) {
    let mut have: HashSet<EdgeRef> = edges.iter().copied().collect();
    while edges.len() < k {
        let (a, b) = (rng.gen_range(0..total), rng.gen_range(0..total));
        if a != b && have.insert(EdgeRef::new(a, b)) {
            edges.push(EdgeRef::new(a, b));
        }
    }
}

pub fn draw_removal<R: Rng>(ps: &PointSet, model: RemovalModel, k: usize, rng: &mut R) -> Result<RemovalSet> {
    let total = ps.len();
    let all = total * (total - 1) / 2;
    if k > all {
        return Err(Error::Range(format!("cannot remove {k} of {all} edges")));
    }
    let mut edges = Vec::with_capacity(k);
    match model {
        RemovalModel::Uniform => {}
        RemovalModel::SpanningTree => {
            let mut verts: Vec<usize> = (0..total).collect();
            verts.shuffle(rng);
            verts.truncate((total / 2 + 1).min(total));
            // Random attachment order gives a random recursive tree.
            for t in 1..verts.len() {
                let parent = verts[rng.gen_range(0..t)];
                edges.push(EdgeRef::new(verts[t], parent));
            }
            edges.shuffle(rng);
            edges.truncate(k);
        }
        RemovalModel::Star => {
            let c = rng.gen_range(0..total);
            let mut others: Vec<usize> = (0..total).filter(|&v| v != c).collect();
            others.shuffle(rng);
            edges.extend(others.into_iter().take(k).map(|v| EdgeRef::new(c, v)));
        }
        RemovalModel::HullBiased => {
            let hull = convex_hull(ps);
            let on_hull: HashSet<usize> = hull.iter().copied().collect();
            let mut pool: Vec<EdgeRef> = (0..total)
                .flat_map(|a| (a + 1..total).map(move |b| EdgeRef::new(a, b)))
                .filter(|e| on_hull.contains(&e.i) || on_hull.contains(&e.j))
                .collect();
            pool.shuffle(rng);
            pool.truncate(k);
            edges = pool;
        }
    }
    fill_uniform(&mut edges, total, k, rng);
    RemovalSet::new(edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureAnatomy {
    pub leaf_depth: usize,
    pub leaf_members: usize,
    pub leaf_active_edges: usize,
    /// Whether the whole removal set blocks (only decided within the oracle guard).
    pub globally_blocking: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResilienceTrial {
    pub trial: usize,
    pub removal_size: usize,
    pub success: bool,
    pub used_fallback: bool,
    pub tree_depth: usize,
    pub leaves: usize,
    pub recursion_violations: usize,
    pub failure: Option<FailureAnatomy>,
}

/// Samples 2n points, removes edges according to `model` and runs the
/// subdivision matcher. With at most n−1 removed edges a failed leaf falls
/// back to the direct construction, which always succeeds there.
pub fn resilience_experiment(
    region: &SampleRegion,
    n: usize,
    size: RemovalSize,
    model: RemovalModel,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if n < 8 {
        return Err(Error::Precondition(format!("resilience needs n >= 8, got {n}")));
    }
    let start = Instant::now();
    let k = size.resolve(n);
    let threshold = default_stop_threshold(2 * n);
    let rows = run_trials(trials, seed, |trial, rng| {
        let ps = sample_points_with(region, 2 * n, rng)?;
        let removal = draw_removal(&ps, model, k, rng)?;
        let outcome = match_avoiding_resilient(&ps, &removal, threshold)?;
        let tree = outcome.tree();
        let (tree_depth, leaves, recursion_violations) =
            (tree.depth(), tree.leaves().len(), tree.violations().len());
        let mut used_fallback = false;
        let mut failure = None;
        let matching = match &outcome {
            ResilientOutcome::Matched { matching, .. } => Some(matching.clone()),
            ResilientOutcome::LeafFailed { members, active_edges, .. } => {
                let leaf_depth = tree
                    .leaves()
                    .iter()
                    .find(|l| &l.blue_members == members)
                    .map_or(0, |l| l.depth);
                failure = Some(FailureAnatomy {
                    leaf_depth,
                    leaf_members: members.len(),
                    leaf_active_edges: active_edges.len(),
                    globally_blocking: None,
                });
                if removal.len() < n {
                    used_fallback = true;
                    Some(match_avoiding_few(&ps, &removal)?)
                } else {
                    None
                }
            }
        };
        let success = matching.is_some_and(|m| m.validate(&ps, removal.edges()).is_ok());
        if let (Some(f), false) = (failure.as_mut(), success) {
            if ps.len() <= crate::matcher::ORACLE_LIMIT {
                f.globally_blocking = Some(crate::blocking::is_blocking(&ps, &removal)?);
            }
        }
        Ok(ResilienceTrial {
            trial,
            removal_size: removal.len(),
            success,
            used_fallback,
            tree_depth,
            leaves,
            recursion_violations,
            failure,
        })
    })?;
    let mut aggregates = BTreeMap::new();
    let successes = rows.iter().filter(|r| r.success).count();
    aggregates.insert("success_rate".into(), Stat::rate(successes, trials));
    aggregates.insert(
        "fallback_rate".into(),
        Stat::rate(rows.iter().filter(|r| r.used_fallback).count(), trials),
    );
    aggregates.insert("tree_depth".into(), Stat::of(rows.iter().map(|r| r.tree_depth as f64)));
    aggregates.insert("leaves".into(), Stat::of(rows.iter().map(|r| r.leaves as f64)));
    aggregates.insert(
        "recursion_violations".into(),
        Stat::of(rows.iter().map(|r| r.recursion_violations as f64)),
    );
    Ok(ExperimentReport {
        experiment: "resilience".into(),
        params: json!({
            "region": region, "n": n, "removal_size": k, "model": model,
            "stop_threshold": threshold, "trials": trials,
        }),
        seed,
        trials,
        outcomes: to_values(&rows),
        aggregates,
        wall_clock_ms: start.elapsed().as_millis(),
        notes: vec!["success rates are empirical; no probabilistic mode is assumed".into()],
    })
}

/// Fraction of trials whose `n` points are all hull vertices.
pub fn convex_position_probability(
    region: &SampleRegion,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if !(3..=12).contains(&n) {
        return Err(Error::Precondition(format!("n must be in 3..=12, got {n}")));
    }
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is needed".into()));
    }
    let start = Instant::now();
    let rows = run_trials(trials, seed, |_, rng| {
        let ps = sample_points_with(region, n, rng)?;
        Ok(convex_hull(&ps).len() == n)
    })?;
    let hits = rows.iter().filter(|&&b| b).count();
    let rate = Stat::rate(hits, trials);
    let scaled = (n * n) as f64 * rate.mean.powf(1.0 / n as f64);
    let mut aggregates = BTreeMap::new();
    aggregates.insert("p_hat".into(), rate);
    aggregates.insert("n2_root_n".into(), Stat::value(scaled));
    let mut notes = Vec::new();
    if trials < 10_000 {
        notes.push(format!("only {trials} trials; at least 10000 are recommended"));
    }
    Ok(ExperimentReport {
        experiment: "convexprob".into(),
        params: json!({ "region": region, "n": n, "trials": trials }),
        seed,
        trials,
        outcomes: rows.into_iter().map(Value::Bool).collect(),
        aggregates,
        wall_clock_ms: start.elapsed().as_millis(),
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptyKgon {
    pub min_interior: usize,
    /// Sorted indices of a convex k-subset attaining the minimum.
    pub witness: Vec<usize>,
    pub convex_subsets: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Minimum number of points strictly inside a convex k-gon spanned by the
/// input, over all k-subsets in convex position. `None` when no k-subset
/// is in convex position.
pub fn empty_kgon_scan(ps: &PointSet, k: usize) -> Result<Option<EmptyKgon>> {
    if k < 3 {
        return Err(Error::Range(format!("k must be at least 3, got {k}")));
    }
    ps.require_general()?;
    let size = binomial(ps.len(), k);
    if size > KGON_LIMIT {
        return Err(Error::TooLarge { size, limit: KGON_LIMIT });
    }
    let pts = ps.points();
    let n = pts.len();
    let mut best: Option<EmptyKgon> = None;
    let mut convex_subsets = 0u64;
    let mut idx: Vec<usize> = (0..k.min(n)).collect();
    if k > n {
        return Ok(None);
    }
    let mut sub = vec![Point::new(0, 0); k];
    loop {
        for (s, &i) in sub.iter_mut().zip(&idx) {
            *s = pts[i];
        }
        let hull = convex_hull_of(&sub);
        if hull.len() == k {
            convex_subsets += 1;
            let poly: Vec<Point> = hull.iter().map(|&h| sub[h]).collect();
            let cap = best.as_ref().map_or(usize::MAX, |b| b.min_interior);
            let mut inside = 0;
            for &p in pts {
                if strictly_inside_convex(&poly, p) {
                    inside += 1;
                    if inside >= cap {
                        break;
                    }
                }
            }
            if inside < cap {
                best = Some(EmptyKgon { min_interior: inside, witness: idx.clone(), convex_subsets: 0 });
            }
        }
        // Next combination in lexicographic order.
        let mut t = k;
        while t > 0 && idx[t - 1] == n - k + t - 1 {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        idx[t - 1] += 1;
        for u in t..k {
            idx[u] = idx[u - 1] + 1;
        }
    }
    Ok(best.map(|b| EmptyKgon { convex_subsets, ..b }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct KgonTrial {
    trial: usize,
    min_interior: Option<usize>,
    witness: Vec<usize>,
}

/// Runs [`empty_kgon_scan`] on `trials` random sets of `n` points.
pub fn empty_kgon_experiment(
    region: &SampleRegion,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let rows = run_trials(trials, seed, |trial, rng| {
        let ps = sample_points_with(region, n, rng)?;
        let scan = empty_kgon_scan(&ps, k)?;
        Ok(KgonTrial {
            trial,
            min_interior: scan.as_ref().map(|s| s.min_interior),
            witness: scan.map(|s| s.witness).unwrap_or_default(),
        })
    })?;
    let found: Vec<usize> = rows.iter().filter_map(|r| r.min_interior).collect();
    let mut aggregates = BTreeMap::new();
    aggregates.insert("min_interior".into(), Stat::of(found.iter().map(|&m| m as f64)));
    aggregates.insert("empty_rate".into(), Stat::rate(found.iter().filter(|&&m| m == 0).count(), trials));
    Ok(ExperimentReport {
        experiment: "emptykgon".into(),
        params: json!({ "region": region, "n": n, "k": k, "trials": trials }),
        seed,
        trials,
        outcomes: to_values(&rows),
        aggregates,
        wall_clock_ms: start.elapsed().as_millis(),
        notes: vec!["fixed small k is a proxy; the regime k >= log n as n grows is out of reach of exhaustive scans".into()],
    })
}

/// Mean number of hull vertices of `n` random points, with the ratios
/// against log₂ n and n^(1/3).
pub fn hull_count_expectation(
    region: &SampleRegion,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("n must be at least 3, got {n}")));
    }
    let start = Instant::now();
    let rows = run_trials(trials, seed, |_, rng| Ok(convex_hull(&sample_points_with(region, n, rng)?).len()))?;
    let c = Stat::of(rows.iter().map(|&h| h as f64));
    let nf = n as f64;
    let mut aggregates = BTreeMap::new();
    aggregates.insert("ratio_log".into(), Stat::value(c.mean / nf.log2()));
    aggregates.insert("ratio_cbrt".into(), Stat::value(c.mean / nf.cbrt()));
    aggregates.insert("hull_count".into(), c);
    Ok(ExperimentReport {
        experiment: "hullcount".into(),
        params: json!({ "region": region, "n": n, "trials": trials }),
        seed,
        trials,
        outcomes: rows.into_iter().map(Value::from).collect(),
        aggregates,
        wall_clock_ms: start.elapsed().as_millis(),
        notes: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSplitTrial {
    pub trial: usize,
    pub p0: usize,
    pub hull_size: usize,
    pub odd_count: usize,
    pub removal_size: usize,
    pub oracle_blocking: Option<bool>,
}

/// Odd-split removal at the lexicographically least point of 2n random
/// points, compared against half the mean hull size.
pub fn odd_split_statistics(
    region: &SampleRegion,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    let start = Instant::now();
    let rows = run_trials(trials, seed, |trial, rng| {
        let ps = sample_points_with(region, 2 * n, rng)?;
        // The lexicographic minimum is always a hull vertex.
        let p0 = (0..ps.len()).min_by_key(|&i| ps.get(i)).expect("nonempty");
        let split = odd_split_blocking(&ps, p0)?;
        Ok(OddSplitTrial {
            trial,
            p0,
            hull_size: convex_hull(&ps).len(),
            odd_count: split.odd_set.len(),
            removal_size: split.removal.len(),
            oracle_blocking: split.oracle_blocking,
        })
    })?;
    let odd = Stat::of(rows.iter().map(|r| r.odd_count as f64));
    let hull = Stat::of(rows.iter().map(|r| r.hull_size as f64));
    let checked: Vec<bool> = rows.iter().filter_map(|r| r.oracle_blocking).collect();
    let mut aggregates = BTreeMap::new();
    aggregates.insert("odd_over_half_hull".into(), Stat::value(odd.mean / (hull.mean / 2.0)));
    aggregates.insert("odd_count".into(), odd);
    aggregates.insert("hull_count".into(), hull);
    aggregates.insert("removal_size".into(), Stat::of(rows.iter().map(|r| r.removal_size as f64)));
    if !checked.is_empty() {
        aggregates.insert(
            "oracle_blocking_rate".into(),
            Stat::rate(checked.iter().filter(|&&b| b).count(), checked.len()),
        );
    }
    Ok(ExperimentReport {
        experiment: "oddsplit".into(),
        params: json!({ "region": region, "n": n, "trials": trials }),
        seed,
        trials,
        outcomes: to_values(&rows),
        aggregates,
        wall_clock_ms: start.elapsed().as_millis(),
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_general_position;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        let seeds: HashSet<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn sampling_is_deterministic_and_general() {
        let a = sample_points(&SampleRegion::square(), 100, 5).unwrap();
        let b = sample_points(&SampleRegion::square(), 100, 5).unwrap();
        assert_eq!(a, b);
        let one = sample_points(&SampleRegion::square(), 1, 1).unwrap();
        assert!(SampleRegion::square().contains(one.get(0)));
        let disk = SampleRegion::disk();
        let ps = sample_points(&disk, 500, 9).unwrap();
        assert!(ps.points().iter().all(|&p| disk.contains(p)));
        assert!(is_general_position(&PointSet::new(ps.into_points()).unwrap()));
    }

    #[test]
    fn small_grid_forces_collinear_resampling() {
        // 40 points in a 101×101 grid: collinear draws are frequent.
        let region = SampleRegion::Square { side: 100 };
        for seed in 0..5 {
            let ps = sample_points(&region, 40, seed).unwrap();
            assert!(is_general_position(&PointSet::new(ps.into_points()).unwrap()));
        }
    }

    #[test]
    fn region_too_small() {
        let region = SampleRegion::Square { side: 9 };
        assert!(matches!(sample_points(&region, 6, 0), Err(Error::RegionTooSmall { .. })));
        assert!(sample_points(&region, 5, 0).is_ok());
    }

    #[test]
    fn polygon_cells_by_pick() {
        let tri = SampleRegion::polygon(vec![Point::new(0, 0), Point::new(4, 0), Point::new(0, 4)]).unwrap();
        // Grid points with x, y >= 0 and x + y <= 4.
        assert_eq!(tri.cells(), 15.0);
        assert!(SampleRegion::polygon(vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)]).is_err());
    }

    #[test]
    fn removal_models_have_requested_size() {
        let ps = sample_points(&SampleRegion::square(), 20, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for model in RemovalModel::ALL {
            for k in [5, 12, 19, 40] {
                let r = draw_removal(&ps, model, k, &mut rng).unwrap();
                assert_eq!(r.len(), k, "{model:?}");
            }
        }
        let star = draw_removal(&ps, RemovalModel::Star, 19, &mut rng).unwrap();
        assert_eq!(star.components().len(), 1);
        assert!((0..20).any(|v| star.degree(v) == 19));
        let tree = draw_removal(&ps, RemovalModel::SpanningTree, 10, &mut rng).unwrap();
        assert!(tree.is_tree());
    }

    #[test]
    fn default_removal_sizes() {
        // n + n / (3 log2 2n), rounded up.
        assert_eq!(default_removal_size(8), 9);
        assert_eq!(default_removal_size(32), 34);
        assert_eq!(default_removal_size(64), 68);
        assert_eq!(default_removal_size(128), 134);
    }

    #[test]
    fn resilience_with_few_removals_always_succeeds() {
        let r = resilience_experiment(&SampleRegion::square(), 8, RemovalSize::Fixed(7), RemovalModel::Uniform, 40, 11)
            .unwrap();
        assert_eq!(r.aggregate("success_rate").unwrap().mean, 1.0);
    }

    #[test]
    fn recursions_hold_where_a_cut_runs_through_a_removed_edge() {
        // These trials once picked a cut through both endpoints of a removed
        // edge, overfilling one child.
        for trial in [347, 368] {
            let mut rng = trial_rng(7032, trial);
            let ps = sample_points_with(&SampleRegion::square(), 64, &mut rng).unwrap();
            let removal = draw_removal(&ps, RemovalModel::Uniform, 34, &mut rng).unwrap();
            let tree = crate::ham_sandwich::recursive_subdivision(&ps, removal.edges(), 24).unwrap();
            assert!(tree.violations().is_empty(), "{:?}", tree.violations());
        }
    }

    #[test]
    fn full_star_always_blocks() {
        let r = resilience_experiment(&SampleRegion::square(), 8, RemovalSize::Fixed(15), RemovalModel::Star, 20, 2)
            .unwrap();
        assert_eq!(r.aggregate("success_rate").unwrap().mean, 0.0);
        for o in &r.outcomes {
            assert_eq!(o["failure"]["globally_blocking"], Value::Bool(true));
        }
    }

    #[test]
    fn reports_reproduce() {
        let run = || {
            resilience_experiment(&SampleRegion::disk(), 10, RemovalSize::Default, RemovalModel::HullBiased, 12, 99)
                .unwrap()
        };
        assert_eq!(run().without_clock(), run().without_clock());
        let h = || hull_count_expectation(&SampleRegion::square(), 50, 20, 4).unwrap().without_clock();
        assert_eq!(h(), h());
        let v: Value = serde_json::from_str(&run().to_json()).unwrap();
        for key in ["experiment", "params", "seed", "trials", "outcomes", "aggregates"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn three_points_are_always_convex() {
        let r = convex_position_probability(&SampleRegion::square(), 3, 500, 1).unwrap();
        assert_eq!(r.aggregate("p_hat").unwrap().mean, 1.0);
        let h = hull_count_expectation(&SampleRegion::disk(), 3, 50, 1).unwrap();
        assert_eq!(h.aggregate("hull_count").unwrap().mean, 3.0);
    }

    fn brute_min_interior(ps: &PointSet, k: usize) -> Option<usize> {
        let n = ps.len();
        let pts = ps.points();
        let mut best = None;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let sub: Vec<Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
            let hull = convex_hull_of(&sub);
            if hull.len() != k {
                continue;
            }
            let poly: Vec<Point> = hull.iter().map(|&h| sub[h]).collect();
            let inside = pts.iter().filter(|&&p| strictly_inside_convex(&poly, p)).count();
            best = Some(best.map_or(inside, |b: usize| b.min(inside)));
        }
        best
    }

    #[test]
    fn kgon_scan_matches_brute_force() {
        let square = PointSet::new_general(vec![
            Point::new(0, 0),
            Point::new(10, 0),
            Point::new(10, 10),
            Point::new(0, 10),
            Point::new(4, 5),
        ])
        .unwrap();
        assert_eq!(empty_kgon_scan(&square, 3).unwrap().unwrap().min_interior, 0);
        let four = empty_kgon_scan(&square, 4).unwrap().unwrap();
        assert_eq!(four.min_interior, 0);
        assert!(four.witness.contains(&4));
        let only_hull = square.subset(&[0, 1, 2, 3]);
        assert_eq!(empty_kgon_scan(&only_hull, 4).unwrap().unwrap().min_interior, 0);
        for seed in 0..10 {
            let ps = sample_points(&SampleRegion::Square { side: 1000 }, 11, seed).unwrap();
            for k in 3..=6 {
                let got = empty_kgon_scan(&ps, k).unwrap().map(|s| s.min_interior);
                assert_eq!(got, brute_min_interior(&ps, k), "seed {seed} k {k}");
            }
        }
        let big = sample_points(&SampleRegion::square(), 60, 0).unwrap();
        assert!(matches!(empty_kgon_scan(&big, 8), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn kgon_witness_is_attained() {
        let ps = sample_points(&SampleRegion::square(), 14, 8).unwrap();
        let s = empty_kgon_scan(&ps, 5).unwrap().unwrap();
        let sub: Vec<Point> = s.witness.iter().map(|&i| ps.get(i)).collect();
        let hull = convex_hull_of(&sub);
        assert_eq!(hull.len(), 5);
        let poly: Vec<Point> = hull.iter().map(|&h| sub[h]).collect();
        let inside = ps.points().iter().filter(|&&p| strictly_inside_convex(&poly, p)).count();
        assert_eq!(inside, s.min_interior);
    }

    #[test]
    fn odd_split_small_cases() {
        // Convex quadrilaterals: only the opposite vertex splits oddly.
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = loop {
                let ps = sample_points_with(&SampleRegion::Square { side: 1000 }, 4, &mut rng).unwrap();
                if convex_hull(&ps).len() == 4 {
                    break ps;
                }
            };
            let p0 = (0..4).min_by_key(|&i| pts.get(i)).unwrap();
            let split = odd_split_blocking(&pts, p0).unwrap();
            assert_eq!(split.odd_set.len(), 1);
            assert_eq!(split.oracle_blocking, Some(true));
        }
        let r = odd_split_statistics(&SampleRegion::square(), 6, 50, 3).unwrap();
        assert_eq!(r.aggregate("oracle_blocking_rate").unwrap().mean, 1.0);
    }
}
