//! Locally flat separators: a discretized convex ambient, a ladder of
//! neighborhoods of the sample, level weights, and the weighted distance `φ`.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{self, lerp, merge_spans, modify_through_cover, Ball, Polyline};
use crate::error::{Error, Result};
use crate::hausdorff::content_upper_pieces;
use crate::lipschitz::{flatness_modulus, lip_norm, FlatnessProfile, ScalarField};
use crate::metric::{kuratowski_embed, FiniteMetricSpace, Norm};

/// Node count above which [`build_ambient`] refuses to build.
pub const MAX_NODES: usize = 200_000;

/// Sample points plus Steiner points of the pairwise segments.
///
/// Nodes `0..sample_len()` are the sample, in input order. Each pairwise
/// segment is split into `2^depth` equal pieces whose endpoints are nodes
/// joined in sequence; nodes closer than the edge radius are also joined.
#[derive(Debug, Clone)]
pub struct AmbientGraph {
    coords: Vec<Vec<f64>>,
    sample: usize,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<(usize, usize)>>,
    m_mark: Vec<f64>,
    radius: f64,
    diam: f64,
}

impl AmbientGraph {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sample_len(&self) -> usize {
        self.sample
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Distance of each node to the sample.
    pub fn m_mark(&self) -> &[f64] {
        &self.m_mark
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Diameter of the convex hull, which equals that of the sample.
    pub fn diam(&self) -> f64 {
        self.diam
    }

    /// Smallest distance between two sample points.
    pub fn sample_resolution(&self) -> f64 {
        let s = &self.coords[..self.sample];
        s.iter()
            .enumerate()
            .flat_map(|(i, a)| s[i + 1..].iter().map(move |b| Norm::Max.distance(a, b)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance of an arbitrary ambient point to the sample.
    pub fn mark_of(&self, x: &[f64]) -> f64 {
        self.coords[..self.sample]
            .iter()
            .map(|z| Norm::Max.distance(x, z))
            .fold(f64::INFINITY, f64::min)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Builds the ambient graph in the Kuratowski embedding of `space`.
///
/// `radius` defaults to the smallest sample distance; it is doubled until the
/// graph is connected.
pub fn build_ambient(space: &FiniteMetricSpace, steiner_depth: u32, radius: Option<f64>) -> Result<AmbientGraph> {
    let n = space.len();
    let pieces = 1usize
        .checked_shl(steiner_depth)
        .filter(|_| steiner_depth < 20)
        .ok_or_else(|| Error::Resource(format!("Steiner depth {steiner_depth} too large")))?;
    let total = n + n * n.saturating_sub(1) / 2 * (pieces - 1);
    if total > MAX_NODES {
        return Err(Error::Resource(format!("ambient graph would have {total} nodes")));
    }
    let emb = kuratowski_embed(space);
    let mut coords = emb.coords.clone();
    let mut chains: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut prev = i;
            for k in 1..pieces {
                coords.push(lerp(&emb.coords[i], &emb.coords[j], k as f64 / pieces as f64));
                let id = coords.len() - 1;
                chains.push((prev, id));
                prev = id;
            }
            chains.push((prev, j));
        }
    }
    let m_mark: Vec<f64> = coords
        .iter()
        .map(|x| emb.coords.iter().map(|z| Norm::Max.distance(x, z)).fold(f64::INFINITY, f64::min))
        .collect();
    let mut radius = match radius {
        Some(r) if r >= 0.0 => r,
        Some(r) => return Err(Error::Parameter(format!("edge radius {r} is negative"))),
        None => space.min_distance().unwrap_or(0.0) * (1.0 + 1e-9),
    };
    loop {
        let mut edges: Vec<(usize, usize, f64)> = chains
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v), Norm::Max.distance(&coords[u], &coords[v])))
            .collect();
        for u in 0..coords.len() {
            for v in (u + 1)..coords.len() {
                let d = Norm::Max.distance(&coords[u], &coords[v]);
                if d <= radius {
                    edges.push((u, v, d));
                }
            }
        }
        edges.sort_by_key(|e| (e.0, e.1));
        edges.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        let mut adj = vec![Vec::new(); coords.len()];
        for (k, &(u, v, _)) in edges.iter().enumerate() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        let graph = AmbientGraph {
            coords: coords.clone(),
            sample: n,
            edges,
            adj,
            m_mark: m_mark.clone(),
            radius,
            diam: space.diam(),
        };
        if graph.is_connected() {
            return Ok(graph);
        }
        radius = if radius > 0.0 { 2.0 * radius } else { space.diam() };
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest paths with `cost(edge_index, u, v, length)`.
fn dijkstra(graph: &AmbientGraph, source: usize, cost: impl Fn(usize, usize, usize, f64) -> f64) -> (Vec<f64>, Vec<usize>) {
    let mut dist = vec![f64::INFINITY; graph.len()];
    let mut prev = vec![usize::MAX; graph.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry(0.0, source));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, k) in &graph.adj[u] {
            let c = d + cost(k, u, v, graph.edges[k].2);
            if c < dist[v] {
                dist[v] = c;
                prev[v] = u;
                heap.push(Entry(c, v));
            }
        }
    }
    (dist, prev)
}

/// How the ladder radii are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    /// `r_n = (diam / 4) 2^{-n}`.
    Geometric,
    /// Geometric radii halved until sampled curves meet `V_n` in small content.
    Checked,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderConfig {
    pub shells: usize,
    pub mode: LadderMode,
    /// Sampled curves per shell.
    pub curves: usize,
    pub seed: u64,
    pub max_halvings: u32,
    /// The halving search stops at this floor; `None` means a quarter of the
    /// smallest sample distance.
    pub min_radius: Option<f64>,
    /// Relative random perturbation of edge lengths when sampling curves.
    pub perturbation: f64,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            shells: 4,
            mode: LadderMode::Checked,
            curves: 16,
            seed: 0,
            max_halvings: 40,
            min_radius: None,
            perturbation: 0.5,
        }
    }
}

/// Outcome of the curve check on one shell.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellCheck {
    pub shell: usize,
    pub radius: f64,
    pub halvings: u32,
    pub threshold: f64,
    /// Largest content of a sampled curve inside `V_n` at the final radius.
    pub worst_content: f64,
    pub passed: bool,
}

/// `V_n` = ambient points within `radii[n - 1]` of the sample.
#[derive(Debug, Clone)]
pub struct NeighborhoodLadder {
    pub delta: f64,
    pub radii: Vec<f64>,
    pub certified: bool,
    pub diagnostic: Option<String>,
    pub checks: Vec<ShellCheck>,
    /// Curves sampled for each shell, empty in geometric mode.
    pub curves: Vec<Vec<Polyline>>,
}

/// Content of the part of `poly` within `r` of the sample.
pub fn content_near_sample(graph: &AmbientGraph, poly: &Polyline, r: f64) -> f64 {
    let pieces = pieces_near_sample(graph, poly, r);
    content_upper_pieces(&pieces, Norm::Max, f64::INFINITY).map_or(0.0, |c| c.total)
}

/// Connected pieces of `poly` within `r` of the sample, each as a vertex list.
pub fn pieces_near_sample(graph: &AmbientGraph, poly: &Polyline, r: f64) -> Vec<Vec<Vec<f64>>> {
    let v = poly.vertices();
    let sample = &graph.coords[..graph.sample];
    let mut pieces: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut open: Option<Vec<Vec<f64>>> = None;
    if v.len() == 1 {
        if graph.mark_of(&v[0]) <= r {
            pieces.push(vec![v[0].clone()]);
        }
        return pieces;
    }
    for w in v.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let spans = merge_spans(
            sample
                .iter()
                .filter_map(|z| Ball { center: z.clone(), radius: r }.hit(a, b, Norm::Max))
                .collect(),
        );
        let mut touched_start = false;
        for (k, &(lo, hi)) in spans.iter().enumerate() {
            let from_start = k == 0 && lo <= 0.0;
            touched_start |= from_start;
            let mut piece = match (from_start, open.take()) {
                (true, Some(p)) => p,
                (_, prev) => {
                    if let Some(p) = prev {
                        pieces.push(p);
                    }
                    vec![lerp(a, b, lo)]
                }
            };
            piece.push(lerp(a, b, hi));
            if hi >= 1.0 {
                open = Some(piece);
            } else {
                pieces.push(piece);
            }
        }
        if !touched_start {
            if let Some(p) = open.take() {
                pieces.push(p);
            }
        }
    }
    if let Some(p) = open {
        pieces.push(p);
    }
    pieces
}

fn sample_curves(graph: &AmbientGraph, shell: usize, config: &LadderConfig) -> Vec<Polyline> {
    let m = graph.sample;
    if m < 2 {
        return Vec::new();
    }
    (0..config.curves)
        .map(|c| {
            let stream = (shell as u64) << 32 | c as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let s = rng.random_range(0..m);
            let t = (s + rng.random_range(1..m)) % m;
            let factors: Vec<f64> = (0..graph.edges.len())
                .map(|_| 1.0 + config.perturbation * rng.random::<f64>())
                .collect();
            let (_, prev) = dijkstra(graph, s, |k, _, _, len| len * factors[k]);
            let mut path = vec![t];
            let mut u = t;
            while u != s {
                u = prev[u];
                path.push(u);
            }
            path.reverse();
            let poly = Polyline::by_arclength(path.iter().map(|&i| graph.coords[i].clone()).collect(), Norm::Max)
                .expect("graph coordinates are finite");
            truncate(&poly, shell as f64)
        })
        .collect()
}

/// Initial piece of `poly` of length at most `budget`.
fn truncate(poly: &Polyline, budget: f64) -> Polyline {
    let v = poly.vertices();
    let mut out = vec![v[0].clone()];
    let mut used = 0.0;
    for w in v.windows(2) {
        let len = Norm::Max.distance(&w[0], &w[1]);
        if used + len <= budget {
            out.push(w[1].clone());
            used += len;
        } else {
            if len > 0.0 {
                out.push(lerp(&w[0], &w[1], (budget - used) / len));
            }
            break;
        }
    }
    Polyline::by_arclength(out, Norm::Max).expect("finite coordinates")
}

/// Builds radii `r_1 > ... > r_N` for the ladder.
pub fn build_ladder(graph: &AmbientGraph, delta: f64, config: &LadderConfig) -> Result<NeighborhoodLadder> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("delta {delta} must be positive")));
    }
    if config.shells == 0 {
        return Err(Error::Parameter("ladder needs at least one shell".into()));
    }
    let geometric = |n: usize| graph.diam / 4.0 * libm::pow(2.0, -(n as f64));
    if config.mode == LadderMode::Geometric || graph.sample < 2 {
        return Ok(NeighborhoodLadder {
            delta,
            radii: (1..=config.shells).map(geometric).collect(),
            certified: true,
            diagnostic: None,
            checks: Vec::new(),
            curves: Vec::new(),
        });
    }
    let floor = config.min_radius.unwrap_or_else(|| graph.sample_resolution() / 4.0);
    let mut radii: Vec<f64> = Vec::with_capacity(config.shells);
    let mut checks = Vec::with_capacity(config.shells);
    let mut all_curves = Vec::with_capacity(config.shells);
    let mut diagnostic = None;
    for n in 1..=config.shells {
        let curves = sample_curves(graph, n, config);
        let threshold = delta * libm::pow(2.0, -(n as f64));
        let mut r = match radii.last() {
            Some(&prev) => geometric(n).min(prev / 2.0),
            None => geometric(n),
        };
        let mut halvings = 0;
        let check = loop {
            let worst = curves
                .iter()
                .map(|c| content_near_sample(graph, c, r))
                .fold(0.0, f64::max);
            let passed = worst < threshold;
            if passed || halvings == config.max_halvings || r / 2.0 < floor {
                break ShellCheck { shell: n, radius: r, halvings, threshold, worst_content: worst, passed };
            }
            r /= 2.0;
            halvings += 1;
        };
        if !check.passed && diagnostic.is_none() {
            diagnostic = Some(format!(
                "shell {n}: sampled curves keep content {:.3e} >= {:.3e} inside V_n after {} halvings; \
                 the sample looks rectifiable at this scale",
                check.worst_content, threshold, check.halvings
            ));
        }
        radii.push(check.radius);
        checks.push(check);
        all_curves.push(curves);
    }
    Ok(NeighborhoodLadder {
        delta,
        radii,
        certified: diagnostic.is_none(),
        diagnostic,
        checks,
        curves: all_curves,
    })
}

/// Levels `c_0 = 1` and `c_n = min(1, diam / n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelWeight {
    pub levels: Vec<f64>,
}

impl LevelWeight {
    pub fn new(diam: f64, shells: usize) -> Self {
        let levels = (0..=shells)
            .map(|n| if n == 0 { 1.0 } else { (diam / n as f64).min(1.0) })
            .collect();
        Self { levels }
    }

    /// Weight of an ambient point at distance `mark` from the sample.
    pub fn weight(&self, radii: &[f64], mark: f64) -> f64 {
        let shell = radii.iter().rposition(|&r| mark <= r).map_or(0, |i| i + 1);
        self.levels[shell]
    }
}

/// Weight of each node: `c_n` on `V_n \ V_{n+1}`, `c_N` inside `V_N`.
pub fn assign_weight(graph: &AmbientGraph, ladder: &NeighborhoodLadder) -> Vec<f64> {
    let levels = LevelWeight::new(graph.diam, ladder.radii.len());
    graph.m_mark.iter().map(|&m| levels.weight(&ladder.radii, m)).collect()
}

/// Weighted distance from `p` with edge cost `length · max(w(u), w(v))`.
pub fn phi(graph: &AmbientGraph, weights: &[f64], p: usize) -> Result<Vec<f64>> {
    if p >= graph.len() {
        return Err(Error::Parameter(format!("node {p} not in the graph")));
    }
    if weights.len() != graph.len() || weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(Error::Contract("one nonnegative weight per node expected".into()));
    }
    let (dist, _) = dijkstra(graph, p, |_, u, v, len| len * weights[u].max(weights[v]));
    Ok(dist)
}

/// Settings of the full separator pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorConfig {
    pub steiner_depth: u32,
    pub edge_radius: Option<f64>,
    pub ladder: LadderConfig,
}

impl Default for SeparatorConfig {
    fn default() -> Self {
        Self { steiner_depth: 1, edge_radius: None, ladder: LadderConfig::default() }
    }
}

/// Per-curve check of the weighted-length lower bound.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LowerBoundStats {
    pub curves: usize,
    pub holding: usize,
    /// Smallest `∫_γ w - (c_m |γ̃| - 2δ)` over the checked curves.
    pub worst_margin: f64,
}

#[derive(Debug, Clone)]
pub struct SeparatorReport {
    /// The ladder check passed on every shell.
    pub certified: bool,
    pub diagnostic: Option<String>,
    /// `min_x g(x) - g(p) - d(p, x) + δ`.
    pub min_slack: f64,
    pub success: bool,
    pub lip_norm: f64,
    pub flatness: FlatnessProfile,
    pub radii: Vec<f64>,
    pub levels: Vec<f64>,
    /// `ω_g(r_N)`.
    pub omega_innermost: f64,
    pub lower_bound: LowerBoundStats,
    pub checks: Vec<ShellCheck>,
    pub nodes: usize,
    pub edges: usize,
}

/// Runs ambient, ladder, weights and `φ` and returns `g = φ` on the sample.
pub fn flat_separator(
    space: &FiniteMetricSpace,
    p: usize,
    delta: f64,
    config: &SeparatorConfig,
) -> Result<(ScalarField, SeparatorReport)> {
    if p >= space.len() {
        return Err(Error::Parameter(format!("point {p} not in the space")));
    }
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("delta {delta} must be positive")));
    }
    if space.len() == 1 {
        let report = SeparatorReport {
            certified: true,
            diagnostic: None,
            min_slack: delta,
            success: true,
            lip_norm: 0.0,
            flatness: FlatnessProfile { radii: Vec::new(), omega: Vec::new() },
            radii: Vec::new(),
            levels: vec![1.0],
            omega_innermost: 0.0,
            lower_bound: LowerBoundStats { worst_margin: f64::INFINITY, ..Default::default() },
            checks: Vec::new(),
            nodes: 1,
            edges: 0,
        };
        return Ok((ScalarField(vec![0.0]), report));
    }
    let graph = build_ambient(space, config.steiner_depth, config.edge_radius)?;
    let ladder = build_ladder(&graph, delta, &config.ladder)?;
    let weights = assign_weight(&graph, &ladder);
    let levels = LevelWeight::new(graph.diam, ladder.radii.len());
    let dist = phi(&graph, &weights, p)?;
    let g = ScalarField(dist[..space.len()].to_vec());
    let min_slack = (0..space.len())
        .map(|x| g.0[x] - g.0[p] - space.d(p, x) + delta)
        .fold(f64::INFINITY, f64::min);
    let mut radii: Vec<f64> = ladder.radii.clone();
    radii.push(space.diam().max(f64::MIN_POSITIVE));
    if let Some(m) = space.min_distance() {
        radii.push(m);
    }
    let flatness = flatness_modulus(space, &g, &radii)?;
    let r_n = *ladder.radii.last().expect("at least one shell");
    let omega_innermost = flatness.at(r_n);
    let lower_bound = lower_bound_stats(&graph, &ladder, &levels, delta);
    let report = SeparatorReport {
        certified: ladder.certified,
        diagnostic: ladder.diagnostic.clone(),
        min_slack,
        success: min_slack >= 0.0,
        lip_norm: lip_norm(space, &g),
        flatness,
        radii: ladder.radii.clone(),
        levels: levels.levels.clone(),
        omega_innermost,
        lower_bound,
        checks: ladder.checks.clone(),
        nodes: graph.len(),
        edges: graph.edges.len(),
    };
    Ok((g, report))
}

/// For each sampled curve `γ`, with `m` the least shell index `>= |γ|`,
/// cuts `γ` through cubes around its pieces inside `V_m` and compares its
/// weighted length with `c_m |γ̃| - 2δ`.
pub fn lower_bound_stats(
    graph: &AmbientGraph,
    ladder: &NeighborhoodLadder,
    levels: &LevelWeight,
    delta: f64,
) -> LowerBoundStats {
    let shells = ladder.radii.len();
    let mut stats = LowerBoundStats { worst_margin: f64::INFINITY, ..Default::default() };
    for curve in ladder.curves.iter().flatten() {
        let len = curves::length(curve);
        let m = (1..=shells).find(|&m| len <= m as f64).unwrap_or(shells);
        let cubes: Vec<Ball> = pieces_near_sample(graph, curve, ladder.radii[m - 1])
            .iter()
            .map(|piece| bounding_cube(piece))
            .collect();
        let modified = modify_through_cover(curve, &cubes);
        let weights: Vec<f64> = curve
            .vertices()
            .iter()
            .map(|x| levels.weight(&ladder.radii, graph.mark_of(x)))
            .collect();
        let integral = curves::path_integral_weights(curve, &weights).unwrap_or(0.0);
        let margin = integral - (levels.levels[m] * curves::length(&modified) - 2.0 * delta) + 1e-12;
        stats.curves += 1;
        stats.holding += usize::from(margin >= 0.0);
        stats.worst_margin = stats.worst_margin.min(margin);
    }
    stats
}

/// Smallest max-norm ball containing a point list (its bounding cube).
fn bounding_cube(points: &[Vec<f64>]) -> Ball {
    let dim = points[0].len();
    let mut center = Vec::with_capacity(dim);
    let mut radius = 0.0_f64;
    for k in 0..dim {
        let (lo, hi) = points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
        center.push(0.5 * (lo + hi));
        radius = radius.max(0.5 * (hi - lo));
    }
    Ball { center, radius }
}
