//! Hausdorff 1-content: exact on interval unions and ordered arcs, upper
//! bounds on finite samples, and an upper semicontinuity harness.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::{hausdorff_distance, FiniteMetricSpace, Norm, PointSubset};
use crate::ur::{IntervalUnion, ModelArc};

/// What a cover piece is made of.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceKind {
    /// A closed interval of the line.
    Interval(f64, f64),
    /// The subarc between two breakpoints of a model arc.
    Span(usize, usize),
    /// A cluster of sample points, by index.
    Points(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverPiece {
    pub kind: PieceKind,
    pub diam: f64,
}

/// A finite cover with its cost `Σ diam`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoverSolution {
    pub pieces: Vec<CoverPiece>,
    pub total: f64,
    /// True when `total` is the exact content rather than an upper bound.
    pub exact: bool,
}

impl CoverSolution {
    fn from_pieces(pieces: Vec<CoverPiece>, exact: bool) -> Self {
        let total = pieces.iter().map(|p| p.diam).sum();
        Self { pieces, total, exact }
    }
}

/// Content of an interval union, certified by its own components.
pub fn content_interval_union(u: &IntervalUnion) -> CoverSolution {
    let pieces = u
        .intervals()
        .iter()
        .map(|&(a, b)| CoverPiece { kind: PieceKind::Interval(a, b), diam: b - a })
        .collect();
    CoverSolution::from_pieces(pieces, true)
}

/// Upper bound on the content of a sample `S` by clusters of diameter `< delta`.
///
/// Clusters are contiguous runs of `S` in input order with at least two
/// points each (a lone point is only allowed when `S` is a singleton), so a
/// sample is priced at its own resolution rather than as a null set. The
/// cheapest such partition is found exactly by dynamic programming, which
/// includes the single-cluster cover. The value is nonincreasing in `delta`.
pub fn content_upper_greedy(space: &FiniteMetricSpace, s: &PointSubset, delta: f64) -> Result<CoverSolution> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("cover scale {delta} must be positive")));
    }
    let pts = s.members();
    let n = pts.len();
    if n == 0 {
        return Err(Error::Parameter("content of an empty set".into()));
    }
    if n == 1 {
        let piece = CoverPiece { kind: PieceKind::Points(pts.to_vec()), diam: 0.0 };
        return Ok(CoverSolution::from_pieces(vec![piece], true));
    }
    let cut = partition(n, delta, 2, |i, j| space.d(pts[i], pts[j]))
        .ok_or_else(|| Error::Precondition(format!("sample too coarse for a cover finer than {delta}")))?;
    let pieces = cut
        .into_iter()
        .map(|(a, b, diam)| CoverPiece { kind: PieceKind::Points(pts[a..=b].to_vec()), diam })
        .collect();
    Ok(CoverSolution::from_pieces(pieces, false))
}

/// Upper bound on the content of a union of connected polygonal pieces.
///
/// `pieces` are given in curve order, each as its vertex list; a piece's
/// diameter is its largest vertex distance. Consecutive pieces may share a
/// cover set, and the cheapest such grouping is returned.
pub fn content_upper_pieces(pieces: &[Vec<Vec<f64>>], norm: Norm, delta: f64) -> Result<CoverSolution> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("cover scale {delta} must be positive")));
    }
    if pieces.is_empty() {
        return Ok(CoverSolution { pieces: Vec::new(), total: 0.0, exact: true });
    }
    let set_diam = |p: &[Vec<f64>], q: &[Vec<f64>]| {
        p.iter()
            .flat_map(|a| q.iter().map(move |b| norm.distance(a, b)))
            .fold(0.0, f64::max)
    };
    let n = pieces.len();
    let cross: Vec<f64> = (0..n * n)
        .map(|k| set_diam(&pieces[k / n], &pieces[k % n]))
        .collect();
    let cut = partition(n, delta, 1, |i, j| cross[i * n + j])
        .ok_or_else(|| Error::Precondition(format!("a curve piece is not finer than {delta}")))?;
    let covered = cut
        .into_iter()
        .map(|(a, b, diam)| CoverPiece { kind: PieceKind::Points((a..=b).collect()), diam })
        .collect();
    Ok(CoverSolution::from_pieces(covered, false))
}

/// Cheapest partition of `0..n` into runs of at least `min_run` items with
/// run diameter `< delta`, where `dist(i, j)` is the cost contributed by the
/// pair. Returns `(first, last, diam)` per run.
fn partition(n: usize, delta: f64, min_run: usize, dist: impl Fn(usize, usize) -> f64) -> Option<Vec<(usize, usize, f64)>> {
    // diam[i][j] for the run i..=j, filled column by column.
    let mut diam = vec![0.0_f64; n * n];
    for j in 0..n {
        let mut reach = dist(j, j);
        diam[j * n + j] = reach;
        for i in (0..j).rev() {
            reach = reach.max(dist(i, j)).max(dist(i, i));
            diam[i * n + j] = diam[i * n + j - 1].max(reach);
        }
    }
    let mut best = vec![f64::INFINITY; n + 1];
    let mut from = vec![usize::MAX; n + 1];
    best[0] = 0.0;
    for end in 1..=n {
        for start in (0..end).rev() {
            let d = diam[start * n + end - 1];
            if d >= delta {
                break;
            }
            if end - start < min_run || best[start] == f64::INFINITY {
                continue;
            }
            let c = best[start] + d;
            if c < best[end] {
                best[end] = c;
                from[end] = start;
            }
        }
    }
    if best[n] == f64::INFINITY {
        return None;
    }
    let mut runs = Vec::new();
    let mut end = n;
    while end > 0 {
        let start = from[end];
        runs.push((start, end - 1, diam[start * n + end - 1]));
        end = start;
    }
    runs.reverse();
    Some(runs)
}

/// Mandatory material of an ordered-arc cover.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArcTarget {
    /// Segment indices that must be covered.
    pub segments: Vec<usize>,
    /// Breakpoint indices that must be covered; points cost nothing.
    pub points: Vec<usize>,
}

/// Exact content of a target on a model arc by subarc covers.
///
/// Subarcs cost their endpoint distance. With `range = Some((i, j))` only the
/// part between breakpoints `i <= j` is used. With `use_dp = false` each
/// target segment is covered on its own.
pub fn content_on_ordered_arc(
    arc: &ModelArc,
    target: &ArcTarget,
    range: Option<(usize, usize)>,
    use_dp: bool,
) -> Result<CoverSolution> {
    let n = arc.len();
    let (lo, hi) = range.unwrap_or((0, n - 1));
    if lo > hi || hi >= n {
        return Err(Error::Parameter(format!("range ({lo}, {hi}) outside the arc")));
    }
    if let Some(s) = target.segments.iter().find(|&&s| s < lo || s >= hi) {
        return Err(Error::Parameter(format!("target segment {s} not inside the arc range")));
    }
    if let Some(p) = target.points.iter().find(|&&p| p < lo || p > hi) {
        return Err(Error::Parameter(format!("target point {p} not inside the arc range")));
    }
    let mut mandatory = vec![false; n.saturating_sub(1)];
    for &s in &target.segments {
        mandatory[s] = true;
    }
    if !use_dp {
        let pieces = (lo..hi)
            .filter(|&s| mandatory[s])
            .map(|s| CoverPiece { kind: PieceKind::Span(s, s + 1), diam: arc.d(s, s + 1) })
            .collect();
        return Ok(CoverSolution::from_pieces(pieces, false));
    }
    let m = hi - lo + 1;
    let mut best = vec![f64::INFINITY; m];
    let mut from: Vec<Option<usize>> = vec![None; m];
    best[0] = 0.0;
    for b in 1..m {
        if !mandatory[lo + b - 1] {
            best[b] = best[b - 1];
        }
        for a in 0..b {
            let c = best[a] + arc.d(lo + a, lo + b);
            if c < best[b] {
                best[b] = c;
                from[b] = Some(a);
            }
        }
    }
    let mut pieces = Vec::new();
    let mut b = m - 1;
    while b > 0 {
        match from[b] {
            Some(a) => {
                pieces.push(CoverPiece { kind: PieceKind::Span(lo + a, lo + b), diam: arc.d(lo + a, lo + b) });
                b = a;
            }
            None => b -= 1,
        }
    }
    pieces.reverse();
    let mut sol = CoverSolution::from_pieces(pieces, true);
    sol.total = best[m - 1];
    Ok(sol)
}

/// Outcome of the upper semicontinuity check.
#[derive(Debug, Clone, PartialEq)]
pub struct UscReport {
    pub limit_content: f64,
    pub contents: Vec<f64>,
    pub distances: Vec<f64>,
    /// Largest content over the second half of the sequence.
    pub limsup: f64,
    /// Cover granularity: tail Hausdorff distance times the number of pieces.
    pub epsilon: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Compares the tail contents of `K_j` against the content of `K` plus `3ε`.
pub fn check_usc(
    ambient: &FiniteMetricSpace,
    k_seq: &[PointSubset],
    k: &PointSubset,
    delta: f64,
) -> Result<UscReport> {
    if k_seq.is_empty() {
        return Err(Error::Precondition("empty approximating sequence".into()));
    }
    let distances = k_seq
        .iter()
        .map(|kj| hausdorff_distance(ambient, kj, k))
        .collect::<Result<Vec<_>>>()?;
    let tol = 1e-12 * ambient.diam().max(1.0);
    if let Some(w) = distances.windows(2).position(|w| w[1] > w[0] + tol) {
        return Err(Error::Precondition(format!(
            "sequence is not Hausdorff convergent: distance grows at step {}",
            w + 1
        )));
    }
    let limit = content_upper_greedy(ambient, k, delta)?;
    let contents = k_seq
        .iter()
        .map(|kj| content_upper_greedy(ambient, kj, delta).map(|c| c.total))
        .collect::<Result<Vec<_>>>()?;
    let tail = contents.len() / 2;
    let limsup = contents[tail..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let reach = distances[tail..].iter().copied().fold(0.0, f64::max);
    let epsilon = reach * limit.pieces.len() as f64;
    let slack = 3.0 * epsilon;
    let pass = limsup <= limit.total + slack + tol;
    Ok(UscReport { limit_content: limit.total, contents, distances, limsup, epsilon, slack, pass })
}
