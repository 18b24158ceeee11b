use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hausdorff::{content_on_ordered_arc, ArcTarget};
use crate::math;
use crate::ur::IntervalUnion;

/// Rectifiability class of the material between two consecutive breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tag {
    /// Traversable at zero gap cost; `length` is at least the endpoint distance.
    Rectifiable { length: f64 },
    /// Of sigma-finite length, hence removable for `d_Λ`.
    SigmaFinite,
    /// Neither; must be paid for by every cover.
    Fat,
}

impl Tag {
    pub fn is_rectifiable(&self) -> bool {
        matches!(self, Tag::Rectifiable { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Tag::Rectifiable { .. } => "rectifiable",
            Tag::SigmaFinite => "sigma_finite",
            Tag::Fat => "fat",
        }
    }
}

/// Ordered segment model of an arc of bounded turning.
///
/// Breakpoint `i` carries a parameter and an identifier; segment `i` joins
/// breakpoints `i` and `i + 1`, and its diameter is `d(i, i + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelArc {
    ids: Vec<usize>,
    params: Vec<f64>,
    dist: Vec<f64>,
    segments: Vec<Tag>,
}

impl ModelArc {
    /// Builds and validates an arc; identifiers default to `0..n`.
    pub fn new(params: Vec<f64>, rows: Vec<Vec<f64>>, segments: Vec<Tag>) -> Result<Self> {
        let ids = (0..params.len()).collect();
        Self::with_ids(ids, params, rows, segments)
    }

    pub fn with_ids(ids: Vec<usize>, params: Vec<f64>, rows: Vec<Vec<f64>>, segments: Vec<Tag>) -> Result<Self> {
        let n = params.len();
        if n == 0 {
            return Err(Error::Structural("arc without breakpoints".into()));
        }
        if ids.len() != n || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("arc with {n} breakpoints needs an {n}x{n} matrix and {n} ids")));
        }
        if segments.len() + 1 != n {
            return Err(Error::Structural(format!("{} segments for {n} breakpoints", segments.len())));
        }
        let arc = Self { ids, params, dist: rows.into_iter().flatten().collect(), segments };
        arc.validate()?;
        Ok(arc)
    }

    /// Re-checks the metric, ordering and bounded turning invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.dist.iter().chain(&self.params).any(|v| !v.is_finite()) {
            return Err(Error::Structural("non-finite arc data".into()));
        }
        if let Some(i) = self.params.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Precondition(format!("breakpoints {i} and {} are not increasing", i + 1)));
        }
        let slack = 1e-12 * self.diam().max(1.0);
        for i in 0..n {
            if math::abs(self.d(i, i)) > slack {
                return Err(Error::Precondition(format!("nonzero self-distance at {i}")));
            }
            for j in (i + 1)..n {
                if math::abs(self.d(i, j) - self.d(j, i)) > slack {
                    return Err(Error::Precondition(format!("asymmetric distance ({i},{j})")));
                }
                if self.d(i, j) <= 0.0 {
                    return Err(Error::Precondition(format!("nonpositive distance ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for k in (i + 1)..n {
                for j in 0..n {
                    if j != i && j != k && self.d(i, k) > self.d(i, j) + self.d(j, k) + slack {
                        return Err(Error::Precondition(format!("triangle inequality fails at ({i},{j},{k})")));
                    }
                }
                for j in (i + 1)..k {
                    if self.d(i, j).max(self.d(j, k)) > self.d(i, k) + slack {
                        return Err(Error::Precondition(format!("bounded turning fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        for (i, tag) in self.segments.iter().enumerate() {
            if let Tag::Rectifiable { length } = *tag {
                if !(length.is_finite() && length + slack >= self.d(i, i + 1)) {
                    return Err(Error::Precondition(format!(
                        "rectifiable segment {i} has length {length} below its diameter"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Encodes an interval union: components rectifiable, gaps fat.
    pub fn from_interval_union(u: &IntervalUnion) -> Self {
        let mut params = Vec::new();
        let mut segments = Vec::new();
        for (k, &(a, b)) in u.intervals().iter().enumerate() {
            if k > 0 {
                segments.push(Tag::Fat);
            }
            params.push(a);
            if b > a {
                segments.push(Tag::Rectifiable { length: b - a });
                params.push(b);
            }
        }
        let rows = params.iter().map(|s| params.iter().map(|t| math::abs(s - t)).collect()).collect();
        Self::new(params, rows, segments).expect("interval unions give valid arcs")
    }

    /// Number of breakpoints.
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn segments(&self) -> &[Tag] {
        &self.segments
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| self.dist[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn diam(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    pub fn endpoint_distance(&self) -> f64 {
        self.d(0, self.len() - 1)
    }

    pub fn segment_diam(&self, i: usize) -> f64 {
        self.d(i, i + 1)
    }

    /// Same shape and tags, with distances equal within `1e-12` relative.
    pub fn same_as(&self, other: &ModelArc) -> bool {
        if self.len() != other.len() || self.segments.len() != other.segments.len() {
            return false;
        }
        let tol = 1e-12 * self.diam().max(other.diam()).max(1.0);
        let tags = self.segments.iter().zip(&other.segments).all(|(a, b)| match (a, b) {
            (Tag::Rectifiable { length: x }, Tag::Rectifiable { length: y }) => math::abs(x - y) <= tol,
            _ => a == b,
        });
        tags && self.dist.iter().zip(&other.dist).all(|(a, b)| math::abs(a - b) <= tol)
    }
}

/// One collapse of the ur-quotient on the tag model.
pub fn collapse_step(arc: &ModelArc) -> ModelArc {
    collapse_step_with_map(arc).0
}

/// Collapse step together with the map from old to new breakpoint indices.
pub fn collapse_step_with_map(arc: &ModelArc) -> (ModelArc, Vec<usize>) {
    let n = arc.len();
    let mut group = vec![0usize; n];
    for i in 1..n {
        group[i] = group[i - 1] + usize::from(!arc.segments[i - 1].is_rectifiable());
    }
    let cost = |i: usize, j: usize| if group[i] == group[j] { 0.0 } else { arc.d(i, j) };
    let reps: Vec<usize> = (0..n).filter(|&i| i == 0 || group[i] != group[i - 1]).collect();
    let m = reps.len();
    let mut rows = vec![vec![0.0; m]; m];
    let mut chain = vec![0.0; n];
    for (ga, &a) in reps.iter().enumerate() {
        chain[a] = 0.0;
        for b in (a + 1)..n {
            chain[b] = (a..b).map(|c| chain[c] + cost(c, b)).fold(f64::INFINITY, f64::min);
        }
        for gb in (ga + 1)..m {
            let v = chain[reps[gb]];
            rows[ga][gb] = v;
            rows[gb][ga] = v;
        }
    }
    let segments = arc
        .segments
        .iter()
        .filter(|t| !t.is_rectifiable())
        .copied()
        .collect();
    let out = ModelArc {
        ids: reps.iter().map(|&i| arc.ids[i]).collect(),
        params: reps.iter().map(|&i| arc.params[i]).collect(),
        dist: rows.into_iter().flatten().collect(),
        segments,
    };
    (out, group)
}

/// Every stage of an iterated collapse.
#[derive(Debug, Clone, PartialEq)]
pub struct CollapseTrace {
    /// Stage 0 is the input.
    pub stages: Vec<ModelArc>,
    /// `maps[s][i]` is the stage-`s` index of input breakpoint `i`.
    pub maps: Vec<Vec<usize>>,
    /// First stage that is a fixed point of the collapse, if reached.
    pub stabilized_at: Option<usize>,
}

impl CollapseTrace {
    /// Distance at stage `s` between input breakpoints `a` and `b`.
    pub fn pair_distance(&self, s: usize, a: usize, b: usize) -> f64 {
        self.stages[s].d(self.maps[s][a], self.maps[s][b])
    }

    pub fn last(&self) -> &ModelArc {
        self.stages.last().expect("trace has a stage")
    }
}

/// Applies [`collapse_step`] until a fixed point or `max_steps` steps.
pub fn iterate_collapse(arc: &ModelArc, max_steps: usize) -> CollapseTrace {
    let mut trace = CollapseTrace {
        stages: vec![arc.clone()],
        maps: vec![(0..arc.len()).collect()],
        stabilized_at: None,
    };
    loop {
        let s = trace.stages.len() - 1;
        let (next, map) = collapse_step_with_map(&trace.stages[s]);
        if next.same_as(&trace.stages[s]) {
            trace.stabilized_at = Some(s);
            break;
        }
        if s == max_steps {
            break;
        }
        let composed = trace.maps[s].iter().map(|&i| map[i]).collect();
        trace.maps.push(composed);
        trace.stages.push(next);
    }
    trace
}

/// `d_Λ` between breakpoints `i` and `j`: the cheapest cover of the fat
/// segments between them by subarcs priced at their endpoint distance.
pub fn dl_arc(arc: &ModelArc, i: usize, j: usize) -> Result<f64> {
    let n = arc.len();
    if i >= n || j >= n {
        return Err(Error::Parameter(format!("breakpoint index out of range ({i}, {j})")));
    }
    let (i, j) = (i.min(j), i.max(j));
    let fat = (i..j).filter(|&s| arc.segments[s] == Tag::Fat).collect();
    let target = ArcTarget { segments: fat, points: Vec::new() };
    Ok(content_on_ordered_arc(arc, &target, Some((i, j)), true)?.total)
}

/// True iff a collapse step leaves the arc unchanged.
pub fn is_p1u_fixedpoint(arc: &ModelArc) -> bool {
    collapse_step(arc).same_as(arc)
}
