//! Finite metric spaces and the basic constructions on them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::REL_TOL;

/// Norm used to turn coordinate vectors into distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    Max,
    Euclidean,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Norm::Max => a
                .iter()
                .zip(b)
                .map(|(x, y)| math::abs(x - y))
                .fold(0.0, f64::max),
            Norm::Euclidean => math::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()),
        }
    }
}

/// A finite point set with a distance matrix and a distinguished base point.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    ids: Vec<String>,
    n: usize,
    dist: Vec<f64>,
    base: usize,
}

/// One failed metric axiom, with the indices that witness it.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonzeroDiagonal { i: usize, value: f64 },
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },
    NonPositive { i: usize, j: usize, value: f64 },
    Triangle { i: usize, j: usize, k: usize, direct: f64, via: f64 },
}

/// Every violated axiom of a candidate distance matrix.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_structure(rows: &[Vec<f64>]) -> Result<()> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Structural("empty space".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Structural(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Structural(format!("entry ({i},{j}) is not finite")));
        }
    }
    Ok(())
}

/// Checks the metric axioms on a raw matrix and lists every violation.
///
/// The triangle inequality is tested with absolute slack `1e-12 * diam`.
pub fn validate_metric(rows: &[Vec<f64>]) -> Result<ValidationReport> {
    check_structure(rows)?;
    let n = rows.len();
    let diam = rows
        .iter()
        .flatten()
        .fold(0.0_f64, |m, v| m.max(math::abs(*v)));
    let slack = 1e-12 * diam;
    let mut violations = Vec::new();
    for i in 0..n {
        if math::abs(rows[i][i]) > slack {
            violations.push(Violation::NonzeroDiagonal { i, value: rows[i][i] });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            let tol = (REL_TOL * math::abs(a).max(math::abs(b))).max(slack);
            if math::abs(a - b) > tol {
                violations.push(Violation::Asymmetric { i, j, forward: a, backward: b });
            }
            if a <= 0.0 || b <= 0.0 {
                violations.push(Violation::NonPositive { i, j, value: a.min(b) });
            }
        }
    }
    for i in 0..n {
        for k in (i + 1)..n {
            let direct = rows[i][k];
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = rows[i][j] + rows[j][k];
                if direct > via + slack {
                    violations.push(Violation::Triangle { i, j, k, direct, via });
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

impl FiniteMetricSpace {
    /// Builds a validated space; invalid matrices are refused.
    pub fn new(ids: Vec<String>, rows: Vec<Vec<f64>>, base: usize) -> Result<Self> {
        let report = validate_metric(&rows)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Precondition(format!(
                "not a metric ({} violations, first: {v:?})",
                report.violations.len()
            )));
        }
        Self::new_pseudometric(ids, rows, base)
    }

    /// Builds a space checking only the structure of the matrix.
    pub fn new_pseudometric(ids: Vec<String>, rows: Vec<Vec<f64>>, base: usize) -> Result<Self> {
        check_structure(&rows)?;
        let n = rows.len();
        if ids.len() != n {
            return Err(Error::Structural(format!("{} ids for {n} points", ids.len())));
        }
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(Error::Structural(format!("duplicate point id {id:?}")));
            }
        }
        if base >= n {
            return Err(Error::Structural(format!("base index {base} out of range")));
        }
        Ok(Self { ids, n, dist: rows.into_iter().flatten().collect(), base })
    }

    /// Validated space with ids `"0".."n-1"` and base `0`.
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ids = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(ids, rows, 0)
    }

    /// Space of coordinate vectors under `norm`, ids `"0".."n-1"`, base `0`.
    pub fn from_coords(coords: &[Vec<f64>], norm: Norm) -> Result<Self> {
        if let Some(c) = coords.iter().find(|c| c.len() != coords[0].len()) {
            return Err(Error::Structural(format!(
                "coordinate vectors of lengths {} and {}",
                coords[0].len(),
                c.len()
            )));
        }
        let rows = coords
            .iter()
            .map(|a| coords.iter().map(|b| norm.distance(a, b)).collect())
            .collect();
        Self::from_matrix(rows)
    }

    /// Points of the real line with their absolute differences.
    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        let rows = xs.iter().map(|a| xs.iter().map(|b| math::abs(a - b)).collect()).collect();
        Self::from_matrix(rows)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn with_base(mut self, base: usize) -> Result<Self> {
        if base >= self.n {
            return Err(Error::Parameter(format!("base index {base} out of range")));
        }
        self.base = base;
        Ok(self)
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diam(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Diameter of a list of indices.
    pub fn diam_of(&self, members: &[usize]) -> f64 {
        let mut m = 0.0_f64;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                m = m.max(self.d(i, j));
            }
        }
        m
    }

    /// Smallest distance between distinct points, `None` for one point.
    pub fn min_distance(&self) -> Option<f64> {
        (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .reduce(f64::min)
    }

    /// Distance from point `x` to a nonempty index set.
    pub fn dist_to(&self, x: usize, members: &[usize]) -> f64 {
        members.iter().map(|&a| self.d(x, a)).fold(f64::INFINITY, f64::min)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_metric(&self.rows()).unwrap_or_default()
    }

    /// Restriction to the given indices, keeping ids; the base must be kept.
    pub fn subspace(&self, members: &[usize], base: usize) -> Result<Self> {
        let ids = members.iter().map(|&i| self.ids[i].clone()).collect();
        let rows = members
            .iter()
            .map(|&i| members.iter().map(|&j| self.d(i, j)).collect())
            .collect();
        Self::new_pseudometric(ids, rows, base)
    }
}

/// A set of point indices of some parent space, sorted and without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSubset(Vec<usize>);

impl PointSubset {
    pub fn new(space: &FiniteMetricSpace, mut members: Vec<usize>) -> Result<Self> {
        if let Some(&i) = members.iter().find(|&&i| i >= space.len()) {
            return Err(Error::Parameter(format!("point index {i} out of range")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self(members))
    }

    pub fn all(space: &FiniteMetricSpace) -> Self {
        Self((0..space.len()).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &PointSubset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

/// Raises every distance to the power `alpha`.
pub fn snowflake(space: &FiniteMetricSpace, alpha: f64) -> Result<FiniteMetricSpace> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!("snowflake exponent {alpha} not in (0,1]")));
    }
    let mut out = space.clone();
    if alpha != 1.0 {
        for v in out.dist.iter_mut() {
            *v = if *v == 0.0 { 0.0 } else { math::pow(*v, alpha) };
        }
    }
    Ok(out)
}

/// The closed `r`-neighborhood `[A]_r`.
pub fn neighborhood(space: &FiniteMetricSpace, a: &PointSubset, r: f64) -> Result<PointSubset> {
    if !(r >= 0.0) {
        return Err(Error::Parameter(format!("neighborhood radius {r} is negative")));
    }
    if a.is_empty() {
        return Err(Error::Parameter("neighborhood of an empty set".into()));
    }
    Ok(PointSubset(
        (0..space.len())
            .filter(|&x| space.dist_to(x, a.members()) <= r)
            .collect(),
    ))
}

/// Hausdorff distance between two nonempty subsets.
pub fn hausdorff_distance(space: &FiniteMetricSpace, a: &PointSubset, b: &PointSubset) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Parameter("Hausdorff distance of an empty set".into()));
    }
    let directed = |p: &PointSubset, q: &PointSubset| {
        p.members()
            .iter()
            .map(|&x| space.dist_to(x, q.members()))
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Greedy farthest-point `eps`-net starting at the first point.
///
/// Ties are broken by input order. Every point lies within `eps` of the net
/// and net points are pairwise more than `eps` apart.
pub fn eps_net(space: &FiniteMetricSpace, eps: f64) -> Result<PointSubset> {
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("net scale {eps} must be positive")));
    }
    let mut net = alloc::vec![0];
    let mut gap: Vec<f64> = space.row(0).to_vec();
    loop {
        let (far, &r) = gap
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        if r <= eps {
            break;
        }
        net.push(far);
        for (g, &d) in gap.iter_mut().zip(space.row(far)) {
            *g = g.min(d);
        }
    }
    net.sort_unstable();
    Ok(PointSubset(net))
}

/// Coordinates realizing a finite space inside a normed space.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedEmbedding {
    pub coords: Vec<Vec<f64>>,
    pub norm: Norm,
}

impl NormedEmbedding {
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.norm.distance(&self.coords[i], &self.coords[j])
    }
}

/// Isometric embedding into `l_inf^n` by `x -> (d(x, p_i))_i`.
pub fn kuratowski_embed(space: &FiniteMetricSpace) -> NormedEmbedding {
    NormedEmbedding {
        coords: (0..space.len()).map(|i| space.row(i).to_vec()).collect(),
        norm: Norm::Max,
    }
}
