//! Scalar Lipschitz functions on finite spaces.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::{FiniteMetricSpace, PointSubset};
use crate::ur::IntervalUnion;

/// One real value per point of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField(pub Vec<f64>);

impl ScalarField {
    pub fn new(space: &FiniteMetricSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Structural(format!("{} values for {} points", values.len(), space.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Structural("field values must be finite".into()));
        }
        Ok(Self(values))
    }

    pub fn constant(space: &FiniteMetricSpace, c: f64) -> Self {
        Self(alloc::vec![c; space.len()])
    }

    /// `x -> d(x, p)`.
    pub fn distance_to(space: &FiniteMetricSpace, p: usize) -> Self {
        Self(space.row(p).to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &ScalarField, b: f64) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(x, y)| a * x + b * y).collect())
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
}

fn quotient(space: &FiniteMetricSpace, f: &[f64], i: usize, j: usize) -> f64 {
    math::abs(f[i] - f[j]) / space.d(i, j)
}

/// Largest difference quotient; `0` on a one-point space.
pub fn lip_norm(space: &FiniteMetricSpace, f: &ScalarField) -> f64 {
    pairs(space.len())
        .map(|(i, j)| quotient(space, &f.0, i, j))
        .fold(0.0, f64::max)
}

/// Difference quotients `(f(x) - f(y)) / d(x, y)` on ordered pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DeLeeuw {
    n: usize,
    q: Vec<f64>,
}

impl DeLeeuw {
    /// Quotient at `(x, y)`, `None` on the diagonal.
    pub fn get(&self, x: usize, y: usize) -> Option<f64> {
        (x != y).then(|| self.q[x * self.n + y])
    }

    pub fn sup_abs(&self) -> f64 {
        self.q.iter().map(|v| math::abs(*v)).fold(0.0, f64::max)
    }

    /// All off-diagonal entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n)
            .flat_map(move |x| (0..self.n).map(move |y| (x, y)))
            .filter(|(x, y)| x != y)
            .map(move |(x, y)| (x, y, self.q[x * self.n + y]))
    }
}

pub fn de_leeuw(space: &FiniteMetricSpace, f: &ScalarField) -> DeLeeuw {
    let n = space.len();
    let q = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            if x == y { 0.0 } else { (f.0[x] - f.0[y]) / space.d(x, y) }
        })
        .collect();
    DeLeeuw { n, q }
}

/// Largest `L`-Lipschitz extension `f(x) = min_y partial(y) + L·d(x, y)`.
///
/// `values[k]` is the prescribed value at `subset.members()[k]`.
pub fn mcshane_extend(
    space: &FiniteMetricSpace,
    subset: &PointSubset,
    values: &[f64],
    l: f64,
) -> Result<ScalarField> {
    let s = subset.members();
    if s.is_empty() || values.len() != s.len() {
        return Err(Error::Structural("one value per subset point expected".into()));
    }
    if !(l >= 0.0 && l.is_finite()) {
        return Err(Error::Parameter(format!("Lipschitz constant {l} must be finite and nonnegative")));
    }
    let tol = 1e-12 * (1.0 + values.iter().map(|v| math::abs(*v)).fold(0.0, f64::max));
    for (a, &x) in s.iter().enumerate() {
        for (b, &y) in s.iter().enumerate().skip(a + 1) {
            if math::abs(values[a] - values[b]) > l * space.d(x, y) + tol {
                return Err(Error::Precondition(format!(
                    "partial field is not {l}-Lipschitz at points {x} and {y}"
                )));
            }
        }
    }
    let out = (0..space.len())
        .map(|x| match s.binary_search(&x) {
            Ok(k) => values[k],
            Err(_) => s
                .iter()
                .zip(values)
                .map(|(&y, v)| v + l * space.d(x, y))
                .fold(f64::INFINITY, f64::min),
        })
        .collect();
    Ok(ScalarField(out))
}

/// Pointwise maximum.
pub fn lattice_join(f: &ScalarField, g: &ScalarField) -> ScalarField {
    ScalarField(f.0.iter().zip(&g.0).map(|(a, b)| a.max(*b)).collect())
}

/// Pointwise minimum.
pub fn lattice_meet(f: &ScalarField, g: &ScalarField) -> ScalarField {
    ScalarField(f.0.iter().zip(&g.0).map(|(a, b)| a.min(*b)).collect())
}

/// Scale-restricted Lipschitz constants `ω_f(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessProfile {
    /// Strictly decreasing radii.
    pub radii: Vec<f64>,
    pub omega: Vec<f64>,
}

impl FlatnessProfile {
    /// `ω` at the largest listed radius not exceeding `r`, or `0`.
    pub fn at(&self, r: f64) -> f64 {
        self.radii
            .iter()
            .position(|&s| s <= r)
            .map_or(0.0, |i| self.omega[i])
    }
}

/// `ω_f(r)`: largest quotient over pairs with `d <= r`; `0` below the
/// smallest distance.
pub fn flatness_modulus(space: &FiniteMetricSpace, f: &ScalarField, radii: &[f64]) -> Result<FlatnessProfile> {
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::Parameter("flatness radii must be positive".into()));
    }
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| b.total_cmp(a));
    radii.dedup();
    let mut quotients: Vec<(f64, f64)> = pairs(space.len())
        .map(|(i, j)| (space.d(i, j), quotient(space, &f.0, i, j)))
        .collect();
    quotients.sort_by(|a, b| a.0.total_cmp(&b.0));
    // running maximum of the quotient over pairs up to each distance
    let mut running = Vec::with_capacity(quotients.len());
    let mut m = 0.0_f64;
    for &(_, q) in &quotients {
        m = m.max(q);
        running.push(m);
    }
    let omega = radii
        .iter()
        .map(|&r| {
            let k = quotients.partition_point(|&(d, _)| d <= r);
            if k == 0 { 0.0 } else { running[k - 1] }
        })
        .collect();
    Ok(FlatnessProfile { radii, omega })
}

/// How well a family of fields separates the points of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    /// `(x, y, s(x, y))` for every unordered pair.
    pub scores: Vec<(usize, usize, f64)>,
    /// `1 / min s`, infinite when some pair is not separated.
    pub constant: f64,
    /// Pair attaining the minimum score.
    pub worst: Option<(usize, usize)>,
}

pub fn separation_report(space: &FiniteMetricSpace, family: &[ScalarField]) -> SeparationReport {
    let scores: Vec<(usize, usize, f64)> = pairs(space.len())
        .map(|(i, j)| {
            let s = family.iter().map(|f| quotient(space, &f.0, i, j)).fold(0.0, f64::max);
            (i, j, s)
        })
        .collect();
    let worst = scores
        .iter()
        .copied()
        .reduce(|a, b| if b.2 < a.2 { b } else { a });
    let constant = match worst {
        Some((_, _, s)) if s > 0.0 => 1.0 / s,
        Some(_) => f64::INFINITY,
        None => 0.0,
    };
    let constant = if family.is_empty() { f64::INFINITY } else { constant };
    SeparationReport { scores, constant, worst: worst.map(|(i, j, _)| (i, j)) }
}

/// Lebesgue measure of the image of an ordered arc sample.
///
/// Consecutive runs of `resolution + 1` samples (sharing endpoints) form the
/// segments; each contributes the interval `[min f, max f]`.
pub fn image_null_estimate(values: &[f64], resolution: usize) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Parameter("image of an empty sample".into()));
    }
    if resolution == 0 {
        return Err(Error::Parameter("resolution must be at least 1".into()));
    }
    if values.len() == 1 {
        return Ok(0.0);
    }
    let images = values
        .windows(2)
        .collect::<Vec<_>>()
        .chunks(resolution)
        .map(|c| {
            c.iter()
                .flat_map(|w| w.iter())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
        })
        .collect();
    Ok(IntervalUnion::from_unsorted(images)?.total_length())
}
