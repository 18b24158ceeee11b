use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// A compact subset of the line: sorted disjoint closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Structural("empty interval union".into()));
        }
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Structural(format!("interval {i} is not finite")));
            }
            if b < a {
                return Err(Error::Structural(format!("interval {i} has b < a")));
            }
            if i > 0 && intervals[i - 1].1 >= a {
                return Err(Error::Structural(format!("intervals {} and {i} are not disjoint and sorted", i - 1)));
            }
        }
        Ok(Self { intervals })
    }

    /// Normalizes arbitrary closed intervals by sorting and merging overlaps.
    pub fn from_unsorted(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.iter().any(|&(a, b)| !(a.is_finite() && b.is_finite()) || b < a) {
            return Err(Error::Structural("malformed interval".into()));
        }
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        Self::new(out)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn hull(&self) -> (f64, f64) {
        (self.intervals[0].0, self.intervals[self.intervals.len() - 1].1)
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Complementary gaps inside the hull, in order.
    pub fn gaps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.intervals.windows(2).map(|w| (w[0].1, w[1].0))
    }

    fn tolerance(&self) -> f64 {
        let (lo, hi) = self.hull();
        1e-12 * math::abs(lo).max(math::abs(hi)).max(1.0)
    }

    /// Index of the component containing `x`, with a `1e-12` relative slack.
    pub fn component_of(&self, x: f64) -> Option<usize> {
        let tol = self.tolerance();
        self.intervals
            .iter()
            .position(|&(a, b)| x >= a - tol && x <= b + tol)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.component_of(x).is_some()
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let all = self.intervals.iter().chain(&other.intervals).copied().collect();
        Self::from_unsorted(all).expect("union of valid interval unions")
    }

    /// Length of `U` lying in `[lo, hi]`.
    pub fn length_within(&self, lo: f64, hi: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(a, b)| (b.min(hi) - a.max(lo)).max(0.0))
            .sum()
    }
}

/// Total length of complementary gaps between two points of `U`.
pub fn dur_interval_union(u: &IntervalUnion, x: f64, y: f64) -> Result<f64> {
    let (cx, cy) = match (u.component_of(x), u.component_of(y)) {
        (Some(cx), Some(cy)) => (cx, cy),
        _ => return Err(Error::Parameter(format!("points {x}, {y} must lie in the union"))),
    };
    let (lo, hi) = (cx.min(cy), cx.max(cy));
    Ok(u.intervals[lo..=hi].windows(2).map(|w| w[1].0 - w[0].1).sum())
}

/// The function `f(x) = ∫_0^x 1_{R \ U}` as a piecewise-linear map.
///
/// Knots are the interval endpoints together with `0`; outside the knot range
/// the slope is `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCertificate {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
    /// Slope on each open piece between consecutive knots.
    pub slopes: Vec<f64>,
}

impl GapCertificate {
    pub fn eval(&self, x: f64) -> f64 {
        let k = &self.knots;
        let last = k.len() - 1;
        if x <= k[0] {
            return self.values[0] - (k[0] - x);
        }
        if x >= k[last] {
            return self.values[last] + (x - k[last]);
        }
        let i = k.partition_point(|&t| t <= x) - 1;
        self.values[i] + self.slopes[i] * (x - k[i])
    }

    /// Largest slope magnitude, including the unit slopes at infinity.
    pub fn lipschitz_constant(&self) -> f64 {
        self.slopes.iter().map(|s| math::abs(*s)).fold(1.0, f64::max)
    }
}

pub fn gap_certificate(u: &IntervalUnion) -> GapCertificate {
    let mut knots: Vec<f64> = u.intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
    knots.push(0.0);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let slopes: Vec<f64> = knots
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let inside = u.intervals.iter().any(|&(a, b)| a <= mid && mid <= b);
            if inside { 0.0 } else { 1.0 }
        })
        .collect();
    let zero = knots.iter().position(|&t| t == 0.0).expect("0 is a knot");
    let mut values = alloc::vec![0.0; knots.len()];
    for i in zero + 1..knots.len() {
        values[i] = values[i - 1] + slopes[i - 1] * (knots[i] - knots[i - 1]);
    }
    for i in (0..zero).rev() {
        values[i] = values[i + 1] - slopes[i] * (knots[i + 1] - knots[i]);
    }
    GapCertificate { knots, values, slopes }
}
