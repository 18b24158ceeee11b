//! Deterministic generators for the fixture spaces.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::{snowflake, FiniteMetricSpace, Norm};
use crate::ur::{IntervalUnion, ModelArc, Tag};

/// Largest Cantor level accepted by the generators.
pub const MAX_CANTOR_LEVEL: u32 = 20;

fn check_level(k: u32) -> Result<()> {
    if k > MAX_CANTOR_LEVEL {
        return Err(Error::Resource(format!("Cantor level {k} exceeds {MAX_CANTOR_LEVEL}")));
    }
    Ok(())
}

/// Left endpoints of the level-`k` intervals as numerators over `3^k`.
fn cantor_numerators(k: u32) -> Vec<u64> {
    (0..1u64 << k)
        .map(|m| (0..k).filter(|b| m >> b & 1 == 1).map(|b| 2 * 3u64.pow(b)).sum())
        .collect()
}

/// Level-`k` outer approximation of the middle-thirds Cantor set.
pub fn cantor_interval_union(k: u32) -> Result<IntervalUnion> {
    check_level(k)?;
    let scale = 3u64.pow(k) as f64;
    let mut lefts = cantor_numerators(k);
    lefts.sort_unstable();
    IntervalUnion::new(lefts.into_iter().map(|a| (a as f64 / scale, (a + 1) as f64 / scale)).collect())
}

fn cantor_endpoints(k: u32) -> Result<Vec<f64>> {
    Ok(cantor_interval_union(k)?
        .intervals()
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect())
}

/// The `2^(k+1)` endpoints of the level-`k` intervals, base at `0`.
pub fn cantor_endpoint_sample(k: u32) -> Result<FiniteMetricSpace> {
    FiniteMetricSpace::from_reals(&cantor_endpoints(k)?)
}

/// Cantor endpoints under `|s - t|^β` with `β = log_3 2`.
pub fn snowflake_cantor_sample(k: u32) -> Result<FiniteMetricSpace> {
    snowflake(&cantor_endpoint_sample(k)?, math::cantor_dimension())
}

/// The Cantor function, read off 64 ternary digits.
pub fn cantor_staircase(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!("staircase argument {x} outside [0,1]")));
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let mut rest = x;
    let mut weight = 0.5;
    let mut value = 0.0;
    for _ in 0..64 {
        rest *= 3.0;
        let digit = math::floor(rest).min(2.0);
        rest -= digit;
        if digit == 1.0 {
            return Ok(value + weight);
        }
        if digit == 2.0 {
            value += weight;
        }
        weight *= 0.5;
    }
    Ok(value)
}

/// The snowflaked Cantor set with its gaps filled by geodesic segments,
/// modeled at level `k`.
pub fn filled_cantor_arc(k: u32) -> Result<ModelArc> {
    let t = cantor_endpoints(k)?;
    let beta = math::cantor_dimension();
    let dist = |a: f64, b: f64| if a == b { 0.0 } else { math::pow(math::abs(a - b), beta) };
    let rows = t.iter().map(|&a| t.iter().map(|&b| dist(a, b)).collect()).collect();
    let segments = t
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            if i % 2 == 0 {
                Tag::SigmaFinite
            } else {
                Tag::Rectifiable { length: dist(w[0], w[1]) }
            }
        })
        .collect();
    ModelArc::new(t, rows, segments)
}

/// Zeros `x = 1/(jπ)` of the topologist's sine curve for `j = 1..=n`,
/// preceded by the limit points `(0,0)` and `(0,1)`; base `(0,0)`.
pub fn topologist_sine_sample(n: usize) -> Result<FiniteMetricSpace> {
    let mut coords = alloc::vec![alloc::vec![0.0, 0.0], alloc::vec![0.0, 1.0]];
    coords.extend((1..=n).map(|j| {
        let x = 1.0 / (j as f64 * core::f64::consts::PI);
        alloc::vec![x, math::sin(1.0 / x)]
    }));
    FiniteMetricSpace::from_coords(&coords, Norm::Euclidean)
}

/// Polyline following the sine curve from `x = 1/π` to `x = 1/(nπ)`, with
/// `per_hump` chords between consecutive zeros.
pub fn topologist_sine_polyline(n: usize, per_hump: usize) -> Vec<Vec<f64>> {
    let per_hump = per_hump.max(1);
    let mut out = Vec::new();
    for j in 1..=n {
        let steps = if j == n { 1 } else { per_hump };
        for s in 0..steps {
            let u = j as f64 + s as f64 / per_hump as f64;
            let x = 1.0 / (u * core::f64::consts::PI);
            out.push(alloc::vec![x, math::sin(1.0 / x)]);
        }
    }
    out
}

/// `n + 1` equispaced points of `[0,1]`.
pub fn unit_interval_sample(n: usize) -> Result<FiniteMetricSpace> {
    if n == 0 {
        return FiniteMetricSpace::from_reals(&[0.0]);
    }
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    FiniteMetricSpace::from_reals(&xs)
}
