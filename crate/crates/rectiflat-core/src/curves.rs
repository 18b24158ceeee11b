//! Polygonal curves in a normed space and the curve surgery used by the
//! flat separator.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::metric::{FiniteMetricSpace, Norm};

/// A polygonal curve with a nondecreasing parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Vec<f64>>,
    params: Vec<f64>,
    norm: Norm,
}

impl Polyline {
    pub fn new(vertices: Vec<Vec<f64>>, params: Vec<f64>, norm: Norm) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Structural("polyline without vertices".into()));
        }
        if params.len() != vertices.len() {
            return Err(Error::Structural(format!("{} params for {} vertices", params.len(), vertices.len())));
        }
        let dim = vertices[0].len();
        if vertices.iter().flatten().chain(&params).any(|v| !v.is_finite())
            || vertices.iter().any(|v| v.len() != dim)
        {
            return Err(Error::Structural("malformed polyline coordinates".into()));
        }
        if params.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Structural("polyline params must be nondecreasing".into()));
        }
        Ok(Self { vertices, params, norm })
    }

    /// Polyline parametrized by arc length.
    pub fn by_arclength(vertices: Vec<Vec<f64>>, norm: Norm) -> Result<Self> {
        let mut params = Vec::with_capacity(vertices.len());
        let mut t = 0.0;
        for (i, v) in vertices.iter().enumerate() {
            if i > 0 {
                t += norm.distance(&vertices[i - 1], v);
            }
            params.push(t);
        }
        Self::new(vertices, params, norm)
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn first(&self) -> &[f64] {
        &self.vertices[0]
    }

    pub fn last(&self) -> &[f64] {
        &self.vertices[self.vertices.len() - 1]
    }

    /// True when every segment is no longer than its parameter increment.
    pub fn is_unit_speed_bounded(&self) -> bool {
        self.segments().zip(self.params.windows(2)).all(|((a, b), t)| {
            self.norm.distance(a, b) <= (t[1] - t[0]) * (1.0 + 1e-12) + 1e-15
        })
    }

    fn segments(&self) -> impl Iterator<Item = (&[f64], &[f64])> + '_ {
        self.vertices.windows(2).map(|w| (w[0].as_slice(), w[1].as_slice()))
    }
}

/// Sum of the segment norms.
pub fn length(poly: &Polyline) -> f64 {
    poly.segments().map(|(a, b)| poly.norm.distance(a, b)).sum()
}

/// Upper-sum quadrature `Σ |Δv| · max(w(start), w(end))`.
pub fn path_integral(poly: &Polyline, w: impl Fn(&[f64]) -> f64) -> Result<f64> {
    let weights: Vec<f64> = poly.vertices.iter().map(|v| w(v)).collect();
    path_integral_weights(poly, &weights)
}

/// [`path_integral`] with precomputed vertex weights.
pub fn path_integral_weights(poly: &Polyline, weights: &[f64]) -> Result<f64> {
    if weights.len() != poly.vertices.len() {
        return Err(Error::Structural("one weight per vertex expected".into()));
    }
    if let Some(i) = weights.iter().position(|&w| !(w >= 0.0)) {
        return Err(Error::Contract(format!("weight {} at vertex {i} is negative", weights[i])));
    }
    Ok(poly
        .segments()
        .zip(weights.windows(2))
        .map(|((a, b), w)| poly.norm.distance(a, b) * w[0].max(w[1]))
        .sum())
}

/// Closed ball in the ambient norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn diam(&self) -> f64 {
        2.0 * self.radius
    }

    pub fn contains(&self, x: &[f64], norm: Norm) -> bool {
        norm.distance(x, &self.center) <= self.radius
    }

    /// Parameters `t ∈ [0,1]` with `a + t(b - a)` in the ball, or `None`.
    pub fn hit(&self, a: &[f64], b: &[f64], norm: Norm) -> Option<(f64, f64)> {
        self.hit_with_radius(a, b, norm, self.radius)
    }

    /// [`Ball::hit`] with points within rounding distance of the boundary
    /// counted as inside, so chords between computed boundary points are kept.
    pub fn hit_closed(&self, a: &[f64], b: &[f64], norm: Norm) -> Option<(f64, f64)> {
        let scale = self.center.iter().fold(self.radius, |m, c| m.max(math::abs(*c)));
        self.hit_with_radius(a, b, norm, self.radius + 1e-14 * scale)
    }

    fn hit_with_radius(&self, a: &[f64], b: &[f64], norm: Norm, radius: f64) -> Option<(f64, f64)> {
        match norm {
            Norm::Max => {
                let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                for ((&ak, &bk), &ck) in a.iter().zip(b).zip(&self.center) {
                    let slope = bk - ak;
                    let (l, h) = (ck - radius - ak, ck + radius - ak);
                    if slope == 0.0 {
                        if l > 0.0 || h < 0.0 {
                            return None;
                        }
                    } else {
                        let (t0, t1) = (l / slope, h / slope);
                        lo = lo.max(t0.min(t1));
                        hi = hi.min(t0.max(t1));
                    }
                    if lo > hi {
                        return None;
                    }
                }
                Some((lo, hi))
            }
            Norm::Euclidean => {
                let dir: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
                let off: Vec<f64> = a.iter().zip(&self.center).map(|(x, c)| x - c).collect();
                let qa: f64 = dir.iter().map(|v| v * v).sum();
                let qb: f64 = 2.0 * dir.iter().zip(&off).map(|(u, v)| u * v).sum::<f64>();
                let qc: f64 = off.iter().map(|v| v * v).sum::<f64>() - radius * radius;
                if qa == 0.0 {
                    return (qc <= 0.0).then_some((0.0, 1.0));
                }
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 {
                    return None;
                }
                let root = math::sqrt(disc);
                let (lo, hi) = (((-qb - root) / (2.0 * qa)).max(0.0), ((-qb + root) / (2.0 * qa)).min(1.0));
                (lo <= hi).then_some((lo, hi))
            }
        }
    }
}

pub(crate) fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Replaces the stretch between the first and last contact with `ball` by
/// the chord joining them. Curves missing the ball are returned unchanged.
pub fn modify_through_convex(poly: &Polyline, ball: &Ball) -> Polyline {
    let norm = poly.norm;
    let m = poly.vertices.len();
    if m == 1 {
        return poly.clone();
    }
    let hits: Vec<Option<(f64, f64)>> = poly.segments().map(|(a, b)| ball.hit(a, b, norm)).collect();
    let Some(i) = hits.iter().position(Option::is_some) else {
        return poly.clone();
    };
    let j = hits.iter().rposition(Option::is_some).expect("a hit exists");
    let (t_in, t_out) = (hits[i].expect("hit").0, hits[j].expect("hit").1);
    let at = |s: usize, t: f64| {
        let p = &poly.params;
        (lerp(&poly.vertices[s], &poly.vertices[s + 1], t), p[s] + t * (p[s + 1] - p[s]))
    };
    let (entry, s_in) = at(i, t_in);
    let (exit, s_out) = at(j, t_out);
    let mut vertices: Vec<Vec<f64>> = poly.vertices[..=i].to_vec();
    let mut params: Vec<f64> = poly.params[..=i].to_vec();
    vertices.push(entry);
    params.push(s_in);
    vertices.push(exit);
    params.push(s_out);
    vertices.extend_from_slice(&poly.vertices[j + 1..]);
    params.extend_from_slice(&poly.params[j + 1..]);
    Polyline { vertices, params, norm }
}

/// Applies [`modify_through_convex`] for each ball in order.
pub fn modify_through_cover(poly: &Polyline, cover: &[Ball]) -> Polyline {
    cover.iter().fold(poly.clone(), |p, b| modify_through_convex(&p, b))
}

/// Sorts parameter spans and merges overlapping ones.
pub fn merge_spans(mut spans: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
    for (lo, hi) in spans {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

fn merged_length(spans: Vec<(f64, f64)>) -> f64 {
    merge_spans(spans).iter().map(|(a, b)| b - a).sum()
}

/// Length of the curve inside the union of `balls`.
pub fn measure_inside(poly: &Polyline, balls: &[Ball]) -> f64 {
    poly.segments()
        .map(|(a, b)| {
            let spans = balls.iter().filter_map(|ball| ball.hit_closed(a, b, poly.norm)).collect();
            poly.norm.distance(a, b) * merged_length(spans)
        })
        .sum()
}

/// Length of the curve outside the union of `balls`.
pub fn measure_outside(poly: &Polyline, balls: &[Ball]) -> f64 {
    (length(poly) - measure_inside(poly, balls)).max(0.0)
}

/// A finite 1-Lipschitz parametrized point sequence in a metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFragment {
    knots: Vec<(f64, usize)>,
}

impl CurveFragment {
    /// Checks `t` strictly increasing and `d(x_i, x_j) <= |t_i - t_j|`.
    pub fn new(space: &FiniteMetricSpace, knots: Vec<(f64, usize)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Structural("fragment without knots".into()));
        }
        if knots.iter().any(|&(t, x)| !t.is_finite() || x >= space.len()) {
            return Err(Error::Structural("malformed fragment knot".into()));
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Structural("fragment parameters must increase".into()));
        }
        let tol = 1e-12 * space.diam().max(1.0);
        for (a, &(s, x)) in knots.iter().enumerate() {
            for &(t, y) in &knots[a + 1..] {
                if space.d(x, y) > t - s + tol {
                    return Err(Error::Precondition(format!("fragment is not 1-Lipschitz at knots {x} and {y}")));
                }
            }
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[(f64, usize)] {
        &self.knots
    }

    /// Measure of the parameter hull not occupied by the knot set.
    pub fn gap(&self) -> f64 {
        self.knots[self.knots.len() - 1].0 - self.knots[0].0
    }
}
