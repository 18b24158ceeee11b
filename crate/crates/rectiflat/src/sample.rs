//! Seeded random instances for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rectiflat_core::curves::{Ball, Polyline};
use rectiflat_core::free::FreeVector;
use rectiflat_core::metric::{FiniteMetricSpace, Norm};
use rectiflat_core::ur::{IntervalUnion, ModelArc, Tag};

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Between one and `max_components` closed intervals inside `[0, 1]`,
/// occasionally degenerate.
pub fn interval_union(rng: &mut impl Rng, max_components: usize) -> IntervalUnion {
    loop {
        let m = rng.random_range(1..=max_components);
        let mut ends: Vec<f64> = (0..2 * m).map(|_| rng.random::<f64>()).collect();
        ends.sort_by(f64::total_cmp);
        let mut intervals: Vec<(f64, f64)> = ends.chunks(2).map(|c| (c[0], c[1])).collect();
        if rng.random_bool(0.2) {
            let k = rng.random_range(0..m);
            intervals[k].1 = intervals[k].0;
        }
        if let Ok(u) = IntervalUnion::new(intervals) {
            return u;
        }
    }
}

/// A random metric on `n` points: Euclidean points or a shortest-path closure
/// of random edge weights.
pub fn metric_space(rng: &mut impl Rng, n: usize) -> FiniteMetricSpace {
    if rng.random_bool(0.5) {
        let dim = rng.random_range(1..=3);
        loop {
            let coords: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
            let norm = if rng.random_bool(0.5) { Norm::Euclidean } else { Norm::Max };
            if let Ok(s) = FiniteMetricSpace::from_coords(&coords, norm) {
                return s;
            }
        }
    }
    let mut d = vec![vec![0.0f64; n]; n];
    for (i, j) in (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))) {
        let w = rng.random_range(0.1..1.0);
        d[i][j] = w;
        d[j][i] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    FiniteMetricSpace::from_matrix(d).expect("shortest-path closure is a metric")
}

/// A finitely supported vector with random support and coefficients in `[-2, 2]`.
pub fn free_vector(rng: &mut impl Rng, space: &FiniteMetricSpace) -> FreeVector {
    let n = space.len();
    let size = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    let terms = idx[..size].iter().map(|&x| (x, rng.random_range(-2.0..2.0))).collect();
    FreeVector::new(space, terms).expect("distinct support")
}

/// Values on the evenly spaced sample of `[0, 1]` with `n + 1` points whose
/// adjacent difference quotients are bounded by `eps`.
pub fn eps_flat_values(rng: &mut impl Rng, n: usize, eps: f64) -> Vec<f64> {
    let h = 1.0 / n as f64;
    let mode = rng.random_range(0..3);
    let mut v = Vec::with_capacity(n + 1);
    v.push(rng.random_range(-1.0..1.0));
    for _ in 0..n {
        let q: f64 = match mode {
            0 => rng.random_range(-1.0..=1.0),
            1 => 1.0,
            _ => {
                if rng.random_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        let last = *v.last().expect("nonempty");
        v.push(last + q * eps * h);
    }
    v
}

/// A polyline with 2 to 10 vertices in `[0, 1]^dim` and a ball near it.
pub fn polyline_and_ball(rng: &mut impl Rng) -> (Polyline, Ball) {
    let dim = rng.random_range(1..=4);
    let norm = if rng.random_bool(0.5) { Norm::Max } else { Norm::Euclidean };
    let poly = loop {
        let m = rng.random_range(2..=10);
        let vertices: Vec<Vec<f64>> = (0..m).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
        if let Ok(p) = Polyline::by_arclength(vertices, norm) {
            break p;
        }
    };
    (poly, ball(rng, dim))
}

pub fn ball(rng: &mut impl Rng, dim: usize) -> Ball {
    Ball {
        center: (0..dim).map(|_| rng.random::<f64>()).collect(),
        radius: rng.random_range(0.01..0.6),
    }
}

/// A model arc on random parameters with metric `|s - t|^alpha` and random tags.
pub fn tagged_arc(rng: &mut impl Rng) -> ModelArc {
    let n = rng.random_range(2..=10);
    let mut params: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    params.sort_by(f64::total_cmp);
    params.dedup();
    if params.len() < 2 {
        params = vec![0.0, 1.0];
    }
    let alpha = [1.0, 0.8, rectiflat_core::math::cantor_dimension()][rng.random_range(0..3)];
    let rows: Vec<Vec<f64>> = params
        .iter()
        .map(|s| params.iter().map(|t| (s - t).abs().powf(alpha)).collect())
        .collect();
    let segments = (0..params.len() - 1)
        .map(|i| match rng.random_range(0..3) {
            0 => Tag::Rectifiable { length: rows[i][i + 1] * (1.0 + rng.random::<f64>()) },
            1 => Tag::SigmaFinite,
            _ => Tag::Fat,
        })
        .collect();
    ModelArc::new(params, rows, segments).expect("monotone power of the line is 1-BT")
}
