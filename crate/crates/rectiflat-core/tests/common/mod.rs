#![allow(dead_code)]

use proptest::prelude::*;
use rectiflat_core::metric::{FiniteMetricSpace, Norm};
use rectiflat_core::ur::IntervalUnion;

/// Shortest-path closure of a symmetric weight matrix.
pub fn closure(mut d: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

fn graph_space(n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    prop::collection::vec(0.1f64..1.0, n * n).prop_map(move |w| {
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                d[i][j] = w[i * n + j];
                d[j][i] = w[i * n + j];
            }
        }
        FiniteMetricSpace::from_matrix(closure(d)).unwrap()
    })
}

fn point_space(n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), n), any::<bool>()).prop_filter_map(
        "coincident points",
        |(c, max)| FiniteMetricSpace::from_coords(&c, if max { Norm::Max } else { Norm::Euclidean }).ok(),
    )
}

/// Random metric spaces with `lo..=hi` points.
pub fn space(lo: usize, hi: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (lo..=hi).prop_flat_map(|n| prop_oneof![graph_space(n), point_space(n)])
}

/// Random unions of at most `max` closed intervals inside `[0, 1]`.
pub fn interval_union(max: usize) -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec(0.0f64..1.0, 2..=2 * max).prop_filter_map("touching intervals", |mut e| {
        e.sort_by(f64::total_cmp);
        if e.len() % 2 == 1 {
            e.pop();
        }
        IntervalUnion::new(e.chunks(2).map(|c| (c[0], c[1])).collect()).ok()
    })
}

/// Random 1-bounded turning arcs: metric `|s - t|^alpha` on random parameters
/// with random tags.
pub fn tagged_arc(max: usize) -> impl Strategy<Value = rectiflat_core::ur::ModelArc> {
    use rectiflat_core::ur::{ModelArc, Tag};
    (
        prop::collection::btree_set(0u32..1000, 2..=max),
        prop::sample::select(vec![1.0, 0.8, 0.5]),
        prop::collection::vec((0u8..3, 0.0f64..1.0), max),
    )
        .prop_map(|(ts, alpha, tags)| {
            let params: Vec<f64> = ts.into_iter().map(|t| t as f64 / 1000.0).collect();
            let rows: Vec<Vec<f64>> = params
                .iter()
                .map(|s| params.iter().map(|t| (s - t).abs().powf(alpha)).collect())
                .collect();
            let segments = (0..params.len() - 1)
                .map(|i| match tags[i].0 {
                    0 => Tag::Rectifiable { length: rows[i][i + 1] * (1.0 + tags[i].1) },
                    1 => Tag::SigmaFinite,
                    _ => Tag::Fat,
                })
                .collect();
            ModelArc::new(params, rows, segments).unwrap()
        })
}

/// Cheapest cover of the marked segments `lo..hi` of an arc, by exhaustive
/// choice of the covered segment set: each maximal covered run costs its
/// endpoint distance.
pub fn brute_arc_cover(arc: &rectiflat_core::ur::ModelArc, lo: usize, hi: usize, mandatory: &[bool]) -> f64 {
    let k = hi - lo;
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << k) {
        let covered = |s: usize| mask >> (s - lo) & 1 == 1;
        if (lo..hi).any(|s| mandatory[s] && !covered(s)) {
            continue;
        }
        let mut cost = 0.0;
        let mut s = lo;
        while s < hi {
            if covered(s) {
                let start = s;
                while s < hi && covered(s) {
                    s += 1;
                }
                cost += arc.d(start, s);
            } else {
                s += 1;
            }
        }
        best = best.min(cost);
    }
    best
}
