//! The `d_ur` collapse pseudometric: exact formulas on subsets of the line,
//! curve-flat certificates, and the collapse and `d_Λ` programs on model arcs
//! and trees of bounded turning.

mod arc;
mod interval;
mod tree;

pub use arc::{
    collapse_step, collapse_step_with_map, dl_arc, is_p1u_fixedpoint, iterate_collapse, CollapseTrace,
    ModelArc, Tag,
};
pub use interval::{dur_interval_union, gap_certificate, GapCertificate, IntervalUnion};
pub use tree::{dl_tree, DlTreeReport, ModelTree, TreeEdge};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use alloc::format;
use alloc::vec;

/// Cheapest chain `x = p_0, ..., p_m = y` weighted by `d(p_i, p_{i+1})`.
///
/// On a genuine metric space this coincides with `d(x, y)`.
pub fn finite_dur(space: &FiniteMetricSpace, x: usize, y: usize) -> Result<f64> {
    let n = space.len();
    if x >= n || y >= n {
        return Err(Error::Parameter(format!("point index out of range ({x}, {y})")));
    }
    let mut best = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    best[x] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !done[i])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .expect("unvisited point");
        if u == y {
            break;
        }
        done[u] = true;
        for v in 0..n {
            let c = best[u] + space.d(u, v);
            if !done[v] && c < best[v] {
                best[v] = c;
            }
        }
    }
    Ok(best[y])
}
