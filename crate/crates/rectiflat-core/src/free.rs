//! Norms of finitely supported elements of the Lipschitz-free space, solved
//! as transportation problems with the base point as a free reservoir.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lipschitz::ScalarField;
use crate::math;
use crate::metric::FiniteMetricSpace;

/// A finite combination `Σ a_i δ(x_i)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FreeVector {
    terms: Vec<(usize, f64)>,
}

impl FreeVector {
    /// Zero coefficients are dropped; repeated points are an error.
    pub fn new(space: &FiniteMetricSpace, terms: Vec<(usize, f64)>) -> Result<Self> {
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
        for (x, a) in terms {
            if x >= space.len() {
                return Err(Error::Parameter(format!("point index {x} out of range")));
            }
            if !a.is_finite() {
                return Err(Error::Structural(format!("coefficient at {x} is not finite")));
            }
            if out.iter().any(|&(y, _)| y == x) {
                return Err(Error::Structural(format!("point {x} appears twice")));
            }
            if a != 0.0 {
                out.push((x, a));
            }
        }
        Ok(Self { terms: out })
    }

    /// The evaluation functional `δ(x)`.
    pub fn dirac(space: &FiniteMetricSpace, x: usize) -> Result<Self> {
        Self::new(space, vec![(x, 1.0)])
    }

    pub fn terms(&self) -> &[(usize, f64)] {
        &self.terms
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { terms: self.terms.iter().filter(|_| c != 0.0).map(|&(x, a)| (x, c * a)).collect() }
    }

    pub fn add(&self, other: &FreeVector) -> Self {
        let mut terms = self.terms.clone();
        for &(x, b) in &other.terms {
            match terms.iter_mut().find(|(y, _)| *y == x) {
                Some(t) => t.1 += b,
                None => terms.push((x, b)),
            }
        }
        terms.retain(|t| t.1 != 0.0);
        Self { terms }
    }
}

/// The elementary molecule `(δx - δy) / d(x, y)`.
pub fn molecule(space: &FiniteMetricSpace, x: usize, y: usize) -> Result<FreeVector> {
    if x == y {
        return Err(Error::Parameter("molecule needs two distinct points".into()));
    }
    let d = space.d(x, y);
    FreeVector::new(space, vec![(x, 1.0 / d), (y, -1.0 / d)])
}

/// `⟨mu, f⟩ = Σ a_i f(x_i)`.
pub fn pairing(mu: &FreeVector, f: &ScalarField) -> f64 {
    mu.terms.iter().map(|&(x, a)| a * f.0[x]).sum()
}

/// Mass moved from `source` to `sink`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flow {
    pub source: usize,
    pub sink: usize,
    pub mass: f64,
}

/// An optimal transport plan and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    pub flows: Vec<Flow>,
    pub cost: f64,
}

/// Exact free norm by successive shortest augmenting paths.
///
/// Positive mass is sent to negative mass or to the base; the base also
/// supplies any missing mass. Returns the optimal value and plan.
pub fn free_norm(space: &FiniteMetricSpace, mu: &FreeVector) -> (f64, TransportPlan) {
    let base = space.base();
    let mut sources: Vec<(usize, f64)> = Vec::new();
    let mut sinks: Vec<(usize, f64)> = Vec::new();
    for &(x, a) in mu.terms.iter().filter(|t| t.0 != base) {
        if a > 0.0 {
            sources.push((x, a));
        } else {
            sinks.push((x, -a));
        }
    }
    let pos: f64 = sources.iter().map(|s| s.1).sum();
    let neg: f64 = sinks.iter().map(|s| s.1).sum();
    if pos == 0.0 && neg == 0.0 {
        return (0.0, TransportPlan { flows: Vec::new(), cost: 0.0 });
    }
    sources.push((base, neg));
    sinks.push((base, pos));
    let (ns, nd) = (sources.len(), sinks.len());
    let cost = |i: usize, j: usize| space.d(sources[i].0, sinks[j].0);
    let mut supply: Vec<f64> = sources.iter().map(|s| s.1).collect();
    let mut demand: Vec<f64> = sinks.iter().map(|s| s.1).collect();
    let mut flow = vec![0.0_f64; ns * nd];
    let eps = 1e-15 * (pos + neg);
    // Residual graph: supply nodes 0..ns, demand nodes ns..ns+nd.
    loop {
        if supply.iter().all(|&s| s <= eps) || demand.iter().all(|&d| d <= eps) {
            break;
        }
        let nv = ns + nd;
        let mut dist = vec![f64::INFINITY; nv];
        let mut prev = vec![usize::MAX; nv];
        for i in 0..ns {
            if supply[i] > eps {
                dist[i] = 0.0;
            }
        }
        for _ in 0..nv {
            let mut changed = false;
            for i in 0..ns {
                for j in 0..nd {
                    let c = cost(i, j);
                    if dist[i] + c < dist[ns + j] - 1e-15 {
                        dist[ns + j] = dist[i] + c;
                        prev[ns + j] = i;
                        changed = true;
                    }
                    if flow[i * nd + j] > eps && dist[ns + j] - c < dist[i] - 1e-15 {
                        dist[i] = dist[ns + j] - c;
                        prev[i] = ns + j;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let Some(end) = (0..nd)
            .filter(|&j| demand[j] > eps && dist[ns + j].is_finite())
            .min_by(|&a, &b| dist[ns + a].total_cmp(&dist[ns + b]))
        else {
            break;
        };
        let mut path = vec![ns + end];
        let mut v = ns + end;
        while prev[v] != usize::MAX {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        let mut push = supply[path[0]].min(demand[end]);
        for w in path.windows(2) {
            if w[0] >= ns {
                push = push.min(flow[w[1] * nd + (w[0] - ns)]);
            }
        }
        for w in path.windows(2) {
            if w[0] < ns {
                flow[w[0] * nd + (w[1] - ns)] += push;
            } else {
                let k = w[1] * nd + (w[0] - ns);
                flow[k] = (flow[k] - push).max(0.0);
            }
        }
        supply[path[0]] -= push;
        demand[end] -= push;
    }
    let mut flows = Vec::new();
    let mut total = 0.0;
    for i in 0..ns {
        for j in 0..nd {
            let m = flow[i * nd + j];
            let (s, t) = (sources[i].0, sinks[j].0);
            if m > eps && s != t {
                total += m * space.d(s, t);
                flows.push(Flow { source: s, sink: t, mass: m });
            }
        }
    }
    (total, TransportPlan { flows, cost: total })
}

/// A 1-Lipschitz `f` with `f(base) = 0` attaining the free norm of `mu`.
///
/// Potentials come from the complementary slackness conditions of the
/// optimal plan; a McShane pass then removes roundoff above slope 1.
pub fn dual_certificate(space: &FiniteMetricSpace, mu: &FreeVector) -> ScalarField {
    let n = space.len();
    let base = space.base();
    let (_, plan) = free_norm(space, mu);
    // f(v) <= f(u) + w(u, v) for every arc u -> v.
    let mut f = vec![f64::INFINITY; n];
    f[base] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if u != v && f[u] + space.d(u, v) < f[v] - 1e-15 {
                    f[v] = f[u] + space.d(u, v);
                    changed = true;
                }
            }
        }
        for fl in &plan.flows {
            let c = space.d(fl.source, fl.sink);
            if f[fl.source] - c < f[fl.sink] - 1e-15 {
                f[fl.sink] = f[fl.source] - c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut g = inf_convolution(space, &f);
    let shift = g[base];
    for v in g.iter_mut() {
        *v -= shift;
    }
    ScalarField(g)
}

/// `x -> min_y f(y) + d(x, y)`, which is 1-Lipschitz whatever `f` is.
fn inf_convolution(space: &FiniteMetricSpace, f: &[f64]) -> Vec<f64> {
    (0..space.len())
        .map(|x| (0..space.len()).map(|y| f[y] + space.d(x, y)).fold(f64::INFINITY, f64::min))
        .collect()
}

/// Primal value, certificate and duality gap in one call.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeNormReport {
    pub value: f64,
    pub plan: TransportPlan,
    pub certificate: ScalarField,
    pub gap: f64,
}

pub fn free_norm_report(space: &FiniteMetricSpace, mu: &FreeVector) -> FreeNormReport {
    let (value, plan) = free_norm(space, mu);
    let certificate = dual_certificate(space, mu);
    let gap = math::abs(value - pairing(mu, &certificate));
    FreeNormReport { value, plan, certificate, gap }
}
