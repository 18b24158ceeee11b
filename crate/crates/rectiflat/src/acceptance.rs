//! The acceptance suite: ten numbered criteria, each a pure function of the
//! seed, run serially or in parallel with identical results.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use rectiflat_core::curves::{length, measure_inside, measure_outside, modify_through_convex, modify_through_cover};
use rectiflat_core::flat::{flat_separator, SeparatorConfig};
use rectiflat_core::free::{free_norm, free_norm_report, molecule, FreeVector};
use rectiflat_core::hausdorff::{check_usc, content_interval_union, content_upper_greedy, UscReport};
use rectiflat_core::lipschitz::{de_leeuw, lip_norm, ScalarField};
use rectiflat_core::metric::{eps_net, neighborhood, FiniteMetricSpace, PointSubset};
use rectiflat_core::ur::{
    collapse_step, dl_arc, dur_interval_union, finite_dur, gap_certificate, iterate_collapse, ModelArc,
};
use rectiflat_core::zoo::{
    cantor_interval_union, filled_cantor_arc, snowflake_cantor_sample, unit_interval_sample,
};
use rectiflat_core::Result;
use serde::Serialize;

use crate::sample;

/// Outcome of one criterion. `detail` is deterministic; `elapsed` is not.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for Outcome {
    fn eq(&self, other: &Self) -> bool {
        (self.id, self.name, self.passed, &self.detail) == (other.id, other.name, other.passed, &other.detail)
    }
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    check: fn(u64) -> Result<Verdict>,
}

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "dur exact on Cantor unions", budget: Some(Duration::from_secs(1)), check: c1_dur },
    Criterion { id: 2, name: "gap certificate optimal", budget: None, check: c2_certificate },
    Criterion { id: 3, name: "model arc agrees with line formula", budget: Some(Duration::from_secs(10)), check: c3_cross },
    Criterion { id: 4, name: "filled Cantor arc disagreement", budget: None, check: c4_filled },
    Criterion { id: 5, name: "separator on snowflaked Cantor", budget: Some(Duration::from_secs(60)), check: c5_separator },
    Criterion { id: 6, name: "flat fields on [0,1] are nearly constant", budget: None, check: c6_flat_interval },
    Criterion { id: 7, name: "free norm duality", budget: Some(Duration::from_secs(30)), check: c7_free },
    Criterion { id: 8, name: "Hausdorff content fixtures", budget: None, check: c8_content },
    Criterion { id: 9, name: "curve modification contracts", budget: None, check: c9_curves },
    Criterion { id: 10, name: "collapse monotone and finite fixed points", budget: None, check: c10_collapse },
];

fn run_one(c: &Criterion, seed: u64) -> Outcome {
    let start = Instant::now();
    let verdict = (c.check)(seed).unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
    let elapsed = start.elapsed();
    let over = c.budget.filter(|b| elapsed > *b);
    let detail = match over {
        Some(b) => format!("{}; over the {} s budget", verdict.detail, b.as_secs()),
        None => verdict.detail,
    };
    Outcome { id: c.id, name: c.name, passed: verdict.passed && over.is_none(), detail, elapsed }
}

/// Runs every criterion in parallel; results are in criterion order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.par_iter().map(|c| run_one(c, seed)).collect()
}

pub fn run_serial(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_one(c, seed)).collect()
}

/// Runs a single criterion by number.
pub fn run_criterion(id: u8, seed: u64) -> Option<Outcome> {
    CRITERIA.iter().find(|c| c.id == id).map(|c| run_one(c, seed))
}

fn cantor_gap(k: u32) -> f64 {
    1.0 - (2.0f64 / 3.0).powi(k as i32)
}

fn c1_dur(_seed: u64) -> Result<Verdict> {
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let u = cantor_interval_union(k)?;
        worst = worst.max((dur_interval_union(&u, 0.0, 1.0)? - cantor_gap(k)).abs());
    }
    Ok(Verdict::new(worst <= 1e-12, format!("max error {worst:.3e} over k = 1..10")))
}

fn c2_certificate(_seed: u64) -> Result<Verdict> {
    let mut worst = 0.0f64;
    let mut flat_ok = true;
    let mut lip_ok = true;
    for k in 1..=10 {
        let u = cantor_interval_union(k)?;
        let cert = gap_certificate(&u);
        worst = worst.max((cert.eval(1.0) - cert.eval(0.0) - cantor_gap(k)).abs());
        for &(a, b) in u.intervals() {
            flat_ok &= cert.eval(a) == cert.eval(b);
        }
        for (w, s) in cert.knots.windows(2).zip(&cert.slopes) {
            let mid = 0.5 * (w[0] + w[1]);
            if u.contains(mid) {
                flat_ok &= *s == 0.0;
            }
        }
        lip_ok &= cert.lipschitz_constant() <= 1.0;
        for (i, &x) in cert.knots.iter().enumerate() {
            for &y in &cert.knots[i + 1..] {
                lip_ok &= (cert.eval(y) - cert.eval(x)).abs() <= (y - x) + 4.0 * f64::EPSILON;
            }
        }
    }
    Ok(Verdict::new(
        worst <= 1e-12 && flat_ok && lip_ok,
        format!("max error {worst:.3e}, slope 0 on U: {flat_ok}, 1-Lipschitz: {lip_ok}"),
    ))
}

fn c3_cross(seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed, 3);
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    for _ in 0..200 {
        let u = sample::interval_union(&mut rng, 8);
        let arc = ModelArc::from_interval_union(&u);
        let t = arc.params();
        for _ in 0..5 {
            let i = rng.random_range(0..t.len());
            let j = rng.random_range(0..t.len());
            let (i, j) = (i.min(j), i.max(j));
            worst = worst.max((dl_arc(&arc, i, j)? - dur_interval_union(&u, t[i], t[j])?).abs());
            pairs += 1;
        }
    }
    Ok(Verdict::new(worst <= 1e-9, format!("max error {worst:.3e} over {pairs} pairs")))
}

fn c4_filled(_seed: u64) -> Result<Verdict> {
    let mut ok = true;
    let mut notes = Vec::new();
    for k in 0..=6 {
        let arc = filled_cantor_arc(k)?;
        let collapsed = collapse_step(&arc).endpoint_distance();
        let fixed = iterate_collapse(&arc, 16).last().endpoint_distance();
        let dl = dl_arc(&arc, 0, arc.len() - 1)?;
        let case = (collapsed - 1.0).abs() <= 1e-9 && (fixed - 1.0).abs() <= 1e-9 && dl == 0.0 && fixed - dl > 0.5;
        ok &= case;
        if !case {
            notes.push(format!("k={k}: collapse {collapsed}, fixed point {fixed}, dl {dl}"));
        }
    }
    let detail = if ok {
        "k = 0..6: collapse endpoint distance 1, dl 0, disagreement asserted".to_string()
    } else {
        notes.join("; ")
    };
    Ok(Verdict::new(ok, detail))
}

fn c5_separator(_seed: u64) -> Result<Verdict> {
    let space = snowflake_cantor_sample(5)?;
    let delta = 0.1 * space.diam();
    let (_, r) = flat_separator(&space, 0, delta, &SeparatorConfig::default())?;
    let c_n = *r.levels.last().expect("levels");
    let passed = r.certified && r.min_slack >= 0.0 && r.lip_norm <= 1.05 && r.omega_innermost <= c_n;
    Ok(Verdict::new(
        passed,
        format!(
            "certified {}, min slack {:.4}, lip {:.4}, omega(r_N) {:.4} vs c_N {:.4}",
            r.certified, r.min_slack, r.lip_norm, r.omega_innermost, c_n
        ),
    ))
}

fn c6_flat_interval(seed: u64) -> Result<Verdict> {
    let n = 64;
    let space = unit_interval_sample(n)?;
    let mut rng = sample::rng(seed, 6);
    let mut worst = f64::NEG_INFINITY;
    let mut fields = 0;
    for eps in [0.5, 0.1, 0.01] {
        for _ in 0..100 {
            let g = ScalarField::new(&space, sample::eps_flat_values(&mut rng, n, eps))?;
            let q = de_leeuw(&space, &g);
            let adjacent = (0..n).filter_map(|i| q.get(i, i + 1)).map(f64::abs).fold(0.0, f64::max);
            if adjacent > eps * (1.0 + 1e-12) || lip_norm(&space, &g) > 1.0 + 1e-12 {
                return Ok(Verdict::new(false, format!("generated field is not {eps}-flat")));
            }
            worst = worst.max((g.0[n] - g.0[0]).abs() - eps);
            fields += 1;
        }
    }
    Ok(Verdict::new(worst <= 1e-12, format!("{fields} fields, max |g(1)-g(0)| - eps = {worst:.3e}")))
}

fn c7_free(seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed, 7);
    let spaces: Vec<FiniteMetricSpace> = (0..10).map(|_| sample::metric_space(&mut rng, 12)).collect();
    let mut mol = 0.0f64;
    for t in 0..100 {
        let s = &spaces[t % spaces.len()];
        let x = rng.random_range(0..12);
        let y = (x + rng.random_range(1..12)) % 12;
        mol = mol.max((free_norm(s, &molecule(s, x, y)?).0 - 1.0).abs());
    }
    let mut gap = 0.0f64;
    let mut cert_lip = 0.0f64;
    for t in 0..500 {
        let s = &spaces[t % spaces.len()];
        let mu = sample::free_vector(&mut rng, s);
        let r = free_norm_report(s, &mu);
        gap = gap.max(r.gap);
        cert_lip = cert_lip.max(lip_norm(s, &r.certificate));
    }
    let mut diracs = true;
    for s in &spaces {
        for x in 0..12 {
            for y in 0..12 {
                if x != y {
                    let mu = FreeVector::new(s, vec![(x, 1.0), (y, -1.0)])?;
                    diracs &= free_norm(s, &mu).0 == s.d(x, y);
                }
            }
        }
    }
    Ok(Verdict::new(
        mol <= 1e-9 && gap <= 1e-6 && cert_lip <= 1.0 + 1e-9 && diracs,
        format!(
            "molecule error {mol:.3e}, max gap {gap:.3e}, certificate lip {cert_lip:.6}, Dirac differences exact: {diracs}"
        ),
    ))
}

fn usc_fixtures() -> Result<Vec<(&'static str, UscReport)>> {
    let coarse = unit_interval_sample(32)?;
    let k = PointSubset::all(&coarse);
    let constant = check_usc(&coarse, &vec![k.clone(); 6], &k, f64::INFINITY)?;

    let ambient = unit_interval_sample(64)?;
    let segment: Vec<usize> = (16..=48).collect();
    let seg = PointSubset::new(&ambient, segment)?;
    let shrinking = (0..8)
        .map(|j| neighborhood(&ambient, &seg, 0.25 * 0.5f64.powi(j)))
        .collect::<Result<Vec<_>>>()?;
    let nested = check_usc(&ambient, &shrinking, &seg, f64::INFINITY)?;

    let nets = (1..=16).map(|j| eps_net(&ambient, 1.0 / j as f64)).collect::<Result<Vec<_>>>()?;
    let full = PointSubset::all(&ambient);
    let net = check_usc(&ambient, &nets, &full, f64::INFINITY)?;
    Ok(vec![("constant", constant), ("shrinking neighborhoods", nested), ("nets", net)])
}

fn c8_content(_seed: u64) -> Result<Verdict> {
    let mut interval_err = 0.0f64;
    for k in 0..=10 {
        let c = content_interval_union(&cantor_interval_union(k)?);
        interval_err = interval_err.max((c.total - (2.0f64 / 3.0).powi(k as i32)).abs());
    }
    let level2 = content_interval_union(&cantor_interval_union(2)?).total;
    let mut greedy = 0.0f64;
    for k in 0..=8 {
        let s = snowflake_cantor_sample(k)?;
        greedy = greedy.max(content_upper_greedy(&s, &PointSubset::all(&s), f64::INFINITY)?.total);
    }
    let usc = usc_fixtures()?;
    let usc_ok = usc.iter().all(|(_, r)| r.pass);
    let usc_detail: Vec<String> = usc
        .iter()
        .map(|(name, r)| format!("{name} {}", if r.pass { "pass" } else { "FAIL" }))
        .collect();
    let level2_ok = (level2 - 4.0 / 9.0).abs() <= 1e-15;
    Ok(Verdict::new(
        interval_err <= 1e-12 && level2_ok && greedy <= 1.0 + 1e-9 && usc_ok,
        format!(
            "interval error {interval_err:.3e}, level 2 = {level2:.15}, max greedy {greedy:.12}, usc: {}",
            usc_detail.join(", ")
        ),
    ))
}

fn c9_curves(seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed, 9);
    let mut failures = Vec::new();
    for t in 0..1000 {
        let (poly, ball) = sample::polyline_and_ball(&mut rng);
        let out = modify_through_convex(&poly, &ball);
        let e = std::slice::from_ref(&ball);
        let ends = out.first() == poly.first() && out.last() == poly.last();
        let inside = measure_inside(&out, e) <= ball.diam() + 1e-12;
        let outside = measure_outside(&out, e) <= measure_outside(&poly, e) + 1e-12;
        let len = length(&out) <= length(&poly) + ball.diam() + 1e-12;
        if !(ends && inside && outside && len) {
            failures.push(format!("convex instance {t}"));
        }

        let dim = poly.first().len();
        let m = rng.random_range(1..=4);
        let cover: Vec<_> = (0..m).map(|_| sample::ball(&mut rng, dim)).collect();
        let eps: f64 = cover.iter().map(|b| b.diam()).sum();
        let slack = m as f64 * 1e-12;
        let out = modify_through_cover(&poly, &cover);
        let ends = out.first() == poly.first() && out.last() == poly.last();
        let inside = measure_inside(&out, &cover) <= eps + slack;
        let len = length(&out) <= length(&poly) + eps + slack;
        if !(ends && inside && len) {
            failures.push(format!("cover instance {t}"));
        }
    }
    let detail = if failures.is_empty() {
        "1000 convex and 1000 cover instances hold".to_string()
    } else {
        format!("{} failures, first: {}", failures.len(), failures[0])
    };
    Ok(Verdict::new(failures.is_empty(), detail))
}

fn c10_collapse(seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed, 10);
    let mut arcs: Vec<ModelArc> = (0..=6).map(filled_cantor_arc).collect::<Result<_>>()?;
    arcs.extend((0..200).map(|_| sample::tagged_arc(&mut rng)));
    let mut increases = 0usize;
    for arc in &arcs {
        let trace = iterate_collapse(arc, 16);
        for s in 1..trace.stages.len() {
            for a in 0..arc.len() {
                for b in (a + 1)..arc.len() {
                    let before = trace.pair_distance(s - 1, a, b);
                    if trace.pair_distance(s, a, b) > before + 1e-12 * before.max(1.0) {
                        increases += 1;
                    }
                }
            }
        }
    }
    let mut dur_err = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=8);
        let s = sample::metric_space(&mut rng, n);
        for x in 0..n {
            for y in 0..n {
                dur_err = dur_err.max((finite_dur(&s, x, y)? - s.d(x, y)).abs());
            }
        }
    }
    Ok(Verdict::new(
        increases == 0 && dur_err <= 1e-12,
        format!("{} traces, {increases} increasing pairs, finite_dur error {dur_err:.3e}", arcs.len()),
    ))
}
