mod common;

use proptest::prelude::*;
use rectiflat_core::metric::FiniteMetricSpace;
use rectiflat_core::ur::*;
use rectiflat_core::zoo::{cantor_interval_union, filled_cantor_arc};
use rectiflat_core::Error;

/// Gap measure between `x < y` by a midpoint rule on `cells` cells.
fn riemann_gap(u: &IntervalUnion, x: f64, y: f64, cells: usize) -> f64 {
    let h = (y - x) / cells as f64;
    (0..cells).filter(|&k| !u.contains(x + (k as f64 + 0.5) * h)).count() as f64 * h
}

/// Cheapest monotone chain from `a` to `b`, exhaustively over intermediate
/// breakpoint sets; steps inside a rectifiable run are free.
fn brute_chain(arc: &ModelArc, a: usize, b: usize) -> f64 {
    let mut group = vec![0usize; arc.len()];
    for i in 1..arc.len() {
        group[i] = group[i - 1] + usize::from(!arc.segments()[i - 1].is_rectifiable());
    }
    let cost = |i: usize, j: usize| if group[i] == group[j] { 0.0 } else { arc.d(i, j) };
    let inner: Vec<usize> = (a + 1..b).collect();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << inner.len()) {
        let mut chain = vec![a];
        chain.extend(inner.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p));
        chain.push(b);
        best = best.min(chain.windows(2).map(|w| cost(w[0], w[1])).sum());
    }
    best
}

fn line_arc(params: &[f64], segments: Vec<Tag>) -> Result<ModelArc, Error> {
    let rows = params.iter().map(|s| params.iter().map(|t| (s - t).abs()).collect()).collect();
    ModelArc::new(params.to_vec(), rows, segments)
}

#[test]
fn dur_on_cantor_unions() {
    let u = cantor_interval_union(3).unwrap();
    assert!((dur_interval_union(&u, 0.0, 1.0).unwrap() - 19.0 / 27.0).abs() < 1e-15);
    assert_eq!(dur_interval_union(&u, 0.0, 1.0 / 27.0).unwrap(), 0.0);
    assert!((dur_interval_union(&u, 1.0, 0.0).unwrap() - 19.0 / 27.0).abs() < 1e-15);
    assert!(matches!(dur_interval_union(&u, 0.5, 1.0), Err(Error::Parameter(_))));
    for k in 1..=10 {
        let u = cantor_interval_union(k).unwrap();
        let exact = 1.0 - (2.0f64 / 3.0).powi(k as i32);
        assert!((dur_interval_union(&u, 0.0, 1.0).unwrap() - exact).abs() <= 1e-12);
    }
}

#[test]
fn interval_union_construction() {
    assert!(IntervalUnion::new(vec![]).is_err());
    assert!(IntervalUnion::new(vec![(0.0, 1.0), (1.0, 2.0)]).is_err());
    assert!(IntervalUnion::new(vec![(1.0, 0.0)]).is_err());
    let u = IntervalUnion::from_unsorted(vec![(2.0, 3.0), (0.0, 1.0), (0.5, 1.5)]).unwrap();
    assert_eq!(u.intervals(), &[(0.0, 1.5), (2.0, 3.0)]);
    assert_eq!(u.gaps().collect::<Vec<_>>(), vec![(1.5, 2.0)]);
    assert_eq!(u.length_within(1.0, 2.5), 1.0);
    assert_eq!(u.component_of(2.5), Some(1));
}

#[test]
fn certificate_on_cantor_unions() {
    for k in 1..=10 {
        let u = cantor_interval_union(k).unwrap();
        let c = gap_certificate(&u);
        let exact = 1.0 - (2.0f64 / 3.0).powi(k as i32);
        assert!((c.eval(1.0) - c.eval(0.0) - exact).abs() <= 1e-12);
        assert_eq!(c.eval(0.0), 0.0);
        assert_eq!(c.lipschitz_constant(), 1.0);
        for &(a, b) in u.intervals() {
            assert_eq!(c.eval(a), c.eval(b));
        }
    }
}

#[test]
fn arc_validation() {
    let rect = |l: f64| Tag::Rectifiable { length: l };
    assert!(line_arc(&[0.0, 1.0, 2.0], vec![rect(1.0), Tag::Fat]).is_ok());
    assert!(matches!(line_arc(&[0.0, 1.0], vec![rect(0.5)]), Err(Error::Precondition(_))));
    assert!(matches!(line_arc(&[1.0, 0.0], vec![Tag::Fat]), Err(Error::Precondition(_))));
    assert!(matches!(line_arc(&[0.0, 1.0], vec![]), Err(Error::Structural(_))));
    let turning = vec![vec![0.0, 2.0, 1.0], vec![2.0, 0.0, 1.5], vec![1.0, 1.5, 0.0]];
    assert!(matches!(
        ModelArc::new(vec![0.0, 1.0, 2.0], turning, vec![Tag::Fat, Tag::Fat]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn interval_union_encoding() {
    let u = IntervalUnion::new(vec![(0.0, 0.2), (0.5, 0.5), (0.7, 1.0)]).unwrap();
    let arc = ModelArc::from_interval_union(&u);
    assert_eq!(arc.params(), &[0.0, 0.2, 0.5, 0.7, 1.0]);
    assert_eq!(arc.segments()[1], Tag::Fat);
    assert!((dl_arc(&arc, 0, 4).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn rectifiable_arc_collapses_to_a_point() {
    let rect = Tag::Rectifiable { length: 1.0 };
    let arc = line_arc(&[0.0, 1.0, 2.0], vec![rect, rect]).unwrap();
    let c = collapse_step(&arc);
    assert_eq!(c.len(), 1);
    assert_eq!(c.endpoint_distance(), 0.0);
    assert!(is_p1u_fixedpoint(&c));
}

#[test]
fn filled_cantor_arc_fixture() {
    for k in 0..=6 {
        let arc = filled_cantor_arc(k).unwrap();
        let c = collapse_step(&arc);
        c.validate().unwrap();
        assert!((c.endpoint_distance() - 1.0).abs() <= 1e-9);
        assert!(is_p1u_fixedpoint(&c));
        let trace = iterate_collapse(&arc, 8);
        assert_eq!(trace.stabilized_at, Some(if k == 0 { 0 } else { 1 }));
        assert_eq!(dl_arc(&arc, 0, arc.len() - 1).unwrap(), 0.0);
    }
}

#[test]
fn trees() {
    let rows = vec![
        vec![0.0, 1.0, 1.0, 1.0],
        vec![1.0, 0.0, 2.0, 2.0],
        vec![1.0, 2.0, 0.0, 2.0],
        vec![1.0, 2.0, 2.0, 0.0],
    ];
    let edges = vec![
        TreeEdge { from: 0, to: 1, tag: Tag::Fat },
        TreeEdge { from: 0, to: 2, tag: Tag::Rectifiable { length: 1.0 } },
        TreeEdge { from: 0, to: 3, tag: Tag::SigmaFinite },
    ];
    let tree = ModelTree::new(rows.clone(), edges.clone()).unwrap();
    assert_eq!(tree.path(1, 2), vec![1, 0, 2]);
    let r = dl_tree(&tree, 1, 2).unwrap();
    assert_eq!(r.value, 1.0);
    assert_eq!(r.path, vec![1, 0, 2]);
    assert!(r.retraction_quotient <= 1.0);
    assert_eq!(dl_tree(&tree, 2, 3).unwrap().value, 0.0);
    assert_eq!(dl_tree(&tree, 3, 3).unwrap().value, 0.0);
    assert_eq!(tree.first_contact_retraction(1, 2), vec![0, 1, 2, 0]);
    assert!(matches!(ModelTree::new(rows.clone(), edges[..2].to_vec()), Err(Error::Structural(_))));
    let cyclic = vec![edges[0], edges[1], TreeEdge { from: 1, to: 0, tag: Tag::Fat }];
    assert!(ModelTree::new(rows, cyclic).is_err());
}

#[test]
fn finite_dur_on_a_pseudometric() {
    let ids = vec!["a".into(), "b".into(), "c".into()];
    let rows = vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
    let s = FiniteMetricSpace::new_pseudometric(ids, rows, 0).unwrap();
    assert_eq!(finite_dur(&s, 0, 2).unwrap(), 2.0);
    assert!(finite_dur(&s, 0, 3).is_err());
}

proptest! {
    #[test]
    fn dur_matches_riemann_sums(u in common::interval_union(6), a in 0usize..12, b in 0usize..12) {
        let ends: Vec<f64> = u.intervals().iter().flat_map(|&(p, q)| [p, q]).collect();
        let (x, y) = (ends[a % ends.len()], ends[b % ends.len()]);
        let (x, y) = (x.min(y), x.max(y));
        let exact = dur_interval_union(&u, x, y).unwrap();
        let cells = 200_000;
        prop_assert!((exact - riemann_gap(&u, x, y, cells)).abs() <= 2.0 * u.len() as f64 / cells as f64 + 1e-12);
        let c = gap_certificate(&u);
        prop_assert!((c.eval(y) - c.eval(x) - exact).abs() <= 1e-12);
    }

    #[test]
    fn certificate_is_flat_on_u_and_one_lipschitz(u in common::interval_union(6), t in prop::collection::vec(-0.5f64..1.5, 8)) {
        let c = gap_certificate(&u);
        for &(a, b) in u.intervals() {
            prop_assert!((c.eval(a) - c.eval(b)).abs() <= 1e-15);
        }
        for &x in &t {
            for &y in &t {
                prop_assert!((c.eval(x) - c.eval(y)).abs() <= (x - y).abs() + 1e-12);
            }
        }
    }

    #[test]
    fn arc_encoding_agrees_with_the_line(u in common::interval_union(6)) {
        let arc = ModelArc::from_interval_union(&u);
        let t = arc.params();
        for i in 0..t.len() {
            for j in i..t.len() {
                prop_assert!((dl_arc(&arc, i, j).unwrap() - dur_interval_union(&u, t[i], t[j]).unwrap()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn collapse_matches_exhaustive_chains(arc in common::tagged_arc(9)) {
        let (c, map) = collapse_step_with_map(&arc);
        c.validate().unwrap();
        prop_assert_eq!(c.segments().len(), arc.segments().iter().filter(|t| !t.is_rectifiable()).count());
        prop_assert!(c.params().windows(2).all(|w| w[0] < w[1]));
        for a in 0..arc.len() {
            for b in a..arc.len() {
                let got = c.d(map[a], map[b]);
                prop_assert!((got - brute_chain(&arc, a, b)).abs() <= 1e-12);
                prop_assert!(got <= arc.d(a, b) + 1e-12);
            }
        }
    }

    #[test]
    fn hierarchy_and_monotone_traces(arc in common::tagged_arc(9)) {
        let trace = iterate_collapse(&arc, 10);
        prop_assert!(trace.stabilized_at.is_some());
        for a in 0..arc.len() {
            for b in (a + 1)..arc.len() {
                let mut prev = arc.d(a, b);
                for s in 1..trace.stages.len() {
                    let cur = trace.pair_distance(s, a, b);
                    prop_assert!(cur <= prev + 1e-12);
                    prev = cur;
                }
                prop_assert!(dl_arc(&arc, a, b).unwrap() <= prev + 1e-12);
            }
        }
    }

    #[test]
    fn dl_matches_exhaustive_covers(arc in common::tagged_arc(9), ends in (0usize..9, 0usize..9)) {
        let n = arc.len();
        let (i, j) = ((ends.0 % n).min(ends.1 % n), (ends.0 % n).max(ends.1 % n));
        let fat: Vec<bool> = arc.segments().iter().map(|t| *t == Tag::Fat).collect();
        prop_assert!((dl_arc(&arc, i, j).unwrap() - common::brute_arc_cover(&arc, i, j, &fat)).abs() <= 1e-12);
        prop_assert_eq!(dl_arc(&arc, i, j).unwrap(), dl_arc(&arc, j, i).unwrap());
    }

    #[test]
    fn path_trees_agree_with_arcs(arc in common::tagged_arc(8)) {
        let edges = (0..arc.len() - 1).map(|i| TreeEdge { from: i, to: i + 1, tag: arc.segments()[i] }).collect();
        let tree = ModelTree::new(arc.rows(), edges).unwrap();
        let r = dl_tree(&tree, 0, arc.len() - 1).unwrap();
        prop_assert!((r.value - dl_arc(&arc, 0, arc.len() - 1).unwrap()).abs() <= 1e-12);
        prop_assert!(r.retraction_quotient <= 1.0 + 1e-12);
    }

    #[test]
    fn finite_dur_is_the_metric(s in common::space(1, 8)) {
        for x in 0..s.len() {
            for y in 0..s.len() {
                prop_assert!((finite_dur(&s, x, y).unwrap() - s.d(x, y)).abs() <= 1e-12);
            }
        }
    }
}
