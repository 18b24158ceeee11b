mod common;

use proptest::prelude::*;
use rectiflat_core::metric::{
    eps_net, hausdorff_distance, kuratowski_embed, neighborhood, snowflake, validate_metric, FiniteMetricSpace,
    Norm, PointSubset, Violation,
};
use rectiflat_core::Error;

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

#[test]
fn valid_matrix_has_no_violations() {
    let rows = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]];
    assert!(validate_metric(&rows).unwrap().is_valid());
}

#[test]
fn triangle_violation_names_witnesses() {
    let rows = vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
    let report = validate_metric(&rows).unwrap();
    assert_eq!(
        report.violations,
        vec![Violation::Triangle { i: 0, j: 1, k: 2, direct: 3.0, via: 2.0 }]
    );
}

#[test]
fn each_axiom_is_reported() {
    let rows = vec![vec![0.5, 1.0], vec![2.0, 0.0]];
    let v = validate_metric(&rows).unwrap().violations;
    assert!(v.iter().any(|v| matches!(v, Violation::NonzeroDiagonal { i: 0, .. })));
    assert!(v.iter().any(|v| matches!(v, Violation::Asymmetric { .. })));
    let rows = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
    assert!(validate_metric(&rows).unwrap().violations.iter().any(|v| matches!(v, Violation::NonPositive { .. })));
}

#[test]
fn malformed_matrices_are_structural_errors() {
    assert!(matches!(validate_metric(&[]), Err(Error::Structural(_))));
    assert!(matches!(validate_metric(&[vec![0.0, 1.0]]), Err(Error::Structural(_))));
    assert!(matches!(validate_metric(&[vec![f64::NAN]]), Err(Error::Structural(_))));
}

#[test]
fn constructor_refuses_non_metrics_but_pseudometric_accepts() {
    let rows = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
    assert!(matches!(FiniteMetricSpace::new(ids(2), rows.clone(), 0), Err(Error::Precondition(_))));
    let s = FiniteMetricSpace::new_pseudometric(ids(2), rows, 1).unwrap();
    assert_eq!(s.base(), 1);
    assert_eq!(s.index_of("p1"), Some(1));
}

#[test]
fn coordinates_and_reals() {
    let s = FiniteMetricSpace::from_coords(&[vec![0.0, 0.0], vec![3.0, 4.0]], Norm::Euclidean).unwrap();
    assert_eq!(s.d(0, 1), 5.0);
    let s = FiniteMetricSpace::from_coords(&[vec![0.0, 0.0], vec![3.0, 4.0]], Norm::Max).unwrap();
    assert_eq!(s.d(0, 1), 4.0);
    let s = FiniteMetricSpace::from_reals(&[0.0, 0.25, 1.0]).unwrap();
    assert_eq!(s.diam(), 1.0);
    assert_eq!(s.min_distance(), Some(0.25));
    assert_eq!(s.diam_of(&[0, 1]), 0.25);
    assert_eq!(s.dist_to(2, &[0, 1]), 0.75);
}

#[test]
fn snowflake_of_cantor_gaps() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 1.0 / 9.0, 1.0]).unwrap();
    let t = snowflake(&s, 0.5).unwrap();
    assert!((t.d(0, 1) - 1.0 / 3.0).abs() < 1e-15);
    assert!(snowflake(&s, 1.5).is_err());
}

#[test]
fn neighborhoods_and_hausdorff_distance() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 0.1, 0.2, 0.5, 1.0]).unwrap();
    let a = PointSubset::new(&s, vec![0]).unwrap();
    assert_eq!(neighborhood(&s, &a, 0.2).unwrap().members(), &[0, 1, 2]);
    let b = PointSubset::new(&s, vec![3, 4]).unwrap();
    assert_eq!(hausdorff_distance(&s, &a, &b).unwrap(), 1.0);
    assert_eq!(hausdorff_distance(&s, &a, &a).unwrap(), 0.0);
}

#[test]
fn subsets_are_sorted_and_checked() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 1.0, 2.0]).unwrap();
    let p = PointSubset::new(&s, vec![2, 0, 2]).unwrap();
    assert_eq!(p.members(), &[0, 2]);
    assert!(PointSubset::new(&s, vec![3]).is_err());
    assert!(p.is_subset(&PointSubset::all(&s)));
}

fn brute_hausdorff(s: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> f64 {
    let directed = |x: &[usize], y: &[usize]| {
        x.iter()
            .map(|&i| y.iter().map(|&j| s.d(i, j)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

proptest! {
    #[test]
    fn random_spaces_validate(s in common::space(1, 9)) {
        prop_assert!(s.validate().is_valid());
    }

    #[test]
    fn snowflakes_stay_metric(s in common::space(2, 8), alpha in 0.1f64..=1.0) {
        let t = snowflake(&s, alpha).unwrap();
        prop_assert!(t.validate().is_valid());
    }

    #[test]
    fn kuratowski_is_isometric(s in common::space(1, 8)) {
        let e = kuratowski_embed(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                prop_assert!((e.distance(i, j) - s.d(i, j)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn hausdorff_matches_brute_force(s in common::space(2, 8), ma in 1u32..255, mb in 1u32..255) {
        let pick = |m: u32| -> Vec<usize> {
            let v: Vec<usize> = (0..s.len()).filter(|i| m >> i & 1 == 1).collect();
            if v.is_empty() { vec![0] } else { v }
        };
        let (a, b) = (pick(ma), pick(mb));
        let pa = PointSubset::new(&s, a.clone()).unwrap();
        let pb = PointSubset::new(&s, b.clone()).unwrap();
        prop_assert_eq!(hausdorff_distance(&s, &pa, &pb).unwrap(), brute_hausdorff(&s, &a, &b));
    }

    #[test]
    fn eps_nets_cover_and_separate(s in common::space(1, 9), frac in 0.05f64..1.0) {
        let eps = frac * s.diam().max(1e-9);
        let net = eps_net(&s, eps).unwrap();
        for x in 0..s.len() {
            prop_assert!(s.dist_to(x, net.members()) <= eps);
        }
        for (k, &a) in net.members().iter().enumerate() {
            for &b in &net.members()[k + 1..] {
                prop_assert!(s.d(a, b) > eps);
            }
        }
    }
}
