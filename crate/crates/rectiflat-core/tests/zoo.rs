use rectiflat_core::lipschitz::{lip_norm, ScalarField};
use rectiflat_core::math::cantor_dimension;
use rectiflat_core::zoo::*;

#[test]
fn cantor_union_counts_and_lengths() {
    for k in 0..=8u32 {
        let u = cantor_interval_union(k).unwrap();
        assert_eq!(u.len(), 1 << k);
        assert!((u.total_length() - (2.0f64 / 3.0).powi(k as i32)).abs() < 1e-12);
        assert_eq!(u.hull(), (0.0, 1.0));
    }
    assert!(cantor_interval_union(MAX_CANTOR_LEVEL + 1).is_err());
}

#[test]
fn level_two_intervals() {
    let u = cantor_interval_union(2).unwrap();
    let expected = [(0.0, 1.0), (2.0, 3.0), (6.0, 7.0), (8.0, 9.0)];
    for (c, e) in u.intervals().iter().zip(expected) {
        assert_eq!(*c, (e.0 / 9.0, e.1 / 9.0));
    }
}

#[test]
fn endpoint_samples() {
    let s = cantor_endpoint_sample(3).unwrap();
    assert_eq!(s.len(), 16);
    assert_eq!(s.base(), 0);
    let t = snowflake_cantor_sample(5).unwrap();
    assert_eq!(t.len(), 64);
    assert!((t.diam() - 1.0).abs() < 1e-15);
    assert!((t.min_distance().unwrap() - 1.0 / 32.0).abs() < 1e-12);
}

#[test]
fn beta_is_log3_of_2() {
    let beta = cantor_dimension();
    assert!((3f64.powf(beta) - 2.0).abs() < 1e-15);
    for k in 1..=10 {
        assert!(((3f64).powi(-k).powf(beta) - 2f64.powi(-k)).abs() < 1e-12);
    }
}

#[test]
fn staircase_values() {
    assert_eq!(cantor_staircase(0.0).unwrap(), 0.0);
    assert_eq!(cantor_staircase(1.0).unwrap(), 1.0);
    assert_eq!(cantor_staircase(0.5).unwrap(), 0.5);
    assert!((cantor_staircase(0.25).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((cantor_staircase(0.75).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!((cantor_staircase(1.0 / 9.0 + 1e-3).unwrap() - 0.25).abs() < 1e-12);
    assert!(cantor_staircase(1.5).is_err());
}

#[test]
fn staircase_is_beta_holder_on_the_snowflaked_sample() {
    let s = snowflake_cantor_sample(6).unwrap();
    let xs = cantor_endpoint_sample(6).unwrap();
    let values: Vec<f64> = (0..xs.len()).map(|i| cantor_staircase(xs.d(0, i)).unwrap()).collect();
    let f = ScalarField::new(&s, values).unwrap();
    assert!(lip_norm(&s, &f) <= 1.0 + 1e-9);
}

#[test]
fn filled_arc_is_bounded_turning() {
    for k in 0..=6 {
        let arc = filled_cantor_arc(k).unwrap();
        assert_eq!(arc.len(), 2 << k);
        arc.validate().unwrap();
        assert!((arc.endpoint_distance() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn topologist_sine() {
    let s = topologist_sine_sample(10).unwrap();
    assert_eq!(s.len(), 12);
    assert_eq!(s.d(0, 1), 1.0);
    let poly = topologist_sine_polyline(4, 8);
    assert_eq!(poly.len(), 3 * 8 + 1);
    assert!(poly.windows(2).all(|w| w[1][0] < w[0][0]));
}

#[test]
fn unit_interval() {
    let s = unit_interval_sample(64).unwrap();
    assert_eq!(s.len(), 65);
    assert_eq!(s.d(0, 64), 1.0);
    assert_eq!(unit_interval_sample(0).unwrap().len(), 1);
}
