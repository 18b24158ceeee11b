mod common;

use proptest::prelude::*;
use rectiflat_core::lipschitz::*;
use rectiflat_core::metric::{FiniteMetricSpace, PointSubset};
use rectiflat_core::zoo::unit_interval_sample;
use rectiflat_core::Error;

fn brute_lip(s: &FiniteMetricSpace, f: &[f64]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..s.len() {
        for j in 0..s.len() {
            if i != j {
                m = m.max((f[i] - f[j]).abs() / s.d(i, j));
            }
        }
    }
    m
}

fn field(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
}

fn space_and_field() -> impl Strategy<Value = (FiniteMetricSpace, Vec<f64>)> {
    common::space(1, 9).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), field(n))
    })
}

#[test]
fn norms_and_quotients() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 1.0, 3.0]).unwrap();
    let f = ScalarField::new(&s, vec![0.0, 2.0, 3.0]).unwrap();
    assert_eq!(lip_norm(&s, &f), 2.0);
    let q = de_leeuw(&s, &f);
    assert_eq!(q.get(1, 0), Some(2.0));
    assert_eq!(q.get(0, 1), Some(-2.0));
    assert_eq!(q.get(2, 2), None);
    assert_eq!(q.sup_abs(), 2.0);
    assert_eq!(q.entries().count(), 6);
    assert!(matches!(ScalarField::new(&s, vec![0.0]), Err(Error::Structural(_))));
    assert_eq!(lip_norm(&s, &ScalarField::constant(&s, 4.0)), 0.0);
    assert_eq!(lip_norm(&s, &ScalarField::distance_to(&s, 1)), 1.0);
}

#[test]
fn mcshane_examples() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 1.0, 2.0, 4.0]).unwrap();
    let sub = PointSubset::new(&s, vec![0, 3]).unwrap();
    let f = mcshane_extend(&s, &sub, &[0.0, 1.0], 1.0).unwrap();
    assert_eq!(f.values(), &[0.0, 1.0, 2.0, 1.0]);
    let err = mcshane_extend(&s, &sub, &[0.0, 5.0], 1.0).unwrap_err();
    assert!(matches!(err, Error::Precondition(ref m) if m.contains("0") && m.contains("3")));
    assert!(matches!(mcshane_extend(&s, &sub, &[0.0], 1.0), Err(Error::Structural(_))));
}

#[test]
fn flatness_profile_examples() {
    let s = unit_interval_sample(4).unwrap();
    let f = ScalarField::new(&s, vec![0.0, 0.25, 0.25, 0.5, 1.0]).unwrap();
    let p = flatness_modulus(&s, &f, &[0.25, 1.0, 0.5, 0.1]).unwrap();
    assert_eq!(p.radii, vec![1.0, 0.5, 0.25, 0.1]);
    assert_eq!(p.omega, vec![2.0, 2.0, 2.0, 0.0]);
    assert_eq!(p.at(0.3), 2.0);
    assert_eq!(p.at(0.05), 0.0);
    assert!(flatness_modulus(&s, &f, &[0.0]).is_err());
}

#[test]
fn separation_examples() {
    let s = FiniteMetricSpace::from_reals(&[0.0, 1.0, 3.0]).unwrap();
    let family: Vec<ScalarField> = (0..3).map(|p| ScalarField::distance_to(&s, p)).collect();
    let r = separation_report(&s, &family);
    assert!((r.constant - 1.0).abs() < 1e-15);
    assert_eq!(r.scores.len(), 3);
    assert_eq!(separation_report(&s, &[]).constant, f64::INFINITY);
    assert_eq!(separation_report(&s, &[ScalarField::constant(&s, 1.0)]).constant, f64::INFINITY);
    let one = FiniteMetricSpace::from_reals(&[0.0]).unwrap();
    assert_eq!(separation_report(&one, &[ScalarField::constant(&one, 0.0)]).constant, 0.0);
}

#[test]
fn image_measure() {
    let ramp: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
    assert!((image_null_estimate(&ramp, 4).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(image_null_estimate(&[0.5; 9], 2).unwrap(), 0.0);
    assert_eq!(image_null_estimate(&[0.5], 2).unwrap(), 0.0);
    assert!(image_null_estimate(&[], 2).is_err());
    assert!(image_null_estimate(&ramp, 0).is_err());
}

proptest! {
    #[test]
    fn lip_norm_matches_brute_force((s, f) in space_and_field()) {
        let g = ScalarField::new(&s, f.clone()).unwrap();
        prop_assert!((lip_norm(&s, &g) - brute_lip(&s, &f)).abs() <= 1e-12 * brute_lip(&s, &f).max(1.0));
        prop_assert!((de_leeuw(&s, &g).sup_abs() - lip_norm(&s, &g)).abs() <= 1e-12);
    }

    #[test]
    fn mcshane_extends_maximally((s, f) in space_and_field(), mask in 1u32..512) {
        let mask = mask | 1 << (mask as usize % s.len());
        let members: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).collect();
        let sub = PointSubset::new(&s, members.clone()).unwrap();
        let l = brute_lip(&s, &f).max(0.1);
        let vals: Vec<f64> = members.iter().map(|&i| f[i]).collect();
        let ext = mcshane_extend(&s, &sub, &vals, l).unwrap();
        for (k, &i) in members.iter().enumerate() {
            prop_assert_eq!(ext.values()[i], vals[k]);
        }
        prop_assert!(lip_norm(&s, &ext) <= l * (1.0 + 1e-12) + 1e-12);
        let lower: Vec<f64> = (0..s.len())
            .map(|x| members.iter().zip(&vals).map(|(&y, v)| v - l * s.d(x, y)).fold(f64::NEG_INFINITY, f64::max))
            .collect();
        for x in 0..s.len() {
            prop_assert!(ext.values()[x] >= lower[x] - 1e-12);
            prop_assert!(ext.values()[x] >= f[x] - 1e-12 || !members.contains(&x));
        }
    }

    #[test]
    fn lattice_operations_keep_the_bound((s, f) in space_and_field(), shift in -1.0f64..1.0) {
        let a = ScalarField::new(&s, f.clone()).unwrap();
        let b = ScalarField::new(&s, f.iter().rev().map(|v| v + shift).collect()).unwrap();
        let bound = lip_norm(&s, &a).max(lip_norm(&s, &b));
        prop_assert!(lip_norm(&s, &lattice_join(&a, &b)) <= bound * (1.0 + 1e-12) + 1e-12);
        prop_assert!(lip_norm(&s, &lattice_meet(&a, &b)) <= bound * (1.0 + 1e-12) + 1e-12);
        let c = a.combine(2.0, &b, -1.0);
        prop_assert!(lip_norm(&s, &c) <= 2.0 * lip_norm(&s, &a) + lip_norm(&s, &b) + 1e-12);
    }

    #[test]
    fn flatness_matches_brute_force((s, f) in space_and_field(), r in 0.01f64..1.5) {
        let g = ScalarField::new(&s, f.clone()).unwrap();
        let p = flatness_modulus(&s, &g, &[r]).unwrap();
        let mut m = 0.0f64;
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i != j && s.d(i, j) <= r {
                    m = m.max((f[i] - f[j]).abs() / s.d(i, j));
                }
            }
        }
        prop_assert!((p.omega[0] - m).abs() <= 1e-12);
    }
}
