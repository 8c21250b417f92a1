use cobcalc::chow::{
    alpha, cf_chern, cf_series, newton_class, tangent_bundle, CfSeries, ChowClass, ProjProduct,
    VirtualBundle,
};
use cobcalc::valuation::multinomial;
use cobcalc::Partition;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Products of projective spaces (as non-increasing dimension lists) with
/// total dimension between 1 and `max`.
fn products(max: u32) -> Vec<Vec<u32>> {
    (1..=max)
        .flat_map(|n| cobcalc::partition::enumerate(n, cobcalc::partition::Predicate::All))
        .map(|p| p.parts().to_vec())
        .collect()
}

#[test]
fn top_power_of_alpha_is_multinomial() {
    for dims in products(14) {
        let x = ProjProduct::new(dims.clone()).unwrap();
        let n = x.total_dim();
        let parts: Vec<u64> = dims.iter().map(|&d| u64::from(d)).collect();
        let expected = BigInt::from(multinomial(n, &parts).unwrap());
        let a = alpha(&x);
        let mut power = ChowClass::one(&x);
        for _ in 0..n {
            power = power.mul(&a).unwrap();
        }
        assert_eq!(power, a.pow(n as u32), "{x}");
        assert_eq!(power.deg(), expected, "{x}");
    }
}

#[test]
fn newton_classes_vanish_on_decomposables() {
    for dims in products(10) {
        if dims.len() < 2 {
            continue;
        }
        let x = ProjProduct::new(dims).unwrap();
        let n = x.total_dim() as u32;
        assert!(
            newton_class(&tangent_bundle(&x), n).unwrap().deg() == BigInt::from(0),
            "{x}"
        );
    }
}

#[test]
fn newton_class_of_projective_space_is_nonzero() {
    // s_n(ℙ^n) = n + 1
    for n in 1..8 {
        let x = ProjProduct::new(vec![n]).unwrap();
        assert_eq!(
            newton_class(&tangent_bundle(&x), n).unwrap().deg(),
            BigInt::from(n + 1)
        );
    }
}

#[test]
fn newton_class_matches_single_part_conner_floyd() {
    let x = ProjProduct::new(vec![2, 3, 1]).unwrap();
    let mut v = tangent_bundle(&x);
    v.push(-1, vec![1, -2, 1]).unwrap();
    v.push(1, vec![0, 1, 3]).unwrap();
    for n in 1..=6 {
        assert_eq!(
            newton_class(&v, n).unwrap(),
            cf_chern(&v, &Partition::single(n)).unwrap(),
            "n={n}"
        );
    }
}

fn space() -> impl Strategy<Value = ProjProduct> {
    prop::collection::vec(1u32..4, 1..4).prop_map(|d| ProjProduct::new(d).unwrap())
}

fn bundle(x: ProjProduct) -> impl Strategy<Value = VirtualBundle> {
    let m = x.factors();
    prop::collection::vec((prop::bool::ANY, prop::collection::vec(-2i64..=2, m)), 0..4).prop_map(
        move |terms| {
            let mut v = VirtualBundle::zero(&x);
            for (positive, twist) in terms {
                v.push(if positive { 1 } else { -1 }, twist).unwrap();
            }
            v
        },
    )
}

fn two_bundles() -> impl Strategy<Value = (VirtualBundle, VirtualBundle)> {
    space().prop_flat_map(|x| (bundle(x.clone()), bundle(x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_classes_are_additive((v, w) in two_bundles(), n in 1u32..6) {
        let sum = newton_class(&v.concat(&w).unwrap(), n).unwrap();
        let parts = newton_class(&v, n).unwrap().add(&newton_class(&w, n).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn conner_floyd_is_multiplicative((v, w) in two_bundles()) {
        let whole = cf_series(&v.concat(&w).unwrap(), 4).unwrap();
        let product = cf_series(&v, 4).unwrap().mul(&cf_series(&w, 4).unwrap()).unwrap();
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn conner_floyd_of_negative_is_inverse((v, _) in two_bundles()) {
        let x = v.ambient().clone();
        let product = cf_series(&v, 4).unwrap().mul(&cf_series(&v.negate(), 4).unwrap()).unwrap();
        prop_assert_eq!(product, CfSeries::one(&x, 4));
    }

    #[test]
    fn truncation_respects_dimensions(x in space(), n in 0u32..8) {
        let a = alpha(&x).pow(n);
        for exps in a.terms().keys() {
            prop_assert!(exps.iter().zip(x.dims()).all(|(e, d)| e <= d));
        }
        prop_assert_eq!(a.is_zero(), u64::from(n) > x.total_dim());
    }
}

#[test]
fn ambient_mismatch_is_an_error() {
    let a = ProjProduct::new(vec![1]).unwrap();
    let b = ProjProduct::new(vec![2]).unwrap();
    assert!(ChowClass::one(&a).mul(&ChowClass::one(&b)).is_err());
    assert!(VirtualBundle::zero(&a)
        .concat(&VirtualBundle::zero(&b))
        .is_err());
}
