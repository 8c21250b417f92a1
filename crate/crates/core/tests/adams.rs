use cobcalc::adams::{
    decomposition_check, e2_dimension, e2_rank, e2_rank_by_generators, ext_generators, mgl_rank,
    mgl_rank_by_enumeration, milnor_series, milnor_series_by_product, vanishing_check, E2Dim,
};
use cobcalc::partition::{enumerate, Predicate};
use num_bigint::BigUint;

#[test]
fn decomposition_holds_to_weight_60() {
    for l in [3u64, 5] {
        let rows = decomposition_check(60, l).unwrap();
        assert_eq!(rows.len(), 31);
        for row in rows {
            assert!(
                row.equal,
                "w={} l={l}: {} vs {}",
                row.weight, row.lhs, row.rhs
            );
        }
    }
}

#[test]
fn milnor_series_two_ways() {
    for l in [3u64, 5, 7] {
        assert_eq!(
            milnor_series(80, l).unwrap(),
            milnor_series_by_product(80, l).unwrap()
        );
    }
}

#[test]
fn ranks_two_ways() {
    for d in 1..=30u64 {
        let p = BigUint::from(enumerate(d as u32, Predicate::All).len());
        assert_eq!(e2_rank(d).unwrap(), p, "d={d}");
        assert_eq!(mgl_rank(d).unwrap(), p);
        assert_eq!(mgl_rank_by_enumeration(d).unwrap(), p);
        for l in [3u64, 5, 7] {
            assert_eq!(e2_rank_by_generators(d, l).unwrap(), p, "d={d} l={l}");
        }
    }
}

#[test]
fn hand_counted_even_non_adic() {
    assert_eq!(
        enumerate(8, Predicate::EvenNonLadic(3)),
        vec![cobcalc::Partition::new(vec![4, 4]).unwrap()]
    );
}

#[test]
fn high_filtration_on_the_line_recovers_the_rank() {
    // every generator has t = 2u; once s exceeds the number of h' factors
    // any monomial can carry, the count stabilises at the full rank
    for l in [3u64, 5] {
        for d in 1..=12i64 {
            let u = -2 * d;
            let want = E2Dim::Known(e2_rank(d as u64).unwrap());
            assert_eq!(
                e2_dimension(2 * d, 2 * u, u, l).unwrap(),
                want,
                "d={d} l={l}"
            );
            assert_eq!(e2_dimension(2 * d + 5, 2 * u, u, l).unwrap(), want);
            assert_eq!(
                e2_dimension(0, 2 * u - 1, u, l).unwrap(),
                E2Dim::FieldDependent
            );
            assert!(vanishing_check(0, 2 * u + 1, u, l).unwrap());
        }
    }
}

#[test]
fn generators_lie_on_the_line() {
    for l in [3u64, 5, 7] {
        for (name, deg) in ext_generators(l, -60).unwrap() {
            assert_eq!(deg.t, 2 * deg.u, "{name}");
        }
    }
}
