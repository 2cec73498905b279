use std::collections::BTreeMap;

use floer_core::novikov::{parse_series, RankOneModule};
use floer_core::{Exponent, Valuation, ZSeries};
use num::BigInt;
use proptest::prelude::*;

/// Dense oracle: exponent in quarters to coefficient.
type Dense = BTreeMap<i64, i64>;

fn to_series(d: &Dense) -> ZSeries {
    ZSeries::from_terms(d.iter().map(|(&e, &c)| (Exponent::ratio(e, 4), BigInt::from(c))).collect(), None)
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn dense_add(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn series() -> impl Strategy<Value = Dense> {
    prop::collection::btree_map(-8i64..24, -5i64..=5, 0..=8).prop_map(|mut m| {
        m.retain(|_, c| *c != 0);
        m
    })
}

fn unit_series() -> impl Strategy<Value = Dense> {
    (series(), -8i64..8, prop::bool::ANY).prop_map(|(mut d, v, neg)| {
        d.retain(|&e, _| e > v);
        d.insert(v, if neg { -1 } else { 1 });
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_matches_dense_oracle(a in series(), b in series()) {
        prop_assert_eq!(&to_series(&a) * &to_series(&b), to_series(&dense_mul(&a, &b)));
        prop_assert_eq!(&to_series(&a) + &to_series(&b), to_series(&dense_add(&a, &b)));
    }

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        let (x, y, z) = (to_series(&a), to_series(&b), to_series(&c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &ZSeries::one(), x.clone());
    }

    #[test]
    fn valuation_is_additive(a in series(), b in series()) {
        let (x, y) = (to_series(&a), to_series(&b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (Valuation::Finite(va), Valuation::Finite(vb)) = (x.valuation(), y.valuation()) else { unreachable!() };
        prop_assert_eq!((&x * &y).valuation(), Valuation::Finite(&va + &vb));
    }

    #[test]
    fn inversion_up_to_cutoff(a in unit_series(), cut in 1i64..40) {
        let x = to_series(&a);
        let cutoff = Exponent::ratio(cut, 4);
        let inv = x.invert(&cutoff).unwrap();
        let Valuation::Finite(v) = x.valuation() else { unreachable!() };
        let product = &x * &inv;
        prop_assert!(product.agrees_below(&ZSeries::one(), &(&cutoff - &v)), "{} * {} = {}", x, inv, product);
    }

    #[test]
    fn print_parse_round_trip(a in series(), cut in prop::option::of(24i64..40)) {
        let x = to_series(&a);
        let x = match cut {
            Some(c) => x.with_cutoff(Exponent::ratio(c, 4)),
            None => x,
        };
        let back: ZSeries = parse_series(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn flip_is_an_involution(e in -8i64..8, s in prop::bool::ANY) {
        let m = RankOneModule::new("g");
        let energy = Exponent::ratio(e, 4);
        prop_assert_eq!(m.flip().flip(), m.clone());
        prop_assert_eq!(
            m.flip().coefficient_value(&energy, s).value,
            m.coefficient_value(&energy, s).value.neg_series()
        );
        prop_assert_eq!(m.flip().coefficient_value(&energy, s).value, m.coefficient_value(&energy, !s).value);
    }
}

#[test]
fn non_unit_inversion_fails() {
    let x: ZSeries = "2 + t".parse().unwrap();
    assert!(x.invert(&Exponent::int(3)).is_err());
    assert!(ZSeries::zero().invert(&Exponent::int(3)).is_err());
}

#[test]
fn geometric_series() {
    let x: ZSeries = "1 - t".parse().unwrap();
    let inv = x.invert(&Exponent::int(4)).unwrap();
    assert_eq!(inv, "1 + t + t^2 + t^3 + O(t^4)".parse().unwrap());
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_series::<BigInt>("1 + t^").unwrap_err();
    assert_eq!(e.line, 1);
    assert!(e.column >= 6, "{e:?}");
}
