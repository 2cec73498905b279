use floer_core::strings::{ElementaryString, GradedClass, OpenString};
use proptest::prelude::*;

fn elementary() -> impl Strategy<Value = ElementaryString> {
    (0u8..4, 0u8..3, 0u8..3, -4i64..8).prop_map(|(id, a, b, mu)| ElementaryString::new(format!("x{id}"), format!("L{a}"), format!("L{b}"), mu))
}

fn string() -> impl Strategy<Value = OpenString> {
    (prop::collection::vec(elementary(), 0..6), -3i64..3).prop_map(|(f, shift)| {
        let mut s = OpenString::from_factors(f);
        s.shift = shift;
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dual_is_an_involution(s in string(), n in 1i64..6) {
        prop_assert_eq!(s.dual(n).dual(n), s);
    }

    #[test]
    fn index_plus_dual_index(s in string(), n in 1i64..6) {
        prop_assume!(s.cardinality() > 0);
        let q = s.cardinality() as i64;
        let unshifted = OpenString::from_factors(s.factors.clone());
        prop_assert_eq!(unshifted.mu() + unshifted.dual(n).mu(), n * q);
    }

    #[test]
    fn tensor_is_associative_with_unit(a in string(), b in string(), c in string()) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&OpenString::empty()), a.clone());
        prop_assert_eq!(OpenString::empty().tensor(&a), a.clone());
        prop_assert_eq!(a.tensor(&b).cardinality(), a.cardinality() + b.cardinality());
        prop_assert_eq!(a.tensor(&b).mu(), a.mu() + b.mu());
    }

    #[test]
    fn dual_reverses_tensor(a in string(), b in string(), n in 1i64..6) {
        prop_assume!(a.cardinality() > 0 && b.cardinality() > 0);
        prop_assert_eq!(a.tensor(&b).dual(n), b.dual(n).tensor(&a.dual(n)));
    }

    #[test]
    fn shifts_commute_with_tensor(a in string(), b in string(), e1 in -4i64..4, e2 in -4i64..4, m in 0u64..4) {
        // Shifts by e1 and e2 on the factors, and by e1 + e2 on the product,
        // agree in the quotient by shifts summing to zero.
        let left = a.shifted(e1, 0).tensor(&b.shifted(e2, 0));
        let right = a.tensor(&b).shifted(e1 + e2, 0);
        prop_assert!(left.equivalent(&right, m));
        let moved = a.shifted(e1, 0).tensor(&b.shifted(-e1, 0));
        prop_assert!(moved.equivalent(&a.tensor(&b), m));
    }

    #[test]
    fn grading_is_additive(a in string(), b in string(), m in 1u64..5) {
        let sum = a.grading(m).value + b.grading(m).value;
        prop_assert_eq!(a.tensor(&b).grading(m), GradedClass::new(sum, m));
    }
}

#[test]
fn empty_string() {
    let e = OpenString::empty();
    assert_eq!(e.mu(), 0);
    assert_eq!(e.cardinality(), 0);
    assert_eq!(e.dual(4).mu(), 4);
}
