use knot_detect_core::diagram::{dt_to_pd, parse_dt, parse_pd, serialize_pd};
use knot_detect_core::invariants::jones;
use knot_detect_core::tangle::{
    find_tangle_regions, mutate, parse_tangle, tangle_fraction, SquareSymmetry, TangleExpr, TangleRegion,
};
use knot_detect_core::{LaurentPoly1, LaurentPoly2, LinkDiagram};
use proptest::prelude::*;

fn poly1() -> impl Strategy<Value = LaurentPoly1> {
    prop::collection::vec((-6i64..6, -20i64..20), 0..6).prop_map(|t| LaurentPoly1::from_terms('q', t))
}

fn poly2() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec(((-4i64..4, -4i64..4), -9i64..9), 0..5).prop_map(|t| LaurentPoly2::from_terms(('a', 'z'), t))
}

const KNOTS: &[&str] = &[
    "4 6 2",
    "4 6 8 2",
    "6 8 10 2 4",
    "4 8 10 2 6",
    "4 8 -12 2 -14 -6 -10",
    "4 10 -14 -12 2 -8 -6",
    "6 10 12 14 2 4 8",
    "4 8 12 2 -16 -18 6 -20 -22 -14 -10",
];

fn knot() -> impl Strategy<Value = LinkDiagram> {
    (0..KNOTS.len(), any::<bool>()).prop_map(|(i, m)| {
        let d = dt_to_pd(&parse_dt(KNOTS[i]).unwrap()).unwrap();
        if m {
            d.mirror()
        } else {
            d
        }
    })
}

fn rational() -> impl Strategy<Value = TangleExpr> {
    let leaf = (1i64..4, any::<bool>()).prop_map(|(n, neg)| TangleExpr::Twist(if neg { -n } else { n }));
    leaf.prop_recursive(4, 12, 1, |inner| {
        (inner, 1i64..3, any::<bool>(), any::<bool>()).prop_map(|(e, n, neg, horizontal)| {
            let n = if neg { -n } else { n };
            if horizontal {
                e.horizontal(TangleExpr::Twist(n))
            } else {
                e.vertical(TangleExpr::VerticalTwist(n))
            }
        })
    })
}

proptest! {
    #[test]
    fn laurent1_ring_axioms(a in poly1(), b in poly1(), c in poly1()) {
        let add = |x: &LaurentPoly1, y: &LaurentPoly1| x.try_add(y).unwrap();
        let mul = |x: &LaurentPoly1, y: &LaurentPoly1| x.try_mul(y).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(mul(&a, &LaurentPoly1::one('q')), a.clone());
        prop_assert_eq!(a.canonical_string() == b.canonical_string(), a == b);
    }

    #[test]
    fn laurent2_ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        let add = |x: &LaurentPoly2, y: &LaurentPoly2| x.try_add(y).unwrap();
        let mul = |x: &LaurentPoly2, y: &LaurentPoly2| x.try_mul(y).unwrap();
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.canonical_string() == b.canonical_string(), a == b);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly1(), b in poly1()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.try_mul(&b).unwrap().div_exact(&b), Some(a));
    }

    #[test]
    fn diagram_involutions(d in knot()) {
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(d.reverse().reverse().canonical_key(), d.canonical_key());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
        let (p, n) = d.sign_counts();
        prop_assert_eq!(p as i64 - n as i64, d.writhe());
        let parsed = parse_pd(&serialize_pd(&d)).unwrap();
        prop_assert_eq!(parsed.crossings(), d.crossings());
        prop_assert_eq!(d.relabeled_from(1).unwrap().canonical_key(), d.canonical_key());
    }

    #[test]
    fn mutation_is_an_involution(d in knot(), pick in any::<prop::sample::Index>(), s in 0usize..4) {
        let regions = find_tangle_regions(&d, 4);
        prop_assume!(!regions.is_empty());
        let r = &regions[pick.index(regions.len())];
        let s = SquareSymmetry::ALL[s];
        let m = mutate(&d, r, s).unwrap();
        prop_assert_eq!(m.n_crossings(), d.n_crossings());
        prop_assert_eq!(m.n_components(), d.n_components());
        prop_assert_eq!(m.is_alternating(), d.is_alternating());
        prop_assert_eq!(jones(&m).unwrap(), jones(&d).unwrap());
        let back = mutate(&m, &TangleRegion::from_crossings(&m, r.crossings()).unwrap(), s).unwrap();
        prop_assert_eq!(back.canonical_key(), d.canonical_key());
    }

    #[test]
    fn tangle_text_round_trip(e in rational()) {
        prop_assert_eq!(parse_tangle(&e.to_string()).unwrap(), e.clone());
        prop_assert!(tangle_fraction(&e).is_ok());
    }

    #[test]
    fn integer_summands_commute(e in rational(), n in -3i64..4) {
        let left = TangleExpr::Twist(n).horizontal(e.clone());
        let right = e.horizontal(TangleExpr::Twist(n));
        prop_assert_eq!(tangle_fraction(&left).unwrap(), tangle_fraction(&right).unwrap());
    }
}
