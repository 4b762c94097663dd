use chainpoly_core::chain::{formula_from_visibility, parse_formula, vee, visibility, wedge};
use chainpoly_core::tripoly::{tri_poly, vee_combine, wedge_combine};
use chainpoly_core::{ExtNum, Formula};
use num_bigint::BigUint;
use proptest::prelude::*;

fn formula(max_depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = Just(Formula::prim());
    leaf.prop_recursive(max_depth, 48, 3, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, convex)| {
            if convex {
                vee(&a, &b)
            } else {
                wedge(&a, &b)
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn display_parses_back(f in formula(6)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn visibility_identifies_the_formula(f in formula(6)) {
        let v = visibility(&f).unwrap();
        prop_assert_eq!(formula_from_visibility(&v).unwrap(), f.clone());
        prop_assert_eq!(visibility(&f.flip()).unwrap(), v.negated());
    }

    #[test]
    fn sums_follow_the_combination_rules(a in formula(5), b in formula(5)) {
        let ta = tri_poly::<BigUint>(&a).unwrap().upper;
        let tb = tri_poly::<BigUint>(&b).unwrap().upper;
        let v = tri_poly::<BigUint>(&vee(&a, &b)).unwrap().upper;
        let w = tri_poly::<BigUint>(&wedge(&a, &b)).unwrap().upper;
        prop_assert_eq!(&v, &vee_combine(&ta, &tb).unwrap());
        prop_assert_eq!(&w, &wedge_combine(&ta, &tb).unwrap());
        for (x, y) in v.coeffs().iter().zip(w.coeffs()) {
            prop_assert!(x >= y);
        }
    }

    #[test]
    fn float_tracks_exact(f in formula(7)) {
        let exact = tri_poly::<BigUint>(&f).unwrap();
        let float = tri_poly::<ExtNum>(&f).unwrap();
        for (e, x) in exact.upper.coeffs().iter().zip(float.upper.coeffs()) {
            let e = ExtNum::from_biguint(e).unwrap();
            if e.is_zero() {
                prop_assert!(x.is_zero());
            } else {
                prop_assert!((x.ln() - e.ln()).abs() < 1e-13);
            }
        }
    }
}
