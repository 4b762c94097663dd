use chainpoly_core::asymptotics::{GrowthReport, GrowthSums};
use chainpoly_core::chain::{cave, enumerate_chains, koch, poly, prim, vee, vex};
use chainpoly_core::tripoly::{closed_form_cave_vee_cave, tri_poly};
use chainpoly_core::{ExtNum, TriPolynomial};
use num_bigint::BigUint;

#[test]
fn convex_sum_with_concave_chain_expands_termwise() {
    for n1 in 1..=8 {
        for c1 in enumerate_chains(n1).unwrap() {
            let t1 = tri_poly::<BigUint>(&c1).unwrap().upper;
            for m in 1..=8 {
                let got = tri_poly::<BigUint>(&vee(&c1, &cave(m).unwrap()))
                    .unwrap()
                    .upper;
                let mut want = vec![BigUint::from(0u32); n1 + m];
                for (k, tk) in t1.coeffs().iter().enumerate() {
                    for (d, c) in closed_form_cave_vee_cave(n1 - k, m)
                        .coeffs()
                        .iter()
                        .enumerate()
                    {
                        want[k + d] += tk * c;
                    }
                }
                assert_eq!(got, TriPolynomial::new(want), "{c1} with cave({m})");
            }
        }
    }
}

#[test]
fn flipping_swaps_upper_and_lower() {
    for n in 1..=8 {
        for f in enumerate_chains(n).unwrap() {
            let a = tri_poly::<BigUint>(&f).unwrap();
            let b = tri_poly::<BigUint>(&f.flip()).unwrap();
            assert_eq!(a.upper, b.lower, "{f}");
            assert_eq!(a.lower, b.upper, "{f}");
        }
    }
}

#[test]
fn poly_chains_approach_lambda_from_below() {
    for c0 in [
        prim(),
        vex(2).unwrap(),
        koch(1).unwrap(),
        koch(2).unwrap(),
        koch(3).unwrap(),
    ] {
        let m = c0.edges();
        let pair = tri_poly::<BigUint>(&c0).unwrap();
        let lambda = GrowthReport::from_sums(&GrowthSums::from_pair(&pair).unwrap())
            .unwrap()
            .lambda;
        let mut prev = 0.0;
        for copies in 1..=10 {
            let u = tri_poly::<BigUint>(&poly(&c0, copies).unwrap())
                .unwrap()
                .upper
                .leading()
                .clone();
            let ratio = ExtNum::from_biguint(&u)
                .unwrap()
                .nth_root((m * copies) as u64)
                .unwrap()
                / lambda;
            assert!(ratio <= 1.0 + 1e-12, "{c0} x{copies}: {ratio}");
            assert!(
                ratio >= prev - 1e-12,
                "{c0} x{copies}: {ratio} after {prev}"
            );
            prev = ratio;
        }
        assert!(prev > 0.5, "{c0}: {prev}");
    }
}
