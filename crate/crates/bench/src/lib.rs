//! Inputs shared by the benchmarks.

use chainpoly_core::chain::koch;
use chainpoly_core::{Formula, TriPolynomial};

/// `T` of `K_s`, a realistic input for the combination rules.
pub fn koch_poly<C: chainpoly_core::tripoly::Coefficient>(s: u32) -> TriPolynomial<C> {
    chainpoly_core::tripoly::tri_poly::<C>(&koch_chain(s))
        .unwrap()
        .upper
}

pub fn koch_chain(s: u32) -> Formula {
    koch(s).unwrap()
}
