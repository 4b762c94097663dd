//! Polynomial combination rules for concave and convex sums.
//!
//! Both rules run in `O(n1 * n2)` coefficient operations. Work is split
//! into fixed-size chunks whose partial sums are folded in a fixed order,
//! so floating results do not depend on how many threads run the chunks.

use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;

use super::{Coefficient, TriPolyError, TriPolynomial};
use crate::extnum::ExtNumError;

/// Chunk size for partial sums along a DP anti-diagonal.
const CHUNK: usize = 1024;
/// Below this many entries a diagonal or product is computed inline.
const PAR_THRESHOLD: usize = 4 * CHUNK;

/// `T_{C1 ∧ C2} = T_{C1} · T_{C2}`, padded to `n1 + n2` coefficients.
pub fn wedge_combine<C: Coefficient>(
    p1: &TriPolynomial<C>,
    p2: &TriPolynomial<C>,
) -> Result<TriPolynomial<C>, TriPolyError> {
    let mut out = product(p1.coeffs(), p2.coeffs())?;
    out.push(C::zero_value());
    Ok(TriPolynomial::new(out))
}

/// Full product of two coefficient vectors (length `n1 + n2 - 1`).
fn product<C: Coefficient>(a: &[C], b: &[C]) -> Result<Vec<C>, ExtNumError> {
    let (n1, n2) = (a.len(), b.len());
    let square = a == b;
    let term = |k: usize| -> Result<C, ExtNumError> {
        let lo = k.saturating_sub(n2 - 1);
        let hi = k.min(n1 - 1);
        if square {
            // c_k = 2 * Σ_{i < k-i} a_i a_{k-i} + [k even] a_{k/2}^2
            let mut acc = C::zero_value();
            for i in lo..=hi.min((k.saturating_sub(1)) / 2) {
                if i < k - i {
                    acc = acc.try_add(&a[i].try_mul(&a[k - i])?)?;
                }
            }
            acc = acc.try_add(&acc)?;
            if k.is_multiple_of(2) && k / 2 <= hi {
                acc = acc.try_add(&a[k / 2].try_mul(&a[k / 2])?)?;
            }
            Ok(acc)
        } else {
            let mut acc = C::zero_value();
            for i in lo..=hi {
                acc = acc.try_add(&a[i].try_mul(&b[k - i])?)?;
            }
            Ok(acc)
        }
    };
    let len = n1 + n2 - 1;
    if n1.min(n2) * len >= PAR_THRESHOLD * 16 {
        (0..len).into_par_iter().map(term).collect()
    } else {
        (0..len).map(term).collect()
    }
}

/// `T_{C1 ∨ C2}` from `T_{C1}` and `T_{C2}` via the bridge recurrence
///
/// `DP[l][r] = t_{n1-l-1}(C1) · t_{n2-r-1}(C2) + DP[l+1][r] + DP[l][r+1]`
///
/// where `DP[l][r]` counts partial upper triangulations whose visible curve
/// is `l` edges of `C1`, the bridge, then `r` edges of `C2`. Each entry
/// contributes to `x^(n1+n2-l-r-1)` on top of `T_{C1} · T_{C2}`.
///
/// The table is swept by anti-diagonals `l + r = d`, keeping only one
/// diagonal in memory. When both inputs are equal the table is symmetric
/// and only half of each diagonal is computed.
pub fn vee_combine<C: Coefficient>(
    p1: &TriPolynomial<C>,
    p2: &TriPolynomial<C>,
) -> Result<TriPolynomial<C>, TriPolyError> {
    let (n1, n2) = (p1.edges(), p2.edges());
    let mut out = wedge_combine(p1, p2)?.into_coeffs();
    let a: Vec<C> = p1.coeffs().iter().rev().cloned().collect();
    let b: Vec<C> = p2.coeffs().iter().rev().cloned().collect();
    let symmetric = a == b;

    // previous diagonal: entries for l in [prev_lo, prev_lo + prev.len())
    let mut prev: Vec<C> = Vec::with_capacity(n1);
    let mut cur: Vec<C> = Vec::with_capacity(n1);
    let mut prev_lo = 0usize;
    for d in (0..=n1 + n2 - 2).rev() {
        let lo = d.saturating_sub(n2 - 1);
        let hi = d.min(n1 - 1);
        // in the symmetric case only l <= d - l is computed, then mirrored
        let top = if symmetric { d / 2 } else { hi };
        let count = top + 1 - lo;
        let has_mid = symmetric && d % 2 == 0;
        let summed = if has_mid { count - 1 } else { count };
        cur.clear();
        cur.resize(hi + 1 - lo, C::zero_value());
        let diag = Diagonal {
            d,
            lo,
            summed_end: lo + summed,
            a: &a,
            b: &b,
            prev: &prev,
            prev_lo,
        };
        let head = &mut cur[..count];
        let partials: Vec<C> = if count >= PAR_THRESHOLD {
            head.par_chunks_mut(CHUNK)
                .enumerate()
                .map(|(i, ch)| diag.fill(ch, lo + i * CHUNK))
                .collect::<Result<_, _>>()?
        } else {
            head.chunks_mut(CHUNK)
                .enumerate()
                .map(|(i, ch)| diag.fill(ch, lo + i * CHUNK))
                .collect::<Result<_, _>>()?
        };
        let mut sum = fold(&partials)?;
        if symmetric {
            for l in top + 1..=hi {
                cur[l - lo] = cur[d - l - lo].clone();
            }
            // DP[l][r] = DP[r][l], so the off-middle part counts twice
            sum = sum.try_add(&sum)?;
            if has_mid {
                sum = sum.try_add(&cur[d / 2 - lo])?;
            }
        }
        let k = n1 + n2 - 1 - d;
        out[k] = out[k].try_add(&sum)?;
        std::mem::swap(&mut prev, &mut cur);
        prev_lo = lo;
    }
    Ok(TriPolynomial::new(out))
}

/// One anti-diagonal `l + r = d` of the bridge table.
struct Diagonal<'a, C> {
    d: usize,
    lo: usize,
    /// entries with `l` at or past this index are left out of the sum
    summed_end: usize,
    a: &'a [C],
    b: &'a [C],
    prev: &'a [C],
    prev_lo: usize,
}

impl<C: Coefficient> Diagonal<'_, C> {
    /// Fills entries `l0, l0 + 1, …` into `out` and returns their sum.
    fn fill(&self, out: &mut [C], l0: usize) -> Result<C, ExtNumError> {
        debug_assert!(l0 >= self.lo);
        let prev_end = self.prev_lo + self.prev.len();
        let mut acc = C::zero_value();
        for (i, slot) in out.iter_mut().enumerate() {
            let l = l0 + i;
            let mut v = self.a[l].try_mul(&self.b[self.d - l])?;
            // DP[l+1][r] sits at l+1, DP[l][r+1] at l on the previous diagonal;
            // adding the pair first keeps DP[l][r] == DP[r][l] bitwise
            let down = l + 1 < prev_end;
            let right = l >= self.prev_lo && l < prev_end;
            match (down, right) {
                (true, true) => {
                    let side =
                        self.prev[l + 1 - self.prev_lo].try_add(&self.prev[l - self.prev_lo])?;
                    v = v.try_add(&side)?;
                }
                (true, false) => v = v.try_add(&self.prev[l + 1 - self.prev_lo])?,
                (false, true) => v = v.try_add(&self.prev[l - self.prev_lo])?,
                (false, false) => {}
            }
            if l < self.summed_end {
                acc = acc.try_add(&v)?;
            }
            *slot = v;
        }
        Ok(acc)
    }
}

fn fold<C: Coefficient>(vals: &[C]) -> Result<C, ExtNumError> {
    let mut acc = C::zero_value();
    for v in vals {
        acc = acc.try_add(v)?;
    }
    Ok(acc)
}

/// `T_{∧n1 ∨ ∧n2}(x) = 1 + Σ_{l=1..n1} Σ_{r=1..n2} C(l+r-2, l-1) x^(l+r-1)`.
pub fn closed_form_cave_vee_cave(n1: usize, n2: usize) -> TriPolynomial<BigUint> {
    assert!(n1 >= 1 && n2 >= 1, "both summands need at least one edge");
    let mut coeffs = vec![BigUint::from(0u32); n1 + n2];
    coeffs[0] = BigUint::from(1u32);
    for l in 1..=n1 {
        for r in 1..=n2 {
            coeffs[l + r - 1] += binomial(BigUint::from(l + r - 2), BigUint::from(l - 1));
        }
    }
    TriPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extnum::ExtNum;
    use proptest::prelude::*;

    fn big(v: &[u64]) -> TriPolynomial<BigUint> {
        TriPolynomial::from_u64s(v)
    }

    /// Convex sums expanded term by term: Σ t_k1 t_k2 x^(k1+k2) T_{∧(n1-k1) ∨ ∧(n2-k2)}.
    fn expand_convex_sum(p1: &[BigUint], p2: &[BigUint]) -> Vec<BigUint> {
        let (n1, n2) = (p1.len(), p2.len());
        let mut out = vec![BigUint::from(0u32); n1 + n2];
        for (k1, t1) in p1.iter().enumerate() {
            for (k2, t2) in p2.iter().enumerate() {
                let inner = closed_form_cave_vee_cave(n1 - k1, n2 - k2);
                for (j, c) in inner.coeffs().iter().enumerate() {
                    out[k1 + k2 + j] += t1 * t2 * c;
                }
            }
        }
        out
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge_combine(&big(&[1]), &big(&[1])).unwrap(), big(&[1, 0]));
        assert_eq!(
            wedge_combine(&big(&[1, 1]), &big(&[1, 1])).unwrap(),
            big(&[1, 2, 1, 0])
        );
        let p = big(&[1, 3, 5, 5]);
        assert_eq!(
            wedge_combine(&p, &big(&[1])).unwrap(),
            big(&[1, 3, 5, 5, 0])
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_cave_vee_cave(1, 1), big(&[1, 1]));
        assert_eq!(closed_form_cave_vee_cave(2, 3), big(&[1, 1, 2, 3, 3]));
        assert_eq!(closed_form_cave_vee_cave(2, 2), big(&[1, 1, 2, 2]));
        for k in 1..=10usize {
            let lead = closed_form_cave_vee_cave(k, k).leading().clone();
            assert_eq!(
                lead,
                binomial(BigUint::from(2 * k - 2), BigUint::from(k - 1))
            );
        }
    }

    #[test]
    fn vee_examples() {
        assert_eq!(vee_combine(&big(&[1]), &big(&[1])).unwrap(), big(&[1, 1]));
        assert_eq!(
            vee_combine(&big(&[1, 1]), &big(&[1, 1])).unwrap(),
            big(&[1, 3, 5, 5])
        );
        // K_2 = (E ^ E) v (E ^ E)
        assert_eq!(
            vee_combine(&big(&[1, 0]), &big(&[1, 0])).unwrap(),
            big(&[1, 1, 2, 2])
        );
    }

    #[test]
    fn vee_of_concave_inputs_is_closed_form() {
        for n1 in 1..=12 {
            for n2 in 1..=12 {
                let got = vee_combine(&TriPolynomial::unit(n1), &TriPolynomial::unit(n2)).unwrap();
                assert_eq!(got, closed_form_cave_vee_cave(n1, n2), "({n1}, {n2})");
            }
        }
    }

    #[test]
    fn symmetric_float_path_tracks_exact_values() {
        let vals = [1, 7, 19, 40, 41, 13, 2];
        let p: TriPolynomial<ExtNum> = TriPolynomial::from_u64s(&vals);
        let exact: TriPolynomial<BigUint> = TriPolynomial::from_u64s(&vals);
        let got = vee_combine(&p, &p).unwrap();
        let want = vee_combine(&exact, &exact).unwrap();
        for (g, w) in got.coeffs().iter().zip(want.coeffs()) {
            assert_eq!(g.to_biguint_floor(), *w);
        }
    }

    #[test]
    fn large_diagonals_take_the_chunked_path() {
        let n = PAR_THRESHOLD + 37;
        let p: TriPolynomial<ExtNum> = TriPolynomial::unit(n);
        let q: TriPolynomial<ExtNum> = TriPolynomial::unit(n + 1);
        let got = vee_combine(&p, &q).unwrap();
        assert_eq!(got.coeff(0), &ExtNum::ONE);
        assert_eq!(got.coeff(1), &ExtNum::ONE);
        assert_eq!(got.coeff(2), &ExtNum::from_u64(2));
        // leading coefficient of ∧n ∨ ∧n is C(2n-2, n-1)
        let sym = vee_combine(&p, &p).unwrap();
        let want = (1..n)
            .map(|i| ((n - 1 + i) as f64 / i as f64).ln())
            .sum::<f64>();
        assert!((sym.leading().ln() - want).abs() < 1e-9);
    }

    fn arb_poly(max: usize) -> impl Strategy<Value = Vec<u64>> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(0u64..1000, n - 1).prop_map(|mut v| {
                v.insert(0, 1);
                v
            })
        })
    }

    proptest! {
        #[test]
        fn vee_matches_term_by_term_expansion(a in arb_poly(10), b in arb_poly(10)) {
            let (pa, pb) = (big(&a), big(&b));
            let got = vee_combine(&pa, &pb).unwrap();
            prop_assert_eq!(got.coeffs(), &expand_convex_sum(pa.coeffs(), pb.coeffs())[..]);
        }

        #[test]
        fn vee_dominates_wedge(a in arb_poly(8), b in arb_poly(8)) {
            let (pa, pb) = (big(&a), big(&b));
            let v = vee_combine(&pa, &pb).unwrap();
            let w = wedge_combine(&pa, &pb).unwrap();
            for (x, y) in v.coeffs().iter().zip(w.coeffs()) {
                prop_assert!(x >= y);
            }
        }

        #[test]
        fn combines_commute(a in arb_poly(8), b in arb_poly(8)) {
            let (pa, pb) = (big(&a), big(&b));
            prop_assert_eq!(vee_combine(&pa, &pb).unwrap(), vee_combine(&pb, &pa).unwrap());
            prop_assert_eq!(wedge_combine(&pa, &pb).unwrap(), wedge_combine(&pb, &pa).unwrap());
        }
    }
}
