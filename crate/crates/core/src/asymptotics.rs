//! Growth constants of poly and twin chains, and the generating-function
//! machinery behind their bounds.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::{gdc, poly, Formula};
use crate::extnum::{ExtNum, ExtNumError};
use crate::tripoly::{tri_poly, Coefficient, Mode, PolyPair, TriPolyError, TriPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    TriPoly(#[from] TriPolyError),
    #[error(transparent)]
    Numeric(#[from] ExtNumError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<crate::chain::ChainError> for AsymptoticsError {
    fn from(e: crate::chain::ChainError) -> Self {
        AsymptoticsError::TriPoly(e.into())
    }
}

/// `λ^m`, `τ^m` and `λ̄^m` for a base chain with `m` edges.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSums<C> {
    pub m: usize,
    pub lambda_pow: C,
    pub tau_pow: C,
    pub lambda_bar_pow: C,
}

/// `Σ_{k=1..m} 2^k w_k` by Horner's rule, doubling at each step.
fn weighted_pow2_sum<C: Coefficient>(
    m: usize,
    w: impl Fn(usize) -> Result<C, ExtNumError>,
) -> Result<C, ExtNumError> {
    let two = C::from_u64(2);
    let mut acc = C::zero_value();
    for k in (1..=m).rev() {
        acc = acc.try_add(&w(k)?)?.try_mul(&two)?;
    }
    Ok(acc)
}

impl<C: Coefficient> GrowthSums<C> {
    /// From `(T_{C0}, T_flip(C0))`:
    /// `λ^m = Σ 2^k (k+1) t_{m-k}(flip C0)`, `τ^m = Σ 2^k t_{m-k}(C0)`,
    /// and `λ̄^m` is `λ^m` with the roles of `C0` and `flip C0` swapped.
    pub fn from_pair(pair: &PolyPair<C>) -> Result<Self, ExtNumError> {
        let m = pair.upper.edges();
        let t = pair.upper.coeffs();
        let tf = pair.lower.coeffs();
        let lambda_w = |src: &[C]| {
            let src = src.to_vec();
            move |k: usize| C::from_u64(k as u64 + 1).try_mul(&src[m - k])
        };
        Ok(GrowthSums {
            m,
            lambda_pow: weighted_pow2_sum(m, lambda_w(tf))?,
            tau_pow: weighted_pow2_sum(m, |k| Ok(t[m - k].clone()))?,
            lambda_bar_pow: weighted_pow2_sum(m, lambda_w(t))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthReport {
    pub m: usize,
    pub lambda: f64,
    pub tau: f64,
    pub lambda_tau: f64,
    pub lambda_bar: f64,
    pub lambda_lambda_bar: f64,
}

impl GrowthReport {
    pub fn from_sums<C: Coefficient>(s: &GrowthSums<C>) -> Result<Self, ExtNumError> {
        let m = s.m as u64;
        let lambda = s.lambda_pow.to_ext()?.nth_root(m)?;
        let tau = s.tau_pow.to_ext()?.nth_root(m)?;
        let lambda_bar = s.lambda_bar_pow.to_ext()?.nth_root(m)?;
        // products taken before the root to avoid compounding rounding
        let lambda_tau = s
            .lambda_pow
            .to_ext()?
            .checked_mul(&s.tau_pow.to_ext()?)?
            .nth_root(m)?;
        let lambda_lambda_bar = s
            .lambda_pow
            .to_ext()?
            .checked_mul(&s.lambda_bar_pow.to_ext()?)?
            .nth_root(m)?;
        Ok(GrowthReport {
            m: s.m,
            lambda,
            tau,
            lambda_tau,
            lambda_bar,
            lambda_lambda_bar,
        })
    }
}

/// Growth constants of poly and twin chains over the base chain `c0`.
pub fn lambda_tau(c0: &Formula, mode: Mode) -> Result<GrowthReport, AsymptoticsError> {
    Ok(match mode {
        Mode::Exact => GrowthReport::from_sums(&GrowthSums::from_pair(&tri_poly::<BigUint>(c0)?)?)?,
        Mode::ExtFloat => {
            GrowthReport::from_sums(&GrowthSums::from_pair(&tri_poly::<ExtNum>(c0)?)?)?
        }
    })
}

/// Maximum of `e^{H(α)} Π u_k^{α_k}` over the probability simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyMax {
    pub value: f64,
    pub weights: Vec<f64>,
}

/// The maximum is `Σ u_k`, attained at `α_k = u_k / Σ u_j`.
pub fn entropy_max(u: &[f64]) -> Result<EntropyMax, AsymptoticsError> {
    if u.iter().any(|&x| x.is_nan() || x < 0.0 || !x.is_finite()) {
        return Err(AsymptoticsError::InvalidInput(
            "weights must be finite and nonnegative".into(),
        ));
    }
    let total: f64 = u.iter().sum();
    if total <= 0.0 {
        return Err(AsymptoticsError::InvalidInput(
            "at least one weight must be positive".into(),
        ));
    }
    Ok(EntropyMax {
        value: total,
        weights: u.iter().map(|x| x / total).collect(),
    })
}

/// `e^{H(α)} Π u_k^{α_k}` with `0 ln 0 = 0`.
pub fn entropy_objective(u: &[f64], alpha: &[f64]) -> f64 {
    let mut log = 0.0;
    for (&uk, &ak) in u.iter().zip(alpha) {
        if ak > 0.0 {
            log += ak * (uk.ln() - ak.ln());
        }
    }
    log.exp()
}

/// Formal power series truncated after `x^order`, with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    pub fn monomial(order: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            order,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())),
        )
    }

    pub fn from_poly(order: usize, p: &TriPolynomial<BigUint>) -> Self {
        Self::from_coeffs(
            order,
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(c.clone()))),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; `None` if the constant term is zero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.order());
        out.coeffs[0] = inv0.clone();
        for k in 1..=self.order() {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Some(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `(1 - x) / (1 - 2x) = 1 + Σ_{k>=1} 2^{k-1} x^k`.
    pub fn vee_factor(order: usize) -> Self {
        let mut s = Self::one(order);
        for k in 1..=order {
            s.coeffs[k] = BigRational::from_integer(BigInt::one() << (k - 1));
        }
        s
    }

    /// `(x / (1 - x))^e`.
    pub fn x_over_one_minus_x(order: usize, e: usize) -> Self {
        // [x^k] = C(k-1, e-1) for k >= e
        let mut s = Self::zero(order);
        if e == 0 {
            return Self::one(order);
        }
        for k in e..=order {
            s.coeffs[k] =
                BigRational::from_integer(binomial(BigInt::from(k - 1), BigInt::from(e - 1)));
        }
        s
    }
}

fn zip_with(
    a: &PowerSeries,
    b: &PowerSeries,
    f: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> PowerSeries {
    let order = a.order().min(b.order());
    PowerSeries {
        coeffs: (0..=order).map(|k| f(&a.coeffs[k], &b.coeffs[k])).collect(),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Product truncated to the smaller of the two orders.
impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// `φ_C(x) = T_C(x) - (x / (1 - x))^{n+1} T_C(1 - x)` from `T_C`.
pub fn phi_from_poly(t: &TriPolynomial<BigUint>, order: usize) -> PowerSeries {
    let n = t.edges();
    // (x/(1-x))^{n+1} (1-x)^k = x^{n+1} (1-x)^{-(n+1-k)}
    let mut tail = PowerSeries::zero(order);
    for (k, tk) in t.coeffs().iter().enumerate() {
        if tk.is_zero() {
            continue;
        }
        let r = n + 1 - k;
        let tk = BigInt::from(tk.clone());
        for d in n + 1..=order {
            let j = d - (n + 1);
            // [x^j] (1-x)^{-r} = C(j + r - 1, r - 1)
            let c = binomial(BigInt::from(j + r - 1), BigInt::from(r - 1));
            tail.coeffs[d] += BigRational::from_integer(&tk * c);
        }
    }
    &PowerSeries::from_poly(order, t) - &tail
}

pub fn phi_series(f: &Formula, order: usize) -> Result<PowerSeries, AsymptoticsError> {
    if order < f.edges() {
        return Err(AsymptoticsError::InvalidInput(format!(
            "order {order} is below the chain size {}",
            f.edges()
        )));
    }
    let t = tri_poly::<BigUint>(f)?.upper;
    Ok(phi_from_poly(&t, order))
}

/// `Π_k (2^k (k+1))^{N_k}`, exactly.
pub fn gdc_upper_bound_exact(counts: &[usize]) -> BigUint {
    let mut out = BigUint::one();
    for (i, &nk) in counts.iter().enumerate() {
        let k = i + 1;
        let base = (BigUint::one() << k) * BigUint::from(k + 1);
        out *= num_traits::pow(base, nk);
    }
    out
}

/// `Π_k (2^k (k+1))^{N_k}` in extended floating point.
pub fn gdc_upper_bound(counts: &[usize]) -> Result<ExtNum, AsymptoticsError> {
    let mut out = ExtNum::ONE;
    for (i, &nk) in counts.iter().enumerate() {
        let k = i + 1;
        let base = ExtNum::pow2(k as i64)?.checked_mul(&ExtNum::from_u64(k as u64 + 1))?;
        out = out.checked_mul(&base.checked_pow(nk as u64)?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyBounds {
    pub lower_u: BigUint,
    pub upper_u: BigUint,
    pub lower_tr: BigUint,
    pub upper_tr: BigUint,
}

/// Bounds on `U` and `tr` of a chain built from `copies` copies of `c0`:
/// `U(C0)^N <= U(C) <= U(poly(flip C0, N))` and
/// `tr(C0)^N <= tr(C) <= U(poly(C0, N)) U(poly(flip C0, N))`.
pub fn copy_bounds(
    c0: &Formula,
    copies: usize,
    c: &Formula,
) -> Result<CopyBounds, AsymptoticsError> {
    if copies == 0 || c.edges() != copies * c0.edges() {
        return Err(AsymptoticsError::InvalidInput(format!(
            "{} edges is not {copies} copies of a {}-edge chain",
            c.edges(),
            c0.edges()
        )));
    }
    let base = tri_poly::<BigUint>(c0)?;
    let u0 = base.upper.leading().clone();
    let l0 = base.lower.leading().clone();
    let up_poly = tri_poly::<BigUint>(&poly(&c0.flip(), copies)?)?
        .upper
        .leading()
        .clone();
    let down_poly = tri_poly::<BigUint>(&poly(c0, copies)?)?
        .upper
        .leading()
        .clone();
    Ok(CopyBounds {
        lower_u: num_traits::pow(u0.clone(), copies),
        upper_u: up_poly.clone(),
        lower_tr: num_traits::pow(u0 * l0, copies),
        upper_tr: down_poly * up_poly,
    })
}

/// All `(a_1, …, a_m)` with `a_i >= 0` summing to `total`.
fn compositions(m: usize, total: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(parts: &[usize]) -> BigUint {
    let mut out = BigUint::one();
    let mut seen = 0usize;
    for &a in parts {
        seen += a;
        out *= binomial(BigUint::from(seen), BigUint::from(a));
    }
    out
}

/// `U(poly(C0, N))` by the multinomial expansion over generalized double
/// circles: `Σ_a (N; a) Π t_{m-k}(flip C0)^{a_k} t_{n(a)-1}(gdc(a))`.
/// The result is the `x^{mN-1}` coefficient of `T_poly`, so it is `U` when
/// `poly(C0, N)` is upward.
pub fn poly_upper_by_multinomial(c0: &Formula, copies: usize) -> Result<BigUint, AsymptoticsError> {
    let m = c0.edges();
    let tf = tri_poly::<BigUint>(&c0.flip())?.upper;
    let mut total = BigUint::zero();
    for a in compositions(m, copies) {
        let mut term = multinomial(&a);
        for (i, &ak) in a.iter().enumerate() {
            let k = i + 1;
            term *= num_traits::pow(tf.coeff(m - k).clone(), ak);
        }
        if term.is_zero() {
            continue;
        }
        // the x^{n-1} coefficient, which is U for upward gdc chains and 0
        // for a lone concave summand
        let t = tri_poly::<BigUint>(&gdc(&a)?)?.upper;
        term *= t.coeff(t.edges() - 1);
        total += term;
    }
    Ok(total)
}

/// `U(twin(C0, N)) = Σ_{k1,k2} γ_{k1} γ_{k2} C(2mN - k1 - k2, mN - k1)` with
/// `γ_k = [x^k] T_{C0}(x)^N`.
pub fn twin_upper_by_gamma(c0: &Formula, copies: usize) -> Result<BigUint, AsymptoticsError> {
    if copies == 0 {
        return Err(AsymptoticsError::InvalidInput("at least one copy".into()));
    }
    let m = c0.edges();
    let t = tri_poly::<BigUint>(c0)?.upper;
    let len = m * copies;
    let mut gamma = vec![BigUint::zero(); len];
    gamma[0] = BigUint::one();
    let mut cur_len = 1;
    for _ in 0..copies {
        let mut next = vec![BigUint::zero(); len];
        for (i, g) in gamma.iter().take(cur_len).enumerate() {
            if g.is_zero() {
                continue;
            }
            for (j, c) in t.coeffs().iter().enumerate() {
                if i + j < len {
                    next[i + j] += g * c;
                }
            }
        }
        gamma = next;
        cur_len = (cur_len + m).min(len);
    }
    let mut total = BigUint::zero();
    for (k1, g1) in gamma.iter().enumerate() {
        for (k2, g2) in gamma.iter().enumerate() {
            if g1.is_zero() || g2.is_zero() {
                continue;
            }
            total += g1 * g2 * binomial(BigUint::from(2 * len - k1 - k2), BigUint::from(len - k1));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cave, enumerate_chains, koch, prim, twin, vee, vex, wedge};
    use crate::tripoly::counts;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn growth_anchors() {
        let g = lambda_tau(&prim(), Mode::Exact).unwrap();
        assert_eq!((g.lambda, g.tau, g.lambda_tau), (4.0, 2.0, 8.0));
        let pair = tri_poly::<BigUint>(&vex(4).unwrap()).unwrap();
        let s = GrowthSums::from_pair(&pair).unwrap();
        assert_eq!(s.lambda_pow, BigUint::from(80u32));
        assert_eq!(s.tau_pow, BigUint::from(70u32));
        let g = GrowthReport::from_sums(&s).unwrap();
        assert!((g.lambda_tau - 8.6506154).abs() < 1e-6);
        let g = lambda_tau(&koch(1).unwrap(), Mode::Exact).unwrap();
        assert!((g.lambda - 12f64.sqrt()).abs() < 1e-12);
        assert!((g.tau - 6f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lambda_bar_is_lambda_of_flip() {
        for f in enumerate_chains(5).unwrap() {
            let a = lambda_tau(&f, Mode::Exact).unwrap();
            let b = lambda_tau(&f.flip(), Mode::Exact).unwrap();
            assert_eq!(a.lambda_bar, b.lambda);
        }
    }

    #[test]
    fn float_growth_matches_exact() {
        for s in 0..=8 {
            let f = koch(s).unwrap();
            let a = lambda_tau(&f, Mode::Exact).unwrap();
            let b = lambda_tau(&f, Mode::ExtFloat).unwrap();
            assert!((a.lambda_tau - b.lambda_tau).abs() < 1e-12);
            assert!((a.lambda_lambda_bar - b.lambda_lambda_bar).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_examples() {
        let e = entropy_max(&[1.0, 1.0]).unwrap();
        assert_eq!(e.value, 2.0);
        assert_eq!(e.weights, vec![0.5, 0.5]);
        let e = entropy_max(&[3.0, 1.0]).unwrap();
        assert_eq!((e.value, e.weights), (4.0, vec![0.75, 0.25]));
        assert_eq!(entropy_max(&[5.0]).unwrap().weights, vec![1.0]);
        assert!(entropy_max(&[0.0, 0.0]).is_err());
        assert!(entropy_max(&[]).is_err());
        assert!((entropy_objective(&[3.0, 1.0], &[0.75, 0.25]) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_matches_grid_search() {
        let cases: [&[f64]; 4] = [&[2.0, 5.0], &[1.0, 0.0, 4.0], &[0.3, 1.7, 2.2], &[7.0]];
        for u in cases {
            let best = match u.len() {
                1 => entropy_objective(u, &[1.0]),
                2 => (0..=1000)
                    .map(|i| {
                        let a = i as f64 / 1000.0;
                        entropy_objective(u, &[a, 1.0 - a])
                    })
                    .fold(0.0, f64::max),
                _ => (0..=1000)
                    .flat_map(|i| (0..=1000 - i).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let (a, b) = (i as f64 / 1000.0, j as f64 / 1000.0);
                        entropy_objective(u, &[a, b, 1.0 - a - b])
                    })
                    .fold(0.0, f64::max),
            };
            let e = entropy_max(u).unwrap();
            assert!(
                (e.value - best).abs() < 1e-5,
                "{u:?}: {} vs {best}",
                e.value
            );
        }
    }

    #[test]
    fn series_arithmetic() {
        let one_minus_x = PowerSeries::from_ints(6, &[1, -1]);
        let inv = one_minus_x.inverse().unwrap();
        assert_eq!(inv, PowerSeries::from_ints(6, &[1, 1, 1, 1, 1, 1, 1]));
        let one_minus_2x = PowerSeries::from_ints(6, &[1, -2]);
        assert_eq!(
            &one_minus_x * &one_minus_2x.inverse().unwrap(),
            PowerSeries::vee_factor(6)
        );
        let q = &PowerSeries::monomial(6, 1, r(1)) * &inv;
        assert_eq!(q.pow(3), PowerSeries::x_over_one_minus_x(6, 3));
        assert!(PowerSeries::from_ints(3, &[0, 1]).inverse().is_none());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi_series(&prim(), 4).unwrap(),
            PowerSeries::from_ints(4, &[1, 0, -1, -2, -3])
        );
        for k in 1..=6 {
            let want = &PowerSeries::one(20) - &PowerSeries::x_over_one_minus_x(20, k + 1);
            assert_eq!(phi_series(&cave(k).unwrap(), 20).unwrap(), want);
        }
        assert!(phi_series(&vex(5).unwrap(), 4).is_err());
    }

    #[test]
    fn phi_prefix_is_t() {
        for f in enumerate_chains(6).unwrap() {
            let t = tri_poly::<BigUint>(&f).unwrap().upper;
            let phi = phi_series(&f, 12).unwrap();
            let n = f.edges();
            for k in 0..n {
                assert_eq!(
                    phi.coeff(k),
                    &BigRational::from_integer(BigInt::from(t.coeff(k).clone()))
                );
            }
            // x^n has no partial triangulations
            assert!(phi.coeff(n).is_zero());
        }
    }

    #[test]
    fn phi_multiplicative_small() {
        let small: Vec<Formula> = (1..=3).flat_map(|n| enumerate_chains(n).unwrap()).collect();
        for a in &small {
            for b in &small {
                let order = a.edges() + b.edges() + 6;
                let lhs = phi_series(&vee(a, b), order).unwrap();
                let rhs = &(&PowerSeries::vee_factor(order) * &phi_series(a, order).unwrap())
                    * &phi_series(b, order).unwrap();
                assert_eq!(lhs, rhs, "{a} | {b}");
            }
        }
    }

    #[test]
    fn gdc_bounds() {
        assert_eq!(gdc_upper_bound_exact(&[2]), BigUint::from(16u32));
        assert_eq!(gdc_upper_bound_exact(&[0, 1]), BigUint::from(12u32));
        assert_eq!(gdc_upper_bound_exact(&[1, 1]), BigUint::from(48u32));
        assert_eq!(gdc_upper_bound(&[1, 1]).unwrap(), ExtNum::from_u64(48));
        for a in compositions(3, 3) {
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            let u = tri_poly::<BigUint>(&gdc(&a).unwrap())
                .unwrap()
                .upper
                .leading()
                .clone();
            assert!(u <= gdc_upper_bound_exact(&a), "{a:?}");
        }
    }

    #[test]
    fn copy_bound_examples() {
        let k1 = koch(1).unwrap();
        let b = copy_bounds(&k1, 2, &koch(2).unwrap()).unwrap();
        assert_eq!(b.lower_u, BigUint::from(1u32));
        assert_eq!(b.upper_u, BigUint::from(5u32));
        assert_eq!(b.lower_tr, BigUint::from(1u32));
        assert_eq!(b.upper_tr, BigUint::from(10u32));
        let b = copy_bounds(&prim(), 3, &vex(3).unwrap()).unwrap();
        assert_eq!(
            (b.lower_u, b.upper_u),
            (BigUint::from(1u32), BigUint::from(2u32))
        );
        assert!(copy_bounds(&k1, 3, &koch(2).unwrap()).is_err());
    }

    #[test]
    fn copy_bounds_hold() {
        let e = prim();
        let bases = [e.clone(), vee(&e, &e), wedge(&e, &vee(&e, &e))];
        for c0 in &bases {
            for b in &bases {
                let c = vee(&wedge(c0, c0), c0);
                if c.edges() != 3 * c0.edges() || b != c0 {
                    continue;
                }
                let bounds = copy_bounds(c0, 3, &c).unwrap();
                let cc = counts(&c, Mode::Exact).unwrap();
                let u = cc.upper.as_exact().unwrap().clone();
                let t = cc.total.as_exact().unwrap().clone();
                assert!(bounds.lower_u <= u && u <= bounds.upper_u);
                assert!(bounds.lower_tr <= t && t <= bounds.upper_tr);
            }
        }
    }

    #[test]
    fn multinomial_expansion_matches_engine() {
        let e = prim();
        for c0 in [vee(&e, &e), wedge(&e, &e)] {
            for n in 1..=4 {
                let t = tri_poly::<BigUint>(&poly(&c0, n).unwrap()).unwrap().upper;
                let got = poly_upper_by_multinomial(&c0, n).unwrap();
                assert_eq!(&got, t.coeff(t.edges() - 1), "{c0}, N = {n}");
                if n >= 2 {
                    assert_eq!(&got, t.leading());
                }
            }
        }
    }

    #[test]
    fn twin_expansion_matches_engine() {
        for c0 in [prim(), vex(2).unwrap()] {
            for n in 1..=3 {
                let direct = tri_poly::<BigUint>(&twin(&c0, n).unwrap())
                    .unwrap()
                    .upper
                    .leading()
                    .clone();
                assert_eq!(
                    twin_upper_by_gamma(&c0, n).unwrap(),
                    direct,
                    "{c0}, N = {n}"
                );
            }
        }
    }
}
