//! Upper triangulation polynomials.
//!
//! `T_C(x) = Σ t_k x^k` counts partial upper triangulations of a chain by
//! number of triangles. Concave sums multiply polynomials; convex sums go
//! through the bridge dynamic program in [`vee_combine`]. Evaluating a
//! formula bottom-up yields `T_C` and `T_flip(C)` together, from which the
//! upper, lower and total triangulation counts follow.

mod combine;
mod eval;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::ChainError;
use crate::extnum::{ExtNum, ExtNumError};

pub use combine::{closed_form_cave_vee_cave, vee_combine, wedge_combine};
pub use eval::{counts, tri_poly, ChainCounts, Evaluator, Mode, PolyPair, EXACT_MODE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriPolyError {
    #[error("numeric failure: {0}")]
    Numeric(#[from] ExtNumError),
    #[error("chain has {edges} edges, above the evaluation cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Nonnegative numbers closed under checked addition and multiplication.
pub trait Coefficient:
    Clone + PartialEq + Send + Sync + fmt::Debug + fmt::Display + 'static
{
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_u64(v: u64) -> Self;
    fn is_zero_value(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self, ExtNumError>;
    fn try_mul(&self, other: &Self) -> Result<Self, ExtNumError>;
    fn to_ext(&self) -> Result<ExtNum, ExtNumError>;
}

impl Coefficient for BigUint {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ExtNumError> {
        Ok(self + other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ExtNumError> {
        Ok(self * other)
    }
    fn to_ext(&self) -> Result<ExtNum, ExtNumError> {
        ExtNum::from_biguint(self)
    }
}

impl Coefficient for ExtNum {
    fn zero_value() -> Self {
        ExtNum::ZERO
    }
    fn one_value() -> Self {
        ExtNum::ONE
    }
    fn from_u64(v: u64) -> Self {
        ExtNum::from_u64(v)
    }
    fn is_zero_value(&self) -> bool {
        ExtNum::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ExtNumError> {
        self.checked_add(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ExtNumError> {
        self.checked_mul(other)
    }
    fn to_ext(&self) -> Result<ExtNum, ExtNumError> {
        Ok(*self)
    }
}

/// Dense coefficients `t_0, …, t_{n-1}` of `T_C(x)` for a chain with `n`
/// edges, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriPolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TriPolynomial<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a chain has at least one edge");
        TriPolynomial { coeffs }
    }

    /// `T_E = 1`, also `T` of every concave chain once padded.
    pub fn unit(edges: usize) -> Self {
        let mut coeffs = vec![C::zero_value(); edges.max(1)];
        coeffs[0] = C::one_value();
        TriPolynomial { coeffs }
    }

    pub fn from_u64s(vals: &[u64]) -> Self {
        Self::new(vals.iter().map(|&v| C::from_u64(v)).collect())
    }

    pub fn edges(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    /// Highest nonzero coefficient: the number of (complete) upper
    /// triangulations. It is `t_{n-1}` for upward chains; a downward chain
    /// `A_1 ∧ … ∧ A_k` stops at degree `n - k`.
    pub fn leading(&self) -> &C {
        &self.coeffs[self.degree()]
    }

    /// Index of the highest nonzero coefficient (0 for the zero vector).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero_value())
            .unwrap_or(0)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TriPolynomial<D> {
        TriPolynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_ext(&self) -> Result<TriPolynomial<ExtNum>, ExtNumError> {
        Ok(TriPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.to_ext())
                .collect::<Result<_, _>>()?,
        })
    }
}

impl<C: Coefficient> fmt::Display for TriPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            fmt::Display::fmt(c, f)?;
        }
        f.write_str("]")
    }
}

/// A count in either number system.
#[derive(Clone, PartialEq, Debug)]
pub enum Count {
    Exact(BigUint),
    Float(ExtNum),
}

impl Count {
    pub fn to_ext(&self) -> Result<ExtNum, ExtNumError> {
        match self {
            Count::Exact(v) => ExtNum::from_biguint(v),
            Count::Float(v) => Ok(*v),
        }
    }

    /// `self^(1/n)` in double precision.
    pub fn nth_root(&self, n: u64) -> Result<f64, ExtNumError> {
        self.to_ext()?.nth_root(n)
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Count::Exact(v) => Some(v),
            Count::Float(_) => None,
        }
    }
}

/// Exact counts print as integers, floating ones in scientific notation.
impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact(v) => write!(f, "{v}"),
            Count::Float(v) => fmt::Display::fmt(v, f),
        }
    }
}

/// Conversion of a generic coefficient into a [`Count`].
pub trait IntoCount {
    fn into_count(self) -> Count;
}

impl IntoCount for BigUint {
    fn into_count(self) -> Count {
        Count::Exact(self)
    }
}

impl IntoCount for ExtNum {
    fn into_count(self) -> Count {
        Count::Float(self)
    }
}
