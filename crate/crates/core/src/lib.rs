//! Chains, their triangulation polynomials and growth constants.

pub mod asymptotics;
pub mod chain;
pub mod extnum;
pub mod oracle;
pub mod tripoly;

pub use chain::{ChainError, Formula, ParseError, SumKind, VisibilityTriangle};
pub use extnum::{ExtNum, ExtNumError};
pub use num_bigint::{BigInt, BigUint};
pub use tripoly::{ChainCounts, Coefficient, Count, Mode, PolyPair, TriPolyError, TriPolynomial};
