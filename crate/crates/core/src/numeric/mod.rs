//! Exact scalar arithmetic: ℚ, the cyclotomic field ℚ(ζ₁₅), a single
//! fifth-root extension of it, and rigorous complex balls for the numeric
//! side of the census.

mod ball;
mod cyclo;
pub(crate) mod rational;
mod scalar;
mod tower;

pub use ball::{embed_complex, Ball, ComplexApprox, DEFAULT_PREC, TOWER_EMBEDDINGS, UNITS_MOD_15};
pub use scalar::{NonzeroTest, Scalar};
pub use cyclo::{Cyclo, PHI15};
pub use rational::{parse_rational, rat, rational_from_json, rational_to_json, Rational};
pub use tower::{radical_adjoin, RadicalTower, Tower};

pub type CycloElement = Cyclo;
pub type TowerElement = Tower;
/// The coefficient domain used throughout: ℚ(ζ₁₅) with at most one radical.
pub type FieldElement = Tower;

use std::fmt;

/// Commutative ring with identity. Method names avoid clashing with the
/// `std::ops` traits that `BigRational` already implements.
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rat(n, 1))
    }

    fn is_one(&self) -> bool {
        self.minus(&Self::one()).is_zero()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// A ring in which nonzero elements can (usually) be inverted.
///
/// `inverse` returns `None` for zero and for zero divisors, which occur in a
/// radical tower whose radicand is a fifth power.
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;

    fn divide(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.times(&inv))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different radical towers")]
    MixedTower,
    #[error("radicand must be nonzero")]
    ZeroRadicand,
    #[error("element is not invertible in this tower")]
    NotInvertible,
    #[error("ball contains zero")]
    BallContainsZero,
    #[error("malformed field element: {0}")]
    Parse(String),
}
