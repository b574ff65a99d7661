use std::sync::OnceLock;

use super::{Ball, Cyclo, Rational, Ring, Tower, DEFAULT_PREC};

/// A sound test for nonvanishing. Exact types answer exactly; balls answer
/// "certainly nonzero" only when the disk excludes 0.
pub trait NonzeroTest: Ring {
    fn certainly_nonzero(&self) -> bool;
}

/// A ring containing the 15th roots of unity.
pub trait Scalar: NonzeroTest {
    fn zeta_pow(k: i64) -> Self;

    /// μᵏ with μ = ζ³ a primitive fifth root of unity.
    fn mu_pow(k: i64) -> Self {
        Self::zeta_pow(3 * k.rem_euclid(5))
    }

    /// ξᵏ with ξ = ζ⁵ a primitive cube root of unity.
    fn xi_pow(k: i64) -> Self {
        Self::zeta_pow(5 * k.rem_euclid(3))
    }
}

impl Scalar for Cyclo {
    fn zeta_pow(k: i64) -> Self {
        Cyclo::zeta_pow(k)
    }
}

impl Scalar for Tower {
    fn zeta_pow(k: i64) -> Self {
        Tower::from_cyclo(Cyclo::zeta_pow(k))
    }
}

macro_rules! exact_nonzero {
    ($($t:ty),*) => {$(
        impl NonzeroTest for $t {
            fn certainly_nonzero(&self) -> bool {
                !Ring::is_zero(self)
            }
        }
    )*};
}
exact_nonzero!(Rational, Cyclo, Tower);

impl NonzeroTest for Ball {
    fn certainly_nonzero(&self) -> bool {
        !num_traits::Zero::is_zero(&self.abs_lower())
    }
}

/// Balls use the principal embedding ζ ↦ e^{2πi/15}.
impl Scalar for Ball {
    fn zeta_pow(k: i64) -> Self {
        static POWERS: OnceLock<Vec<Ball>> = OnceLock::new();
        let powers = POWERS.get_or_init(|| {
            let z = Ball::zeta15(DEFAULT_PREC + 16);
            let mut out = vec![Ball::one()];
            for i in 1..15 {
                let next = out[i - 1].times(&z);
                out.push(next);
            }
            out.into_iter().map(|b| b.round_to(DEFAULT_PREC)).collect()
        });
        powers[k.rem_euclid(15) as usize].clone()
    }
}
