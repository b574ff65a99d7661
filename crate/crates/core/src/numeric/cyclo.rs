use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::rational::{fmt_rational, rational_from_json, rational_to_json};
use super::{Field, NumericError, Rational, Ring};
use crate::linalg;

/// Coefficients of Φ₁₅(x) = x⁸ − x⁷ + x⁵ − x⁴ + x³ − x + 1, constant term first.
pub const PHI15: [i64; 9] = [1, -1, 0, 1, -1, 1, 0, -1, 1];

/// Element of ℚ(ζ₁₅) in the power basis 1, ζ, …, ζ⁷.
///
/// Stored as integer numerators over one positive common denominator with
/// content removed, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    num: [BigInt; 8],
    den: BigInt,
}

impl Cyclo {
    pub fn from_rational(q: &Rational) -> Self {
        let mut num: [BigInt; 8] = Default::default();
        num[0] = q.numer().clone();
        Cyclo { num, den: q.denom().clone() }
    }

    pub fn from_int(n: i64) -> Self {
        let mut num: [BigInt; 8] = Default::default();
        num[0] = BigInt::from(n);
        Cyclo { num, den: BigInt::one() }
    }

    pub fn from_coeffs(c: &[Rational; 8]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = std::array::from_fn(|i| c[i].numer() * (&den / c[i].denom()));
        Self::normalized(num, den)
    }

    pub fn coeffs(&self) -> [Rational; 8] {
        std::array::from_fn(|i| Rational::new(self.num[i].clone(), self.den.clone()))
    }

    /// ζᵏ for any integer k (taken mod 15).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(15) as usize;
        let mut acc = vec![BigInt::zero(); 15];
        acc[k] = BigInt::one();
        Self::reduce(acc, BigInt::one())
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// The primitive fifth root of unity μ₅ = ζ³.
    pub fn mu() -> Self {
        Self::zeta_pow(3)
    }

    pub fn mu_pow(k: i64) -> Self {
        Self::zeta_pow(3 * k.rem_euclid(5))
    }

    /// The primitive cube root of unity ξ = ζ⁵.
    pub fn xi() -> Self {
        Self::zeta_pow(5)
    }

    pub fn xi_pow(k: i64) -> Self {
        Self::zeta_pow(5 * k.rem_euclid(3))
    }

    /// Returns the rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// Reduces a coefficient vector of any length modulo Φ₁₅.
    fn reduce(mut c: Vec<BigInt>, den: BigInt) -> Self {
        // x⁸ = x⁷ − x⁵ + x⁴ − x³ + x − 1
        for d in (8..c.len()).rev() {
            let lead = std::mem::take(&mut c[d]);
            if lead.is_zero() {
                continue;
            }
            let s = d - 8;
            for (j, &p) in PHI15[..8].iter().enumerate() {
                if p != 0 {
                    c[s + j] -= &lead * p;
                }
            }
        }
        c.resize(8, BigInt::zero());
        let num: [BigInt; 8] = std::array::from_fn(|i| std::mem::take(&mut c[i]));
        Self::normalized(num, den)
    }

    fn normalized(mut num: [BigInt; 8], mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Cyclo { num, den: BigInt::one() };
        }
        let mut g = den.clone();
        for n in &num {
            if !n.is_zero() {
                g = g.gcd(n);
                if g.is_one() {
                    break;
                }
            }
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for n in num.iter_mut() {
                *n /= &g;
            }
            den /= &g;
        }
        Cyclo { num, den }
    }

    /// The 8×8 rational matrix of multiplication by `self`: column j holds
    /// the coordinates of `self·ζʲ`.
    pub fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![<Rational as Zero>::zero(); 8]; 8];
        let mut cur = self.clone();
        let z = Cyclo::zeta();
        for j in 0..8 {
            let c = cur.coeffs();
            for i in 0..8 {
                m[i][j] = c[i].clone();
            }
            cur = cur.times(&z);
        }
        m
    }

    /// Applies the Galois automorphism ζ ↦ ζᵏ (k a unit mod 15).
    pub fn galois(&self, k: i64) -> Self {
        assert!(k.rem_euclid(15).gcd(&15) == 1, "ζ ↦ ζ^{k} is not an automorphism");
        let mut acc = Cyclo::zero();
        for i in 0..8 {
            if !self.num[i].is_zero() {
                let c = Cyclo::from_rational(&Rational::new(self.num[i].clone(), self.den.clone()));
                acc = acc.plus(&c.times(&Cyclo::zeta_pow(k * i as i64)));
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, NumericError> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 8)
            .ok_or_else(|| NumericError::Parse("cyclotomic element needs 8 coefficients".into()))?;
        let mut c: [Rational; 8] = Default::default();
        for (i, x) in arr.iter().enumerate() {
            c[i] = rational_from_json(x)?;
        }
        Ok(Cyclo::from_coeffs(&c))
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo { num: Default::default(), den: BigInt::one() }
    }
    fn one() -> Self {
        Cyclo::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            let num = std::array::from_fn(|i| &self.num[i] + &o.num[i]);
            return Self::normalized(num, self.den.clone());
        }
        let num = std::array::from_fn(|i| &self.num[i] * &o.den + &o.num[i] * &self.den);
        Self::normalized(num, &self.den * &o.den)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Cyclo::zero();
        }
        let mut c = vec![BigInt::zero(); 15];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::reduce(c, &self.den * &o.den)
    }
    fn negate(&self) -> Self {
        Cyclo { num: std::array::from_fn(|i| -&self.num[i]), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Cyclo::from_rational(q)
    }
    fn from_int(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl Field for Cyclo {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclo::from_rational(&q.recip()));
        }
        let m = self.mul_matrix();
        let mut rhs = vec![<Rational as Zero>::zero(); 8];
        rhs[0] = <Rational as One>::one();
        let x = linalg::solve(&m, &rhs)?;
        Some(Cyclo::from_coeffs(&std::array::from_fn(|i| x[i].clone())))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "zeta")?,
                (1, m) => write!(f, "{m}*zeta")?,
                (_, "1") => write!(f, "zeta^{i}")?,
                (_, m) => write!(f, "{m}*zeta^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn xi_is_a_primitive_cube_root() {
        let xi = Cyclo::xi();
        assert!(Cyclo::one().plus(&xi).plus(&xi.times(&xi)).is_zero());
        assert!(!xi.is_one());
    }

    #[test]
    fn mu_has_order_five() {
        let mu = Cyclo::mu();
        assert!(mu.times(&mu.pow(4)).is_one());
        for k in 1..5 {
            assert!(!mu.pow(k).is_one());
        }
    }

    #[test]
    fn zeta_has_order_fifteen_and_kills_phi() {
        let z = Cyclo::zeta();
        assert!(z.pow(15).is_one());
        let phi = PHI15
            .iter()
            .enumerate()
            .fold(Cyclo::zero(), |acc, (i, &c)| acc.plus(&Cyclo::from_int(c).times(&z.pow(i as u32))));
        assert!(phi.is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let x = Cyclo::from_int(3).plus(&Cyclo::zeta_pow(4)).minus(&Cyclo::from_rational(&rat(2, 7)).times(&Cyclo::xi()));
        let y = x.inverse().unwrap();
        assert!(x.times(&y).is_one());
        assert!(Cyclo::zero().inverse().is_none());
    }

    #[test]
    fn galois_fixes_rationals_and_permutes_roots() {
        assert_eq!(Cyclo::xi().galois(2), Cyclo::xi_pow(2));
        assert_eq!(Cyclo::from_int(5).galois(7), Cyclo::from_int(5));
    }

    #[test]
    fn display_is_readable() {
        let x = Cyclo::from_rational(&rat(-1, 2)).plus(&Cyclo::zeta_pow(2));
        assert_eq!(x.to_string(), "-1/2 + zeta^2");
    }
}
