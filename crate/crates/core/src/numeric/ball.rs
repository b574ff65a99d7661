use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclo, Field, NumericError, Rational, Ring, Tower};

/// Precision used by `Ring::from_rational` when the value is not dyadic.
pub const DEFAULT_PREC: u32 = 256;

/// Closed complex disk with fixed-point center.
///
/// The center is `(re + i·im)·2^-prec` and the radius is `rad·2^-prec`.
/// Every operation rounds the radius up, so the true value of an exact
/// computation always stays inside the disk.
#[derive(Clone)]
pub struct Ball {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u32,
}

/// Certified complex approximation; the name used by the numeric census.
pub type ComplexApprox = Ball;

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    debug_assert!(!x.is_negative());
    if k == 0 {
        return x.clone();
    }
    (x + ((BigInt::one() << k) - 1u32)) >> k
}

/// |re| + |im|, an upper bound on the modulus.
fn l1(re: &BigInt, im: &BigInt) -> BigInt {
    re.abs() + im.abs()
}

impl Ball {
    pub fn exact_int(n: i64) -> Self {
        Ball { re: BigInt::from(n), im: BigInt::zero(), rad: BigInt::zero(), prec: 0 }
    }

    pub fn from_rational_prec(q: &Rational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        let (m, r) = scaled.div_mod_floor(q.denom());
        let rad = if r.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { re: m, im: BigInt::zero(), rad, prec }
    }

    pub fn from_f64_parts(re: f64, im: f64, prec: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            let r = Rational::from_float(x).expect("finite float");
            (r.numer() << prec).div_floor(r.denom())
        };
        Ball { re: conv(re), im: conv(im), rad: BigInt::from(2), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn at_prec(&self, p: u32) -> Ball {
        if p >= self.prec {
            let s = p - self.prec;
            Ball { re: &self.re << s, im: &self.im << s, rad: &self.rad << s, prec: p }
        } else {
            let s = self.prec - p;
            Ball {
                re: self.re.clone() >> s,
                im: self.im.clone() >> s,
                rad: ceil_shr(&self.rad, s) + 2u32,
                prec: p,
            }
        }
    }

    /// Rounds to `p` bits after the binary point, widening the radius.
    pub fn round_to(&self, p: u32) -> Ball {
        self.at_prec(p)
    }

    /// Same center with zero radius; used inside Newton iterations, whose
    /// result is certified separately.
    pub fn midpoint(&self) -> Ball {
        Ball { rad: BigInt::zero(), ..self.clone() }
    }

    pub fn with_extra_radius(&self, ulps: &BigInt) -> Ball {
        Ball { rad: &self.rad + ulps, ..self.clone() }
    }

    pub fn conj(&self) -> Ball {
        Ball { im: -&self.im, ..self.clone() }
    }

    pub fn i() -> Ball {
        Ball { re: BigInt::zero(), im: BigInt::one(), rad: BigInt::zero(), prec: 0 }
    }

    pub fn re_mid(&self) -> Rational {
        Rational::new(self.re.clone(), BigInt::one() << self.prec)
    }

    pub fn im_mid(&self) -> Rational {
        Rational::new(self.im.clone(), BigInt::one() << self.prec)
    }

    pub fn radius(&self) -> Rational {
        Rational::new(self.rad.clone(), BigInt::one() << self.prec)
    }

    /// Rigorous upper bound on |z| for every z in the disk.
    pub fn abs_upper(&self) -> Rational {
        let n = &self.re * &self.re + &self.im * &self.im;
        let s = n.sqrt() + 1u32 + &self.rad;
        Rational::new(s, BigInt::one() << self.prec)
    }

    /// Rigorous lower bound on |z| over the disk (zero if the disk meets 0).
    pub fn abs_lower(&self) -> Rational {
        let n = &self.re * &self.re + &self.im * &self.im;
        let s = n.sqrt() - &self.rad;
        if s.is_positive() {
            Rational::new(s, BigInt::one() << self.prec)
        } else {
            <Rational as Zero>::zero()
        }
    }

    pub fn contains_zero(&self) -> bool {
        Zero::is_zero(&self.abs_lower())
    }

    /// Whether `x` (a Gaussian rational re + i·im) lies in the disk.
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        let scale = Rational::from_integer(BigInt::one() << self.prec);
        let dr = re * &scale - Rational::from_integer(self.re.clone());
        let di = im * &scale - Rational::from_integer(self.im.clone());
        let r = Rational::from_integer(self.rad.clone());
        &dr * &dr + &di * &di <= &r * &r
    }

    /// Whether two disks intersect.
    pub fn overlaps(&self, o: &Ball) -> bool {
        let p = self.prec.max(o.prec);
        let (a, b) = (self.at_prec(p), o.at_prec(p));
        let dr = &a.re - &b.re;
        let di = &a.im - &b.im;
        let r = &a.rad + &b.rad;
        &dr * &dr + &di * &di <= &r * &r
    }

    /// log₂ of the radius, rounded up; `None` for exact balls.
    pub fn radius_log2(&self) -> Option<i64> {
        if self.rad.is_zero() {
            None
        } else {
            Some(self.rad.bits() as i64 - self.prec as i64)
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let f = |m: &BigInt| Rational::new(m.clone(), BigInt::one() << self.prec).to_f64().unwrap_or(f64::NAN);
        (f(&self.re), f(&self.im))
    }

    /// Reciprocal, failing when the disk contains zero.
    pub fn checked_inverse(&self) -> Result<Ball, NumericError> {
        let p = self.prec.max(64);
        let a = self.at_prec(p);
        let n = &a.re * &a.re + &a.im * &a.im;
        let low = n.sqrt();
        if low <= a.rad {
            return Err(NumericError::BallContainsZero);
        }
        let two_p = BigInt::one() << (2 * p);
        let re = (&a.re * &two_p).div_floor(&n);
        let im = (-&a.im * &two_p).div_floor(&n);
        let denom = &low * (&low - &a.rad);
        let prop = (&a.rad * &two_p + &denom - 1u32).div_floor(&denom);
        Ok(Ball { re, im, rad: prop + 2u32, prec: p })
    }

    /// Real square root of a nonnegative integer at precision `p`.
    fn sqrt_int(n: u64, p: u32) -> Ball {
        let s = (BigInt::from(n) << (2 * p)).sqrt();
        Ball { re: s, im: BigInt::zero(), rad: BigInt::one(), prec: p }
    }

    /// e^{2πi/15} at precision `p`, via ζ₅²·ζ₃⁻¹ with radicals.
    pub fn zeta15(p: u32) -> Ball {
        let q = p + 16;
        let s5 = Ball::sqrt_int(5, q);
        let quarter = Ball::from_rational_prec(&Rational::new(1.into(), 4.into()), 2);
        let cos72 = s5.minus(&Ball::exact_int(1)).times(&quarter);
        // √(10 + 2√5) from a real ball: inner value ≥ 10, so the square root
        // contracts the inner error by at least a factor 6.
        let inner = Ball::exact_int(10).plus(&s5.times(&Ball::exact_int(2))).at_prec(q);
        let sin72 = Ball {
            re: (&inner.re << q).sqrt(),
            im: BigInt::zero(),
            rad: ceil_shr(&inner.rad, 2) + 1u32,
            prec: q,
        }
        .times(&quarter);
        let zeta5 = Ball { re: cos72.re.clone(), im: sin72.re.clone(), rad: &cos72.rad + &sin72.rad, prec: q };
        let s3 = Ball::sqrt_int(3, q);
        let zeta3_conj = Ball { re: -(BigInt::one() << (q - 1)), im: -(&s3.re >> 1u32), rad: &s3.rad + 2u32, prec: q };
        zeta5.times(&zeta5).times(&zeta3_conj).at_prec(p)
    }

    /// The `branch`-th root of zⁿ = c: Newton from a double-precision seed at
    /// argument (arg c + 2π·branch)/n, then certified with the disk bound
    /// |z − root| ≤ n·|f(z)|/|f'(z)|.
    pub fn nth_root(c: &Ball, n: u32, branch: u32, p: u32) -> Result<Ball, NumericError> {
        assert!(n >= 1);
        if c.contains_zero() {
            return Err(NumericError::BallContainsZero);
        }
        let (cr, ci) = c.to_f64();
        let modulus = cr.hypot(ci).powf(1.0 / n as f64);
        let ang = (ci.atan2(cr) + 2.0 * std::f64::consts::PI * branch as f64) / n as f64;
        let mut z = Ball::from_f64_parts(modulus * ang.cos(), modulus * ang.sin(), p).midpoint();
        let cm = c.midpoint().at_prec(p);
        let nb = Ball::exact_int(n as i64);
        let mut iters = 0;
        let mut bits = 40u32;
        while bits < p + 8 && iters < 64 {
            let zn1 = z.pow(n - 1);
            let f = zn1.times(&z).minus(&cm);
            let df = zn1.times(&nb);
            let step = f.times(&df.checked_inverse()?.midpoint());
            z = z.minus(&step).midpoint().at_prec(p).midpoint();
            bits *= 2;
            iters += 1;
        }
        // two cleanup steps absorb rounding
        for _ in 0..2 {
            let zn1 = z.pow(n - 1);
            let f = zn1.times(&z).minus(&cm);
            let df = zn1.times(&nb);
            let step = f.times(&df.checked_inverse()?.midpoint());
            z = z.minus(&step).midpoint().at_prec(p).midpoint();
        }
        let zn1 = z.pow(n - 1);
        let f = zn1.times(&z).minus(c);
        let df = zn1.times(&nb);
        let fl = df.abs_lower();
        if Zero::is_zero(&fl) {
            return Err(NumericError::BallContainsZero);
        }
        let bound = Rational::from_integer(BigInt::from(n)) * f.abs_upper() / fl;
        let ulps = (bound * Rational::from_integer(BigInt::one() << p)).ceil().to_integer() + 1u32;
        Ok(Ball { rad: ulps, ..z.at_prec(p) })
    }

    pub fn sqrt(c: &Ball, branch: u32, p: u32) -> Result<Ball, NumericError> {
        Ball::nth_root(c, 2, branch, p)
    }
}

impl Ring for Ball {
    fn zero() -> Self {
        Ball::exact_int(0)
    }
    fn one() -> Self {
        Ball::exact_int(1)
    }
    /// Only the exact zero ball counts as zero.
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let (a, b) = (self.at_prec(p), o.at_prec(p));
        Ball { re: a.re + b.re, im: a.im + b.im, rad: a.rad + b.rad, prec: p }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let (a, b) = (self.at_prec(p), o.at_prec(p));
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        let prop = l1(&a.re, &a.im) * &b.rad + l1(&b.re, &b.im) * &a.rad + &a.rad * &b.rad;
        let exact = prop.is_zero() && (re.clone() % (BigInt::one() << p)).is_zero() && (im.clone() % (BigInt::one() << p)).is_zero();
        let rad = if exact { BigInt::zero() } else { ceil_shr(&prop, p) + 2u32 };
        Ball { re: re >> p, im: im >> p, rad, prec: p }
    }
    fn negate(&self) -> Self {
        Ball { re: -&self.re, im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }
    fn from_rational(q: &Rational) -> Self {
        let d = q.denom();
        if d.sign() == Sign::Plus && (d & (d - 1u32)).is_zero() {
            let k = d.bits() as u32 - 1;
            return Ball { re: q.numer().clone(), im: BigInt::zero(), rad: BigInt::zero(), prec: k };
        }
        Ball::from_rational_prec(q, DEFAULT_PREC)
    }
    fn from_int(n: i64) -> Self {
        Ball::exact_int(n)
    }
}

impl Field for Ball {
    fn inverse(&self) -> Option<Self> {
        self.checked_inverse().ok()
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        match self.radius_log2() {
            None => write!(f, "{re:.17} + {im:.17}i"),
            Some(l) => write!(f, "{re:.17} + {im:.17}i ± 2^{l}"),
        }
    }
}

/// Units mod 15; embedding e sends ζ to e^{2πi·k/15} with k = UNITS[e % 8].
pub const UNITS_MOD_15: [i64; 8] = [1, 2, 4, 7, 8, 11, 13, 14];

/// Number of distinct complex embeddings of a radical tower.
pub const TOWER_EMBEDDINGS: usize = 40;

fn zeta_powers(embedding: usize, p: u32) -> Vec<Ball> {
    let k = UNITS_MOD_15[embedding % 8];
    let z = Ball::zeta15(p).pow(k as u32);
    let mut out = Vec::with_capacity(8);
    let mut cur = Ball::one();
    for _ in 0..8 {
        out.push(cur.clone());
        cur = cur.times(&z).at_prec(p);
    }
    out
}

fn embed_cyclo_with(x: &Cyclo, powers: &[Ball], p: u32) -> Ball {
    x.coeffs()
        .iter()
        .zip(powers)
        .filter(|(c, _)| !Zero::is_zero(*c))
        .fold(Ball::zero(), |acc, (c, z)| acc.plus(&Ball::from_rational_prec(c, p).times(z)))
        .at_prec(p)
}

/// Rigorous enclosure of the image of `x` under embedding `embedding`
/// (ζ ↦ e^{2πik/15} with k = UNITS_MOD_15[e % 8], r ↦ the ⌊e/8⌋-th fifth
/// root of the embedded radicand). The radius is below 2^(−precision_bits)
/// for values of moderate size.
pub fn embed_complex(x: &Tower, embedding: usize, precision_bits: u32) -> Result<Ball, NumericError> {
    let p = precision_bits + 32;
    let powers = zeta_powers(embedding, p);
    let Some(c) = x.radicand() else {
        return Ok(embed_cyclo_with(&x.coeffs()[0], &powers, p));
    };
    let ce = embed_cyclo_with(c, &powers, p + 16);
    let r = Ball::nth_root(&ce, 5, ((embedding / 8) % 5) as u32, p + 16)?;
    let mut acc = Ball::zero();
    let mut rp = Ball::one();
    for coeff in x.coeffs() {
        if !coeff.is_zero() {
            acc = acc.plus(&embed_cyclo_with(coeff, &powers, p).times(&rp));
        }
        rp = rp.times(&r).at_prec(p + 16);
    }
    Ok(acc.at_prec(p))
}

impl Ball {
    pub fn embed(x: &Tower, embedding: usize, precision_bits: u32) -> Result<Ball, NumericError> {
        embed_complex(x, embedding, precision_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{radical_adjoin, rat};

    fn tight(b: &Ball, bits: i64) -> bool {
        b.radius_log2().map_or(true, |l| l <= -bits)
    }

    #[test]
    fn zeta15_has_order_fifteen() {
        let z = Ball::zeta15(200);
        let z15 = z.pow(15);
        assert!(z15.contains(&rat(1, 1), &rat(0, 1)));
        assert!(tight(&z15, 180));
    }

    #[test]
    fn xi_embeds_to_cube_root() {
        let xi = embed_complex(&Tower::from(Cyclo::xi()), 0, 128).unwrap();
        let (re, im) = xi.to_f64();
        assert!((re + 0.5).abs() < 1e-15);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(tight(&xi, 128));
    }

    #[test]
    fn mu_embeds_to_fifth_root() {
        let mu = embed_complex(&Tower::from(Cyclo::mu()), 0, 128).unwrap();
        let (re, im) = mu.to_f64();
        let a = 2.0 * std::f64::consts::PI / 5.0;
        assert!((re - a.cos()).abs() < 1e-15 && (im - a.sin()).abs() < 1e-15);
    }

    #[test]
    fn radical_modulus() {
        let tw = radical_adjoin(Cyclo::from_rational(&rat(27, 2))).unwrap();
        for e in [0, 9, 17, 39] {
            let a = embed_complex(&tw.root(), e, 128).unwrap();
            let a5 = a.pow(5);
            assert!(a5.contains(&rat(27, 2), &rat(0, 1)), "embedding {e}");
            assert!(tight(&a5, 120));
        }
    }

    #[test]
    fn inverse_and_roots() {
        let x = Ball::from_rational_prec(&rat(3, 1), 128).plus(&Ball::i().times(&Ball::exact_int(4)));
        let y = x.checked_inverse().unwrap();
        assert!(x.times(&y).contains(&rat(1, 1), &rat(0, 1)));
        let s = Ball::sqrt(&Ball::exact_int(-4), 0, 128).unwrap();
        assert!(s.contains(&rat(0, 1), &rat(2, 1)));
        assert!(Ball::zero().checked_inverse().is_err());
    }
}
