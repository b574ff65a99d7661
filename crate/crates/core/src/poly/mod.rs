//! Sparse multivariate polynomials in canonical graded-lex form.

mod coeff;
mod monomial;
pub mod symmetric;
mod var;

pub use coeff::Coefficient;
pub use monomial::{Monomial, DEGREE_CAP};
pub use symmetric::{
    elementary_symmetric, g_poly, g_product, sigma_weighted, vandermonde_delta, SymmetricError,
};
pub use var::Var;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::Value;

use crate::numeric::{Field, NumericError, NonzeroTest, Rational, Ring, Scalar, Tower};

/// Polynomials over the default coefficient domain.
pub type SparsePoly = Poly<Tower>;

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<R> {
    terms: BTreeMap<Monomial, R>,
}

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 20_000;

impl<R: Ring> Poly<R> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }

    pub fn rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), R::one())
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Monomial::one())
    }

    /// Largest term in the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.negate());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.times(c))))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &R) -> Self {
        Poly::from_terms(self.terms.iter().map(|(n, x)| (n.mul(m), x.times(c))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() * big.len() < PAR_THRESHOLD {
            return Self::mul_serial(small.terms.iter(), big);
        }
        let left: Vec<(&Monomial, &R)> = small.terms.iter().collect();
        let chunk = left.len().div_ceil(rayon::current_num_threads().max(1) * 2).max(1);
        let partials: Vec<HashMap<Monomial, R>> = left
            .par_chunks(chunk)
            .map(|ch| Self::mul_accumulate(ch.iter().copied(), big))
            .collect();
        let mut acc: HashMap<Monomial, R> = HashMap::new();
        for part in partials {
            for (m, c) in part {
                match acc.get_mut(&m) {
                    Some(x) => *x = x.plus(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn mul_accumulate<'a>(
        left: impl Iterator<Item = (&'a Monomial, &'a R)>,
        big: &Self,
    ) -> HashMap<Monomial, R>
    where
        R: 'a,
    {
        let mut acc: HashMap<Monomial, R> = HashMap::new();
        for (m1, c1) in left {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let c = c1.times(c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.plus(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc
    }

    fn mul_serial<'a>(left: impl Iterator<Item = (&'a Monomial, &'a R)>, big: &Self) -> Self
    where
        R: 'a,
    {
        let acc = Self::mul_accumulate(left, big);
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn product<'a>(it: impl IntoIterator<Item = &'a Poly<R>>) -> Self
    where
        R: 'a,
    {
        it.into_iter().fold(Poly::one(), |acc, p| acc.mul(p))
    }

    pub fn sum<'a>(it: impl IntoIterator<Item = &'a Poly<R>>) -> Self
    where
        R: 'a,
    {
        it.into_iter().fold(Poly::zero(), |acc, p| acc.add(p))
    }

    pub fn derivative(&self, v: Var) -> Self {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, e) = m.without(v);
            (e > 0).then(|| {
                let m2 = rest.mul(&Monomial::from_pairs([(v, e - 1)]));
                (m2, c.times(&R::from_int(e as i64)))
            })
        }))
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly<R>>) -> Self {
        let mut powers: HashMap<(Var, u16), Poly<R>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match map.get(&v) {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e as u32)).clone();
                        factor = factor.mul(&pw);
                    }
                }
            }
            let rest = Monomial::from_pairs(kept);
            out = out.add(&factor.mul_monomial(&rest, &R::one()));
        }
        out
    }

    pub fn substitute_var(&self, v: Var, p: &Poly<R>) -> Self {
        self.substitute(&BTreeMap::from([(v, p.clone())]))
    }

    /// Substitutes constants for variables.
    pub fn eval(&self, values: &BTreeMap<Var, R>) -> Self {
        let map = values.iter().map(|(v, c)| (*v, Poly::constant(c.clone()))).collect();
        self.substitute(&map)
    }

    /// Evaluates completely; panics if a variable is left unassigned.
    pub fn eval_full(&self, values: &BTreeMap<Var, R>) -> R {
        let p = self.eval(values);
        assert!(p.terms.keys().all(Monomial::is_one), "eval_full left free variables: {:?}", p.vars());
        p.constant_term()
    }

    /// Renames variables; `f` must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Applies a permutation given as pairs (from, to).
    pub fn permute(&self, pairs: &[(Var, Var)]) -> Self {
        self.rename(|v| pairs.iter().find(|p| p.0 == v).map_or(v, |p| p.1))
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Homogeneous degree, or `None` when terms of different degrees occur
    /// (the zero polynomial counts as homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Some(0) };
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Homogeneity with respect to the listed variables only.
    pub fn is_homogeneous_in(&self, vars: &[Var]) -> bool {
        let deg = |m: &Monomial| vars.iter().map(|&v| m.exponent(v) as u32).sum::<u32>();
        let mut it = self.terms.keys().map(deg);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Collects coefficients with respect to `v`: index k holds the
    /// coefficient of vᵏ.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly<R>> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }
}

impl<R: Ring + PartialEq> Poly<R> {
    /// Invariance under every permutation of `vars`, checked on the
    /// generators (v₀ v₁) and (v₀ v₁ … v_{n−1}) of the symmetric group.
    pub fn is_symmetric(&self, vars: &[Var]) -> bool {
        if vars.len() < 2 {
            return true;
        }
        let swap = self.permute(&[(vars[0], vars[1]), (vars[1], vars[0])]);
        if &swap != self {
            return false;
        }
        let n = vars.len();
        let cycle: Vec<(Var, Var)> = (0..n).map(|i| (vars[i], vars[(i + 1) % n])).collect();
        &self.permute(&cycle) == self
    }

    /// Whether swapping any two of `vars` negates the polynomial.
    pub fn is_antisymmetric(&self, vars: &[Var]) -> bool {
        if vars.len() < 2 {
            return true;
        }
        let swap = self.permute(&[(vars[0], vars[1]), (vars[1], vars[0])]);
        if swap != self.neg() {
            return false;
        }
        let n = vars.len();
        let cycle: Vec<(Var, Var)> = (0..n).map(|i| (vars[i], vars[(i + 1) % n])).collect();
        let sign_even = n % 2 == 1;
        let c = self.permute(&cycle);
        if sign_even {
            c == *self
        } else {
            c == self.neg()
        }
    }
}

impl<R: Field + PartialEq> Poly<R> {
    /// Multivariate division by a single divisor in graded-lex order:
    /// returns (quotient, remainder) with no remainder term divisible by the
    /// divisor's leading monomial. For a principal ideal the remainder is a
    /// canonical normal form.
    pub fn div_rem(&self, d: &Poly<R>) -> (Poly<R>, Poly<R>) {
        let (lm, lc) = d.leading_term().expect("division by the zero polynomial");
        let lc_inv = lc.inverse().expect("leading coefficient must be invertible");
        let lm = lm.clone();
        let mut q = Poly::zero();
        let mut r = Poly::zero();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(f) => {
                    let coef = c.times(&lc_inv);
                    q.add_term(f.clone(), coef.clone());
                    p = p.sub(&d.mul_monomial(&f, &coef));
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        (q, r)
    }

    /// Exact quotient by leading-term peeling, confirmed by multiplying
    /// back; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<R>) -> Option<Poly<R>> {
        let (q, r) = self.div_rem(d);
        (r.is_zero() && &q.mul(d) == self).then_some(q)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly<R> {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inverse().expect("invertible leading coefficient")),
        }
    }
}

impl<R: Coefficient> Poly<R> {
    /// `{"terms": [{"mono": {"u0": 2, …}, "coeff": …}, …]}` in descending
    /// monomial order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: serde_json::Map<String, Value> =
                    m.pairs().iter().map(|&(v, e)| (v.name(), Value::from(e))).collect();
                serde_json::json!({ "mono": mono, "coeff": c.to_json() })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let bad = |m: &str| PolyError::Json(m.to_string());
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Poly::zero();
        for t in terms {
            let mono = t.get("mono").and_then(Value::as_object).ok_or_else(|| bad("missing mono"))?;
            let mut pairs = Vec::new();
            for (name, e) in mono {
                let var = Var::parse(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                let e = e.as_u64().filter(|&e| e <= DEGREE_CAP as u64).ok_or_else(|| bad("bad exponent"))?;
                pairs.push((var, e as u16));
            }
            let c = R::from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

impl<R: Coefficient> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = crate::numeric::rational::is_negative(&q);
                    let mag = crate::numeric::rational::fmt_rational(&if neg { -q } else { q });
                    (neg, mag)
                }
                None => (false, format!("({})", c.render())),
            };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let term = if m.is_one() {
                body
            } else if body == "1" {
                m.to_string()
            } else {
                format!("{body}*{m}")
            };
            write!(f, "{sep}{term}")?;
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Coefficient> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_rational(q: &Rational) -> Self {
        Poly::rational(q)
    }
}

impl<R: Coefficient + Scalar> Scalar for Poly<R> {
    fn zeta_pow(k: i64) -> Self {
        Poly::constant(R::zeta_pow(k))
    }
}

impl<R: Coefficient> NonzeroTest for Poly<R> {
    fn certainly_nonzero(&self) -> bool {
        !self.terms.is_empty()
    }
}

/// Shorthand constructors used across the crate.
pub fn var<R: Ring>(v: Var) -> Poly<R> {
    Poly::var(v)
}

pub fn konst<R: Ring>(n: i64) -> Poly<R> {
    Poly::int(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    type P = Poly<Rational>;

    fn u(i: usize) -> P {
        Poly::var(Var::u(i))
    }

    #[test]
    fn arithmetic_and_display() {
        let p = u(0).add(&u(1)).pow(2);
        assert_eq!(p.to_string(), "u0^2 + 2*u0*u1 + u1^2");
        let q = p.sub(&u(0).pow(2)).scale(&rat(-1, 2));
        assert_eq!(q.to_string(), "-u0*u1 - 1/2*u1^2");
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = u(0).sub(&u(1).mul(&u(2)));
        let map = BTreeMap::from([(Var::u(0), u(1).mul(&u(2)))]);
        assert!(p.substitute(&map).is_zero());
        let swap = BTreeMap::from([(Var::u(0), u(1)), (Var::u(1), u(0))]);
        let r = u(0).sub(&u(1)).substitute(&swap);
        assert_eq!(r, u(1).sub(&u(0)));
    }

    #[test]
    fn derivative() {
        let p = u(0).pow(3).mul(&u(1));
        assert_eq!(p.derivative(Var::u(0)), u(0).pow(2).mul(&u(1)).scale(&rat(3, 1)));
        assert!(p.derivative(Var::u(2)).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = u(0).add(&u(1));
        let b = u(0).sub(&u(2)).pow(2);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert!(prod.add(&Poly::int(1)).div_exact(&a).is_none());
    }

    #[test]
    fn symmetry_checks() {
        let vars = [Var::u(0), Var::u(1), Var::u(2)];
        let e2 = u(0).mul(&u(1)).add(&u(0).mul(&u(2))).add(&u(1).mul(&u(2)));
        assert!(e2.is_symmetric(&vars));
        assert!(!u(0).is_symmetric(&vars));
        assert!(e2.is_homogeneous());
        assert!(!e2.add(&Poly::int(1)).is_homogeneous());
    }

    #[test]
    fn json_round_trip() {
        let p = u(0).pow(2).scale(&rat(-7, 3)).add(&u(4).mul(&Poly::var(Var::T)));
        let back = P::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn substitute_x_equals_uy() {
        let x = Poly::<Rational>::var(Var::x(2));
        let uy = u(2).mul(&Poly::var(Var::y(2)));
        let p = x.sub(&uy);
        assert!(p.substitute_var(Var::x(2), &uy).is_zero());
    }
}
