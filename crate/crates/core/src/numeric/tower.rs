use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use super::rational::rational_to_json;
use super::{Cyclo, Field, NumericError, Rational, Ring};
use crate::linalg;

/// A degree-5 radical extension ℚ(ζ₁₅)[r]/(r⁵ − c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalTower {
    c: Arc<Cyclo>,
}

/// Adjoins r with r⁵ = c.
pub fn radical_adjoin(c: Cyclo) -> Result<RadicalTower, NumericError> {
    if c.is_zero() {
        return Err(NumericError::ZeroRadicand);
    }
    Ok(RadicalTower { c: Arc::new(c) })
}

impl RadicalTower {
    pub fn radicand(&self) -> &Cyclo {
        &self.c
    }

    /// The adjoined radical r.
    pub fn root(&self) -> Tower {
        let mut coeffs: [Cyclo; 5] = Default::default();
        coeffs[1] = Cyclo::one();
        Tower { radicand: Some(self.c.clone()), coeffs }
    }

    /// Builds Σ cᵢ rⁱ.
    pub fn element(&self, coeffs: [Cyclo; 5]) -> Tower {
        Tower { radicand: Some(self.c.clone()), coeffs }.normalized()
    }
}

/// Element of ℚ(ζ₁₅) or of a single radical tower over it, in the basis
/// 1, r, …, r⁴.
///
/// Elements whose r-coefficients vanish forget their tower, so base-field
/// constants mix freely with any tower. Combining elements of two different
/// towers panics in the `Ring` methods; the `checked_*` methods report
/// [`NumericError::MixedTower`] instead.
#[derive(Clone)]
pub struct Tower {
    radicand: Option<Arc<Cyclo>>,
    coeffs: [Cyclo; 5],
}

impl Tower {
    pub fn from_cyclo(c: Cyclo) -> Self {
        let mut coeffs: [Cyclo; 5] = Default::default();
        coeffs[0] = c;
        Tower { radicand: None, coeffs }
    }

    pub fn coeffs(&self) -> &[Cyclo; 5] {
        &self.coeffs
    }

    pub fn radicand(&self) -> Option<&Cyclo> {
        self.radicand.as_deref()
    }

    pub fn tower(&self) -> Option<RadicalTower> {
        self.radicand.clone().map(|c| RadicalTower { c })
    }

    /// The base-field value, when the element does not involve r.
    pub fn as_cyclo(&self) -> Option<&Cyclo> {
        self.radicand.is_none().then(|| &self.coeffs[0])
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_cyclo().and_then(Cyclo::as_rational)
    }

    fn normalized(mut self) -> Self {
        if self.coeffs[1..].iter().all(Ring::is_zero) {
            self.radicand = None;
        }
        self
    }

    fn join(&self, o: &Self) -> Result<Option<Arc<Cyclo>>, NumericError> {
        match (&self.radicand, &o.radicand) {
            (Some(a), Some(b)) if !Arc::ptr_eq(a, b) && a != b => Err(NumericError::MixedTower),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, NumericError> {
        let radicand = self.join(o)?;
        let coeffs = std::array::from_fn(|i| self.coeffs[i].plus(&o.coeffs[i]));
        Ok(Tower { radicand, coeffs }.normalized())
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, NumericError> {
        self.checked_add(&o.negate())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, NumericError> {
        let radicand = self.join(o)?;
        let mut prod: Vec<Cyclo> = vec![Cyclo::zero(); 9];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].plus(&a.times(b));
                }
            }
        }
        if let Some(c) = &radicand {
            for d in (5..9).rev() {
                let hi = std::mem::take(&mut prod[d]);
                if !hi.is_zero() {
                    prod[d - 5] = prod[d - 5].plus(&hi.times(c));
                }
            }
        }
        let coeffs = std::array::from_fn(|i| std::mem::take(&mut prod[i]));
        Ok(Tower { radicand, coeffs }.normalized())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, NumericError> {
        self.join(o)?;
        if o.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let inv = o.inverse().ok_or(NumericError::NotInvertible)?;
        self.checked_mul(&inv)
    }

    /// Multiplication matrix over ℚ(ζ₁₅) in the basis 1, r, …, r⁴.
    fn mul_matrix(&self) -> Vec<Vec<Cyclo>> {
        let c = self.radicand.as_deref().cloned().unwrap_or_else(Cyclo::one);
        let mut m = vec![vec![Cyclo::zero(); 5]; 5];
        for j in 0..5 {
            // column j holds self·rʲ
            for i in 0..5 {
                let src = (i + 5 - j) % 5;
                let wrapped = i < j;
                let v = &self.coeffs[src];
                m[i][j] = if wrapped { v.times(&c) } else { v.clone() };
            }
        }
        m
    }

    /// `{"tower": null | [8 × ["num","den"]], "coeffs": [["num","den"], …]}`
    /// with 8 coefficient pairs for base-field elements and 40 otherwise.
    pub fn to_json(&self) -> Value {
        let tower = match &self.radicand {
            None => Value::Null,
            Some(c) => c.to_json(),
        };
        let n = if self.radicand.is_some() { 5 } else { 1 };
        let coeffs: Vec<Value> = self.coeffs[..n]
            .iter()
            .flat_map(|c| c.coeffs().iter().map(rational_to_json).collect::<Vec<_>>())
            .collect();
        serde_json::json!({ "tower": tower, "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self, NumericError> {
        let bad = |m: &str| NumericError::Parse(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("field element must be an object"))?;
        let radicand = match obj.get("tower") {
            None | Some(Value::Null) => None,
            Some(t) => Some(Arc::new(Cyclo::from_json(t)?)),
        };
        if radicand.as_deref().is_some_and(Ring::is_zero) {
            return Err(NumericError::ZeroRadicand);
        }
        let flat = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs array"))?;
        let blocks = if radicand.is_some() { 5 } else { 1 };
        if flat.len() != 8 * blocks {
            return Err(bad("coeffs must hold 8 pairs per basis element"));
        }
        let mut coeffs: [Cyclo; 5] = Default::default();
        for (b, chunk) in flat.chunks(8).enumerate() {
            coeffs[b] = Cyclo::from_json(&Value::Array(chunk.to_vec()))?;
        }
        Ok(Tower { radicand, coeffs }.normalized())
    }
}

impl Default for Tower {
    fn default() -> Self {
        Tower::zero()
    }
}

impl From<Cyclo> for Tower {
    fn from(c: Cyclo) -> Self {
        Tower::from_cyclo(c)
    }
}

impl From<Rational> for Tower {
    fn from(q: Rational) -> Self {
        Tower::from_cyclo(Cyclo::from_rational(&q))
    }
}

impl PartialEq for Tower {
    fn eq(&self, o: &Self) -> bool {
        self.radicand == o.radicand && self.coeffs == o.coeffs
    }
}

impl Eq for Tower {}

impl Ring for Tower {
    fn zero() -> Self {
        Tower { radicand: None, coeffs: Default::default() }
    }
    fn one() -> Self {
        Tower::from_cyclo(Cyclo::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }
    fn plus(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed radical towers")
    }
    fn minus(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("mixed radical towers")
    }
    fn times(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed radical towers")
    }
    fn negate(&self) -> Self {
        Tower { radicand: self.radicand.clone(), coeffs: std::array::from_fn(|i| self.coeffs[i].negate()) }
    }
    fn from_rational(q: &Rational) -> Self {
        Tower::from_cyclo(Cyclo::from_rational(q))
    }
}

impl Field for Tower {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.radicand.is_none() {
            return self.coeffs[0].inverse().map(Tower::from_cyclo);
        }
        let m = self.mul_matrix();
        let mut rhs = vec![Cyclo::zero(); 5];
        rhs[0] = Cyclo::one();
        let x = linalg::solve(&m, &rhs)?;
        let coeffs = std::array::from_fn(|i| x[i].clone());
        Some(Tower { radicand: self.radicand.clone(), coeffs }.normalized())
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_none() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*r"),
                _ => format!("({c})*r^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn radical_fifth_power() {
        let tw = radical_adjoin(Cyclo::from_rational(&rat(27, 2))).unwrap();
        let r = tw.root();
        assert_eq!(r.pow(5), Tower::from(rat(27, 2)));
        let a = r.times(&Tower::from(Cyclo::mu()));
        let b = r.times(&Tower::from(Cyclo::mu_pow(4)));
        assert_eq!(a.pow(5).plus(&b.pow(5)), Tower::from_int(27));
    }

    #[test]
    fn inverse_in_tower() {
        let tw = radical_adjoin(Cyclo::from_rational(&rat(128, 3))).unwrap();
        let r = tw.root();
        let x = r.plus(&Tower::from(Cyclo::xi())).times(&r);
        let y = x.inverse().unwrap();
        assert!(x.times(&y).is_one());
    }

    #[test]
    fn degenerate_radicand_has_zero_divisors() {
        let tw = radical_adjoin(Cyclo::one()).unwrap();
        let r = tw.root();
        // r − 1 divides r⁵ − 1 = 0
        let x = r.minus(&Tower::one());
        assert!(x.inverse().is_none());
        assert_eq!(r.pow(5), Tower::one());
    }

    #[test]
    fn mixed_towers_are_rejected() {
        let r1 = radical_adjoin(Cyclo::from_int(2)).unwrap().root();
        let r2 = radical_adjoin(Cyclo::from_int(3)).unwrap().root();
        assert_eq!(r1.checked_add(&r2), Err(NumericError::MixedTower));
        // constants mix with any tower
        assert!(r1.checked_mul(&Tower::from_int(7)).is_ok());
        assert_eq!(Tower::from_int(1).checked_div(&Tower::zero()), Err(NumericError::DivisionByZero));
    }

    #[test]
    fn zero_radicand_rejected() {
        assert_eq!(radical_adjoin(Cyclo::zero()), Err(NumericError::ZeroRadicand));
    }

    #[test]
    fn json_round_trip() {
        let tw = radical_adjoin(Cyclo::from_rational(&rat(27, 2))).unwrap();
        let x = tw.root().pow(3).plus(&Tower::from(Cyclo::xi()));
        let back = Tower::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
        let y = Tower::from(rat(-5, 9));
        assert_eq!(Tower::from_json(&y.to_json()).unwrap(), y);
    }
}
