use serde_json::Value;

use crate::numeric::{
    rational_from_json, rational_to_json, Ball, Cyclo, NumericError, Rational, Ring, Tower,
};

/// What a polynomial needs from its coefficients beyond ring arithmetic:
/// printing and JSON.
pub trait Coefficient: Ring {
    /// The rational value if the coefficient is rational; used to print
    /// signs and omit unit coefficients.
    fn as_rational(&self) -> Option<Rational>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, NumericError>;
    fn render(&self) -> String;
}

impl Coefficient for Rational {
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, NumericError> {
        rational_from_json(v)
    }
    fn render(&self) -> String {
        crate::numeric::rational::fmt_rational(self)
    }
}

impl Coefficient for Cyclo {
    fn as_rational(&self) -> Option<Rational> {
        Cyclo::as_rational(self)
    }
    fn to_json(&self) -> Value {
        Cyclo::to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, NumericError> {
        Cyclo::from_json(v)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for Tower {
    fn as_rational(&self) -> Option<Rational> {
        Tower::as_rational(self)
    }
    fn to_json(&self) -> Value {
        Tower::to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, NumericError> {
        Tower::from_json(v)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for Ball {
    fn as_rational(&self) -> Option<Rational> {
        (self.radius_log2().is_none() && num_traits::Zero::is_zero(&self.im_mid())).then(|| self.re_mid())
    }
    fn to_json(&self) -> Value {
        serde_json::json!({
            "re": rational_to_json(&self.re_mid()),
            "im": rational_to_json(&self.im_mid()),
            "radius": rational_to_json(&self.radius()),
        })
    }
    fn from_json(_: &Value) -> Result<Self, NumericError> {
        Err(NumericError::Parse("balls are output-only".into()))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
