// Sparse polynomials: arithmetic, substitution, division and the
// symmetric-function helpers.

use dwork::poly::{elementary_symmetric, vandermonde_delta};
use dwork::{Poly, Rational, Var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u: Vec<Var> = (0..3).map(Var::u).collect();
    let e1: Poly<Rational> = elementary_symmetric(1, &u)?;
    let e2: Poly<Rational> = elementary_symmetric(2, &u)?;
    let power_sum = u.iter().fold(Poly::zero(), |acc, v| acc.add(&Poly::var(*v).pow(2)));
    // Newton: p2 = e1^2 - 2 e2
    assert_eq!(power_sum, e1.pow(2).sub(&e2.scale(&Rational::from_integer(2.into()))));
    assert!(power_sum.is_symmetric(&u));

    let delta: Poly<Rational> = vandermonde_delta(&u)?;
    println!("delta(u0,u1,u2) = {delta} ({} terms)", delta.len());

    let x = Poly::<Rational>::var(Var::u(0));
    let (q, r) = x.pow(5).sub(&Poly::one()).div_rem(&x.sub(&Poly::one()));
    assert!(r.is_zero());
    println!("(u0^5 - 1)/(u0 - 1) = {q}");
    Ok(())
}
