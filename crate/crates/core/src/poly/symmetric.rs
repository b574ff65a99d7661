//! Symmetric-function building blocks in the u- and y-variables.

use super::{Poly, Var};
use crate::numeric::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetricError {
    #[error("index {k} out of range for {n} variables")]
    OutOfRange { k: usize, n: usize },
}

/// s_k over exactly the listed variables; s₀ = 1.
pub fn elementary_symmetric<R: Ring>(k: usize, vars: &[Var]) -> Result<Poly<R>, SymmetricError> {
    if k > vars.len() {
        return Err(SymmetricError::OutOfRange { k, n: vars.len() });
    }
    // s_k(vars ∪ {v}) = s_k(vars) + v·s_{k−1}(vars)
    let mut e: Vec<Poly<R>> = vec![Poly::one()];
    for &v in vars {
        let x = Poly::var(v);
        let mut next = e.clone();
        next.push(Poly::zero());
        for j in 1..next.len() {
            next[j] = next[j].add(&x.mul(&e[j - 1]));
        }
        e = next;
    }
    Ok(e.swap_remove(k))
}

/// σ_k = Σᵢ uᵢᵏ yᵢ⁵ over i = 0..4.
pub fn sigma_weighted<R: Ring>(k: usize) -> Result<Poly<R>, SymmetricError> {
    if k > 5 {
        return Err(SymmetricError::OutOfRange { k, n: 5 });
    }
    Ok((0..5).fold(Poly::zero(), |acc, i| {
        acc.add(&Poly::var(Var::u(i)).pow(k as u32).mul(&Poly::var(Var::y(i)).pow(5)))
    }))
}

/// δ = ∏_{j>k} (v_j − v_k) over the listed order.
pub fn vandermonde_delta<R: Ring>(vars: &[Var]) -> Result<Poly<R>, SymmetricError> {
    if vars.len() < 2 {
        return Err(SymmetricError::OutOfRange { k: vars.len(), n: 2 });
    }
    let mut acc = Poly::one();
    for j in 0..vars.len() {
        for k in 0..j {
            acc = acc.mul(&Poly::var(vars[j]).sub(&Poly::var(vars[k])));
        }
    }
    Ok(acc)
}

/// The u-variables with the listed indices removed, in increasing order.
pub fn u_without(omit: &[usize]) -> Vec<Var> {
    (0..5).filter(|i| !omit.contains(i)).map(Var::u).collect()
}

/// g(uʲ) = s₂² − 3s₁s₃ + 12s₄ in the four u-variables other than u_j.
pub fn g_poly<R: Ring>(j: usize) -> Poly<R> {
    let vars = u_without(&[j]);
    let s = |k| elementary_symmetric::<R>(k, &vars).expect("k ≤ 4");
    s(2).pow(2).sub(&s(1).mul(&s(3)).scale(&R::from_int(3))).add(&s(4).scale(&R::from_int(12)))
}

/// G(u) = ∏ⱼ g(uʲ).
pub fn g_product<R: Ring>() -> Poly<R> {
    (0..5).fold(Poly::one(), |acc, j| acc.mul(&g_poly(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    type P = Poly<Rational>;

    #[test]
    fn elementary_examples() {
        let us = Var::us();
        assert_eq!(elementary_symmetric::<Rational>(0, &us).unwrap(), P::one());
        let top = us.iter().fold(P::one(), |acc, &v| acc.mul(&P::var(v)));
        assert_eq!(elementary_symmetric::<Rational>(5, &us).unwrap(), top);
        let e2 = elementary_symmetric::<Rational>(2, &us[2..]).unwrap();
        assert_eq!(e2.to_string(), "u2*u3 + u2*u4 + u3*u4");
        assert!(elementary_symmetric::<Rational>(6, &us).is_err());
    }

    #[test]
    fn vandermonde_two() {
        let d = vandermonde_delta::<Rational>(&[Var::u(0), Var::u(1)]).unwrap();
        assert_eq!(d, P::var(Var::u(1)).sub(&P::var(Var::u(0))));
        assert!(vandermonde_delta::<Rational>(&[Var::u(0)]).is_err());
    }

    #[test]
    fn g_shape() {
        let g = g_poly::<Rational>(0);
        assert_eq!(g.homogeneous_degree(), Some(4));
        assert!(g.is_symmetric(&u_without(&[0])));
        assert!(g.vars().iter().all(|v| *v != Var::u(0)));
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma_weighted::<Rational>(6).is_err());
        let s0 = sigma_weighted::<Rational>(0).unwrap();
        assert_eq!(s0.len(), 5);
    }
}
