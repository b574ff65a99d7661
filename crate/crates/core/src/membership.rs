//! Membership of lines in the Dwork quintics X_t: the pullback of F_t to a
//! line, contact orders, the linear system whose solution inverts the chart
//! map, and the equation of the fiber surface with its factorization.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::identities::p_polynomial;
use crate::lines::{ChartPoint, LineError, ProjLine, ProjPoint};
use crate::linalg;
use crate::numeric::{rat, Ball, Field, NonzeroTest, Rational, Ring};
use crate::poly::{elementary_symmetric, g_product, vandermonde_delta, Coefficient, Poly, Var};

pub const BINOMIAL_5: [i64; 6] = [1, 5, 10, 10, 5, 1];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MembershipError {
    #[error(transparent)]
    Line(#[from] LineError),
    #[error("two chart coordinates coincide; the Vandermonde matrix is singular")]
    SingularVandermonde,
    #[error("chart coordinate u_{0} must be zero")]
    NotInChart(usize),
    #[error("solution has y_{0}^5 = 0, outside the torus")]
    ZeroSector(usize),
    #[error("w = {0} is a branch value: the two factors coincide up to scalar")]
    BranchPoint(String),
    #[error("cannot certify the factor split at this precision")]
    Undecided,
}

/// F_t = Σzⱼ⁵ − 5t·z₀z₁z₂z₃z₄ with t a constant or the formal variable t.
#[derive(Clone)]
pub struct DworkForm<R: Coefficient> {
    t: Poly<R>,
}

impl<R: Coefficient> std::fmt::Debug for DworkForm<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DworkForm(t = {})", self.t)
    }
}

impl<R: Coefficient> DworkForm<R> {
    pub fn formal() -> Self {
        DworkForm { t: Poly::var(Var::T) }
    }

    pub fn at(t: R) -> Self {
        DworkForm { t: Poly::constant(t) }
    }

    pub fn fermat() -> Self {
        DworkForm { t: Poly::zero() }
    }

    pub fn t(&self) -> &Poly<R> {
        &self.t
    }

    /// F_t in the variables z₀…z₄ (and t when formal).
    pub fn polynomial(&self) -> Poly<R> {
        let zs = Var::zs();
        let fermat = zs.iter().fold(Poly::zero(), |acc, &z| acc.add(&Poly::var(z).pow(5)));
        let prod = zs.iter().fold(Poly::one(), |acc, &z| acc.mul(&Poly::var(z)));
        fermat.sub(&prod.mul(&self.t).scale(&R::from_int(5)))
    }

    /// ∂F_t/∂zⱼ.
    pub fn partial_z(&self, j: usize) -> Poly<R> {
        self.polynomial().derivative(Var::z(j))
    }

    /// ∂F_t/∂t = −5·z₀z₁z₂z₃z₄.
    pub fn partial_t(&self) -> Poly<R> {
        Var::zs().iter().fold(Poly::int(-5), |acc, &z| acc.mul(&Poly::var(z)))
    }
}

/// φ*(F_t) split as fermat − 5t·product. Index k holds the coefficient of
/// αᵏβ⁵⁻ᵏ for φ(α:β) = α·x + β·y.
#[derive(Debug, Clone, PartialEq)]
pub struct PullbackSplit<S> {
    pub fermat: [S; 6],
    pub product: [S; 6],
}

impl<S: Ring> PullbackSplit<S> {
    pub fn at(&self, t: &S) -> [S; 6] {
        let five_t = t.times(&S::from_int(5));
        std::array::from_fn(|k| self.fermat[k].minus(&self.product[k].times(&five_t)))
    }

    /// Contained in every fiber: both parts vanish.
    pub fn in_base_locus(&self) -> bool {
        self.fermat.iter().chain(&self.product).all(Ring::is_zero)
    }
}

impl<R: Coefficient> PullbackSplit<R> {
    /// The six coefficients as polynomials in the formal t.
    pub fn formal(&self) -> [Poly<R>; 6] {
        std::array::from_fn(|k| {
            Poly::constant(self.fermat[k].clone())
                .sub(&Poly::var(Var::T).scale(&self.product[k].times(&R::from_int(5))))
        })
    }
}

/// Coefficients of ∏ⱼ(xⱼα + yⱼβ), index = power of α.
fn product_coefficients<S: Ring>(x: &[S; 5], y: &[S; 5]) -> [S; 6] {
    let mut acc: Vec<S> = vec![S::one()];
    for j in 0..5 {
        let mut next = vec![S::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k] = next[k].plus(&c.times(&y[j]));
            next[k + 1] = next[k + 1].plus(&c.times(&x[j]));
        }
        acc = next;
    }
    std::array::from_fn(|k| acc[k].clone())
}

/// Direct expansion of φ*(F_t) for the spanning pair of `l`. The common
/// scalar relating these to the chart form C(5,k)σ_k − 5t·s_k∏y is 1.
pub fn pullback_split<S: Ring>(l: &ProjLine<S>) -> PullbackSplit<S> {
    let (x, y) = (l.x().coords(), l.y().coords());
    let fermat = std::array::from_fn(|k| {
        (0..5).fold(S::zero(), |acc, j| {
            acc.plus(&x[j].pow(k as u32).times(&y[j].pow(5 - k as u32)).times(&S::from_int(BINOMIAL_5[k])))
        })
    });
    PullbackSplit { fermat, product: product_coefficients(x, y) }
}

/// The six coefficients of φ*(F_t) at a given t.
pub fn pullback_coefficients<S: Ring>(l: &ProjLine<S>, t: &S) -> [S; 6] {
    pullback_split(l).at(t)
}

/// The six coefficients with t formal.
pub fn pullback_coefficients_formal<R: Coefficient>(l: &ProjLine<R>) -> [Poly<R>; 6] {
    pullback_split(l).formal()
}

/// Whether the line lies in X_t: exact scalars decide, balls return
/// `None` unless some coefficient is certainly nonzero.
pub fn contained<S: NonzeroTest>(l: &ProjLine<S>, t: &S) -> Option<bool> {
    let c = pullback_coefficients(l, t);
    if c.iter().any(NonzeroTest::certainly_nonzero) {
        Some(false)
    } else if c.iter().all(Ring::is_zero) {
        Some(true)
    } else {
        None
    }
}

/// Order of contact of a line with X_t at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactReport<S> {
    /// Index of the first nonzero coefficient; `None` when the line is
    /// contained.
    pub order: Option<usize>,
    pub contained: bool,
    /// Coefficients of F_t(y + α·q) in α⁰…α⁵ for a second point q of l.
    pub residual_coefficients: [S; 6],
    /// Σ_k (−1)^{5−k} s_{5−k}(u)·c_k / C(5,k) with uⱼ = qⱼ/yⱼ; identically
    /// zero, which is why order ≥ 5 forces containment.
    pub row_relation: S,
}

impl<S: Coefficient> ContactReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "anchor": "pullback-coefficient system",
            "order": self.order,
            "contained": self.contained,
            "residual_coefficients": self.residual_coefficients.iter().map(Coefficient::to_json).collect::<Vec<_>>(),
            "row_relation": self.row_relation.to_json(),
        })
    }
}

/// Contact order of `l` with X_t at `y ∈ l`, where every yⱼ ≠ 0.
pub fn contact_order<S: Field + NonzeroTest + PartialEq>(
    l: &ProjLine<S>,
    y: &ProjPoint<S>,
    t: &S,
) -> Result<ContactReport<S>, LineError> {
    let yc = y.coords();
    if yc.iter().any(Ring::is_zero) {
        return Err(LineError::BasePointOnHyperplane);
    }
    if !l.contains_point(y) {
        return Err(LineError::NotOnLine);
    }
    let q = if ProjLine::new(l.x().clone(), y.clone()).is_ok() { l.x() } else { l.y() };
    // base point y at α = 0: the line α·q + β·y
    let through = ProjLine::new(q.clone(), y.clone())?;
    let c = pullback_coefficients(&through, t);
    let order = c.iter().position(|v| !v.is_zero());
    let u: Vec<S> = (0..5)
        .map(|j| q.coords()[j].times(&yc[j].inverse().expect("nonzero coordinate")))
        .collect();
    let s = elementary_values(&u);
    let row_relation = (0..6).fold(S::zero(), |acc, k| {
        let w = s[5 - k].times(&S::from_rational(&rat(1, BINOMIAL_5[k])));
        let term = w.times(&c[k]);
        if (5 - k) % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) }
    });
    Ok(ContactReport { order, contained: order.is_none(), residual_coefficients: c, row_relation })
}

/// s₀…s₅ of the given values.
fn elementary_values<S: Ring>(u: &[S]) -> Vec<S> {
    let mut e = vec![S::one()];
    for v in u {
        let mut next = e.clone();
        next.push(S::zero());
        for k in 1..next.len() {
            next[k] = next[k].plus(&v.times(&e[k - 1]));
        }
        e = next;
    }
    e
}

/// Solution of the membership system in chart i, normalized by
/// 5t·∏yⱼ = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSystemSolution<S> {
    pub chart: usize,
    pub u: [S; 5],
    /// Y = (y₀⁵ : … : y₄⁵) = M(u)⁻¹·C(u).
    pub y5: [S; 5],
}

impl<S: Field> LineSystemSolution<S> {
    /// w = t⁵ = 1/(5⁵·∏Yⱼ), forced by the normalization.
    pub fn w(&self) -> S {
        let prod = self.y5.iter().fold(S::from_int(3125), |acc, y| acc.times(y));
        prod.inverse().expect("all Y_j are nonzero")
    }

    /// The closed form (−1)ʲ·δ(uʲ)/δ(u)·g(uʲ)/10 for each j.
    pub fn closed_form(&self) -> [S; 5] {
        closed_form_y5(&self.u)
    }

    /// Residuals C(5,k)·σ_k(u,Y) − s_k(u) of the six membership equations
    /// under the normalization; all vanish for a genuine solution.
    pub fn residuals(&self) -> [S; 6] {
        let s = elementary_values(&self.u);
        std::array::from_fn(|k| {
            let sigma = (0..5).fold(S::zero(), |acc, j| acc.plus(&self.u[j].pow(k as u32).times(&self.y5[j])));
            sigma.times(&S::from_int(BINOMIAL_5[k])).minus(&s[k])
        })
    }
}

/// The Vandermonde matrix M_{kj} = u_jᵏ, k, j = 0..4.
pub fn vandermonde_matrix<S: Ring>(u: &[S; 5]) -> Vec<Vec<S>> {
    (0..5).map(|k| u.iter().map(|x| x.pow(k as u32)).collect()).collect()
}

/// The right-hand side C(u) = (s₀, s₁/5, s₂/10, s₃/10, s₄/5).
pub fn rhs_vector<S: Ring>(u: &[S; 5]) -> Vec<S> {
    let s = elementary_values(u);
    (0..5).map(|k| s[k].times(&S::from_rational(&rat(1, BINOMIAL_5[k])))).collect()
}

fn closed_form_y5<S: Field>(u: &[S; 5]) -> [S; 5] {
    let delta = |idx: &[usize]| -> S {
        let mut acc = S::one();
        for (a, &j) in idx.iter().enumerate() {
            for &k in &idx[..a] {
                acc = acc.times(&u[j].minus(&u[k]));
            }
        }
        acc
    };
    let all: Vec<usize> = (0..5).collect();
    let d = delta(&all).inverse().expect("distinct coordinates");
    std::array::from_fn(|j| {
        let rest: Vec<usize> = (0..5).filter(|&m| m != j).collect();
        let vals: Vec<S> = rest.iter().map(|&m| u[m].clone()).collect();
        let s = elementary_values(&vals);
        let g = s[2].pow(2).minus(&s[1].times(&s[3]).times(&S::from_int(3))).plus(&s[4].times(&S::from_int(12)));
        let sign = if j % 2 == 0 { S::one() } else { S::from_int(-1) };
        sign.times(&delta(&rest)).times(&d).times(&g).times(&S::from_rational(&rat(1, 10)))
    })
}

/// γⁱ: solves M(u)·Y = C(u) for a chart point with uᵢ = 0.
pub fn solve_line_system<S: Field + PartialEq>(
    chart: usize,
    u: &[S; 5],
) -> Result<LineSystemSolution<S>, MembershipError> {
    assert!(chart < 5);
    if !u[chart].is_zero() {
        return Err(MembershipError::NotInChart(chart));
    }
    for a in 0..5 {
        for b in 0..a {
            if u[a] == u[b] {
                return Err(MembershipError::SingularVandermonde);
            }
        }
    }
    let y = linalg::solve(&vandermonde_matrix(u), &rhs_vector(u)).ok_or(MembershipError::SingularVandermonde)?;
    if let Some(j) = y.iter().position(Ring::is_zero) {
        return Err(MembershipError::ZeroSector(j));
    }
    Ok(LineSystemSolution { chart, u: u.clone(), y5: std::array::from_fn(|j| y[j].clone()) })
}

/// A literal line realizing a chart solution numerically: yⱼ is the
/// principal fifth root of Yⱼ, xⱼ = uⱼyⱼ, and t = 1/(5∏yⱼ).
pub fn realize_numeric(sol: &LineSystemSolution<Rational>, prec: u32) -> Result<(ProjLine<Ball>, ProjPoint<Ball>, Ball), MembershipError> {
    let mut y = Vec::with_capacity(5);
    for v in &sol.y5 {
        let b = Ball::from_rational_prec(v, prec + 16);
        y.push(Ball::nth_root(&b, 5, 0, prec + 16).map_err(|_| MembershipError::Undecided)?);
    }
    let y: [Ball; 5] = std::array::from_fn(|j| y[j].clone());
    let x: [Ball; 5] = std::array::from_fn(|j| Ball::from_rational(&sol.u[j]).times(&y[j]));
    let prod = y.iter().fold(Ball::from_int(5), |acc, v| acc.times(v));
    let t = prod.inverse().ok_or(MembershipError::Undecided)?;
    let yp = ProjPoint::new(y)?;
    let line = ProjLine::new(ProjPoint::new(x)?, yp.clone())?;
    Ok((line, yp, t))
}

/// Does the numeric chart point match the exact u as points of ℙ³? Every
/// cross product cp_j·u_m − cp_m·u_j must contain zero, with the pivot
/// coordinate certified nonzero.
pub fn chart_matches(cp: &ChartPoint<Ball>, u: &[Rational; 5]) -> bool {
    let Some(m) = u.iter().position(|q| !num_traits::Zero::is_zero(q)) else {
        return false;
    };
    let um = Ball::from_rational(&u[m]);
    cp.u[m].certainly_nonzero()
        && (0..5).all(|j| cp.u[j].times(&um).minus(&cp.u[m].times(&Ball::from_rational(&u[j]))).contains_zero())
}

/// The surface δ²(u) = (w/2⁵)·∏ⱼg(uʲ) in ℙ³ (after setting uᵢ = 0 it is
/// the image of the fiber over w = t⁵).
#[derive(Debug, Clone)]
pub struct FiberSurfaceEq {
    /// w as a constant or the formal variable w.
    pub w: Poly<Rational>,
    pub lhs: Poly<Rational>,
    pub rhs: Poly<Rational>,
}

impl FiberSurfaceEq {
    pub fn equation(&self) -> Poly<Rational> {
        self.lhs.sub(&self.rhs)
    }

    /// The same equation rewritten as (1 − 3w/2⁷)δ² − (w/2⁵)P², using
    /// ∏g(uʲ) = P² + ¾δ².
    pub fn factored_form(&self) -> Poly<Rational> {
        let d2 = delta_squared();
        let p2 = p_polynomial().pow(2);
        let a2 = Poly::one().sub(&self.w.scale(&rat(3, 128)));
        a2.mul(&d2).sub(&self.w.scale(&rat(1, 32)).mul(&p2))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "anchor": "fiber surface delta^2 = (w/32)*G",
            "w": self.w.to_string(),
            "lhs_terms": self.lhs.len(),
            "rhs_terms": self.rhs.len(),
            "lhs_degree": self.lhs.homogeneous_degree(),
        })
    }
}

fn delta_squared() -> Poly<Rational> {
    vandermonde_delta::<Rational>(&Var::us()).expect("five variables").pow(2)
}

/// `None` for the formal w.
pub fn fiber_surface_equation(w: Option<&Rational>) -> FiberSurfaceEq {
    let w = match w {
        Some(v) => Poly::constant(v.clone()),
        None => Poly::var(Var::W),
    };
    let rhs = g_product::<Rational>().mul(&w.scale(&rat(1, 32)));
    FiberSurfaceEq { w, lhs: delta_squared(), rhs }
}

/// The two factors √(1 − 3w/2⁷)·δ ∓ √(w/2⁵)·P over the quadratic
/// extension generated by the symbols A = q0 and B = q1 with
/// A² = 1 − 3w/2⁷ and B² = w/2⁵.
#[derive(Debug, Clone)]
pub struct FiberFactors {
    pub factors: [Poly<Rational>; 2],
    pub relations: [Poly<Rational>; 2],
}

pub fn sqrt_symbols() -> (Var, Var) {
    (Var::aux(0), Var::aux(1))
}

impl FiberFactors {
    /// Product of the factors reduced by the relations.
    pub fn reduced_product(&self) -> Poly<Rational> {
        let prod = self.factors[0].mul(&self.factors[1]);
        let (_, r) = prod.div_rem(&self.relations[0]);
        let (_, r) = r.div_rem(&self.relations[1]);
        r
    }
}

fn is_branch_value(w: &Rational) -> bool {
    num_traits::Zero::is_zero(w) || *w == rat(128, 3)
}

/// Formal factorization of the fiber equation. Fails at w = 0 and
/// w = 2⁷/3, where the factors agree up to scalar.
pub fn fiber_factorization(w: Option<&Rational>) -> Result<FiberFactors, MembershipError> {
    if let Some(v) = w {
        if is_branch_value(v) {
            return Err(MembershipError::BranchPoint(crate::numeric::rational::fmt_rational(v)));
        }
    }
    let wp = match w {
        Some(v) => Poly::constant(v.clone()),
        None => Poly::var(Var::W),
    };
    let (a, b) = sqrt_symbols();
    let delta = vandermonde_delta::<Rational>(&Var::us()).expect("five variables");
    let p = p_polynomial();
    let ad = delta.mul(&Poly::var(a));
    let bp = p.mul(&Poly::var(b));
    let rel_a = Poly::var(a).pow(2).sub(&Poly::one()).add(&wp.scale(&rat(3, 128)));
    let rel_b = Poly::var(b).pow(2).sub(&wp.scale(&rat(1, 32)));
    Ok(FiberFactors { factors: [ad.sub(&bp), ad.add(&bp)], relations: [rel_a, rel_b] })
}

/// Numeric factors for a ball-valued w; both square roots must be
/// certified nonzero, which certifies two distinct components.
pub fn fiber_factorization_numeric(w: &Ball, prec: u32) -> Result<[Poly<Ball>; 2], MembershipError> {
    let a2 = Ball::one().minus(&w.times(&Ball::from_rational(&rat(3, 128))));
    let b2 = w.times(&Ball::from_rational(&rat(1, 32)));
    if !a2.certainly_nonzero() || !b2.certainly_nonzero() {
        return Err(MembershipError::BranchPoint(format!("{w}")));
    }
    let a = Ball::sqrt(&a2, 0, prec).map_err(|_| MembershipError::Undecided)?;
    let b = Ball::sqrt(&b2, 0, prec).map_err(|_| MembershipError::Undecided)?;
    let delta = vandermonde_delta::<Rational>(&Var::us()).expect("five variables").map_coeffs(Ball::from_rational);
    let p = p_polynomial().map_coeffs(Ball::from_rational);
    let ad = delta.scale(&a);
    let bp = p.scale(&b);
    Ok([ad.sub(&bp), ad.add(&bp)])
}

/// Evaluates the chart polynomial of the fiber surface at u.
pub fn fiber_residual(eq: &FiberSurfaceEq, u: &[Rational; 5]) -> Rational {
    let vals: BTreeMap<Var, Rational> = (0..5).map(|j| (Var::u(j), u[j].clone())).collect();
    eq.equation().eval_full(&vals)
}

/// All six s_k(u) for symbolic u, used by the row relation.
pub fn symbolic_elementary() -> Vec<Poly<Rational>> {
    (0..=5).map(|k| elementary_symmetric(k, &Var::us()).expect("k ≤ 5")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Cyclo;

    fn cl(x: [i64; 5], y: [i64; 5]) -> ProjLine<Cyclo> {
        ProjLine::new(ProjPoint::from_ints(x).unwrap(), ProjPoint::from_ints(y).unwrap()).unwrap()
    }

    #[test]
    fn crossing_line_in_base_locus() {
        let l = cl([1, 0, -1, 0, 0], [0, 1, 0, -1, 0]);
        assert!(pullback_split(&l).in_base_locus());
        assert!(pullback_coefficients_formal(&l).iter().all(|p| p.is_zero()));
    }

    #[test]
    fn van_geemen_conditions_from_expansion() {
        // with a, b formal the α⁵ and α²β³ coefficients are the two conditions
        type P = Poly<Cyclo>;
        let (a, b) = (P::var(Var::A), P::var(Var::B));
        let xi = |k| P::constant(Cyclo::xi_pow(k));
        let x = [P::one(), P::one(), P::one(), a.clone(), b.clone()];
        let y = [xi(2), xi(1), P::one(), P::zero(), P::zero()];
        let l = ProjLine::from_coords(x, y).unwrap();
        let c = pullback_coefficients(&l, &P::var(Var::T));
        let ab = a.mul(&b);
        let t_ab = P::var(Var::T).mul(&ab).scale(&Cyclo::from_int(5));
        assert_eq!(c[5], P::int(3).add(&a.pow(5)).add(&b.pow(5)).sub(&t_ab));
        assert_eq!(c[2], P::int(30).sub(&t_ab));
        assert!([0, 1, 3, 4].iter().all(|&k| c[k].is_zero()));
    }

    #[test]
    fn contact_row_relation_vanishes() {
        let l = ProjLine::<Rational>::from_coords([1, 2, -3, 4, 1].map(Rational::from_int), [2, 1, 1, -1, 3].map(Rational::from_int)).unwrap();
        let r = contact_order(&l, l.y(), &rat(7, 3)).unwrap();
        assert!(r.row_relation.is_zero());
        assert!(!r.contained);
    }

    #[test]
    fn line_system_closed_form() {
        let u = [0, 1, 3, -2, 5].map(Rational::from_int);
        let sol = solve_line_system(0, &u).unwrap();
        assert_eq!(sol.y5, sol.closed_form());
        assert!(sol.residuals().iter().all(|r| num_traits::Zero::is_zero(r)));
        let bad = [0, 1, 1, -2, 5].map(Rational::from_int);
        assert_eq!(solve_line_system(0, &bad).unwrap_err(), MembershipError::SingularVandermonde);
    }

    #[test]
    fn branch_values_rejected() {
        assert!(matches!(fiber_factorization(Some(&rat(128, 3))), Err(MembershipError::BranchPoint(_))));
        assert!(matches!(fiber_factorization(Some(&rat(0, 1))), Err(MembershipError::BranchPoint(_))));
    }
}
