use std::fmt;

/// A polynomial variable.
///
/// Identifiers come from one fixed table so that polynomials built in
/// different modules share names:
///
/// | ids    | names          |
/// |--------|----------------|
/// | 0–4    | `u0`…`u4`      |
/// | 5–9    | `y0`…`y4`      |
/// | 10–14  | `x0`…`x4`      |
/// | 15–19  | `v0`…`v4`      |
/// | 20–24  | `z0`…`z4`      |
/// | 25–30  | `t` `w` `a` `b` `alpha` `beta` |
/// | 31–40  | `p01` `p02` `p03` `p04` `p12` `p13` `p14` `p23` `p24` `p34` |
/// | 41–    | `q0`, `q1`, … (auxiliary symbols) |
///
/// Smaller ids are more significant in the graded-lex monomial order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u16);

const FIXED: [&str; 41] = [
    "u0", "u1", "u2", "u3", "u4", "y0", "y1", "y2", "y3", "y4", "x0", "x1", "x2", "x3", "x4", "v0", "v1", "v2",
    "v3", "v4", "z0", "z1", "z2", "z3", "z4", "t", "w", "a", "b", "alpha", "beta", "p01", "p02", "p03", "p04",
    "p12", "p13", "p14", "p23", "p24", "p34",
];

impl Var {
    pub const T: Var = Var(25);
    pub const W: Var = Var(26);
    pub const A: Var = Var(27);
    pub const B: Var = Var(28);
    pub const ALPHA: Var = Var(29);
    pub const BETA: Var = Var(30);

    pub fn u(i: usize) -> Var {
        assert!(i < 5);
        Var(i as u16)
    }
    pub fn y(i: usize) -> Var {
        assert!(i < 5);
        Var(5 + i as u16)
    }
    pub fn x(i: usize) -> Var {
        assert!(i < 5);
        Var(10 + i as u16)
    }
    pub fn v(i: usize) -> Var {
        assert!(i < 5);
        Var(15 + i as u16)
    }
    pub fn z(i: usize) -> Var {
        assert!(i < 5);
        Var(20 + i as u16)
    }

    /// Plücker variable p_ij for i < j (or p_ji with the sign left to the
    /// caller when i > j).
    pub fn p(i: usize, j: usize) -> Var {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(j < 5 && i != j);
        let idx = match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (0, 4) => 3,
            (1, 2) => 4,
            (1, 3) => 5,
            (1, 4) => 6,
            (2, 3) => 7,
            (2, 4) => 8,
            _ => 9,
        };
        Var(31 + idx)
    }

    pub fn aux(k: usize) -> Var {
        Var(41 + k as u16)
    }

    pub fn us() -> [Var; 5] {
        std::array::from_fn(Var::u)
    }

    pub fn ys() -> [Var; 5] {
        std::array::from_fn(Var::y)
    }

    pub fn zs() -> [Var; 5] {
        std::array::from_fn(Var::z)
    }

    pub fn name(self) -> String {
        match FIXED.get(self.0 as usize) {
            Some(n) => (*n).to_string(),
            None => format!("q{}", self.0 - 41),
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        if let Some(i) = FIXED.iter().position(|n| *n == s) {
            return Some(Var(i as u16));
        }
        s.strip_prefix('q').and_then(|k| k.parse::<u16>().ok()).map(|k| Var(41 + k))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in 0..60u16 {
            let v = Var(id);
            assert_eq!(Var::parse(&v.name()), Some(v));
        }
        assert_eq!(Var::p(3, 1), Var::p(1, 3));
        assert_eq!(Var::p(2, 4).name(), "p24");
    }
}
