use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// Largest exponent allowed for a single variable.
pub const DEGREE_CAP: u16 = 64;

/// A power product, stored as (variable, exponent) pairs sorted by variable
/// with no zero exponents.
///
/// Ordered graded-lexicographically: higher total degree first, ties broken
/// by the exponent of the most significant (smallest-id) variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u16)>) -> Self {
        let mut v: Vec<(Var, u16)> = Vec::new();
        for (var, e) in pairs {
            if e == 0 {
                continue;
            }
            match v.iter_mut().find(|(x, _)| *x == var) {
                Some(slot) => slot.1 += e,
                None => v.push((var, e)),
            }
        }
        v.sort_by_key(|p| p.0);
        for &(_, e) in &v {
            assert!(e <= DEGREE_CAP, "exponent exceeds the per-variable cap of {DEGREE_CAP}");
        }
        Monomial(v)
    }

    pub fn pairs(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0.iter().find(|(x, _)| *x == v).map_or(0, |p| p.1)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    assert!(e <= DEGREE_CAP, "exponent exceeds the per-variable cap of {DEGREE_CAP}");
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        (j == o.0.len()).then_some(Monomial(out))
    }

    /// Removes `v`, returning its exponent.
    pub fn without(&self, v: Var) -> (Monomial, u16) {
        let e = self.exponent(v);
        (Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()), e)
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        for (a, b) in self.0.iter().zip(&o.0) {
            if a.0 != b.0 {
                // the side carrying the more significant variable is larger
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&o.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.name() } else { format!("{}^{e}", v.name()) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(usize, u16)]) -> Monomial {
        Monomial::from_pairs(p.iter().map(|&(i, e)| (Var::u(i), e)))
    }

    #[test]
    fn graded_lex_order() {
        assert!(m(&[(0, 2)]) > m(&[(0, 1), (1, 1)]));
        assert!(m(&[(0, 1), (1, 1)]) > m(&[(1, 2)]));
        assert!(m(&[(1, 3)]) > m(&[(0, 2)]));
        assert!(m(&[(0, 1)]) > m(&[(1, 1)]));
        assert!(m(&[(1, 1), (2, 1)]) > m(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn division() {
        let a = m(&[(0, 2), (2, 1)]);
        let b = m(&[(0, 1)]);
        assert_eq!(a.div(&b), Some(m(&[(0, 1), (2, 1)])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div(&m(&[(1, 1)])), None);
        assert_eq!(a.div(&a), Some(Monomial::one()));
    }

    #[test]
    #[should_panic(expected = "cap")]
    fn degree_cap() {
        let a = m(&[(0, 40)]);
        let _ = a.mul(&a);
    }
}
