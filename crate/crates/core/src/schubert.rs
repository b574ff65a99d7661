//! H*(G(2,5)) in the Schubert basis σ_{a,b}, 3 ≥ a ≥ b ≥ 0.
//!
//! Products use Pieri for the special classes σ_k and Giambelli
//! σ_{a,b} = σ_a·σ_b − σ_{a+1}·σ_{b−1} for the rest.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

/// Columns of the box: n − k for G(2,5).
pub const BOX_WIDTH: u8 = 3;

/// A partition (a, b) with 3 ≥ a ≥ b ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub u8, pub u8);

impl Partition {
    pub fn new(a: u8, b: u8) -> Option<Self> {
        (a >= b && a <= BOX_WIDTH).then_some(Partition(a, b))
    }

    pub fn size(&self) -> u8 {
        self.0 + self.1
    }

    /// The complementary partition (3 − b, 3 − a).
    pub fn complement(&self) -> Partition {
        Partition(BOX_WIDTH - self.1, BOX_WIDTH - self.0)
    }

    /// All ten partitions in the box, ordered by size then lexicographically.
    pub fn all() -> Vec<Partition> {
        let mut out: Vec<Partition> = (0..=BOX_WIDTH).flat_map(|a| (0..=a).map(move |b| Partition(a, b))).collect();
        out.sort_by_key(|p| (p.size(), *p));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 == 0 {
            write!(f, "s{}", self.0)
        } else {
            write!(f, "s{}{}", self.0, self.1)
        }
    }
}

/// An integer combination of Schubert classes. Zero coefficients are never
/// stored, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchubertClass(BTreeMap<Partition, i64>);

impl SchubertClass {
    pub fn zero() -> Self {
        SchubertClass(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::sigma(0, 0)
    }

    /// σ_{a,b}; zero outside the box (including σ_k for k > 3).
    pub fn sigma(a: u8, b: u8) -> Self {
        match Partition::new(a, b) {
            Some(p) => SchubertClass(BTreeMap::from([(p, 1)])),
            None => Self::zero(),
        }
    }

    /// The point class σ₃₃.
    pub fn point() -> Self {
        Self::sigma(3, 3)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, i64)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&p);
        }
    }

    pub fn coeff(&self, a: u8, b: u8) -> i64 {
        Partition::new(a, b).and_then(|p| self.0.get(&p).copied()).unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &i64)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &o.0 {
            out.add_term(*p, *c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.0.iter().map(|(p, c)| (*p, c * k)))
    }

    pub fn multiply(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &o.0 {
            out = out.add(&self.times_basis(*p).scale(*c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.multiply(self))
    }

    /// Pieri: σ_k · σ_λ sums σ_μ over horizontal strips μ/λ of size k.
    pub fn times_special(&self, k: u8) -> Self {
        if k > BOX_WIDTH {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (lam, c) in &self.0 {
            for m1 in lam.0..=BOX_WIDTH {
                let Some(m2) = (lam.size() + k).checked_sub(m1) else { continue };
                if m2 >= lam.1 && m2 <= lam.0 {
                    out.add_term(Partition(m1, m2), *c);
                }
            }
        }
        out
    }

    fn times_basis(&self, p: Partition) -> Self {
        if p.1 == 0 {
            return self.times_special(p.0);
        }
        // σ_{a,b} = σ_a σ_b − σ_{a+1} σ_{b−1}
        let first = self.times_special(p.0).times_special(p.1);
        let second = self.times_special(p.0 + 1).times_basis(Partition(p.1 - 1, 0));
        first.sub(&second)
    }

    /// Degree of the zero-cycle part: the σ₃₃ coefficient.
    pub fn integrate(&self) -> i64 {
        self.coeff(3, 3)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(p, c)| (p.to_string(), json!(c))).collect())
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // Highest codimension first, as the classes are usually written.
        let parts: Vec<String> = self.0.iter().rev().map(|(p, c)| if *c == 1 { p.to_string() } else { format!("{c}{p}") }).collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Littlewood–Richardson coefficient c^ν_{λμ} for two-row partitions by
/// enumerating fillings of ν/λ with content μ. Independent of Pieri.
pub fn lr_coefficient(lam: (u8, u8), mu: (u8, u8), nu: (u8, u8)) -> u64 {
    if lam.0 > nu.0 || lam.1 > nu.1 || lam.0 + lam.1 + mu.0 + mu.1 != nu.0 + nu.1 {
        return 0;
    }
    let row_len = [(nu.0 - lam.0) as usize, (nu.1 - lam.1) as usize];
    let cells = row_len[0] + row_len[1];
    let mut count = 0;
    // Entries are 1 or 2; rows have the form 1…12…2, so a filling is fixed by
    // the number of ones in each row.
    for ones0 in 0..=row_len[0] {
        for ones1 in 0..=row_len[1] {
            if ones0 + ones1 != mu.0 as usize || cells - ones0 - ones1 != mu.1 as usize {
                continue;
            }
            let entry = |row: usize, col: usize| -> u8 {
                let start = if row == 0 { lam.0 } else { lam.1 } as usize;
                let ones = if row == 0 { ones0 } else { ones1 };
                if col - start < ones {
                    1
                } else {
                    2
                }
            };
            // Columns strictly increase downwards.
            let columns_ok = (lam.1 as usize..nu.1 as usize).all(|col| {
                let below = entry(1, col);
                col < lam.0 as usize || entry(0, col) < below
            });
            // Reading rows right to left, top to bottom: #2 never exceeds #1.
            let mut word = Vec::with_capacity(cells);
            for row in 0..2 {
                let (start, end) = if row == 0 { (lam.0, nu.0) } else { (lam.1, nu.1) };
                for col in (start as usize..end as usize).rev() {
                    word.push(entry(row, col));
                }
            }
            let mut balance = 0i32;
            let lattice = word.iter().all(|&e| {
                balance += if e == 1 { 1 } else { -1 };
                balance >= 0
            });
            if columns_ok && lattice {
                count += 1;
            }
        }
    }
    count
}

/// The classes used for the surface of lines and its degree.
#[derive(Debug, Clone)]
pub struct IncidenceTable {
    pub sigma1_fourth: SchubertClass,
    pub i_total: SchubertClass,
    pub i1: SchubertClass,
    pub i2: SchubertClass,
    pub i3: SchubertClass,
    pub surface: SchubertClass,
    /// ∫σ₁²·[S̄]: degree of the surface in the Plücker space.
    pub plucker_degree: i64,
    /// ∫[S̄]·σ₂: degree of the swept threefold, using q_*(H³) = σ₂.
    pub threefold_degree: i64,
    /// Degree of the threefold's map onto its image, recorded as a constant.
    pub threefold_map_degree: i64,
}

impl IncidenceTable {
    pub fn matches_expected(&self) -> bool {
        let c = |terms: &[((u8, u8), i64)]| SchubertClass::from_terms(terms.iter().map(|((a, b), k)| (Partition(*a, *b), *k)));
        self.sigma1_fourth == c(&[((2, 2), 2), ((3, 1), 3)])
            && self.i3 == c(&[((3, 1), 100), ((2, 2), 50)])
            && self.surface == c(&[((2, 2), 375), ((3, 1), 250)])
            && self.plucker_degree == 625
            && self.threefold_degree == 250
    }

    pub fn to_json(&self) -> Value {
        json!({
            "anchor": "surface-of-lines-class",
            "sigma1^4": self.sigma1_fourth.to_json(),
            "I": self.i_total.to_json(),
            "I1": self.i1.to_json(),
            "I2": self.i2.to_json(),
            "I3": self.i3.to_json(),
            "S": self.surface.to_json(),
            "deg_plucker_S": self.plucker_degree,
            "deg_threefold": self.threefold_degree,
            "threefold_map_degree": self.threefold_map_degree,
        })
    }
}

/// [I] = 5⁴σ₁⁴, [I₁] = 5σ₃₁, [I₂] = 25σ₂², [I₃] = 125σ₁²σ₂ − 3[I₂] − 15[I₁],
/// [S̄] = [I] − 50[I₁] − 15[I₂] − 10[I₃].
pub fn incidence_decomposition() -> IncidenceTable {
    let s1 = SchubertClass::sigma(1, 0);
    let s2 = SchubertClass::sigma(2, 0);
    let sigma1_fourth = s1.pow(4);
    let i_total = sigma1_fourth.scale(625);
    let i1 = SchubertClass::sigma(3, 1).scale(5);
    let i2 = s2.multiply(&s2).scale(25);
    let i3 = s1.pow(2).multiply(&s2).scale(125).sub(&i2.scale(3)).sub(&i1.scale(15));
    let surface = i_total.sub(&i1.scale(50)).sub(&i2.scale(15)).sub(&i3.scale(10));
    IncidenceTable {
        plucker_degree: s1.pow(2).multiply(&surface).integrate(),
        threefold_degree: surface.multiply(&s2).integrate(),
        threefold_map_degree: 30,
        sigma1_fourth,
        i_total,
        i1,
        i2,
        i3,
        surface,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        let s1 = SchubertClass::sigma(1, 0);
        assert_eq!(s1.multiply(&s1), SchubertClass::sigma(2, 0).add(&SchubertClass::sigma(1, 1)));
        let s2 = SchubertClass::sigma(2, 0);
        assert_eq!(s2.multiply(&s2), SchubertClass::sigma(2, 2).add(&SchubertClass::sigma(3, 1)));
        assert_eq!(SchubertClass::point().integrate(), 1);
        assert!(SchubertClass::sigma(4, 0).is_zero());
    }

    #[test]
    fn table() {
        let t = incidence_decomposition();
        assert!(t.matches_expected(), "{}", t.surface);
        assert_eq!(t.surface.to_string(), "250s31 + 375s22");
    }

    #[test]
    fn lr_matches_pieri_and_duality() {
        for lam in Partition::all() {
            for mu in Partition::all() {
                let prod = SchubertClass::sigma(lam.0, lam.1).multiply(&SchubertClass::sigma(mu.0, mu.1));
                for nu in Partition::all() {
                    assert_eq!(prod.coeff(nu.0, nu.1), lr_coefficient((lam.0, lam.1), (mu.0, mu.1), (nu.0, nu.1)) as i64);
                }
                let d = prod.integrate();
                assert_eq!(d, i64::from(mu == lam.complement()));
            }
        }
    }
}
