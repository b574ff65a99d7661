//! Structural invariants beyond the acceptance property runs.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dwork::cert::{CaseRecord, Certificate, Format};
use dwork::census::{solve_van_geemen_branch, VanGeemenSolution};
use dwork::lines::{apply_symmetry, SymmetryElement};
use dwork::membership::contained;
use dwork::numeric::{parse_rational, rat};
use dwork::schubert::{Partition, SchubertClass};
use dwork::{Cyclo, Monomial, Poly, Rational, Ring, Tower, Var};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials in u0, u1, u2 with at most six terms of degree ≤ 3 per variable.
fn poly() -> impl Strategy<Value = Poly<Rational>> {
    proptest::collection::vec(((0u16..4, 0u16..4, 0u16..4), small_rational()), 0..6).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|((a, b, c), q)| {
            (Monomial::from_pairs([(Var::u(0), a), (Var::u(1), b), (Var::u(2), c)]), q)
        }))
    })
}

fn cyclo() -> impl Strategy<Value = Cyclo> {
    proptest::array::uniform8(small_rational()).prop_map(|c| Cyclo::from_coeffs(&c))
}

fn symmetry() -> impl Strategy<Value = SymmetryElement> {
    (proptest::array::uniform5(0u8..5), Just([0u8, 1, 2, 3, 4]).prop_shuffle())
        .prop_map(|(phases, perm)| SymmetryElement::new(phases, perm))
}

fn branch_lines() -> &'static [VanGeemenSolution<Tower>] {
    static LINES: OnceLock<Vec<VanGeemenSolution<Tower>>> = OnceLock::new();
    LINES.get_or_init(|| solve_van_geemen_branch(0))
}

fn partition() -> impl Strategy<Value = Partition> {
    proptest::sample::select(Partition::all())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_with_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in proptest::array::uniform3(small_rational())) {
        let vals: BTreeMap<Var, Rational> = (0..3).map(|j| (Var::u(j), x[j].clone())).collect();
        prop_assert_eq!(a.mul(&b).eval_full(&vals), a.eval_full(&vals) * b.eval_full(&vals));
    }

    #[test]
    fn poly_json_round_trip(a in poly()) {
        prop_assert_eq!(Poly::<Rational>::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn galois_action_is_a_ring_map(a in cyclo(), b in cyclo(), k in proptest::sample::select(vec![1i64, 2, 4, 7, 8, 11, 13, 14])) {
        prop_assert_eq!(a.times(&b).galois(k), a.galois(k).times(&b.galois(k)));
        prop_assert_eq!(a.plus(&b).galois(k), a.galois(k).plus(&b.galois(k)));
    }

    #[test]
    fn cyclo_json_round_trip(a in cyclo()) {
        prop_assert_eq!(Cyclo::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rational_text_round_trip(q in small_rational()) {
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn schubert_product_is_commutative_and_associative(a in partition(), b in partition(), c in partition()) {
        let s = |p: Partition| SchubertClass::sigma(p.0, p.1);
        prop_assert_eq!(s(a).multiply(&s(b)), s(b).multiply(&s(a)));
        prop_assert_eq!(s(a).multiply(&s(b)).multiply(&s(c)), s(a).multiply(&s(b).multiply(&s(c))));
    }

    #[test]
    fn certificate_json_round_trip(flags in proptest::collection::vec(any::<bool>(), 0..6)) {
        let cases = flags.iter().enumerate().map(|(i, ok)| CaseRecord::new(format!("c{i}"), "anchor", *ok, serde_json::Value::Null)).collect();
        let c = Certificate::new("prop", cases);
        prop_assert_eq!(c.pass, flags.iter().all(|b| *b));
        prop_assert_eq!(Certificate::from_json_str(&c.render(Format::Json)).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The symmetry group maps lines of X_t to lines of X_{g·t}, and the
    /// action composes.
    #[test]
    fn symmetry_moves_lines_between_fibers(g in symmetry(), h in symmetry(), idx in 0usize..5) {
        let s = &branch_lines()[idx];
        let moved = apply_symmetry(&g, &s.line);
        prop_assert_eq!(contained(&moved, &g.transform_t(&s.t)), Some(true));
        let twice = apply_symmetry(&g, &apply_symmetry(&h, &s.line));
        prop_assert!(twice.same_line(&apply_symmetry(&g.compose(&h), &s.line)));
        prop_assert!(apply_symmetry(&g.inverse(), &moved).same_line(&s.line));
    }
}
