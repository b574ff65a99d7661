//! Acceptance criteria C1..C9. Each criterion prints one PASS/FAIL line with
//! its evidence and wall time. Criteria that cannot hold as written are
//! still computed faithfully. The run exits nonzero unless the set of
//! failures is exactly the expected one. It runs without the libtest
//! harness so the verdict lines always reach the output.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use dwork::census::{self, census_arithmetic, census_report};
use dwork::deformation::deformation_report;
use dwork::identities::{p_polynomial, run_selected, Form, IdentityCase};
use dwork::lines::{psi_chart, ProjLine, ProjPoint};
use dwork::membership::{chart_matches, pullback_coefficients, pullback_coefficients_formal, realize_numeric, solve_line_system, MembershipError};
use dwork::numeric::{rat, Ball};
use dwork::schubert::{incidence_decomposition, lr_coefficient, Partition, SchubertClass};
use dwork::{Cyclo, Field, Rational, Ring, Var};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

struct Verdict {
    id: &'static str,
    ok: bool,
    within_budget: bool,
    elapsed: Duration,
    budget: Duration,
    detail: String,
}

impl Verdict {
    fn pass(&self) -> bool {
        self.ok && self.within_budget
    }
}

fn criterion(id: &'static str, budget_secs: u64, f: impl FnOnce() -> (bool, String)) -> Verdict {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    Verdict { id, ok, within_budget: elapsed < budget, elapsed, budget, detail }
}

fn identity_group(names: &[&str]) -> Vec<IdentityCase> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    run_selected(&names).expect("known identity groups")
}

fn summarize(cases: &[IdentityCase]) -> String {
    let failed: Vec<String> = cases
        .iter()
        .filter(|c| !c.verified())
        .map(|c| format!("{} ({}/{} instances fail)", c.name, c.failures, c.instances))
        .collect();
    let instances: usize = cases.iter().map(|c| c.instances).sum();
    if failed.is_empty() {
        format!("{} cases, {instances} instances verified", cases.len())
    } else {
        format!("{} cases, refuted: {}", cases.len(), failed.join(", "))
    }
}

// --- independent oracles -------------------------------------------------

/// Elementary symmetric values by direct subset sums.
fn elementary(vals: &[Rational]) -> Vec<Rational> {
    let n = vals.len();
    let mut e = vec![Rational::from_int(0); n + 1];
    for mask in 0u32..(1 << n) {
        let prod = (0..n).filter(|i| mask & (1 << i) != 0).fold(Rational::from_int(1), |acc, i| acc * &vals[i]);
        e[mask.count_ones() as usize] += prod;
    }
    e
}

/// g on four values: s2² − 3 s1 s3 + 12 s4.
fn g_oracle(vals: &[Rational]) -> Rational {
    let s = elementary(vals);
    &s[2] * &s[2] - Rational::from_int(3) * &s[1] * &s[3] + Rational::from_int(12) * &s[4]
}

fn delta_oracle(u: &[Rational]) -> Rational {
    let mut d = Rational::from_int(1);
    for j in 0..u.len() {
        for i in 0..j {
            d *= &u[j] - &u[i];
        }
    }
    d
}

/// Evaluates ∏ⱼ g(uʲ) − ¾δ²(u) and P(u)² at rational points.
fn perfect_square_spot_checks() -> (usize, bool) {
    let p = p_polynomial();
    let points: Vec<[i64; 5]> = vec![[0, 1, 2, 3, 4], [3, -1, 7, 2, -5], [11, 4, -9, 1, 6], [-2, 13, 5, -7, 8], [1, 1, 2, 3, 5]];
    let ok = points.iter().all(|pt| {
        let u: Vec<Rational> = pt.iter().map(|&v| Rational::from_int(v)).collect();
        let prod = (0..5).fold(Rational::from_int(1), |acc, j| {
            let rest: Vec<Rational> = (0..5).filter(|&m| m != j).map(|m| u[m].clone()).collect();
            acc * g_oracle(&rest)
        });
        let d = delta_oracle(&u);
        let lhs = prod - rat(3, 4) * &d * &d;
        let vals: BTreeMap<Var, Rational> = (0..5).map(|j| (Var::u(j), u[j].clone())).collect();
        let pv = p.eval_full(&vals);
        lhs == &pv * &pv
    });
    (points.len(), ok)
}

// --- C9 property runs ----------------------------------------------------

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config::with_cases(cases), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn cyclo() -> impl Strategy<Value = Cyclo> {
    proptest::array::uniform8(small_rational()).prop_map(|c| Cyclo::from_coeffs(&c))
}

fn ring_laws(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(cyclo(), cyclo(), cyclo()), |(a, b, c)| {
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
            prop_assert!(a.minus(&a).is_zero());
            if !a.is_zero() {
                let inv = a.inverse().ok_or_else(|| TestCaseError::fail("nonzero element without inverse"))?;
                prop_assert!(a.times(&inv).is_one());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn plucker_quadrics(cases: u32) -> Result<(), String> {
    let point = proptest::array::uniform5((-9i64..=9, 0i64..15));
    runner(cases)
        .run(&(point.clone(), point), |(x, y)| {
            let lift = |v: [(i64, i64); 5]| v.map(|(n, k)| Cyclo::from_int(n).times(&Cyclo::zeta_pow(k)));
            let (Ok(px), Ok(py)) = (ProjPoint::new(lift(x)), ProjPoint::new(lift(y))) else {
                return Err(TestCaseError::reject("zero point"));
            };
            let Ok(l) = ProjLine::new(px, py) else {
                return Err(TestCaseError::reject("dependent points"));
            };
            prop_assert!(l.plucker_relation().is_zero());
            prop_assert!(l.plucker_residuals().iter().all(Ring::is_zero));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Every product of two box classes against the tableau count.
fn pieri_vs_lr() -> Result<usize, String> {
    let parts = Partition::all();
    let mut checked = 0;
    for l in &parts {
        for m in &parts {
            let prod = SchubertClass::sigma(l.0, l.1).multiply(&SchubertClass::sigma(m.0, m.1));
            for n in &parts {
                let lr = lr_coefficient((l.0, l.1), (m.0, m.1), (n.0, n.1)) as i64;
                if prod.coeff(n.0, n.1) != lr {
                    return Err(format!("s{}{} * s{}{} at s{}{}: {} vs {lr}", l.0, l.1, m.0, m.1, n.0, n.1, prod.coeff(n.0, n.1)));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// u → Y through the line system, then the realized line → u through the
/// chart map, on 20 exact inputs across all five charts.
fn chart_round_trips(wanted: usize) -> Result<usize, String> {
    let zero = Rational::from_int(0);
    let mut done = 0;
    let mut seed: i64 = 1;
    while done < wanted {
        seed += 1;
        let chart = (seed % 5) as usize;
        let mut u: [Rational; 5] = std::array::from_fn(|j| rat((seed * (j as i64 + 3)) % 17 - 8 + j as i64, 1 + (seed + j as i64) % 4));
        u[chart] = zero.clone();
        let sol = match solve_line_system(chart, &u) {
            Ok(s) => s,
            Err(MembershipError::SingularVandermonde | MembershipError::ZeroSector(_)) => continue,
            Err(e) => return Err(format!("{u:?}: {e}")),
        };
        if !sol.residuals().iter().all(Ring::is_zero) || sol.closed_form() != sol.y5 {
            return Err(format!("line system residual at {u:?}"));
        }
        let (line, y, t) = realize_numeric(&sol, 128).map_err(|e| e.to_string())?;
        let back = psi_chart(chart, &line, &y).map_err(|e| e.to_string())?;
        if !chart_matches(&back, &u) {
            return Err(format!("chart point not recovered at {u:?}"));
        }
        if !pullback_coefficients(&line, &t).iter().all(Ball::contains_zero) {
            return Err(format!("realized line leaves X_t at {u:?}"));
        }
        done += 1;
    }
    Ok(done)
}

// --- the criteria --------------------------------------------------------

fn run_criteria() -> Vec<Verdict> {
    let mut out = Vec::new();

    out.push(criterion("C1", 60, || {
        let cases = identity_group(&["p-construction"]);
        let square = cases.iter().find(|c| c.name == "p-perfect-square").expect("case present");
        let (points, spot) = perfect_square_spot_checks();
        let ok = square.verified() && spot;
        (ok, format!("symbolic identity {}, {} monomials on each side; oracle at {points} rational points {}", if square.verified() { "exact" } else { "FAILED" }, square.lhs.len(), if spot { "agrees" } else { "DISAGREES" }))
    }));

    out.push(criterion("C2", 10, || {
        // the five properties as written, over every index assignment
        let cases: Vec<IdentityCase> = identity_group(&["g-properties"]).into_iter().filter(|c| c.form != Form::Corrected).collect();
        (cases.iter().all(IdentityCase::verified), summarize(&cases))
    }));

    out.push(criterion("C3", 5, || {
        let cases = identity_group(&["row-relation", "vandermonde-inverse"]);
        (cases.iter().all(IdentityCase::verified), summarize(&cases))
    }));

    out.push(criterion("C4", 1, || {
        let t = incidence_decomposition();
        let s1 = SchubertClass::sigma(1, 0);
        let oracle = s1.pow(4) == SchubertClass::from_terms([(Partition(2, 2), 2), (Partition(3, 1), 3)]);
        let ok = t.matches_expected() && oracle;
        (ok, format!("s1^4 = {}, [I3] = {}, [S] = {}, deg = {}, threefold = {}", t.sigma1_fourth, t.i3, t.surface, t.plucker_degree, t.threefold_degree))
    }));

    out.push(criterion("C5", 30, || {
        let r = census_report(128).expect("census at t = 1 is regular");
        // oracle: every crossing line is contained for formal t by direct expansion
        let fermat = census::enumerate_fermat_lines();
        let formal = fermat.crossings.iter().all(|l: &ProjLine<Cyclo>| pullback_coefficients_formal(l).iter().all(|c| c.is_zero()));
        let vg = &r.van_geemen;
        let ok = r.ok() && formal && vg.numeric_residual_log2 < -64.0;
        (
            ok,
            format!(
                "cones {}, crossings {} (formal containment {}), t=1: {} solutions residual 2^{:.0}, branch: {} exact, totals {} and {}",
                r.cones,
                r.crossings,
                if formal { "exact" } else { "FAILED" },
                vg.numeric_count,
                vg.numeric_residual_log2,
                vg.branch_count,
                vg.generic.total(),
                vg.branch.total()
            ),
        )
    }));

    out.push(criterion("C6", 10, || {
        let r = deformation_report();
        let kernels: Vec<usize> = r.kernels.iter().map(|k| k.computed).collect();
        let kernels_ok = kernels == [2, 0, 2, 3, 2, 2, 1, 2] && r.kernels_ok();
        let bad_split: Vec<String> = r
            .splitting
            .iter()
            .filter(|s| !s.ok())
            .map(|s| match &s.computed {
                Ok(c) => format!("{} is {c}, stated {}", s.name, s.stated),
                Err(e) => format!("{}: {e}", s.name),
            })
            .collect();
        let bad_checks: Vec<String> = r.checks.iter().filter(|c| !c.holds).map(|c| format!("{} = {} vs {}", c.name, c.computed, c.target)).collect();
        let ok = kernels_ok && r.all_ok();
        (ok, format!("kernels {kernels:?}; splitting mismatches [{}]; polynomial mismatches [{}]", bad_split.join("; "), bad_checks.join("; ")))
    }));

    out.push(criterion("C7", 1, || {
        let a = census_arithmetic();
        let gw = a.row("i").is_some_and(|r| r.holds() && r.lhs == 2875);
        let genus = a.row("v").is_some_and(|r| r.holds() && r.statement.contains("genus 76"));
        let held = a.rows.iter().filter(|r| r.holds()).count();
        (a.ok() && a.rows.len() == 9 && gw && genus, format!("{held}/{} rows exact, GW 2875 {gw}, genus 76 {genus}", a.rows.len()))
    }));

    out.push(criterion("C8", 10, || {
        // the quintic relation is checked on the Grassmannian, where Plücker
        // coordinates live; the pure-expansion readings are reported too
        let cases = identity_group(&["component-relations"]);
        let needed = ["quintic-relation", "ideal-generator-relations", "divisor-chart-identity"];
        let ok = needed.iter().all(|n| cases.iter().any(|c| c.name == *n && c.verified()));
        (ok, summarize(&cases))
    }));

    out.push(criterion("C9", 120, || {
        let results = [
            ("ring laws x500", ring_laws(500).map(|_| 500)),
            ("plucker quadrics", plucker_quadrics(200).map(|_| 200)),
            ("pieri vs LR", pieri_vs_lr()),
            ("chart round trip", chart_round_trips(20)),
        ];
        let ok = results.iter().all(|(_, r)| r.is_ok());
        let detail = results
            .iter()
            .map(|(n, r)| match r {
                Ok(k) => format!("{n}: {k} ok"),
                Err(e) => format!("{n}: {e}"),
            })
            .collect::<Vec<_>>()
            .join("; ");
        (ok, detail)
    }));

    out
}

fn main() {
    let verdicts = run_criteria();
    for v in &verdicts {
        let budget = if v.within_budget { String::new() } else { format!(" OVER BUDGET {}s", v.budget.as_secs()) };
        println!("{} {}  [{:.2}s{budget}] {}", v.id, if v.pass() { "PASS" } else { "FAIL" }, v.elapsed.as_secs_f64(), v.detail);
    }
    let failed: BTreeSet<&str> = verdicts.iter().filter(|v| !v.pass()).map(|v| v.id).collect();
    let expected = BTreeSet::from(["C2", "C6"]);
    if failed != expected {
        eprintln!("unexpected failure set {failed:?}, expected {expected:?}");
        std::process::exit(1);
    }
    println!("failure set {failed:?} as expected");
}
