//! The `dwork` command line: suites in, certificates out.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cert::{CaseRecord, Certificate, Format};
use crate::census::{self, CensusReport};
use crate::deformation::{self, DeformationReport};
use crate::identities::{self, IdentityCase, IdentityError};
use crate::lines::{ProjLine, ProjPoint};
use crate::membership::{self, pullback_coefficients_formal, pullback_split};
use crate::numeric::{parse_rational, rat, Ball, Rational, Ring, Tower};
use crate::schubert::{self, Partition, SchubertClass};

#[derive(Debug, Parser)]
#[command(name = "dwork", version, about = "Certificates for lines on the Dwork pencil of quintic threefolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Working precision of the numeric enumeration.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub precision_bits: u32,
    /// Fiber parameter: a rational or `branch`.
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// w = t⁵: a rational or `branch`.
    #[arg(long, global = true)]
    pub w: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock times in the output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run suites (identities, membership, deformation, census, schubert)
    /// or individual identity cases; no argument runs everything.
    Verify { cases: Vec<String> },
    /// Cones, crossing lines, van Geemen lines and bookkeeping arithmetic.
    Census,
    /// Containment of a line given as JSON {"span": [[…5…], […5…]]}.
    Membership {
        #[arg(long)]
        line: String,
    },
    /// The fiber surface over w and its factorization.
    Fiber,
    /// The Schubert class of the surface of lines and its degrees.
    Schubert,
    /// Normal-bundle kernels and splitting types.
    Deformation,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(format!("{e}; groups: {}", identities::group_names().join(", ")))
    }
}

/// Suite names accepted by `verify`.
pub const SUITES: [&str; 5] = ["identities", "membership", "deformation", "census", "schubert"];

#[derive(Debug, Clone)]
pub struct Options {
    pub precision_bits: u32,
    pub t: Option<String>,
    pub w: Option<String>,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision_bits: 128, t: None, w: None, timings: false }
    }
}

/// Suite selector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    All,
    Identities(Vec<String>),
    Membership,
    Deformation,
    Census,
    Schubert,
    Fiber,
}

/// Parses `verify` arguments into selectors, grouping identity case names.
pub fn selectors_from_names(names: &[String]) -> Vec<Selector> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return vec![Selector::All];
    }
    let mut out = Vec::new();
    let mut cases = Vec::new();
    for n in names {
        match n.as_str() {
            "identities" => out.push(Selector::Identities(vec![])),
            "membership" => out.push(Selector::Membership),
            "deformation" => out.push(Selector::Deformation),
            "census" => out.push(Selector::Census),
            "schubert" => out.push(Selector::Schubert),
            _ => cases.push(n.clone()),
        }
    }
    if !cases.is_empty() {
        out.push(Selector::Identities(cases));
    }
    out
}

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn run_suite(selector: &Selector, opts: &Options) -> Result<Certificate, CliError> {
    match selector {
        Selector::All => {
            let parts = [
                Selector::Identities(vec![]),
                Selector::Membership,
                Selector::Deformation,
                Selector::Census,
                Selector::Schubert,
            ]
            .iter()
            .map(|s| run_suite(s, opts))
            .collect::<Result<Vec<_>, _>>()?;
            Ok(Certificate::merge("all", parts))
        }
        Selector::Identities(names) => Ok(identity_certificate(&identities::run_selected(names)?, opts.timings)),
        Selector::Membership => Ok(timed(opts, membership_suite)),
        Selector::Deformation => Ok(timed(opts, || deformation_certificate(&deformation::deformation_report()))),
        Selector::Census => {
            let t = census_t(opts)?;
            let report = census::census_report(opts.precision_bits).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut cert = census_certificate(&report);
            if let Some(t) = t {
                cert.cases.push(numeric_fiber_case(&t, opts.precision_bits)?);
                cert = Certificate::new("census", cert.cases);
            }
            Ok(cert)
        }
        Selector::Schubert => Ok(timed(opts, schubert_certificate)),
        Selector::Fiber => fiber_certificate(opts),
    }
}

/// Runs a suite builder and, when timings are on, stamps the suite's wall
/// time on each of its cases.
fn timed(opts: &Options, f: impl FnOnce() -> Certificate) -> Certificate {
    let start = Instant::now();
    let mut c = f();
    if opts.timings {
        let ms = millis(start);
        for case in &mut c.cases {
            case.millis = Some(ms);
        }
    }
    c
}

pub fn identity_certificate(cases: &[IdentityCase], timings: bool) -> Certificate {
    let records = cases
        .iter()
        .map(|c| {
            let mut r = CaseRecord::new(&c.name, &c.anchor, c.verified(), c.to_json(false)).with_monomials(c.lhs.len() + c.rhs.len());
            if timings {
                r.millis = Some(c.elapsed.as_millis() as u64);
            }
            r
        })
        .collect();
    Certificate::new("identities", records)
}

pub fn deformation_certificate(r: &DeformationReport) -> Certificate {
    let mut cases = Vec::new();
    for k in &r.kernels {
        cases.push(CaseRecord::new(
            format!("kernel {}", k.name),
            "normal-bundle-sections",
            k.ok(),
            json!({"description": k.description, "h0": k.computed, "expected": k.expected, "method": k.method}),
        ));
    }
    for s in &r.splitting {
        let computed = match &s.computed {
            Ok(t) => json!(t.to_string()),
            Err(e) => json!(e.to_string()),
        };
        cases.push(CaseRecord::new(
            format!("splitting {}", s.name),
            "normal-bundle-splitting",
            s.ok(),
            json!({"h0": s.h0, "computed": computed, "stated": s.stated.to_string()}),
        ));
    }
    for c in &r.checks {
        cases.push(CaseRecord::new(
            c.name,
            "normal-matrix-determinants",
            c.holds,
            json!({"computed": c.computed, "target": c.target, "note": c.note}),
        ));
    }
    Certificate::new("deformation", cases)
}

pub fn census_certificate(r: &CensusReport) -> Certificate {
    let full = r.to_json();
    let vg = &r.van_geemen;
    let mut cases = vec![
        CaseRecord::new("fermat-lines", "fermat-fiber-structure", r.fermat_ok(), full["fermat"].clone()),
        CaseRecord::new(
            "van-geemen-numeric",
            "van-geemen-lines",
            vg.numeric_count == 10 && vg.numeric_distinct && vg.numeric_residual_ok,
            json!({
                "t": "1", "solutions": vg.numeric_count, "distinct": vg.numeric_distinct,
                "precision_bits": vg.precision_bits, "residual_log2": format!("{:.1}", vg.numeric_residual_log2),
            }),
        ),
        CaseRecord::new(
            "van-geemen-branch",
            "van-geemen-lines",
            vg.branch_count == 5 && vg.branch_exact,
            json!({"t^5": "128/3", "solutions": vg.branch_count, "exact": vg.branch_exact}),
        ),
        CaseRecord::new(
            "van-geemen-orbits",
            "van-geemen-lines",
            vg.generic.total() == 5000 && vg.branch.total() == 2500,
            json!({
                "generic": full["van_geemen"]["generic_orbits"].clone(),
                "branch": full["van_geemen"]["branch_orbits"].clone(),
            }),
        ),
    ];
    for row in &r.arithmetic.rows {
        cases.push(CaseRecord::new(
            format!("arithmetic ({})", row.id),
            row.anchor,
            row.holds(),
            json!({"statement": row.statement, "lhs": row.lhs, "rhs": row.rhs, "note": row.note}),
        ));
    }
    cases.push(CaseRecord::new("curve-table", "curve-numerics", true, json!({"curves": full["curves"].clone()})));
    Certificate::new("census", cases)
}

fn census_t(opts: &Options) -> Result<Option<Rational>, CliError> {
    match opts.t.as_deref() {
        None => Ok(None),
        Some("branch") => Err(CliError::Usage("census takes a rational --t; the branch fiber is always included".into())),
        Some(s) => {
            let t = parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))?;
            if t == rat(0, 1) {
                return Err(CliError::Usage("--t must be nonzero".into()));
            }
            Ok(Some(t))
        }
    }
}

fn numeric_fiber_case(t: &Rational, prec: u32) -> Result<CaseRecord, CliError> {
    let tb = Ball::from_rational_prec(t, prec + 64);
    let sols = census::solve_van_geemen_numeric(&tb, prec).map_err(|e| CliError::Usage(e.to_string()))?;
    let worst = sols.iter().map(census::VanGeemenSolution::residual_bound).max().expect("ten solutions");
    let bound = Rational::new(1.into(), num_bigint::BigInt::from(1) << 64);
    Ok(CaseRecord::new(
        "van-geemen-numeric-requested",
        "van-geemen-lines",
        sols.len() == 10 && worst < bound,
        json!({"t": crate::numeric::rational::fmt_rational(t), "solutions": sols.len(), "residual_below_2^-64": worst < bound}),
    ))
}

pub fn schubert_certificate() -> Certificate {
    let t = schubert::incidence_decomposition();
    let c = |terms: &[((u8, u8), i64)]| SchubertClass::from_terms(terms.iter().map(|((a, b), k)| (Partition(*a, *b), *k)));
    let mut lr_ok = true;
    for lam in Partition::all() {
        for mu in Partition::all() {
            let prod = SchubertClass::sigma(lam.0, lam.1).multiply(&SchubertClass::sigma(mu.0, mu.1));
            for nu in Partition::all() {
                lr_ok &= prod.coeff(nu.0, nu.1) == schubert::lr_coefficient((lam.0, lam.1), (mu.0, mu.1), (nu.0, nu.1)) as i64;
            }
        }
    }
    let case = |name: &str, anchor: &str, got: &SchubertClass, want: SchubertClass| {
        CaseRecord::new(name, anchor, *got == want, json!({"computed": got.to_string(), "expected": want.to_string()}))
    };
    let cases = vec![
        case("sigma1^4", "hyperplane-power", &t.sigma1_fourth, c(&[((2, 2), 2), ((3, 1), 3)])),
        case("class I3", "incidence-components", &t.i3, c(&[((3, 1), 100), ((2, 2), 50)])),
        case("class S", "surface-of-lines-class", &t.surface, c(&[((2, 2), 375), ((3, 1), 250)])),
        CaseRecord::new("plucker-degree", "surface-of-lines-degree", t.plucker_degree == 625, json!({"computed": t.plucker_degree, "expected": 625})),
        CaseRecord::new(
            "threefold-degree",
            "swept-threefold-degree",
            t.threefold_degree == 250,
            json!({"computed": t.threefold_degree, "expected": 250, "pushforward": "q_*(H^3) = s2", "map_degree_constant": t.threefold_map_degree}),
        ),
        CaseRecord::new("pieri-vs-lr", "schubert-product-oracle", lr_ok, json!({"products_checked": 100})),
        CaseRecord::new("table", "surface-of-lines-class", t.matches_expected(), t.to_json()),
    ];
    Certificate::new("schubert", cases)
}

/// Fixed membership examples: crossing lines, van Geemen lines, a line
/// meeting X_t properly, and a round trip through the line system.
pub fn membership_suite() -> Certificate {
    let mut cases = Vec::new();
    let l1 = census::model_crossing_line();
    let split = pullback_split(&l1);
    cases.push(CaseRecord::new(
        "crossing-line-every-fiber",
        "base-locus-lines",
        pullback_coefficients_formal(&l1).iter().all(|c| c.is_zero()) && split.in_base_locus(),
        json!({"line": "(a:b:-a:-b:0)"}),
    ));
    let vg = census::solve_van_geemen_branch(0);
    cases.push(CaseRecord::new(
        "van-geemen-branch-contained",
        "van-geemen-lines",
        vg.iter().all(|s| membership::contained(&s.line, &s.t) == Some(true)),
        json!({"lines": vg.len(), "t^5": "128/3"}),
    ));
    let generic = census::solve_van_geemen_split(&rat(1, 1)).expect("a = 1 is not special");
    let wrong_t = generic[0].t.times(&Tower::from_int(2));
    cases.push(CaseRecord::new(
        "van-geemen-wrong-fiber",
        "van-geemen-lines",
        membership::contained(&generic[0].line, &wrong_t) == Some(false),
        json!({"note": "the line for t lies in no other fiber"}),
    ));
    let coord: ProjLine<Tower> = ProjLine::new(
        ProjPoint::from_ints([1, 0, 0, 0, 0]).expect("nonzero"),
        ProjPoint::from_ints([0, 1, 0, 0, 0]).expect("nonzero"),
    )
    .expect("distinct");
    cases.push(CaseRecord::new(
        "coordinate-line-excluded",
        "pullback-coefficients",
        membership::contained(&coord, &Tower::one()) == Some(false),
        json!({"line": "(a:b:0:0:0)"}),
    ));
    let u = [0, 1, 2, 3, -1].map(|v| rat(v, 1));
    let ok = match membership::solve_line_system(0, &u) {
        Ok(sol) => sol.residuals().iter().all(Ring::is_zero) && sol.closed_form() == sol.y5,
        Err(_) => false,
    };
    cases.push(CaseRecord::new("line-system-round-trip", "line-system-inverse", ok, json!({"chart": 0, "u": "(0,1,2,3,-1)"})));
    Certificate::new("membership", cases)
}

fn parse_w(s: &str) -> Result<Rational, CliError> {
    if s == "branch" {
        return Ok(rat(128, 3));
    }
    parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn fiber_certificate(opts: &Options) -> Result<Certificate, CliError> {
    let w = opts.w.as_deref().map(parse_w).transpose()?;
    let eq = membership::fiber_surface_equation(w.as_ref());
    let equation = eq.equation();
    let mut cases = vec![CaseRecord::new(
        "fiber-equation-rewrite",
        "fiber-surface",
        eq.factored_form() == equation,
        eq.to_json(),
    )
    .with_monomials(equation.len())];
    match membership::fiber_factorization(w.as_ref()) {
        Ok(f) => cases.push(CaseRecord::new(
            "fiber-factorization",
            "fiber-surface-two-components",
            f.reduced_product() == equation,
            json!({"factors": 2, "factor_terms": [f.factors[0].len(), f.factors[1].len()]}),
        )),
        Err(e) => {
            let w = w.clone().expect("the formal w always factors");
            let square = if w == rat(0, 1) {
                membership::fiber_surface_equation(Some(&w)).lhs
            } else {
                identities::p_polynomial().pow(2).scale(&(-w.clone() / rat(32, 1)))
            };
            cases.push(CaseRecord::new(
                "fiber-branch-square",
                "fiber-surface-branch",
                square == equation,
                json!({"note": e.to_string(), "w": crate::numeric::rational::fmt_rational(&w)}),
            ));
        }
    }
    Ok(Certificate::new("fiber", cases))
}

/// Accepts a line whose coordinates are either field-element objects or
/// plain integers / "p/q" strings.
pub fn parse_line(s: &str) -> Result<ProjLine<Tower>, CliError> {
    let usage = |m: String| CliError::Usage(format!("--line: {m}"));
    let mut v: Value = serde_json::from_str(s).map_err(|e| usage(e.to_string()))?;
    if let Some(span) = v.get_mut("span").and_then(Value::as_array_mut) {
        for pt in span.iter_mut().filter_map(Value::as_array_mut) {
            for c in pt.iter_mut() {
                let q = match c {
                    Value::Number(n) => Some(n.to_string()),
                    Value::String(s) => Some(s.clone()),
                    _ => None,
                };
                if let Some(q) = q {
                    *c = Tower::from(parse_rational(&q).map_err(|e| usage(e.to_string()))?).to_json();
                }
            }
        }
    }
    ProjLine::<Tower>::from_json(&v).map_err(|e| usage(e.to_string()))
}

pub fn membership_certificate(line: &ProjLine<Tower>, opts: &Options) -> Result<Certificate, CliError> {
    let formal = pullback_coefficients_formal(line);
    let every = formal.iter().all(|c| c.is_zero());
    let mut witness = json!({
        "line": line.to_json(),
        "formal_coefficients": formal.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "in_every_fiber": every,
    });
    let mut cases = Vec::new();
    if let Some(ts) = opts.t.as_deref() {
        let t = if ts == "branch" {
            census::solve_van_geemen_branch(0)[0].t.clone()
        } else {
            Tower::from(parse_rational(ts).map_err(|e| CliError::Usage(e.to_string()))?)
        };
        let inside = membership::contained(line, &t) == Some(true);
        witness["t"] = json!(ts);
        witness["contained"] = json!(inside);
        cases.push(CaseRecord::new("contained-in-fiber", "pullback-coefficients", inside, witness));
    } else {
        // Without t the question is which fibers contain the line: all of
        // them, or those where the six coefficients vanish together.
        let any = every || fibers_containing(&formal);
        witness["some_fiber"] = json!(any);
        cases.push(CaseRecord::new("contained-in-some-fiber", "pullback-coefficients", any, witness));
    }
    Ok(Certificate::new("membership", cases))
}

/// Each coefficient is A + B·t; a common root exists iff the 2×2 minors of
/// the (A, B) columns vanish and not all B vanish while A does not.
fn fibers_containing(coeffs: &[crate::poly::Poly<Tower>; 6]) -> bool {
    let parts: Vec<(Tower, Tower)> = coeffs
        .iter()
        .map(|c| {
            let cs = c.coefficients_in(crate::poly::Var::T);
            let get = |k: usize| cs.get(k).map(|p| p.constant_term()).unwrap_or_else(Tower::zero);
            (get(0), get(1))
        })
        .collect();
    let rank_ok = parts.iter().all(|(a1, b1)| parts.iter().all(|(a2, b2)| a1.times(b2).minus(&a2.times(b1)).is_zero()));
    let some_b = parts.iter().any(|(_, b)| !b.is_zero());
    rank_ok && (some_b || parts.iter().all(|(a, _)| a.is_zero()))
}

fn execute(cli: &Cli) -> Result<Certificate, CliError> {
    let opts = Options { precision_bits: cli.precision_bits, t: cli.t.clone(), w: cli.w.clone(), timings: cli.timings };
    match &cli.command {
        Command::Verify { cases } => {
            let parts = selectors_from_names(cases)
                .iter()
                .map(|s| run_suite(s, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            if parts.len() == 1 {
                Ok(parts.into_iter().next().expect("one part"))
            } else {
                Ok(Certificate::merge("verify", parts))
            }
        }
        Command::Census => run_suite(&Selector::Census, &opts),
        Command::Membership { line } => membership_certificate(&parse_line(line)?, &opts),
        Command::Fiber => {
            if opts.w.is_none() {
                return Err(CliError::Usage("fiber needs --w <rational|branch>".into()));
            }
            run_suite(&Selector::Fiber, &opts)
        }
        Command::Schubert => run_suite(&Selector::Schubert, &opts),
        Command::Deformation => run_suite(&Selector::Deformation, &opts),
    }
}

/// Entry point: 0 when every case is verified, 1 on a failed case, 2 on a
/// usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return 2;
        }
        // Only the first pool configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    match execute(&cli) {
        Ok(cert) => {
            let _ = out.write_all(cert.render(cli.format.into()).as_bytes());
            if cli.timings {
                let _ = writeln!(err, "wall time: {:.3} s", start.elapsed().as_secs_f64());
            }
            if cert.pass {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
