//! Command-line surface for the partope library: compute h-polynomials and
//! f-vectors of partitioned weight polytopes, list facets, run verification
//! suites, sweep over all K, and export exact H-representations.
//!
//! Exit codes: 0 success, 2 verification failure, 1 usage or budget error.
//! Stdout is byte-identical across runs for the same job; timing goes to
//! stderr.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use partope::cohomcheck::{
    verify_c_coefficients, verify_c_vanishing, verify_deg2_surjectivity,
    verify_orbit_product_sweep, verify_phi_kernel, CheckReport,
};
use partope::error::{Error, Result};
use partope::facecount::{f_vector, h_polynomial_faces};
use partope::facetcomb::facet_family;
use partope::geomoracle::{
    alt_anchor, build_model, default_anchor, validate_anchor, verify_against_geometry,
};
use partope::hesspoly::{h_via_characters_a, h_via_precup};
use partope::poly::GradedIntPolynomial;
use partope::rootsys::{Family, RSType, RVec, Rat};
use partope::weyl::ParabolicK;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Parser)]
#[command(
    name = "partope",
    version,
    about = "Exact combinatorics of partitioned weight polytopes in types A/B/C/D"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Faces,
    Precup,
    Characters,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Faces => "faces",
            Method::Precup => "precup",
            Method::Characters => "characters",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Root system family: A, B, C or D
    family: String,
    /// Number of coordinates n (type A_{n-1} uses n coordinates)
    n: usize,
    /// Cut set K as 1-indexed simple-root numbers, e.g. --K 1,2,4
    #[arg(long = "K", value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Anchor point coordinates as rationals, e.g. --anchor -3,-2,-1/2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    anchor: Vec<String>,
    /// Worker threads for sweeps (results do not depend on this)
    #[arg(long)]
    workers: Option<usize>,
    /// Cap on enumerated group elements
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Subcommand)]
enum Cmd {
    /// h-polynomial of P_W(K) by the selected method(s)
    Hpoly {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Faces)]
        method: Method,
    },
    /// f-vector of P_W(K), graded by face dimension from vertices up
    Fvector {
        #[command(flatten)]
        common: Common,
    },
    /// List the facets of P_W(K)
    Facets {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite: orbit-product | c-coeffs | c-vanishing |
    /// phi-kernel | deg2-surjectivity | geometry | cross-method
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Run the suite for every K instead of the one given by --K
        #[arg(long = "all-K")]
        all_k: bool,
    },
    /// Cross-check every K for the given type against all applicable methods
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Write the exact H-representation and vertex set as JSON
    Export {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadInput(format!("cannot parse rational '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn k_display(ks: &[usize]) -> String {
    let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// One row of the checks section.
struct CheckRow {
    name: String,
    pass: bool,
    detail: String,
}

impl CheckRow {
    fn from_report(name: String, r: &CheckReport) -> CheckRow {
        let mut detail = format!("checked {}", r.checked);
        for (k, v) in &r.details {
            detail.push_str(&format!(", {k}={v}"));
        }
        if !r.violations.is_empty() {
            detail.push_str(&format!(
                ", {} violation(s), first: {}",
                r.violations.len(),
                r.violations[0]
            ));
        }
        CheckRow { name, pass: r.pass(), detail }
    }
}

/// Everything a job can emit, serialized in one fixed key order.
struct Report {
    command: String,
    rstype: RSType,
    ks: Vec<usize>,
    method: Option<String>,
    anchor: Option<Vec<Rat>>,
    budget: u128,
    h_polys: Vec<(String, GradedIntPolynomial)>,
    wk_members: Option<Vec<String>>,
    fvec: Option<Vec<u64>>,
    facets: Option<Vec<String>>,
    checks: Vec<CheckRow>,
}

impl Report {
    fn new(command: &str, pk: &ParabolicK, budget: u128) -> Report {
        Report {
            command: command.to_string(),
            rstype: pk.rstype,
            ks: pk.k.clone(),
            method: None,
            anchor: None,
            budget,
            h_polys: Vec::new(),
            wk_members: None,
            fvec: None,
            facets: None,
            checks: Vec::new(),
        }
    }

    fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| !c.pass)
    }

    fn job_json(&self) -> String {
        let mut s = String::from("{");
        s.push_str(&format!("\"command\": {}", jstr(&self.command)));
        s.push_str(&format!(", \"type\": {}", jstr(&self.rstype.label())));
        s.push_str(&format!(", \"n\": {}", self.rstype.n));
        let ks: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        s.push_str(&format!(", \"K\": [{}]", ks.join(", ")));
        if let Some(m) = &self.method {
            s.push_str(&format!(", \"method\": {}", jstr(m)));
        }
        if let Some(a) = &self.anchor {
            let parts: Vec<String> = a.iter().map(|r| jstr(&r.to_string())).collect();
            s.push_str(&format!(", \"anchor\": [{}]", parts.join(", ")));
        }
        s.push_str(&format!(", \"budget\": {}", self.budget));
        s.push('}');
        s
    }

    fn to_json(&self) -> String {
        let mut s = String::from("{\n");
        s.push_str(&format!("  \"job\": {},\n", self.job_json()));
        let polys: Vec<String> = self
            .h_polys
            .iter()
            .map(|(name, p)| format!("\"{}\": {}", name, int_array(p.coeffs())))
            .collect();
        s.push_str(&format!("  \"h_polynomial\": {{{}}},\n", polys.join(", ")));
        if let Some(members) = &self.wk_members {
            let parts: Vec<String> = members.iter().map(|m| jstr(m)).collect();
            s.push_str(&format!("  \"w_k_members\": [{}],\n", parts.join(", ")));
        }
        if let Some(f) = &self.fvec {
            let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("  \"f_vector\": [{}],\n", parts.join(", ")));
        }
        if let Some(facets) = &self.facets {
            let parts: Vec<String> = facets.iter().map(|f| jstr(f)).collect();
            s.push_str(&format!("  \"facets\": [{}],\n", parts.join(", ")));
        }
        s.push_str("  \"checks\": [");
        let rows: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!(
                    "\n    {{\"name\": {}, \"pass\": {}, \"detail\": {}}}",
                    jstr(&c.name),
                    c.pass,
                    jstr(&c.detail)
                )
            })
            .collect();
        s.push_str(&rows.join(","));
        if !rows.is_empty() {
            s.push_str("\n  ");
        }
        s.push_str("],\n");
        s.push_str(&format!("  \"version\": {}\n", jstr(TOOL_VERSION)));
        s.push_str("}\n");
        s
    }

    fn to_text(&self) -> String {
        let mut s = format!(
            "P_{{{}}}(K={}) [{} n={}]\n",
            self.rstype.label(),
            k_display(&self.ks),
            self.command,
            self.rstype.n
        );
        for (name, p) in &self.h_polys {
            s.push_str(&format!("{}: {}\n", name, int_array(p.coeffs())));
            s.push_str(&format!("{}: h(t) = {}\n", name, p.display()));
        }
        if let Some(members) = &self.wk_members {
            s.push_str(&format!(
                "W(K) ({}): {}\n",
                members.len(),
                members.join(" ")
            ));
        }
        if let Some(f) = &self.fvec {
            let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("f_vector: [{}]\n", parts.join(", ")));
        }
        if let Some(facets) = &self.facets {
            s.push_str(&format!("facets ({}):\n", facets.len()));
            for f in facets {
                s.push_str(&format!("  {f}\n"));
            }
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("check {}: {} ({})\n", c.name, verdict, c.detail));
        }
        s
    }
}

fn jstr(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn int_array(coeffs: &[i128]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn make_pk(common: &Common) -> Result<ParabolicK> {
    let family = Family::parse(&common.family)?;
    let rstype = RSType::new(family, common.n)?;
    ParabolicK::new(rstype, common.k.clone())
}

fn parse_anchor(common: &Common, rstype: RSType) -> Result<Option<RVec>> {
    if common.anchor.is_empty() {
        return Ok(None);
    }
    let coords: Result<Vec<Rat>> = common.anchor.iter().map(|s| parse_rat(s)).collect();
    let a = RVec(coords?);
    validate_anchor(rstype, &a)?;
    Ok(Some(a))
}

fn emit(common: &Common, text: String) -> Result<()> {
    match &common.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| Error::BadInput(format!("cannot open {}: {e}", path.display())))?;
            f.write_all(text.as_bytes())
                .map_err(|e| Error::BadInput(format!("write failed: {e}")))?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(common: &Common, report: Report) -> Result<i32> {
    let failed = report.any_failed();
    let text = match common.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    emit(common, text)?;
    Ok(if failed { 2 } else { 0 })
}

fn all_k_sets(rank: usize) -> Vec<Vec<usize>> {
    (0..(1u32 << rank))
        .map(|bits| (1..=rank).filter(|&k| bits >> (k - 1) & 1 == 1).collect())
        .collect()
}

/// Faces vs Precup (vs characters in type A), plus h(1) = |W(K)|.
fn cross_method_report(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut r = CheckReport::new("cross-method");
    let faces = h_polynomial_faces(pk)?;
    let (precup, members) = h_via_precup(pk, budget)?;
    r.checked += 1;
    if faces != precup {
        r.violations
            .push(format!("faces {:?} != precup {:?}", faces.coeffs(), precup.coeffs()));
    }
    if pk.rstype.family == Family::A {
        let chars = h_via_characters_a(pk, budget)?;
        r.checked += 1;
        if faces != chars {
            r.violations.push(format!(
                "faces {:?} != characters {:?}",
                faces.coeffs(),
                chars.coeffs()
            ));
        }
    }
    r.checked += 1;
    if faces.eval(1) != members.len() as i128 {
        r.violations
            .push(format!("h(1) = {} but |W(K)| = {}", faces.eval(1), members.len()));
    }
    r.details.push(("h".into(), int_array(faces.coeffs())));
    Ok(r)
}

/// Cross-method plus the structural h/f invariants, used by `sweep`.
fn sweep_report(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut r = cross_method_report(pk, budget)?;
    r.name = "sweep".into();
    let h = h_polynomial_faces(pk)?;
    let f = f_vector(pk)?;
    r.checked += 5;
    if !h.is_palindromic() {
        r.violations.push("h is not palindromic".into());
    }
    if h.coeff(0) != 1 || h.coeff(h.degree()) != 1 {
        r.violations.push("h(0) or leading coefficient differs from 1".into());
    }
    if h.degree() != pk.rstype.dim() {
        r.violations.push(format!("deg h = {} != dim = {}", h.degree(), pk.rstype.dim()));
    }
    if h.eval(1) != f[0] as i128 {
        r.violations.push(format!("h(1) = {} != f_0 = {}", h.eval(1), f[0]));
    }
    let euler: i128 = f
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i128 } else { -(c as i128) })
        .sum();
    if euler != 1 {
        r.violations.push(format!("Euler alternating sum = {euler}"));
    }
    Ok(r)
}

fn geometry_report(pk: &ParabolicK, user_anchor: Option<&RVec>, budget: u128) -> Result<CheckReport> {
    let anchors = match user_anchor {
        Some(a) => vec![a.clone(), alt_anchor(pk.rstype)],
        None => vec![default_anchor(pk.rstype), alt_anchor(pk.rstype)],
    };
    verify_against_geometry(pk, &anchors, budget)
}

fn suite_report(
    suite: &str,
    pk: &ParabolicK,
    user_anchor: Option<&RVec>,
    budget: u128,
) -> Result<CheckReport> {
    match suite {
        "orbit-product" => verify_orbit_product_sweep(pk, 3, 2, budget),
        "c-coeffs" => verify_c_coefficients(pk, budget),
        "c-vanishing" => verify_c_vanishing(pk, budget),
        "phi-kernel" => verify_phi_kernel(pk, budget),
        "deg2-surjectivity" => verify_deg2_surjectivity(pk, budget),
        "geometry" => geometry_report(pk, user_anchor, budget),
        "cross-method" => cross_method_report(pk, budget),
        _ => Err(Error::BadInput(format!(
            "unknown suite '{suite}'; expected orbit-product | c-coeffs | c-vanishing | \
             phi-kernel | deg2-surjectivity | geometry | cross-method"
        ))),
    }
}

/// Run `f` for every K, in parallel, results ordered by the K bitmask.
fn over_all_k<F>(rstype: RSType, f: F) -> Result<Vec<(Vec<usize>, CheckReport)>>
where
    F: Fn(&ParabolicK) -> Result<CheckReport> + Sync,
{
    use rayon::prelude::*;
    let sets = all_k_sets(rstype.rank());
    sets.into_par_iter()
        .map(|ks| {
            let pk = ParabolicK::new(rstype, ks.clone())?;
            Ok((ks, f(&pk)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Hpoly { common, method } => {
            let pk = make_pk(&common)?;
            if method == Method::Characters && pk.rstype.family != Family::A {
                return Err(Error::BadInput(
                    "the characters method is defined for type A only".into(),
                ));
            }
            let mut report = Report::new("hpoly", &pk, common.budget);
            report.method = Some(method.name().to_string());
            let want = |m: Method| method == m || method == Method::All;
            if want(Method::Faces) {
                report
                    .h_polys
                    .push(("faces".into(), h_polynomial_faces(&pk)?));
            }
            if want(Method::Precup) {
                let (h, members) = h_via_precup(&pk, common.budget)?;
                report.h_polys.push(("precup".into(), h));
                report.wk_members = Some(
                    members.iter().map(|w| w.one_line(pk.rstype)).collect(),
                );
            }
            if want(Method::Characters) && pk.rstype.family == Family::A {
                report
                    .h_polys
                    .push(("characters".into(), h_via_characters_a(&pk, common.budget)?));
            }
            finish(&common, report)
        }
        Cmd::Fvector { common } => {
            let pk = make_pk(&common)?;
            let mut report = Report::new("fvector", &pk, common.budget);
            report.fvec = Some(f_vector(&pk)?);
            finish(&common, report)
        }
        Cmd::Facets { common } => {
            let pk = make_pk(&common)?;
            let mut report = Report::new("facets", &pk, common.budget);
            let fam = facet_family(&pk)?;
            report.facets = Some(
                fam.labels.iter().map(|l| l.display(pk.rstype)).collect(),
            );
            finish(&common, report)
        }
        Cmd::Verify { suite, common, all_k } => {
            setup_workers(&common);
            let pk = make_pk(&common)?;
            let anchor = parse_anchor(&common, pk.rstype)?;
            let mut report = Report::new("verify", &pk, common.budget);
            report.anchor = anchor.as_ref().map(|a| a.0.clone());
            if all_k {
                if !KNOWN_SUITES.contains(&suite.as_str()) {
                    return Err(Error::BadInput(format!("unknown suite '{suite}'")));
                }
                let results = over_all_k(pk.rstype, |p| {
                    suite_report(&suite, p, anchor.as_ref(), common.budget)
                })?;
                for (ks, r) in results {
                    report.checks.push(CheckRow::from_report(
                        format!("{} K={}", suite, k_display(&ks)),
                        &r,
                    ));
                }
            } else {
                let r = suite_report(&suite, &pk, anchor.as_ref(), common.budget)?;
                report.checks.push(CheckRow::from_report(
                    format!("{} K={}", suite, k_display(&pk.k)),
                    &r,
                ));
            }
            finish(&common, report)
        }
        Cmd::Sweep { common } => {
            setup_workers(&common);
            let pk = make_pk(&common)?;
            let mut report = Report::new("sweep", &pk, common.budget);
            let results = over_all_k(pk.rstype, |p| sweep_report(p, common.budget))?;
            for (ks, r) in results {
                report
                    .checks
                    .push(CheckRow::from_report(format!("sweep K={}", k_display(&ks)), &r));
            }
            finish(&common, report)
        }
        Cmd::Export { common } => {
            let pk = make_pk(&common)?;
            let anchor = parse_anchor(&common, pk.rstype)?
                .unwrap_or_else(|| default_anchor(pk.rstype));
            let model = build_model(&pk, &anchor, common.budget)?;
            let mut report = Report::new("export", &pk, common.budget);
            report.anchor = Some(anchor.0.clone());
            let mut s = String::from("{\n");
            s.push_str(&format!("  \"job\": {},\n", report.job_json()));
            let hs: Vec<String> = model
                .halfspaces
                .iter()
                .map(|h| {
                    let normal: Vec<String> =
                        h.normal.0.iter().map(|r| jstr(&r.to_string())).collect();
                    format!(
                        "\n    {{\"label\": {}, \"normal\": [{}], \"bound\": {}}}",
                        jstr(&h.tag.label().display(pk.rstype)),
                        normal.join(", "),
                        jstr(&h.bound.to_string())
                    )
                })
                .collect();
            s.push_str(&format!("  \"halfspaces\": [{}\n  ],\n", hs.join(",")));
            let vs: Vec<String> = model
                .vertices
                .iter()
                .map(|v| {
                    let coords: Vec<String> =
                        v.0.iter().map(|r| jstr(&r.to_string())).collect();
                    format!("[{}]", coords.join(", "))
                })
                .collect();
            s.push_str(&format!("  \"vertices\": [\n    {}\n  ],\n", vs.join(",\n    ")));
            s.push_str(&format!("  \"version\": {}\n", jstr(TOOL_VERSION)));
            s.push_str("}\n");
            emit(&common, s)?;
            Ok(0)
        }
    }
}

const KNOWN_SUITES: [&str; 7] = [
    "orbit-product",
    "c-coeffs",
    "c-vanishing",
    "phi-kernel",
    "deg2-surjectivity",
    "geometry",
    "cross-method",
];

fn setup_workers(common: &Common) {
    if let Some(w) = common.workers {
        // ignore the error if a pool was already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
}

fn main() {
    let started = std::time::Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    };
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    std::process::exit(code);
}
