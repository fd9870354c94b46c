//! The `c3q` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical mismatch, 3 resource cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use c3_qchar::fm::{
    check_truncation_certificate, table1_certificate, tkl0_certificate, CertificateReport, FmLimits, Table1Row,
    TruncationCertificate,
};
use c3_qchar::restriction::DecompositionReport;
use c3_qchar::tsystem::{
    canonical_label, highest_monomial, relation_instance, verify_relation, CharacterCache, CharacterSource, Family,
    FmSource, ModuleLabel, RecursionSource, RelationInstance, System, VerifyOptions, VerifyReport,
};
use c3_qchar::{Error, LMonomial, QCharacter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable holding the default cache directory.
pub const CACHE_ENV: &str = "C3Q_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "c3q", version, about = "Exact q-characters and extended T-systems for quantum affine C3")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached characters (files such as `T_k1_l0_m1.json`).
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Use relations, chains and certificates exactly as printed, without corrections.
    #[arg(long, global = true)]
    pub strict_paper: bool,
    /// Size of the worker pool (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Largest number of terms of any computed character.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_terms: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fm,
    Recursion,
    Both,
}

#[derive(Args, Debug)]
pub struct LabelArgs {
    /// Family (T, Ttilde, S, R, U, V, P, O, their barred forms such as Tbar, or `fundamental`).
    pub family: String,
    /// Family parameters; `fundamental` takes the node.
    #[arg(allow_negative_numbers = true)]
    pub params: Vec<i64>,
    /// Shift `s` of the label (spectral parameter for `fundamental`).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the q-character of a module.
    Compute {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, value_enum, default_value_t = Method::Fm)]
        method: Method,
    },
    /// Verify every instance of a system with parameters at most `--max`.
    Verify {
        /// usual, I, II, III or IV.
        system: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        max: i64,
        /// Shifts to check, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
        s: Vec<i64>,
        /// Source of characters.
        #[arg(long, value_enum, default_value_t = Method::Fm)]
        method: Method,
        /// Development: shift the top and bottom modules of every instance by one.
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Decompose the restriction of a module to the finite quantum group.
    Decompose {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Check a truncation certificate (`T_k_l_0` or a tabulated row).
    Certify {
        row: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Development: drop the last monomial of `M`.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TermCap(..) | Error::WorkCap(..) | Error::DepthCap(..) => EXIT_CAP,
            Error::InvalidLabel(_)
            | Error::Parse(_)
            | Error::Unknown(_)
            | Error::OutOfRange(..)
            | Error::NonDominantMonomial(_)
            | Error::InvalidNode(_)
            | Error::Io(_) => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

/// Parses `args` (including the program name) and runs the command, writing
/// the report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            if cli.format == Format::Json {
                let _ = writeln!(out, "{}", json!({ "error": f.message, "exit_code": f.code }));
            }
            eprintln!("c3q: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    match &cli.command {
        Command::Compute { label, method } => cmd_compute(cli, label, *method, out),
        Command::Verify { system, max, s, method, perturb } => {
            cmd_verify(cli, &pool, system, *max, s, *method, *perturb, out)
        }
        Command::Decompose { label } => cmd_decompose(cli, label, out),
        Command::Certify { row, params, corrupt } => cmd_certify(cli, row, params, *corrupt, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| usage(format!("cannot write output: {e}")))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| usage(e.to_string()))?;
    emit(out, &s)
}

fn limits(cli: &Cli) -> FmLimits {
    FmLimits { max_terms: usize::try_from(cli.max_terms).unwrap_or(usize::MAX), ..FmLimits::default() }
}

fn cache(cli: &Cli, sub: &str) -> CharacterCache {
    match &cli.cache_dir {
        Some(d) => CharacterCache::with_dir(d.join(sub)),
        None => CharacterCache::in_memory(),
    }
}

fn fm_source(cli: &Cli) -> FmSource {
    FmSource::new(cache(cli, "fm"), limits(cli))
}

fn recursion_source(cli: &Cli) -> RecursionSource {
    RecursionSource::new(cache(cli, "recursion"), limits(cli))
}

fn source(cli: &Cli, method: Method) -> Box<dyn CharacterSource> {
    match method {
        Method::Recursion => Box::new(recursion_source(cli)),
        _ => Box::new(fm_source(cli)),
    }
}

/// The label of the fundamental module with highest monomial `i_s`.
pub fn fundamental_label(node: i64, s: i64) -> Result<ModuleLabel, Failure> {
    match node {
        3 => Ok(ModuleLabel::t(1, 0, 0, s)),
        2 => Ok(ModuleLabel::t(0, 1, 0, s - 1)),
        1 => Ok(ModuleLabel::t(0, 0, 1, s - 2)),
        _ => Err(usage(format!("fundamental takes a node 1, 2 or 3, got {node}"))),
    }
}

/// Builds the label named on the command line.
pub fn parse_label(a: &LabelArgs) -> Result<ModuleLabel, Failure> {
    if a.family.eq_ignore_ascii_case("fundamental") {
        let [node] = a.params[..] else { return Err(usage("fundamental takes exactly one node")) };
        return fundamental_label(node, a.s);
    }
    let family: Family = a.family.parse()?;
    Ok(ModuleLabel::new(family, &a.params, a.s)?)
}

fn highest_text(label: &ModuleLabel) -> String {
    highest_monomial(label).map_or_else(|_| "none".into(), |m| m.to_string())
}

#[derive(Serialize)]
struct ComputeReport<'a> {
    label: String,
    canonical: String,
    highest_monomial: String,
    method: &'static str,
    agree: Option<bool>,
    terms: usize,
    dominant: usize,
    dimension: i64,
    seconds: f64,
    character: &'a QCharacter,
}

fn cmd_compute(cli: &Cli, la: &LabelArgs, method: Method, out: &mut dyn Write) -> Result<i32, Failure> {
    let label = parse_label(la)?;
    let start = Instant::now();
    let (x, agree) = match method {
        Method::Fm => (fm_source(cli).character(&label)?, None),
        Method::Recursion => (recursion_source(cli).character(&label)?, None),
        Method::Both => {
            let a = fm_source(cli).character(&label)?;
            let b = recursion_source(cli).character(&label)?;
            let same = *a == *b;
            (a, Some(same))
        }
    };
    let rep = ComputeReport {
        label: label.to_string(),
        canonical: canonical_label(&label).to_string(),
        highest_monomial: highest_text(&label),
        method: match method {
            Method::Fm => "fm",
            Method::Recursion => "recursion",
            Method::Both => "both",
        },
        agree,
        terms: x.len(),
        dominant: x.dominant_monomials().len(),
        dimension: x.dimension(),
        seconds: start.elapsed().as_secs_f64(),
        character: &x,
    };
    if cli.format == Format::Json {
        emit_json(out, &rep)?;
    } else {
        let mut s = format!("{} (canonical {})\n", rep.label, rep.canonical);
        s += &format!("highest monomial: {}\n", rep.highest_monomial);
        s += &format!("method: {}", rep.method);
        if let Some(a) = agree {
            s += if a { " (fm and recursion agree)" } else { " (fm and recursion DIFFER)" };
        }
        s += &format!("\nterms: {}\ndominant monomials: {}\ndimension: {}\ntime: {:.3} s\n", rep.terms, rep.dominant, rep.dimension, rep.seconds);
        s += &format!("character: {}", x.to_text());
        emit(out, &s)?;
    }
    Ok(if agree == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

/// Every instance of `system` with parameters at most `max`, at each shift.
pub fn system_instances(system: System, max: i64, shifts: &[i64], strict_paper: bool) -> Result<Vec<RelationInstance>, Error> {
    let mut v = Vec::new();
    for id in system.relations() {
        for p in id.grid(max) {
            for &s in shifts {
                v.push(relation_instance(id, &p, s, strict_paper)?);
            }
        }
    }
    Ok(v)
}

fn perturbed(r: &RelationInstance) -> RelationInstance {
    let mut r = r.clone();
    r.top = r.top.with_shift(r.top.shift + 1);
    r.bottom = r.bottom.with_shift(r.bottom.shift + 1);
    r
}

fn ledger_text(v: &[(LMonomial, i64)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = v.iter().map(|(m, c)| if *c == 1 { format!("[{m}]") } else { format!("{c}[{m}]") }).collect();
    parts.join(" + ")
}

/// One line per instance plus its dominant ledgers.
pub fn verify_report_text(r: &VerifyReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut s = format!("{status} {} [{:?}, {:.3} s]\n", r.instance, r.method, r.seconds);
    let show = |m: &Option<LMonomial>| m.as_ref().map_or("none".to_string(), |m| m.to_string());
    if !r.balance.ok {
        s += &format!(
            "  highest-monomial balance FAILS: left side {} vs right side {}\n",
            show(&r.balance.lhs),
            show(&r.balance.rhs)
        );
    }
    if !r.equal {
        s += "  identity FAILS\n";
    }
    s += &format!("  dominant [L][R]: {}\n", ledger_text(&r.lhs_dominant));
    s += &format!("  dominant [T][B]: {}\n", ledger_text(&r.top_bottom_dominant));
    s += &format!("  dominant sources: {}", ledger_text(&r.source_dominant));
    if let Some(sp) = r.sources_special {
        s += if sp { " (special)" } else { " (NOT special)" };
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    pool: &rayon::ThreadPool,
    system: &str,
    max: i64,
    shifts: &[i64],
    method: Method,
    perturb: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let system: System = system.parse()?;
    if method == Method::Both {
        return Err(usage("verify takes --method fm or --method recursion"));
    }
    let start = Instant::now();
    let mut instances = system_instances(system, max, shifts, cli.strict_paper)?;
    if perturb {
        instances = instances.iter().map(perturbed).collect();
    }
    let src = source(cli, method);
    let opts = VerifyOptions::default();
    let reports: Vec<VerifyReport> = pool.install(|| {
        instances.par_iter().map(|r| verify_relation(r, &*src, &opts)).collect::<Result<_, Error>>()
    })?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    let seconds = start.elapsed().as_secs_f64();
    if cli.format == Format::Json {
        emit_json(
            out,
            &json!({
                "system": system.to_string(),
                "max": max,
                "shifts": shifts,
                "strict_paper": cli.strict_paper,
                "instances": reports,
                "passed": passed,
                "failed": reports.len() - passed,
                "seconds": seconds,
            }),
        )?;
    } else {
        for r in &reports {
            emit(out, &verify_report_text(r))?;
        }
        emit(out, &format!("system {system}: {passed}/{} instances pass in {seconds:.2} s", reports.len()))?;
    }
    Ok(if passed == reports.len() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_decompose(cli: &Cli, la: &LabelArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let label = parse_label(la)?;
    let x = fm_source(cli).character(&label)?;
    let rep = DecompositionReport::new(&label, &x)?;
    if cli.format == Format::Json {
        emit_json(out, &rep)?;
    } else {
        emit(out, &rep.to_string())?;
    }
    Ok(EXIT_OK)
}

/// The certificate named by a row and its parameters.
pub fn certificate(row: &str, params: &[i64], strict_paper: bool) -> Result<TruncationCertificate, Failure> {
    if row.eq_ignore_ascii_case("T_k_l_0") {
        let [k, l] = params[..] else { return Err(usage("T_k_l_0 takes two parameters k l")) };
        if k < 1 || l < 0 {
            return Err(usage("T_k_l_0 needs k >= 1 and l >= 0"));
        }
        return Ok(tkl0_certificate(k, l, !strict_paper));
    }
    let r: Table1Row = row.parse()?;
    if !r.in_range(params) {
        return Err(usage(format!("parameters {params:?} are outside the range of row {r}")));
    }
    Ok(table1_certificate(r, params, strict_paper)?)
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    row: &'a str,
    params: &'a [i64],
    certificate: &'a TruncationCertificate,
    report: &'a CertificateReport,
    ok: bool,
}

fn cmd_certify(cli: &Cli, row: &str, params: &[i64], corrupt: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut cert = certificate(row, params, cli.strict_paper)?;
    if corrupt && cert.m.len() > 1 {
        cert.m.pop();
    }
    let rep = check_truncation_certificate(&cert);
    if cli.format == Format::Json {
        emit_json(out, &CertifyOutput { row, params, certificate: &cert, report: &rep, ok: rep.ok() })?;
    } else {
        let bound = cert.u.upper.map_or("none".to_string(), |b| b.to_string());
        let mut s = format!("certificate {row} {params:?}\n");
        s += &format!("m_+ = {}\nU = I x {{s <= {bound}}}\n|M| = {}\n", cert.m_plus, cert.m.len());
        for m in &cert.m {
            s += &format!("  {m}\n");
        }
        for (k, name) in ["i", "ii", "iii", "iv"].iter().enumerate() {
            s += &format!("condition ({name}): {}\n", if rep.conditions[k] { "holds" } else { "FAILS" });
        }
        for f in &rep.failures {
            s += &format!("  {f}\n");
        }
        s += if rep.ok() { "certificate verified" } else { "certificate FAILS" };
        emit(out, &s)?;
    }
    Ok(if rep.ok() { EXIT_OK } else { EXIT_MISMATCH })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(family: &str, params: &[i64], s: i64) -> Result<ModuleLabel, Failure> {
        parse_label(&LabelArgs { family: family.into(), params: params.to_vec(), s })
    }

    #[test]
    fn fundamental_labels() {
        for node in 1..=3u8 {
            let l = fundamental_label(node as i64, 4).unwrap();
            assert_eq!(highest_monomial(&l).unwrap(), LMonomial::y(node, 4));
        }
        assert_eq!(fundamental_label(4, 0).unwrap_err().code, EXIT_USAGE);
        assert_eq!(label("fundamental", &[1, 2], 0).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn labels_from_arguments() {
        assert_eq!(label("T", &[1, 0, 1], 2).unwrap(), ModuleLabel::t(1, 0, 1, 2));
        assert_eq!(label("tbar", &[0, 1, 0], 0).unwrap().family, Family::Tbar);
        assert_eq!(label("T", &[1], 0).unwrap_err().code, EXIT_USAGE);
        assert_eq!(label("Q", &[1], 0).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn exit_codes_of_errors() {
        assert_eq!(Failure::from(Error::TermCap(3, 2)).code, EXIT_CAP);
        assert_eq!(Failure::from(Error::WorkCap(3, 2)).code, EXIT_CAP);
        assert_eq!(Failure::from(Error::NotDivisible("x".into())).code, EXIT_MISMATCH);
        assert_eq!(Failure::from(Error::Parse("x".into())).code, EXIT_USAGE);
    }

    #[test]
    fn certificates_by_name() {
        assert_eq!(certificate("T_k_l_0", &[2, 1], false).unwrap().m.len(), 3);
        assert_eq!(certificate("T_k_l_0", &[2, 1], true).unwrap().m.len(), 2);
        assert!(certificate("V_1_l", &[0], false).is_err());
        assert!(certificate("nope", &[1], false).is_err());
    }

    #[test]
    fn run_writes_report() {
        let mut buf = Vec::new();
        let code = run(["c3q", "--format", "json", "certify", "P_0_l", "1"], &mut buf);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["ok"], true);
        let mut buf = Vec::new();
        assert_eq!(run(["c3q", "verify", "usual", "--max", "0"], &mut buf), EXIT_USAGE);
    }
}
