//! The `generate` / `verify` command line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructors::{
    alt_params, construct_alt6, construct_basic, construct_g, construct_sec7, construct_plain, determinant_sizes,
    Family, FamilyJson, Representation,
};
use crate::error::{KrallError, Result};
use crate::exact::{as_integer, fmt_rat, parse_rat, rat, IndexSet, Rational};
use crate::measures::{MeasureJson, NuParams};
use crate::verify::identities::{moment_suite, triangular_reports, MomentContext};
use crate::verify::limits::{verify_limits, LimitKind};
use crate::verify::operator::{operator_search, krall_search_family, SearchOptions};
use crate::verify::orthogonality::{
    equivalence_reports, flip_reports, geronimus_reports, gram_schmidt_reports, orthogonality_report,
    recurrence_reports,
};
use crate::verify::IdentityReport;

#[derive(Parser, Debug)]
#[command(name = "krall", version, about = "Exact Krall dual Hahn families: generate and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a family and write it as JSON or CSV
    Generate(JobArgs),
    /// Run verification suites and stream one JSON record per check
    Verify(JobArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Basic,
    #[value(name = "G")]
    G,
    Alt6,
    Sec7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Equivalence,
    Flip,
    Identities,
    Limits,
    Operator,
    Orthogonality,
    Sizes,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Equivalence => "equivalence",
            Suite::Flip => "flip",
            Suite::Identities => "identities",
            Suite::Limits => "limits",
            Suite::Operator => "operator",
            Suite::Orthogonality => "orthogonality",
            Suite::Sizes => "sizes",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub b: i64,
    #[arg(long = "N", default_value_t = 2, allow_negative_numbers = true)]
    pub n: i64,
    /// comma separated rationals; defaults to 2 for every M_i
    #[arg(long = "M", value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Vec<String>,
    /// comma separated rationals (integers for alt6)
    #[arg(long = "U", value_delimiter = ',', allow_hyphen_values = true)]
    pub u: Vec<String>,
    /// row subset for --rep G; defaults to {b..a+b-1}
    #[arg(long = "G", value_delimiter = ',', allow_hyphen_values = true)]
    pub g: Vec<i64>,
    #[arg(long, value_enum, default_value = "basic")]
    pub rep: RepArg,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Validated job configuration.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    pub m: Vec<Rational>,
    pub u: Vec<Rational>,
    pub g: Option<IndexSet>,
    pub rep: RepArg,
    pub n_max: Option<usize>,
    pub suite: Suite,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl JobConfig {
    pub fn from_args(args: &JobArgs) -> Result<Self> {
        let m = if args.m.is_empty() {
            vec![rat(2); args.a.min(args.b).max(0) as usize]
        } else {
            args.m.iter().map(|s| parse_rat(s.trim())).collect::<Result<_>>()?
        };
        let u: Vec<Rational> = args.u.iter().map(|s| parse_rat(s.trim())).collect::<Result<_>>()?;
        let g = (!args.g.is_empty()).then(|| IndexSet::new(args.g.clone()));
        Ok(JobConfig {
            a: args.a,
            b: args.b,
            n: args.n,
            m,
            u,
            g,
            rep: args.rep,
            n_max: args.nmax,
            suite: args.suite,
            out: args.out.clone(),
            format: args.format,
        })
    }

    pub fn params(&self) -> Result<NuParams> {
        NuParams::new(self.a, self.b, self.n, self.m.clone())
    }

    /// U as integers (needed by the shifted representation and its identities).
    pub fn integer_u(&self) -> Result<IndexSet> {
        self.u
            .iter()
            .map(|v| {
                as_integer(v).ok_or_else(|| KrallError::InvalidParams(format!("U must be integers here, got {}", fmt_rat(v))))
            })
            .collect()
    }
}

/// Builds the family selected by the configuration.
pub fn build_family(cfg: &JobConfig) -> Result<Family> {
    let p = cfg.params()?;
    match cfg.rep {
        RepArg::Basic if cfg.u.is_empty() && p.b <= p.a => construct_basic(&p, &[], cfg.n_max),
        RepArg::Basic if cfg.u.is_empty() => construct_plain(&p, cfg.n_max),
        RepArg::Basic => construct_basic(&p, &cfg.u, cfg.n_max),
        RepArg::G => {
            let g = cfg.g.clone().unwrap_or_else(|| IndexSet::range(p.b, p.a + p.b - 1));
            construct_g(&p, &g, &cfg.u, cfg.n_max)
        }
        RepArg::Alt6 => construct_alt6(&p, &cfg.integer_u()?, cfg.n_max),
        RepArg::Sec7 => construct_sec7(&p, &cfg.u, cfg.n_max),
    }
}

/// Family JSON plus its measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateJson {
    #[serde(flatten)]
    pub family: FamilyJson,
    pub measure: MeasureJson,
}

pub fn generate_output(cfg: &JobConfig, fam: &Family) -> Result<String> {
    match cfg.format {
        Format::Json => {
            let out = GenerateJson { family: FamilyJson::from(fam), measure: MeasureJson::from(&fam.measure) };
            serde_json::to_string_pretty(&out)
                .map(|s| s + "\n")
                .map_err(|e| KrallError::Internal(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| KrallError::Internal(e.to_string());
            w.write_record(["n", "field", "k", "value"]).map_err(csv_err)?;
            for (n, q) in fam.polys.iter().enumerate() {
                let ns = n.to_string();
                for (k, c) in q.coeffs().iter().enumerate() {
                    w.write_record([ns.as_str(), "q", &k.to_string(), &fmt_rat(c)]).map_err(csv_err)?;
                }
                w.write_record([ns.as_str(), "phi", "", &fmt_rat(&fam.phi[n])]).map_err(csv_err)?;
                w.write_record([ns.as_str(), "norm", "", &fmt_rat(&fam.norms[n])]).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| KrallError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| KrallError::Internal(e.to_string()))
        }
    }
}

/// One output record of `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub id: String,
    pub params: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Record {
    fn from_report(suite: Suite, r: IdentityReport) -> Self {
        Record {
            suite: suite.name(),
            id: r.id,
            params: r.params,
            lhs: Some(fmt_rat(&r.lhs)),
            rhs: Some(fmt_rat(&r.rhs)),
            pass: r.pass,
            detail: None,
        }
    }
}

fn reports(suite: Suite, v: Vec<IdentityReport>) -> Vec<Record> {
    v.into_iter().map(|r| Record::from_report(suite, r)).collect()
}

fn label(cfg: &JobConfig) -> String {
    let list = |v: &[Rational]| v.iter().map(fmt_rat).collect::<Vec<_>>().join(",");
    format!("a={} b={} N={} M=[{}] U=[{}]", cfg.a, cfg.b, cfg.n, list(&cfg.m), list(&cfg.u))
}

fn run_orthogonality(cfg: &JobConfig) -> Result<Vec<Record>> {
    let fam = build_family(cfg)?;
    let mut out = orthogonality_report(&fam);
    out.extend(gram_schmidt_reports(&fam)?);
    if fam.representation == Representation::Basic {
        out.extend(recurrence_reports(&fam, 3)?);
    }
    if cfg.u.is_empty() {
        out.extend(geronimus_reports(&fam.params)?);
    }
    Ok(reports(Suite::Orthogonality, out))
}

fn run_identities(cfg: &JobConfig, n_max: i64) -> Result<Vec<Record>> {
    let p = cfg.params()?;
    if p.b > p.a {
        return Err(KrallError::Precondition("the moment identities need b <= a".into()));
    }
    let mut out = Vec::new();
    if cfg.u.is_empty() {
        out.extend(moment_suite(&MomentContext::basic(&p)?, n_max)?);
        out.extend(triangular_reports(&p)?);
        out.extend(moment_suite(&MomentContext::sec7(&p)?, n_max)?);
    }
    if let Ok(u) = cfg.integer_u() {
        if alt_params(p.a, p.b, p.n, &u).is_ok() {
            out.extend(moment_suite(&MomentContext::alt(&p, &u)?, n_max)?);
        }
    }
    Ok(reports(Suite::Identities, out))
}

fn run_limits(cfg: &JobConfig) -> Result<Vec<Record>> {
    let p = cfg.params()?;
    if p.b > p.a {
        return Err(KrallError::Precondition("the limit suite needs b <= a".into()));
    }
    let m = &p.m[0];
    if p.m.iter().any(|v| v != m) {
        return Err(KrallError::Precondition("the measure limits need all M_i equal".into()));
    }
    let u = cfg.integer_u()?;
    let mut out = Vec::new();
    for kind in [LimitKind::MeasureMu, LimitKind::W39, LimitKind::W310, LimitKind::Eval76, LimitKind::Quotient77] {
        out.extend(verify_limits(kind, p.a, p.b, p.n, m, &u)?);
    }
    if alt_params(p.a, p.b, p.n, &u).is_ok() {
        out.extend(verify_limits(LimitKind::MeasureAlt, p.a, p.b, p.n, m, &u)?);
    }
    Ok(reports(Suite::Limits, out))
}

fn run_operator(cfg: &JobConfig) -> Result<Vec<Record>> {
    let p = cfg.params()?;
    let r = (p.a * p.b + 1) as usize;
    let fam = krall_search_family(&p, 7)?;
    let out = operator_search(&fam, &rat(p.a), &rat(p.b), r, &SearchOptions::for_order(r))?;
    let attempts = serde_json::to_value(&out.attempts).map_err(|e| KrallError::Internal(e.to_string()))?;
    let detail = match &out.operator {
        Some(op) => json!({
            "r": r,
            "form": op.form,
            "degree": op.numerators.iter().filter_map(|h| h.degree()).max(),
            "denominator": op.denominator.coeffs().iter().map(fmt_rat).collect::<Vec<_>>(),
            "gammas": op.gammas.iter().map(|(n, g)| json!([n, fmt_rat(g)])).collect::<Vec<_>>(),
            "attempts": attempts,
        }),
        None => json!({ "r": r, "attempts": attempts }),
    };
    Ok(vec![Record {
        suite: Suite::Operator.name(),
        id: "operator-search".into(),
        params: format!("{} members={}", label(cfg), fam.len()),
        lhs: None,
        rhs: None,
        pass: out.operator.is_some(),
        detail: Some(detail),
    }])
}

fn run_sizes(cfg: &JobConfig) -> Result<Vec<Record>> {
    let u = cfg.integer_u()?;
    let s = determinant_sizes(cfg.a, cfg.b, cfg.n, &u)?;
    Ok(vec![Record {
        suite: Suite::Sizes.name(),
        id: "determinant-sizes".into(),
        params: label(cfg),
        lhs: Some(s.alt6_printed.to_string()),
        rhs: Some(s.alt6_structural.to_string()),
        pass: s.alt6_printed == s.alt6_structural,
        detail: Some(serde_json::to_value(&s).map_err(|e| KrallError::Internal(e.to_string()))?),
    }])
}

fn run_flip(cfg: &JobConfig) -> Result<Vec<Record>> {
    Ok(reports(Suite::Flip, flip_reports(&cfg.params()?)?))
}

fn run_equivalence(cfg: &JobConfig) -> Result<Vec<Record>> {
    Ok(reports(Suite::Equivalence, equivalence_reports(&cfg.params()?, &cfg.integer_u()?, cfg.n_max)?))
}

/// Runs the selected suites. With `all`, suites whose preconditions do not hold for the given
/// parameters are skipped; a named suite reports them as errors.
pub fn run_verify(cfg: &JobConfig) -> Result<Vec<Record>> {
    let n_max = cfg.n_max.map_or(4, |v| v as i64);
    let run = |s: Suite| -> Result<Vec<Record>> {
        match s {
            Suite::Equivalence => run_equivalence(cfg),
            Suite::Flip => run_flip(cfg),
            Suite::Identities => run_identities(cfg, n_max),
            Suite::Limits => run_limits(cfg),
            Suite::Operator => run_operator(cfg),
            Suite::Orthogonality => run_orthogonality(cfg),
            Suite::Sizes => run_sizes(cfg),
            Suite::All => unreachable!(),
        }
    };
    if cfg.suite != Suite::All {
        return run(cfg.suite);
    }
    cfg.params()?;
    let mut out = Vec::new();
    for s in [
        Suite::Equivalence,
        Suite::Flip,
        Suite::Identities,
        Suite::Limits,
        Suite::Operator,
        Suite::Orthogonality,
        Suite::Sizes,
    ] {
        match run(s) {
            Ok(v) => out.extend(v),
            Err(KrallError::Internal(e)) => return Err(KrallError::Internal(e)),
            Err(_) => {}
        }
    }
    Ok(out)
}

pub fn verify_output(cfg: &JobConfig, records: &[Record]) -> Result<String> {
    match cfg.format {
        Format::Json => {
            let mut s = String::new();
            for r in records {
                s += &serde_json::to_string(r).map_err(|e| KrallError::Internal(e.to_string()))?;
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| KrallError::Internal(e.to_string());
            w.write_record(["suite", "id", "params", "lhs", "rhs", "pass"]).map_err(csv_err)?;
            for r in records {
                w.write_record([
                    r.suite,
                    &r.id,
                    &r.params,
                    r.lhs.as_deref().unwrap_or(""),
                    r.rhs.as_deref().unwrap_or(""),
                    if r.pass { "true" } else { "false" },
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| KrallError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| KrallError::Internal(e.to_string()))
        }
    }
}

/// Exit status for an error: internal consistency failures count as verification failures,
/// everything else is a configuration problem.
pub fn exit_code_for(e: &KrallError) -> i32 {
    match e {
        KrallError::Internal(_) => 1,
        _ => 2,
    }
}

fn emit(cfg: &JobConfig, text: &str) -> std::io::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn error_line(e: &KrallError) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (args, generate) = match &cli.command {
        Command::Generate(a) => (a, true),
        Command::Verify(a) => (a, false),
    };
    let result = JobConfig::from_args(args).and_then(|cfg| {
        if generate {
            let fam = build_family(&cfg)?;
            Ok((cfg.clone(), generate_output(&cfg, &fam)?, true))
        } else {
            let recs = run_verify(&cfg)?;
            let ok = recs.iter().all(|r| r.pass);
            for r in recs.iter().filter(|r| !r.pass) {
                eprintln!("FAIL {} {} {}: lhs={} rhs={}", r.suite, r.id, r.params, r.lhs.as_deref().unwrap_or("-"), r.rhs.as_deref().unwrap_or("-"));
            }
            eprintln!("{} checks, {} failing", recs.len(), recs.iter().filter(|r| !r.pass).count());
            Ok((cfg.clone(), verify_output(&cfg, &recs)?, ok))
        }
    });
    match result {
        Ok((cfg, text, ok)) => {
            if let Err(e) = emit(&cfg, &text) {
                eprintln!("{}", json!({ "error": format!("cannot write output: {e}") }));
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{}", error_line(&e));
            exit_code_for(&e)
        }
    }
}
