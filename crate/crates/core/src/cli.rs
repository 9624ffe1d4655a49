//! Command-line front end. Every subcommand prints one JSON report on stdout.
//!
//! Exit codes: 0 verified or decided, 1 violation or DEPENDENT, 2 guard refusal or
//! UNDECIDED, 3 bad input.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::codes::{is_mds, rs_code, EvaluationScheme, LinearCode, DEFAULT_MDS_GUARD};
use crate::designs::{
    audit_design, closed_field_floor, counterexample_design, design_bound, design_from_code, gk_design, gk_old_bound,
    sampled_audit, wronskian_suite, DesignAudit, SubspaceDesign,
};
use crate::error::{Error, Result};
use crate::field::{format_rational, Field, FiniteField, Gf, Rationals};
use crate::io::{field_spec, subspace_json, CodeFile, DesignFile, PatternFile, ProfileFile};
use crate::mr::{
    crosscheck, mr_independent, mr_rank, prime_ladder, Algorithm1Params, Decision, OracleOptions, Overrides,
    DEFAULT_EXACT_GUARD, DEFAULT_MODULAR_GUARD,
};
use crate::ntheory::derive_seed;
use crate::profiles::{
    contains_profile, monte_carlo_threshold, threshold_rate, validate_witness, ContainmentOptions, DEFAULT_CONTAINMENT_GUARD,
};
use crate::subspace::DEFAULT_SUBSPACE_GUARD;
use crate::tensor::{
    abstract_birigidity_audit, independence_audit, matroid_axiom_audit, monotonicity_check, scaling_lemma_check,
    EnumerableField, ErasurePattern, PotentialMatroid, DEFAULT_PATTERN_GUARD,
};

#[derive(Parser, Debug, Serialize)]
#[command(name = "subdesign", version, about = "Subspace designs, local profiles and MR tensor-code oracles")]
pub struct Cli {
    /// Base seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on subspaces enumerated by audits and threshold computations.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSPACE_GUARD)]
    pub guard_subspaces: f64,
    /// Cap on erasure patterns visited by exhaustive matroid checks.
    #[arg(long, global = true, default_value_t = DEFAULT_PATTERN_GUARD)]
    pub guard_patterns: f64,
    /// Cap on message tuples and codeword subsets in brute-force searches.
    #[arg(long, global = true, default_value_t = DEFAULT_CONTAINMENT_GUARD)]
    pub guard_search: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Write a run manifest (arguments, guards, timing, result digest) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Group {
    /// Subspace designs.
    Design {
        #[command(subcommand)]
        cmd: DesignCmd,
    },
    /// Folded Wronskian checks.
    Wronskian {
        #[command(subcommand)]
        cmd: WronskianCmd,
    },
    /// Local profiles.
    Profile {
        #[command(subcommand)]
        cmd: ProfileCmd,
    },
    /// Linear codes.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Correctability and potential matroids.
    Matroid {
        #[command(subcommand)]
        cmd: MatroidCmd,
    },
    /// The MR(m, n, a, b) independence oracle.
    Mr {
        #[command(subcommand)]
        cmd: MrCmd,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum DesignCmd {
    /// Exhaustive audit of a design file or of the kernels of a folded code.
    Audit {
        #[arg(long, conflicts_with = "code", required_unless_present = "code")]
        design: Option<PathBuf>,
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        ell: usize,
        /// Claimed bound A; exceeding it is a violation.
        #[arg(long)]
        bound: Option<usize>,
        /// Fall back to this many sampled subspaces when the guard refuses.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Builds the GK design on a primitive scheme and audits it against the improved bound.
    Gk {
        #[arg(long)]
        q: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The four-plane weak design of F^4 over F_3 (or another field).
    F3 {
        #[arg(long, default_value = "3")]
        field: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum WronskianCmd {
    /// Random instances: criterion vs rank, degree bound, X-divisibility, design-point roots.
    Check {
        #[arg(long = "q", value_delimiter = ',', default_values_t = vec![11u64, 17, 101])]
        fields: Vec<u64>,
        #[arg(long, default_value_t = 300)]
        instances: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum ProfileCmd {
    /// Exact threshold rate with its minimizing pair.
    Threshold {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Brute-force containment of a profile in a code.
    Contains {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        exclude_trivial: bool,
    },
    /// Containment frequency over seeded random [n, k] codes.
    Montecarlo {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        exclude_trivial: bool,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum CodeCmd {
    /// Checks every k x k minor of the generator.
    Mds {
        #[arg(long)]
        code: PathBuf,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum MatroidCmd {
    /// Rank axioms, independence axioms and birigidity of M(C_col, n, b); with --row also
    /// checks that correctable patterns are independent.
    Audit {
        #[arg(long)]
        col: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        row: Option<PathBuf>,
        /// Compare every pair of subsets when at most this many pairs exist.
        #[arg(long, default_value_t = 1e6)]
        pair_guard: f64,
    },
    /// The potential Φ(E) and rank |E| - Φ(E) of a pattern.
    Phi {
        #[arg(long)]
        col: PathBuf,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Scaling equivalence over all patterns with RS codes on odd-integer points.
    ScaleCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        /// "q" for the rationals or a prime for the finite stand-in.
        #[arg(long, default_value = "q")]
        field: String,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    /// Pattern file {m, n, cells}.
    #[arg(long, conflicts_with = "cells")]
    pub pattern: Option<PathBuf>,
    /// Inline 1-indexed cells "i,j;i,j" (needs --m and --n elsewhere, or the grid of the code).
    #[arg(long, allow_hyphen_values = true)]
    pub cells: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct MrArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Paper)]
    pub mode: ModeArg,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub dprime: Option<usize>,
    /// Reduced mode: fill unset values with the smallest margin-satisfying ones.
    #[arg(long)]
    pub minimal: bool,
    /// Modular mode prime list.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Skip peeling, rank-one and counting certificates.
    #[arg(long)]
    pub no_structural: bool,
    #[arg(long, default_value_t = DEFAULT_MODULAR_GUARD)]
    pub modular_guard: f64,
    #[arg(long, default_value_t = DEFAULT_EXACT_GUARD)]
    pub exact_guard: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ModeArg {
    Paper,
    Reduced,
    Modular,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum MrCmd {
    /// Decides independence of one pattern, with a certificate.
    Independent {
        #[command(flatten)]
        params: MrArgs,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Greedy rank of a pattern (the full grid by default).
    Rank {
        #[command(flatten)]
        params: MrArgs,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Every pattern of the grid against the randomized reference oracle.
    Crosscheck {
        #[command(flatten)]
        params: MrArgs,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Reference seeds (default: three derived from --seed).
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Undecided,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Undecided => 2,
        }
    }
}

/// Everything `main` needs to finish a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub parameters: Value,
    pub seed: u64,
    pub guards: Value,
    pub threads: Option<usize>,
    pub version: String,
    pub wall_time_ms: u128,
    pub result_sha256: String,
    pub exit_code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let name = command_name(&cli.group);
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidParameter(format!("thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    let (report, status) = match result {
        Ok(r) => r,
        Err(Error::GuardExceeded { what, estimate, guard }) => (
            json!({"status": "guard-exceeded", "what": what, "estimate": estimate, "guard": guard}),
            Status::Undecided,
        ),
        Err(e) => return Outcome { code: 3, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut report = report;
    if let Value::Object(map) = &mut report {
        map.insert("command".into(), Value::String(name.clone()));
    }
    let stdout = match cli.output {
        Output::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Output::Table => render_table(&report),
    };
    let mut stderr = String::new();
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command: name,
            arguments: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            parameters: serde_json::to_value(&cli.group).unwrap_or(Value::Null),
            seed: cli.seed,
            guards: json!({
                "subspaces": cli.guard_subspaces,
                "patterns": cli.guard_patterns,
                "search": cli.guard_search,
            }),
            threads: cli.threads,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: start.elapsed().as_millis(),
            result_sha256: hex(&Sha256::digest(stdout.as_bytes())),
            exit_code: status.code(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            stderr = format!("warning: could not write manifest {}: {e}\n", path.display());
        }
    }
    Outcome { code: status.code(), stdout, stderr }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn command_name(g: &Group) -> String {
    let (a, b) = match g {
        Group::Design { cmd } => (
            "design",
            match cmd {
                DesignCmd::Audit { .. } => "audit",
                DesignCmd::Gk { .. } => "gk",
                DesignCmd::F3 { .. } => "f3",
            },
        ),
        Group::Wronskian { .. } => ("wronskian", "check"),
        Group::Profile { cmd } => (
            "profile",
            match cmd {
                ProfileCmd::Threshold { .. } => "threshold",
                ProfileCmd::Contains { .. } => "contains",
                ProfileCmd::Montecarlo { .. } => "montecarlo",
            },
        ),
        Group::Code { .. } => ("code", "mds"),
        Group::Matroid { cmd } => (
            "matroid",
            match cmd {
                MatroidCmd::Audit { .. } => "audit",
                MatroidCmd::Phi { .. } => "phi",
                MatroidCmd::ScaleCheck { .. } => "scale-check",
            },
        ),
        Group::Mr { cmd } => (
            "mr",
            match cmd {
                MrCmd::Independent { .. } => "independent",
                MrCmd::Rank { .. } => "rank",
                MrCmd::Crosscheck { .. } => "crosscheck",
            },
        ),
    };
    format!("{a} {b}")
}

/// One "key: value" line per top-level field; nested values stay compact JSON.
pub fn render_table(v: &Value) -> String {
    let Value::Object(map) = v else {
        return format!("{v}\n");
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in map {
        let shown = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {shown}\n"));
    }
    out
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })
}

fn execute(cli: &Cli) -> Result<(Value, Status)> {
    match &cli.group {
        Group::Design { cmd } => design(cli, cmd),
        Group::Wronskian { cmd: WronskianCmd::Check { fields, instances } } => {
            let mut reports = Vec::new();
            let mut ok = true;
            for (i, &q) in fields.iter().enumerate() {
                let r = wronskian_suite(&Gf::prime(q)?, *instances, derive_seed(cli.seed, i as u64))?;
                ok &= r.passes();
                reports.push(serde_json::to_value(r).expect("serializable"));
            }
            Ok((json!({"fields": reports, "passes": ok}), if ok { Status::Ok } else { Status::Violation }))
        }
        Group::Profile { cmd } => profile(cli, cmd),
        Group::Code { cmd: CodeCmd::Mds { code } } => {
            let c = CodeFile::parse(&read(code)?)?;
            let mds = is_mds(&c, DEFAULT_MDS_GUARD.max(cli.guard_search))?;
            let v = json!({"field": field_spec(c.field()), "k": c.k(), "n": c.n(), "s": c.s(), "mds": mds});
            Ok((v, if mds { Status::Ok } else { Status::Violation }))
        }
        Group::Matroid { cmd } => matroid(cli, cmd),
        Group::Mr { cmd } => mr(cli, cmd),
    }
}

fn audit_json<F: Field>(a: &DesignAudit<F>, show: impl Fn(&crate::subspace::Subspace<F>) -> Value) -> Value {
    json!({
        "ell": a.ell,
        "A_strong": a.a_strong,
        "A_weak": a.a_weak,
        "strong_witness": a.strong_witness.as_ref().map(&show),
        "weak_witness": a.weak_witness.as_ref().map(&show),
        "exhaustive": a.exhaustive,
        "subspaces_checked": a.subspaces_checked,
    })
}

fn show_gf(u: &crate::subspace::Subspace<Gf>) -> Value {
    serde_json::to_value(subspace_json(u)).expect("serializable")
}

fn audit_with_fallback(cli: &Cli, d: &SubspaceDesign<Gf>, ell: usize, samples: Option<usize>) -> Result<DesignAudit<Gf>> {
    match audit_design(d, ell, cli.guard_subspaces) {
        Err(Error::GuardExceeded { .. }) if samples.is_some() => sampled_audit(d, ell, samples.unwrap_or(0), cli.seed),
        other => other,
    }
}

fn design(cli: &Cli, cmd: &DesignCmd) -> Result<(Value, Status)> {
    match cmd {
        DesignCmd::Audit { design, code, ell, bound, samples } => {
            let d = match (design, code) {
                (Some(p), _) => DesignFile::parse(&read(p)?)?,
                (None, Some(p)) => design_from_code(&CodeFile::parse(&read(p)?)?),
                (None, None) => return Err(Error::InvalidParameter("need --design or --code".into())),
            };
            let a = audit_with_fallback(cli, &d, *ell, *samples)?;
            let violated = bound.is_some_and(|b| a.a_strong > b);
            let v = json!({
                "params": {"field": field_spec(d.field()), "k": d.k(), "s": d.s(), "n": d.n(), "provenance": d.provenance()},
                "audit": audit_json(&a, show_gf),
                "bound": bound,
                "witnesses_reproduce": a.witnesses_reproduce(&d)?,
            });
            Ok((v, if violated { Status::Violation } else { Status::Ok }))
        }
        DesignCmd::Gk { q, k, s, n, ell, samples } => {
            let field = Gf::parse(q)?;
            let scheme = EvaluationScheme::primitive(field.clone(), *n, *s)?;
            let d = gk_design(&scheme, *k)?;
            let a = audit_with_fallback(cli, &d, *ell, *samples)?;
            let bound = design_bound(*k, *s, *ell)?;
            let old = gk_old_bound(*k, *s, *ell)?;
            let v = json!({
                "params": {"q": field.order(), "k": k, "s": s, "n": n, "ell": ell, "gamma": field.index(scheme.gamma()),
                           "alphas": scheme.alphas().iter().map(|x| field.index(x)).collect::<Vec<_>>()},
                "audit": audit_json(&a, show_gf),
                "bound": bound,
                "old_bound": old,
                "closed_field_floor": closed_field_floor(*k, *s, *ell)?,
                "within_bound": a.a_strong <= bound,
            });
            Ok((v, if a.a_strong <= bound { Status::Ok } else { Status::Violation }))
        }
        DesignCmd::F3 { field } => {
            let f = Gf::parse(field)?;
            let d = counterexample_design(f.clone());
            let a = audit_design(&d, 2, cli.guard_subspaces)?;
            let v = json!({
                "field": field_spec(&f),
                "A_weak": a.a_weak,
                "A_strong": a.a_strong,
                "exhaustive": a.exhaustive,
                "subspaces_checked": a.subspaces_checked,
                "meets_all_four": a.a_weak == 4,
                "weak_witness": a.weak_witness.as_ref().map(show_gf),
                "closed_field_floor": closed_field_floor(4, 2, 2)?,
            });
            Ok((v, Status::Ok))
        }
    }
}

fn profile(cli: &Cli, cmd: &ProfileCmd) -> Result<(Value, Status)> {
    match cmd {
        ProfileCmd::Threshold { profile } => {
            let p = ProfileFile::parse(&read(profile)?)?;
            let t = threshold_rate(&p, cli.guard_subspaces)?;
            let v = json!({
                "q": p.field().order(), "b": p.b(), "n": p.n(),
                "R_V": format_rational(&t.rate),
                "U": t.u.as_ref().map(show_gf),
                "W": t.w.as_ref().map(show_gf),
                "vacuous": t.vacuous,
                "pairs_evaluated": t.pairs_evaluated,
            });
            Ok((v, Status::Ok))
        }
        ProfileCmd::Contains { code, profile, exclude_trivial } => {
            let c = CodeFile::parse(&read(code)?)?;
            let p = ProfileFile::parse(&read(profile)?)?;
            let opts = ContainmentOptions { guard: cli.guard_search, exclude_trivial: *exclude_trivial };
            let w = contains_profile(&c, &p, opts)?;
            let rate = threshold_rate(&p, cli.guard_subspaces).ok();
            let v = match &w {
                Some(w) => json!({
                    "contains": true,
                    "trivial": w.trivial,
                    "messages": w.messages,
                    "U": show_gf(&w.u),
                    "validated": validate_witness(&c, &p, w)?,
                    "rate": format_rational(&c.rate()),
                    "R_V": rate.map(|r| format_rational(&r.rate)),
                }),
                None => json!({"contains": false, "rate": format_rational(&c.rate()), "R_V": rate.map(|r| format_rational(&r.rate))}),
            };
            Ok((v, Status::Ok))
        }
        ProfileCmd::Montecarlo { profile, k, trials, exclude_trivial } => {
            let p = ProfileFile::parse(&read(profile)?)?;
            let opts = ContainmentOptions { guard: cli.guard_search, exclude_trivial: *exclude_trivial };
            let r = monte_carlo_threshold(&p, *k, *trials, cli.seed, opts)?;
            Ok((serde_json::to_value(r).expect("serializable"), Status::Ok))
        }
    }
}

fn parse_cells(text: &str, m: usize, n: usize) -> Result<ErasurePattern> {
    let mut cells = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::Parse { location: format!("--cells {part:?}"), message: "expected i,j".into() };
        let (i, j) = part.split_once(',').ok_or_else(bad)?;
        cells.push((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?));
    }
    ErasurePattern::from_one_indexed(m, n, &cells)
}

fn pattern_from(args: &PatternArgs, m: usize, n: usize, default_full: bool) -> Result<ErasurePattern> {
    let e = match (&args.pattern, &args.cells) {
        (Some(p), _) => PatternFile::parse(&read(p)?)?,
        (None, Some(c)) => parse_cells(c, m, n)?,
        (None, None) if default_full => ErasurePattern::full(m, n),
        (None, None) => return Err(Error::InvalidParameter("need --pattern or --cells".into())),
    };
    if e.m() != m || e.n() != n {
        return Err(Error::Dimension(format!("pattern is {} x {}, expected {m} x {n}", e.m(), e.n())));
    }
    Ok(e)
}

fn matroid(cli: &Cli, cmd: &MatroidCmd) -> Result<(Value, Status)> {
    match cmd {
        MatroidCmd::Audit { col, n, b, row, pair_guard } => {
            let c = CodeFile::parse(&read(col)?)?;
            let m = c.length();
            let pm = PotentialMatroid::new(c.clone(), *n, *b, cli.guard_subspaces)?;
            let axioms = matroid_axiom_audit(|e| pm.rank(e), m, *n, cli.guard_patterns, *pair_guard)?;
            let indep = independence_audit(&pm, cli.guard_patterns)?;
            let a = m - c.k();
            let mds = is_mds(&c, DEFAULT_MDS_GUARD)?;
            let birig = abstract_birigidity_audit(&pm, a, *b)?;
            let mut ok = axioms.passes && indep.downward_closed && indep.exchange && (!mds || birig.passes);
            let mono = match row {
                Some(r) => {
                    let r = CodeFile::parse(&read(r)?)?;
                    if r.length() != *n {
                        return Err(Error::Dimension(format!("row code has length {}, grid has n = {n}", r.length())));
                    }
                    let rep = monotonicity_check(&c, &r, *b, cli.guard_subspaces, cli.guard_patterns)?;
                    ok &= rep.passes;
                    Some(rep)
                }
                None => None,
            };
            let v = json!({
                "m": m, "n": n, "a": a, "b": b, "col_mds": mds,
                "axioms": axioms,
                "independence": indep,
                "birigidity": birig,
                "expected_full_rank": b * m + a * n - a * b,
                "monotonicity": mono,
                "passes": ok,
            });
            Ok((v, if ok { Status::Ok } else { Status::Violation }))
        }
        MatroidCmd::Phi { col, b, pattern } => {
            let c = CodeFile::parse(&read(col)?)?;
            let m = c.length();
            let e = match (&pattern.pattern, &pattern.cells) {
                (Some(p), _) => PatternFile::parse(&read(p)?)?,
                _ => return Err(Error::InvalidParameter("matroid phi needs --pattern".into())),
            };
            if e.m() != m {
                return Err(Error::Dimension(format!("pattern has {} rows, column code has length {m}", e.m())));
            }
            let pm = PotentialMatroid::new(c, e.n(), *b, cli.guard_subspaces)?;
            let r = pm.phi(&e)?;
            let v = json!({
                "phi": r.phi,
                "rank": e.len() as i64 - r.phi,
                "size": e.len(),
                "independent": r.phi == 0,
                "U": show_gf(&r.u),
            });
            Ok((v, Status::Ok))
        }
        MatroidCmd::ScaleCheck { m, n, a, b, t, d, field } => {
            let col_pts: Vec<i64> = (0..*m as i64).map(|i| 2 * i + 1).collect();
            let row_pts: Vec<i64> =
                (0..*n as i64).flat_map(|j| (0..*t as u32).map(move |y| (2 * j + 1) << y)).collect();
            if a > m || b * t + d > n * t {
                return Err(Error::InvalidParameter("need a <= m and b t + d <= t n".into()));
            }
            let k_row = n * t - (b * t + d);
            let report = if field.eq_ignore_ascii_case("q") {
                let q = Rationals;
                let cp: Vec<BigRational> = col_pts.iter().map(|&x| q.from_i64(x)).collect();
                let rp: Vec<BigRational> = row_pts.iter().map(|&x| q.from_i64(x)).collect();
                scale_check(&q, &cp, &rp, m - a, k_row, *n, *b, *t, *d, cli)?
            } else {
                let f = Gf::parse(field)?;
                let cp: Vec<u64> = col_pts.iter().map(|&x| f.from_i64(x)).collect();
                let rp: Vec<u64> = row_pts.iter().map(|&x| f.from_bigint(&BigInt::from(x))).collect();
                scale_check(&f, &cp, &rp, m - a, k_row, *n, *b, *t, *d, cli)?
            };
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["field"] = json!(field);
            Ok((v, if report.passes { Status::Ok } else { Status::Violation }))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn scale_check<F: EnumerableField>(
    f: &F,
    cp: &[F::Elem],
    rp: &[F::Elem],
    k_col: usize,
    k_row: usize,
    n: usize,
    b: usize,
    t: usize,
    d: usize,
    cli: &Cli,
) -> Result<crate::tensor::ScalingReport> {
    let col: LinearCode<F> = rs_code(f, cp, k_col)?;
    let row: LinearCode<F> = rs_code(f, rp, k_row)?;
    scaling_lemma_check(&col, &row, n, b, t, d, cli.guard_subspaces, cli.guard_patterns)
}

fn params_from(a: &MrArgs) -> Result<(Algorithm1Params, OracleOptions)> {
    let given = Overrides { s: a.s, t: a.t, d: a.d, d_prime: a.dprime };
    let p = match a.mode {
        ModeArg::Paper => Algorithm1Params::paper(a.m, a.n, a.a, a.b)?,
        ModeArg::Reduced => {
            let o = if a.minimal { complete_minimal(given, a.m, a.n, a.a, a.b) } else { given };
            Algorithm1Params::reduced(a.m, a.n, a.a, a.b, o)?
        }
        ModeArg::Modular => {
            let primes = if a.primes.is_empty() { prime_ladder().to_vec() } else { a.primes.clone() };
            Algorithm1Params::modular(a.m, a.n, a.a, a.b, primes)?
        }
    };
    let opts = OracleOptions { structural: !a.no_structural, modular_guard: a.modular_guard, exact_guard: a.exact_guard };
    Ok((p, opts))
}

/// Fills unset values along d -> t -> d' -> s with the smallest ones meeting the margins.
fn complete_minimal(o: Overrides, m: usize, n: usize, a: usize, b: usize) -> Overrides {
    if a > m || b > n || m == 0 {
        return o;
    }
    let d = o.d.unwrap_or((m - 1) * (n - b) + 1);
    let t = o.t.unwrap_or(d * m + 1);
    let dp = o.d_prime.unwrap_or((t * n - 1) * (m - a) + 1);
    let s = o.s.unwrap_or(dp * t * n + 1);
    Overrides { s: Some(s), t: Some(t), d: Some(d), d_prime: Some(dp) }
}

fn mr(cli: &Cli, cmd: &MrCmd) -> Result<(Value, Status)> {
    match cmd {
        MrCmd::Independent { params, pattern } => {
            let (p, opts) = params_from(params)?;
            let e = pattern_from(pattern, p.m, p.n, false)?;
            let v = mr_independent(&e, &p, opts)?;
            let verified = v.verify(&e, &p)?;
            let status = match v.decision {
                Decision::Independent => Status::Ok,
                Decision::Dependent => Status::Violation,
                Decision::Undecided => Status::Undecided,
            };
            let out = json!({
                "params": p,
                "pattern": e.one_indexed(),
                "decision": v.decision,
                "certificate": v.certificate,
                "certificate_verified": verified,
                "conditional": v.conditional,
                "reason": v.reason,
                "expected_full_rank": p.b * p.m + p.a * p.n - p.a * p.b,
            });
            Ok((out, status))
        }
        MrCmd::Rank { params, pattern } => {
            let (p, opts) = params_from(params)?;
            let e = pattern_from(pattern, p.m, p.n, true)?;
            let r = mr_rank(&e, &p, opts)?;
            let out = json!({"params": p, "pattern": e.one_indexed(), "rank": r.rank, "basis": r.basis,
                             "expected_full_rank": r.expected_full_rank, "conditional": p.conditional});
            Ok((out, Status::Ok))
        }
        MrCmd::Crosscheck { params, prime, trials, seeds } => {
            let (p, opts) = params_from(params)?;
            let seeds: Vec<u64> =
                if seeds.is_empty() { (0..3).map(|i| derive_seed(cli.seed, i)).collect() } else { seeds.clone() };
            let prime = prime.unwrap_or(prime_ladder()[0]);
            let r = crosscheck(&p, opts, prime, *trials, &seeds, cli.guard_patterns)?;
            let ok = r.passes;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["params"] = serde_json::to_value(&p).expect("serializable");
            Ok((v, if ok { Status::Ok } else { Status::Violation }))
        }
    }
}
