//! Command-line front end: stable text and JSON output over every library
//! operation, with a scripting-friendly exit-code contract.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, malformed or
//! out-of-range input, invalid ring parameters), 2 on domain outcomes a
//! pipeline may want to branch on (NotAUnit, NotInAbar, BudgetExceeded, and
//! an Unknown rewrite verdict without a fallback). The error name always
//! goes to the diagnostic stream. Every JSON document carries the keys
//! `command`, `ring`, `input`, and `result`.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{self, ClassLabel, Target, Verdict};
use crate::dynamics;
use crate::error::SlError;
use crate::factor;
use crate::rewrite::{self, ReductionTrace, Rule, TraceVerdict};
use crate::ring::{Ring, RingDescription};
use crate::sl2::Mat2;
use crate::word::Word;
use crate::wordsearch;

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Name of the environment variable overriding the default budgets.
pub const BUDGET_ENV_VAR: &str = "SLWORD_BUDGET";

/// Run the CLI with the process environment's budget override.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_budget = std::env::var(BUDGET_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    run_with_budget_env(args, env_budget)
}

/// Run the CLI with an explicit budget override, bypassing the environment.
pub fn run_with_budget_env<I, T>(args: I, env_budget: Option<u64>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    status: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutput {
                    status: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match dispatch(&cli, env_budget) {
        Ok(done) => {
            let mut body = match cli.output() {
                OutputFormat::Text => done.text,
                OutputFormat::Json => done.json.to_string(),
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            CliOutput {
                status: done.status,
                stdout: body,
                stderr: done.diag,
            }
        }
        Err(CmdError::Usage(msg)) => CliOutput {
            status: 1,
            stdout: String::new(),
            stderr: format!("UsageError: {msg}\n"),
        },
        Err(CmdError::Sl(e)) => CliOutput {
            status: domain_exit_code(&e),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}

/// Domain outcomes a script can branch on exit with 2; everything else is
/// a usage failure.
fn domain_exit_code(e: &SlError) -> i32 {
    match e {
        SlError::NotAUnit(_) | SlError::NotInAbar | SlError::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "slword",
    version,
    about = "Classify words over Z/NZ and finite fields through their 2x2 determinant-one matrix image"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

impl Cli {
    fn output(&self) -> OutputFormat {
        match &self.cmd {
            Cmd::Classify(a) => a.common.output,
            Cmd::Count(a) => a.common.output,
            Cmd::Enumerate(a) => a.common.output,
            Cmd::Reduce(a) => a.common.output,
            Cmd::Factor(a) => a.common.output,
            Cmd::Successor(a) => a.common.output,
            Cmd::Orbit(a) => a.common.output,
            Cmd::Periodic(a) => a.common.output,
            Cmd::FindWord(a) => a.common.output,
            Cmd::Cayley(a) => a.common.output,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Classify a word by its matrix image
    Classify(ClassifyArgs),
    /// Exact class sizes over a field at a given word length
    Count(CountArgs),
    /// List every word of a given length in one class
    Enumerate(EnumerateArgs),
    /// Classify by rewrite rules, optionally printing the reduction trace
    Reduce(ReduceArgs),
    /// Factor a word into prime blocks and separator letters (Z/NZ)
    Factor(FactorArgs),
    /// Immediate successor of a zero-target class word (Z/NZ)
    Successor(SuccessorArgs),
    /// Successor orbit of one word, or a table of all orbits at a length
    Orbit(OrbitArgs),
    /// Periodic-word multipliers t and t' for a period block (Z/NZ)
    Periodic(PeriodicArgs),
    /// Shortest word mapping to a given matrix (Z/NZ)
    FindWord(FindWordArgs),
    /// Breadth-first coverage report for SL2(Z/NZ)
    Cayley(CayleyArgs),
}

#[derive(Debug, Args)]
struct RingOpts {
    /// Use coefficients Z/NZ
    #[arg(long = "mod", value_name = "N")]
    modulus: Option<u64>,
    /// Use field coefficients: a prime p, or p^m together with --poly
    #[arg(long, value_name = "P[^M]")]
    field: Option<String>,
    /// Extension-field modulus polynomial c0,...,cm (low degree first)
    #[arg(long, value_delimiter = ',', value_name = "C0,...,CM")]
    poly: Option<Vec<u64>>,
}

impl RingOpts {
    fn build(&self) -> Result<Ring, CmdError> {
        match (&self.modulus, &self.field) {
            (Some(_), Some(_)) | (None, None) => Err(CmdError::Usage(
                "select exactly one coefficient ring: --mod N or --field P[^M]".into(),
            )),
            (Some(n), None) => {
                if self.poly.is_some() {
                    return Err(CmdError::Usage("--poly applies only to --field p^m".into()));
                }
                Ok(Ring::integers_mod(*n)?)
            }
            (None, Some(spec)) => {
                if let Some((p, m)) = spec.split_once('^') {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| CmdError::Usage(format!("bad field spec '{spec}'")))?;
                    let m: u32 = m
                        .parse()
                        .map_err(|_| CmdError::Usage(format!("bad field spec '{spec}'")))?;
                    let poly = self.poly.as_ref().ok_or_else(|| {
                        CmdError::Usage("--field p^m needs --poly c0,...,cm".into())
                    })?;
                    Ok(Ring::extension_field(p, m, poly)?)
                } else {
                    if self.poly.is_some() {
                        return Err(CmdError::Usage("--poly applies only to --field p^m".into()));
                    }
                    let p: u64 = spec
                        .parse()
                        .map_err(|_| CmdError::Usage(format!("bad field spec '{spec}'")))?;
                    Ok(Ring::prime_field(p)?)
                }
            }
        }
    }

    fn is_field_selector(&self) -> bool {
        self.field.is_some()
    }
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerdictArg {
    A,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FallbackArg {
    None,
    Matrix,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Field-side target parameter (default 0); invalid with --mod
    #[arg(short)]
    r: Option<u64>,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    word: String,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Word length
    #[arg(short)]
    l: u32,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Field-side target parameter (default 0); invalid with --mod
    #[arg(short)]
    r: Option<u64>,
    /// Word length
    #[arg(short)]
    l: u32,
    /// Which class to list
    #[arg(long, value_enum, default_value_t = VerdictArg::A)]
    verdict: VerdictArg,
    /// Cap on the number of words visited
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Field-side target parameter (default 0); invalid with --mod
    #[arg(short)]
    r: Option<u64>,
    /// Print one line per rewrite step
    #[arg(long)]
    trace: bool,
    /// Resolve an Unknown ring-side verdict with the matrix classifier
    #[arg(long, value_enum, default_value_t = FallbackArg::None)]
    fallback: FallbackArg,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    word: String,
}

#[derive(Debug, Args)]
struct FactorArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    word: String,
}

#[derive(Debug, Args)]
struct SuccessorArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    word: String,
}

#[derive(Debug, Args)]
struct OrbitArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Tabulate every orbit at length -l instead of one word's orbit
    #[arg(long)]
    all: bool,
    /// Word length for --all
    #[arg(short)]
    l: Option<u32>,
    /// Cap on the number of words visited by --all
    #[arg(long)]
    budget: Option<u64>,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    word: Option<String>,
}

#[derive(Debug, Args)]
struct PeriodicArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Reduce out-of-range letters instead of rejecting them
    #[arg(long)]
    reduce_letters: bool,
    /// The period block of the infinite word
    word: String,
}

#[derive(Debug, Args)]
struct FindWordArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Target matrix a,b,c,d (row-major canonical residues)
    #[arg(long, value_name = "A,B,C,D")]
    matrix: String,
    /// Cap on the group size the search may expand
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Args)]
struct CayleyArgs {
    #[command(flatten)]
    ring: RingOpts,
    #[command(flatten)]
    common: CommonOpts,
    /// Cap on the group size the search may expand
    #[arg(long)]
    budget: Option<u64>,
}

enum CmdError {
    Usage(String),
    Sl(SlError),
}

impl From<SlError> for CmdError {
    fn from(e: SlError) -> Self {
        CmdError::Sl(e)
    }
}

struct Rendered {
    text: String,
    json: Value,
    status: i32,
    diag: String,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Rendered {
        Rendered {
            text,
            json,
            status: 0,
            diag: String::new(),
        }
    }
}

fn dispatch(cli: &Cli, env_budget: Option<u64>) -> Result<Rendered, CmdError> {
    match &cli.cmd {
        Cmd::Classify(a) => cmd_classify(a),
        Cmd::Count(a) => cmd_count(a),
        Cmd::Enumerate(a) => cmd_enumerate(a, env_budget),
        Cmd::Reduce(a) => cmd_reduce(a),
        Cmd::Factor(a) => cmd_factor(a),
        Cmd::Successor(a) => cmd_successor(a),
        Cmd::Orbit(a) => cmd_orbit(a, env_budget),
        Cmd::Periodic(a) => cmd_periodic(a),
        Cmd::FindWord(a) => cmd_find_word(a, env_budget),
        Cmd::Cayley(a) => cmd_cayley(a, env_budget),
    }
}

fn parse_word(text: &str, ring: &Ring, reduce: bool) -> Result<Word, SlError> {
    if reduce {
        Word::parse_reduced(text, ring)
    } else {
        Word::parse(text, ring)
    }
}

/// The field-side target: `-r` value, defaulting to 0. Rejected outright
/// with a Z/NZ selector.
fn field_target(
    ring: &Ring,
    opts: &RingOpts,
    r: Option<u64>,
    reduce: bool,
) -> Result<Option<crate::ring::Elem>, CmdError> {
    if !opts.is_field_selector() {
        if r.is_some() {
            return Err(CmdError::Usage("-r applies only to field rings".into()));
        }
        return Ok(None);
    }
    let value = r.unwrap_or(0);
    let elem = if reduce {
        ring.elem_reduced(value)
    } else {
        ring.elem(value)?
    };
    Ok(Some(elem))
}

fn effective_budget(flag: Option<u64>, env: Option<u64>, fallback: u64) -> u64 {
    flag.or(env).unwrap_or(fallback)
}

fn ring_json(ring: &Ring) -> Value {
    match ring.describe() {
        RingDescription::IntegersMod { n } => json!({ "kind": "integers-mod", "n": n }),
        RingDescription::PrimeField { p } => json!({ "kind": "prime-field", "p": p }),
        RingDescription::ExtensionField { p, m, modulus } => {
            json!({ "kind": "extension-field", "p": p, "m": m, "poly": modulus })
        }
    }
}

fn target_json(target: &Target) -> Value {
    match target {
        Target::Field { r } => json!({ "kind": "field", "r": r.value() }),
        Target::Ring => json!({ "kind": "ring" }),
    }
}

fn document(command: &str, ring: &Ring, input: Value, result: Value) -> Value {
    json!({
        "command": command,
        "ring": ring_json(ring),
        "input": input,
        "result": result,
    })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let word = parse_word(&a.word, &ring, a.reduce_letters)?;
    let label: ClassLabel = match field_target(&ring, &a.ring, a.r, a.reduce_letters)? {
        Some(r) => classify::classify_field(&word, r)?,
        None => classify::classify_ring(&word)?,
    };
    let mut input = json!({ "word": word.to_string() });
    if let Target::Field { r } = label.target {
        input["r"] = json!(r.value());
    }
    let json = document(
        "classify",
        &ring,
        input,
        json!({
            "verdict": label.verdict.to_string(),
            "witness": label.witness.to_string(),
            "target": target_json(&label.target),
        }),
    );
    Ok(Rendered::ok(label.verdict.to_string(), json))
}

fn cmd_count(a: &CountArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    if !a.ring.is_field_selector() {
        return Err(CmdError::Usage(
            "count uses the closed-form field formula; use enumerate for Z/NZ".into(),
        ));
    }
    let q = ring.cardinality();
    let (count_a, count_c) = classify::count_formula(q, a.l)?;
    let json = document(
        "count",
        &ring,
        json!({ "q": q, "l": a.l }),
        json!({ "a": count_a.to_string(), "c": count_c.to_string() }),
    );
    Ok(Rendered::ok(format!("A: {count_a}  C: {count_c}"), json))
}

fn cmd_enumerate(a: &EnumerateArgs, env_budget: Option<u64>) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let verdict = match a.verdict {
        VerdictArg::A => Verdict::InA,
        VerdictArg::C => Verdict::InC,
    };
    let target = match field_target(&ring, &a.ring, a.r, false)? {
        Some(r) => Target::Field { r },
        None => Target::Ring,
    };
    let budget = effective_budget(a.budget, env_budget, classify::DEFAULT_ENUMERATION_BUDGET);
    let words = classify::enumerate_class(&ring, target, a.l, verdict, budget)?;
    let strings: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    let mut input = json!({ "l": a.l, "verdict": verdict.to_string() });
    if let Target::Field { r } = target {
        input["r"] = json!(r.value());
    }
    let json = document(
        "enumerate",
        &ring,
        input,
        json!({ "words": strings, "count": strings.len() }),
    );
    Ok(Rendered::ok(strings.join("\n"), json))
}

fn rule_json(rule: &Rule) -> Value {
    match rule {
        Rule::FieldPrefix { alpha, beta, gamma } => json!({
            "rule": "field-prefix",
            "alpha": alpha.value(),
            "beta": beta.value(),
            "gamma": gamma.value(),
        }),
        Rule::FieldDropToR0 { beta } => json!({
            "rule": "field-drop-to-r0",
            "beta": beta.value(),
        }),
        Rule::RingUnitPrefix {
            alpha,
            beta,
            replacement,
        } => json!({
            "rule": "ring-unit-prefix",
            "alpha": alpha.value(),
            "beta": beta.value(),
            "replacement": replacement.value(),
        }),
        Rule::RingZeroPrefix { beta } => json!({
            "rule": "ring-zero-prefix",
            "beta": beta.value(),
        }),
        Rule::BaseEmpty => json!({ "rule": "base-empty" }),
        Rule::BaseSingle { alpha } => json!({ "rule": "base-single", "alpha": alpha.value() }),
    }
}

fn trace_json(trace: &ReductionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            let mut v = rule_json(&s.rule);
            v["before"] = json!(s.before.to_string());
            v["after"] = json!(s.after.to_string());
            v["param_before"] = target_json(&s.param_before);
            v["param_after"] = target_json(&s.param_after);
            v
        })
        .collect();
    json!({ "steps": steps, "final_word": trace.final_word.to_string() })
}

/// One text line per shortening step, in the relation notation; base steps
/// carry no information beyond the final verdict and are skipped.
fn trace_lines(trace: &ReductionTrace) -> Vec<String> {
    trace
        .steps
        .iter()
        .filter_map(|s| {
            let rel = match s.param_before {
                Target::Field { r } => format!("~_{r}"),
                Target::Ring => "~".to_string(),
            };
            let note = match &s.rule {
                Rule::FieldPrefix { gamma, .. } => format!("[gamma={gamma}]"),
                Rule::FieldDropToR0 { .. } => "[drop, r->0]".to_string(),
                Rule::RingUnitPrefix { replacement, .. } => {
                    format!("[replacement={replacement}]")
                }
                Rule::RingZeroPrefix { .. } => "[zero-prefix]".to_string(),
                Rule::BaseEmpty | Rule::BaseSingle { .. } => return None,
            };
            Some(format!("{} {} {} {}", s.before, rel, s.after, note))
        })
        .collect()
}

fn cmd_reduce(a: &ReduceArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let word = parse_word(&a.word, &ring, a.reduce_letters)?;
    if a.ring.is_field_selector() && a.fallback != FallbackArg::None {
        return Err(CmdError::Usage(
            "--fallback applies only to --mod reduction".into(),
        ));
    }

    let (verdict, trace, fallback_used): (TraceVerdict, ReductionTrace, bool) =
        match field_target(&ring, &a.ring, a.r, a.reduce_letters)? {
            Some(r) => {
                let (label, trace) = rewrite::classify_by_rewrite_field(&word, r)?;
                (label.verdict.into(), trace, false)
            }
            None => {
                let (v, trace) = rewrite::classify_by_rewrite_ring(&word)?;
                if v == TraceVerdict::Unknown && a.fallback == FallbackArg::Matrix {
                    let resolved = classify::classify_ring(&word)?.verdict;
                    (resolved.into(), trace, true)
                } else {
                    (v, trace, false)
                }
            }
        };

    let mut lines = if a.trace {
        trace_lines(&trace)
    } else {
        Vec::new()
    };
    let verdict_line = if fallback_used {
        format!("{verdict} (matrix fallback)")
    } else if verdict == TraceVerdict::Unknown {
        format!("Unknown (stuck at {})", trace.final_word)
    } else {
        verdict.to_string()
    };
    lines.push(verdict_line);

    let mut input = json!({ "word": word.to_string(), "trace": a.trace });
    if a.ring.is_field_selector() {
        input["r"] = json!(a.r.unwrap_or(0));
    } else {
        input["fallback"] = json!(match a.fallback {
            FallbackArg::None => "none",
            FallbackArg::Matrix => "matrix",
        });
    }
    let mut result = json!({
        "verdict": verdict.to_string(),
        "trace": trace_json(&trace),
    });
    if fallback_used {
        result["fallback_used"] = json!("matrix");
    }
    let json = document("reduce", &ring, input, result);

    let unresolved = verdict == TraceVerdict::Unknown;
    Ok(Rendered {
        text: lines.join("\n"),
        json,
        status: if unresolved { 2 } else { 0 },
        diag: if unresolved {
            "Unknown\n".to_string()
        } else {
            String::new()
        },
    })
}

fn cmd_factor(a: &FactorArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let word = parse_word(&a.word, &ring, a.reduce_letters)?;
    let f = factor::factorize(&word)?;
    let primes: Vec<String> = f.primes.iter().map(|p| p.to_string()).collect();
    let separators: Vec<u64> = f.separators.iter().map(|d| d.value()).collect();
    let json = document(
        "factor",
        &ring,
        json!({ "word": word.to_string() }),
        json!({ "primes": primes, "separators": separators, "n": f.n() }),
    );
    Ok(Rendered::ok(f.to_string(), json))
}

fn cmd_successor(a: &SuccessorArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let word = parse_word(&a.word, &ring, a.reduce_letters)?;
    let next = dynamics::successor(&word)?;
    let json = document(
        "successor",
        &ring,
        json!({ "word": word.to_string() }),
        json!({ "successor": next.to_string() }),
    );
    Ok(Rendered::ok(next.to_string(), json))
}

fn orbit_json(info: &dynamics::OrbitInfo) -> Value {
    json!({
        "s": info.period,
        "cycle": info.cycle.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "period_word": info.period_word.to_string(),
    })
}

fn cmd_orbit(a: &OrbitArgs, env_budget: Option<u64>) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    if a.all {
        if a.word.is_some() {
            return Err(CmdError::Usage("--all does not take a word".into()));
        }
        let l = a
            .l
            .ok_or_else(|| CmdError::Usage("--all needs a length: -l L".into()))?;
        let budget = effective_budget(a.budget, env_budget, classify::DEFAULT_ENUMERATION_BUDGET);
        let words = classify::enumerate_class(&ring, Target::Ring, l, Verdict::InA, budget)?;
        let total = words.len();
        let mut seen = std::collections::HashSet::new();
        let mut orbits = Vec::new();
        for w in words {
            if seen.contains(&w) {
                continue;
            }
            let info = dynamics::orbit(&w)?;
            for member in &info.cycle {
                seen.insert(member.clone());
            }
            orbits.push(info);
        }
        let lines: Vec<String> = orbits
            .iter()
            .map(|o| {
                let members: Vec<String> = o.cycle.iter().map(|w| w.to_string()).collect();
                format!(
                    "s={} period-word={} cycle={}",
                    o.period,
                    o.period_word,
                    members.join(" ")
                )
            })
            .collect();
        let json = document(
            "orbit",
            &ring,
            json!({ "all": true, "l": l }),
            json!({
                "orbits": orbits.iter().map(orbit_json).collect::<Vec<_>>(),
                "class_size": total,
            }),
        );
        return Ok(Rendered::ok(lines.join("\n"), json));
    }
    let text = a
        .word
        .as_ref()
        .ok_or_else(|| CmdError::Usage("orbit needs a word, or --all with -l".into()))?;
    let word = parse_word(text, &ring, a.reduce_letters)?;
    let info = dynamics::orbit(&word)?;
    let members: Vec<String> = info.cycle.iter().map(|w| w.to_string()).collect();
    let text_out = format!(
        "s: {}\ncycle: {}\nperiod-word: {}",
        info.period,
        members.join(" "),
        info.period_word
    );
    let json = document(
        "orbit",
        &ring,
        json!({ "word": word.to_string() }),
        orbit_json(&info),
    );
    Ok(Rendered::ok(text_out, json))
}

fn cmd_periodic(a: &PeriodicArgs) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    let word = parse_word(&a.word, &ring, a.reduce_letters)?;
    let analysis = dynamics::periodic_t(&word)?;
    let subs: Vec<String> = analysis.subwords.iter().map(|w| w.to_string()).collect();
    let text = format!(
        "t: {}\nt': {}\nsubwords: {}",
        analysis.t,
        analysis.t_prime,
        subs.join(" ")
    );
    let json = document(
        "periodic",
        &ring,
        json!({ "word": word.to_string() }),
        json!({ "t": analysis.t, "t_prime": analysis.t_prime, "subwords": subs }),
    );
    Ok(Rendered::ok(text, json))
}

fn cmd_find_word(a: &FindWordArgs, env_budget: Option<u64>) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    if a.ring.is_field_selector() {
        return Err(CmdError::Usage("find-word requires --mod N".into()));
    }
    let n = ring.modulus().expect("mod selector");
    let budget = effective_budget(a.budget, env_budget, wordsearch::DEFAULT_BFS_BUDGET);
    let group_size = wordsearch::sl2_size(n)?;
    if group_size > budget {
        return Err(SlError::BudgetExceeded {
            needed: group_size,
            budget,
        }
        .into());
    }
    let matrix = Mat2::parse(&a.matrix, &ring)?;
    let word = wordsearch::find_word(&matrix)?;
    let json = document(
        "find-word",
        &ring,
        json!({ "matrix": matrix.to_string() }),
        json!({ "word": word.to_string(), "length": word.len() }),
    );
    Ok(Rendered::ok(word.to_string(), json))
}

fn cmd_cayley(a: &CayleyArgs, env_budget: Option<u64>) -> Result<Rendered, CmdError> {
    let ring = a.ring.build()?;
    if a.ring.is_field_selector() {
        return Err(CmdError::Usage("cayley requires --mod N".into()));
    }
    let n = ring.modulus().expect("mod selector");
    let budget = effective_budget(a.budget, env_budget, wordsearch::DEFAULT_BFS_BUDGET);
    let report = wordsearch::cayley_cover(n, budget)?;
    let histogram: Vec<String> = report
        .per_length_counts
        .iter()
        .enumerate()
        .map(|(len, count)| format!("{len}:{count}"))
        .collect();
    let text = format!(
        "modulus: {}\ngroup-size: {}\nreached: {}\ndiameter: {}\nlengths: {}",
        report.modulus,
        report.group_size,
        report.reached,
        report.max_word_length,
        histogram.join(" ")
    );
    let json = document(
        "cayley",
        &ring,
        json!({ "modulus": n }),
        json!({
            "modulus": report.modulus,
            "group_size": report.group_size,
            "reached": report.reached,
            "max_word_length": report.max_word_length,
            "per_length_counts": report.per_length_counts,
        }),
    );
    Ok(Rendered::ok(text, json))
}
