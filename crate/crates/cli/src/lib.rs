//! Command-line front end for the `htequiv-core` library.
//!
//! [`run`] takes the argument vector and output streams and returns the
//! exit status: 0 for success or acceptance, 1 for rejection or
//! non-equivalence, 2 for usage, parse and input errors.

pub mod corpus;
pub mod demo;
pub mod report;
pub mod script;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use htequiv_core::ground::{
    check_se_with, default_domain, ground_program, ht_models, stable_models, Domain, Enumerator,
    GroundFormula, SeOptions, SeReport, Side, DEFAULT_MAX_ATOMS,
};
use htequiv_core::kernel::{check_equivalence_task, check_proof, KernelOptions};
use htequiv_core::nu::nu_program;
use htequiv_core::syntax::{check_regular_rule, parse_program, BodyElem, Head, Program, Sign};
use serde_json::{json, Value};

use report::SeVerdict;

#[derive(Debug, Parser)]
#[command(
    name = "htequiv",
    version,
    about = "Strong equivalence tools for mini-GRINGO programs"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct DomainArgs {
    /// Integer range of the domain.
    #[arg(long, value_name = "LO..HI", value_parser = parse_range)]
    pub ints: Option<(i64, i64)>,
    /// Symbolic constants of the domain.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub consts: Option<Vec<String>>,
    /// Include #inf and #sup.
    #[arg(long)]
    pub inf_sup: bool,
}

#[derive(Debug, Args, Clone, Copy, Default)]
pub struct KernelArgs {
    /// Disable Groups A-D and check a pure intuitionistic proof.
    #[arg(long)]
    pub int_mode: bool,
    /// Accept `groupD-trusted` lines.
    #[arg(long)]
    pub trust_arith: bool,
}

impl From<KernelArgs> for KernelOptions {
    fn from(k: KernelArgs) -> Self {
        KernelOptions {
            int_mode: k.int_mode,
            trust_arith: k.trust_arith,
        }
    }
}

#[derive(Debug, Args, Clone, Copy)]
pub struct SearchArgs {
    /// Refuse enumeration over more ground atoms than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
    pub max_atoms: usize,
    /// Worker threads for the enumeration.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

impl Default for SearchArgs {
    fn default() -> Self {
        SearchArgs {
            max_atoms: DEFAULT_MAX_ATOMS,
            jobs: 1,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a program and print it with its regularity status.
    Parse { file: PathBuf },
    /// Print the translation of each rule.
    Translate { file: PathBuf },
    /// Check a JSON proof script.
    CheckProof {
        script: PathBuf,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Certify strong equivalence from proofs in both directions.
    CheckSeProofs {
        program1: PathBuf,
        program2: PathBuf,
        forward: PathBuf,
        backward: PathBuf,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Ground the translation over a finite domain.
    Ground {
        file: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// List all here-and-there models of the grounded program.
    HtModels {
        file: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List the stable models of the grounded program.
    StableModels {
        file: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare two programs by brute force over a finite domain.
    CheckSe {
        program1: PathBuf,
        program2: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Reproduce the worked examples from the bundled corpus.
    Demo {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad bound `{lo}`: {e}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad bound `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// What a command produced: its exit status and what it printed.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
    /// Text output belongs on the error stream.
    diagnostic: bool,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome {
            code,
            text,
            json,
            diagnostic: false,
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                )
            } else if o.diagnostic {
                write!(err, "{}", o.text)
            } else {
                write!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_program(path: &Path) -> anyhow::Result<Program> {
    let text = read(path)?;
    parse_program(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn load_script(path: &Path) -> anyhow::Result<htequiv_core::kernel::ProofScript> {
    let text = read(path)?;
    script::parse_script(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// The default domain for `programs`, with any flags applied on top.
pub fn resolve_domain(args: &DomainArgs, programs: &[&Program]) -> anyhow::Result<Domain> {
    let base = default_domain(programs);
    let (lo, hi) = args.ints.unwrap_or_else(|| base.int_range());
    let consts = args
        .consts
        .clone()
        .unwrap_or_else(|| base.symbolic_consts().to_vec());
    let consts: Vec<String> = consts.into_iter().filter(|c| !c.is_empty()).collect();
    Ok(Domain::new(
        lo,
        hi,
        consts,
        args.inf_sup || base.include_inf_sup(),
    )?)
}

fn execute(cmd: &Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Parse { file } => cmd_parse(&load_program(file)?),
        Command::Translate { file } => cmd_translate(&load_program(file)?),
        Command::CheckProof { script, kernel } => {
            let s = load_script(script)?;
            let v = check_proof(&s, &(*kernel).into());
            Ok(Outcome::new(
                if v.accepted { 0 } else { 1 },
                report::verdict_text(&v),
                report::verdict_json(&v),
            ))
        }
        Command::CheckSeProofs {
            program1,
            program2,
            forward,
            backward,
            kernel,
        } => {
            let (p1, p2) = (load_program(program1)?, load_program(program2)?);
            let (f, b) = (load_script(forward)?, load_script(backward)?);
            let t = check_equivalence_task(&p1, &p2, &f, &b, &(*kernel).into())?;
            Ok(Outcome::new(
                if t.accepted { 0 } else { 1 },
                report::task_text(&t),
                report::task_json(&t),
            ))
        }
        Command::Ground { file, domain } => {
            let p = load_program(file)?;
            let d = resolve_domain(domain, &[&p])?;
            let formulas = ground_program(&p, &d)?;
            let mut text = format!("% domain: {d}\n");
            for g in &formulas {
                text += &format!("{g}\n");
            }
            let list: Vec<String> = formulas.iter().map(ToString::to_string).collect();
            Ok(Outcome::new(
                0,
                text,
                json!({ "domain": report::domain_json(&d), "formulas": list }),
            ))
        }
        Command::HtModels {
            file,
            domain,
            search,
        } => {
            let (d, g, atoms) = ground_whole(file, domain, search)?;
            let models = ht_models(&g, &atoms);
            let mut text = format!("% domain: {d}\n% {} HT-models\n", models.len());
            for m in &models {
                text += &format!("{}\n", report::ht_text(m));
            }
            let list: Vec<Value> = models.iter().map(report::ht_json).collect();
            Ok(Outcome::new(
                0,
                text,
                json!({ "domain": report::domain_json(&d), "models": list }),
            ))
        }
        Command::StableModels {
            file,
            domain,
            search,
        } => {
            let (d, g, atoms) = ground_whole(file, domain, search)?;
            let models = stable_models(&g, &atoms);
            let mut text = format!("% domain: {d}\n% {} stable models\n", models.len());
            for m in &models {
                text += &format!("{}\n", report::atom_set(m));
            }
            let list: Vec<Vec<String>> = models
                .iter()
                .map(|m| m.iter().map(ToString::to_string).collect())
                .collect();
            Ok(Outcome::new(
                0,
                text,
                json!({ "domain": report::domain_json(&d), "stable_models": list }),
            ))
        }
        Command::CheckSe {
            program1,
            program2,
            domain,
            search,
        } => {
            let (p1, p2) = (load_program(program1)?, load_program(program2)?);
            let d = resolve_domain(domain, &[&p1, &p2])?;
            let r = se_report(&p1, &p2, &d, search)?;
            let code = match SeVerdict::of(&r) {
                SeVerdict::EquivalentOverDomain => 0,
                _ => 1,
            };
            Ok(Outcome::new(code, report::se_text(&r), report::se_json(&r)))
        }
        Command::Demo { jobs } => {
            let results = demo::run_demo(*jobs);
            let passed = results.iter().filter(|c| c.passed).count();
            let mut text = String::new();
            for c in &results {
                text += &format!(
                    "{} {}: {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            text += &format!("demo: {passed}/{} passed\n", results.len());
            let list: Vec<Value> = results
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            Ok(Outcome::new(
                if passed == results.len() { 0 } else { 1 },
                text,
                json!({ "cases": list, "passed": passed, "total": results.len() }),
            ))
        }
    }
}

fn ground_whole(
    file: &Path,
    domain: &DomainArgs,
    search: &SearchArgs,
) -> anyhow::Result<(
    Domain,
    GroundFormula,
    BTreeSet<htequiv_core::ground::GroundAtom>,
)> {
    let p = load_program(file)?;
    let d = resolve_domain(domain, &[&p])?;
    let g = GroundFormula::And(ground_program(&p, &d)?).simplify();
    let atoms = g.atoms();
    if atoms.len() > search.max_atoms {
        bail!(
            "{} ground atoms exceed the limit of {} (raise --max-atoms)",
            atoms.len(),
            search.max_atoms
        );
    }
    Ok((d, g, atoms))
}

/// Run the oracle, splitting the enumeration over `jobs` threads. The
/// least disagreeing index wins, so the result does not depend on `jobs`.
pub fn se_report(
    p1: &Program,
    p2: &Program,
    d: &Domain,
    search: &SearchArgs,
) -> anyhow::Result<SeReport> {
    let options = SeOptions {
        max_atoms: search.max_atoms,
        ..SeOptions::default()
    };
    let jobs = search.jobs.max(1) as u64;
    Ok(check_se_with(p1, p2, d, &options, |e: &Enumerator| {
        let n = e.len();
        if jobs == 1 || n < 4096 {
            return e.first_disagreement(0..n);
        }
        let chunk = n.div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|k| {
                    let range = (k * chunk).min(n)..((k + 1) * chunk).min(n);
                    s.spawn(move || e.first_disagreement(range))
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("worker panicked"))
                .min_by_key(|(index, _): &(u64, Side)| *index)
        })
    })?)
}

fn cmd_parse(p: &Program) -> anyhow::Result<Outcome> {
    let mut text = String::new();
    let mut rules = Vec::new();
    for r in &p.rules {
        let status = match check_regular_rule(r) {
            Ok(()) => Vec::new(),
            Err(vs) => vs.iter().map(ToString::to_string).collect(),
        };
        text += &format!("{r}");
        if status.is_empty() {
            text += "  % regular\n";
        } else {
            text += &format!("  % not regular: {}\n", status.join("; "));
        }
        rules.push(rule_json(r, &status));
    }
    Ok(Outcome::new(0, text, json!({ "rules": rules })))
}

fn rule_json(r: &htequiv_core::syntax::Rule, violations: &[String]) -> Value {
    let head = match &r.head {
        Head::Basic(a) => json!({ "kind": "basic", "atom": a.to_string() }),
        Head::Choice(a) => json!({ "kind": "choice", "atom": a.to_string() }),
        Head::Empty => json!({ "kind": "empty" }),
    };
    let body: Vec<Value> = r
        .body
        .iter()
        .map(|b| match b {
            BodyElem::Literal(l) => json!({
                "kind": "literal",
                "sign": match l.sign {
                    Sign::Positive => "",
                    Sign::Negated => "not",
                    Sign::DoubleNegated => "not not",
                },
                "atom": l.atom.to_string(),
            }),
            BodyElem::Comparison(c) => json!({
                "kind": "comparison",
                "lhs": c.lhs.to_string(),
                "rel": c.rel.symbol(),
                "rhs": c.rhs.to_string(),
            }),
        })
        .collect();
    json!({
        "text": r.to_string(),
        "head": head,
        "body": body,
        "regular": violations.is_empty(),
        "violations": violations,
    })
}

fn cmd_translate(p: &Program) -> anyhow::Result<Outcome> {
    match nu_program(p) {
        Ok(sentences) => {
            let list: Vec<String> = sentences.iter().map(ToString::to_string).collect();
            let mut text = list.join("\n");
            text.push('\n');
            Ok(Outcome::new(0, text, json!({ "sentences": list })))
        }
        Err(e) => Ok(Outcome {
            diagnostic: true,
            ..Outcome::new(
                1,
                format!("translation failed:\n{e}\n"),
                json!({ "error": e.to_string() }),
            )
        }),
    }
}
