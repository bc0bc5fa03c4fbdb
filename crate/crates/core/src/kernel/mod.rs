//! Natural-deduction proof checking for here-and-there with arithmetic.
//!
//! Lines are sequents `Γ => F`. Each line is justified by an axiom or by
//! one inference rule applied to earlier lines, which are cited by id.

mod axioms;
mod rules;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::fo::{alpha_eq, alpha_eq_up_to_prefix, Declarations, Formula, Term, Var};
use crate::nu::{nu_program, ProgramError};
use crate::syntax::Program;

pub use axioms::{
    group_b_catalog, group_d_catalog, is_arithmetical, is_axiom_identity, is_group_b_axiom,
    is_group_c_axiom, is_group_d_axiom, is_hosoi_instance, GroupD, GroupDError,
};

/// `Γ => F` with `Γ` duplicate-free up to alpha-equivalence.
#[derive(Debug, Clone)]
pub struct Sequent {
    assumptions: Vec<Formula>,
    conclusion: Formula,
}

impl Sequent {
    pub fn new(assumptions: Vec<Formula>, conclusion: Formula) -> Self {
        let mut set = Vec::with_capacity(assumptions.len());
        for a in assumptions {
            if !contains(&set, &a) {
                set.push(a);
            }
        }
        Sequent {
            assumptions: set,
            conclusion,
        }
    }

    pub fn formula(conclusion: Formula) -> Self {
        Sequent::new(Vec::new(), conclusion)
    }

    pub fn assumptions(&self) -> &[Formula] {
        &self.assumptions
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    /// Same conclusion and the same assumption set, both up to alpha.
    pub fn equivalent(&self, other: &Sequent) -> bool {
        alpha_eq(&self.conclusion, &other.conclusion)
            && set_eq(&self.assumptions, &other.assumptions)
    }

    fn free_in_assumptions(&self, v: &Var) -> bool {
        self.assumptions.iter().any(|a| a.occurs_free(v))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.assumptions.iter().enumerate() {
            f.write_str(if i == 0 { "" } else { ", " })?;
            write!(f, "{a}")?;
        }
        if !self.assumptions.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "=> {}", self.conclusion)
    }
}

pub(crate) fn contains(set: &[Formula], f: &Formula) -> bool {
    set.iter().any(|g| alpha_eq(g, f))
}

pub(crate) fn subset(a: &[Formula], b: &[Formula]) -> bool {
    a.iter().all(|f| contains(b, f))
}

pub(crate) fn set_eq(a: &[Formula], b: &[Formula]) -> bool {
    subset(a, b) && subset(b, a)
}

pub(crate) fn union(parts: &[&[Formula]]) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for part in parts {
        for f in *part {
            if !contains(&out, f) {
                out.push(f.clone());
            }
        }
    }
    out
}

pub(crate) fn without(set: &[Formula], f: &Formula) -> Vec<Formula> {
    set.iter().filter(|g| !alpha_eq(g, f)).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    Identity,
    EqRefl,
    Hosoi,
    GroupB,
    GroupC,
    GroupD,
    GroupDTrusted,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 7] = [
        AxiomKind::Identity,
        AxiomKind::EqRefl,
        AxiomKind::Hosoi,
        AxiomKind::GroupB,
        AxiomKind::GroupC,
        AxiomKind::GroupD,
        AxiomKind::GroupDTrusted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomKind::Identity => "id",
            AxiomKind::EqRefl => "eq-refl",
            AxiomKind::Hosoi => "hosoi",
            AxiomKind::GroupB => "groupB",
            AxiomKind::GroupC => "groupC",
            AxiomKind::GroupD => "groupD",
            AxiomKind::GroupDTrusted => "groupD-trusted",
        }
    }

    /// Axioms outside intuitionistic logic.
    pub fn is_hta_only(self) -> bool {
        !matches!(self, AxiomKind::Identity | AxiomKind::EqRefl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleName {
    AndI,
    AndELeft,
    AndERight,
    OrILeft,
    OrIRight,
    OrE,
    ImpI,
    ImpE,
    Contradiction,
    Weakening,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    EqForward,
    EqBackward,
}

impl RuleName {
    pub const ALL: [RuleName; 16] = [
        RuleName::AndI,
        RuleName::AndELeft,
        RuleName::AndERight,
        RuleName::OrILeft,
        RuleName::OrIRight,
        RuleName::OrE,
        RuleName::ImpI,
        RuleName::ImpE,
        RuleName::Contradiction,
        RuleName::Weakening,
        RuleName::ForallI,
        RuleName::ForallE,
        RuleName::ExistsI,
        RuleName::ExistsE,
        RuleName::EqForward,
        RuleName::EqBackward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleName::AndI => "andI",
            RuleName::AndELeft => "andE-left",
            RuleName::AndERight => "andE-right",
            RuleName::OrILeft => "orI-left",
            RuleName::OrIRight => "orI-right",
            RuleName::OrE => "orE",
            RuleName::ImpI => "impI",
            RuleName::ImpE => "impE",
            RuleName::Contradiction => "C",
            RuleName::Weakening => "W",
            RuleName::ForallI => "forallI",
            RuleName::ForallE => "forallE",
            RuleName::ExistsI => "existsI",
            RuleName::ExistsE => "existsE",
            RuleName::EqForward => "Eq-forward",
            RuleName::EqBackward => "Eq-backward",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            RuleName::AndI => &["∧I"],
            RuleName::AndELeft => &["∧E-left"],
            RuleName::AndERight => &["∧E-right"],
            RuleName::OrILeft => &["∨I-left"],
            RuleName::OrIRight => &["∨I-right"],
            RuleName::OrE => &["∨E"],
            RuleName::ImpI => &["→I"],
            RuleName::ImpE => &["→E"],
            RuleName::Contradiction => &[],
            RuleName::Weakening => &[],
            RuleName::ForallI => &["∀I"],
            RuleName::ForallE => &["∀E"],
            RuleName::ExistsI => &["∃I"],
            RuleName::ExistsE => &["∃E"],
            RuleName::EqForward => &[],
            RuleName::EqBackward => &[],
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hints for rules whose instance is not determined by the sequents.
#[derive(Debug, Clone, Default)]
pub struct Hints {
    pub var: Option<Var>,
    pub term: Option<Term>,
    pub template: Option<Formula>,
}

#[derive(Debug, Clone)]
pub enum Justification {
    /// `premises` should be empty; anything cited makes the line invalid.
    Axiom {
        kind: AxiomKind,
        premises: Vec<String>,
    },
    Rule {
        name: RuleName,
        premises: Vec<String>,
        hints: Hints,
    },
    /// A rule name the kernel does not know; such a line is rejected.
    Unknown(String),
}

impl Justification {
    /// Resolve a rule or axiom name as written in a proof script.
    pub fn from_name(name: &str, premises: Vec<String>, hints: Hints) -> Justification {
        if let Some(k) = AxiomKind::ALL.iter().find(|k| k.name() == name) {
            return Justification::Axiom { kind: *k, premises };
        }
        match name.parse::<RuleName>() {
            Ok(name) => Justification::Rule {
                name,
                premises,
                hints,
            },
            Err(_) => Justification::Unknown(name.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Justification::Axiom { kind, .. } => kind.name(),
            Justification::Rule { name, .. } => name.name(),
            Justification::Unknown(n) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleName {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.name() == s || r.aliases().contains(&s))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct ProofLine {
    pub id: String,
    pub sequent: Sequent,
    pub justification: Justification,
}

#[derive(Debug, Clone, Default)]
pub struct ProofScript {
    pub declarations: Declarations,
    pub lines: Vec<ProofLine>,
    pub goal: Option<Sequent>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelOptions {
    /// Disable Groups A–D and check a pure intuitionistic proof.
    pub int_mode: bool,
    /// Accept `groupD-trusted` lines the decision procedure cannot settle.
    pub trust_arith: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineStatus {
    Valid,
    Invalid(String),
}

impl LineStatus {
    pub fn is_valid(&self) -> bool {
        matches!(self, LineStatus::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFailure {
    pub index: usize,
    pub id: String,
    pub rule: String,
    pub reason: String,
}

impl fmt::Display for LineFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} ({}): {}", self.id, self.rule, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub lines: Vec<(String, LineStatus)>,
    pub first_failure: Option<LineFailure>,
    /// Some line was accepted only because arithmetic was trusted.
    pub uses_trusted_arithmetic: bool,
}

/// Check every line of `script`. A line citing an invalid line is itself
/// invalid; otherwise lines are judged independently.
pub fn check_proof(script: &ProofScript, options: &KernelOptions) -> Verdict {
    let mut statuses: Vec<(String, LineStatus)> = Vec::with_capacity(script.lines.len());
    let mut first_failure = None;
    let mut trusted = false;
    let mut seen = BTreeSet::new();
    for (index, line) in script.lines.iter().enumerate() {
        let result = if !seen.insert(line.id.as_str()) {
            Err(format!("duplicate line id `{}`", line.id))
        } else {
            check_line(script, index, &statuses, options)
        };
        let status = match result {
            Ok(used_trust) => {
                trusted |= used_trust;
                LineStatus::Valid
            }
            Err(reason) => {
                if first_failure.is_none() {
                    first_failure = Some(LineFailure {
                        index,
                        id: line.id.clone(),
                        rule: line.justification.name().to_string(),
                        reason: reason.clone(),
                    });
                }
                LineStatus::Invalid(reason)
            }
        };
        statuses.push((line.id.clone(), status));
    }
    if first_failure.is_none() {
        first_failure = goal_failure(script);
    }
    Verdict {
        accepted: first_failure.is_none(),
        lines: statuses,
        first_failure,
        uses_trusted_arithmetic: trusted,
    }
}

fn goal_failure(script: &ProofScript) -> Option<LineFailure> {
    let Some(last) = script.lines.last() else {
        return Some(LineFailure {
            index: 0,
            id: String::new(),
            rule: String::new(),
            reason: "script has no lines".to_string(),
        });
    };
    let goal = script.goal.as_ref()?;
    (!last.sequent.equivalent(goal)).then(|| LineFailure {
        index: script.lines.len() - 1,
        id: last.id.clone(),
        rule: last.justification.name().to_string(),
        reason: format!("last line does not match the goal {goal}"),
    })
}

/// `Ok(true)` when the line relied on trusted arithmetic.
fn check_line(
    script: &ProofScript,
    index: usize,
    statuses: &[(String, LineStatus)],
    options: &KernelOptions,
) -> Result<bool, String> {
    let line = &script.lines[index];
    match &line.justification {
        Justification::Unknown(name) => Err(format!("unknown rule `{name}`")),
        Justification::Axiom { premises, .. } if !premises.is_empty() => {
            Err(format!("axiom cites {} premise(s)", premises.len()))
        }
        Justification::Axiom { kind, .. } => check_axiom(*kind, &line.sequent, options),
        Justification::Rule {
            name,
            premises,
            hints,
        } => {
            let mut cited = Vec::with_capacity(premises.len());
            for p in premises {
                let Some(k) = script.lines[..index].iter().position(|l| &l.id == p) else {
                    return Err(if script.lines.iter().any(|l| &l.id == p) {
                        format!("premise `{p}` does not precede this line")
                    } else {
                        format!("dangling premise `{p}`")
                    });
                };
                if !statuses[k].1.is_valid() {
                    return Err(format!("premise `{p}` is invalid"));
                }
                cited.push(&script.lines[k].sequent);
            }
            rules::check_rule(*name, &cited, hints, &line.sequent).map(|()| false)
        }
    }
}

fn check_axiom(kind: AxiomKind, s: &Sequent, options: &KernelOptions) -> Result<bool, String> {
    if options.int_mode && kind.is_hta_only() {
        return Err(format!("axiom `{kind}` is not available in Int mode"));
    }
    if kind != AxiomKind::Identity && !s.assumptions().is_empty() {
        return Err("axioms have no assumptions; use W to add them".to_string());
    }
    let f = s.conclusion();
    let ok = |b: bool, what: &str| {
        if b {
            Ok(false)
        } else {
            Err(format!("not {what}"))
        }
    };
    match kind {
        AxiomKind::Identity => ok(
            matches!(s.assumptions(), [a] if alpha_eq(a, f)),
            "of the form F => F",
        ),
        AxiomKind::EqRefl => ok(axioms::is_eq_refl(f), "of the form t = t"),
        AxiomKind::Hosoi => ok(is_hosoi_instance(f), "an instance of F | (F -> G) | not G"),
        AxiomKind::GroupB => ok(is_group_b_axiom(f), "an order axiom"),
        AxiomKind::GroupC => ok(is_group_c_axiom(f), "a true ground comparison literal"),
        AxiomKind::GroupD | AxiomKind::GroupDTrusted => {
            let trusted = kind == AxiomKind::GroupDTrusted;
            if trusted && !options.trust_arith {
                return Err("trusted arithmetic is disabled".to_string());
            }
            match is_group_d_axiom(f, trusted) {
                Ok(GroupD::Yes) => Ok(false),
                Ok(GroupD::YesTrusted) => Ok(true),
                Ok(GroupD::No) => Err("arithmetic sentence not decided true".to_string()),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaskError {
    #[error("program {which}: {error}")]
    Translate { which: usize, error: ProgramError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskVerdict {
    pub accepted: bool,
    pub forward: Verdict,
    pub backward: Verdict,
    /// Sentences of the second translation no valid line of the forward
    /// proof derives from the first, and vice versa.
    pub missing_forward: Vec<Formula>,
    pub missing_backward: Vec<Formula>,
}

fn missing_goals(
    from: &[Formula],
    to: &[Formula],
    script: &ProofScript,
    v: &Verdict,
) -> Vec<Formula> {
    to.iter()
        .filter(|goal| {
            !script
                .lines
                .iter()
                .zip(&v.lines)
                .any(|(line, (_, status))| {
                    status.is_valid()
                        && alpha_eq_up_to_prefix(line.sequent.conclusion(), goal)
                        && subset(line.sequent.assumptions(), from)
                })
        })
        .cloned()
        .collect()
}

/// Check that `forward` derives every sentence of the second program's
/// translation from the first's, and `backward` the converse.
pub fn check_equivalence_task(
    p1: &Program,
    p2: &Program,
    forward: &ProofScript,
    backward: &ProofScript,
    options: &KernelOptions,
) -> Result<TaskVerdict, TaskError> {
    let s1 = nu_program(p1).map_err(|error| TaskError::Translate { which: 1, error })?;
    let s2 = nu_program(p2).map_err(|error| TaskError::Translate { which: 2, error })?;
    let fv = check_proof(forward, options);
    let bv = check_proof(backward, options);
    let missing_forward = missing_goals(&s1, &s2, forward, &fv);
    let missing_backward = missing_goals(&s2, &s1, backward, &bv);
    Ok(TaskVerdict {
        accepted: fv.accepted
            && bv.accepted
            && missing_forward.is_empty()
            && missing_backward.is_empty(),
        forward: fv,
        backward: bv,
        missing_forward,
        missing_backward,
    })
}

#[cfg(test)]
mod tests;
