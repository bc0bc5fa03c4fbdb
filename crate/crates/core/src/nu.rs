//! The natural translation of regular rules into sentences.
//!
//! Variables that occur under an arithmetic operation or in an interval
//! comparison are replaced by fresh integer variables, so that every term
//! lands in the two-sorted signature. Rules with intervals in the head are
//! not handled.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::fo::{ArithOp, Formula, Term, Var};
use crate::precomputed::Relation;
use crate::syntax::{
    check_regular_rule, term_kind, BinOp, BodyElem, Head, PTerm, Program, Rule, Sign, TermKind,
    Violation, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NuError {
    #[error("rule is not regular: {}", join(.0))]
    Irregular(Vec<Violation>),
    #[error("head contains an interval: {}", join(.0))]
    UnsupportedHead(Vec<Violation>),
    #[error("term `{0}` cannot be translated: {1}")]
    Term(String, String),
}

fn join(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ProgramError {
    /// (rule index, rule, error)
    pub errors: Vec<(usize, Rule, NuError)>,
}

impl fmt::Display for ProgramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (idx, rule, err)) in self.errors.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "rule {} `{rule}`: {err}", idx + 1)?;
        }
        Ok(())
    }
}

/// Which program variables become integer variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVarPlan {
    pub rule: Rule,
    /// (program variable, its integer partner), in order of first occurrence
    pub promoted: Vec<(String, Var)>,
}

impl IntVarPlan {
    pub fn partner(&self, name: &str) -> Option<&Var> {
        self.promoted
            .iter()
            .find(|(x, _)| x == name)
            .map(|(_, n)| n)
    }
}

fn vars_under_operation(t: &PTerm, out: &mut Vec<String>) {
    if let PTerm::BinOp { .. } = t {
        t.variables_into(out);
    }
}

fn ensure_translatable(rule: &Rule) -> Result<(), NuError> {
    if let Err(vs) = check_regular_rule(rule) {
        let (head, other): (Vec<_>, Vec<_>) = vs
            .into_iter()
            .partition(|v| v.kind == ViolationKind::UnsupportedHead);
        if !other.is_empty() {
            return Err(NuError::Irregular(other));
        }
        return Err(NuError::UnsupportedHead(head));
    }
    Ok(())
}

pub fn plan_integer_vars(rule: &Rule) -> Result<IntVarPlan, NuError> {
    ensure_translatable(rule)?;

    let mut marked = Vec::new();
    if let Head::Basic(a) | Head::Choice(a) = &rule.head {
        a.args
            .iter()
            .for_each(|t| vars_under_operation(t, &mut marked));
    }
    for b in &rule.body {
        match b {
            BodyElem::Literal(l) => l
                .atom
                .args
                .iter()
                .for_each(|t| vars_under_operation(t, &mut marked)),
            BodyElem::Comparison(c) => {
                let second = term_kind(&c.rhs) == TermKind::RegularSecondKind
                    || term_kind(&c.lhs) == TermKind::RegularSecondKind;
                if second {
                    c.lhs.variables_into(&mut marked);
                    c.rhs.variables_into(&mut marked);
                } else {
                    vars_under_operation(&c.lhs, &mut marked);
                    vars_under_operation(&c.rhs, &mut marked);
                }
            }
        }
    }

    let all = rule.variables();
    let mut promoted = Vec::new();
    let mut counter = 1usize;
    for x in all.iter().filter(|x| marked.contains(x)) {
        let name = loop {
            let candidate = format!("N{counter}");
            counter += 1;
            if !all.contains(&candidate) {
                break candidate;
            }
        };
        promoted.push((x.clone(), Var::integer(name)));
    }
    Ok(IntVarPlan {
        rule: rule.clone(),
        promoted,
    })
}

/// Translate a first-kind term, replacing promoted variables by their
/// integer partners.
pub fn p2f(t: &PTerm, plan: &IntVarPlan) -> Result<Term, NuError> {
    match t {
        PTerm::Precomputed(c) => Ok(Term::Const(c.clone())),
        PTerm::Variable(x) => Ok(match plan.partner(x) {
            Some(n) => Term::Var(n.clone()),
            None => Term::Var(Var::generic(x.clone())),
        }),
        PTerm::BinOp { op, lhs, rhs } => {
            let op = match op {
                BinOp::Add => ArithOp::Add,
                BinOp::Sub => ArithOp::Sub,
                BinOp::Mul => ArithOp::Mul,
                other => {
                    return Err(NuError::Term(
                        t.to_string(),
                        format!("`{}` is not a function constant", other.symbol()),
                    ))
                }
            };
            let l = p2f(lhs, plan)?;
            let r = p2f(rhs, plan)?;
            Term::arith(op, l, r).map_err(|e| NuError::Term(t.to_string(), e.to_string()))
        }
    }
}

fn atom_formula(a: &crate::syntax::Atom, plan: &IntVarPlan) -> Result<Formula, NuError> {
    let args = a
        .args
        .iter()
        .map(|t| p2f(t, plan))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Formula::pred(a.predicate.clone(), args))
}

/// The sentence for one rule: the universal closure of `Body' -> Head'`,
/// or of `Head'` alone when the body is empty.
pub fn nu_rule(rule: &Rule) -> Result<Formula, NuError> {
    let plan = plan_integer_vars(rule)?;

    let mut body = Vec::with_capacity(rule.body.len());
    for b in &rule.body {
        body.push(match b {
            BodyElem::Literal(l) => {
                let a = atom_formula(&l.atom, &plan)?;
                match l.sign {
                    Sign::Positive => a,
                    Sign::Negated => Formula::not(a),
                    Sign::DoubleNegated => Formula::not(Formula::not(a)),
                }
            }
            BodyElem::Comparison(c) => match &c.rhs {
                PTerm::BinOp {
                    op: BinOp::Interval,
                    lhs: lo,
                    rhs: hi,
                } => {
                    // regularity guarantees `t1 = t2..t3`
                    let x = p2f(&c.lhs, &plan)?;
                    Formula::and(
                        Formula::cmp(p2f(lo, &plan)?, Relation::Le, x.clone()),
                        Formula::cmp(x, Relation::Le, p2f(hi, &plan)?),
                    )
                }
                _ => Formula::cmp(p2f(&c.lhs, &plan)?, c.rel, p2f(&c.rhs, &plan)?),
            },
        });
    }

    let head = match &rule.head {
        Head::Basic(a) => atom_formula(a, &plan)?,
        Head::Choice(a) => {
            let a = atom_formula(a, &plan)?;
            Formula::or(a.clone(), Formula::not(a))
        }
        Head::Empty => Formula::Bottom,
    };

    let open = match Formula::conjunction(body) {
        Some(b) => Formula::implies(b, head),
        None => head,
    };
    let sentence = open.universal_closure();
    debug_assert!(sentence.is_closed());
    Ok(sentence)
}

/// One sentence per rule, in program order.
pub fn nu_program(program: &Program) -> Result<Vec<Formula>, ProgramError> {
    let mut out = Vec::with_capacity(program.rules.len());
    let mut errors = Vec::new();
    for (i, r) in program.rules.iter().enumerate() {
        match nu_rule(r) {
            Ok(f) => out.push(f),
            Err(e) => errors.push((i, r.clone(), e)),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(ProgramError { errors })
    }
}
