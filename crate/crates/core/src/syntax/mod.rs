//! Mini-GRINGO programs in abstract syntax.
//!
//! Concrete text follows the clingo conventions: `:-` for the rule arrow,
//! `not` for negation as failure, `{a}` for choice heads, `..` for
//! intervals, `+ - * / \` for arithmetic, `#inf`/`#sup` and `%` comments.

mod parser;
mod regular;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

pub use crate::lexer::ParseError;
use crate::precomputed::{Precomputed, Relation};

pub use parser::{parse_program, parse_rule, parse_term};
pub use regular::{
    check_regular_rule, precomputed_compare, term_kind, NotPrecomputed, TermKind, Violation,
    ViolationKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Interval,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "\\",
            BinOp::Interval => "..",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Interval => 1,
            BinOp::Add | BinOp::Sub => 2,
            BinOp::Mul | BinOp::Div | BinOp::Mod => 3,
        }
    }
}

/// A program term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PTerm {
    Precomputed(Precomputed),
    Variable(String),
    BinOp {
        op: BinOp,
        lhs: Box<PTerm>,
        rhs: Box<PTerm>,
    },
}

impl PTerm {
    pub fn num(n: impl Into<BigInt>) -> Self {
        PTerm::Precomputed(Precomputed::num(n))
    }

    pub fn sym(name: impl Into<String>) -> Self {
        PTerm::Precomputed(Precomputed::sym(name))
    }

    pub fn var(name: impl Into<String>) -> Self {
        PTerm::Variable(name.into())
    }

    pub fn bin(op: BinOp, lhs: PTerm, rhs: PTerm) -> Self {
        PTerm::BinOp {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Variables in order of first occurrence (left to right, no repeats).
    pub fn variables_into(&self, out: &mut Vec<String>) {
        match self {
            PTerm::Precomputed(_) => {}
            PTerm::Variable(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            PTerm::BinOp { lhs, rhs, .. } => {
                lhs.variables_into(out);
                rhs.variables_into(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PTerm::BinOp { op, .. } => op.precedence(),
            _ => 4,
        }
    }
}

impl fmt::Display for PTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTerm::Precomputed(c) => write!(f, "{c}"),
            PTerm::Variable(v) => f.write_str(v),
            PTerm::BinOp { op, lhs, rhs } => {
                let p = op.precedence();
                // `..` is printed non-associatively so nested intervals stay visible
                let nested_interval = *op == BinOp::Interval && lhs.precedence() == p;
                if lhs.precedence() < p || nested_interval {
                    write!(f, "({lhs})")?;
                } else {
                    write!(f, "{lhs}")?;
                }
                f.write_str(op.symbol())?;
                if rhs.precedence() <= p {
                    write!(f, "({rhs})")
                } else {
                    write!(f, "{rhs}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<PTerm>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<PTerm>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Number of `not` in front of a literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negated,
    DoubleNegated,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub sign: Sign,
    pub atom: Atom,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => {}
            Sign::Negated => f.write_str("not ")?,
            Sign::DoubleNegated => f.write_str("not not ")?,
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparison {
    pub lhs: PTerm,
    pub rel: Relation,
    pub rhs: PTerm,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyElem {
    Literal(Literal),
    Comparison(Comparison),
}

impl fmt::Display for BodyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyElem::Literal(l) => write!(f, "{l}"),
            BodyElem::Comparison(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Basic(Atom),
    Choice(Atom),
    /// constraint
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyElem>,
}

impl Rule {
    pub fn is_constraint(&self) -> bool {
        self.head == Head::Empty
    }

    /// Variables in order of first occurrence, head first.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.head {
            Head::Basic(a) | Head::Choice(a) => {
                a.args.iter().for_each(|t| t.variables_into(&mut out))
            }
            Head::Empty => {}
        }
        for b in &self.body {
            match b {
                BodyElem::Literal(l) => l.atom.args.iter().for_each(|t| t.variables_into(&mut out)),
                BodyElem::Comparison(c) => {
                    c.lhs.variables_into(&mut out);
                    c.rhs.variables_into(&mut out);
                }
            }
        }
        out
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.head {
            Head::Basic(a) => write!(f, "{a}")?,
            Head::Choice(a) => write!(f, "{{{a}}}")?,
            Head::Empty => {}
        }
        if !self.body.is_empty() {
            if self.head == Head::Empty {
                f.write_str(":- ")?;
            } else {
                f.write_str(" :- ")?;
            }
            for (i, b) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{b}")?;
            }
        } else if self.head == Head::Empty {
            f.write_str(":- ")?;
        }
        f.write_str(".")
    }
}

/// A finite set of rules, kept in source order.
///
/// Equality ignores order and duplicates.
#[derive(Debug, Clone, Default, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    pub fn rule_set(&self) -> BTreeSet<&Rule> {
        self.rules.iter().collect()
    }

    /// Numerals and symbolic constants mentioned anywhere in the program.
    pub fn constants(&self) -> BTreeSet<Precomputed> {
        fn walk(t: &PTerm, out: &mut BTreeSet<Precomputed>) {
            match t {
                PTerm::Precomputed(c) => {
                    out.insert(c.clone());
                }
                PTerm::Variable(_) => {}
                PTerm::BinOp { lhs, rhs, .. } => {
                    walk(lhs, out);
                    walk(rhs, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        for r in &self.rules {
            if let Head::Basic(a) | Head::Choice(a) = &r.head {
                a.args.iter().for_each(|t| walk(t, &mut out));
            }
            for b in &r.body {
                match b {
                    BodyElem::Literal(l) => l.atom.args.iter().for_each(|t| walk(t, &mut out)),
                    BodyElem::Comparison(c) => {
                        walk(&c.lhs, &mut out);
                        walk(&c.rhs, &mut out);
                    }
                }
            }
        }
        out
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.rule_set() == other.rule_set()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
