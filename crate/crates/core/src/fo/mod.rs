//! Two-sorted first-order formulas.
//!
//! Object constants are precomputed terms (numerals have sort integer,
//! everything else sort generic). The only function constants are `+`,
//! `-` and `*` on integers; predicate constants are `p/n` plus the six
//! comparisons. `not F` abbreviates `F -> #false` and `F <-> G` the
//! conjunction of both implications.

mod alpha;
mod eval;
mod parse;
mod subst;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use crate::lexer::ParseError;
use crate::precomputed::{Precomputed, Relation};

pub use alpha::{alpha_eq, alpha_eq_up_to_prefix};
pub use eval::{eval_comparison, eval_ground_term, EvalError};
pub use parse::{parse_formula, parse_term, Declarations, FormulaError};
pub use subst::{is_substitutable, substitute, substitute_simultaneous, SubstError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Generic,
    Integer,
}

impl Sort {
    /// Whether a term of sort `self` may stand where `wanted` is required.
    pub fn fits(self, wanted: Sort) -> bool {
        wanted == Sort::Generic || self == Sort::Integer
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Generic => "generic",
            Sort::Integer => "integer",
        })
    }
}

/// A sorted variable; identity is the pair (name, sort).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn generic(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: Sort::Generic,
        }
    }

    pub fn integer(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: Sort::Integer,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` has sort generic but an integer term is required here")]
pub struct SortError(pub String);

/// A term over the signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Precomputed),
    Var(Var),
    Arith {
        op: ArithOp,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
}

impl Term {
    pub fn num(n: impl Into<num_bigint::BigInt>) -> Self {
        Term::Const(Precomputed::num(n))
    }

    pub fn sym(s: impl Into<String>) -> Self {
        Term::Const(Precomputed::sym(s))
    }

    pub fn var(v: Var) -> Self {
        Term::Var(v)
    }

    /// Build an arithmetic term; both arguments must have sort integer.
    pub fn arith(op: ArithOp, lhs: Term, rhs: Term) -> Result<Term, SortError> {
        for t in [&lhs, &rhs] {
            if t.sort() != Sort::Integer {
                return Err(SortError(alloc::string::ToString::to_string(t)));
            }
        }
        Ok(Term::Arith {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        })
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Const(c) if c.is_numeral() => Sort::Integer,
            Term::Const(_) => Sort::Generic,
            Term::Var(v) => v.sort,
            Term::Arith { .. } => Sort::Integer,
        }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Arith { lhs, rhs, .. } => {
                lhs.vars_into(out);
                rhs.vars_into(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Const(_) => false,
            Term::Var(w) => w == v,
            Term::Arith { lhs, rhs, .. } => lhs.contains_var(v) || rhs.contains_var(v),
        }
    }

    /// Whether every arithmetic node has integer-sorted children.
    pub fn is_well_sorted(&self) -> bool {
        match self {
            Term::Arith { lhs, rhs, .. } => {
                lhs.sort() == Sort::Integer
                    && rhs.sort() == Sort::Integer
                    && lhs.is_well_sorted()
                    && rhs.is_well_sorted()
            }
            _ => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Arith { op, .. } => op.precedence(),
            _ => 3,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Arith { op, lhs, rhs } => {
                let p = op.precedence();
                if lhs.precedence() < p {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred { name: String, args: Vec<Term> },
    Cmp { lhs: Term, rel: Relation, rhs: Term },
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant(Quantifier, Var, Box<Formula>),
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred {
            name: name.into(),
            args,
        }
    }

    pub fn cmp(lhs: Term, rel: Relation, rhs: Term) -> Self {
        Formula::Cmp { lhs, rel, rhs }
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// `#true`, spelled `#false -> #false`.
    pub fn top() -> Self {
        Formula::not(Formula::Bottom)
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, v, Box::new(body))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn conjunction(items: Vec<Formula>) -> Option<Formula> {
        items
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::and(f, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        free_vars_into(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn occurs_free(&self, v: &Var) -> bool {
        match self {
            Formula::Pred { args, .. } => args.iter().any(|t| t.contains_var(v)),
            Formula::Cmp { lhs, rhs, .. } => lhs.contains_var(v) || rhs.contains_var(v),
            Formula::Bottom => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.occurs_free(v) || b.occurs_free(v)
            }
            Formula::Quant(_, w, body) => w != v && body.occurs_free(v),
        }
    }

    /// Universally quantify all free variables, outermost first in
    /// (name, sort) order. Closed formulas are returned unchanged.
    pub fn universal_closure(&self) -> Formula {
        let mut f = self.clone();
        for v in self.free_vars().into_iter().rev() {
            f = Formula::forall(v, f);
        }
        f
    }

    /// Every term in the formula, in order.
    pub fn for_each_term(&self, visit: &mut impl FnMut(&Term)) {
        match self {
            Formula::Pred { args, .. } => args.iter().for_each(&mut *visit),
            Formula::Cmp { lhs, rhs, .. } => {
                visit(lhs);
                visit(rhs);
            }
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.for_each_term(visit);
                b.for_each_term(visit);
            }
            Formula::Quant(_, _, body) => body.for_each_term(visit),
        }
    }

    /// Every variable name used anywhere, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        if let Formula::Quant(_, v, body) = self {
            out.insert(v.name.clone());
            body.collect_names(out);
            return;
        }
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            _ => self.for_each_term(&mut |t| {
                for v in t.vars() {
                    out.insert(v.name);
                }
            }),
        }
    }

    /// Whether all terms are well sorted.
    pub fn is_well_sorted(&self) -> bool {
        let mut ok = true;
        self.for_each_term(&mut |t| ok &= t.is_well_sorted());
        ok
    }

    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    /// `(a -> b) & (b -> a)` read back as `(a, b)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => {
                    Some((a, b))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// `a r b & b r' c`, printed as the chain `a r b r' c`.
    fn as_chain(&self) -> Option<(&Term, Relation, &Term, Relation, &Term)> {
        match self {
            Formula::And(a, b) => match (&**a, &**b) {
                (
                    Formula::Cmp {
                        lhs: x,
                        rel: r1,
                        rhs: y,
                    },
                    Formula::Cmp {
                        lhs: y2,
                        rel: r2,
                        rhs: z,
                    },
                ) if y == y2 => Some((x, *r1, y, *r2, z)),
                _ => None,
            },
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        if self.as_iff().is_some() {
            return 1;
        }
        if self.as_negation().is_some() {
            return 5;
        }
        if self.as_chain().is_some() {
            return 6;
        }
        match self {
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 6,
        }
    }
}

fn free_vars_into(f: &Formula, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    match f {
        Formula::Pred { .. } | Formula::Cmp { .. } => f.for_each_term(&mut |t| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        }),
        Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            free_vars_into(a, bound, out);
            free_vars_into(b, bound, out);
        }
        Formula::Quant(_, v, body) => {
            bound.push(v.clone());
            free_vars_into(body, bound, out);
            bound.pop();
        }
    }
}

struct Wrapped<'a>(&'a Formula, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        if let Some((a, b)) = self.as_iff() {
            return write!(
                f,
                "{} <-> {}",
                Wrapped(a, a.precedence() <= p),
                Wrapped(b, b.precedence() <= p)
            );
        }
        if let Some(a) = self.as_negation() {
            return write!(f, "not {}", Wrapped(a, a.precedence() < p));
        }
        match self {
            Formula::Pred { name, args } => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Cmp { lhs, rel, rhs } => write!(f, "{lhs} {rel} {rhs}"),
            Formula::Bottom => f.write_str("#false"),
            Formula::And(a, b) => {
                if let Some((x, r1, y, r2, z)) = self.as_chain() {
                    return write!(f, "{x} {r1} {y} {r2} {z}");
                }
                write!(
                    f,
                    "{} & {}",
                    Wrapped(a, a.precedence() <= p),
                    Wrapped(b, b.precedence() < p)
                )
            }
            Formula::Or(a, b) => write!(
                f,
                "{} | {}",
                Wrapped(a, a.precedence() <= p),
                Wrapped(b, b.precedence() < p)
            ),
            Formula::Implies(a, b) => write!(
                f,
                "{} -> {}",
                Wrapped(a, a.precedence() <= p),
                Wrapped(b, b.precedence() < p)
            ),
            Formula::Quant(q, _, _) => {
                f.write_str(match q {
                    Quantifier::Forall => "forall",
                    Quantifier::Exists => "exists",
                })?;
                let mut cur = self;
                while let Formula::Quant(q2, v, body) = cur {
                    if q2 != q {
                        break;
                    }
                    match v.sort {
                        Sort::Integer => write!(f, " int {}", v.name)?,
                        Sort::Generic => write!(f, " {}", v.name)?,
                    }
                    cur = body;
                }
                write!(f, " ({cur})")
            }
        }
    }
}
