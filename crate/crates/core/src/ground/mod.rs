//! Finite-domain grounding and here-and-there semantics.
//!
//! Quantifiers are expanded over a finite [`Domain`] instead of all
//! precomputed terms, so every result here is a statement about the
//! finite restriction "over domain D". A quantifier instance whose ground
//! form mentions an atom with an argument outside the domain is dropped,
//! which keeps the atom universe inside the domain's pool.

mod sat;
mod se;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::fo::{ArithOp, Formula, Quantifier, Sort, Term, Var};
use crate::precomputed::Precomputed;

pub use sat::{
    ht_models, is_negative, is_stable, is_tautological, sat_classical, sat_ht, stable_models,
    HTInterpretation, NotSubset,
};
pub use se::{
    check_se, check_se_with, default_domain, ground_program, separating_context, Enumerator,
    SEResult, SeError, SeOptions, SeReport, Side, WitnessValidation, DEFAULT_MAX_ATOMS,
};

/// The finite pool of precomputed terms that quantifiers range over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    symbolic_consts: Vec<String>,
    lo: i64,
    hi: i64,
    include_inf_sup: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("empty integer range {lo}..{hi}")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("symbolic constant `{0}` listed twice")]
    Duplicate(String),
    #[error("`{0}` is not a symbolic constant")]
    NotSymbolic(String),
}

impl Domain {
    pub fn new(
        lo: i64,
        hi: i64,
        symbolic_consts: Vec<String>,
        include_inf_sup: bool,
    ) -> Result<Self, DomainError> {
        if lo > hi {
            return Err(DomainError::EmptyRange { lo, hi });
        }
        for (i, c) in symbolic_consts.iter().enumerate() {
            let ok = c.starts_with(|ch: char| ch.is_ascii_lowercase())
                && c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
                && !matches!(c.as_str(), "not" | "forall" | "exists" | "int");
            if !ok {
                return Err(DomainError::NotSymbolic(c.clone()));
            }
            if symbolic_consts[..i].contains(c) {
                return Err(DomainError::Duplicate(c.clone()));
            }
        }
        Ok(Domain {
            symbolic_consts,
            lo,
            hi,
            include_inf_sup,
        })
    }

    pub fn ints(lo: i64, hi: i64) -> Result<Self, DomainError> {
        Domain::new(lo, hi, Vec::new(), false)
    }

    pub fn int_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn symbolic_consts(&self) -> &[String] {
        &self.symbolic_consts
    }

    pub fn include_inf_sup(&self) -> bool {
        self.include_inf_sup
    }

    pub fn numerals(&self) -> impl Iterator<Item = Precomputed> + '_ {
        (self.lo..=self.hi).map(Precomputed::num)
    }

    /// Every precomputed term in the domain, in the global order.
    pub fn pool(&self) -> Vec<Precomputed> {
        let mut out = Vec::new();
        if self.include_inf_sup {
            out.push(Precomputed::Inf);
        }
        out.extend(self.numerals());
        let mut syms: Vec<_> = self.symbolic_consts.to_vec();
        syms.sort();
        out.extend(syms.into_iter().map(Precomputed::Symbol));
        if self.include_inf_sup {
            out.push(Precomputed::Sup);
        }
        out
    }

    pub fn contains(&self, c: &Precomputed) -> bool {
        match c {
            Precomputed::Inf | Precomputed::Sup => self.include_inf_sup,
            Precomputed::Numeral(n) => *n >= BigInt::from(self.lo) && *n <= BigInt::from(self.hi),
            Precomputed::Symbol(s) => self.symbolic_consts.contains(s),
        }
    }

    /// A strictly larger domain: range widened by `margin` on both sides,
    /// one extra symbolic constant, and `#inf`/`#sup`.
    pub fn extended(&self, margin: i64) -> Domain {
        let mut consts = self.symbolic_consts.clone();
        let fresh = (0..)
            .map(|i| format!("fresh{i}"))
            .find(|c| !consts.contains(c))
            .expect("unbounded");
        consts.push(fresh);
        Domain {
            symbolic_consts: consts,
            lo: self.lo.saturating_sub(margin),
            hi: self.hi.saturating_add(margin),
            include_inf_sup: true,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ints {}..{}", self.lo, self.hi)?;
        if !self.symbolic_consts.is_empty() {
            write!(f, ", consts {}", self.symbolic_consts.join(","))?;
        }
        if self.include_inf_sup {
            f.write_str(", #inf/#sup")?;
        }
        Ok(())
    }
}

/// A predicate applied to precomputed terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<Precomputed>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<Precomputed>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }
}

impl fmt::Display for GroundAtom {
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

/// A finite propositional formula over precomputed atoms.
///
/// The empty conjunction is true and the empty disjunction is false.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundFormula {
    Atom(GroundAtom),
    And(Vec<GroundFormula>),
    Or(Vec<GroundFormula>),
    Implies(Box<GroundFormula>, Box<GroundFormula>),
}

impl GroundFormula {
    pub fn top() -> Self {
        GroundFormula::And(Vec::new())
    }

    pub fn bottom() -> Self {
        GroundFormula::Or(Vec::new())
    }

    pub fn atom(predicate: impl Into<String>, args: Vec<Precomputed>) -> Self {
        GroundFormula::Atom(GroundAtom::new(predicate, args))
    }

    pub fn implies(a: GroundFormula, b: GroundFormula) -> Self {
        GroundFormula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: GroundFormula) -> Self {
        GroundFormula::implies(a, GroundFormula::bottom())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, GroundFormula::And(v) if v.is_empty())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, GroundFormula::Or(v) if v.is_empty())
    }

    pub fn atoms_into(&self, out: &mut BTreeSet<GroundAtom>) {
        match self {
            GroundFormula::Atom(a) => {
                out.insert(a.clone());
            }
            GroundFormula::And(v) | GroundFormula::Or(v) => {
                v.iter().for_each(|g| g.atoms_into(out))
            }
            GroundFormula::Implies(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<GroundAtom> {
        let mut out = BTreeSet::new();
        self.atoms_into(&mut out);
        out
    }

    /// Absorb `#true`/`#false` and flatten nested conjunctions and
    /// disjunctions. Preserves classical and here-and-there satisfaction.
    pub fn simplify(self) -> GroundFormula {
        match self {
            GroundFormula::Atom(_) => self,
            GroundFormula::And(items) => {
                let mut out = Vec::with_capacity(items.len());
                for g in items {
                    match g.simplify() {
                        GroundFormula::And(inner) => out.extend(inner),
                        b if b.is_bottom() => return b,
                        g => out.push(g),
                    }
                }
                if out.len() == 1 {
                    out.pop().expect("one element")
                } else {
                    GroundFormula::And(out)
                }
            }
            GroundFormula::Or(items) => {
                let mut out = Vec::with_capacity(items.len());
                for g in items {
                    match g.simplify() {
                        GroundFormula::Or(inner) => out.extend(inner),
                        t if t.is_top() => return t,
                        g => out.push(g),
                    }
                }
                if out.len() == 1 {
                    out.pop().expect("one element")
                } else {
                    GroundFormula::Or(out)
                }
            }
            GroundFormula::Implies(a, b) => {
                let a = a.simplify();
                let b = b.simplify();
                if a.is_bottom() || b.is_top() {
                    GroundFormula::top()
                } else if a.is_top() {
                    b
                } else {
                    GroundFormula::implies(a, b)
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            GroundFormula::And(v) | GroundFormula::Or(v) if v.len() < 2 => 6,
            GroundFormula::Implies(_, b) if b.is_bottom() => 5,
            GroundFormula::Implies(..) => 2,
            GroundFormula::Or(_) => 3,
            GroundFormula::And(_) => 4,
            GroundFormula::Atom(_) => 6,
        }
    }
}

impl fmt::Display for GroundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let wrap = |g: &GroundFormula, f: &mut fmt::Formatter<'_>, strict: bool| {
            let q = g.precedence();
            if q < p || (strict && q == p) {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            GroundFormula::Atom(a) => write!(f, "{a}"),
            GroundFormula::And(v) if v.is_empty() => f.write_str("#true"),
            GroundFormula::Or(v) if v.is_empty() => f.write_str("#false"),
            GroundFormula::And(v) | GroundFormula::Or(v) if v.len() == 1 => {
                write!(f, "({})", v[0])
            }
            GroundFormula::And(v) | GroundFormula::Or(v) => {
                let sep = if matches!(self, GroundFormula::And(_)) {
                    " & "
                } else {
                    " | "
                };
                for (i, g) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    wrap(g, f, true)?;
                }
                Ok(())
            }
            GroundFormula::Implies(a, b) if b.is_bottom() => {
                f.write_str("not ")?;
                wrap(a, f, false)
            }
            GroundFormula::Implies(a, b) => {
                wrap(a, f, true)?;
                f.write_str(" -> ")?;
                wrap(b, f, false)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroundError {
    #[error("formula has free variables: {0}")]
    Open(String),
    #[error("constant `{0}` lies outside the domain")]
    OutsideDomain(Precomputed),
    #[error("`{0}` is not a numeral but appears under arithmetic")]
    IllSorted(String),
}

fn eval_term(t: &Term, env: &[(Var, Precomputed)]) -> Result<Precomputed, GroundError> {
    match t {
        Term::Const(c) => Ok(c.clone()),
        Term::Var(v) => Ok(env
            .iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|(_, c)| c.clone())
            .expect("closed formula binds every variable")),
        Term::Arith { op, lhs, rhs } => {
            let l = eval_term(lhs, env)?;
            let r = eval_term(rhs, env)?;
            match (l, r) {
                (Precomputed::Numeral(a), Precomputed::Numeral(b)) => {
                    Ok(Precomputed::Numeral(match op {
                        ArithOp::Add => a + b,
                        ArithOp::Sub => a - b,
                        ArithOp::Mul => a * b,
                    }))
                }
                _ => Err(GroundError::IllSorted(t.to_string())),
            }
        }
    }
}

fn ground_in(
    f: &Formula,
    domain: &Domain,
    pool: &[Precomputed],
    env: &mut Vec<(Var, Precomputed)>,
) -> Result<GroundFormula, GroundError> {
    Ok(match f {
        Formula::Pred { name, args } => GroundFormula::Atom(GroundAtom {
            predicate: name.clone(),
            args: args
                .iter()
                .map(|t| eval_term(t, env))
                .collect::<Result<_, _>>()?,
        }),
        Formula::Cmp { lhs, rel, rhs } => {
            if rel.holds(&eval_term(lhs, env)?, &eval_term(rhs, env)?) {
                GroundFormula::top()
            } else {
                GroundFormula::bottom()
            }
        }
        Formula::Bottom => GroundFormula::bottom(),
        Formula::And(a, b) => GroundFormula::And(alloc::vec![
            ground_in(a, domain, pool, env)?,
            ground_in(b, domain, pool, env)?
        ]),
        Formula::Or(a, b) => GroundFormula::Or(alloc::vec![
            ground_in(a, domain, pool, env)?,
            ground_in(b, domain, pool, env)?
        ]),
        Formula::Implies(a, b) => GroundFormula::implies(
            ground_in(a, domain, pool, env)?,
            ground_in(b, domain, pool, env)?,
        ),
        Formula::Quant(q, v, body) => {
            let values: Vec<Precomputed> = match v.sort {
                Sort::Generic => pool.to_vec(),
                Sort::Integer => domain.numerals().collect(),
            };
            let mut members = Vec::with_capacity(values.len());
            for r in values {
                env.push((v.clone(), r));
                let g = ground_in(body, domain, pool, env);
                env.pop();
                let g = g?;
                if g.atoms()
                    .iter()
                    .all(|a| a.args.iter().all(|c| domain.contains(c)))
                {
                    members.push(g);
                }
            }
            match q {
                Quantifier::Forall => GroundFormula::And(members),
                Quantifier::Exists => GroundFormula::Or(members),
            }
        }
    })
}

/// Ground a sentence over `domain` without simplification.
pub fn ground_raw(f: &Formula, domain: &Domain) -> Result<GroundFormula, GroundError> {
    let free = f.free_vars();
    if !free.is_empty() {
        let names: Vec<String> = free.into_iter().map(|v| v.name).collect();
        return Err(GroundError::Open(names.join(", ")));
    }
    if let Some(c) = const_argument_outside(f, domain) {
        return Err(GroundError::OutsideDomain(c));
    }
    ground_in(f, domain, &domain.pool(), &mut Vec::new())
}

/// A constant written directly as an atom argument that the domain lacks.
fn const_argument_outside(f: &Formula, domain: &Domain) -> Option<Precomputed> {
    match f {
        Formula::Pred { args, .. } => args.iter().find_map(|t| match t {
            Term::Const(c) if !domain.contains(c) => Some(c.clone()),
            _ => None,
        }),
        Formula::Cmp { .. } | Formula::Bottom => None,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            const_argument_outside(a, domain).or_else(|| const_argument_outside(b, domain))
        }
        Formula::Quant(_, _, body) => const_argument_outside(body, domain),
    }
}

/// Ground a sentence over `domain`, absorbing `#true`/`#false`.
pub fn ground(f: &Formula, domain: &Domain) -> Result<GroundFormula, GroundError> {
    Ok(ground_raw(f, domain)?.simplify())
}
