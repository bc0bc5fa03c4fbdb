//! Parser for the formula text syntax.
//!
//! ```text
//! formula := imp ('<->' imp)?
//! imp     := disj ('->' imp)?
//! disj    := conj ('|' disj)?
//! conj    := unary ('&' conj)?
//! unary   := 'not' unary | ('forall' | 'exists') binder+ unary | primary
//! binder  := 'int'? VAR
//! primary := '#false' | '#true' | term rel term (rel term)* | atom | '(' formula ')'
//! ```
//!
//! Free variables take their sort from the declarations (generic when
//! undeclared); bound variables from their binder.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{ArithOp, Formula, Quantifier, Sort, SortError, Term, Var};
use crate::lexer::{tokenize, Cursor, ParseError, Tok};
use crate::precomputed::{Precomputed, Relation};

/// Sorts of free variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations(BTreeMap<String, Sort>);

impl Declarations {
    pub fn declare(&mut self, name: impl Into<String>, sort: Sort) {
        self.0.insert(name.into(), sort);
    }

    pub fn sort_of(&self, name: &str) -> Sort {
        self.0.get(name).copied().unwrap_or(Sort::Generic)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Sort)> {
        self.0.iter()
    }
}

impl<S: Into<String>> FromIterator<(S, Sort)> for Declarations {
    fn from_iter<I: IntoIterator<Item = (S, Sort)>>(iter: I) -> Self {
        Declarations(iter.into_iter().map(|(n, s)| (n.into(), s)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("{line}:{column}: {source}")]
    Sort {
        line: usize,
        column: usize,
        source: SortError,
    },
}

pub fn parse_formula(text: &str, decls: &Declarations) -> Result<Formula, FormulaError> {
    let mut p = Parser {
        cur: Cursor::new(tokenize(text)?),
        decls,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    p.cur.expect(&Tok::Eof)?;
    Ok(f)
}

pub fn parse_term(text: &str, decls: &Declarations) -> Result<Term, FormulaError> {
    let mut p = Parser {
        cur: Cursor::new(tokenize(text)?),
        decls,
        scope: Vec::new(),
    };
    let t = p.term()?;
    p.cur.expect(&Tok::Eof)?;
    Ok(t)
}

struct Parser<'d> {
    cur: Cursor,
    decls: &'d Declarations,
    scope: Vec<Var>,
}

fn relation(tok: &Tok) -> Option<Relation> {
    Some(match tok {
        Tok::Eq => Relation::Eq,
        Tok::Ne => Relation::Ne,
        Tok::Lt => Relation::Lt,
        Tok::Gt => Relation::Gt,
        Tok::Le => Relation::Le,
        Tok::Ge => Relation::Ge,
        _ => return None,
    })
}

const KEYWORDS: [&str; 4] = ["not", "forall", "exists", "int"];

impl Parser<'_> {
    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.implication()?;
        if self.cur.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.disjunction()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.conjunction()?;
        if self.cur.eat(&Tok::Bar) {
            let rhs = self.disjunction()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.unary()?;
        if self.cur.eat(&Tok::Amp) {
            let rhs = self.conjunction()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.cur.eat_ident("not") {
            return Ok(Formula::not(self.unary()?));
        }
        let q = if self.cur.eat_ident("forall") {
            Some(Quantifier::Forall)
        } else if self.cur.eat_ident("exists") {
            Some(Quantifier::Exists)
        } else {
            None
        };
        if let Some(q) = q {
            let mut binders = Vec::new();
            loop {
                let int = self.cur.eat_ident("int");
                match self.cur.peek().clone() {
                    Tok::Var(name) => {
                        self.cur.bump();
                        let sort = if int {
                            Sort::Integer
                        } else {
                            self.decls.sort_of(&name)
                        };
                        binders.push(Var { name, sort });
                    }
                    _ if binders.is_empty() || int => {
                        return Err(self.cur.error(&["variable", "int"]).into())
                    }
                    _ => break,
                }
            }
            let depth = self.scope.len();
            self.scope.extend(binders.iter().cloned());
            let body = self.unary();
            self.scope.truncate(depth);
            let mut f = body?;
            for v in binders.into_iter().rev() {
                f = Formula::Quant(q, v, alloc::boxed::Box::new(f));
            }
            return Ok(f);
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        match self.cur.peek().clone() {
            Tok::Hash(h) if h == "false" => {
                self.cur.bump();
                return Ok(Formula::Bottom);
            }
            Tok::Hash(h) if h == "true" => {
                self.cur.bump();
                return Ok(Formula::top());
            }
            _ => {}
        }

        // Comparison chain first; fall back to atoms and parentheses.
        let save = self.cur.pos;
        let first = match self.term() {
            Err(e @ FormulaError::Sort { .. }) => return Err(e),
            other => other,
        };
        if let Ok(first) = first {
            if let Some(rel) = relation(self.cur.peek()) {
                self.cur.bump();
                let mut links = alloc::vec![(first, rel, self.term()?)];
                while let Some(rel) = relation(self.cur.peek()) {
                    self.cur.bump();
                    let lhs = links.last().expect("nonempty").2.clone();
                    let rhs = self.term()?;
                    links.push((lhs, rel, rhs));
                }
                let cmps = links
                    .into_iter()
                    .map(|(l, r, h)| Formula::cmp(l, r, h))
                    .collect();
                return Ok(Formula::conjunction(cmps).expect("nonempty chain"));
            }
        }
        self.cur.pos = save;

        match self.cur.peek().clone() {
            Tok::LParen => {
                self.cur.bump();
                let f = self.formula()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.cur.bump();
                let mut args = Vec::new();
                if self.cur.eat(&Tok::LParen) {
                    args.push(self.term()?);
                    while self.cur.eat(&Tok::Comma) {
                        args.push(self.term()?);
                    }
                    self.cur.expect(&Tok::RParen)?;
                }
                Ok(Formula::Pred { name, args })
            }
            _ => Err(self.cur.error(&["formula"]).into()),
        }
    }

    fn term(&mut self) -> Result<Term, FormulaError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.cur.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            self.cur.bump();
            let rhs = self.product()?;
            lhs = self.arith(op, lhs, rhs)?;
        }
    }

    fn product(&mut self) -> Result<Term, FormulaError> {
        let mut lhs = self.negation()?;
        while self.cur.eat(&Tok::Star) {
            let rhs = self.negation()?;
            lhs = self.arith(ArithOp::Mul, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Term, FormulaError> {
        if self.cur.eat(&Tok::Minus) {
            return match self.negation()? {
                Term::Const(Precomputed::Numeral(n)) => Ok(Term::num(-n)),
                t => self.arith(ArithOp::Sub, Term::num(BigInt::from(0)), t),
            };
        }
        self.atom_term()
    }

    fn atom_term(&mut self) -> Result<Term, FormulaError> {
        let t = match self.cur.peek().clone() {
            Tok::Number(n) => Term::num(n),
            Tok::Ident(w)
                if !KEYWORDS.contains(&w.as_str()) && *self.cur.peek_at(1) != Tok::LParen =>
            {
                Term::sym(w)
            }
            Tok::Hash(h) if h == "inf" => Term::Const(Precomputed::Inf),
            Tok::Hash(h) if h == "sup" => Term::Const(Precomputed::Sup),
            Tok::Var(name) => {
                let sort = match self.scope.iter().rev().find(|v| v.name == name) {
                    Some(v) => v.sort,
                    None => self.decls.sort_of(&name),
                };
                Term::Var(Var { name, sort })
            }
            Tok::LParen => {
                self.cur.bump();
                let t = self.term()?;
                self.cur.expect(&Tok::RParen)?;
                return Ok(t);
            }
            _ => return Err(self.cur.error(&["term"]).into()),
        };
        self.cur.bump();
        Ok(t)
    }

    fn arith(&self, op: ArithOp, lhs: Term, rhs: Term) -> Result<Term, FormulaError> {
        Term::arith(op, lhs, rhs).map_err(|source| {
            let e = self.cur.error(&[]);
            FormulaError::Sort {
                line: e.line,
                column: e.column,
                source,
            }
        })
    }
}

impl FormulaError {
    pub fn message(&self) -> String {
        self.to_string()
    }
}
