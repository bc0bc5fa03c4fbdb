//! Regularity of terms and rules, and the order on precomputed terms.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{BinOp, BodyElem, Head, PTerm, Rule};
use crate::precomputed::{Precomputed, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    RegularFirstKind,
    RegularSecondKind,
    Irregular(String),
}

fn first_symbolic(t: &PTerm) -> Option<&Precomputed> {
    match t {
        PTerm::Precomputed(c @ (Precomputed::Symbol(_) | Precomputed::Inf | Precomputed::Sup)) => {
            Some(c)
        }
        PTerm::BinOp { lhs, rhs, .. } => first_symbolic(lhs).or_else(|| first_symbolic(rhs)),
        _ => None,
    }
}

/// `Ok` for a regular term of the first kind, otherwise the reason it is not.
fn first_kind(t: &PTerm) -> Result<(), String> {
    match t {
        PTerm::Precomputed(_) | PTerm::Variable(_) => Ok(()),
        PTerm::BinOp { op, lhs, rhs } => match op {
            BinOp::Add | BinOp::Sub | BinOp::Mul => {
                first_kind(lhs)?;
                first_kind(rhs)?;
                if let Some(c) = first_symbolic(lhs).or_else(|| first_symbolic(rhs)) {
                    return Err(format!(
                        "`{c}` occurs under the operation `{}`",
                        op.symbol()
                    ));
                }
                Ok(())
            }
            BinOp::Div | BinOp::Mod => Err(format!("uses the operation `{}`", op.symbol())),
            BinOp::Interval => Err(format!("interval `{t}` nested inside another term")),
        },
    }
}

pub fn term_kind(t: &PTerm) -> TermKind {
    match first_kind(t) {
        Ok(()) => TermKind::RegularFirstKind,
        Err(reason) => {
            if let PTerm::BinOp {
                op: BinOp::Interval,
                lhs,
                rhs,
            } = t
            {
                for bound in [lhs, rhs] {
                    if let Err(inner) = first_kind(bound) {
                        return TermKind::Irregular(match **bound {
                            PTerm::BinOp {
                                op: BinOp::Interval,
                                ..
                            } => format!("nested interval `{bound}`"),
                            _ => inner,
                        });
                    }
                    if let Some(c) = first_symbolic(bound) {
                        return TermKind::Irregular(format!("interval bound contains `{c}`"));
                    }
                }
                return TermKind::RegularSecondKind;
            }
            TermKind::Irregular(reason)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// A term is neither of the first nor of the second kind.
    IrregularTerm,
    /// A literal contains an interval.
    IntervalInLiteral,
    /// A comparison with an interval is not of the form `t1 = t2..t3`.
    IntervalComparison,
    /// The head contains an interval; the translation does not cover it.
    UnsupportedHead,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The offending head or body member, as written.
    pub location: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::IrregularTerm => "irregular term",
            ViolationKind::IntervalInLiteral => "interval in literal",
            ViolationKind::IntervalComparison => "interval comparison",
            ViolationKind::UnsupportedHead => "unsupported head",
        };
        write!(f, "{kind} in `{}`: {}", self.location, self.detail)
    }
}

/// Check the regularity conditions, plus the absence of intervals in the
/// head.
pub fn check_regular_rule(rule: &Rule) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut push = |kind, location: &dyn fmt::Display, detail: String| {
        out.push(Violation {
            kind,
            location: location.to_string(),
            detail,
        })
    };

    if let Head::Basic(a) | Head::Choice(a) = &rule.head {
        for t in &a.args {
            match term_kind(t) {
                TermKind::RegularFirstKind => {}
                TermKind::RegularSecondKind => push(
                    ViolationKind::UnsupportedHead,
                    a,
                    format!("interval `{t}` in the head"),
                ),
                TermKind::Irregular(why) => push(ViolationKind::IrregularTerm, a, why),
            }
        }
    }

    for b in &rule.body {
        match b {
            BodyElem::Literal(l) => {
                for t in &l.atom.args {
                    match term_kind(t) {
                        TermKind::RegularFirstKind => {}
                        TermKind::RegularSecondKind => push(
                            ViolationKind::IntervalInLiteral,
                            l,
                            format!("interval `{t}` inside a literal"),
                        ),
                        TermKind::Irregular(why) => push(ViolationKind::IrregularTerm, l, why),
                    }
                }
            }
            BodyElem::Comparison(c) => {
                let lk = term_kind(&c.lhs);
                let rk = term_kind(&c.rhs);
                let mut irregular = false;
                for k in [&lk, &rk] {
                    if let TermKind::Irregular(why) = k {
                        push(ViolationKind::IrregularTerm, c, why.clone());
                        irregular = true;
                    }
                }
                if irregular {
                    continue;
                }
                let has_interval =
                    lk == TermKind::RegularSecondKind || rk == TermKind::RegularSecondKind;
                if !has_interval {
                    continue;
                }
                let lhs_ok = lk == TermKind::RegularFirstKind
                    && !matches!(c.lhs, PTerm::Precomputed(ref p) if !p.is_numeral());
                if c.rel != Relation::Eq || !lhs_ok || rk != TermKind::RegularSecondKind {
                    push(
                        ViolationKind::IntervalComparison,
                        c,
                        "an interval may only appear as `t1 = t2..t3` with t1 of the first kind \
                         and not a symbolic constant, #inf or #sup"
                            .to_string(),
                    );
                }
            }
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a precomputed term")]
pub struct NotPrecomputed(pub String);

/// Compare two precomputed program terms in the fixed total order.
pub fn precomputed_compare(a: &PTerm, b: &PTerm) -> Result<Ordering, NotPrecomputed> {
    match (a, b) {
        (PTerm::Precomputed(x), PTerm::Precomputed(y)) => Ok(x.cmp(y)),
        (PTerm::Precomputed(_), other) | (other, _) => Err(NotPrecomputed(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_rule, parse_term};

    fn kind(s: &str) -> TermKind {
        term_kind(&parse_term(s).unwrap())
    }

    #[test]
    fn term_kinds() {
        assert_eq!(kind("X+1"), TermKind::RegularFirstKind);
        assert_eq!(kind("a"), TermKind::RegularFirstKind);
        assert_eq!(kind("#sup"), TermKind::RegularFirstKind);
        assert_eq!(kind("X*(Y-2)"), TermKind::RegularFirstKind);
        assert_eq!(kind("1..X"), TermKind::RegularSecondKind);
        assert_eq!(kind("X-1..X+1"), TermKind::RegularSecondKind);
        assert!(
            matches!(kind("(1..3)..4"), TermKind::Irregular(r) if r.contains("nested interval"))
        );
        assert!(matches!(kind("a+1"), TermKind::Irregular(r) if r.contains("`a`")));
        assert!(matches!(kind("X/2"), TermKind::Irregular(_)));
        assert!(matches!(kind("X\\2"), TermKind::Irregular(_)));
        assert!(matches!(kind("a..3"), TermKind::Irregular(_)));
        assert!(matches!(kind("1..#sup"), TermKind::Irregular(_)));
        assert!(matches!(
            kind("(1..3)*(4..6)+(7..9)"),
            TermKind::Irregular(_)
        ));
    }

    fn violations(src: &str) -> Vec<ViolationKind> {
        match check_regular_rule(&parse_rule(src).unwrap()) {
            Ok(()) => Vec::new(),
            Err(v) => v.into_iter().map(|v| v.kind).collect(),
        }
    }

    #[test]
    fn regular_rules() {
        assert!(violations("p(X,Y) :- X = 1..2, Y = 1..2.").is_empty());
        assert!(violations("p(X,Y) :- X = Y, Y = 1..2.").is_empty());
        assert!(violations("{q(X)} :- p(X+1).").is_empty());
        assert!(violations(":- p(X), X+1 > 0.").is_empty());
    }

    #[test]
    fn irregular_rules() {
        assert_eq!(
            violations("q :- p(1..2)."),
            [ViolationKind::IntervalInLiteral]
        );
        assert_eq!(
            violations("p(1..X) :- q(X)."),
            [ViolationKind::UnsupportedHead]
        );
        assert_eq!(
            violations("p(1..X) :- p(1..X), q(X)."),
            [
                ViolationKind::UnsupportedHead,
                ViolationKind::IntervalInLiteral
            ]
        );
        assert_eq!(
            violations("q(X) :- X < 1..2."),
            [ViolationKind::IntervalComparison]
        );
        assert_eq!(
            violations("q :- a = 1..2."),
            [ViolationKind::IntervalComparison]
        );
        assert_eq!(
            violations("q(X) :- 1..2 = X."),
            [ViolationKind::IntervalComparison]
        );
        assert_eq!(
            violations("q(X) :- p(X/2)."),
            [ViolationKind::IrregularTerm]
        );
        let v = check_regular_rule(&parse_rule("q :- p(1..2).").unwrap()).unwrap_err();
        assert!(v[0].location.contains("p(1..2)"));
    }

    #[test]
    fn examples_from_the_literature_are_regular() {
        let programs = [
            "{q(X)} :- p(X+1).",
            "q(X) :- p(X+1), not not q(X).",
            "q(X) :- p(X). q(X+1) :- p(X+1).",
            "{q(X,Y)} :- p(X,Y), X < Y. {q(X,X)} :- p(X,X).",
            "{q(X,Y)} :- p(X,Y), X <= Y.",
            "q(X+Y) :- p(X), p(Y), X <= Y.",
            "q(X+Y) :- p(X), p(Y).",
            "p(0). p(X+1) :- p(X). p(X) :- X+1 > 0.",
        ];
        for src in programs {
            for r in parse_program(src).unwrap().rules {
                assert_eq!(check_regular_rule(&r), Ok(()), "{r}");
            }
        }
    }

    #[test]
    fn precomputed_order() {
        let t = |s| parse_term(s).unwrap();
        assert_eq!(precomputed_compare(&t("ab"), &t("ac")), Ok(Ordering::Less));
        assert_eq!(precomputed_compare(&t("#inf"), &t("0")), Ok(Ordering::Less));
        assert_eq!(precomputed_compare(&t("5"), &t("5")), Ok(Ordering::Equal));
        assert_eq!(
            precomputed_compare(&t("#sup"), &t("zz")),
            Ok(Ordering::Greater)
        );
        assert!(precomputed_compare(&t("X"), &t("1")).is_err());
        assert!(precomputed_compare(&t("1"), &t("1+1")).is_err());
    }
}
