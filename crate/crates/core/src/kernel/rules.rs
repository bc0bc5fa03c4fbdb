use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::fo::{alpha_eq, substitute, Formula, Quantifier, Term, Var};
use crate::precomputed::Relation;

use super::{contains, set_eq, subset, union, without, Hints, RuleName, Sequent};

type Check = Result<(), String>;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(a: &Formula, b: &Formula, what: &str) -> Check {
    require(alpha_eq(a, b), || {
        format!("{what}: expected {b}, found {a}")
    })
}

fn assumptions_are(s: &Sequent, expected: &[Formula]) -> Check {
    require(set_eq(s.assumptions(), expected), || {
        let shown: Vec<String> = expected.iter().map(|f| f.to_string()).collect();
        format!("assumptions should be {{{}}}", shown.join(", "))
    })
}

/// `Δ, F` read back as `Δ`: either with or without `F` itself.
fn discharge_options(set: &[Formula], f: &Formula) -> Result<[Vec<Formula>; 2], String> {
    if !contains(set, f) {
        return Err(format!("premise does not assume {f}"));
    }
    Ok([without(set, f), set.to_vec()])
}

fn instance(f: &Formula, v: &Var, t: &Term) -> Result<Formula, String> {
    substitute(f, v, t).map_err(|e| e.to_string())
}

fn hint<'a, T>(h: &'a Option<T>, what: &str) -> Result<&'a T, String> {
    h.as_ref().ok_or_else(|| format!("missing `{what}` hint"))
}

pub(super) fn check_rule(
    name: RuleName,
    premises: &[&Sequent],
    hints: &Hints,
    s: &Sequent,
) -> Check {
    let arity = match name {
        RuleName::AndI
        | RuleName::ImpE
        | RuleName::ExistsE
        | RuleName::EqForward
        | RuleName::EqBackward => 2,
        RuleName::OrE => 3,
        _ => 1,
    };
    require(premises.len() == arity, || {
        format!("expects {arity} premise(s), got {}", premises.len())
    })?;
    let c = s.conclusion();
    match name {
        RuleName::AndI => {
            let Formula::And(f, g) = c else {
                return Err("conclusion is not a conjunction".to_string());
            };
            same(premises[0].conclusion(), f, "left premise")?;
            same(premises[1].conclusion(), g, "right premise")?;
            assumptions_are(
                s,
                &union(&[premises[0].assumptions(), premises[1].assumptions()]),
            )
        }
        RuleName::AndELeft | RuleName::AndERight => {
            let Formula::And(f, g) = premises[0].conclusion() else {
                return Err("premise is not a conjunction".to_string());
            };
            let part = if name == RuleName::AndELeft { f } else { g };
            same(c, part, "conclusion")?;
            assumptions_are(s, premises[0].assumptions())
        }
        RuleName::OrILeft | RuleName::OrIRight => {
            let Formula::Or(f, g) = c else {
                return Err("conclusion is not a disjunction".to_string());
            };
            let part = if name == RuleName::OrILeft { f } else { g };
            same(premises[0].conclusion(), part, "premise")?;
            assumptions_are(s, premises[0].assumptions())
        }
        RuleName::OrE => {
            let Formula::Or(f, g) = premises[0].conclusion() else {
                return Err("first premise is not a disjunction".to_string());
            };
            same(premises[1].conclusion(), c, "second premise")?;
            same(premises[2].conclusion(), c, "third premise")?;
            let d1 = discharge_options(premises[1].assumptions(), f)?;
            let d2 = discharge_options(premises[2].assumptions(), g)?;
            let gamma = premises[0].assumptions();
            let ok = d1.iter().any(|a| {
                d2.iter()
                    .any(|b| set_eq(s.assumptions(), &union(&[gamma, a, b])))
            });
            require(ok, || "assumptions are not Γ, Δ1, Δ2".to_string())
        }
        RuleName::ImpI => {
            let Formula::Implies(f, g) = c else {
                return Err("conclusion is not an implication".to_string());
            };
            same(premises[0].conclusion(), g, "premise")?;
            let options = discharge_options(premises[0].assumptions(), f)?;
            require(options.iter().any(|o| set_eq(s.assumptions(), o)), || {
                "assumptions are not those of the premise less the antecedent".to_string()
            })
        }
        RuleName::ImpE => {
            let fits = |minor: &Sequent, major: &Sequent| match major.conclusion() {
                Formula::Implies(f, g) => alpha_eq(minor.conclusion(), f) && alpha_eq(c, g),
                _ => false,
            };
            require(
                fits(premises[0], premises[1]) || fits(premises[1], premises[0]),
                || "premises are not F and F -> G with conclusion G".to_string(),
            )?;
            assumptions_are(
                s,
                &union(&[premises[0].assumptions(), premises[1].assumptions()]),
            )
        }
        RuleName::Contradiction => {
            require(*premises[0].conclusion() == Formula::Bottom, || {
                "premise does not conclude #false".to_string()
            })?;
            assumptions_are(s, premises[0].assumptions())
        }
        RuleName::Weakening => {
            same(c, premises[0].conclusion(), "conclusion")?;
            require(subset(premises[0].assumptions(), s.assumptions()), || {
                "weakening may only add assumptions".to_string()
            })
        }
        RuleName::ForallI => {
            let Formula::Quant(Quantifier::Forall, v, body) = c else {
                return Err("conclusion is not universally quantified".to_string());
            };
            same(premises[0].conclusion(), body, "premise")?;
            assumptions_are(s, premises[0].assumptions())?;
            require(!premises[0].free_in_assumptions(v), || {
                format!("eigenvariable {} is free in the assumptions", v.name)
            })
        }
        RuleName::ForallE => {
            let Formula::Quant(Quantifier::Forall, v, body) = premises[0].conclusion() else {
                return Err("premise is not universally quantified".to_string());
            };
            let t = hint(&hints.term, "term")?;
            same(c, &instance(body, v, t)?, "conclusion")?;
            assumptions_are(s, premises[0].assumptions())
        }
        RuleName::ExistsI => {
            let Formula::Quant(Quantifier::Exists, v, body) = c else {
                return Err("conclusion is not existentially quantified".to_string());
            };
            let t = hint(&hints.term, "term")?;
            same(premises[0].conclusion(), &instance(body, v, t)?, "premise")?;
            assumptions_are(s, premises[0].assumptions())
        }
        RuleName::ExistsE => {
            let Formula::Quant(Quantifier::Exists, v, body) = premises[0].conclusion() else {
                return Err("first premise is not existentially quantified".to_string());
            };
            same(premises[1].conclusion(), c, "second premise")?;
            require(!c.occurs_free(v), || {
                format!("eigenvariable {} is free in the conclusion", v.name)
            })?;
            let gamma = premises[0].assumptions();
            let options = discharge_options(premises[1].assumptions(), body)?;
            let mut matched = false;
            for delta in &options {
                if set_eq(s.assumptions(), &union(&[gamma, delta])) {
                    matched = true;
                    if !delta.iter().any(|d| d.occurs_free(v)) {
                        return Ok(());
                    }
                }
            }
            Err(if matched {
                format!("eigenvariable {} is free in the assumptions", v.name)
            } else {
                "assumptions are not Γ, Δ".to_string()
            })
        }
        RuleName::EqForward | RuleName::EqBackward => {
            let Formula::Cmp {
                lhs: t1,
                rel: Relation::Eq,
                rhs: t2,
            } = premises[0].conclusion()
            else {
                return Err("first premise is not an equality".to_string());
            };
            let v = hint(&hints.var, "var")?;
            let template = hint(&hints.template, "template")?;
            let (from, to) = if name == RuleName::EqForward {
                (t1, t2)
            } else {
                (t2, t1)
            };
            same(
                premises[1].conclusion(),
                &instance(template, v, from)?,
                "second premise",
            )?;
            same(c, &instance(template, v, to)?, "conclusion")?;
            assumptions_are(
                s,
                &union(&[premises[0].assumptions(), premises[1].assumptions()]),
            )
        }
    }
}
