//! Capture-avoiding substitution `F^V_t`.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Formula, Sort, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("substituting `{term}` for `{var}` would be captured by the quantifier on `{binder}`")]
    Capture {
        var: String,
        term: String,
        binder: String,
    },
    #[error("`{term}` has sort {found}, but `{var}` has sort integer")]
    SortMismatch {
        var: String,
        term: String,
        found: Sort,
    },
}

fn capture_in(f: &Formula, v: &Var, t_vars: &BTreeSet<Var>, scope: &mut Vec<Var>) -> Option<Var> {
    match f {
        Formula::Pred { .. } | Formula::Cmp { .. } => {
            if f.occurs_free(v) {
                scope.iter().find(|b| t_vars.contains(b)).cloned()
            } else {
                None
            }
        }
        Formula::Bottom => None,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            capture_in(a, v, t_vars, scope).or_else(|| capture_in(b, v, t_vars, scope))
        }
        Formula::Quant(_, w, body) => {
            if w == v {
                return None;
            }
            scope.push(w.clone());
            let r = capture_in(body, v, t_vars, scope);
            scope.pop();
            r
        }
    }
}

fn check(f: &Formula, v: &Var, t: &Term) -> Result<(), SubstError> {
    if v.sort == Sort::Integer && t.sort() != Sort::Integer {
        return Err(SubstError::SortMismatch {
            var: v.name.clone(),
            term: format!("{t}"),
            found: t.sort(),
        });
    }
    if let Some(binder) = capture_in(f, v, &t.vars(), &mut Vec::new()) {
        return Err(SubstError::Capture {
            var: v.name.clone(),
            term: format!("{t}"),
            binder: binder.name,
        });
    }
    Ok(())
}

/// `t` is substitutable for `v` in `f`: no free occurrence of `v` lies in
/// the scope of a quantifier on a variable of `t`, and `t` has sort integer
/// whenever `v` does.
pub fn is_substitutable(f: &Formula, v: &Var, t: &Term) -> bool {
    check(f, v, t).is_ok()
}

pub(crate) fn replace_in_term(term: &Term, v: &Var, t: &Term) -> Term {
    match term {
        Term::Var(w) if w == v => t.clone(),
        Term::Const(_) | Term::Var(_) => term.clone(),
        Term::Arith { op, lhs, rhs } => Term::Arith {
            op: *op,
            lhs: Box::new(replace_in_term(lhs, v, t)),
            rhs: Box::new(replace_in_term(rhs, v, t)),
        },
    }
}

fn replace(f: &Formula, v: &Var, t: &Term) -> Formula {
    match f {
        Formula::Pred { name, args } => Formula::Pred {
            name: name.clone(),
            args: args.iter().map(|a| replace_in_term(a, v, t)).collect(),
        },
        Formula::Cmp { lhs, rel, rhs } => Formula::Cmp {
            lhs: replace_in_term(lhs, v, t),
            rel: *rel,
            rhs: replace_in_term(rhs, v, t),
        },
        Formula::Bottom => Formula::Bottom,
        Formula::And(a, b) => Formula::and(replace(a, v, t), replace(b, v, t)),
        Formula::Or(a, b) => Formula::or(replace(a, v, t), replace(b, v, t)),
        Formula::Implies(a, b) => Formula::implies(replace(a, v, t), replace(b, v, t)),
        Formula::Quant(q, w, body) => {
            if w == v {
                f.clone()
            } else {
                Formula::Quant(*q, w.clone(), Box::new(replace(body, v, t)))
            }
        }
    }
}

/// Replace every free occurrence of `v` in `f` by `t`.
pub fn substitute(f: &Formula, v: &Var, t: &Term) -> Result<Formula, SubstError> {
    check(f, v, t)?;
    let out = replace(f, v, t);
    debug_assert!(out.is_well_sorted());
    Ok(out)
}

/// Simultaneous substitution, done sequentially through fresh variables
/// `_v0, _v1, ...` that the parsers never produce.
pub fn substitute_simultaneous(f: &Formula, pairs: &[(Var, Term)]) -> Result<Formula, SubstError> {
    let mut used = f.all_var_names();
    for (v, t) in pairs {
        used.insert(v.name.clone());
        used.extend(t.vars().into_iter().map(|w| w.name));
    }
    let mut counter = 0usize;
    let mut fresh = Vec::with_capacity(pairs.len());
    for (v, _) in pairs {
        let name = loop {
            let candidate = format!("_v{counter}");
            counter += 1;
            if !used.contains(&candidate) {
                break candidate;
            }
        };
        fresh.push(Var { name, sort: v.sort });
    }
    let mut out = f.clone();
    for ((v, _), w) in pairs.iter().zip(&fresh) {
        out = substitute(&out, v, &Term::Var(w.clone()))?;
    }
    for ((_, t), w) in pairs.iter().zip(&fresh) {
        out = substitute(&out, w, t)?;
    }
    Ok(out)
}
