use alloc::vec::Vec;

use crate::fo::{
    alpha_eq, alpha_eq_up_to_prefix, parse_formula, Declarations, Formula, Sort, Term,
};
use crate::precomputed::Relation;

use super::Sequent;

/// `F => F` or `=> t = t`.
pub fn is_axiom_identity(s: &Sequent) -> bool {
    match s.assumptions() {
        [a] => alpha_eq(a, s.conclusion()),
        [] => is_eq_refl(s.conclusion()),
        _ => false,
    }
}

pub(crate) fn is_eq_refl(f: &Formula) -> bool {
    matches!(f, Formula::Cmp { lhs, rel: Relation::Eq, rhs } if lhs == rhs)
}

/// `F | (F -> G) | not G`, associated to the right.
pub fn is_hosoi_instance(f: &Formula) -> bool {
    let Formula::Or(first, rest) = f else {
        return false;
    };
    let Formula::Or(middle, last) = &**rest else {
        return false;
    };
    let (Formula::Implies(f2, g), Some(g2)) = (&**middle, last.as_negation()) else {
        return false;
    };
    alpha_eq(first, f2) && alpha_eq(g, g2)
}

const GROUP_B: &[&str] = &[
    "X = Y | not X = Y",
    "X != Y | not X != Y",
    "X < Y | not X < Y",
    "X > Y | not X > Y",
    "X <= Y | not X <= Y",
    "X >= Y | not X >= Y",
    "X <= X",
    "X <= Y & Y <= Z -> X <= Z",
    "X <= Y & Y <= X -> X = Y",
    "X <= Y | Y <= X",
    "X <= Y <-> X < Y | X = Y",
    "X < Y <-> X <= Y & not X = Y",
    "X > Y <-> Y <= X & not X = Y",
    "X >= Y <-> Y <= X",
    "X != Y <-> not X = Y",
    "#inf <= X",
    "X <= #sup",
];

const GROUP_D: &[&str] = &[
    "M + N = N + M",
    "M * N = N * M",
    "(M + N) + K = M + (N + K)",
    "(M * N) * K = M * (N * K)",
    "M * (N + K) = M * N + M * K",
    "N + 0 = N",
    "N * 1 = N",
    "(M - N) + N = M",
    "N - N = 0",
    "M <= N | N <= M",
    "N < N + 1",
    "N >= 0 | 0 - N >= 0",
];

fn catalog(texts: &[&str], decls: &Declarations) -> Vec<Formula> {
    texts
        .iter()
        .map(|t| {
            parse_formula(t, decls)
                .expect("catalog entries parse")
                .universal_closure()
        })
        .collect()
}

/// The order axioms, each as the universal closure over generic `X, Y, Z`.
pub fn group_b_catalog() -> Vec<Formula> {
    catalog(GROUP_B, &Declarations::default())
}

/// The arithmetic schemas, each closed over integer `M, N, K`.
pub fn group_d_catalog() -> Vec<Formula> {
    let decls = ["M", "N", "K"]
        .into_iter()
        .map(|v| (v, Sort::Integer))
        .collect();
    catalog(GROUP_D, &decls)
}

fn in_catalog(f: &Formula, entries: &[Formula]) -> bool {
    let closed = f.universal_closure();
    entries.iter().any(|e| alpha_eq_up_to_prefix(&closed, e))
}

/// A member of the order catalog or an instance of one up to renaming and
/// the order of the universal prefix. Free variables are read as
/// universally closed.
pub fn is_group_b_axiom(f: &Formula) -> bool {
    in_catalog(f, &group_b_catalog())
}

/// A true comparison between precomputed terms, or the negation of a
/// false one.
pub fn is_group_c_axiom(f: &Formula) -> bool {
    let (cmp, polarity) = match f.as_negation() {
        Some(inner) => (inner, false),
        None => (f, true),
    };
    match cmp {
        Formula::Cmp {
            lhs: Term::Const(a),
            rel,
            rhs: Term::Const(b),
        } => rel.holds(a, b) == polarity,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupD {
    Yes,
    YesTrusted,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupDError {
    #[error("formula is not arithmetical")]
    NotArithmetical,
    #[error("formula is not closed")]
    Open,
}

/// All atomic subformulas are comparisons between integer terms.
pub fn is_arithmetical(f: &Formula) -> bool {
    match f {
        Formula::Pred { .. } => false,
        Formula::Cmp { lhs, rhs, .. } => lhs.sort() == Sort::Integer && rhs.sort() == Sort::Integer,
        Formula::Bottom => true,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            is_arithmetical(a) && is_arithmetical(b)
        }
        Formula::Quant(_, _, body) => is_arithmetical(body),
    }
}

fn has_variables(f: &Formula) -> bool {
    match f {
        Formula::Quant(..) => true,
        _ => {
            let mut any = false;
            f.for_each_term(&mut |t| any |= !t.vars().is_empty());
            any
        }
    }
}

fn eval_closed(f: &Formula) -> bool {
    match f {
        Formula::Cmp { lhs, rel, rhs } => {
            match (
                crate::fo::eval_ground_term(lhs),
                crate::fo::eval_ground_term(rhs),
            ) {
                (Ok(a), Ok(b)) => rel.holds(&a, &b),
                _ => false,
            }
        }
        Formula::Bottom => false,
        Formula::And(a, b) => eval_closed(a) && eval_closed(b),
        Formula::Or(a, b) => eval_closed(a) || eval_closed(b),
        Formula::Implies(a, b) => !eval_closed(a) || eval_closed(b),
        Formula::Pred { .. } | Formula::Quant(..) => false,
    }
}

/// Decide an arithmetical sentence: variable-free ones are evaluated
/// exactly, others must match the schema catalog. Anything else is
/// `YesTrusted` when `trusted` is set and `No` otherwise.
pub fn is_group_d_axiom(f: &Formula, trusted: bool) -> Result<GroupD, GroupDError> {
    if !is_arithmetical(f) {
        return Err(GroupDError::NotArithmetical);
    }
    if !f.is_closed() {
        return Err(GroupDError::Open);
    }
    let decided = if has_variables(f) {
        in_catalog(f, &group_d_catalog())
    } else {
        eval_closed(f)
    };
    Ok(match (decided, trusted) {
        (true, _) => GroupD::Yes,
        (false, true) => GroupD::YesTrusted,
        (false, false) => GroupD::No,
    })
}
