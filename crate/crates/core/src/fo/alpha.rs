//! Alpha-equivalence.

use alloc::vec::Vec;

use super::{Formula, Term, Var};

fn lookup(stack: &[(Var, Var)], v: &Var, left: bool) -> Option<usize> {
    stack
        .iter()
        .rposition(|(l, r)| if left { l == v } else { r == v })
}

fn term_eq(a: &Term, b: &Term, stack: &[(Var, Var)]) -> bool {
    match (a, b) {
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::Var(x), Term::Var(y)) => match (lookup(stack, x, true), lookup(stack, y, false)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (
            Term::Arith { op, lhs, rhs },
            Term::Arith {
                op: op2,
                lhs: lhs2,
                rhs: rhs2,
            },
        ) => op == op2 && term_eq(lhs, lhs2, stack) && term_eq(rhs, rhs2, stack),
        _ => false,
    }
}

fn formula_eq(a: &Formula, b: &Formula, stack: &mut Vec<(Var, Var)>) -> bool {
    match (a, b) {
        (Formula::Pred { name, args }, Formula::Pred { name: n2, args: a2 }) => {
            name == n2
                && args.len() == a2.len()
                && args.iter().zip(a2).all(|(x, y)| term_eq(x, y, stack))
        }
        (
            Formula::Cmp { lhs, rel, rhs },
            Formula::Cmp {
                lhs: l2,
                rel: r2,
                rhs: rh2,
            },
        ) => rel == r2 && term_eq(lhs, l2, stack) && term_eq(rhs, rh2, stack),
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::And(a1, b1), Formula::And(a2, b2))
        | (Formula::Or(a1, b1), Formula::Or(a2, b2))
        | (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
            formula_eq(a1, a2, stack) && formula_eq(b1, b2, stack)
        }
        (Formula::Quant(q1, v1, body1), Formula::Quant(q2, v2, body2)) => {
            if q1 != q2 || v1.sort != v2.sort {
                return false;
            }
            stack.push((v1.clone(), v2.clone()));
            let r = formula_eq(body1, body2, stack);
            stack.pop();
            r
        }
        _ => false,
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    formula_eq(a, b, &mut Vec::new())
}

fn forall_prefix(f: &Formula) -> (Vec<Var>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::Quant(super::Quantifier::Forall, v, body) = cur {
        vars.push(v.clone());
        cur = body;
    }
    (vars, cur)
}

fn rebuild(vars: &[Var], body: &Formula) -> Formula {
    vars.iter()
        .rev()
        .fold(body.clone(), |acc, v| Formula::forall(v.clone(), acc))
}

fn permutations_match(a: &Formula, b_vars: &mut Vec<Var>, k: usize, b_body: &Formula) -> bool {
    if k == b_vars.len() {
        return alpha_eq(a, &rebuild(b_vars, b_body));
    }
    for i in k..b_vars.len() {
        b_vars.swap(k, i);
        if permutations_match(a, b_vars, k + 1, b_body) {
            b_vars.swap(k, i);
            return true;
        }
        b_vars.swap(k, i);
    }
    false
}

/// Alpha-equivalence that also ignores the order of the leading block of
/// universal quantifiers.
pub fn alpha_eq_up_to_prefix(a: &Formula, b: &Formula) -> bool {
    if alpha_eq(a, b) {
        return true;
    }
    let (a_vars, _) = forall_prefix(a);
    let (mut b_vars, b_body) = forall_prefix(b);
    if a_vars.len() != b_vars.len() || a_vars.len() > 8 {
        return false;
    }
    let mut sa: Vec<_> = a_vars.iter().map(|v| v.sort).collect();
    let mut sb: Vec<_> = b_vars.iter().map(|v| v.sort).collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    permutations_match(a, &mut b_vars, 0, b_body)
}
