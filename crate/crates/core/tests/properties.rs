use std::collections::BTreeSet;

use htequiv_core::fo::{
    alpha_eq, eval_ground_term, parse_formula, substitute, ArithOp, Declarations, Formula,
    Quantifier, Sort, Term, Var,
};
use htequiv_core::ground::{
    ground, ground_raw, is_negative, is_tautological, sat_classical, sat_ht, Domain, GroundAtom,
    GroundFormula, HTInterpretation,
};
use htequiv_core::syntax::{parse_program, Program};
use htequiv_core::{Precomputed, Relation};
use proptest::prelude::*;

fn ground_atom() -> impl Strategy<Value = GroundFormula> {
    prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(|n| GroundFormula::atom(n, vec![]))
}

fn ground_formula() -> impl Strategy<Value = GroundFormula> {
    let leaf = prop_oneof![
        4 => ground_atom(),
        1 => Just(GroundFormula::top()),
        1 => Just(GroundFormula::bottom()),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(GroundFormula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(GroundFormula::Or),
            (inner.clone(), inner).prop_map(|(a, b)| GroundFormula::implies(a, b)),
        ]
    })
}

fn negative_formula() -> impl Strategy<Value = GroundFormula> {
    let leaf = prop_oneof![
        Just(GroundFormula::bottom()),
        ground_formula().prop_map(GroundFormula::not),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(GroundFormula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(GroundFormula::Or),
            (ground_formula(), inner).prop_map(|(a, b)| GroundFormula::implies(a, b)),
        ]
    })
}

fn universe() -> Vec<GroundAtom> {
    ["p", "q", "r"]
        .iter()
        .map(|n| GroundAtom::new(*n, vec![]))
        .collect()
}

/// Every HT-interpretation over p, q, r.
fn all_interpretations() -> Vec<HTInterpretation> {
    let atoms = universe();
    let mut out = Vec::new();
    for code in 0..27u32 {
        let (mut here, mut there) = (BTreeSet::new(), BTreeSet::new());
        let mut c = code;
        for a in &atoms {
            match c % 3 {
                1 => {
                    there.insert(a.clone());
                }
                2 => {
                    here.insert(a.clone());
                    there.insert(a.clone());
                }
                _ => {}
            }
            c /= 3;
        }
        out.push(HTInterpretation::new(here, there).unwrap());
    }
    out
}

fn interpretation() -> impl Strategy<Value = HTInterpretation> {
    (0..27usize).prop_map(|k| all_interpretations().swap_remove(k))
}

fn generic_var() -> impl Strategy<Value = Var> {
    prop_oneof![Just("X"), Just("Y")].prop_map(Var::generic)
}

fn int_var() -> impl Strategy<Value = Var> {
    prop_oneof![Just("N"), Just("M")].prop_map(Var::integer)
}

fn int_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (-3i64..4).prop_map(Term::num),
        int_var().prop_map(Term::Var)
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (
            prop_oneof![Just(ArithOp::Add), Just(ArithOp::Sub), Just(ArithOp::Mul)],
            inner.clone(),
            inner,
        )
            .prop_map(|(op, a, b)| Term::arith(op, a, b).unwrap())
    })
}

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => int_term(),
        1 => generic_var().prop_map(Term::Var),
        1 => prop_oneof![Just("a"), Just("b")].prop_map(Term::sym),
        1 => Just(Term::Const(Precomputed::Inf)),
    ]
}

fn relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(Relation::ALL.to_vec())
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        term().prop_map(|t| Formula::pred("p", vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::pred("q", vec![a, b])),
        (term(), relation(), term()).prop_map(|(a, r, b)| Formula::cmp(a, r, b)),
        Just(Formula::Bottom),
    ];
    leaf.prop_recursive(4, 20, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (any::<bool>(), prop_oneof![generic_var(), int_var()], inner).prop_map(
                |(all, v, f)| {
                    let q = if all {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    };
                    Formula::Quant(q, v, Box::new(f))
                }
            ),
        ]
    })
}

/// Independent i128 evaluation of a ground integer term.
fn eval_i128(t: &Term) -> Option<i128> {
    match t {
        Term::Const(Precomputed::Numeral(n)) => n.to_string().parse().ok(),
        Term::Arith { op, lhs, rhs } => {
            let (a, b) = (eval_i128(lhs)?, eval_i128(rhs)?);
            match op {
                ArithOp::Add => a.checked_add(b),
                ArithOp::Sub => a.checked_sub(b),
                ArithOp::Mul => a.checked_mul(b),
            }
        }
        _ => None,
    }
}

fn ground_int_term() -> impl Strategy<Value = Term> {
    let leaf = (-1000i64..1000).prop_map(Term::num);
    leaf.prop_recursive(4, 16, 2, |inner| {
        (
            prop_oneof![Just(ArithOp::Add), Just(ArithOp::Sub), Just(ArithOp::Mul)],
            inner.clone(),
            inner,
        )
            .prop_map(|(op, a, b)| Term::arith(op, a, b).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn persistence(g in ground_formula(), h in interpretation()) {
        if sat_ht(&h, &g) {
            prop_assert!(sat_classical(h.there(), &g));
        }
    }

    #[test]
    fn total_collapse(g in ground_formula(), h in interpretation()) {
        let total = HTInterpretation::total(h.there().clone());
        prop_assert_eq!(sat_ht(&total, &g), sat_classical(h.there(), &g));
    }

    #[test]
    fn simplification_preserves_satisfaction(g in ground_formula(), h in interpretation()) {
        let s = g.clone().simplify();
        prop_assert_eq!(sat_ht(&h, &g), sat_ht(&h, &s));
        prop_assert_eq!(sat_classical(h.there(), &g), sat_classical(h.there(), &s));
    }

    #[test]
    fn negative_tautologies_hold_everywhere(g in negative_formula()) {
        prop_assert!(is_negative(&g));
        if is_tautological(&g) {
            for h in all_interpretations() {
                prop_assert!(sat_ht(&h, &g));
            }
        }
    }

    #[test]
    fn grounding_simplification_is_sound(f in formula()) {
        let closed = f.universal_closure();
        let d = Domain::new(-3, 3, vec!["a".into(), "b".into()], true).unwrap();
        let raw = ground_raw(&closed, &d).unwrap();
        let simple = ground(&closed, &d).unwrap();
        let atoms: Vec<GroundAtom> = raw.atoms().into_iter().take(6).collect();
        // sample total and partial interpretations over the raw atoms
        for mask in 0..(1u32 << atoms.len()) {
            let j: BTreeSet<_> = atoms.iter().enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0).map(|(_, a)| a.clone()).collect();
            let i: BTreeSet<_> = j.iter().step_by(2).cloned().collect();
            let h = HTInterpretation::new(i, j.clone()).unwrap();
            prop_assert_eq!(sat_ht(&h, &raw), sat_ht(&h, &simple));
            prop_assert_eq!(sat_classical(&j, &raw), sat_classical(&j, &simple));
        }
    }

    #[test]
    fn substitution_free_variables(f in formula(), v in prop_oneof![generic_var(), int_var()], t in int_term()) {
        if let Ok(g) = substitute(&f, &v, &t) {
            let mut expected = f.free_vars();
            if expected.remove(&v) {
                expected.extend(t.vars());
            }
            prop_assert_eq!(g.free_vars(), expected);
        }
    }

    #[test]
    fn evaluation_matches_i128(t in ground_int_term()) {
        if let Some(n) = eval_i128(&t) {
            prop_assert_eq!(eval_ground_term(&t).unwrap(), Precomputed::num(n));
        }
    }

    #[test]
    fn formula_printing_round_trips(f in formula()) {
        let text = f.to_string();
        let decls: Declarations = [("N", Sort::Integer), ("M", Sort::Integer)].into_iter().collect();
        let back = parse_formula(&text, &decls).unwrap();
        prop_assert!(alpha_eq(&f, &back), "{} reparsed as {}", text, back);
    }
}

fn program_text() -> impl Strategy<Value = String> {
    let t = prop_oneof![
        Just("X"),
        Just("Y"),
        Just("1"),
        Just("a"),
        Just("X+1"),
        Just("2*Y"),
        Just("1..3")
    ];
    let atom =
        (prop_oneof![Just("p"), Just("q")], t.clone()).prop_map(|(p, t)| format!("{p}({t})"));
    let body_elem = prop_oneof![
        atom.clone(),
        atom.clone().prop_map(|a| format!("not {a}")),
        atom.clone().prop_map(|a| format!("not not {a}")),
        (
            t.clone(),
            prop::sample::select(vec!["=", "!=", "<", "<=", ">", ">="]),
            t
        )
            .prop_map(|(a, r, b)| format!("{a} {r} {b}")),
    ];
    let head = prop_oneof![
        atom.clone(),
        atom.prop_map(|a| format!("{{{a}}}")),
        Just(String::new()),
    ];
    let rule = (head, prop::collection::vec(body_elem, 0..3)).prop_map(|(h, b)| {
        if b.is_empty() {
            if h.is_empty() {
                ":- .".to_string()
            } else {
                format!("{h}.")
            }
        } else {
            format!("{h} :- {}.", b.join(", "))
        }
    });
    prop::collection::vec(rule, 1..4).prop_map(|rs| rs.join("\n"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn program_printing_round_trips(src in program_text()) {
        let p: Program = parse_program(&src).unwrap();
        let again = parse_program(&p.to_string()).unwrap();
        prop_assert_eq!(&p, &again);
        prop_assert_eq!(p.to_string(), again.to_string());
    }
}

#[test]
fn excluded_middle_fails_where_hosoi_holds() {
    let p = GroundFormula::atom("p", vec![]);
    let em = GroundFormula::Or(vec![p.clone(), GroundFormula::not(p.clone())]);
    let pa = GroundAtom::new("p", vec![]);
    let h = HTInterpretation::new(BTreeSet::new(), [pa].into()).unwrap();
    assert!(!sat_ht(&h, &em));
    let _ = Sort::Generic;
}
