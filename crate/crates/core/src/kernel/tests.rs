use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::fo::{parse_formula, parse_term, Sort};
use crate::syntax::parse_program;

struct L<'a> {
    id: &'a str,
    assume: &'a [&'a str],
    formula: &'a str,
    rule: &'a str,
    premises: &'a [&'a str],
    var: Option<&'a str>,
    term: Option<&'a str>,
    template: Option<&'a str>,
}

fn l<'a>(
    id: &'a str,
    assume: &'a [&'a str],
    formula: &'a str,
    rule: &'a str,
    premises: &'a [&'a str],
) -> L<'a> {
    L {
        id,
        assume,
        formula,
        rule,
        premises,
        var: None,
        term: None,
        template: None,
    }
}

impl<'a> L<'a> {
    fn term(mut self, t: &'a str) -> Self {
        self.term = Some(t);
        self
    }

    fn eq(mut self, var: &'a str, template: &'a str) -> Self {
        self.var = Some(var);
        self.template = Some(template);
        self
    }
}

fn script(ints: &[&str], lines: &[L]) -> ProofScript {
    let decls: Declarations = ints.iter().map(|v| (*v, Sort::Integer)).collect();
    let pf = |s: &str| parse_formula(s, &decls).unwrap();
    let lines = lines
        .iter()
        .map(|x| {
            let hints = Hints {
                var: x.var.map(|v| Var {
                    name: v.to_string(),
                    sort: decls.sort_of(v),
                }),
                term: x.term.map(|t| parse_term(t, &decls).unwrap()),
                template: x.template.map(pf),
            };
            ProofLine {
                id: x.id.to_string(),
                sequent: Sequent::new(x.assume.iter().map(|a| pf(a)).collect(), pf(x.formula)),
                justification: Justification::from_name(
                    x.rule,
                    x.premises.iter().map(|p| p.to_string()).collect(),
                    hints,
                ),
            }
        })
        .collect();
    ProofScript {
        declarations: decls,
        lines,
        goal: None,
    }
}

const F1: &str = "p -> q | not q";
const F2: &str = "p & not not q";

fn fig2() -> Vec<L<'static>> {
    vec![
        l("1", &[F1], F1, "id", &[]),
        l("2", &[F2], F2, "id", &[]),
        l("3", &[F2], "p", "andE-left", &["2"]),
        l("4", &[F2], "not not q", "andE-right", &["2"]),
        l("5", &[F1, F2], "q | not q", "impE", &["3", "1"]),
        l("6", &["q"], "q", "id", &[]),
        l("7", &["not q"], "not q", "id", &[]),
        l("8", &[F2, "not q"], "#false", "impE", &["7", "4"]),
        l("9", &[F2, "not q"], "q", "C", &["8"]),
        l("10", &[F1, F2], "q", "orE", &["5", "6", "9"]),
        l("11", &[F1], "p & not not q -> q", "impI", &["10"]),
        l(
            "12",
            &[],
            "(p -> q | not q) -> (p & not not q -> q)",
            "impI",
            &["11"],
        ),
    ]
}

const INT: KernelOptions = KernelOptions {
    int_mode: true,
    trust_arith: false,
};
const HTA: KernelOptions = KernelOptions {
    int_mode: false,
    trust_arith: false,
};

fn failing_line(v: &Verdict) -> Option<&str> {
    v.first_failure.as_ref().map(|f| f.id.as_str())
}

#[test]
fn fig2_is_accepted_in_int_mode() {
    let s = script(&[], &fig2());
    let v = check_proof(&s, &INT);
    assert!(v.accepted, "{:?}", v.first_failure);
    assert!(check_proof(&s, &HTA).accepted);
    assert!(!v.uses_trusted_arithmetic);
}

#[test]
fn fig2_mutations() {
    let mut lines = fig2();
    lines[2].rule = "andI";
    assert_eq!(
        failing_line(&check_proof(&script(&[], &lines), &INT)),
        Some("3")
    );

    let mut lines = fig2();
    lines[4].premises = &["4", "1"];
    assert_eq!(
        failing_line(&check_proof(&script(&[], &lines), &INT)),
        Some("5")
    );

    let mut lines = fig2();
    lines[9].assume = &[F1];
    assert_eq!(
        failing_line(&check_proof(&script(&[], &lines), &INT)),
        Some("10")
    );

    let mut lines = fig2();
    lines[3].rule = "andElim";
    let v = check_proof(&script(&[], &lines), &INT);
    assert_eq!(failing_line(&v), Some("4"));
    assert!(v.first_failure.unwrap().reason.contains("unknown rule"));

    let mut lines = fig2();
    lines[8].premises = &["99"];
    let v = check_proof(&script(&[], &lines), &INT);
    assert!(v.first_failure.unwrap().reason.contains("dangling"));

    let mut lines = fig2();
    lines[2].premises = &["4"];
    let v = check_proof(&script(&[], &lines), &INT);
    assert!(v.first_failure.unwrap().reason.contains("does not precede"));
}

#[test]
fn goal_must_match_last_line() {
    let mut s = script(&[], &fig2());
    s.goal = Some(s.lines[11].sequent.clone());
    assert!(check_proof(&s, &INT).accepted);
    s.goal = Some(s.lines[10].sequent.clone());
    assert_eq!(failing_line(&check_proof(&s, &INT)), Some("12"));
}

#[test]
fn deleting_unused_lines_keeps_other_verdicts() {
    let mut lines = fig2();
    lines.remove(0);
    let v = check_proof(&script(&[], &lines), &INT);
    // line 5 cites the removed line 1, the rest stands
    for (id, status) in &v.lines {
        let cites_one = ["5", "10", "11", "12"].contains(&id.as_str());
        assert_eq!(status.is_valid(), !cites_one, "{id}");
    }
}

const G: &str = "p & not not q -> q";
const D: &str = "(q -> not q) | not not q";

/// `p & not not q -> q => p -> q | not q` through the Hosoi instance on `q`.
fn converse() -> Vec<L<'static>> {
    vec![
        l("1", &[], "q | (q -> not q) | not not q", "hosoi", &[]),
        l("2", &["q"], "q", "id", &[]),
        l("3", &["q"], "q | not q", "orI-left", &["2"]),
        l("4", &["q", "p"], "q | not q", "W", &["3"]),
        l("5", &["q"], F1, "impI", &["4"]),
        l("6", &["q -> not q"], "q -> not q", "id", &[]),
        l("7", &["q -> not q", "q"], "not q", "impE", &["2", "6"]),
        l("8", &["q -> not q", "q"], "#false", "impE", &["2", "7"]),
        l("9", &["q -> not q"], "not q", "impI", &["8"]),
        l("10", &["q -> not q"], "q | not q", "orI-right", &["9"]),
        l("11", &["q -> not q", "p"], "q | not q", "W", &["10"]),
        l("12", &["q -> not q"], F1, "impI", &["11"]),
        l("13", &["not not q"], "not not q", "id", &[]),
        l("14", &["p"], "p", "id", &[]),
        l("15", &["p", "not not q"], F2, "andI", &["14", "13"]),
        l("16", &[G], G, "id", &[]),
        l("17", &[G, "p", "not not q"], "q", "impE", &["15", "16"]),
        l(
            "18",
            &[G, "p", "not not q"],
            "q | not q",
            "orI-left",
            &["17"],
        ),
        l("19", &[G, "not not q"], F1, "impI", &["18"]),
        l("20", &[D], D, "id", &[]),
        l("21", &[D, G], F1, "orE", &["20", "12", "19"]),
        l("22", &[G], F1, "orE", &["1", "5", "21"]),
    ]
}

#[test]
fn hosoi_direction_needs_hta() {
    let s = script(&[], &converse());
    let v = check_proof(&s, &HTA);
    assert!(v.accepted, "{:?}", v.first_failure);
    assert_eq!(failing_line(&check_proof(&s, &INT)), Some("1"));

    let mut lines = converse();
    lines[20].assume = &[D];
    assert_eq!(
        failing_line(&check_proof(&script(&[], &lines), &HTA)),
        Some("21")
    );
}

#[test]
fn eigenvariable_conditions() {
    let lines = [
        l("1", &["p(X)"], "p(X)", "id", &[]),
        l("2", &["p(X)"], "forall X p(X)", "forallI", &["1"]),
    ];
    let v = check_proof(&script(&[], &lines), &HTA);
    assert_eq!(failing_line(&v), Some("2"));
    assert!(v.first_failure.unwrap().reason.contains("eigenvariable"));

    let ok = [
        l("1", &["forall X p(X)"], "forall X p(X)", "id", &[]),
        l("2", &["forall X p(X)"], "p(X)", "forallE", &["1"]).term("X"),
        l("3", &["forall X p(X)"], "forall X p(X)", "forallI", &["2"]),
    ];
    assert!(check_proof(&script(&[], &ok), &HTA).accepted);

    let exists = [
        l("1", &["exists X p(X)"], "exists X p(X)", "id", &[]),
        l("2", &["p(X)"], "p(X)", "id", &[]),
        l("3", &["p(X)"], "exists Y p(Y)", "existsI", &["2"]).term("X"),
        l(
            "4",
            &["exists X p(X)"],
            "exists Y p(Y)",
            "existsE",
            &["1", "3"],
        ),
        l("5", &["exists X p(X)"], "p(X)", "existsE", &["1", "2"]),
    ];
    let v = check_proof(&script(&[], &exists), &HTA);
    assert!(v.lines[3].1.is_valid(), "{:?}", v.lines[3]);
    assert_eq!(failing_line(&v), Some("5"));
}

#[test]
fn generic_term_cannot_replace_integer_variable() {
    let lines = [
        l(
            "1",
            &["forall N (p(N) -> q(N))"],
            "forall N (p(N) -> q(N))",
            "id",
            &[],
        ),
        l(
            "2",
            &["forall N (p(N) -> q(N))"],
            "p(X) -> q(X)",
            "forallE",
            &["1"],
        )
        .term("X"),
    ];
    let v = check_proof(&script(&["N"], &lines), &HTA);
    assert_eq!(failing_line(&v), Some("2"));
    assert!(v.first_failure.unwrap().reason.contains("sort"));
}

/// `forall N (p(N) -> q(N))` from `forall N (p(N+1) -> q(N+1))`.
fn shift_proof() -> Vec<L<'static>> {
    const A: &str = "forall N (p(N+1) -> q(N+1))";
    vec![
        l("1", &[A], A, "id", &[]),
        l("2", &[A], "p(N-1+1) -> q(N-1+1)", "forallE", &["1"]).term("N-1"),
        l("3", &[], "forall N M (M-N+N = M)", "groupD", &[]),
        l("4", &[], "forall M (M-1+1 = M)", "forallE", &["3"]).term("1"),
        l("5", &[], "N-1+1 = N", "forallE", &["4"]).term("N"),
        l("6", &[A], "p(N) -> q(N)", "Eq-forward", &["5", "2"]).eq("K", "p(K) -> q(K)"),
        l("7", &[A], "forall N (p(N) -> q(N))", "forallI", &["6"]),
    ]
}

#[test]
fn shifting_an_integer_variable() {
    let s = script(&["N", "M", "K"], &shift_proof());
    let v = check_proof(&s, &HTA);
    assert!(v.accepted, "{:?}", v.first_failure);
    assert!(!check_proof(&s, &INT).accepted);

    let mut bad = shift_proof();
    bad[5].rule = "Eq-backward";
    assert_eq!(
        failing_line(&check_proof(&script(&["N", "M", "K"], &bad), &HTA)),
        Some("6")
    );
}

#[test]
fn capture_is_rejected() {
    let lines = [
        l("1", &[], "forall M N (M-N+N = M)", "groupD", &[]),
        l("2", &[], "forall N (N-N+N = N)", "forallE", &["1"]).term("N"),
    ];
    let v = check_proof(&script(&["N", "M"], &lines), &HTA);
    assert_eq!(failing_line(&v), Some("2"));
}

#[test]
fn trusted_arithmetic_is_reported() {
    let lines = [l("1", &[], "forall N (N*N >= 0)", "groupD-trusted", &[])];
    let s = script(&["N"], &lines);
    assert!(!check_proof(&s, &HTA).accepted);
    let v = check_proof(
        &s,
        &KernelOptions {
            int_mode: false,
            trust_arith: true,
        },
    );
    assert!(v.accepted && v.uses_trusted_arithmetic);
    let plain = [l("1", &[], "forall N (N*N >= 0)", "groupD", &[])];
    assert!(!check_proof(&script(&["N"], &plain), &HTA).accepted);
}

#[test]
fn axioms_reject_assumptions_and_int_mode() {
    let lines = [l("1", &["p"], "2*2 = 4", "groupD", &[])];
    assert!(!check_proof(&script(&[], &lines), &HTA).accepted);
    let lines = [l("1", &[], "2*2 = 4", "groupD", &[])];
    assert!(check_proof(&script(&[], &lines), &HTA).accepted);
    assert!(!check_proof(&script(&[], &lines), &INT).accepted);
    let lines = [l("1", &[], "a = a", "eq-refl", &[])];
    assert!(check_proof(&script(&[], &lines), &INT).accepted);
}

#[test]
fn rule_names_and_aliases() {
    assert_eq!("∨E".parse::<RuleName>(), Ok(RuleName::OrE));
    assert_eq!("orE".parse::<RuleName>(), Ok(RuleName::OrE));
    assert!("or-elim".parse::<RuleName>().is_err());
    for r in RuleName::ALL {
        assert_eq!(r.name().parse::<RuleName>(), Ok(r));
    }
    assert!(matches!(
        Justification::from_name("groupB", vec![], Hints::default()),
        Justification::Axiom {
            kind: AxiomKind::GroupB,
            ..
        }
    ));
}

#[test]
fn axiom_citing_premises() {
    let s = script(
        &[],
        &[
            l("1", &["p"], "p", "id", &[]),
            l("2", &["p"], "p", "id", &["1"]),
        ],
    );
    let v = check_proof(&s, &KernelOptions::default());
    assert_eq!(v.first_failure.map(|f| f.index), Some(1));
}

#[test]
fn equivalence_task_example_2_first_rule() {
    let p1 = parse_program("q(X) :- p(X). q(X+1) :- p(X+1).").unwrap();
    let p2 = parse_program("q(X) :- p(X).").unwrap();
    const A: &str = "forall X (p(X) -> q(X))";
    const B: &str = "forall N (p(N+1) -> q(N+1))";
    let forward = script(
        &["N"],
        &[l("1", &[A], A, "id", &[]), l("2", &[A, B], A, "W", &["1"])],
    );
    let backward = script(
        &["N"],
        &[
            l("1", &[A], A, "id", &[]),
            l("2", &[A], "p(N+1) -> q(N+1)", "forallE", &["1"]).term("N+1"),
            l("3", &[A], B, "forallI", &["2"]),
        ],
    );
    let v = check_equivalence_task(&p1, &p2, &forward, &backward, &HTA).unwrap();
    assert!(v.accepted, "{v:?}");
    assert!(check_equivalence_task(
        &p1,
        &p2,
        &forward,
        &script(&[], &[l("1", &[A], A, "id", &[])]),
        &HTA
    )
    .map(|v| !v.accepted && v.missing_backward.len() == 1)
    .unwrap());
}
