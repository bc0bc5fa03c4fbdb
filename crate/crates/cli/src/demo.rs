//! The worked examples, checked end to end against the bundled corpus.

use std::collections::BTreeSet;

use htequiv_core::ground::{
    ground_program, stable_models, Domain, GroundAtom, GroundFormula, SEResult, Side,
};
use htequiv_core::kernel::{check_equivalence_task, check_proof, KernelOptions, ProofScript};
use htequiv_core::syntax::{parse_program, Program};
use htequiv_core::Precomputed;

use crate::report::{ht_text, SeVerdict};
use crate::{corpus, script, se_report, SearchArgs};

#[derive(Debug, Clone)]
pub struct DemoCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn program(name: &str) -> Program {
    parse_program(corpus::program(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn proof(name: &str) -> ProofScript {
    script::parse_script(corpus::proof(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const INT: KernelOptions = KernelOptions {
    int_mode: true,
    trust_arith: false,
};
const HTA: KernelOptions = KernelOptions {
    int_mode: false,
    trust_arith: false,
};

/// The examples paired with their proof scripts: (label, left, right, stem).
pub const TASKS: &[(&str, &str, &str, &str)] = &[
    ("ex1", "ex1-choice.lp", "ex1-notnot.lp", "ex1"),
    ("ex2", "ex2.lp", "ex2-first.lp", "ex2"),
    ("ex3", "ex3-left.lp", "ex3-right.lp", "ex3"),
    ("ex4", "ex4-left.lp", "ex4-right.lp", "ex4"),
];

fn case(name: &'static str, r: Result<String, String>) -> DemoCase {
    match r {
        Ok(detail) => DemoCase {
            name,
            passed: true,
            detail,
        },
        Err(detail) => DemoCase {
            name,
            passed: false,
            detail,
        },
    }
}

fn search(jobs: usize) -> SearchArgs {
    SearchArgs {
        jobs,
        ..SearchArgs::default()
    }
}

fn ints(lo: i64, hi: i64) -> Domain {
    Domain::ints(lo, hi).expect("nonempty range")
}

fn task(left: &str, right: &str, stem: &str) -> Result<String, String> {
    let forward = proof(&format!("{stem}-forward.json"));
    let backward = proof(&format!("{stem}-backward.json"));
    let t = check_equivalence_task(&program(left), &program(right), &forward, &backward, &HTA)
        .map_err(|e| e.to_string())?;
    if t.accepted {
        Ok(format!(
            "both directions accepted ({} + {} lines)",
            t.forward.lines.len(),
            t.backward.lines.len()
        ))
    } else {
        Err(crate::report::task_text(&t))
    }
}

fn se_equivalent(left: &str, right: &str, d: &Domain, jobs: usize) -> Result<String, String> {
    let r =
        se_report(&program(left), &program(right), d, &search(jobs)).map_err(|e| e.to_string())?;
    match SeVerdict::of(&r) {
        SeVerdict::EquivalentOverDomain => Ok(format!(
            "{} atoms, no separating HT-interpretation",
            r.atoms.len()
        )),
        v => Err(v.text(d)),
    }
}

fn witness(
    left: &str,
    right: &str,
    d: &Domain,
    jobs: usize,
    expect: (BTreeSet<GroundAtom>, BTreeSet<GroundAtom>, Side),
) -> Result<String, String> {
    let r =
        se_report(&program(left), &program(right), d, &search(jobs)).map_err(|e| e.to_string())?;
    let SEResult::Witness { ht, side } = &r.result else {
        return Err("no witness found".into());
    };
    let shown = format!("{} satisfies only the {side} program", ht_text(ht));
    if (ht.here(), ht.there(), *side) != (&expect.0, &expect.1, expect.2) {
        return Err(format!("unexpected witness {shown}"));
    }
    match SeVerdict::of(&r) {
        SeVerdict::NotStronglyEquivalent => {
            Ok(format!("{shown}, confirmed by a separating context"))
        }
        v => Err(format!("{shown}, but {}", v.text(d))),
    }
}

fn atom(p: &str, args: &[i64]) -> GroundAtom {
    GroundAtom::new(p, args.iter().map(|&n| Precomputed::num(n)).collect())
}

fn regression(jobs: usize) -> Vec<DemoCase> {
    let mut out = Vec::new();
    out.push(case("pi: proof task rejected", {
        let t = check_equivalence_task(
            &program("pi1.lp"),
            &program("pi2.lp"),
            &proof("pi-forward-attempt.json"),
            &proof("pi-backward.json"),
            &HTA,
        );
        match t {
            Ok(t)
                if !t.accepted
                    && !t.missing_forward.is_empty()
                    && t.missing_backward.is_empty() =>
            {
                let missing: Vec<String> =
                    t.missing_forward.iter().map(ToString::to_string).collect();
                Ok(format!("not derived: {}", missing.join("; ")))
            }
            Ok(t) => Err(crate::report::task_text(&t)),
            Err(e) => Err(e.to_string()),
        }
    }));
    out.push(case(
        "pi: equivalent over 0..3",
        se_equivalent("pi1.lp", "pi2.lp", &ints(0, 3), jobs),
    ));
    out.push(case(
        "pi: equivalent over 0..5",
        se_equivalent("pi1.lp", "pi2.lp", &ints(0, 5), jobs),
    ));
    out.push(case("pi: stable models over 0..3", {
        let d = ints(0, 3);
        let g =
            GroundFormula::And(ground_program(&program("pi1.lp"), &d).expect("grounds")).simplify();
        let models = stable_models(&g, &g.atoms());
        let expected: BTreeSet<GroundAtom> = (0..=3).map(|n| atom("p", &[n])).collect();
        if models == [expected.clone()] {
            Ok(format!("exactly {}", crate::report::atom_set(&expected)))
        } else {
            Err(format!("got {} models", models.len()))
        }
    }));
    out
}

/// Run every demo case. `jobs` only affects speed.
pub fn run_demo(jobs: usize) -> Vec<DemoCase> {
    let mut out = Vec::new();
    out.push(case("fig2: accepted in Int mode", {
        let v = check_proof(&proof("fig2.json"), &INT);
        if v.accepted {
            Ok(format!("{} lines accepted", v.lines.len()))
        } else {
            Err(crate::report::verdict_text(&v))
        }
    }));
    out.push(case("fig2 converse: needs the Hosoi axiom", {
        let s = proof("fig2-converse.json");
        let (int, hta) = (check_proof(&s, &INT), check_proof(&s, &HTA));
        match (int.accepted, hta.accepted) {
            (false, true) => Ok("rejected intuitionistically, accepted in HTA".into()),
            _ => Err(format!(
                "int accepted: {}, HTA accepted: {}",
                int.accepted, hta.accepted
            )),
        }
    }));
    const TASK_NAMES: [&str; 4] = [
        "ex1: proofs",
        "ex2: proofs",
        "ex3: proofs",
        "ex4: proofs",
    ];
    const SE_NAMES: [&str; 4] = [
        "ex1: oracle",
        "ex2: oracle",
        "ex3: oracle",
        "ex4: oracle",
    ];
    for (i, (_, left, right, stem)) in TASKS.iter().enumerate() {
        out.push(case(TASK_NAMES[i], task(left, right, stem)));
        let p = [program(left), program(right)];
        let d = htequiv_core::ground::default_domain(&[&p[0], &p[1]]);
        out.push(case(SE_NAMES[i], se_equivalent(left, right, &d, jobs)));
    }
    out.push(case("ex2 shift: accepted", {
        let v = check_proof(&proof("ex2-shift.json"), &HTA);
        if v.accepted {
            Ok(format!("{} lines accepted", v.lines.len()))
        } else {
            Err(crate::report::verdict_text(&v))
        }
    }));
    let diag: BTreeSet<GroundAtom> = [atom("p", &[1, 1]), atom("p", &[2, 2])].into();
    out.push(case(
        "rule6 vs rule7: refuted",
        witness(
            "rule6.lp",
            "rule7.lp",
            &ints(1, 2),
            jobs,
            (diag.clone(), diag, Side::Second),
        ),
    ));
    let pa: BTreeSet<GroundAtom> = [GroundAtom::new("p", vec![Precomputed::sym("a")])].into();
    out.push(case(
        "ex2 vs its second rule: refuted",
        witness(
            "ex2.lp",
            "ex2-second.lp",
            &Domain::new(0, 2, vec!["a".into()], false).expect("domain"),
            jobs,
            (BTreeSet::new(), pa, Side::Second),
        ),
    ));
    out.extend(regression(jobs));
    out
}
