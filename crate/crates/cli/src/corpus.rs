//! Programs and proof scripts for the worked examples, embedded at build time.

pub const PROGRAMS: &[(&str, &str)] = &[
    (
        "ex1-choice.lp",
        include_str!("../corpus/programs/ex1-choice.lp"),
    ),
    (
        "ex1-notnot.lp",
        include_str!("../corpus/programs/ex1-notnot.lp"),
    ),
    (
        "ex2-first.lp",
        include_str!("../corpus/programs/ex2-first.lp"),
    ),
    (
        "ex2-second.lp",
        include_str!("../corpus/programs/ex2-second.lp"),
    ),
    ("ex2.lp", include_str!("../corpus/programs/ex2.lp")),
    (
        "ex3-left.lp",
        include_str!("../corpus/programs/ex3-left.lp"),
    ),
    (
        "ex3-right.lp",
        include_str!("../corpus/programs/ex3-right.lp"),
    ),
    (
        "ex4-left.lp",
        include_str!("../corpus/programs/ex4-left.lp"),
    ),
    (
        "ex4-right.lp",
        include_str!("../corpus/programs/ex4-right.lp"),
    ),
    ("pi1.lp", include_str!("../corpus/programs/pi1.lp")),
    ("pi2.lp", include_str!("../corpus/programs/pi2.lp")),
    ("rule6.lp", include_str!("../corpus/programs/rule6.lp")),
    ("rule7.lp", include_str!("../corpus/programs/rule7.lp")),
];

pub const PROOFS: &[(&str, &str)] = &[
    (
        "ex1-backward.json",
        include_str!("../corpus/proofs/ex1-backward.json"),
    ),
    (
        "ex1-forward.json",
        include_str!("../corpus/proofs/ex1-forward.json"),
    ),
    (
        "ex2-backward.json",
        include_str!("../corpus/proofs/ex2-backward.json"),
    ),
    (
        "ex2-forward.json",
        include_str!("../corpus/proofs/ex2-forward.json"),
    ),
    (
        "ex2-shift.json",
        include_str!("../corpus/proofs/ex2-shift.json"),
    ),
    (
        "ex3-backward.json",
        include_str!("../corpus/proofs/ex3-backward.json"),
    ),
    (
        "ex3-forward.json",
        include_str!("../corpus/proofs/ex3-forward.json"),
    ),
    (
        "ex4-backward.json",
        include_str!("../corpus/proofs/ex4-backward.json"),
    ),
    (
        "ex4-forward.json",
        include_str!("../corpus/proofs/ex4-forward.json"),
    ),
    (
        "fig2-converse.json",
        include_str!("../corpus/proofs/fig2-converse.json"),
    ),
    ("fig2.json", include_str!("../corpus/proofs/fig2.json")),
    (
        "pi-backward.json",
        include_str!("../corpus/proofs/pi-backward.json"),
    ),
    (
        "pi-forward-attempt.json",
        include_str!("../corpus/proofs/pi-forward-attempt.json"),
    ),
];

pub fn program(name: &str) -> &'static str {
    lookup(PROGRAMS, name)
}

pub fn proof(name: &str) -> &'static str {
    lookup(PROOFS, name)
}

fn lookup(table: &'static [(&str, &str)], name: &str) -> &'static str {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .unwrap_or_else(|| panic!("`{name}` is not in the bundled corpus"))
}
