use std::path::PathBuf;

use serde_json::Value;

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn prog(name: &str) -> String {
    corpus(&format!("programs/{name}"))
}

fn pf(name: &str) -> String {
    corpus(&format!("proofs/{name}"))
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("htequiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("htequiv").chain(args.iter().copied());
    let code = htequiv::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn parse_echoes_rules() {
    let (code, out, _) = run(&["parse", &prog("ex3-left.lp")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{q(X,Y)} :- p(X,Y), X < Y.  % regular\n{q(X,X)} :- p(X,X).  % regular\n"
    );
}

#[test]
fn parse_json_ast() {
    let (code, out, _) = run(&["--json", "parse", &prog("rule6.lp")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rule = &v["rules"][0];
    assert_eq!(rule["head"]["kind"], "basic");
    assert_eq!(rule["head"]["atom"], "p(X,Y)");
    assert_eq!(rule["body"][0]["rhs"], "1..2");
    assert_eq!(rule["regular"], true);
}

#[test]
fn translate_prints_sentences() {
    let (code, out, _) = run(&["translate", &prog("ex4-left.lp")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "forall int N1 int N2 (p(N1) & p(N2) & N1 <= N2 -> q(N1+N2))\n"
    );
    let (_, out, _) = run(&["translate", &prog("rule7.lp")]);
    assert_eq!(out, "forall int N1 X (X = N1 & 1 <= N1 <= 2 -> p(X,N1))\n");
}

#[test]
fn translate_rejects_irregular_rules() {
    let file = scratch("irregular.lp", "p(X) :- q(X/Y).\n");
    let (code, out, err) = run(&["translate", &file]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("uses the operation `/`"), "{err}");
}

#[test]
fn check_proof_exit_codes() {
    let (code, out, _) = run(&["check-proof", &pf("fig2.json"), "--int-mode"]);
    assert_eq!((code, out.as_str()), (0, "accepted (12 lines)\n"));
    let (code, out, _) = run(&["check-proof", &pf("fig2-converse.json"), "--int-mode"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("rejected at line 2 (hosoi)"), "{out}");
    let (code, _, _) = run(&["check-proof", &pf("fig2-converse.json")]);
    assert_eq!(code, 0);
}

#[test]
fn check_proof_malformed_script() {
    let file = scratch("bad.json", r#"{"lines": [], "extra": 1}"#);
    let (code, out, err) = run(&["check-proof", &file]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn check_se_proofs_certifies_and_rejects() {
    let (code, out, _) = run(&[
        "check-se-proofs",
        &prog("ex1-choice.lp"),
        &prog("ex1-notnot.lp"),
        &pf("ex1-forward.json"),
        &pf("ex1-backward.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "forward: accepted (13 lines)\nbackward: accepted (24 lines)\nstrongly equivalent (HTA-certified)\n"
    );
    let (code, out, _) = run(&[
        "check-se-proofs",
        &prog("pi1.lp"),
        &prog("pi2.lp"),
        &pf("pi-forward-attempt.json"),
        &pf("pi-backward.json"),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("forward proof does not derive forall int N1 (N1+1 > 0 -> p(N1))"));
}

#[test]
fn ground_over_flags() {
    let (code, out, _) = run(&["ground", &prog("ex2.lp"), "--ints", "0..1", "--consts", "a"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "% domain: ints 0..1, consts a\n(p(0) -> q(0)) & (p(1) -> q(1)) & (p(a) -> q(a))\np(1) -> q(1)\n"
    );
}

#[test]
fn stable_models_of_pi1() {
    let (code, out, _) = run(&["stable-models", &prog("pi1.lp"), "--ints", "0..3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "% domain: ints 0..3\n% 1 stable models\n{p(0), p(1), p(2), p(3)}\n"
    );
}

#[test]
fn ht_models_listing() {
    let file = scratch("fact.lp", "p.\n");
    let (code, out, _) = run(&["ht-models", &file]);
    assert_eq!(code, 0);
    assert_eq!(out, "% domain: ints 0..1\n% 1 HT-models\n<{p}, {p}>\n");
}

#[test]
fn check_se_witness_transcript() {
    let (code, out, _) = run(&[
        "check-se",
        &prog("rule6.lp"),
        &prog("rule7.lp"),
        "--ints",
        "1..2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "domain: ints 1..2\n\
         atoms: 4\n\
         verdict: NOT strongly equivalent\n\
         witness: <{p(1,1), p(2,2)}, {p(1,1), p(2,2)}> satisfies only the second program\n\
         context: p(1,1) & p(2,2)\n\
         J stable with context: first no, second yes\n\
         extension (ints -1..4, consts fresh0, #inf/#sup): separation kept\n"
    );
}

#[test]
fn check_se_equivalent_and_json() {
    let (code, out, _) = run(&["check-se", &prog("ex2.lp"), &prog("ex2-first.lp")]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: equivalent over domain"), "{out}");
    let (code, out, _) = run(&[
        "--json",
        "check-se",
        &prog("ex2.lp"),
        &prog("ex2-second.lp"),
        "--ints",
        "0..2",
        "--consts",
        "a",
    ]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "not-strongly-equivalent");
    assert_eq!(v["domain"]["ints"], serde_json::json!([0, 2]));
    assert_eq!(v["witness"]["here"], serde_json::json!([]));
    assert_eq!(v["witness"]["there"], serde_json::json!(["p(a)"]));
    assert_eq!(v["validation"]["confirmed"], true);
}

#[test]
fn check_se_atom_limit() {
    let (code, _, err) = run(&[
        "check-se",
        &prog("ex3-left.lp"),
        &prog("ex3-right.lp"),
        "--ints",
        "0..3",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("16"), "{err}");
}

#[test]
fn parallel_search_is_deterministic() {
    let cases: [(&str, &str, &[&str], i32); 2] = [
        (
            "ex2.lp",
            "ex2-second.lp",
            &["--ints", "0..2", "--consts", "a"],
            1,
        ),
        ("ex1-choice.lp", "ex1-notnot.lp", &[], 0),
    ];
    for (left, right, extra, expected) in cases {
        let (l, r) = (prog(left), prog(right));
        let args = |jobs: &'static str| {
            let mut argv = vec!["--json", "check-se", l.as_str(), r.as_str(), "--jobs", jobs];
            argv.extend_from_slice(extra);
            run(&argv)
        };
        let one = args("1");
        assert_eq!(one.0, expected, "{}", one.1);
        let atoms = serde_json::from_str::<Value>(&one.1).unwrap()["atoms"]
            .as_u64()
            .unwrap();
        assert!(atoms >= 8, "too few atoms to split the search");
        for jobs in ["2", "3", "8"] {
            assert_eq!(args(jobs), one);
        }
    }
}

#[test]
fn demo_passes_and_is_deterministic() {
    let (code, out, _) = run(&["demo"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("demo: 17/17 passed\n"), "{out}");
    assert!(!out.contains("FAIL"));
    assert_eq!(run(&["demo", "--jobs", "4"]).1, out);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["parse"]).0, 2);
    assert_eq!(run(&["ground", &prog("pi1.lp"), "--ints", "3..1"]).0, 2);
    assert_eq!(run(&["ground", &prog("pi1.lp"), "--consts", "A"]).0, 2);
    let (code, _, err) = run(&["parse", "/nonexistent/x.lp"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let file = scratch("syntax.lp", "p(X :- .\n");
    let (code, _, err) = run(&["parse", &file]);
    assert_eq!(code, 2);
    assert!(err.contains(":1:5: expected `)`"), "{err}");
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-se-proofs"));
    assert_eq!(run(&["--version"]).0, 0);
}
