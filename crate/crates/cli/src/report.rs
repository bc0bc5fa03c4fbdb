//! Text and JSON renderings of results.

use std::collections::BTreeSet;

use htequiv_core::ground::{Domain, GroundAtom, HTInterpretation, SEResult, SeReport};
use htequiv_core::kernel::{LineStatus, TaskVerdict, Verdict};
use serde_json::{json, Value};

pub fn atom_set(s: &BTreeSet<GroundAtom>) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn atom_list(s: &BTreeSet<GroundAtom>) -> Value {
    s.iter().map(|a| Value::String(a.to_string())).collect()
}

pub fn domain_json(d: &Domain) -> Value {
    let (lo, hi) = d.int_range();
    json!({
        "ints": [lo, hi],
        "consts": d.symbolic_consts(),
        "inf_sup": d.include_inf_sup(),
    })
}

pub fn ht_json(h: &HTInterpretation) -> Value {
    json!({ "here": atom_list(h.here()), "there": atom_list(h.there()) })
}

pub fn ht_text(h: &HTInterpretation) -> String {
    format!("<{}, {}>", atom_set(h.here()), atom_set(h.there()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeVerdict {
    EquivalentOverDomain,
    NotStronglyEquivalent,
    Inconclusive,
}

impl SeVerdict {
    pub fn of(r: &SeReport) -> SeVerdict {
        match (&r.result, &r.validation) {
            (SEResult::EquivalentOverDomain, _) => SeVerdict::EquivalentOverDomain,
            (SEResult::Witness { .. }, Some(v)) if v.conclusive() => {
                SeVerdict::NotStronglyEquivalent
            }
            (SEResult::Witness { .. }, _) => SeVerdict::Inconclusive,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            SeVerdict::EquivalentOverDomain => "equivalent-over-domain",
            SeVerdict::NotStronglyEquivalent => "not-strongly-equivalent",
            SeVerdict::Inconclusive => "differs-over-domain-inconclusive",
        }
    }

    pub fn text(self, d: &Domain) -> String {
        match self {
            SeVerdict::EquivalentOverDomain => format!("equivalent over domain ({d})"),
            SeVerdict::NotStronglyEquivalent => "NOT strongly equivalent".to_string(),
            SeVerdict::Inconclusive => {
                format!("differs over domain ({d}) (inconclusive for full domain)")
            }
        }
    }
}

pub fn se_json(r: &SeReport) -> Value {
    let witness = match &r.result {
        SEResult::EquivalentOverDomain => Value::Null,
        SEResult::Witness { ht, side } => {
            let mut w = ht_json(ht);
            w["satisfies"] = json!(side.to_string());
            w
        }
    };
    let validation = r.validation.as_ref().map_or(Value::Null, |v| {
        json!({
            "context": v.context.clone().simplify().to_string(),
            "stable_in_first": v.stable_in_first,
            "stable_in_second": v.stable_in_second,
            "confirmed": v.confirmed,
            "extension_domain": domain_json(&v.extension),
            "survives_extension": v.survives_extension,
        })
    });
    json!({
        "verdict": SeVerdict::of(r).key(),
        "domain": domain_json(&r.domain),
        "atoms": r.atoms.len(),
        "witness": witness,
        "validation": validation,
    })
}

pub fn se_text(r: &SeReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("domain: {}\natoms: {}\n", r.domain, r.atoms.len());
    out += &format!("verdict: {}\n", SeVerdict::of(r).text(&r.domain));
    if let SEResult::Witness { ht, side } = &r.result {
        out += &format!(
            "witness: {} satisfies only the {side} program\n",
            ht_text(ht)
        );
    }
    if let Some(v) = &r.validation {
        out += &format!("context: {}\n", v.context.clone().simplify());
        out += &format!(
            "J stable with context: first {}, second {}\n",
            yes_no(v.stable_in_first),
            yes_no(v.stable_in_second)
        );
        out += &format!(
            "extension ({}): {}\n",
            v.extension,
            if v.survives_extension {
                "separation kept"
            } else {
                "separation lost"
            }
        );
    }
    out
}

pub fn verdict_json(v: &Verdict) -> Value {
    let lines: Vec<Value> = v
        .lines
        .iter()
        .map(|(id, s)| match s {
            LineStatus::Valid => json!({ "id": id, "valid": true }),
            LineStatus::Invalid(reason) => json!({ "id": id, "valid": false, "reason": reason }),
        })
        .collect();
    let failure = v.first_failure.as_ref().map_or(
        Value::Null,
        |f| json!({ "line": f.id, "rule": f.rule, "reason": f.reason }),
    );
    json!({
        "accepted": v.accepted,
        "lines": lines,
        "first_failure": failure,
        "uses_trusted_arithmetic": v.uses_trusted_arithmetic,
    })
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    match &v.first_failure {
        None => out += &format!("accepted ({})\n", plural(v.lines.len(), "line")),
        Some(f) => out += &format!("rejected at {f}\n"),
    }
    if v.uses_trusted_arithmetic {
        out += "note: relies on trusted arithmetic\n";
    }
    out
}

pub fn task_json(t: &TaskVerdict) -> Value {
    let shown = |fs: &[htequiv_core::fo::Formula]| -> Vec<String> {
        fs.iter().map(ToString::to_string).collect()
    };
    json!({
        "verdict": if t.accepted { "strongly-equivalent-hta-certified" } else { "not-certified" },
        "forward": verdict_json(&t.forward),
        "backward": verdict_json(&t.backward),
        "missing_forward": shown(&t.missing_forward),
        "missing_backward": shown(&t.missing_backward),
    })
}

pub fn task_text(t: &TaskVerdict) -> String {
    let mut out = format!("forward: {}", verdict_text(&t.forward));
    out += &format!("backward: {}", verdict_text(&t.backward));
    for f in &t.missing_forward {
        out += &format!("forward proof does not derive {f}\n");
    }
    for f in &t.missing_backward {
        out += &format!("backward proof does not derive {f}\n");
    }
    out += if t.accepted {
        "strongly equivalent (HTA-certified)\n"
    } else {
        "not certified\n"
    };
    out
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}
