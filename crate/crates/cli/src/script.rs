//! The JSON proof-script format.

use std::collections::BTreeMap;

use htequiv_core::fo::{parse_formula, parse_term, Declarations, FormulaError, Sort, Var};
use htequiv_core::kernel::{Hints, Justification, ProofLine, ProofScript, Sequent};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScript {
    #[serde(default)]
    declarations: Vec<RawDecl>,
    lines: Vec<RawLine>,
    #[serde(default)]
    goal: Option<RawGoal>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDecl {
    name: String,
    sort: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    id: String,
    #[serde(default)]
    assumptions: Vec<String>,
    formula: String,
    rule: String,
    #[serde(default)]
    premises: Vec<String>,
    #[serde(default)]
    hints: RawHints,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHints {
    var: Option<String>,
    term: Option<String>,
    template: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawGoal {
    Formula(String),
    Sequent {
        #[serde(default)]
        assumptions: Vec<String>,
        formula: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown sort `{sort}` for `{name}` (expected `generic` or `integer`)")]
    Sort { name: String, sort: String },
    #[error("`{0}` is not a variable name")]
    BadVariable(String),
    #[error("{context}: {source}")]
    Formula {
        context: String,
        source: FormulaError,
    },
}

fn parse_sort(name: &str, sort: &str) -> Result<Sort, ScriptError> {
    match sort {
        "generic" => Ok(Sort::Generic),
        "integer" | "int" => Ok(Sort::Integer),
        _ => Err(ScriptError::Sort {
            name: name.to_string(),
            sort: sort.to_string(),
        }),
    }
}

pub fn sort_name(sort: Sort) -> &'static str {
    match sort {
        Sort::Generic => "generic",
        Sort::Integer => "integer",
    }
}

fn formula(
    text: &str,
    decls: &Declarations,
    context: impl FnOnce() -> String,
) -> Result<htequiv_core::fo::Formula, ScriptError> {
    parse_formula(text, decls).map_err(|source| ScriptError::Formula {
        context: context(),
        source,
    })
}

pub fn parse_script(text: &str) -> Result<ProofScript, ScriptError> {
    let raw: RawScript = serde_json::from_str(text)?;
    let mut decls = Declarations::default();
    for d in &raw.declarations {
        decls.declare(d.name.clone(), parse_sort(&d.name, &d.sort)?);
    }
    let mut lines = Vec::with_capacity(raw.lines.len());
    for l in &raw.lines {
        let at = |what: &str| format!("line {} {what}", l.id);
        let assumptions = l
            .assumptions
            .iter()
            .enumerate()
            .map(|(k, a)| formula(a, &decls, || at(&format!("assumption {}", k + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion = formula(&l.formula, &decls, || at("formula"))?;
        let var = match &l.hints.var {
            None => None,
            Some(v)
                if v.starts_with(|c: char| c.is_ascii_uppercase())
                    && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') =>
            {
                Some(Var {
                    name: v.clone(),
                    sort: decls.sort_of(v),
                })
            }
            Some(v) => return Err(ScriptError::BadVariable(v.clone())),
        };
        let term = match &l.hints.term {
            None => None,
            Some(t) => Some(
                parse_term(t, &decls).map_err(|source| ScriptError::Formula {
                    context: at("term hint"),
                    source,
                })?,
            ),
        };
        let template = match &l.hints.template {
            None => None,
            Some(t) => Some(formula(t, &decls, || at("template hint"))?),
        };
        lines.push(ProofLine {
            id: l.id.clone(),
            sequent: Sequent::new(assumptions, conclusion),
            justification: Justification::from_name(
                &l.rule,
                l.premises.clone(),
                Hints {
                    var,
                    term,
                    template,
                },
            ),
        });
    }
    let goal = match &raw.goal {
        None => None,
        Some(RawGoal::Formula(f)) => Some(Sequent::formula(formula(f, &decls, || "goal".into())?)),
        Some(RawGoal::Sequent {
            assumptions,
            formula: f,
        }) => {
            let a = assumptions
                .iter()
                .map(|a| formula(a, &decls, || "goal assumption".into()))
                .collect::<Result<Vec<_>, _>>()?;
            Some(Sequent::new(a, formula(f, &decls, || "goal".into())?))
        }
    };
    Ok(ProofScript {
        declarations: decls,
        lines,
        goal,
    })
}

/// Declared sorts in script order, for reports.
pub fn declarations(script: &ProofScript) -> BTreeMap<String, &'static str> {
    script
        .declarations
        .iter()
        .map(|(n, s)| (n.clone(), sort_name(*s)))
        .collect()
}
