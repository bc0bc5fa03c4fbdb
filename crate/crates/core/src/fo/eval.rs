//! Evaluation of ground terms and comparisons.

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::{ArithOp, Term};
use crate::precomputed::{Precomputed, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("term `{0}` contains a variable")]
    NotGround(String),
    #[error("`{0}` is not a numeral but appears under arithmetic")]
    IllSorted(String),
}

/// Value of a variable-free term; arithmetic is exact.
pub fn eval_ground_term(t: &Term) -> Result<Precomputed, EvalError> {
    match t {
        Term::Const(c) => Ok(c.clone()),
        Term::Var(_) => Err(EvalError::NotGround(t.to_string())),
        Term::Arith { op, lhs, rhs } => {
            let l = numeral(lhs)?;
            let r = numeral(rhs)?;
            Ok(Precomputed::Numeral(match op {
                ArithOp::Add => l + r,
                ArithOp::Sub => l - r,
                ArithOp::Mul => l * r,
            }))
        }
    }
}

fn numeral(t: &Term) -> Result<BigInt, EvalError> {
    match eval_ground_term(t)? {
        Precomputed::Numeral(n) => Ok(n),
        other => Err(EvalError::IllSorted(other.to_string())),
    }
}

pub fn eval_comparison(lhs: &Precomputed, rel: Relation, rhs: &Precomputed) -> bool {
    rel.holds(lhs, rhs)
}
