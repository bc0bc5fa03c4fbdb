//! Precomputed terms and comparison relations.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;

/// A precomputed term: the ground value universe shared by programs,
/// formulas and interpretations.
///
/// The derived order is the order used everywhere in the crate:
/// `#inf` < every numeral < every symbolic constant < `#sup`, numerals by
/// integer value and symbolic constants lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precomputed {
    Inf,
    Numeral(BigInt),
    Symbol(String),
    Sup,
}

impl Precomputed {
    pub fn num(n: impl Into<BigInt>) -> Self {
        Precomputed::Numeral(n.into())
    }

    pub fn sym(name: impl Into<String>) -> Self {
        Precomputed::Symbol(name.into())
    }

    pub fn is_numeral(&self) -> bool {
        matches!(self, Precomputed::Numeral(_))
    }

    pub fn as_numeral(&self) -> Option<&BigInt> {
        match self {
            Precomputed::Numeral(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Precomputed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precomputed::Inf => f.write_str("#inf"),
            Precomputed::Numeral(n) => write!(f, "{n}"),
            Precomputed::Symbol(s) => f.write_str(s),
            Precomputed::Sup => f.write_str("#sup"),
        }
    }
}

/// The six comparison symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Eq,
        Relation::Ne,
        Relation::Lt,
        Relation::Gt,
        Relation::Le,
        Relation::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    /// Whether an ordering between two values satisfies this relation.
    pub fn accepts(self, ord: Ordering) -> bool {
        match self {
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ne => ord != Ordering::Equal,
            Relation::Lt => ord == Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Le => ord != Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
        }
    }

    /// Decide `lhs rel rhs` for precomputed values.
    pub fn holds(self, lhs: &Precomputed, rhs: &Precomputed) -> bool {
        self.accepts(lhs.cmp(rhs))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
