use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{GroundAtom, GroundFormula};

/// A pair of interpretations `here ⊆ there`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HTInterpretation {
    here: BTreeSet<GroundAtom>,
    there: BTreeSet<GroundAtom>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("here-set is not a subset of there-set")]
pub struct NotSubset;

impl HTInterpretation {
    pub fn new(here: BTreeSet<GroundAtom>, there: BTreeSet<GroundAtom>) -> Result<Self, NotSubset> {
        if here.is_subset(&there) {
            Ok(HTInterpretation { here, there })
        } else {
            Err(NotSubset)
        }
    }

    pub fn total(j: BTreeSet<GroundAtom>) -> Self {
        HTInterpretation {
            here: j.clone(),
            there: j,
        }
    }

    pub fn here(&self) -> &BTreeSet<GroundAtom> {
        &self.here
    }

    pub fn there(&self) -> &BTreeSet<GroundAtom> {
        &self.there
    }
}

pub fn sat_classical(j: &BTreeSet<GroundAtom>, g: &GroundFormula) -> bool {
    match g {
        GroundFormula::Atom(a) => j.contains(a),
        GroundFormula::And(v) => v.iter().all(|h| sat_classical(j, h)),
        GroundFormula::Or(v) => v.iter().any(|h| sat_classical(j, h)),
        GroundFormula::Implies(a, b) => !sat_classical(j, a) || sat_classical(j, b),
    }
}

pub fn sat_ht(h: &HTInterpretation, g: &GroundFormula) -> bool {
    match g {
        GroundFormula::Atom(a) => h.here.contains(a),
        GroundFormula::And(v) => v.iter().all(|x| sat_ht(h, x)),
        GroundFormula::Or(v) => v.iter().any(|x| sat_ht(h, x)),
        GroundFormula::Implies(a, b) => {
            (!sat_ht(h, a) || sat_ht(h, b)) && sat_classical(&h.there, g)
        }
    }
}

pub fn is_negative(g: &GroundFormula) -> bool {
    match g {
        GroundFormula::Atom(_) => false,
        GroundFormula::And(v) | GroundFormula::Or(v) => v.iter().all(is_negative),
        GroundFormula::Implies(_, b) => is_negative(b),
    }
}

/// Bitmask form of a ground formula over at most 64 atoms.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Const(bool),
    Atom(u64),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    /// Atoms missing from `index` are compiled as false.
    pub(crate) fn new(g: &GroundFormula, index: &BTreeMap<GroundAtom, usize>) -> Self {
        match g {
            GroundFormula::Atom(a) => match index.get(a) {
                Some(&k) => Compiled::Atom(1 << k),
                None => Compiled::Const(false),
            },
            GroundFormula::And(v) => {
                Compiled::And(v.iter().map(|h| Compiled::new(h, index)).collect())
            }
            GroundFormula::Or(v) => {
                Compiled::Or(v.iter().map(|h| Compiled::new(h, index)).collect())
            }
            GroundFormula::Implies(a, b) => Compiled::Implies(
                Box::new(Compiled::new(a, index)),
                Box::new(Compiled::new(b, index)),
            ),
        }
    }

    pub(crate) fn classical(&self, j: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Atom(m) => j & m != 0,
            Compiled::And(v) => v.iter().all(|c| c.classical(j)),
            Compiled::Or(v) => v.iter().any(|c| c.classical(j)),
            Compiled::Implies(a, b) => !a.classical(j) || b.classical(j),
        }
    }

    pub(crate) fn ht(&self, i: u64, j: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Atom(m) => i & m != 0,
            Compiled::And(v) => v.iter().all(|c| c.ht(i, j)),
            Compiled::Or(v) => v.iter().any(|c| c.ht(i, j)),
            Compiled::Implies(a, b) => (!a.ht(i, j) || b.ht(i, j)) && self.classical(j),
        }
    }
}

pub(crate) fn index_atoms(
    atoms: &BTreeSet<GroundAtom>,
) -> (Vec<GroundAtom>, BTreeMap<GroundAtom, usize>) {
    assert!(
        atoms.len() <= 64,
        "bitmask enumeration supports at most 64 atoms"
    );
    let list: Vec<GroundAtom> = atoms.iter().cloned().collect();
    let index = list
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, a)| (a, k))
        .collect();
    (list, index)
}

pub(crate) fn mask_to_set(list: &[GroundAtom], m: u64) -> BTreeSet<GroundAtom> {
    list.iter()
        .enumerate()
        .filter(|(k, _)| m & (1 << k) != 0)
        .map(|(_, a)| a.clone())
        .collect()
}

pub(crate) fn set_to_mask(
    index: &BTreeMap<GroundAtom, usize>,
    s: &BTreeSet<GroundAtom>,
) -> Option<u64> {
    s.iter()
        .try_fold(0u64, |m, a| index.get(a).map(|&k| m | (1 << k)))
}

/// `j` is stable for `c` iff `⟨j, j⟩` satisfies it and no proper subset does.
pub(crate) fn is_stable_mask(c: &Compiled, j: u64) -> bool {
    if !c.ht(j, j) {
        return false;
    }
    let mut i = j;
    while i != 0 {
        i = (i - 1) & j;
        if c.ht(i, j) {
            return false;
        }
    }
    true
}

pub fn is_tautological(g: &GroundFormula) -> bool {
    let (list, index) = index_atoms(&g.atoms());
    let c = Compiled::new(g, &index);
    let n = list.len();
    (0..(1u128 << n)).all(|j| c.classical(j as u64))
}

/// Whether `j` is a stable model of `g`. Only subsets of `j` are inspected.
pub fn is_stable(g: &GroundFormula, j: &BTreeSet<GroundAtom>) -> bool {
    let (_, index) = index_atoms(j);
    let c = Compiled::new(g, &index);
    is_stable_mask(&c, set_to_mask(&index, j).expect("indexed"))
}

/// All stable models of `g` among subsets of `atoms`, in sorted order.
pub fn stable_models(g: &GroundFormula, atoms: &BTreeSet<GroundAtom>) -> Vec<BTreeSet<GroundAtom>> {
    let (list, index) = index_atoms(atoms);
    let c = Compiled::new(g, &index);
    let mut out: Vec<_> = (0..(1u128 << list.len()))
        .map(|j| j as u64)
        .filter(|&j| is_stable_mask(&c, j))
        .map(|j| mask_to_set(&list, j))
        .collect();
    out.sort();
    out
}

/// Every HT-model of `g` whose sets are drawn from `atoms`.
pub fn ht_models(g: &GroundFormula, atoms: &BTreeSet<GroundAtom>) -> Vec<HTInterpretation> {
    let (list, index) = index_atoms(atoms);
    let c = Compiled::new(g, &index);
    let mut out = Vec::new();
    for j in 0..(1u128 << list.len()) {
        let j = j as u64;
        if !c.classical(j) {
            continue;
        }
        let mut i = j;
        loop {
            if c.ht(i, j) {
                out.push(HTInterpretation {
                    here: mask_to_set(&list, i),
                    there: mask_to_set(&list, j),
                });
            }
            if i == 0 {
                break;
            }
            i = (i - 1) & j;
        }
    }
    out.sort();
    out
}
