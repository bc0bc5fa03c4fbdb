use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::ToPrimitive;

use super::sat::{index_atoms, is_stable_mask, mask_to_set, set_to_mask, Compiled};
use super::{ground, Domain, GroundAtom, GroundError, GroundFormula, HTInterpretation};
use crate::nu::{nu_program, ProgramError};
use crate::precomputed::Precomputed;
use crate::syntax::Program;

pub const DEFAULT_MAX_ATOMS: usize = 16;

/// Enumeration beyond this many atoms is refused even with an override.
const HARD_MAX_ATOMS: usize = 40;
/// Largest atom count for which classical values are tabulated.
const CACHE_MAX_ATOMS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeOptions {
    pub max_atoms: usize,
    /// How far the integer range is widened when re-checking a witness.
    pub extension_margin: i64,
}

impl Default for SeOptions {
    fn default() -> Self {
        SeOptions {
            max_atoms: DEFAULT_MAX_ATOMS,
            extension_margin: 2,
        }
    }
}

/// The program whose ground formula a witness satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::First => "first",
            Side::Second => "second",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SEResult {
    EquivalentOverDomain,
    Witness { ht: HTInterpretation, side: Side },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessValidation {
    /// Facts and implications added to both programs.
    pub context: GroundFormula,
    pub stable_in_first: bool,
    pub stable_in_second: bool,
    /// The witness's there-set is stable for exactly one program plus context.
    pub confirmed: bool,
    pub extension: Domain,
    /// The same separation holds after grounding over `extension`.
    pub survives_extension: bool,
}

impl WitnessValidation {
    pub fn conclusive(&self) -> bool {
        self.confirmed && self.survives_extension
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeReport {
    pub domain: Domain,
    pub atoms: Vec<GroundAtom>,
    pub result: SEResult,
    pub validation: Option<WitnessValidation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeError {
    #[error("program {which}: {error}")]
    Translate { which: usize, error: ProgramError },
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("{count} ground atoms exceed the limit of {max}")]
    TooManyAtoms { count: usize, max: usize },
}

/// Symbolic constants of the programs plus the integer range spanning
/// their numerals widened by 2 (`0..1` when there are none).
pub fn default_domain(programs: &[&Program]) -> Domain {
    let mut consts = BTreeSet::new();
    for p in programs {
        consts.extend(p.constants());
    }
    let mut symbols = Vec::new();
    let mut inf_sup = false;
    let mut range: Option<(i64, i64)> = None;
    for c in consts {
        match c {
            Precomputed::Symbol(s) => symbols.push(s),
            Precomputed::Inf | Precomputed::Sup => inf_sup = true,
            Precomputed::Numeral(n) => {
                let n = n
                    .to_i64()
                    .unwrap_or(if n.sign() == num_bigint::Sign::Minus {
                        i64::MIN
                    } else {
                        i64::MAX
                    });
                range = Some(match range {
                    None => (n, n),
                    Some((lo, hi)) => (lo.min(n), hi.max(n)),
                });
            }
        }
    }
    let (lo, hi) = match range {
        Some((lo, hi)) => (lo.saturating_sub(2), hi.saturating_add(2)),
        None => (0, 1),
    };
    Domain::new(lo, hi, symbols, inf_sup).expect("constants come from parsed programs")
}

/// Ground every sentence of the program's translation over `domain`.
pub fn ground_program(program: &Program, domain: &Domain) -> Result<Vec<GroundFormula>, SeError> {
    let sentences = nu_program(program).map_err(|error| SeError::Translate { which: 1, error })?;
    sentences
        .iter()
        .map(|s| ground(s, domain).map_err(SeError::from))
        .collect()
}

fn conjoin(parts: Vec<GroundFormula>) -> GroundFormula {
    GroundFormula::And(parts).simplify()
}

fn ground_both(
    p1: &Program,
    p2: &Program,
    domain: &Domain,
) -> Result<(GroundFormula, GroundFormula), SeError> {
    let g = |p: &Program, which: usize| -> Result<GroundFormula, SeError> {
        ground_program(p, domain).map(conjoin).map_err(|e| match e {
            SeError::Translate { error, .. } => SeError::Translate { which, error },
            e => e,
        })
    };
    Ok((g(p1, 1)?, g(p2, 2)?))
}

/// Index-addressable enumeration of all HT-interpretations over the atoms
/// of two ground formulas.
///
/// Index `k` spells a base-3 vector over the atoms in sorted order, first
/// atom most significant: digit 0 means outside J, 1 in J but not in I,
/// 2 in I.
#[derive(Debug, Clone)]
pub struct Enumerator {
    atoms: Vec<GroundAtom>,
    first: Compiled,
    second: Compiled,
    classical: Option<Vec<u8>>,
}

impl Enumerator {
    pub fn new(g1: &GroundFormula, g2: &GroundFormula, max_atoms: usize) -> Result<Self, SeError> {
        let mut atoms = g1.atoms();
        g2.atoms_into(&mut atoms);
        let max = max_atoms.min(HARD_MAX_ATOMS);
        if atoms.len() > max {
            return Err(SeError::TooManyAtoms {
                count: atoms.len(),
                max,
            });
        }
        let (list, index) = index_atoms(&atoms);
        let first = Compiled::new(g1, &index);
        let second = Compiled::new(g2, &index);
        let classical = (list.len() <= CACHE_MAX_ATOMS).then(|| {
            (0..1u64 << list.len())
                .map(|j| first.classical(j) as u8 | (second.classical(j) as u8) << 1)
                .collect()
        });
        Ok(Enumerator {
            atoms: list,
            first,
            second,
            classical,
        })
    }

    pub fn atoms(&self) -> &[GroundAtom] {
        &self.atoms
    }

    /// Number of HT-interpretations, `3^n`.
    pub fn len(&self) -> u64 {
        3u64.pow(self.atoms.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn digits(&self, mut index: u64) -> Vec<u8> {
        let n = self.atoms.len();
        let mut d = alloc::vec![0u8; n];
        for k in (0..n).rev() {
            d[k] = (index % 3) as u8;
            index /= 3;
        }
        d
    }

    fn masks(digits: &[u8]) -> (u64, u64) {
        let (mut i, mut j) = (0, 0);
        for (k, &d) in digits.iter().enumerate() {
            if d >= 1 {
                j |= 1 << k;
            }
            if d == 2 {
                i |= 1 << k;
            }
        }
        (i, j)
    }

    pub fn interpretation(&self, index: u64) -> HTInterpretation {
        let (i, j) = Self::masks(&self.digits(index));
        HTInterpretation::new(mask_to_set(&self.atoms, i), mask_to_set(&self.atoms, j))
            .expect("masks nest")
    }

    fn classical_pair(&self, j: u64) -> (bool, bool) {
        match &self.classical {
            Some(t) => {
                let b = t[j as usize];
                (b & 1 != 0, b & 2 != 0)
            }
            None => (self.first.classical(j), self.second.classical(j)),
        }
    }

    /// The least index in `range` whose interpretation satisfies exactly
    /// one formula, with the formula it satisfies.
    pub fn first_disagreement(&self, range: Range<u64>) -> Option<(u64, Side)> {
        let end = range.end.min(self.len());
        if range.start >= end {
            return None;
        }
        let n = self.atoms.len();
        let mut digits = self.digits(range.start);
        let (mut i, mut j) = Self::masks(&digits);
        let mut index = range.start;
        loop {
            let (c1, c2) = self.classical_pair(j);
            if c1 || c2 {
                let h1 = c1 && self.first.ht(i, j);
                let h2 = c2 && self.second.ht(i, j);
                if h1 != h2 {
                    return Some((index, if h1 { Side::First } else { Side::Second }));
                }
            }
            index += 1;
            if index == end {
                return None;
            }
            let mut k = n;
            while k > 0 {
                k -= 1;
                let bit = 1u64 << k;
                digits[k] += 1;
                match digits[k] {
                    1 => {
                        j |= bit;
                        break;
                    }
                    2 => {
                        i |= bit;
                        break;
                    }
                    _ => {
                        digits[k] = 0;
                        i &= !bit;
                        j &= !bit;
                    }
                }
            }
        }
    }
}

/// Decide HT-equivalence of the two programs' groundings over `domain`
/// and validate any witness found.
pub fn check_se(
    p1: &Program,
    p2: &Program,
    domain: &Domain,
    options: &SeOptions,
) -> Result<SeReport, SeError> {
    check_se_with(p1, p2, domain, options, |e| {
        e.first_disagreement(0..e.len())
    })
}

/// Like [`check_se`] but with a caller-supplied search, so the range can be
/// split across workers. `search` must return the least disagreeing index.
pub fn check_se_with(
    p1: &Program,
    p2: &Program,
    domain: &Domain,
    options: &SeOptions,
    search: impl FnOnce(&Enumerator) -> Option<(u64, Side)>,
) -> Result<SeReport, SeError> {
    let (g1, g2) = ground_both(p1, p2, domain)?;
    let en = Enumerator::new(&g1, &g2, options.max_atoms)?;
    let atoms = en.atoms().to_vec();
    let Some((index, side)) = search(&en) else {
        return Ok(SeReport {
            domain: domain.clone(),
            atoms,
            result: SEResult::EquivalentOverDomain,
            validation: None,
        });
    };
    let ht = en.interpretation(index);
    let validation = validate(p1, p2, &g1, &g2, &ht, side, domain, options)?;
    Ok(SeReport {
        domain: domain.clone(),
        atoms,
        result: SEResult::Witness { ht, side },
        validation: Some(validation),
    })
}

/// The standard context separating the stable models of two formulas
/// that disagree on `ht`: the facts of J when the unsatisfied formula is
/// classically false in J, else the facts of I plus `p -> q` for distinct
/// `p, q` in `J \ I`.
pub fn separating_context(ht: &HTInterpretation, unsatisfied: &GroundFormula) -> GroundFormula {
    let fact = |a: &GroundAtom| GroundFormula::Atom(a.clone());
    if !super::sat_classical(ht.there(), unsatisfied) {
        return GroundFormula::And(ht.there().iter().map(fact).collect());
    }
    let mut parts: Vec<GroundFormula> = ht.here().iter().map(fact).collect();
    let gap: Vec<&GroundAtom> = ht.there().difference(ht.here()).collect();
    for p in &gap {
        for q in &gap {
            if p != q {
                parts.push(GroundFormula::implies(fact(p), fact(q)));
            }
        }
    }
    GroundFormula::And(parts)
}

fn stable_pair(
    g1: &GroundFormula,
    g2: &GroundFormula,
    context: &GroundFormula,
    j: &BTreeSet<GroundAtom>,
) -> (bool, bool) {
    let (_, index): (_, BTreeMap<GroundAtom, usize>) = index_atoms(j);
    let jm = set_to_mask(&index, j).expect("indexed");
    let with = |g: &GroundFormula| {
        let c = Compiled::new(
            &GroundFormula::And(alloc::vec![g.clone(), context.clone()]),
            &index,
        );
        is_stable_mask(&c, jm)
    };
    (with(g1), with(g2))
}

#[allow(clippy::too_many_arguments)]
fn validate(
    p1: &Program,
    p2: &Program,
    g1: &GroundFormula,
    g2: &GroundFormula,
    ht: &HTInterpretation,
    side: Side,
    domain: &Domain,
    options: &SeOptions,
) -> Result<WitnessValidation, SeError> {
    let unsatisfied = match side {
        Side::First => g2,
        Side::Second => g1,
    };
    let context = separating_context(ht, unsatisfied);
    let (stable_in_first, stable_in_second) = stable_pair(g1, g2, &context, ht.there());
    let confirmed = stable_in_first != stable_in_second;

    let extension = domain.extended(options.extension_margin);
    let (e1, e2) = ground_both(p1, p2, &extension)?;
    let (_, index) = index_atoms(ht.there());
    let (i, j) = (
        set_to_mask(&index, ht.here()).expect("indexed"),
        set_to_mask(&index, ht.there()).expect("indexed"),
    );
    let h1 = Compiled::new(&e1, &index).ht(i, j);
    let h2 = Compiled::new(&e2, &index).ht(i, j);
    let same_side = h1 != h2 && (h1 == (side == Side::First));
    let survives_extension = same_side
        && stable_pair(&e1, &e2, &context, ht.there()) == (stable_in_first, stable_in_second);

    Ok(WitnessValidation {
        context,
        stable_in_first,
        stable_in_second,
        confirmed,
        extension,
        survives_extension,
    })
}

impl fmt::Display for SEResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SEResult::EquivalentOverDomain => f.write_str("equivalent over domain"),
            SEResult::Witness { ht, side } => {
                let show = |s: &BTreeSet<GroundAtom>| {
                    let v: Vec<String> = s.iter().map(|a| alloc::format!("{a}")).collect();
                    alloc::format!("{{{}}}", v.join(", "))
                };
                write!(
                    f,
                    "witness <{}, {}> satisfies only the {side} program",
                    show(ht.here()),
                    show(ht.there())
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{sat_classical, sat_ht, stable_models};
    use crate::syntax::parse_program;

    fn prog(s: &str) -> Program {
        parse_program(s).unwrap()
    }

    fn atom(p: &str, args: &[Precomputed]) -> GroundAtom {
        GroundAtom::new(p, args.to_vec())
    }

    #[test]
    fn default_domain_spans_numerals() {
        let p = prog("q(X+1) :- p(X), X != a.");
        let d = default_domain(&[&p]);
        assert_eq!(d.int_range(), (-1, 3));
        assert_eq!(d.symbolic_consts(), ["a"]);
        let d = default_domain(&[&prog("q(X) :- p(X).")]);
        assert_eq!(d.int_range(), (0, 1));
    }

    #[test]
    fn enumeration_is_exhaustive_and_ordered() {
        let g1 = GroundFormula::atom("p", Vec::new());
        let g2 = GroundFormula::top();
        let en = Enumerator::new(&g1, &g2, 16).unwrap();
        assert_eq!(en.len(), 3);
        // index 0 is <{}, {}>: p fails, top holds
        assert_eq!(en.first_disagreement(0..3), Some((0, Side::Second)));
        assert_eq!(en.first_disagreement(2..3), None);
        let h = en.interpretation(1);
        assert!(h.here().is_empty() && h.there().len() == 1);
    }

    #[test]
    fn rule6_vs_rule7() {
        let p6 = prog("p(X,Y) :- X = 1..2, Y = 1..2.");
        let p7 = prog("p(X,Y) :- X = Y, Y = 1..2.");
        let d = Domain::ints(1, 2).unwrap();
        let r = check_se(&p6, &p7, &d, &SeOptions::default()).unwrap();
        let SEResult::Witness { ht, side } = &r.result else {
            panic!("expected witness")
        };
        // the least vector: p(1,1) and p(2,2) true everywhere, the rest false
        let n = Precomputed::num;
        let diag: BTreeSet<_> = [atom("p", &[n(1), n(1)]), atom("p", &[n(2), n(2)])].into();
        assert_eq!(*side, Side::Second);
        assert_eq!((ht.here(), ht.there()), (&diag, &diag));
        let v = r.validation.unwrap();
        assert!(v.confirmed && v.survives_extension);
        assert!(!v.stable_in_first && v.stable_in_second);
    }

    #[test]
    fn example2_against_each_rule() {
        let full = prog("q(X) :- p(X). q(X+1) :- p(X+1).");
        let first = prog("q(X) :- p(X).");
        let second = prog("q(X+1) :- p(X+1).");
        let d = Domain::new(0, 2, alloc::vec!["a".into()], false).unwrap();
        let r = check_se(&full, &first, &d, &SeOptions::default()).unwrap();
        assert_eq!(r.result, SEResult::EquivalentOverDomain);

        let r = check_se(&full, &second, &d, &SeOptions::default()).unwrap();
        let SEResult::Witness { ht, side } = &r.result else {
            panic!("expected witness")
        };
        let pa = atom("p", &[Precomputed::sym("a")]);
        assert_eq!(*side, Side::Second);
        assert!(ht.here().is_empty());
        assert_eq!(ht.there().iter().collect::<Vec<_>>(), [&pa]);
        let v = r.validation.unwrap();
        assert!(v.confirmed && v.conclusive());
        assert!(!v.stable_in_first && v.stable_in_second);

        // with the fact p(a) the full program concludes q(a)
        let (g1, g2) = ground_both(&full, &second, &d).unwrap();
        let ctx = GroundFormula::Atom(pa.clone());
        let mut atoms = g1.atoms();
        g2.atoms_into(&mut atoms);
        let with = |g: &GroundFormula| {
            stable_models(
                &GroundFormula::And(alloc::vec![g.clone(), ctx.clone()]),
                &atoms,
            )
        };
        let qa = atom("q", &[Precomputed::sym("a")]);
        assert_eq!(
            with(&g1),
            alloc::vec![[pa.clone(), qa].into_iter().collect()]
        );
        assert_eq!(with(&g2), alloc::vec![[pa].into_iter().collect()]);
    }

    #[test]
    fn witness_satisfies_exactly_one() {
        let p6 = prog("p(X,Y) :- X = 1..2, Y = 1..2.");
        let p7 = prog("p(X,Y) :- X = Y, Y = 1..2.");
        let d = Domain::ints(1, 2).unwrap();
        let (g1, g2) = ground_both(&p6, &p7, &d).unwrap();
        let r = check_se(&p6, &p7, &d, &SeOptions::default()).unwrap();
        let SEResult::Witness { ht, .. } = r.result else {
            panic!()
        };
        assert_ne!(sat_ht(&ht, &g1), sat_ht(&ht, &g2));
        assert!(sat_classical(ht.there(), &g1) || sat_classical(ht.there(), &g2));
    }

    #[test]
    fn too_many_atoms() {
        let p = prog("p(X) :- q(X).");
        let d = Domain::ints(0, 9).unwrap();
        let err = check_se(&p, &p, &d, &SeOptions::default()).unwrap_err();
        assert!(matches!(err, SeError::TooManyAtoms { count: 20, max: 16 }));
    }
}
