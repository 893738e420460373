//! Case enumeration for double `P^1`-bundle structures, from the Diophantine
//! constraint down to the final invariant tables.
//!
//! Every exclusion carries a [`Provenance`]: either derived arithmetic or an
//! imported fact from [`axioms`]. [`audit`] checks that nothing is dropped
//! silently.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Rat};
use crate::chowring::ChowError;
use crate::exec::Exec;
use crate::tanfield::TanError;

pub mod axioms;
pub mod enumerate;
pub mod lemma221;
pub mod pairs;

pub use axioms::{AxiomLedger, AxiomRecord};
pub use enumerate::{enumerate, enumerate_tuples, parity_filter, v_solver, Enumeration, VWitness, ADMISSIBLE};
pub use lemma221::{lemma221_arithmetic, Hypotheses, Lemma221Record, Parity};
pub use pairs::{
    base_change, identify, pair_match, pair_match_ordered, symbolic_base_change, BaseChange, IntersectionTable,
    PairOrder, PairSolution, SymbolicBaseChange,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("inadmissible dimension {0}; admissible: 2, 3, 5")]
    InadmissibleDimension(u32),
    #[error("divisor and box enumerations disagree for n = {0}")]
    EnumerationMismatch(u32),
    #[error("discriminants disagree at ({ix}, {mu}, {e}): {by_tan} vs {by_chern}")]
    DiscriminantMismatch { ix: i64, mu: i64, e: i64, by_tan: Box<Rat>, by_chern: Box<Rat> },
    #[error("no c1 in {{0, -1}} passes parity for i_X = {ix}, mu = {mu}")]
    NoAdmissibleC1 { ix: i64, mu: i64 },
    #[error("no unimodular combination: gcd(mu = {mu}, L.f' = {lf_prime}) != 1")]
    NoUnimodularCombination { mu: i64, lf_prime: i64 },
    #[error("singular base-change system")]
    SingularSystem,
    #[error("base change has determinant {0}, not +-1")]
    NonUnimodularBaseChange(Rat),
    #[error("degree ratio is irrational for n = {0}")]
    IrrationalRatio(u32),
    #[error("degree ratios disagree: closed form {closed}, ring {ring}")]
    DegreeRatioMismatch { closed: Box<Rat>, ring: Box<Rat> },
    #[error("the (2, 2, 1) relation does not determine d")]
    Lemma221Degenerate,
    #[error("no base-cycle normalization for n = {n}, i_X = {ix}")]
    NoNormalization { n: u32, ix: i64 },
    #[error("inconsistent Chern data: c2 = {0}")]
    InconsistentChern(Rat),
    #[error("unclassified pair (n, i_X, i_Y) = ({n}, {ix}, {iy})")]
    Unclassified { n: u32, ix: i64, iy: i64 },
    #[error("audit failed: {0}")]
    Audit(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Tan(#[from] TanError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    Derived,
    Axiom(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Provenance {
    pub tag: Tag,
    pub note: String,
}

impl Provenance {
    pub fn derived(note: String) -> Self {
        Provenance { tag: Tag::Derived, note }
    }

    pub fn axiom(id: &'static str, note: String) -> Self {
        Provenance { tag: Tag::Axiom(id), note }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::Derived => write!(f, "[derived] {}", self.note),
            Tag::Axiom(id) => write!(f, "[axiom {id}] {}", self.note),
        }
    }
}

/// One candidate geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTuple {
    pub n: u32,
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    /// `i_X - 2/mu`.
    pub tau: Rat,
    /// Imported as equal to `tau`.
    pub upsilon: Rat,
    /// `tau^2 - 4 tau/(e mu)`.
    pub delta: Rat,
    /// `-tau^2 tan^2(pi/(n+1))`; equal to `delta`.
    pub delta_tan: Rat,
    /// Values of `c1` surviving parity and axioms.
    pub allowed_c1: BTreeSet<i64>,
    pub provenance: Vec<Provenance>,
}

impl CaseTuple {
    pub fn key(&self) -> (i64, i64, i64) {
        (self.ix, self.mu, self.e)
    }
}

/// A raw candidate removed before population.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exclusion {
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    pub provenance: Provenance,
}

/// `(n, i_X, d, mu, tau, Delta, c1, c2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub ix: i64,
    pub d: Rat,
    pub mu: i64,
    pub tau: Rat,
    pub delta: Rat,
    pub c1: i64,
    pub c2: Rat,
}

/// `d = 1` for the base cycles used: a point on `P^2`, a line on `P^3`, the
/// generator of `H^4(Q^5)`.
fn sigma_normalized_d(n: u32, ix: i64) -> Result<Rat, ClassifierError> {
    match (n, ix) {
        (2, 3) | (3, 4) | (5, 5) => Ok(Rat::one()),
        _ => Err(ClassifierError::NoNormalization { n, ix }),
    }
}

/// Row for the larger-index side of each matched pair.
pub fn final_table(pairs: &[PairSolution]) -> Result<Vec<TableRow>, ClassifierError> {
    let mut rows = Vec::new();
    for p in pairs {
        let t = &p.left;
        let d = sigma_normalized_d(t.n, t.ix)?;
        let c1 = Rat::from(p.c1);
        // c1^2 d - 4 c2 = d Delta
        let c2 = &(&(&(&c1 * &c1) * &d) - &(&d * &t.delta)) / &Rat::from(4);
        if !c2.is_integer() || !c2.is_positive() {
            return Err(ClassifierError::InconsistentChern(c2));
        }
        rows.push(TableRow { n: t.n, ix: t.ix, d, mu: t.mu, tau: t.tau.clone(), delta: t.delta.clone(), c1: p.c1, c2 });
    }
    Ok(rows)
}

/// Everything the pipeline produces for one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: u32,
    pub enumeration: Enumeration,
    pub witnesses: Vec<VWitness>,
    pub lemma221: Option<Vec<Lemma221Record>>,
    pub pairs: Vec<PairSolution>,
    pub rows: Vec<TableRow>,
    pub axioms: AxiomLedger,
}

pub fn classify(n: u32, exec: Exec) -> Result<Classification, ClassifierError> {
    let enumeration = enumerate(n, exec)?;
    let mut ledger = enumeration.axioms.clone();
    ledger.consume(axioms::PICARD_N2, format!("n{n}"));

    let mut witnesses = Vec::new();
    for t in &enumeration.accepted {
        for &c1 in &t.allowed_c1 {
            witnesses.push(v_solver(t, c1)?);
        }
    }

    let lemma221 = if n == 3 {
        let main = lemma221_arithmetic(&Hypotheses::default())?;
        for id in &main.axioms {
            ledger.consume(id, "n3:(2,2,1)");
        }
        let odd = lemma221_arithmetic(&Hypotheses { c2_parity: Some(Parity::Odd), degree_bound: None })?;
        let tight = lemma221_arithmetic(&Hypotheses { c2_parity: None, degree_bound: Some(3) })?;
        Some(vec![main, odd, tight])
    } else {
        None
    };

    let pairs = pair_match(n, enumeration.kappa, &enumeration.accepted)?;
    let rows = final_table(&pairs)?;
    for p in &pairs {
        let id = format!("n{n}:pair({},{},{})", p.left.ix, p.right.ix, p.mu);
        ledger.consume(axioms::SIGMA_NORMALIZATION, id.clone());
        if p.names.is_some() {
            ledger.consume(axioms::BUNDLE_UNIQUENESS, id);
        }
    }
    let out = Classification { n, enumeration, witnesses, lemma221, pairs, rows, axioms: ledger };
    audit(&out)?;
    Ok(out)
}

/// Every raw candidate is accepted or excluded with a tag, every axiom named
/// in a provenance was consumed, and every surviving `(tuple, c1)` has a
/// Bezout witness.
pub fn audit(c: &Classification) -> Result<(), ClassifierError> {
    let e = &c.enumeration;
    let mut seen: Vec<(i64, i64, i64)> = e.accepted.iter().map(CaseTuple::key).collect();
    seen.extend(e.excluded.iter().map(|x| (x.ix, x.mu, x.e)));
    enumerate::canonical_order(&mut seen);
    if seen != e.raw {
        return Err(ClassifierError::Audit(format!("n = {}: accepted + excluded != candidates", c.n)));
    }
    let mut tags: Vec<&Provenance> = e.excluded.iter().map(|x| &x.provenance).collect();
    tags.extend(e.accepted.iter().flat_map(|t| t.provenance.iter()));
    for p in tags {
        if let Tag::Axiom(id) = p.tag {
            if !c.axioms.contains(id) {
                return Err(ClassifierError::Audit(format!("axiom {id} used but not recorded")));
            }
        }
    }
    for t in &e.accepted {
        for c1 in [0, -1] {
            if t.allowed_c1.contains(&c1) {
                if !c.witnesses.iter().any(|w| w.key() == (t.ix, t.mu, t.e, c1) && w.holds()) {
                    return Err(ClassifierError::Audit(format!("no witness for {:?}, c1 = {c1}", t.key())));
                }
            } else if !t.provenance.iter().any(|p| p.note.starts_with(&format!("c1 = {c1} dropped"))) {
                return Err(ClassifierError::Audit(format!("c1 = {c1} dropped silently for {:?}", t.key())));
            }
        }
    }
    Ok(())
}

impl VWitness {
    fn key(&self) -> (i64, i64, i64, i64) {
        (self.ix, self.mu, self.e, self.c1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(n: u32) -> Vec<(i64, i64, i64)> {
        enumerate_tuples(n).unwrap().iter().map(CaseTuple::key).collect()
    }

    #[test]
    fn tuple_lists() {
        assert_eq!(keys(3), vec![(4, 1, 1), (3, 1, 2), (2, 2, 1), (1, 3, 2), (1, 4, 1)]);
        // canonical order puts mu = 3 before mu = 5
        assert_eq!(keys(5), vec![(5, 1, 1), (3, 1, 3), (1, 3, 3), (1, 5, 1)]);
        assert_eq!(keys(2), vec![(3, 1, 1)]);
        let e2 = enumerate(2, Exec::Sequential).unwrap();
        assert_eq!(e2.excluded.len(), 1);
        assert_eq!((e2.excluded[0].ix, e2.excluded[0].mu, e2.excluded[0].e), (1, 3, 1));
        assert_eq!(e2.excluded[0].provenance.tag, Tag::Axiom(axioms::FANO_SURFACE_P2));
        assert_eq!(enumerate_tuples(4), Err(ClassifierError::InadmissibleDimension(4)));
    }

    #[test]
    fn parity_examples() {
        let t3 = enumerate_tuples(3).unwrap();
        let get = |k| t3.iter().find(|t| t.key() == k).unwrap();
        assert_eq!(parity_filter(get((4, 1, 1))).unwrap(), BTreeSet::from([0]));
        assert_eq!(parity_filter(get((2, 2, 1))).unwrap(), BTreeSet::from([0, -1]));
        assert_eq!(get((2, 2, 1)).allowed_c1, BTreeSet::from([0]));
        let t2 = enumerate_tuples(2).unwrap();
        assert_eq!(parity_filter(&t2[0]).unwrap(), BTreeSet::from([-1]));
    }

    #[test]
    fn witnesses() {
        let t3 = enumerate_tuples(3).unwrap();
        let get = |k| t3.iter().find(|t| t.key() == k).unwrap();
        let w = v_solver(get((1, 3, 2)), -1).unwrap();
        assert_eq!(w.lf_prime, -2);
        assert_eq!((w.alpha, w.beta), (1, 1));
        let w = v_solver(get((1, 4, 1)), -1).unwrap();
        assert_eq!(w.lf_prime, -3);
        assert!(w.holds());
        let w = v_solver(get((2, 2, 1)), 0).unwrap();
        assert_eq!(w.lf_prime, -1);
        assert!(w.holds());
    }

    #[test]
    fn tables() {
        let row = |n| classify(n, Exec::Sequential).unwrap().rows;
        let r3 = row(3);
        assert_eq!(r3.len(), 1);
        assert_eq!(
            (r3[0].ix, r3[0].mu, r3[0].tau.clone(), r3[0].delta.clone(), r3[0].c1, r3[0].c2.clone()),
            (4, 1, Rat::from(2), Rat::from(-4), 0, Rat::from(1))
        );
        let r5 = row(5);
        assert_eq!((r5[0].ix, r5[0].delta.clone(), r5[0].c1, r5[0].c2.clone()), (5, Rat::from(-3), -1, Rat::from(1)));
        let r2 = row(2);
        assert_eq!((r2[0].ix, r2[0].delta.clone(), r2[0].c1, r2[0].c2.clone()), (3, Rat::from(-3), -1, Rat::from(1)));
    }
}
