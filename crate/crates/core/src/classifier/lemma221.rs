//! Arithmetic half of the exclusion of `c1 = -1` for the tuple `(2, 2, 1)`.
//!
//! With `c1 = -1` the relation `c1^2 d - 4 c2 = d Delta` pins `d = 2 c2`.
//! Adding the imported parity and degree bounds leaves one candidate, which
//! is then excluded geometrically (an axiom, not computed here).

use super::axioms;
use super::enumerate::delta_both_routes;
use super::ClassifierError;
use crate::algebra::{MPoly, Rat, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn admits(self, k: i64) -> bool {
        match self {
            Parity::Even => k % 2 == 0,
            Parity::Odd => k % 2 != 0,
        }
    }
}

/// Counterfactual constraints layered on top of the imported ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// Extra parity for `c2`, intersected with the imported "c2 even".
    pub c2_parity: Option<Parity>,
    /// Replaces the imported degree bound `d_X <= 5`.
    pub degree_bound: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma221Record {
    pub tau: Rat,
    pub delta: Rat,
    /// `d` solved from the Chern relation, as a polynomial in `c2`.
    pub d_in_c2: MPoly,
    pub degree_bound: i64,
    pub hypotheses: Hypotheses,
    /// Surviving `(d, c2)` pairs.
    pub candidates: Vec<(i64, i64)>,
    /// Axioms the branch depends on; the last one closes it.
    pub axioms: Vec<&'static str>,
}

pub fn lemma221_arithmetic(h: &Hypotheses) -> Result<Lemma221Record, ClassifierError> {
    let (ix, mu, e, c1) = (2i64, 2i64, 1i64, -1i64);
    let tau = Rat::new(ix * mu - 2, mu)?;
    let (by_tan, delta) = delta_both_routes(3, &tau, mu, e)?;
    if by_tan != delta {
        return Err(ClassifierError::DiscriminantMismatch {
            ix,
            mu,
            e,
            by_tan: Box::new(by_tan),
            by_chern: Box::new(delta),
        });
    }
    // c1^2 d - 4 c2 - d Delta = 0, linear in d
    let d = MPoly::var(Symbol::D);
    let c2 = MPoly::var(Symbol::C2);
    let relation = &(&d.scale(&Rat::from(c1 * c1)) - &c2.scale(&Rat::from(4))) - &d.scale(&delta);
    let parts = relation.coefficients_in(Symbol::D);
    let lead = parts.get(1).and_then(MPoly::as_constant).ok_or(ClassifierError::Lemma221Degenerate)?;
    if lead.is_zero() {
        return Err(ClassifierError::Lemma221Degenerate);
    }
    let d_in_c2 = (-&parts[0]).scale(&lead.recip()?);

    let bound = h.degree_bound.unwrap_or(5);
    let mut candidates = Vec::new();
    for k in 1..=bound.max(0) {
        if !Parity::Even.admits(k) || !h.c2_parity.is_none_or(|p| p.admits(k)) {
            continue;
        }
        let dk = d_in_c2.eval_partial(&[(Symbol::C2, Rat::from(k))]).as_constant();
        if let Some(dk) = dk.and_then(|r| r.to_i64()) {
            if dk >= 1 && dk <= bound {
                candidates.push((dk, k));
            }
        }
    }
    Ok(Lemma221Record {
        tau,
        delta,
        d_in_c2,
        degree_bound: bound,
        hypotheses: h.clone(),
        candidates,
        axioms: vec![axioms::RIEMANN_ROCH_C2_EVEN, axioms::DEL_PEZZO_DEGREE_BOUND, axioms::TUPLE_221_GEOMETRIC],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imported_bounds_leave_one_candidate() {
        let r = lemma221_arithmetic(&Hypotheses::default()).unwrap();
        assert_eq!(r.delta, Rat::from(-1));
        assert_eq!(r.d_in_c2, MPoly::var(Symbol::C2).scale(&Rat::from(2)));
        assert_eq!(r.candidates, vec![(4, 2)]);
    }

    #[test]
    fn counterfactual_branches_are_empty() {
        let odd = Hypotheses { c2_parity: Some(Parity::Odd), degree_bound: None };
        assert!(lemma221_arithmetic(&odd).unwrap().candidates.is_empty());
        let tight = Hypotheses { c2_parity: None, degree_bound: Some(3) };
        assert!(lemma221_arithmetic(&tight).unwrap().candidates.is_empty());
    }
}
