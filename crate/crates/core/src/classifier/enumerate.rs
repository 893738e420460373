//! Candidate tuples `(i_X, mu, e)` and the `c1` filters.

use std::collections::BTreeSet;

use num_integer::Integer;

use super::axioms::{self, AxiomLedger};
use super::{CaseTuple, ClassifierError, Exclusion, Provenance};
use crate::algebra::{ext_gcd_i64, Rat};
use crate::chowring::{self, ChowError};
use crate::exec::Exec;
use crate::tanfield;

/// Admissible dimensions the classifier accepts.
pub const ADMISSIBLE: [u32; 3] = [2, 3, 5];

/// `kappa(n)` as an integer, for admissible `n` only.
pub fn kappa_int(n: u32) -> Result<i64, ClassifierError> {
    if !ADMISSIBLE.contains(&n) {
        return Err(ClassifierError::InadmissibleDimension(n));
    }
    let k = tanfield::kappa(n as u64).map_err(|_| ClassifierError::InadmissibleDimension(n))?;
    k.to_i64().ok_or(ClassifierError::InadmissibleDimension(n))
}

/// All `(i_X, mu, e)` with `(i_X mu - 2) e = kappa` and `i_X mu > 2`, read
/// off the divisors of `kappa`.
pub fn candidates_by_divisors(kappa: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for q in (1..=kappa).filter(|q| kappa % q == 0) {
        let e = kappa / q;
        let prod = q + 2;
        for ix in (1..=prod).filter(|ix| prod % ix == 0) {
            out.push((ix, prod / ix, e));
        }
    }
    out
}

/// The same set by scanning the box `[1, bound]^3`.
pub fn candidates_in_box(kappa: i64, bound: i64, exec: Exec) -> Vec<(i64, i64, i64)> {
    exec.map_range(1..=bound as u64, |ix| {
        let ix = ix as i64;
        let mut hits = Vec::new();
        for mu in 1..=bound {
            let q = ix * mu - 2;
            if q <= 0 || kappa % q != 0 {
                continue;
            }
            let e = kappa / q;
            if e <= bound {
                hits.push((ix, mu, e));
            }
        }
        hits
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Presentation order: `i_X` descending, then `mu`, then `e` ascending.
pub fn canonical_order(v: &mut [(i64, i64, i64)]) {
    v.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
}

/// Candidate tuples before and after the axiom filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub n: u32,
    pub kappa: i64,
    /// Every tuple meeting the Diophantine constraint, in canonical order.
    pub raw: Vec<(i64, i64, i64)>,
    pub accepted: Vec<CaseTuple>,
    pub excluded: Vec<Exclusion>,
    pub axioms: AxiomLedger,
}

/// `Delta` of one tuple by the trigonometric route and the Chern-class route.
pub fn delta_both_routes(n: u32, tau: &Rat, mu: i64, e: i64) -> Result<(Rat, Rat), ClassifierError> {
    let tan_sq = tanfield::tan_sq_rational(n as u64 + 1)?.ok_or(ClassifierError::InadmissibleDimension(n))?;
    let by_tan = -(&(tau * tau) * &tan_sq);
    let by_chern = chowring::discriminant_value(tau, &Rat::from(e), &Rat::from(mu))?;
    Ok((by_tan, by_chern))
}

fn populate(n: u32, (ix, mu, e): (i64, i64, i64), kappa: i64) -> Result<CaseTuple, ClassifierError> {
    let tau = Rat::new(ix * mu - 2, mu)?;
    let (delta_tan, delta_dual) = delta_both_routes(n, &tau, mu, e)?;
    if delta_tan != delta_dual {
        return Err(ClassifierError::DiscriminantMismatch {
            ix,
            mu,
            e,
            by_tan: Box::new(delta_tan),
            by_chern: Box::new(delta_dual),
        });
    }
    let allowed_c1 = parity_filter_raw(ix, mu)?;
    let mut provenance = vec![
        Provenance::derived(format!("({ix}*{mu} - 2)*{e} = {kappa} = kappa({n})")),
        Provenance::axiom(axioms::UPSILON_EQUALS_TAU, format!("tau = {tau} > 0")),
        Provenance::derived(format!("Delta = {delta_tan} by both routes")),
    ];
    for c1 in [0, -1] {
        if !allowed_c1.contains(&c1) {
            provenance.push(Provenance::derived(format!("c1 = {c1} dropped: ({c1} + {ix})*{mu} is odd")));
        }
    }
    Ok(CaseTuple { n, ix, mu, e, upsilon: tau.clone(), tau, delta: delta_dual, delta_tan, allowed_c1, provenance })
}

/// All tuples for dimension `n`, with exclusions recorded.
pub fn enumerate(n: u32, exec: Exec) -> Result<Enumeration, ClassifierError> {
    let kappa = kappa_int(n)?;
    let mut raw = candidates_by_divisors(kappa);
    canonical_order(&mut raw);
    // i_X mu <= kappa + 2 and e <= kappa, so this box holds every solution
    let mut boxed = candidates_in_box(kappa, kappa + 2, exec);
    canonical_order(&mut boxed);
    if raw != boxed {
        return Err(ClassifierError::EnumerationMismatch(n));
    }

    let mut ledger = AxiomLedger::default();
    let mut accepted = Vec::new();
    let mut excluded = Vec::new();
    for &(ix, mu, e) in &raw {
        let id = format!("n{n}:({ix},{mu},{e})");
        if ix > n as i64 + 1 {
            ledger.consume(axioms::KOBAYASHI_OCHIAI, id.clone());
            excluded.push(Exclusion {
                ix,
                mu,
                e,
                provenance: Provenance::axiom(axioms::KOBAYASHI_OCHIAI, format!("i_X = {ix} > n + 1")),
            });
            continue;
        }
        if n == 2 && ix != 3 {
            ledger.consume(axioms::FANO_SURFACE_P2, id.clone());
            excluded.push(Exclusion {
                ix,
                mu,
                e,
                provenance: Provenance::axiom(axioms::FANO_SURFACE_P2, format!("i_X = {ix} but X = P^2")),
            });
            continue;
        }
        let mut t = populate(n, (ix, mu, e), kappa)?;
        ledger.consume(axioms::KOBAYASHI_OCHIAI, id.clone());
        ledger.consume(axioms::UPSILON_EQUALS_TAU, id.clone());
        if n == 2 {
            ledger.consume(axioms::FANO_SURFACE_P2, id.clone());
        }
        if n == 3 && (ix, mu, e) == (2, 2, 1) {
            t.allowed_c1.remove(&-1);
            t.provenance.push(Provenance::axiom(axioms::TUPLE_221_C1_ZERO, "c1 = -1 dropped".to_string()));
            ledger.consume(axioms::TUPLE_221_C1_ZERO, id.clone());
            ledger.consume(axioms::TUPLE_221_GEOMETRIC, id.clone());
        }
        accepted.push(t);
    }
    Ok(Enumeration { n, kappa, raw, accepted, excluded, axioms: ledger })
}

/// The pre-filter list: accepted tuples only, in canonical order.
pub fn enumerate_tuples(n: u32) -> Result<Vec<CaseTuple>, ClassifierError> {
    Ok(enumerate(n, Exec::default())?.accepted)
}

fn parity_filter_raw(ix: i64, mu: i64) -> Result<BTreeSet<i64>, ClassifierError> {
    let mut out = BTreeSet::new();
    for c1 in [0, -1] {
        match chowring::splitting_type(ix, mu, c1) {
            Ok(_) => {
                out.insert(c1);
            }
            Err(ChowError::NonIntegralSplitting) => {}
            Err(other) => return Err(other.into()),
        }
    }
    if out.is_empty() {
        return Err(ClassifierError::NoAdmissibleC1 { ix, mu });
    }
    Ok(out)
}

/// `c1` values in `{0, -1}` with an integral splitting type.
pub fn parity_filter(t: &CaseTuple) -> Result<BTreeSet<i64>, ClassifierError> {
    parity_filter_raw(t.ix, t.mu)
}

/// Coefficients of `V = alpha H + beta L` with `V . f' = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VWitness {
    pub n: u32,
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    pub c1: i64,
    /// `L . f' = 1 + (c1 - i_X) mu / 2`.
    pub lf_prime: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl VWitness {
    pub fn holds(&self) -> bool {
        self.alpha * self.mu + self.beta * self.lf_prime == 1
    }
}

pub fn v_solver(t: &CaseTuple, c1: i64) -> Result<VWitness, ClassifierError> {
    let (_, b) = chowring::splitting_type(t.ix, t.mu, c1)?;
    // b = 1 + (c1 - i_X) mu / 2 is exactly L . f'
    let lf_prime = b;
    let (g, alpha, beta) = ext_gcd_i64(t.mu, lf_prime)?;
    if g != 1 || t.mu.gcd(&lf_prime) != 1 {
        return Err(ClassifierError::NoUnimodularCombination { mu: t.mu, lf_prime });
    }
    let w = VWitness { n: t.n, ix: t.ix, mu: t.mu, e: t.e, c1, lf_prime, alpha, beta };
    debug_assert!(w.holds());
    Ok(w)
}
