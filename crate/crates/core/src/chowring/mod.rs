//! Truncated intersection rings with rewrite-based normal forms.
//!
//! A class is a map from a two-generator monomial `X^i Y^j` to a [`RatFn`]
//! coefficient. The meaning of `X`, `Y` and the rewrite rules depend on the
//! [`Ring`]:
//!
//! * `Fibered { n }`: `X = H`, `Y = L` on the projectivised rank-two bundle
//!   over an `n`-fold, with `L^2 -> c1 H L - c2 H^2` and `H^(n+1) -> 0`.
//! * `FormalPair`: `X = H`, `Y = H'` with no relations, truncated above
//!   codimension two.
//! * `SurfacePullback`: `X = zeta H`, `Y = zeta H'` on a surface, with
//!   `X^2 -> ratio X Y` and `Y^2 -> 0` (a divisor pulled back from a curve).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::algebra::{AlgebraError, Rat, RatFn, Symbol};

pub mod identities;
pub mod oracle;

pub use identities::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("classes live in different rings")]
    RingMismatch,
    #[error("pairing is only defined on the fibered ring")]
    NoPairing,
    #[error("residual polynomial still depends on {0}")]
    ResidualDependence(String),
    #[error("non-integral splitting type")]
    NonIntegralSplitting,
    #[error("mu must be positive, got {0}")]
    NonPositiveMu(i64),
    #[error("coefficient of g vanishes")]
    Unsolvable,
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sign in front of `c2` in the Chern-Wu rewrite `L^2 -> c1 H L - (sign) c2 H^2`.
///
/// `Flipped` is the fault-injection variant; every identity that depends on
/// the relation must then fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChernWuSign {
    Standard,
    Flipped,
}

impl ChernWuSign {
    /// Compile-time default: `Flipped` under the `fault-chern-wu` feature.
    pub const fn build_default() -> Self {
        if cfg!(feature = "fault-chern-wu") {
            ChernWuSign::Flipped
        } else {
            ChernWuSign::Standard
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Fibered { n: u32, sign: ChernWuSign },
    FormalPair,
    SurfacePullback { ratio: RatFn },
}

impl Ring {
    pub fn fibered(n: u32) -> Result<Ring, ChowError> {
        Ring::fibered_with_sign(n, ChernWuSign::build_default())
    }

    pub fn fibered_with_sign(n: u32, sign: ChernWuSign) -> Result<Ring, ChowError> {
        if n < 2 {
            return Err(ChowError::DimensionTooSmall(n));
        }
        Ok(Ring::Fibered { n, sign })
    }

    /// Surface ring with the symbolic ratio `mu e / mu'`.
    pub fn surface_pullback() -> Ring {
        let ratio = (&RatFn::var(Symbol::Mu) * &RatFn::var(Symbol::E))
            .div(&RatFn::var(Symbol::Mup))
            .expect("mu' is a denominator symbol");
        Ring::SurfacePullback { ratio }
    }

    pub fn surface_pullback_with_ratio(ratio: RatFn) -> Ring {
        Ring::SurfacePullback { ratio }
    }

    pub fn generator_names(&self) -> (&'static str, &'static str) {
        match self {
            Ring::Fibered { .. } => ("H", "L"),
            Ring::FormalPair => ("H", "H'"),
            Ring::SurfacePullback { .. } => ("zH", "zH'"),
        }
    }

    /// Whether `X^i Y^j` is in the normal-form basis.
    pub fn in_basis(&self, (i, j): (u32, u32)) -> bool {
        match self {
            Ring::Fibered { n, .. } => j <= 1 && i <= *n,
            Ring::FormalPair => i + j <= 2,
            Ring::SurfacePullback { .. } => i <= 1 && j <= 1,
        }
    }

    /// All rules applicable to the monomial.
    pub fn redexes(&self, (i, j): (u32, u32)) -> Vec<Rule> {
        let mut out = Vec::new();
        match self {
            Ring::Fibered { n, .. } => {
                if i > *n {
                    out.push(Rule::Truncate);
                }
                if j >= 2 {
                    out.push(Rule::ChernWu);
                }
            }
            Ring::FormalPair => {
                if i + j > 2 {
                    out.push(Rule::Truncate);
                }
            }
            Ring::SurfacePullback { .. } => {
                if j >= 2 {
                    out.push(Rule::CurveSquare);
                }
                if i >= 2 {
                    out.push(Rule::SurfaceRelation);
                }
            }
        }
        out
    }

    /// One rewrite step on `coeff * X^i Y^j`.
    fn apply(&self, rule: Rule, (i, j): (u32, u32), coeff: &RatFn) -> Vec<((u32, u32), RatFn)> {
        match (self, rule) {
            (_, Rule::Truncate) | (_, Rule::CurveSquare) => Vec::new(),
            (Ring::Fibered { sign, .. }, Rule::ChernWu) => {
                let c1 = RatFn::var(Symbol::C1);
                let c2 = match sign {
                    ChernWuSign::Standard => -RatFn::var(Symbol::C2),
                    ChernWuSign::Flipped => RatFn::var(Symbol::C2),
                };
                vec![((i + 1, j - 1), coeff * &c1), ((i + 2, j - 2), coeff * &c2)]
            }
            (Ring::SurfacePullback { ratio }, Rule::SurfaceRelation) => {
                vec![((i - 1, j + 1), coeff * ratio)]
            }
            _ => unreachable!("rule not offered by this ring"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Fibered { n, sign: ChernWuSign::Standard } => write!(f, "fibered(n={n})"),
            Ring::Fibered { n, sign: ChernWuSign::Flipped } => write!(f, "fibered(n={n}, flipped)"),
            Ring::FormalPair => write!(f, "formal-pair"),
            Ring::SurfacePullback { ratio } => write!(f, "surface-pullback({ratio})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Monomial beyond the top degree vanishes.
    Truncate,
    /// `L^2 -> c1 H L - c2 H^2`.
    ChernWu,
    /// `(zeta H')^2 -> 0`.
    CurveSquare,
    /// `(zeta H)^2 -> ratio zeta H zeta H'`.
    SurfaceRelation,
}

/// An element of one of the rings above.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    ring: Ring,
    coeffs: BTreeMap<(u32, u32), RatFn>,
}

impl ChowClass {
    pub fn zero(ring: &Ring) -> Self {
        ChowClass { ring: ring.clone(), coeffs: BTreeMap::new() }
    }

    pub fn scalar(ring: &Ring, c: impl Into<RatFn>) -> Self {
        ChowClass::monomial(ring, (0, 0), c)
    }

    pub fn one(ring: &Ring) -> Self {
        ChowClass::scalar(ring, 1)
    }

    /// `c * X^i Y^j`, not normalized.
    pub fn monomial(ring: &Ring, exps: (u32, u32), c: impl Into<RatFn>) -> Self {
        let mut out = ChowClass::zero(ring);
        out.add_term(exps, c.into());
        out
    }

    /// First generator (`H` or `zeta H`).
    pub fn x(ring: &Ring) -> Self {
        ChowClass::monomial(ring, (1, 0), 1)
    }

    /// Second generator (`L`, `H'` or `zeta H'`).
    pub fn y(ring: &Ring) -> Self {
        ChowClass::monomial(ring, (0, 1), 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFn)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exps: (u32, u32)) -> RatFn {
        self.coeffs.get(&exps).cloned().unwrap_or_default()
    }

    /// Common codimension of all terms, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|(i, j)| i + j);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The part of codimension `k`.
    pub fn graded_part(&self, k: u32) -> ChowClass {
        ChowClass {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().filter(|((i, j), _)| i + j == k).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.coeffs.keys().all(|e| self.ring.in_basis(*e))
    }

    fn add_term(&mut self, exps: (u32, u32), c: RatFn) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exps).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    /// Normal form, rewriting the first redex in monomial order.
    pub fn normalize(&self) -> ChowClass {
        self.normalize_with(|_| 0)
    }

    /// Normal form where `pick` chooses which pending redex to rewrite next
    /// among the offered `(monomial, rule)` pairs. Every choice reaches the
    /// same normal form.
    pub fn normalize_with(&self, mut pick: impl FnMut(&[((u32, u32), Rule)]) -> usize) -> ChowClass {
        let mut cur = self.clone();
        loop {
            let pending: Vec<((u32, u32), Rule)> =
                cur.coeffs.keys().flat_map(|e| cur.ring.redexes(*e).into_iter().map(move |r| (*e, r))).collect();
            if pending.is_empty() {
                return cur;
            }
            let (exps, rule) = pending[pick(&pending) % pending.len()];
            let coeff = cur.coeffs.remove(&exps).expect("pending monomial present");
            for (e, c) in cur.ring.apply(rule, exps, &coeff) {
                cur.add_term(e, c);
            }
        }
    }

    pub fn scale(&self, c: &RatFn) -> ChowClass {
        let mut out = ChowClass::zero(&self.ring);
        for (e, v) in &self.coeffs {
            out.add_term(*e, v * c);
        }
        out
    }

    /// Product, normalized.
    pub fn mul(&self, rhs: &ChowClass) -> Result<ChowClass, ChowError> {
        self.same_ring(rhs)?;
        let mut out = ChowClass::zero(&self.ring);
        for ((i, j), a) in &self.coeffs {
            for ((k, l), b) in &rhs.coeffs {
                out.add_term((i + k, j + l), a * b);
            }
        }
        Ok(out.normalize())
    }

    pub fn pow(&self, exp: u32) -> Result<ChowClass, ChowError> {
        let mut out = ChowClass::one(&self.ring);
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &ChowClass) -> Result<ChowClass, ChowError> {
        self.same_ring(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &ChowClass) -> Result<ChowClass, ChowError> {
        self.try_add(&-rhs)
    }

    fn same_ring(&self, rhs: &ChowClass) -> Result<(), ChowError> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(ChowError::RingMismatch)
        }
    }

    /// Top pairing `int H^n L = d` on the fibered ring.
    pub fn integrate(&self) -> Result<RatFn, ChowError> {
        let Ring::Fibered { n, .. } = self.ring else {
            return Err(ChowError::NoPairing);
        };
        Ok(&self.normalize().coeff((n, 1)) * &RatFn::var(Symbol::D))
    }

    /// Degree of a divisor class on a fiber of the bundle: `H.f = 0`, `L.f = 1`.
    pub fn fiber_degree(&self) -> Result<RatFn, ChowError> {
        match self.ring {
            Ring::Fibered { .. } => Ok(self.normalize().coeff((0, 1))),
            _ => Err(ChowError::NoPairing),
        }
    }

    /// Replaces a parameter symbol in every coefficient.
    pub fn substitute(&self, sym: Symbol, value: &RatFn) -> Result<ChowClass, ChowError> {
        let mut out = ChowClass::zero(&self.ring);
        for (e, c) in &self.coeffs {
            out.add_term(*e, c.substitute(sym, value)?);
        }
        Ok(out)
    }

    pub fn eval_partial(&self, values: &[(Symbol, Rat)]) -> Result<ChowClass, ChowError> {
        let mut out = ChowClass::zero(&self.ring);
        for (e, c) in &self.coeffs {
            out.add_term(*e, c.eval_partial(values)?);
        }
        Ok(out)
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    /// Panics on a ring mismatch; use [`ChowClass::try_add`] otherwise.
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("same ring")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.try_sub(rhs).expect("same ring")
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        ChowClass::mul(self, rhs).expect("same ring")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&RatFn::from(-1))
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let (x, y) = self.ring.generator_names();
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (g, e) in [(x, *i), (y, *j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{g}")?,
                    _ => write!(f, "*{g}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.ring, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: Symbol) -> RatFn {
        RatFn::var(s)
    }

    #[test]
    fn chern_wu_rewrite() {
        let r = Ring::fibered_with_sign(3, ChernWuSign::Standard).unwrap();
        let l = ChowClass::y(&r);
        let sq = &l * &l;
        let expect = &ChowClass::monomial(&r, (1, 1), v(Symbol::C1)) - &ChowClass::monomial(&r, (2, 0), v(Symbol::C2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn truncation() {
        let r = Ring::fibered(3).unwrap();
        let h = ChowClass::x(&r);
        assert!(h.pow(4).unwrap().is_zero());
        assert!(!h.pow(3).unwrap().is_zero());
    }

    #[test]
    fn surface_relation() {
        let r = Ring::surface_pullback();
        let zh = ChowClass::x(&r);
        let zhp = ChowClass::y(&r);
        let ratio = (&v(Symbol::Mu) * &v(Symbol::E)).div(&v(Symbol::Mup)).unwrap();
        assert_eq!(&zh * &zh, ChowClass::monomial(&r, (1, 1), ratio));
        assert!((&zhp * &zhp).is_zero());
    }

    #[test]
    fn normalize_is_idempotent() {
        let r = Ring::fibered(4).unwrap();
        let c = ChowClass::monomial(&r, (1, 5), v(Symbol::Tau));
        let once = c.normalize();
        assert!(once.is_normal());
        assert_eq!(once.normalize(), once);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ChowClass::x(&Ring::fibered(2).unwrap());
        let b = ChowClass::x(&Ring::FormalPair);
        assert_eq!(a.try_add(&b), Err(ChowError::RingMismatch));
        assert_eq!(Ring::fibered(1), Err(ChowError::DimensionTooSmall(1)));
    }
}
