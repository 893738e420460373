//! Tangent multiple-angle polynomials and the exact rationality decision for
//! `tan^2(pi/m)`.
//!
//! With `(1 + i t)^m = R_m(t) + i P_m(t)`, the roots of the odd polynomial
//! `P_m` are `tan(k pi/m)`, so `Q_m(u)` with `P_m(t) = t Q_m(t^2)` has the
//! roots `tan^2(k pi/m)` for `1 <= k <= (m-1)/2`. They increase with `k`, so
//! `tan^2(pi/m)` is the smallest positive root of `Q_m`. Whether it is
//! rational is decided exactly: rational-root theorem for the candidates,
//! certified root counts and sign bisection for the separation. No floating
//! point is involved. The counts come from Descartes' rule on transformed
//! polynomials, since Sturm sequences of `Q_m` get expensive quickly in `m`;
//! the two counters are cross-checked in the tests.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, IntPoly, Rat, RootCounter, RootInterval};
use crate::exec::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TanError {
    #[error("multiple-angle polynomials need m >= 3, got {0}")]
    DegreeTooSmall(u64),
    #[error("recurrence and binomial expansion disagree at m = {0}")]
    Inconsistent(u64),
    #[error("irrational constraint: tan^2(pi/{m}) is not rational, so n = {n} is not admissible")]
    IrrationalConstraint { n: u64, m: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentPolyResult {
    pub m: u64,
    /// Imaginary part of `(1 + i t)^m`.
    pub p: IntPoly,
    /// `P_m(t) = t * Q_m(t^2)`.
    pub q: IntPoly,
    /// `tan^2(pi/m)` when rational.
    pub tan_sq: Option<Rat>,
    /// Interval isolating `tan^2(pi/m)` among the roots of `Q_m`.
    pub isolating_interval: RootInterval,
}

/// Real and imaginary parts of `(1 + i t)^m` by the step
/// `R' = R - t P`, `P' = P + t R`.
pub fn real_imag_by_recurrence(m: u64) -> (IntPoly, IntPoly) {
    let mut seq = MultipleAngleSeq::new();
    let mut out = (IntPoly::from_i64(&[1]), IntPoly::zero());
    for _ in 0..m {
        out = seq.next_pair();
    }
    out
}

/// Successive `(R_m, P_m)` for `m = 1, 2, ...`, one recurrence step each.
#[derive(Clone, Debug)]
pub struct MultipleAngleSeq {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
}

impl MultipleAngleSeq {
    /// Starts at `m = 0`: `R_0 = 1`, `P_0 = 0`.
    pub fn new() -> Self {
        MultipleAngleSeq { re: vec![BigInt::from(1)], im: vec![BigInt::zero()] }
    }

    /// Advances `m` by one and returns the new pair.
    pub fn next_pair(&mut self) -> (IntPoly, IntPoly) {
        let len = self.re.len() + 1;
        self.re.resize(len, BigInt::zero());
        self.im.resize(len, BigInt::zero());
        // R' = R - t P and P' = P + t R, walking down so old values are read first
        for i in (1..len).rev() {
            let r_prev = self.re[i - 1].clone();
            let p_prev = self.im[i - 1].clone();
            self.re[i] -= p_prev;
            self.im[i] += r_prev;
        }
        (IntPoly::new(self.re.clone()), IntPoly::new(self.im.clone()))
    }
}

impl Default for MultipleAngleSeq {
    fn default() -> Self {
        Self::new()
    }
}

/// Imaginary part of `(1 + i t)^m` by direct binomial expansion.
pub fn imag_by_expansion(m: u64) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    let mut binom = BigInt::from(1);
    for k in 0..=m {
        if k % 2 == 1 {
            coeffs[k as usize] = if (k / 2) % 2 == 0 { binom.clone() } else { -binom.clone() };
        }
        binom = binom * (m - k) / (k + 1);
    }
    IntPoly::new(coeffs)
}

fn odd_part(p: &IntPoly) -> IntPoly {
    IntPoly::new(p.coeffs().iter().skip(1).step_by(2).cloned().collect())
}

fn checked_pair(m: u64, p: IntPoly) -> Result<(IntPoly, IntPoly), TanError> {
    if p != imag_by_expansion(m) {
        return Err(TanError::Inconsistent(m));
    }
    let q = odd_part(&p);
    Ok((p, q))
}

/// `P_m` and `Q_m`, checked against each other by two constructions.
pub fn tangent_poly(m: u64) -> Result<(IntPoly, IntPoly), TanError> {
    if m < 3 {
        return Err(TanError::DegreeTooSmall(m));
    }
    let (_, p) = real_imag_by_recurrence(m);
    checked_pair(m, p)
}

/// `(m, P_m, Q_m)` for `3 <= m <= max_m`, built incrementally.
pub fn tangent_polys_upto(max_m: u64) -> Result<Vec<(u64, IntPoly, IntPoly)>, TanError> {
    let mut seq = MultipleAngleSeq::new();
    let mut out = Vec::new();
    for m in 1..=max_m {
        let (_, p) = seq.next_pair();
        if m >= 3 {
            let (p, q) = checked_pair(m, p)?;
            out.push((m, p, q));
        }
    }
    Ok(out)
}

fn analyze_poly(m: u64, p: IntPoly, q: IntPoly) -> Result<TangentPolyResult, TanError> {
    let roots = q.rational_roots()?;
    let interval = q.isolate_smallest_positive_root_by(RootCounter::Descartes)?;
    // exactly one root of Q_m lies in the interval, so a rational root inside it is that root
    let tan_sq = roots.into_iter().find(|r| interval.contains(r));
    Ok(TangentPolyResult { m, p, q, tan_sq, isolating_interval: interval })
}

/// Full analysis of `tan^2(pi/m)`: polynomials, isolating interval, rational value.
pub fn analyze(m: u64) -> Result<TangentPolyResult, TanError> {
    let (p, q) = tangent_poly(m)?;
    analyze_poly(m, p, q)
}

/// `tan^2(pi/m)` if it is rational.
pub fn tan_sq_rational(m: u64) -> Result<Option<Rat>, TanError> {
    Ok(analyze(m)?.tan_sq)
}

/// Dimensions `n` in `[2, max_n]` where `tan^2(pi/(n+1))` is rational.
pub fn admissible_dims(max_n: u64, exec: Exec) -> Result<BTreeSet<u64>, TanError> {
    if max_n < 2 {
        return Ok(BTreeSet::new());
    }
    Ok(scan(max_n + 1, exec)?.into_iter().filter(|row| row.tan_sq.is_some()).map(|row| row.m - 1).collect())
}

/// One row per `m` in `[3, max_m]`, in order.
pub fn scan(max_m: u64, exec: Exec) -> Result<Vec<TangentPolyResult>, TanError> {
    if max_m < 3 {
        return Ok(Vec::new());
    }
    let polys = tangent_polys_upto(max_m)?;
    exec.map(&polys, |(m, p, q)| analyze_poly(*m, p.clone(), q.clone())).into_iter().collect()
}

/// `kappa(n) = tau * mu * e = 4 / (1 + tan^2(pi/(n+1))) = 4 cos^2(pi/(n+1))`.
pub fn kappa(n: u64) -> Result<Rat, TanError> {
    let m = n + 1;
    match tan_sq_rational(m)? {
        Some(t) => Ok(&Rat::from(4) / &(Rat::one() + t)),
        None => Err(TanError::IrrationalConstraint { n, m }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: u64) -> IntPoly {
        tangent_poly(m).unwrap().1
    }

    #[test]
    fn small_tangent_polynomials() {
        let (p3, q3) = tangent_poly(3).unwrap();
        assert_eq!(p3, IntPoly::from_i64(&[0, 3, 0, -1]));
        assert_eq!(q3, IntPoly::from_i64(&[3, -1]));
        let (p4, q4) = tangent_poly(4).unwrap();
        assert_eq!(p4, IntPoly::from_i64(&[0, 4, 0, -4]));
        assert_eq!(q4, IntPoly::from_i64(&[4, -4]));
        assert_eq!(q(6), IntPoly::from_i64(&[6, -20, 6]));
        assert_eq!(q(5), IntPoly::from_i64(&[5, -10, 1]));
        assert_eq!(tangent_poly(2), Err(TanError::DegreeTooSmall(2)));
    }

    #[test]
    fn rational_tangent_squares() {
        assert_eq!(tan_sq_rational(3).unwrap(), Some(Rat::from(3)));
        assert_eq!(tan_sq_rational(4).unwrap(), Some(Rat::from(1)));
        assert_eq!(tan_sq_rational(6).unwrap(), Some(Rat::new(1, 3).unwrap()));
        assert_eq!(tan_sq_rational(5).unwrap(), None);
        // Q_12 has rational roots 1/3, 1, 3 but tan^2(pi/12) = 7 - 4 sqrt 3 is not among them
        assert!(q(12).rational_roots().unwrap().contains(&Rat::new(1, 3).unwrap()));
        assert_eq!(tan_sq_rational(12).unwrap(), None);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(2).unwrap(), Rat::from(1));
        assert_eq!(kappa(3).unwrap(), Rat::from(2));
        assert_eq!(kappa(5).unwrap(), Rat::from(3));
        assert!(matches!(kappa(4), Err(TanError::IrrationalConstraint { n: 4, m: 5 })));
    }

    #[test]
    fn small_admissible_scans() {
        assert_eq!(admissible_dims(5, Exec::Sequential).unwrap(), BTreeSet::from([2, 3, 5]));
        assert_eq!(admissible_dims(2, Exec::Sequential).unwrap(), BTreeSet::from([2]));
    }
}
