//! Dense reference expansion of `(-K_pi + tau H)^(n+1)`.
//!
//! Shares nothing with the rewrite engine: a class is stored as the two
//! coefficient vectors of `H^i` and `H^i L`, and the factor
//! `2L + (tau - c1) H` is applied `n + 1` times by hand.

use super::identities::residual_in_delta;
use super::ChowError;
use crate::algebra::{MPoly, Monomial, Symbol};

fn bump(v: &mut [MPoly], i: usize, by: MPoly) {
    if i < v.len() {
        v[i] = &v[i] + &by;
    }
}

/// Returns the residual polynomial in `tau` and `Delta`.
pub fn nef_power_dense(n: u32) -> Result<MPoly, ChowError> {
    if n < 2 {
        return Err(ChowError::DimensionTooSmall(n));
    }
    let len = n as usize + 1;
    let c1 = MPoly::var(Symbol::C1);
    let c2 = MPoly::var(Symbol::C2);
    let h_coeff = &MPoly::var(Symbol::Tau) - &c1;
    // u[i] H^i + w[i] H^i L
    let mut u = vec![MPoly::zero(); len];
    let mut w = vec![MPoly::zero(); len];
    u[0] = MPoly::one();
    for _ in 0..=n {
        let mut nu = vec![MPoly::zero(); len];
        let mut nw = vec![MPoly::zero(); len];
        for i in 0..len {
            // times (tau - c1) H
            bump(&mut nu, i + 1, &u[i] * &h_coeff);
            bump(&mut nw, i + 1, &w[i] * &h_coeff);
            // times 2L, with L^2 = c1 H L - c2 H^2
            bump(&mut nw, i, u[i].scale(&2.into()));
            bump(&mut nw, i + 1, (&w[i] * &c1).scale(&2.into()));
            bump(&mut nu, i + 2, (&w[i] * &c2).scale(&(-2).into()));
        }
        u = nu;
        w = nw;
    }
    let paired = w[n as usize].mul_monomial(&Monomial::var(Symbol::D));
    residual_in_delta(&paired)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dense_values() {
        let t = MPoly::var(Symbol::Tau);
        assert_eq!(nef_power_dense(2).unwrap(), t.pow(2).scale(&3.into()) + MPoly::var(Symbol::Delta));
        assert!(nef_power_dense(1).is_err());
    }
}
