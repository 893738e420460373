//! Exact scalars and polynomials: rationals, multivariate polynomials over the
//! fixed symbol table, monomial-denominator rational functions, and integer
//! univariate polynomials with rational-root and Sturm machinery.

mod intpoly;
mod mpoly;
mod rat;
mod ratfn;

pub use intpoly::{IntPoly, RootCounter, RootInterval, SturmChain};
pub use mpoly::{MPoly, Monomial, Symbol, NSYM};
pub use rat::Rat;
pub use ratfn::{RatFn, DENOMINATOR_SYMBOLS};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol {0} may not appear in a denominator")]
    ForbiddenDenominator(String),
    #[error("divisor is not a single term")]
    NonMonomialDivisor,
    #[error("cannot substitute {0}: it occurs in the denominator")]
    SubstituteInDenominator(String),
    #[error("indeterminate roots")]
    IndeterminateRoots,
    #[error("no positive real root")]
    NoPositiveRoot,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
}

/// Extended Euclid: `(g, alpha, beta)` with `alpha*x + beta*y = g = gcd(x, y) > 0`.
pub fn ext_gcd(x: &BigInt, y: &BigInt) -> Result<(BigInt, BigInt, BigInt), AlgebraError> {
    if x.is_zero() && y.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    Ok(ext_gcd_rec(x, y))
}

fn ext_gcd_rec(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    if y.is_zero() {
        let unit = if x.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
        return (x.abs(), unit, BigInt::zero());
    }
    // truncated division, as in the classical recursion
    let (q, r) = x.div_rem(y);
    let (g, a, b) = ext_gcd_rec(y, &r);
    let beta = &a - &q * &b;
    (g, b, beta)
}

/// Convenience wrapper over machine integers.
pub fn ext_gcd_i64(x: i64, y: i64) -> Result<(i64, i64, i64), AlgebraError> {
    use num_traits::ToPrimitive;
    let (g, a, b) = ext_gcd(&BigInt::from(x), &BigInt::from(y))?;
    Ok((g.to_i64().unwrap(), a.to_i64().unwrap(), b.to_i64().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bezout_examples() {
        assert_eq!(ext_gcd_i64(3, -2).unwrap(), (1, 1, 1));
        let (g, a, b) = ext_gcd_i64(4, -1).unwrap();
        assert_eq!(g, 1);
        assert_eq!(4 * a - b, 1);
        assert_eq!(ext_gcd_i64(4, -2).unwrap().0, 2);
        assert_eq!(ext_gcd_i64(0, 0), Err(AlgebraError::GcdOfZeros));
        assert_eq!(ext_gcd_i64(0, -5).unwrap().0, 5);
    }

    proptest! {
        #[test]
        fn bezout_identity_holds(x in -10_000i64..10_000, y in -10_000i64..10_000) {
            prop_assume!(x != 0 || y != 0);
            let (g, a, b) = ext_gcd_i64(x, y).unwrap();
            prop_assert!(g > 0);
            prop_assert_eq!(a * x + b * y, g);
            prop_assert_eq!(x % g, 0);
            prop_assert_eq!(y % g, 0);
        }

        #[test]
        fn rational_field_round_trips(an in -1000i64..1000, ad in 1i64..1000, bn in -1000i64..1000, bd in 1i64..1000) {
            let x = Rat::new(an, ad).unwrap();
            let y = Rat::new(bn, bd).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x);
            }
        }
    }
}
