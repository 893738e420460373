use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, MPoly, Monomial, Rat, Symbol};

/// Symbols allowed to appear in a denominator.
pub const DENOMINATOR_SYMBOLS: [Symbol; 3] = [Symbol::Mu, Symbol::Mup, Symbol::E];

/// A rational function whose denominator is a monomial in `mu`, `mup`, `e`.
///
/// Kept in lowest terms: no denominator variable divides every numerator term,
/// so structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFn {
    num: MPoly,
    den: Monomial,
}

fn check_den(den: &Monomial) -> Result<(), AlgebraError> {
    match den.support().find(|(s, _)| !DENOMINATOR_SYMBOLS.contains(s)) {
        Some((s, _)) => Err(AlgebraError::ForbiddenDenominator(s.name().to_string())),
        None => Ok(()),
    }
}

impl RatFn {
    pub fn new(num: MPoly, den: Monomial) -> Result<Self, AlgebraError> {
        check_den(&den)?;
        Ok(RatFn { num, den }.reduced())
    }

    pub fn poly(num: MPoly) -> Self {
        RatFn { num, den: Monomial::one() }
    }

    pub fn zero() -> Self {
        RatFn::poly(MPoly::zero())
    }

    pub fn one() -> Self {
        RatFn::poly(MPoly::one())
    }

    pub fn constant(c: impl Into<Rat>) -> Self {
        RatFn::poly(MPoly::constant(c))
    }

    pub fn var(sym: Symbol) -> Self {
        RatFn::poly(MPoly::var(sym))
    }

    /// `1 / sym^exp` for a denominator symbol.
    pub fn inv_var(sym: Symbol) -> Result<Self, AlgebraError> {
        RatFn::new(MPoly::one(), Monomial::var(sym))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &Monomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&MPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_poly().and_then(MPoly::as_constant)
    }

    fn reduced(self) -> Self {
        if self.num.is_zero() {
            return RatFn::zero();
        }
        let common = self.num.monomial_content().gcd(&self.den);
        if common.is_one() {
            return self;
        }
        RatFn {
            num: self.num.div_monomial(&common).expect("content divides"),
            den: self.den.div(&common).expect("gcd divides"),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn { num: self.num.scale(c), den: self.den }.reduced()
    }

    /// Division by a rational function whose numerator is a single term.
    pub fn div(&self, rhs: &RatFn) -> Result<RatFn, AlgebraError> {
        let (m, c) = rhs.num.as_term().ok_or(AlgebraError::NonMonomialDivisor)?;
        let den = self.den.mul(&m);
        check_den(&den)?;
        let num = self.num.mul_monomial(&rhs.den).scale(&c.recip()?);
        Ok(RatFn { num, den }.reduced())
    }

    pub fn pow(&self, exp: u32) -> RatFn {
        (0..exp).fold(RatFn::one(), |acc, _| &acc * self)
    }

    /// Replaces `sym` by `value`; `sym` may not occur in the denominator.
    pub fn substitute(&self, sym: Symbol, value: &RatFn) -> Result<RatFn, AlgebraError> {
        if self.den.exp(sym) > 0 {
            return Err(AlgebraError::SubstituteInDenominator(sym.name().to_string()));
        }
        let coeffs = self.num.coefficients_in(sym);
        let top = coeffs.len() as u32 - 1;
        let mut num = MPoly::zero();
        for (k, ck) in coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let k = k as u32;
            let vd_pow = (0..top - k).fold(Monomial::one(), |acc, _| acc.mul(&value.den));
            num = num + (ck * &value.num.pow(k)).mul_monomial(&vd_pow);
        }
        let vd_top = (0..top).fold(Monomial::one(), |acc, _| acc.mul(&value.den));
        RatFn::new(num, self.den.mul(&vd_top))
    }

    pub fn eval_partial(&self, values: &[(Symbol, Rat)]) -> Result<RatFn, AlgebraError> {
        let mut out = self.clone();
        for (s, v) in values {
            if out.den.exp(*s) > 0 {
                // denominator symbols evaluate to a rational scale factor
                let e = out.den.exp(*s) as u32;
                let den = out.den.with_exp(*s, 0);
                let f = v.pow(e).recip()?;
                out = RatFn { num: out.num.scale(&f), den };
            }
            out = out.substitute(*s, &RatFn::constant(v.clone()))?;
        }
        Ok(out.reduced())
    }

    /// `self * den = num` with denominators cleared; used by identity checks.
    pub fn cleared(&self, den: &Monomial) -> Option<MPoly> {
        let extra = den.div(&self.den)?;
        Some(self.num.mul_monomial(&extra))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        let den = self.den.lcm(&rhs.den);
        let l = self.num.mul_monomial(&den.div(&self.den).unwrap());
        let r = rhs.num.mul_monomial(&den.div(&rhs.den).unwrap());
        RatFn { num: l + r, den }.reduced()
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        &self - &rhs
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn { num: &self.num * &rhs.num, den: self.den.mul(&rhs.den) }.reduced()
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        &self * &rhs
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::poly(p)
    }
}

impl From<Symbol> for RatFn {
    fn from(s: Symbol) -> Self {
        RatFn::var(s)
    }
}

impl From<i64> for RatFn {
    fn from(c: i64) -> Self {
        RatFn::constant(c)
    }
}

impl From<Rat> for RatFn {
    fn from(c: Rat) -> Self {
        RatFn::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: Symbol) -> RatFn {
        RatFn::var(s)
    }

    #[test]
    fn lowest_terms_make_equality_structural() {
        let mu = v(Symbol::Mu);
        let x = (&v(Symbol::A) * &mu).div(&(&mu * &mu)).unwrap();
        let y = v(Symbol::A).div(&mu).unwrap();
        assert_eq!(x, y);
        assert_eq!(y.den(), &Monomial::var(Symbol::Mu));
    }

    #[test]
    fn sums_share_denominators() {
        let inv_mu = RatFn::inv_var(Symbol::Mu).unwrap();
        let inv_e = RatFn::inv_var(Symbol::E).unwrap();
        let s = &inv_mu + &inv_e;
        // (e + mu)/(mu e)
        assert_eq!(s.den(), &Monomial::var(Symbol::Mu).mul(&Monomial::var(Symbol::E)));
        assert!((&s - &inv_mu - inv_e).is_zero());
    }

    #[test]
    fn substitution_with_denominators() {
        // iX -> tau + 2/mu turns iX*mu - 2 into tau*mu
        let ix_mu = &(&v(Symbol::IX) * &v(Symbol::Mu)) - &RatFn::from(2);
        let ix = &v(Symbol::Tau) + &RatFn::from(2).div(&v(Symbol::Mu)).unwrap();
        let out = ix_mu.substitute(Symbol::IX, &ix).unwrap();
        assert_eq!(out, &v(Symbol::Tau) * &v(Symbol::Mu));
    }

    #[test]
    fn forbidden_denominators() {
        assert!(RatFn::one().div(&v(Symbol::A)).is_err());
        assert!(RatFn::one().div(&(&v(Symbol::Mu) + &RatFn::one())).is_err());
    }

    #[test]
    fn evaluation_through_denominator() {
        let f = RatFn::from(3).div(&(&v(Symbol::Mu) * &v(Symbol::E))).unwrap();
        let at = f.eval_partial(&[(Symbol::Mu, Rat::from(2)), (Symbol::E, Rat::from(3))]).unwrap();
        assert_eq!(at.as_constant(), Some(Rat::new(1, 2).unwrap()));
    }
}
