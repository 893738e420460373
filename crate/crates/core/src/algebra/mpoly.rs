use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{AlgebraError, Rat};

/// The fixed, ordered symbol table shared by every polynomial.
///
/// `S` stands for the square root of `-Delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    C1,
    C2,
    C1p,
    C2p,
    Tau,
    Taup,
    Delta,
    Mu,
    Mup,
    E,
    IX,
    IY,
    D,
    S,
    A,
    B,
    G,
}

pub const NSYM: usize = 17;

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::C1,
        Symbol::C2,
        Symbol::C1p,
        Symbol::C2p,
        Symbol::Tau,
        Symbol::Taup,
        Symbol::Delta,
        Symbol::Mu,
        Symbol::Mup,
        Symbol::E,
        Symbol::IX,
        Symbol::IY,
        Symbol::D,
        Symbol::S,
        Symbol::A,
        Symbol::B,
        Symbol::G,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
            Symbol::C1p => "c1p",
            Symbol::C2p => "c2p",
            Symbol::Tau => "tau",
            Symbol::Taup => "taup",
            Symbol::Delta => "Delta",
            Symbol::Mu => "mu",
            Symbol::Mup => "mup",
            Symbol::E => "e",
            Symbol::IX => "iX",
            Symbol::IY => "iY",
            Symbol::D => "d",
            Symbol::S => "s",
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::G => "g",
        }
    }
}

impl FromStr for Symbol {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL
            .iter()
            .copied()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| AlgebraError::UnknownSymbol(s.to_string()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the symbol table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([u16; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(sym: Symbol) -> Self {
        Self::power(sym, 1)
    }

    pub fn power(sym: Symbol, exp: u16) -> Self {
        let mut m = Self::one();
        m.0[sym.index()] = exp;
        m
    }

    pub fn exp(&self, sym: Symbol) -> u16 {
        self.0[sym.index()]
    }

    pub fn with_exp(mut self, sym: Symbol, exp: u16) -> Self {
        self.0[sym.index()] = exp;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = o.checked_sub(*e)?;
        }
        Some(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).min(*e);
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).max(*e);
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = (Symbol, u16)> + '_ {
        Symbol::ALL.iter().copied().filter(|&s| self.exp(s) > 0).map(|s| (s, self.exp(s)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (sym, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with rational coefficients over [`Symbol`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: impl Into<Rat>) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(sym: Symbol) -> Self {
        MPoly::term(Rat::one(), Monomial::var(sym))
    }

    /// Looks the symbol up by name; unknown names are rejected.
    pub fn named(name: &str) -> Result<Self, AlgebraError> {
        Ok(MPoly::var(name.parse()?))
    }

    pub fn term(c: impl Into<Rat>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(Monomial, Rat)> {
        (self.terms.len() == 1).then(|| {
            let (m, c) = self.terms.iter().next().unwrap();
            (*m, c.clone())
        })
    }

    pub fn degree_in(&self, sym: Symbol) -> u16 {
        self.terms.keys().map(|m| m.exp(sym)).max().unwrap_or(0)
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.degree_in(sym) > 0
    }

    /// Gcd of all monomials appearing (the zero polynomial gives 1).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, k)| (m.mul(mono), k.clone())).collect() }
    }

    /// Exact division by a monomial; fails if some term is not divisible.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            terms.insert(m.div(mono)?, k.clone());
        }
        Some(MPoly { terms })
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `sym` by `value` everywhere.
    pub fn substitute(&self, sym: Symbol, value: &MPoly) -> MPoly {
        let max = self.degree_in(sym) as u32;
        let powers: Vec<MPoly> =
            std::iter::successors(Some(MPoly::one()), |p| Some(p * value)).take(max as usize + 1).collect();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(sym) as usize;
            let rest = m.with_exp(sym, 0);
            let part = powers[k].mul_monomial(&rest).scale(c);
            out = out + part;
        }
        out
    }

    /// Evaluates every symbol in `values`; the result may still contain other symbols.
    pub fn eval_partial(&self, values: &[(Symbol, Rat)]) -> MPoly {
        values.iter().fold(self.clone(), |p, (s, v)| p.substitute(*s, &MPoly::constant(v.clone())))
    }

    /// Coefficients of `self` viewed as a polynomial in `sym`, ascending.
    pub fn coefficients_in(&self, sym: Symbol) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(sym) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(sym) as usize;
            out[k].add_term(m.with_exp(sym, 0), c.clone());
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then(a.cmp(b)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from(-1))
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from(-1))
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

impl From<Symbol> for MPoly {
    fn from(s: Symbol) -> Self {
        MPoly::var(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mpoly() -> impl Strategy<Value = MPoly> {
        let term = (-5i64..=5, 1i64..=4, proptest::collection::vec((0usize..NSYM, 0u16..3), 0..3));
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            terms.into_iter().fold(MPoly::zero(), |acc, (n, d, exps)| {
                let m = exps.into_iter().fold(Monomial::one(), |m, (i, e)| m.mul(&Monomial::power(Symbol::ALL[i], e)));
                acc + MPoly::term(Rat::new(n, d).unwrap(), m)
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_mpoly(), q in arb_mpoly(), r in arb_mpoly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn no_zero_coefficients_stored(p in arb_mpoly(), q in arb_mpoly()) {
            let s = &(&p * &q) - &(&q * &p);
            prop_assert!(s.is_zero());
            prop_assert!((&p * &q).terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        assert!(MPoly::named("tau").is_ok());
        assert!(matches!(MPoly::named("tua"), Err(AlgebraError::UnknownSymbol(_))));
    }

    #[test]
    fn substitution() {
        let c1 = MPoly::var(Symbol::C1);
        let c2 = MPoly::var(Symbol::C2);
        let delta = MPoly::var(Symbol::Delta);
        let disc = &(&c1 * &c1) - &c2.scale(&Rat::from(4));
        // c2 = (c1^2 - Delta)/4 turns c1^2 - 4 c2 into Delta
        let c2_val = (&(&c1 * &c1) - &delta).scale(&Rat::new(1, 4).unwrap());
        assert_eq!(disc.substitute(Symbol::C2, &c2_val), delta);
    }

    #[test]
    fn display_is_readable() {
        let p = MPoly::var(Symbol::Tau).pow(2).scale(&Rat::from(3)) + MPoly::var(Symbol::Delta);
        assert_eq!(p.to_string(), "3*tau^2 + Delta");
    }
}
