use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rat};

/// Univariate polynomial with integer coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| &(&acc * x) + &Rat::from(c.clone()))
    }

    /// Sign of `p(x)` via the homogenised integer evaluation `den^deg * p(num/den)`.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let (a, b) = (x.numer(), x.denom());
        // Horner: acc_k = acc_{k+1} * a + c_k * b^(n-k)
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        sign(&acc)
    }

    fn sign_at_neg_infinity(&self) -> i8 {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(d)) => {
                let s = sign(lc);
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    fn sign_at_pos_infinity(&self) -> i8 {
        self.leading().map(sign).unwrap_or(0)
    }

    /// Pseudo-remainder `|lc(g)|^(deg f - deg g + 1) * f mod g`; the positive scale keeps signs.
    fn positive_prem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let Some(n) = self.degree() else {
            return IntPoly::zero();
        };
        if n < dd {
            return self.clone();
        }
        let lc = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        for top in (dd..=n).rev() {
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[top - dd + i] -= &t * dc;
            }
        }
        let out = IntPoly::new(r);
        if lc.is_negative() && (n - dd + 1) % 2 == 1 {
            -out
        } else {
            out
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact quotient over the rationals, returned primitive with positive leading coefficient.
    fn exact_quotient_primitive(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let n = self.degree().expect("nonzero dividend");
        let mut rem: Vec<Rat> = self.coeffs.iter().cloned().map(Rat::from).collect();
        let lc = Rat::from(divisor.leading().unwrap().clone());
        let mut q = vec![Rat::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] / &lc;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * &Rat::from(dc.clone()));
            }
            q[k] = c;
        }
        debug_assert!(rem.iter().all(Rat::is_zero), "division was not exact");
        let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = q.iter().map(|c| (c.numer() * &l) / c.denom()).collect();
        let p = IntPoly::new(ints).primitive();
        if p.leading().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// Gcd up to a constant factor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            -a
        } else {
            a
        }
    }

    /// The square-free part `p / gcd(p, p')`, primitive with positive leading coefficient.
    ///
    /// A coprimality certificate modulo a prime short-circuits the integer gcd.
    pub fn square_free(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 || self.square_free_mod_prime() {
            let p = self.primitive();
            return if p.leading().is_some_and(|c| c.is_negative()) { -p } else { p };
        }
        let g = self.gcd(&self.derivative());
        self.exact_quotient_primitive(&g)
    }

    /// True when `gcd(p, p') = 1` modulo some prime not dividing the leading
    /// coefficient, which proves `p` square-free over the rationals.
    pub fn square_free_mod_prime(&self) -> bool {
        const PRIMES: [u64; 4] = [2_147_483_647, 1_000_000_007, 998_244_353, 754_974_721];
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return true;
        }
        PRIMES.iter().any(|&q| {
            let qb = BigInt::from(q);
            let reduce = |c: &BigInt| -> u64 {
                let r = c.mod_floor(&qb);
                u64::try_from(r).expect("reduced below modulus")
            };
            let f: Vec<u64> = self.coeffs.iter().map(reduce).collect();
            if f[n] == 0 {
                return false;
            }
            let df: Vec<u64> = (1..=n).map(|i| f[i] * (i as u64 % q) % q).collect();
            gf_gcd_degree(f, df, q) == Some(0)
        })
    }

    /// All rational roots, by the rational root theorem and exact substitution.
    pub fn rational_roots(&self) -> Result<BTreeSet<Rat>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::IndeterminateRoots);
        }
        let mut roots = BTreeSet::new();
        // strip the factor x^k
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            roots.insert(Rat::zero());
        }
        let p = IntPoly::new(self.coeffs[k..].to_vec());
        for cand in p.root_candidates() {
            if p.sign_at(&cand) == 0 {
                roots.insert(cand);
            }
        }
        Ok(roots)
    }

    /// Rational-root-theorem candidates `±r/s`, `r | a_0`, `s | a_n`, assuming `a_0 != 0`.
    pub fn root_candidates(&self) -> BTreeSet<Rat> {
        let mut out = BTreeSet::new();
        let (Some(a0), Some(an)) = (self.coeffs.first(), self.leading()) else {
            return out;
        };
        if a0.is_zero() {
            return out;
        }
        let nums = divisors(&a0.abs());
        let dens = divisors(&an.abs());
        for r in &nums {
            for s in &dens {
                let q = Rat::new(r.clone(), s.clone()).expect("nonzero divisor");
                out.insert(-&q);
                out.insert(q);
            }
        }
        out
    }

    /// Sturm chain of the square-free part.
    pub fn sturm_chain(&self) -> SturmChain {
        self.square_free().sturm_chain_of_square_free()
    }

    fn sturm_chain_of_square_free(&self) -> SturmChain {
        let p0 = self.clone();
        let mut chain = vec![p0.clone()];
        let p1 = p0.derivative().primitive();
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].positive_prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive());
        }
        SturmChain { chain }
    }

    /// Interval `(lo, hi]` holding exactly one root of `self`, its smallest positive one,
    /// located with Sturm counts.
    pub fn isolate_smallest_positive_root(&self) -> Result<RootInterval, AlgebraError> {
        self.isolate_smallest_positive_root_by(RootCounter::Sturm)
    }

    /// As [`IntPoly::isolate_smallest_positive_root`] with a chosen root counter.
    ///
    /// The interval is refined by sign bisection until it holds at most one
    /// rational-root candidate, or until its width drops below `1e-12`.
    pub fn isolate_smallest_positive_root_by(&self, counter: RootCounter) -> Result<RootInterval, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::IndeterminateRoots);
        }
        // roots at zero are not positive
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let p = IntPoly::new(self.coeffs[k..].to_vec());
        if p.degree() == Some(0) {
            return Err(AlgebraError::NoPositiveRoot);
        }
        let sf = p.square_free();
        let bound = Rat::from(sf.root_bound());
        let first = match counter {
            RootCounter::Sturm => {
                let chain = sf.sturm_chain_of_square_free();
                let count = |a: &Rat, b: &Rat| {
                    let c = chain.count_between(a, b);
                    if sf.sign_at(b) == 0 {
                        c.saturating_sub(1)
                    } else {
                        c
                    }
                };
                smallest_root_in(&sf, &count, &Rat::zero(), &bound)
            }
            RootCounter::Descartes => {
                let count = |a: &Rat, b: &Rat| sf.descartes_bound(a, b);
                sf.descartes_shortcut(&count, &bound).or_else(|| smallest_root_in(&sf, &count, &Rat::zero(), &bound))
            }
        };
        let mut iv = first.ok_or(AlgebraError::NoPositiveRoot)?;

        let candidates: Vec<Rat> = p.root_candidates().into_iter().filter(Rat::is_positive).collect();
        let cap = Rat::new(1, 1_000_000_000_000i64).unwrap();
        let lo_sign = sf.sign_at(&iv.lo);
        debug_assert!(lo_sign != 0);
        loop {
            let inside = candidates.iter().filter(|c| iv.contains(c)).count();
            if inside <= 1 || iv.width() < cap {
                return Ok(iv);
            }
            let mid = iv.lo.midpoint(&iv.hi);
            let s = sf.sign_at(&mid);
            if s == 0 || s != lo_sign {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
    }

    /// Upper bound for the absolute values of all complex roots (Fujiwara), as an integer.
    pub fn root_bound(&self) -> BigInt {
        let n = self.degree().expect("nonzero");
        let lc = self.coeffs[n].abs();
        let mut best = BigInt::one();
        for k in 1..=n {
            let c = self.coeffs[n - k].abs();
            if c.is_zero() {
                continue;
            }
            // ceil((c / lc)^(1/k)), halved for the constant term as Fujiwara allows
            let ratio = if k == n { (&c + &lc + &lc - 1u32) / (&lc + &lc) } else { (&c + &lc - 1u32) / &lc };
            let mut r = ratio.nth_root(k as u32);
            if num_traits::pow(r.clone(), k) < ratio {
                r += 1;
            }
            best = best.max(r);
        }
        best * 2 + 1
    }

    /// Sign variations of the transformed polynomial whose positive roots
    /// correspond to the roots of `self` in the open interval `(a, b)`.
    ///
    /// Zero or one variation is an exact root count (Descartes); more is an upper bound.
    pub fn descartes_bound(&self, a: &Rat, b: &Rat) -> usize {
        let n = self.degree().expect("nonzero");
        let w = b - a;
        let den = a.denom().lcm(w.denom());
        let shift = a.numer() * (&den / a.denom());
        let width = w.numer() * (&den / w.denom());
        // den^n p(y / den)
        let mut t: Vec<BigInt> = Vec::with_capacity(n + 1);
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            t.push(c * &dpow);
            dpow *= &den;
        }
        t.reverse();
        // y = shift + width * x
        taylor_shift(&mut t, &shift);
        let mut wpow = BigInt::one();
        for c in t.iter_mut() {
            *c *= &wpow;
            wpow *= &width;
        }
        // x -> 1 / (1 + x)
        t.reverse();
        taylor_shift(&mut t, &BigInt::one());
        SturmChain::variations(t.iter().map(sign))
    }

    /// Guesses a narrow window `(0, w)` by bisecting on `log2 w` and accepts it
    /// only if the count certifies exactly one root there.
    fn descartes_shortcut(&self, count: &dyn Fn(&Rat, &Rat) -> usize, bound: &Rat) -> Option<RootInterval> {
        let zero = Rat::zero();
        let lower = self.reversed_root_lower_bound();
        let mut steps = 0u32;
        let mut w = bound.clone();
        while w > lower {
            w = &w / &Rat::from(2);
            steps += 1;
        }
        // largest k with at least one root in (0, bound / 2^k)
        let at = |k: u32| bound / &Rat::from(BigInt::one() << k);
        let (mut lo, mut hi) = (0u32, steps);
        if count(&zero, bound) == 0 {
            return None;
        }
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if count(&zero, &at(mid)) >= 1 {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let w = at(lo);
        smallest_root_in(self, count, &zero, &w)
    }

    /// A positive lower bound for the absolute values of the nonzero roots.
    fn reversed_root_lower_bound(&self) -> Rat {
        let rev = IntPoly::new(self.coeffs.iter().rev().cloned().collect());
        Rat::one() / Rat::from(rev.root_bound())
    }
}

/// How real roots are counted while isolating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootCounter {
    /// Exact counts from a Sturm sequence.
    Sturm,
    /// Descartes' rule of signs on Moebius-transformed polynomials (Vincent-Collins-Akritas).
    Descartes,
}

/// Smallest root of square-free `p` in the open interval `(a, b)`, with `p(a) != 0`.
///
/// `count` must return zero only when there is no root and one only when
/// there is exactly one.
fn smallest_root_in(p: &IntPoly, count: &dyn Fn(&Rat, &Rat) -> usize, a: &Rat, b: &Rat) -> Option<RootInterval> {
    match count(a, b) {
        0 => None,
        1 => {
            let sa = p.sign_at(a);
            let (mut lo, mut hi) = (a.clone(), b.clone());
            // b may itself be a root; pull hi inside
            while p.sign_at(&hi) == 0 {
                let mid = lo.midpoint(&hi);
                let s = p.sign_at(&mid);
                if s == 0 || s != sa {
                    hi = mid;
                    if s == 0 {
                        break;
                    }
                } else {
                    lo = mid;
                }
            }
            Some(RootInterval { lo, hi })
        }
        _ => {
            let mid = a.midpoint(b);
            if let Some(iv) = smallest_root_in(p, count, a, &mid) {
                return Some(iv);
            }
            if p.sign_at(&mid) == 0 {
                return Some(RootInterval { lo: a.clone(), hi: mid });
            }
            smallest_root_in(p, count, &mid, b)
        }
    }
}

/// In-place `p(x) -> p(x + s)`.
fn taylor_shift(coeffs: &mut [BigInt], s: &BigInt) {
    if s.is_zero() {
        return;
    }
    let n = coeffs.len();
    let unit = s.is_one();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let hi = coeffs[j + 1].clone();
            if unit {
                coeffs[j] += hi;
            } else {
                coeffs[j] += hi * s;
            }
        }
    }
}

/// Degree of `gcd(f, g)` over GF(q), `None` when both vanish.
fn gf_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>, q: u64) -> Option<usize> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let inv = |x: u64| -> u64 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (x % q, q - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        acc
    };
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        // f <- f mod g
        let lg = inv(*g.last().unwrap());
        while f.len() >= g.len() {
            let shift = f.len() - g.len();
            let factor = f.last().unwrap() * lg % q;
            for (i, gc) in g.iter().enumerate() {
                f[shift + i] = (f[shift + i] + q - factor * gc % q) % q;
            }
            trim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().checked_sub(1)
}

/// Open-closed interval `(lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn contains(&self, x: &Rat) -> bool {
        *x > self.lo && *x <= self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_between(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        let at_neg = Self::variations(self.chain.iter().map(IntPoly::sign_at_neg_infinity));
        let at_pos = Self::variations(self.chain.iter().map(IntPoly::sign_at_pos_infinity));
        at_neg.saturating_sub(at_pos)
    }

    /// Number of distinct roots in `(0, +inf)`.
    pub fn count_positive(&self) -> usize {
        let at_zero = self.variations_at(&Rat::zero());
        let at_pos = Self::variations(self.chain.iter().map(IntPoly::sign_at_pos_infinity));
        at_zero.saturating_sub(at_pos)
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl std::ops::Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{abs}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{abs}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
