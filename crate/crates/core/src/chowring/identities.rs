//! The ring identities behind the classification, each checked symbolically.

use num_integer::binomial;

use super::{oracle, ChowClass, ChowError, Ring};
use crate::algebra::{MPoly, Monomial, Rat, RatFn, Symbol};

fn v(s: Symbol) -> RatFn {
    RatFn::var(s)
}

fn frac(num: RatFn, den: &RatFn) -> RatFn {
    num.div(den).expect("denominator is a product of mu, mu', e")
}

/// `K_pi = -2L + c1 H` in the fibered ring.
pub fn relative_canonical(ring: &Ring) -> ChowClass {
    &ChowClass::monomial(ring, (1, 0), v(Symbol::C1)) - &ChowClass::monomial(ring, (0, 1), 2)
}

/// The three consistency checks on `K_pi` for one fibered ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalChecks {
    /// `K_pi . f`, expected `-2`.
    pub fiber_degree: RatFn,
    /// `K_pi^2 - (c1^2 - 4 c2) H^2`, expected zero.
    pub square_defect: ChowClass,
    /// `int -K_pi . H^n`, expected `2d`.
    pub anticanonical_top: RatFn,
}

impl CanonicalChecks {
    pub fn all_hold(&self) -> bool {
        self.fiber_degree == RatFn::from(-2)
            && self.square_defect.is_zero()
            && self.anticanonical_top == RatFn::poly(MPoly::term(2, Monomial::var(Symbol::D)))
    }
}

pub fn canonical_checks(ring: &Ring) -> Result<CanonicalChecks, ChowError> {
    let Ring::Fibered { n, .. } = ring else {
        return Err(ChowError::NoPairing);
    };
    let k = relative_canonical(ring);
    let disc = &(&v(Symbol::C1) * &v(Symbol::C1)) - &(&RatFn::from(4) * &v(Symbol::C2));
    let square_defect = &(&k * &k) - &ChowClass::monomial(ring, (2, 0), disc);
    let top = ChowClass::x(ring).pow(*n)?;
    Ok(CanonicalChecks {
        fiber_degree: k.fiber_degree()?,
        square_defect: square_defect.normalize(),
        anticanonical_top: (&(-&k) * &top).integrate()?,
    })
}

/// `K_pi^2 = (c1^2 - 4 c2) H^2` in the fibered ring of dimension `n`.
pub fn verify_kpi_square(n: u32) -> Result<bool, ChowError> {
    verify_kpi_square_in(&Ring::fibered(n)?)
}

pub fn verify_kpi_square_in(ring: &Ring) -> Result<bool, ChowError> {
    Ok(canonical_checks(ring)?.square_defect.is_zero())
}

/// `c2 = (c1^2 - Delta) / 4`, the substitution that turns `c1, c2` into `Delta`.
fn c2_from_delta() -> MPoly {
    let c1 = MPoly::var(Symbol::C1);
    (&(&c1 * &c1) - &MPoly::var(Symbol::Delta)).scale(&Rat::new(1, 4).expect("nonzero"))
}

/// Divides the paired top power by `2d` and rewrites it in `tau` and `Delta`.
pub(crate) fn residual_in_delta(paired: &MPoly) -> Result<MPoly, ChowError> {
    let d = Monomial::var(Symbol::D);
    let reduced = paired
        .div_monomial(&d)
        .ok_or_else(|| ChowError::ResidualDependence("d".into()))?
        .scale(&Rat::new(1, 2).expect("nonzero"));
    let out = reduced.substitute(Symbol::C2, &c2_from_delta());
    for s in [Symbol::C1, Symbol::C2, Symbol::D] {
        if out.contains(s) {
            return Err(ChowError::ResidualDependence(s.name().into()));
        }
    }
    Ok(out)
}

/// `int (-K_pi + tau H)^(n+1) / (2d)` as a polynomial in `tau` and `Delta`,
/// expanded binomially in powers of `-K_pi`.
pub fn nef_power_polynomial(n: u32) -> Result<MPoly, ChowError> {
    nef_power_polynomial_in(&Ring::fibered(n)?)
}

pub fn nef_power_polynomial_in(ring: &Ring) -> Result<MPoly, ChowError> {
    let Ring::Fibered { n, .. } = ring else {
        return Err(ChowError::NoPairing);
    };
    let anti = -&relative_canonical(ring);
    let h = ChowClass::x(ring);
    let mut total = ChowClass::zero(ring);
    let mut anti_pow = ChowClass::one(ring);
    for i in 0..=n + 1 {
        let rest = n + 1 - i;
        let c = RatFn::poly(MPoly::term(binomial(n + 1, i) as i64, Monomial::power(Symbol::Tau, rest as u16)));
        total = &total + &(&anti_pow * &h.pow(rest)?).scale(&c);
        anti_pow = &anti_pow * &anti;
    }
    let paired = total.integrate()?;
    let paired = paired.as_poly().ok_or_else(|| ChowError::ResidualDependence("a denominator".into()))?;
    residual_in_delta(paired)
}

/// `int (-K_pi + tau H)^n H / (2d)` in `tau` and `Delta`, used for the
/// degree ratio of the two bases.
pub fn nef_power_times_h(n: u32) -> Result<MPoly, ChowError> {
    let ring = Ring::fibered(n)?;
    let h = ChowClass::x(&ring);
    let nef = &(-&relative_canonical(&ring)) + &ChowClass::monomial(&ring, (1, 0), v(Symbol::Tau));
    let paired = (&nef.pow(n)? * &h).integrate()?;
    let paired = paired.as_poly().ok_or_else(|| ChowError::ResidualDependence("a denominator".into()))?;
    residual_in_delta(paired)
}

/// `sum over odd i <= n+1 of binom(n+1, i) tau^(n+1-i) Delta^((i-1)/2)`.
pub fn nef_power_closed_form(n: u32) -> MPoly {
    let mut out = MPoly::zero();
    for i in (1..=n + 1).step_by(2) {
        let mono =
            Monomial::power(Symbol::Tau, (n + 1 - i) as u16).mul(&Monomial::power(Symbol::Delta, ((i - 1) / 2) as u16));
        out = out + MPoly::term(binomial(n + 1, i) as i64, mono);
    }
    out
}

/// Binomial expansion, dense oracle and closed form all agree.
pub fn verify_nef_power(n: u32) -> Result<bool, ChowError> {
    verify_nef_power_in(&Ring::fibered(n)?)
}

pub fn verify_nef_power_in(ring: &Ring) -> Result<bool, ChowError> {
    let Ring::Fibered { n, .. } = ring else {
        return Err(ChowError::NoPairing);
    };
    let Ok(binomial_route) = nef_power_polynomial_in(ring) else {
        return Ok(false);
    };
    let dense = oracle::nef_power_dense(*n)?;
    Ok(binomial_route == dense && dense == nef_power_closed_form(*n))
}

/// Gaussian integer over `MPoly`: `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Gauss {
    re: MPoly,
    im: MPoly,
}

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }

    fn pow(&self, e: u32) -> Gauss {
        (0..e).fold(Gauss { re: MPoly::one(), im: MPoly::zero() }, |acc, _| acc.mul(self))
    }
}

/// `(tau + i s)^(n+1) - (tau - i s)^(n+1) = 2 i s P(tau, -s^2)` where `P` is
/// the nef-power polynomial.
pub fn verify_imaginary_form(n: u32) -> Result<bool, ChowError> {
    verify_imaginary_form_in(&Ring::fibered(n)?)
}

pub fn verify_imaginary_form_in(ring: &Ring) -> Result<bool, ChowError> {
    let Ring::Fibered { n, .. } = *ring else {
        return Err(ChowError::NoPairing);
    };
    let p = nef_power_polynomial_in(ring).unwrap_or_else(|_| MPoly::zero());
    let tau = MPoly::var(Symbol::Tau);
    let s = MPoly::var(Symbol::S);
    let plus = Gauss { re: tau.clone(), im: s.clone() }.pow(n + 1);
    let minus = Gauss { re: tau, im: -&s }.pow(n + 1);
    let lhs = Gauss { re: &plus.re - &minus.re, im: &plus.im - &minus.im };
    let s_sq = &s * &s;
    let rhs_im = (&s * &p.substitute(Symbol::Delta, &-&s_sq)).scale(&Rat::from(2));
    Ok(lhs.re.is_zero() && lhs.im == rhs_im && !p.is_zero())
}

/// Splitting type `(a, b) = (-1 + (c1 + iX) mu / 2, 1 + (c1 - iX) mu / 2)`.
pub fn splitting_type(ix: i64, mu: i64, c1: i64) -> Result<(i64, i64), ChowError> {
    if mu < 1 {
        return Err(ChowError::NonPositiveMu(mu));
    }
    if ((c1 + ix) * mu) % 2 != 0 {
        return Err(ChowError::NonIntegralSplitting);
    }
    Ok((-1 + (c1 + ix) * mu / 2, 1 + (c1 - ix) * mu / 2))
}

/// The splitting type as polynomials in `iX`, `mu`, `c1`.
pub fn splitting_type_symbolic() -> (RatFn, RatFn) {
    let half = RatFn::constant(Rat::new(1, 2).expect("nonzero"));
    let mu = v(Symbol::Mu);
    let sum = &(&v(Symbol::C1) + &v(Symbol::IX)) * &mu;
    let diff = &(&v(Symbol::C1) - &v(Symbol::IX)) * &mu;
    (&RatFn::from(-1) + &(&sum * &half), &RatFn::from(1) + &(&diff * &half))
}

/// `a - b` after `iX = tau + 2/mu`; expected `tau mu`.
pub fn splitting_gap_in_tau() -> Result<RatFn, ChowError> {
    let (a, b) = splitting_type_symbolic();
    let ix = &v(Symbol::Tau) + &frac(RatFn::from(2), &v(Symbol::Mu));
    Ok((&a - &b).substitute(Symbol::IX, &ix)?)
}

/// `c(L^) c(P)` with `c(L^) = 1 + (b/mu) H + (1/mu') H'` and
/// `c(P) = 1 + (a/mu) H - (1/mu') H'` in the formal pair ring.
pub fn total_chern_formal(a: &RatFn, b: &RatFn, mu: &RatFn, mup: &RatFn) -> Result<ChowClass, ChowError> {
    let r = Ring::FormalPair;
    let one = ChowClass::one(&r);
    let inv_mup = RatFn::one().div(mup)?;
    let line =
        &(&one + &ChowClass::monomial(&r, (1, 0), b.div(mu)?)) + &ChowClass::monomial(&r, (0, 1), inv_mup.clone());
    let quotient = &(&one + &ChowClass::monomial(&r, (1, 0), a.div(mu)?)) - &ChowClass::monomial(&r, (0, 1), inv_mup);
    line.mul(&quotient)
}

/// The expected total Chern class written out term by term.
pub fn total_chern_expected(a: &RatFn, b: &RatFn, mu: &RatFn, mup: &RatFn) -> Result<ChowClass, ChowError> {
    let r = Ring::FormalPair;
    let terms = [
        ((0, 0), RatFn::one()),
        ((1, 0), (a + b).div(mu)?),
        ((2, 0), (a * b).div(&(mu * mu))?),
        ((1, 1), (a - b).div(&(mu * mup))?),
        ((0, 2), -RatFn::one().div(&(mup * mup))?),
    ];
    Ok(terms.into_iter().fold(ChowClass::zero(&r), |acc, (e, c)| &acc + &ChowClass::monomial(&r, e, c)))
}

fn symbolic_abmm() -> (RatFn, RatFn, RatFn, RatFn) {
    (v(Symbol::A), v(Symbol::B), v(Symbol::Mu), v(Symbol::Mup))
}

pub fn verify_total_chern() -> Result<bool, ChowError> {
    let (a, b, mu, mup) = symbolic_abmm();
    Ok(total_chern_formal(&a, &b, &mu, &mup)? == total_chern_expected(&a, &b, &mu, &mup)?)
}

/// Result of the rank-two computation on the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceRelation {
    /// Codimension-two part of `c(M) c(zeta^* O(-H)/mu)` in free generators.
    pub codim2: ChowClass,
    /// `r` in `(zeta H)^2 = r zeta H zeta H'`.
    pub ratio: RatFn,
}

/// Derives the surface relation from the vanishing second Chern class.
pub fn surface_relation(mu: &RatFn, mup: &RatFn, e: &RatFn) -> Result<SurfaceRelation, ChowError> {
    let r = Ring::FormalPair;
    let one = ChowClass::one(&r);
    let m = &(&one + &ChowClass::monomial(&r, (1, 0), RatFn::one().div(mu)?))
        - &ChowClass::monomial(&r, (0, 1), e.div(mup)?);
    let other = &one - &ChowClass::monomial(&r, (1, 0), RatFn::one().div(mu)?);
    let codim2 = m.mul(&other)?.graded_part(2);
    let sq = codim2.coeff((2, 0));
    if !codim2.coeff((0, 2)).is_zero() || sq.is_zero() {
        return Err(ChowError::IdentityFailed("unexpected shape of the surface c2".into()));
    }
    // sq X^2 + mixed X Y = 0  =>  X^2 = -(mixed / sq) X Y
    let ratio = -(codim2.coeff((1, 1)).div(&sq)?);
    Ok(SurfaceRelation { codim2, ratio })
}

pub fn verify_lemma_e() -> Result<bool, ChowError> {
    let (mu, mup, e) = (v(Symbol::Mu), v(Symbol::Mup), v(Symbol::E));
    let rel = surface_relation(&mu, &mup, &e)?;
    let r = Ring::FormalPair;
    let expected = &ChowClass::monomial(&r, (2, 0), -RatFn::one().div(&(&mu * &mu))?)
        + &ChowClass::monomial(&r, (1, 1), e.div(&(&mu * &mup))?);
    Ok(rel.codim2 == expected && Ring::surface_pullback_with_ratio(rel.ratio) == Ring::surface_pullback())
}

/// `g H^2 + ((a-b)/(mu mu')) H H' - (1/mu'^2) H'^2`, the class that must
/// vanish, with `g` left as a symbol.
pub fn elimination_class(ring: &Ring, g: &RatFn) -> Result<ChowClass, ChowError> {
    let (a, b, mu, mup) = symbolic_abmm();
    Ok(&(&ChowClass::monomial(ring, (2, 0), g.clone())
        + &ChowClass::monomial(ring, (1, 1), (&a - &b).div(&(&mu * &mup))?))
        - &ChowClass::monomial(ring, (0, 2), RatFn::one().div(&(&mup * &mup))?))
}

/// Solves for `g` by pulling the elimination class back to the surface.
pub fn solve_g() -> Result<RatFn, ChowError> {
    let pulled = elimination_class(&Ring::surface_pullback(), &v(Symbol::G))?.normalize();
    let c = pulled.coeff((1, 1));
    let parts = c.num().coefficients_in(Symbol::G);
    if parts.len() != 2 {
        return Err(ChowError::Unsolvable);
    }
    let constant = RatFn::new(parts[0].clone(), *c.den())?;
    let linear = RatFn::new(parts[1].clone(), *c.den())?;
    if linear.is_zero() || linear.num().num_terms() != 1 {
        return Err(ChowError::Unsolvable);
    }
    Ok(-constant.div(&linear)?)
}

/// `c(pi^* E)` after the `H H'` and `H'^2` terms are traded for `H^2`.
pub fn total_chern_reduced() -> Result<ChowClass, ChowError> {
    let (a, b, mu, mup) = symbolic_abmm();
    let full = total_chern_formal(&a, &b, &mu, &mup)?;
    let rel = elimination_class(&Ring::FormalPair, &solve_g()?)?;
    Ok(&full - &rel)
}

/// `1 + ((a+b)/mu) H + (ab/mu^2 + (a-b)/(e mu^2)) H^2`.
pub fn total_chern_reduced_expected() -> Result<ChowClass, ChowError> {
    let (a, b, mu, _) = symbolic_abmm();
    let r = Ring::FormalPair;
    let mu2 = &mu * &mu;
    let c2 = &(&a * &b).div(&mu2)? + &(&a - &b).div(&(&v(Symbol::E) * &mu2))?;
    Ok(&(&ChowClass::one(&r) + &ChowClass::monomial(&r, (1, 0), (&a + &b).div(&mu)?))
        + &ChowClass::monomial(&r, (2, 0), c2))
}

pub fn verify_reduced_chern() -> Result<bool, ChowError> {
    Ok(total_chern_reduced()? == total_chern_reduced_expected()?)
}

/// `Delta = c1^2 - 4 c2` from the reduced Chern class, rewritten with
/// `a = b + tau mu`; checked against `tau^2 - 4 tau / (e mu)`.
pub fn discriminant_dual() -> Result<RatFn, ChowError> {
    let reduced = total_chern_reduced()?;
    let c1 = reduced.coeff((1, 0));
    let c2 = reduced.coeff((2, 0));
    let delta = &(&c1 * &c1) - &(&RatFn::from(4) * &c2);
    let gap = splitting_gap_in_tau()?;
    let tau_mu = &v(Symbol::Tau) * &v(Symbol::Mu);
    if gap != tau_mu {
        return Err(ChowError::IdentityFailed(format!("a - b = {gap}, expected tau*mu")));
    }
    let out = delta.substitute(Symbol::A, &(&v(Symbol::B) + &gap))?;
    let tau = v(Symbol::Tau);
    let expected = &(&tau * &tau) - &(&RatFn::from(4) * &tau).div(&(&v(Symbol::E) * &v(Symbol::Mu)))?;
    if out != expected {
        return Err(ChowError::IdentityFailed(format!("Delta = {out}, expected {expected}")));
    }
    Ok(out)
}

/// `Delta` at numeric `(tau, e, mu)` through the verified expression.
pub fn discriminant_value(tau: &Rat, e: &Rat, mu: &Rat) -> Result<Rat, ChowError> {
    let f = discriminant_dual()?;
    let at = f.eval_partial(&[(Symbol::Tau, tau.clone()), (Symbol::E, e.clone()), (Symbol::Mu, mu.clone())])?;
    at.as_constant().ok_or_else(|| ChowError::ResidualDependence(format!("{at}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowring::ChernWuSign;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn canonical_class_checks() {
        for n in 2..=6 {
            let checks = canonical_checks(&Ring::fibered_with_sign(n, ChernWuSign::Standard).unwrap()).unwrap();
            assert!(checks.all_hold(), "n = {n}: {checks:?}");
        }
        let bad = canonical_checks(&Ring::fibered_with_sign(3, ChernWuSign::Flipped).unwrap()).unwrap();
        assert!(!bad.all_hold());
        assert_eq!(bad.fiber_degree, RatFn::from(-2));
    }

    #[test]
    fn nef_power_examples() {
        let t = || MPoly::var(Symbol::Tau);
        let dl = || MPoly::var(Symbol::Delta);
        assert_eq!(nef_power_polynomial(2).unwrap(), t().pow(2).scale(&Rat::from(3)) + dl());
        assert_eq!(
            nef_power_polynomial(3).unwrap(),
            t().pow(3).scale(&Rat::from(4)) + (t() * dl()).scale(&Rat::from(4))
        );
        assert_eq!(
            nef_power_polynomial(5).unwrap(),
            t().pow(5).scale(&Rat::from(6))
                + (t().pow(3) * dl()).scale(&Rat::from(20))
                + (t() * dl().pow(2)).scale(&Rat::from(6))
        );
    }

    #[test]
    fn flipped_relation_breaks_the_nef_power() {
        let ring = Ring::fibered_with_sign(3, ChernWuSign::Flipped).unwrap();
        assert!(matches!(nef_power_polynomial_in(&ring), Err(ChowError::ResidualDependence(_))));
    }

    #[test]
    fn imaginary_forms() {
        for n in [2, 3, 8] {
            assert!(verify_imaginary_form(n).unwrap());
        }
    }

    #[test]
    fn splitting_types() {
        assert_eq!(splitting_type(3, 1, -1).unwrap(), (0, -1));
        assert_eq!(splitting_type(4, 1, 0).unwrap(), (1, -1));
        assert_eq!(splitting_type(5, 1, 0), Err(ChowError::NonIntegralSplitting));
        assert_eq!(splitting_type(3, 0, 1), Err(ChowError::NonPositiveMu(0)));
        assert_eq!(splitting_gap_in_tau().unwrap(), &RatFn::var(Symbol::Tau) * &RatFn::var(Symbol::Mu));
    }

    #[test]
    fn total_chern_examples() {
        assert!(verify_total_chern().unwrap());
        let (a, _, mu, mup) = symbolic_abmm();
        let same = total_chern_formal(&a, &a, &mu, &mup).unwrap();
        assert!(same.coeff((1, 1)).is_zero());
        let one = RatFn::one();
        let c = total_chern_formal(&one, &-&one, &one, &one).unwrap();
        let rg = Ring::FormalPair;
        let expected = &(&(&ChowClass::one(&rg) - &ChowClass::monomial(&rg, (2, 0), 1))
            + &ChowClass::monomial(&rg, (1, 1), 2))
            - &ChowClass::monomial(&rg, (0, 2), 1);
        assert_eq!(c, expected);
    }

    #[test]
    fn surface_relation_examples() {
        assert!(verify_lemma_e().unwrap());
        let one = RatFn::one();
        assert_eq!(surface_relation(&one, &one, &one).unwrap().ratio, one);
        let two = RatFn::from(2);
        assert_eq!(surface_relation(&two, &one, &one).unwrap().ratio, two);
    }

    #[test]
    fn g_and_reduced_chern() {
        let g = solve_g().unwrap();
        let (a, b, mu, _) = symbolic_abmm();
        assert_eq!(g, (&b - &a).div(&(&(&mu * &mu) * &RatFn::var(Symbol::E))).unwrap());
        let at = |a: i64, b: i64| {
            g.eval_partial(&[
                (Symbol::A, Rat::from(a)),
                (Symbol::B, Rat::from(b)),
                (Symbol::Mu, Rat::from(1)),
                (Symbol::E, Rat::from(1)),
            ])
            .unwrap()
        };
        assert!(at(3, 3).is_zero());
        assert_eq!(at(1, -1), RatFn::from(-2));
        assert!(verify_reduced_chern().unwrap());
    }

    #[test]
    fn discriminant_examples() {
        discriminant_dual().unwrap();
        assert_eq!(discriminant_value(&r(2, 1), &r(1, 1), &r(1, 1)).unwrap(), Rat::from(-4));
        assert_eq!(discriminant_value(&r(1, 1), &r(1, 1), &r(1, 1)).unwrap(), Rat::from(-3));
    }
}
