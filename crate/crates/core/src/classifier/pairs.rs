//! Matching the two bundle structures: intersection table, base change,
//! degree ratios.

use super::{CaseTuple, ClassifierError};
use crate::algebra::{Rat, RatFn, Symbol};
use crate::chowring;

fn v(s: Symbol) -> RatFn {
    RatFn::var(s)
}

fn half(x: RatFn) -> RatFn {
    x.scale(&Rat::new(1, 2).expect("nonzero"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    H,
    HPrime,
    L,
    LPrime,
}

/// Intersection numbers of `H, H', L, L'` with the two fiber classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    /// Row `f`, columns `H, H', L, L'`.
    pub f: [RatFn; 4],
    /// Row `f'`.
    pub f_prime: [RatFn; 4],
}

impl IntersectionTable {
    /// Entries in the symbols `mu, mu', c1, c1', iX, iY`.
    pub fn symbolic() -> Self {
        let lf_prime = &RatFn::one() + &half(&(&v(Symbol::C1) - &v(Symbol::IX)) * &v(Symbol::Mu));
        let lpf = &RatFn::one() + &half(&(&v(Symbol::C1p) - &v(Symbol::IY)) * &v(Symbol::Mup));
        IntersectionTable {
            f: [RatFn::zero(), v(Symbol::Mup), RatFn::one(), lpf],
            f_prime: [v(Symbol::Mu), RatFn::zero(), lf_prime, RatFn::one()],
        }
    }

    pub fn for_pair(left: &CaseTuple, c1: i64, right: &CaseTuple, c1p: i64) -> Result<Self, ClassifierError> {
        let at = [
            (Symbol::Mu, Rat::from(left.mu)),
            (Symbol::Mup, Rat::from(right.mu)),
            (Symbol::C1, Rat::from(c1)),
            (Symbol::C1p, Rat::from(c1p)),
            (Symbol::IX, Rat::from(left.ix)),
            (Symbol::IY, Rat::from(right.ix)),
        ];
        let sym = IntersectionTable::symbolic();
        let eval = |row: &[RatFn; 4]| -> Result<[RatFn; 4], ClassifierError> {
            Ok([
                row[0].eval_partial(&at)?,
                row[1].eval_partial(&at)?,
                row[2].eval_partial(&at)?,
                row[3].eval_partial(&at)?,
            ])
        };
        Ok(IntersectionTable { f: eval(&sym.f)?, f_prime: eval(&sym.f_prime)? })
    }

    pub fn get(&self, row_is_f_prime: bool, col: Column) -> &RatFn {
        let row = if row_is_f_prime { &self.f_prime } else { &self.f };
        &row[col as usize]
    }
}

/// Coordinates of `H'` and `L'` in the basis `{H, L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub h_prime: [RatFn; 2],
    pub l_prime: [RatFn; 2],
}

impl BaseChange {
    pub fn determinant(&self) -> RatFn {
        &(&self.h_prime[0] * &self.l_prime[1]) - &(&self.h_prime[1] * &self.l_prime[0])
    }

    pub fn substitute(&self, sym: Symbol, value: &RatFn) -> Result<BaseChange, ClassifierError> {
        let s = |x: &RatFn| x.substitute(sym, value);
        Ok(BaseChange {
            h_prime: [s(&self.h_prime[0])?, s(&self.h_prime[1])?],
            l_prime: [s(&self.l_prime[0])?, s(&self.l_prime[1])?],
        })
    }

    /// Rewrites `iX, iY` through `iX = tau + 2/mu`, `iY = tau' + 2/mu'`.
    pub fn in_tau(&self) -> Result<BaseChange, ClassifierError> {
        let two = RatFn::from(2);
        let ix = &v(Symbol::Tau) + &two.div(&v(Symbol::Mu))?;
        let iy = &v(Symbol::Taup) + &two.div(&v(Symbol::Mup))?;
        self.substitute(Symbol::IX, &ix)?.substitute(Symbol::IY, &iy)
    }
}

/// Solves `(X . f, X . f') = rhs` for `X = alpha H + beta L` by Cramer's rule.
fn solve_column(t: &IntersectionTable, rhs: [&RatFn; 2]) -> Result<[RatFn; 2], ClassifierError> {
    let (hf, lf) = (t.get(false, Column::H), t.get(false, Column::L));
    let (hfp, lfp) = (t.get(true, Column::H), t.get(true, Column::L));
    let det = &(hf * lfp) - &(lf * hfp);
    if det.is_zero() {
        return Err(ClassifierError::SingularSystem);
    }
    let alpha = (&(rhs[0] * lfp) - &(lf * rhs[1])).div(&det)?;
    let beta = (&(hf * rhs[1]) - &(hfp * rhs[0])).div(&det)?;
    Ok([alpha, beta])
}

pub fn base_change(t: &IntersectionTable) -> Result<BaseChange, ClassifierError> {
    let h_prime = solve_column(t, [t.get(false, Column::HPrime), t.get(true, Column::HPrime)])?;
    let l_prime = solve_column(t, [t.get(false, Column::LPrime), t.get(true, Column::LPrime)])?;
    Ok(BaseChange { h_prime, l_prime })
}

/// The expected rows in `tau` form:
/// `H' = -(mu'/2)(c1 - tau) H + mu' L` and
/// `L' = (-(mu'/4)(c1 - tau)(c1' - tau') + 1/mu) H + (mu'/2)(c1' - tau') L`.
pub fn base_change_expected() -> Result<BaseChange, ClassifierError> {
    let mup = v(Symbol::Mup);
    let a = &v(Symbol::C1) - &v(Symbol::Tau);
    let b = &v(Symbol::C1p) - &v(Symbol::Taup);
    let quarter = Rat::new(-1, 4).expect("nonzero");
    Ok(BaseChange {
        h_prime: [-half(&mup * &a), mup.clone()],
        l_prime: [&(&(&mup * &a) * &b).scale(&quarter) + &RatFn::one().div(&v(Symbol::Mu))?, half(&mup * &b)],
    })
}

/// Symbolic base change, its `tau` form and determinant `-mu'/mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicBaseChange {
    pub matrix: BaseChange,
    pub tau_form: BaseChange,
    pub determinant: RatFn,
    pub matches_expected: bool,
    pub determinant_is_minus_ratio: bool,
}

pub fn symbolic_base_change() -> Result<SymbolicBaseChange, ClassifierError> {
    let matrix = base_change(&IntersectionTable::symbolic())?;
    let tau_form = matrix.in_tau()?;
    let determinant = matrix.determinant();
    let target = -v(Symbol::Mup).div(&v(Symbol::Mu))?;
    Ok(SymbolicBaseChange {
        matches_expected: tau_form == base_change_expected()?,
        determinant_is_minus_ratio: determinant == target && tau_form.determinant() == target,
        matrix,
        tau_form,
        determinant,
    })
}

/// `d_Y / d_X = (tau mu)^(n-1) / kappa^((n-1)/2)`, exact on squares.
pub fn degree_ratio_closed(n: u32, tau: &Rat, mu: i64, kappa: i64) -> Result<Rat, ClassifierError> {
    let num = (tau * &Rat::from(mu)).pow(n - 1);
    let k = Rat::from(kappa);
    let den = if (n - 1).is_multiple_of(2) {
        k.pow((n - 1) / 2)
    } else {
        k.sqrt_exact().ok_or(ClassifierError::IrrationalRatio(n))?.pow(n - 1)
    };
    Ok(&num / &den)
}

/// `d_Y / d_X = (mu/2)^(n-1) int (-K_pi + tau H)^n H / (2d)`, through the ring.
pub fn degree_ratio_from_ring(n: u32, tau: &Rat, mu: i64, delta: &Rat) -> Result<Rat, ClassifierError> {
    let p = chowring::nef_power_times_h(n)?;
    let at = p.eval_partial(&[(Symbol::Tau, tau.clone()), (Symbol::Delta, delta.clone())]);
    let val = at.as_constant().ok_or(ClassifierError::IrrationalRatio(n))?;
    Ok(&Rat::new(mu, 2)?.pow(n - 1) * &val)
}

/// A matched pair of bundle structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSolution {
    pub n: u32,
    pub left: CaseTuple,
    pub right: CaseTuple,
    pub c1: i64,
    pub c1_prime: i64,
    pub mu: i64,
    pub table: IntersectionTable,
    pub base_change: BaseChange,
    pub determinant: Rat,
    /// `d_Y / d_X`.
    pub degree_ratio: Rat,
    /// `d_X / d_Y` from the mirrored formula; product with `degree_ratio` is one.
    pub inverse_ratio: Rat,
    pub names: Option<(String, String)>,
}

/// Which side carries the larger index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    LeftLarger,
    RightLarger,
}

/// Names of the matched pair, keyed by `(n, i_X, i_Y)`.
pub fn identify(n: u32, ix: i64, iy: i64) -> Result<(&'static str, &'static str), ClassifierError> {
    match (n, ix, iy) {
        (2, 3, 3) => Ok(("ℙ² tangent", "ℙ² tangent")),
        (3, 4, 3) => Ok(("ℙ³ null-correlation", "Q³ quotient-restriction")),
        (5, 5, 3) => Ok(("Q⁵ Cayley", "K(G₂) quotient-restriction")),
        _ => Err(ClassifierError::Unclassified { n, ix, iy }),
    }
}

/// All pairs among `tuples` with `mu = mu'` and
/// `(i_X mu - 2)(i_Y mu - 2) = kappa`, ordered by `order`.
pub fn pair_match_ordered(
    n: u32,
    kappa: i64,
    tuples: &[CaseTuple],
    order: PairOrder,
) -> Result<Vec<PairSolution>, ClassifierError> {
    let mut out = Vec::new();
    for left in tuples {
        for right in tuples {
            let ordered = match order {
                PairOrder::LeftLarger => left.ix >= right.ix,
                PairOrder::RightLarger => left.ix <= right.ix,
            };
            // |det| = mu'/mu must be one
            if !ordered || left.mu != right.mu {
                continue;
            }
            let mu = left.mu;
            if (left.ix * mu - 2) * (right.ix * mu - 2) != kappa {
                continue;
            }
            for &c1 in &left.allowed_c1 {
                for &c1p in &right.allowed_c1 {
                    out.push(build_pair(n, kappa, left, c1, right, c1p)?);
                }
            }
        }
    }
    Ok(out)
}

fn build_pair(
    n: u32,
    kappa: i64,
    left: &CaseTuple,
    c1: i64,
    right: &CaseTuple,
    c1p: i64,
) -> Result<PairSolution, ClassifierError> {
    let mu = left.mu;
    let table = IntersectionTable::for_pair(left, c1, right, c1p)?;
    let bc = base_change(&table)?;
    let determinant = bc.determinant().as_constant().ok_or(ClassifierError::SingularSystem)?;
    if determinant.abs() != Rat::one() {
        return Err(ClassifierError::NonUnimodularBaseChange(determinant));
    }
    let closed = degree_ratio_closed(n, &left.tau, mu, kappa)?;
    let ring = degree_ratio_from_ring(n, &left.tau, mu, &left.delta)?;
    if closed != ring {
        return Err(ClassifierError::DegreeRatioMismatch { closed: Box::new(closed), ring: Box::new(ring) });
    }
    let inverse_ratio = degree_ratio_from_ring(n, &right.tau, mu, &right.delta)?;
    if &closed * &inverse_ratio != Rat::one() {
        return Err(ClassifierError::DegreeRatioMismatch {
            closed: Box::new(closed),
            ring: Box::new(inverse_ratio.recip()?),
        });
    }
    let names = identify(n, left.ix.max(right.ix), left.ix.min(right.ix)).ok().map(|(a, b)| {
        if left.ix >= right.ix {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    });
    Ok(PairSolution {
        n,
        left: left.clone(),
        right: right.clone(),
        c1,
        c1_prime: c1p,
        mu,
        table,
        base_change: bc,
        determinant,
        degree_ratio: closed,
        inverse_ratio,
        names,
    })
}

pub fn pair_match(n: u32, kappa: i64, tuples: &[CaseTuple]) -> Result<Vec<PairSolution>, ClassifierError> {
    pair_match_ordered(n, kappa, tuples, PairOrder::LeftLarger)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_base_change_matches() {
        let s = symbolic_base_change().unwrap();
        assert!(s.matches_expected, "{:?}", s.tau_form);
        assert!(s.determinant_is_minus_ratio, "{}", s.determinant);
    }

    #[test]
    fn closed_degree_ratios() {
        assert_eq!(degree_ratio_closed(3, &Rat::from(2), 1, 2).unwrap(), Rat::from(2));
        assert_eq!(degree_ratio_closed(5, &Rat::from(3), 1, 3).unwrap(), Rat::from(9));
        assert_eq!(degree_ratio_closed(2, &Rat::from(1), 1, 1).unwrap(), Rat::from(1));
    }

    #[test]
    fn ring_degree_ratios() {
        assert_eq!(degree_ratio_from_ring(3, &Rat::from(2), 1, &Rat::from(-4)).unwrap(), Rat::from(2));
        assert_eq!(degree_ratio_from_ring(5, &Rat::from(3), 1, &Rat::from(-3)).unwrap(), Rat::from(9));
        assert_eq!(degree_ratio_from_ring(2, &Rat::from(1), 1, &Rat::from(-3)).unwrap(), Rat::from(1));
    }

    #[test]
    fn names() {
        assert_eq!(identify(2, 3, 3).unwrap(), ("ℙ² tangent", "ℙ² tangent"));
        assert!(identify(3, 3, 3).is_err());
    }
}
