//! The symbolic identity suite behind `verify`, and the per-run checks that
//! `classify` records in its certificate.

use bibundle_core::algebra::{RatFn, Symbol};
use bibundle_core::chowring::{self, ChernWuSign, ChowError, Ring};
use bibundle_core::classifier::{self, Classification};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub cited_location: &'static str,
    pub formula: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(
    id: String,
    cited_location: &'static str,
    formula: &'static str,
    outcome: Result<bool, String>,
) -> IdentityCheck {
    let (pass, detail) = match outcome {
        Ok(true) => (true, String::new()),
        Ok(false) => (false, "identity does not hold".to_string()),
        Err(e) => (false, e),
    };
    IdentityCheck { id, cited_location, formula, pass, detail }
}

fn msg<T>(r: Result<T, ChowError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Identities that depend on the dimension `n`.
pub fn dimension_identities(n: u32, sign: ChernWuSign) -> Vec<IdentityCheck> {
    let ring = match Ring::fibered_with_sign(n, sign) {
        Ok(r) => r,
        Err(e) => {
            return vec![check(format!("fibered-ring[n={n}]"), "fibered ring", "n >= 2", Err(e.to_string()))];
        }
    };
    let checks = msg(chowring::canonical_checks(&ring));
    let d2 = RatFn::var(Symbol::D).scale(&2.into());
    vec![
        check(
            format!("kpi-fiber-degree[n={n}]"),
            "relative canonical class on a fiber",
            "K_pi . f = -2",
            checks.as_ref().map(|c| c.fiber_degree == RatFn::from(-2)).map_err(Clone::clone),
        ),
        check(
            format!("kpi-square[n={n}]"),
            "square of the relative canonical class",
            "K_pi^2 = (c1^2 - 4 c2) H^2",
            checks.as_ref().map(|c| c.square_defect.is_zero()).map_err(Clone::clone),
        ),
        check(
            format!("anticanonical-top[n={n}]"),
            "top pairing of the relative anticanonical class",
            "int -K_pi . H^n = 2d",
            checks.as_ref().map(|c| c.anticanonical_top == d2).map_err(Clone::clone),
        ),
        check(
            format!("nef-power[n={n}]"),
            "top power of the nef threshold class",
            "int (-K_pi + tau H)^(n+1) / 2d = sum_(i odd) binom(n+1, i) tau^(n+1-i) Delta^((i-1)/2)",
            msg(chowring::verify_nef_power_in(&ring)),
        ),
        check(
            format!("imaginary-form[n={n}]"),
            "nef-power polynomial in imaginary form",
            "(tau + i s)^(n+1) - (tau - i s)^(n+1) = 2 i s P(tau, -s^2)",
            msg(chowring::verify_imaginary_form_in(&ring)),
        ),
    ]
}

/// Identities with no dimension parameter.
pub fn global_identities() -> Vec<IdentityCheck> {
    let tau_mu = &RatFn::var(Symbol::Tau) * &RatFn::var(Symbol::Mu);
    let g_expected = (&RatFn::var(Symbol::B) - &RatFn::var(Symbol::A))
        .div(&(&(&RatFn::var(Symbol::Mu) * &RatFn::var(Symbol::Mu)) * &RatFn::var(Symbol::E)));
    let base = classifier::symbolic_base_change().map_err(|e| e.to_string());
    vec![
        check(
            "splitting-gap".into(),
            "splitting type on a second-family fiber",
            "a - b = i_X mu - 2 = tau mu",
            msg(chowring::splitting_gap_in_tau().map(|g| g == tau_mu)),
        ),
        check(
            "total-chern-formal".into(),
            "total Chern class of the pulled-back bundle",
            "c = 1 + ((a+b)/mu) H + (ab/mu^2) H^2 + ((a-b)/(mu mu')) H H' - (1/mu'^2) H'^2",
            msg(chowring::verify_total_chern()),
        ),
        check(
            "surface-relation".into(),
            "pullback to the ruled surface",
            "(zeta H)^2 = (mu e / mu') zeta H . zeta H'",
            msg(chowring::verify_lemma_e()),
        ),
        check(
            "solve-g".into(),
            "elimination of H H' and H'^2",
            "g = (b - a) / (mu^2 e)",
            match (chowring::solve_g(), g_expected) {
                (Ok(g), Ok(expected)) => Ok(g == expected),
                (Err(e), _) => Err(e.to_string()),
                (_, Err(e)) => Err(e.to_string()),
            },
        ),
        check(
            "reduced-chern".into(),
            "total Chern class after elimination",
            "c = 1 + ((a+b)/mu) H + (ab/mu^2 + (a-b)/(e mu^2)) H^2",
            msg(chowring::verify_reduced_chern()),
        ),
        check(
            "discriminant-dual".into(),
            "discriminant from the second fibration",
            "Delta = tau^2 - 4 tau / (e mu)",
            msg(chowring::discriminant_dual().map(|_| true)),
        ),
        check(
            "base-change-rows".into(),
            "change of basis between the two tautological pairs",
            "H' = -(mu'/2)(c1 - tau) H + mu' L; L' = (-(mu'/4)(c1 - tau)(c1' - tau') + 1/mu) H + (mu'/2)(c1' - tau') L",
            base.as_ref().map(|b| b.matches_expected).map_err(Clone::clone),
        ),
        check(
            "base-change-determinant".into(),
            "determinant of the base change",
            "det = -mu'/mu, so |det| = 1 forces mu = mu'",
            base.as_ref().map(|b| b.determinant_is_minus_ratio).map_err(Clone::clone),
        ),
    ]
}

/// The full suite for `2 <= n <= max_dim`.
pub fn run_identities(max_dim: u32, sign: ChernWuSign) -> Vec<IdentityCheck> {
    let mut out: Vec<IdentityCheck> = (2..=max_dim).flat_map(|n| dimension_identities(n, sign)).collect();
    out.extend(global_identities());
    out
}

/// Checks read off a finished classification run.
pub fn classification_checks(c: &Classification) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for t in &c.enumeration.accepted {
        out.push(check(
            format!("discriminant-routes[n={}:({},{},{})]", c.n, t.ix, t.mu, t.e),
            "discriminant by the tangent and Chern-class routes",
            "-tau^2 tan^2(pi/(n+1)) = tau^2 - 4 tau/(e mu)",
            Ok(t.delta == t.delta_tan),
        ));
    }
    for w in &c.witnesses {
        out.push(check(
            format!("bezout[n={}:({},{},{}),c1={}]", c.n, w.ix, w.mu, w.e, w.c1),
            "line bundle of degree one on the second fibers",
            "alpha mu + beta (L . f') = 1",
            Ok(w.holds()),
        ));
    }
    for p in &c.pairs {
        out.push(check(
            format!("degree-ratio[n={}:({},{},{})]", c.n, p.left.ix, p.right.ix, p.mu),
            "degree ratio of the two bases",
            "d_Y/d_X = (tau mu)^(n-1) / kappa^((n-1)/2) and (d_Y/d_X)(d_X/d_Y) = 1",
            Ok((&p.degree_ratio * &p.inverse_ratio).is_one()),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_with_the_standard_relation() {
        let suite = run_identities(4, ChernWuSign::Standard);
        assert_eq!(suite.len(), 3 * 5 + 8);
        assert!(suite.iter().all(|c| c.pass), "{:?}", suite.iter().find(|c| !c.pass));
    }

    #[test]
    fn flipped_relation_fails_the_suite() {
        let suite = run_identities(3, ChernWuSign::Flipped);
        let failed: Vec<_> = suite.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"kpi-square[n=2]"));
        assert!(failed.contains(&"nef-power[n=3]"));
    }
}
