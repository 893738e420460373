//! Markdown rendering. Decimals here are presentation only.

use std::fmt::Write;

use bibundle_core::classifier::{Classification, PairSolution, Tag};
use bibundle_core::Rat;

use crate::identities::IdentityCheck;

const MINUS: char = '\u{2212}';

/// Integer with a typographic minus.
pub fn int(v: i64) -> String {
    if v < 0 {
        format!("{MINUS}{}", -v)
    } else {
        v.to_string()
    }
}

/// Exact value, followed by its decimal for non-integers: `=` when the
/// decimal terminates within four places, `≈` otherwise.
pub fn rat(r: &Rat) -> String {
    let exact = rat_exact(r);
    if r.is_integer() {
        return exact;
    }
    let scaled = r * &Rat::from(10_000);
    let approx = format!("{:.4}", r.to_f64_lossy());
    let approx = approx.trim_end_matches('0').replace('-', &MINUS.to_string());
    let sign = if scaled.is_integer() { '=' } else { '≈' };
    format!("{exact} ({sign} {approx})")
}

/// Exact value only.
fn rat_exact(r: &Rat) -> String {
    r.to_string().replace('-', &MINUS.to_string())
}

/// Bundle notation for a matched pair.
pub fn notation(p: &PairSolution) -> Option<String> {
    let side = |n: u32, i: i64| match (n, i) {
        (2, 3) => Some("(ℙ², Tℙ²)"),
        (3, 4) => Some("(ℙ³, N)"),
        (3, 3) => Some("(Q³, S)"),
        (5, 5) => Some("(Q⁵, C)"),
        (5, 3) => Some("(K(G₂), Q)"),
        _ => None,
    };
    let (a, b) = (side(p.n, p.left.ix)?, side(p.n, p.right.ix)?);
    Some(if a == b { format!("{a}²") } else { format!("{a} / {b}") })
}

fn c1_list(set: impl DoubleEndedIterator<Item = i64>) -> String {
    set.rev().map(int).collect::<Vec<_>>().join(", ")
}

pub fn identities_section(out: &mut String, checks: &[IdentityCheck]) {
    let passed = checks.iter().filter(|c| c.pass).count();
    writeln!(out, "## Identities\n").unwrap();
    writeln!(out, "{passed} of {} pass.\n", checks.len()).unwrap();
    writeln!(out, "| status | id | statement |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for c in checks {
        let status = if c.pass { "pass" } else { "FAIL" };
        writeln!(out, "| {status} | `{}` | `{}` |", c.id, c.formula.replace('|', "\\|")).unwrap();
    }
    writeln!(out).unwrap();
}

pub fn classification_section(out: &mut String, c: &Classification) {
    let e = &c.enumeration;
    writeln!(out, "## n = {}\n", c.n).unwrap();
    writeln!(out, "κ = τμe = {}; {} raw candidates.\n", e.kappa, e.raw.len()).unwrap();

    writeln!(out, "### Candidate tuples\n").unwrap();
    writeln!(out, "| i_X | μ | e | τ | Δ (Chern) | Δ (tan) | c₁ |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|").unwrap();
    for t in &e.accepted {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            t.ix,
            t.mu,
            t.e,
            rat(&t.tau),
            rat(&t.delta),
            rat(&t.delta_tan),
            c1_list(t.allowed_c1.iter().copied())
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    let notes: Vec<_> = e.accepted.iter().flat_map(|t| t.provenance.iter().map(move |p| (t, p))).collect();
    if !notes.is_empty() || !e.excluded.is_empty() {
        writeln!(out, "### Filters\n").unwrap();
        for x in &e.excluded {
            writeln!(out, "- ({}, {}, {}) excluded: {}", x.ix, x.mu, x.e, x.provenance).unwrap();
        }
        for (t, p) in notes {
            if matches!(p.tag, Tag::Axiom(_)) || p.note.contains("dropped") {
                writeln!(out, "- ({}, {}, {}): {}", t.ix, t.mu, t.e, p).unwrap();
            }
        }
        writeln!(out).unwrap();
    }

    writeln!(out, "### Degree-one line bundles on the second fibers\n").unwrap();
    writeln!(out, "| i_X | μ | e | c₁ | L·f′ | α | β | αμ + β L·f′ |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
    for w in &c.witnesses {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            w.ix,
            w.mu,
            w.e,
            int(w.c1),
            int(w.lf_prime),
            int(w.alpha),
            int(w.beta),
            int(w.alpha * w.mu + w.beta * w.lf_prime)
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    if let Some(records) = &c.lemma221 {
        writeln!(out, "### The tuple (2, 2, 1) with c₁ = −1\n").unwrap();
        writeln!(out, "| c₂ parity | d bound | d in c₂ | (d, c₂) left | closed by |").unwrap();
        writeln!(out, "|---|---|---|---|---|").unwrap();
        for r in records {
            let parity = match r.hypotheses.c2_parity {
                None => "even".to_string(),
                Some(p) => format!("even and {}", format!("{p:?}").to_lowercase()),
            };
            let left = if r.candidates.is_empty() {
                "none".to_string()
            } else {
                r.candidates.iter().map(|(d, c2)| format!("({d}, {c2})")).collect::<Vec<_>>().join(", ")
            };
            writeln!(
                out,
                "| {parity} | {} | `d = {}` | {left} | {} |",
                r.degree_bound,
                r.d_in_c2,
                if r.candidates.is_empty() { "no candidates" } else { r.axioms.last().copied().unwrap_or("-") }
            )
            .unwrap();
        }
        writeln!(out).unwrap();
    }

    writeln!(out, "### Pairs\n").unwrap();
    writeln!(out, "| i_X | i_Y | μ | c₁ | c₁′ | det | d_Y/d_X | d_X/d_Y |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
    for p in &c.pairs {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            p.left.ix,
            p.right.ix,
            p.mu,
            int(p.c1),
            int(p.c1_prime),
            rat(&p.determinant),
            rat(&p.degree_ratio),
            rat(&p.inverse_ratio)
        )
        .unwrap();
    }
    writeln!(out).unwrap();

    writeln!(out, "### Final table\n").unwrap();
    writeln!(out, "| n | i_X | d | μ | τ | Δ | c₁ | c₂ |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
    for r in &c.rows {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            r.n,
            r.ix,
            rat(&r.d),
            r.mu,
            rat(&r.tau),
            rat(&r.delta),
            int(r.c1),
            rat(&r.c2)
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    for (r, p) in c.rows.iter().zip(&c.pairs) {
        let names = match (&p.names, notation(p)) {
            (Some((a, b)), Some(sym)) => format!("  {sym}: {a} / {b}"),
            (Some((a, b)), None) => format!("  {a} / {b}"),
            _ => String::new(),
        };
        writeln!(
            out,
            "(n, i_X, d, μ, τ, Δ, c₁, c₂) = ({}, {}, {}, {}, {}, {}, {}, {}){names}",
            r.n,
            r.ix,
            rat_exact(&r.d),
            r.mu,
            rat_exact(&r.tau),
            rat_exact(&r.delta),
            int(r.c1),
            rat_exact(&r.c2)
        )
        .unwrap();
    }
    writeln!(out).unwrap();
}

pub fn render(runs: &[Classification], checks: &[IdentityCheck]) -> String {
    let dims: Vec<String> = runs.iter().map(|c| c.n.to_string()).collect();
    let mut out = String::new();
    writeln!(out, "# Classification for n = {}\n", dims.join(", ")).unwrap();
    for c in runs {
        classification_section(&mut out, c);
    }
    identities_section(&mut out, checks);
    let mut ledger = bibundle_core::classifier::AxiomLedger::default();
    for c in runs {
        ledger.merge(&c.axioms);
    }
    writeln!(out, "## Imported facts\n").unwrap();
    for a in ledger.records() {
        writeln!(out, "- `{}`: {} (`{}`); used by {}", a.id, a.statement, a.formula, a.consumed_by.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_rendering() {
        assert_eq!(int(-4), "−4");
        assert_eq!(rat(&Rat::from(-3)), "−3");
        assert_eq!(rat(&Rat::new(1, 3).unwrap()), "1/3 (≈ 0.3333)");
        assert_eq!(rat(&Rat::new(-5, 2).unwrap()), "−5/2 (= −2.5)");
    }
}
