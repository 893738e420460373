//! Facts the pipeline imports instead of deriving.

/// An imported fact, with the place it is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomRecord {
    pub id: &'static str,
    pub statement: &'static str,
    /// Where the fact comes from, as a descriptive label.
    pub cited_location: &'static str,
    /// The fact as a formula.
    pub formula: &'static str,
    pub consumed_by: Vec<String>,
}

pub const KOBAYASHI_OCHIAI: &str = "kobayashi-ochiai";
pub const FANO_SURFACE_P2: &str = "fano-surface-p2";
pub const TUPLE_221_C1_ZERO: &str = "tuple-221-c1-zero";
pub const TUPLE_221_GEOMETRIC: &str = "tuple-221-geometric";
pub const RIEMANN_ROCH_C2_EVEN: &str = "riemann-roch-c2-even";
pub const DEL_PEZZO_DEGREE_BOUND: &str = "del-pezzo-degree-bound";
pub const SIGMA_NORMALIZATION: &str = "sigma-normalization";
pub const UPSILON_EQUALS_TAU: &str = "upsilon-equals-tau";
pub const BUNDLE_UNIQUENESS: &str = "bundle-uniqueness";
pub const PICARD_N2: &str = "picard-n2";
pub const ADMISSIBLE_BEYOND_SCAN: &str = "admissible-beyond-scan";

/// `(id, statement, cited location, formula)` for every known axiom.
const TABLE: &[(&str, &str, &str, &str)] = &[
    (KOBAYASHI_OCHIAI, "the Fano index of an n-fold is at most n + 1", "Kobayashi-Ochiai index bound", "i_X <= n + 1"),
    (
        FANO_SURFACE_P2,
        "a Fano surface of Picard number one is the projective plane",
        "classification of del Pezzo surfaces",
        "n = 2 => X = P^2, i_X = 3",
    ),
    (
        TUPLE_221_C1_ZERO,
        "the tuple (i_X, mu, e) = (2, 2, 1) forces c1 = 0",
        "case (2, 2, 1) of the three-dimensional classification",
        "(i_X, mu, e) = (2, 2, 1) => c1 = 0",
    ),
    (
        TUPLE_221_GEOMETRIC,
        "the remaining candidate (d_X, c2) = (4, 2) contradicts adjunction on the image surface",
        "case (2, 2, 1), geometric exclusion via Stein factorization",
        "(d_X, c2) = (4, 2) impossible",
    ),
    (
        RIEMANN_ROCH_C2_EVEN,
        "with c1 = -1 on a del Pezzo threefold, Riemann-Roch makes c2 even",
        "Riemann-Roch on del Pezzo threefolds",
        "c1 = -1 => c2 = 0 mod 2",
    ),
    (
        DEL_PEZZO_DEGREE_BOUND,
        "a del Pezzo threefold of Picard number one has degree at most 5",
        "Iskovskikh classification",
        "d_X <= 5",
    ),
    (
        SIGMA_NORMALIZATION,
        "the codimension-two generator is chosen so that d = 1",
        "choice of base cycle: point on P^2, line on P^3, generator of H^4(Q^5)",
        "H_X^2 = Sigma, d = 1",
    ),
    (
        UPSILON_EQUALS_TAU,
        "the pseudoeffective threshold equals the nef threshold",
        "positivity-cone argument for the nef threshold",
        "upsilon = tau = i_X - 2/mu > 0",
    ),
    (
        BUNDLE_UNIQUENESS,
        "the bundles are determined by their Chern classes among stable bundles",
        "uniqueness of tangent, null-correlation and Cayley bundles",
        "(X, c1, c2) determines E",
    ),
    (
        PICARD_N2,
        "numerical codimension-two cycles of X form a one-dimensional space",
        "structure of N^2(X)_Q",
        "N^2(X)_Q = Q Sigma",
    ),
    (
        ADMISSIBLE_BEYOND_SCAN,
        "tan^2(pi/(n+1)) is irrational for every n > 5, not only those scanned",
        "algebraic degree of tan(pi/m)",
        "tan^2(pi/(n+1)) in Q => n in {2, 3, 5}",
    ),
];

/// A fresh record for `id`, or `None` for an unknown id.
pub fn axiom(id: &str) -> Option<AxiomRecord> {
    TABLE.iter().find(|row| row.0 == id).map(|&(id, statement, cited_location, formula)| AxiomRecord {
        id,
        statement,
        cited_location,
        formula,
        consumed_by: Vec::new(),
    })
}

pub fn all_ids() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|row| row.0)
}

/// Collects axiom uses, one record per id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomLedger {
    records: Vec<AxiomRecord>,
}

impl AxiomLedger {
    pub fn consume(&mut self, id: &'static str, by: impl Into<String>) {
        let by = by.into();
        if let Some(r) = self.records.iter_mut().find(|r| r.id == id) {
            if !r.consumed_by.contains(&by) {
                r.consumed_by.push(by);
            }
            return;
        }
        let mut r = axiom(id).unwrap_or_else(|| panic!("unknown axiom {id}"));
        r.consumed_by.push(by);
        self.records.push(r);
    }

    pub fn merge(&mut self, other: &AxiomLedger) {
        for r in &other.records {
            for by in &r.consumed_by {
                self.consume(r.id, by.clone());
            }
        }
    }

    pub fn records(&self) -> &[AxiomRecord] {
        &self.records
    }

    pub fn contains(&self, id: &str) -> bool {
        self.records.iter().any(|r| r.id == id)
    }
}
