//! Serializable certificate of a classification run.
//!
//! Field order is fixed by the struct definitions, so pretty printing is
//! canonical and serialize -> parse -> serialize is byte-identical.

use serde::{Deserialize, Serialize};

use bibundle_core::classifier::{
    AxiomLedger, CaseTuple, Classification, Exclusion, Lemma221Record, PairSolution, Parity, Provenance, TableRow, Tag,
    VWitness,
};
use bibundle_core::Rat;

use crate::identities::IdentityCheck;

pub const SCHEMA_VERSION: &str = "1";
/// Replaces `generated_at` before golden comparison.
pub const NORMALIZED_TIMESTAMP: &str = "1970-01-01T00:00:00Z";

/// Exact rational, as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityEntry {
    pub id: String,
    pub cited_location: String,
    pub verbatim_quote: String,
    pub status: String,
    pub detail: String,
}

impl From<&IdentityCheck> for IdentityEntry {
    fn from(c: &IdentityCheck) -> Self {
        IdentityEntry {
            id: c.id.clone(),
            cited_location: c.cited_location.to_string(),
            verbatim_quote: c.formula.to_string(),
            status: if c.pass { "pass" } else { "fail" }.to_string(),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceJson {
    /// `derived` or `axiom`.
    pub kind: String,
    pub axiom: Option<String>,
    pub note: String,
}

impl From<&Provenance> for ProvenanceJson {
    fn from(p: &Provenance) -> Self {
        let (kind, axiom) = match p.tag {
            Tag::Derived => ("derived", None),
            Tag::Axiom(id) => ("axiom", Some(id.to_string())),
        };
        ProvenanceJson { kind: kind.to_string(), axiom, note: p.note.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub n: u32,
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    pub tau: RatJson,
    pub upsilon: RatJson,
    pub delta: RatJson,
    pub delta_tan: RatJson,
    pub allowed_c1: Vec<i64>,
    pub provenance: Vec<ProvenanceJson>,
}

impl From<&CaseTuple> for TupleJson {
    fn from(t: &CaseTuple) -> Self {
        TupleJson {
            n: t.n,
            ix: t.ix,
            mu: t.mu,
            e: t.e,
            tau: (&t.tau).into(),
            upsilon: (&t.upsilon).into(),
            delta: (&t.delta).into(),
            delta_tan: (&t.delta_tan).into(),
            // descending, so c1 = 0 comes first
            allowed_c1: t.allowed_c1.iter().rev().copied().collect(),
            provenance: t.provenance.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExclusionJson {
    pub n: u32,
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    pub provenance: ProvenanceJson,
}

impl ExclusionJson {
    fn new(n: u32, x: &Exclusion) -> Self {
        ExclusionJson { n, ix: x.ix, mu: x.mu, e: x.e, provenance: (&x.provenance).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub n: u32,
    pub ix: i64,
    pub mu: i64,
    pub e: i64,
    pub c1: i64,
    pub lf_prime: i64,
    pub alpha: i64,
    pub beta: i64,
    pub holds: bool,
}

impl From<&VWitness> for WitnessJson {
    fn from(w: &VWitness) -> Self {
        WitnessJson {
            n: w.n,
            ix: w.ix,
            mu: w.mu,
            e: w.e,
            c1: w.c1,
            lf_prime: w.lf_prime,
            alpha: w.alpha,
            beta: w.beta,
            holds: w.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesesJson {
    pub c2_parity: Option<String>,
    pub degree_bound: Option<i64>,
}

/// The `(i_X, mu, e) = (2, 2, 1)` branch under one set of hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tuple221Json {
    pub n: u32,
    pub tau: RatJson,
    pub delta: RatJson,
    pub d_in_c2: String,
    pub degree_bound: i64,
    pub hypotheses: HypothesesJson,
    pub candidates: Vec<[i64; 2]>,
    pub axioms: Vec<String>,
}

impl Tuple221Json {
    fn new(n: u32, r: &Lemma221Record) -> Self {
        let parity = r.hypotheses.c2_parity.map(|p| match p {
            Parity::Even => "even".to_string(),
            Parity::Odd => "odd".to_string(),
        });
        Tuple221Json {
            n,
            tau: (&r.tau).into(),
            delta: (&r.delta).into(),
            d_in_c2: r.d_in_c2.to_string(),
            degree_bound: r.degree_bound,
            hypotheses: HypothesesJson { c2_parity: parity, degree_bound: r.hypotheses.degree_bound },
            candidates: r.candidates.iter().map(|&(d, c2)| [d, c2]).collect(),
            axioms: r.axioms.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub n: u32,
    /// `(i_X, mu, e)` of the larger-index side.
    pub left: [i64; 3],
    pub right: [i64; 3],
    pub mu: i64,
    pub c1: i64,
    pub c1_prime: i64,
    /// `(H^2, HL, L^2, LH)` against `f` and `f'`.
    pub table_f: Vec<String>,
    pub table_f_prime: Vec<String>,
    pub h_prime: Vec<String>,
    pub l_prime: Vec<String>,
    pub determinant: RatJson,
    pub degree_ratio: RatJson,
    pub inverse_ratio: RatJson,
    pub names: Option<[String; 2]>,
}

impl From<&PairSolution> for PairJson {
    fn from(p: &PairSolution) -> Self {
        let strs = |v: &[bibundle_core::RatFn]| v.iter().map(ToString::to_string).collect();
        let key = |t: &CaseTuple| [t.ix, t.mu, t.e];
        PairJson {
            n: p.n,
            left: key(&p.left),
            right: key(&p.right),
            mu: p.mu,
            c1: p.c1,
            c1_prime: p.c1_prime,
            table_f: strs(&p.table.f),
            table_f_prime: strs(&p.table.f_prime),
            h_prime: strs(&p.base_change.h_prime),
            l_prime: strs(&p.base_change.l_prime),
            determinant: (&p.determinant).into(),
            degree_ratio: (&p.degree_ratio).into(),
            inverse_ratio: (&p.inverse_ratio).into(),
            names: p.names.as_ref().map(|(a, b)| [a.clone(), b.clone()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomJson {
    pub id: String,
    pub statement: String,
    pub cited_location: String,
    pub verbatim_quote: String,
    pub consumed_by: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRowJson {
    pub n: u32,
    pub ix: i64,
    pub d: RatJson,
    pub mu: i64,
    pub tau: RatJson,
    pub delta: RatJson,
    pub c1: i64,
    pub c2: RatJson,
}

impl From<&TableRow> for TableRowJson {
    fn from(r: &TableRow) -> Self {
        TableRowJson {
            n: r.n,
            ix: r.ix,
            d: (&r.d).into(),
            mu: r.mu,
            tau: (&r.tau).into(),
            delta: (&r.delta).into(),
            c1: r.c1,
            c2: (&r.c2).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: String,
    pub generated_at: String,
    pub dims: Vec<u32>,
    pub identities: Vec<IdentityEntry>,
    pub tuples: Vec<TupleJson>,
    pub exclusions: Vec<ExclusionJson>,
    pub witnesses: Vec<WitnessJson>,
    pub tuple_221: Vec<Tuple221Json>,
    pub pairs: Vec<PairJson>,
    pub axioms: Vec<AxiomJson>,
    pub tables: Vec<TableRowJson>,
}

impl Certificate {
    pub fn build(runs: &[Classification], identities: &[IdentityCheck], generated_at: String) -> Self {
        let mut ledger = AxiomLedger::default();
        for c in runs {
            ledger.merge(&c.axioms);
        }
        Certificate {
            schema_version: SCHEMA_VERSION.to_string(),
            generated_at,
            dims: runs.iter().map(|c| c.n).collect(),
            identities: identities.iter().map(Into::into).collect(),
            tuples: runs.iter().flat_map(|c| c.enumeration.accepted.iter().map(Into::into)).collect(),
            exclusions: runs
                .iter()
                .flat_map(|c| c.enumeration.excluded.iter().map(move |x| ExclusionJson::new(c.n, x)))
                .collect(),
            witnesses: runs.iter().flat_map(|c| c.witnesses.iter().map(Into::into)).collect(),
            tuple_221: runs
                .iter()
                .flat_map(|c| c.lemma221.iter().flatten().map(move |r| Tuple221Json::new(c.n, r)))
                .collect(),
            pairs: runs.iter().flat_map(|c| c.pairs.iter().map(Into::into)).collect(),
            axioms: ledger
                .records()
                .iter()
                .map(|r| AxiomJson {
                    id: r.id.to_string(),
                    statement: r.statement.to_string(),
                    cited_location: r.cited_location.to_string(),
                    verbatim_quote: r.formula.to_string(),
                    consumed_by: r.consumed_by.clone(),
                })
                .collect(),
            tables: runs.iter().flat_map(|c| c.rows.iter().map(Into::into)).collect(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.status == "pass")
    }

    /// Pretty JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn normalized(&self) -> Self {
        Certificate { generated_at: NORMALIZED_TIMESTAMP.to_string(), ..self.clone() }
    }
}
