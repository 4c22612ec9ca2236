//! JSON formats: matroids, corpora of named matroids, and the reports the
//! command-line tool emits. Field order in every report is fixed.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{ExactMatrix, Field, Poly};
use crate::chow::{ChowElement, ChowRing, PairingReport};
use crate::invariants::IngletonWitness;
use crate::matroid::{catalog, CatalogName, Matroid, MatroidError, Subset};
use crate::realization::{RealizationSpace, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("basis {basis:?} repeats element {element}")]
    RepeatedElement { basis: Vec<usize>, element: usize },
    #[error("duplicate corpus id '{0}'")]
    DuplicateId(String),
    #[error("corpus entry '{id}': {source}")]
    Entry { id: String, source: MatroidError },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

/// `{"n": 7, "rank": 3, "bases": [[1,2,3], ...]}`, 1-indexed, each basis
/// ascending, bases in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidJson {
    pub n: usize,
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> MatroidJson {
        MatroidJson {
            n: m.n(),
            rank: m.rank(),
            bases: m.bases().iter().map(|b| b.to_vec()).collect(),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid, IoError> {
        let mut sets = HashSet::new();
        for b in &self.bases {
            if let Some(&e) = b.iter().find(|&&e| e == 0 || e > self.n) {
                return Err(MatroidError::ElementOutOfRange { element: e, n: self.n }.into());
            }
            let mut seen = HashSet::new();
            if let Some(&e) = b.iter().find(|&&e| !seen.insert(e)) {
                return Err(IoError::RepeatedElement {
                    basis: b.clone(),
                    element: e,
                });
            }
            let s = Subset::from_elements(b.iter().copied());
            if !sets.insert(s) {
                return Err(MatroidError::DuplicateSubset(s).into());
            }
        }
        let m = Matroid::from_basis_lists(self.n, &self.bases)?;
        if m.rank() != self.rank {
            return Err(MatroidError::RankMismatch {
                stated: self.rank,
                actual: m.rank(),
            }
            .into());
        }
        Ok(m)
    }
}

pub fn matroid_to_json(m: &Matroid) -> String {
    serde_json::to_string(&MatroidJson::from_matroid(m)).expect("serializable")
}

pub fn parse_matroid(s: &str) -> Result<Matroid, IoError> {
    serde_json::from_str::<MatroidJson>(s)?.to_matroid()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub matroid: Matroid,
    pub meta: BTreeMap<String, Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    matroid: MatroidJson,
    #[serde(default)]
    meta: BTreeMap<String, Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorpus {
    entries: Vec<RawEntry>,
}

/// `{"entries": [{"id": "...", "matroid": {...}, "meta": {...}}]}` with
/// unique ids.
pub fn parse_corpus(s: &str) -> Result<Vec<CorpusEntry>, IoError> {
    let raw: RawCorpus = serde_json::from_str(s)?;
    let mut ids = HashSet::new();
    raw.entries
        .into_iter()
        .map(|e| {
            if !ids.insert(e.id.clone()) {
                return Err(IoError::DuplicateId(e.id));
            }
            let matroid = e.matroid.to_matroid().map_err(|err| match err {
                IoError::Matroid(source) => IoError::Entry {
                    id: e.id.clone(),
                    source,
                },
                other => other,
            })?;
            Ok(CorpusEntry {
                id: e.id,
                matroid,
                meta: e.meta,
            })
        })
        .collect()
}

pub fn corpus_to_json(entries: &[CorpusEntry]) -> String {
    let raw = RawCorpus {
        entries: entries
            .iter()
            .map(|e| RawEntry {
                id: e.id.clone(),
                matroid: MatroidJson::from_matroid(&e.matroid),
                meta: e.meta.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

/// The six named catalog matroids as a corpus.
pub fn bundled_corpus() -> Vec<CorpusEntry> {
    CatalogName::NAMED
        .iter()
        .map(|&name| CorpusEntry {
            id: name.to_string(),
            matroid: catalog(name).expect("catalog entries are valid"),
            meta: BTreeMap::from([("source".to_string(), Value::from("catalog"))]),
        })
        .collect()
}

fn set(s: Subset) -> Vec<usize> {
    s.to_vec()
}

fn polys(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    m.format_entries()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub matroid: MatroidJson,
    pub n: usize,
    pub rank: usize,
    pub basis_count: usize,
    pub loops: Vec<usize>,
    pub circuits: Vec<Vec<usize>>,
    /// Flats grouped by rank, index = rank.
    pub flats_by_rank: Vec<Vec<Vec<usize>>>,
    pub simple: bool,
    pub automorphism_order: Option<String>,
}

impl InfoReport {
    pub fn new(m: &Matroid, automorphism_order: Option<u128>) -> InfoReport {
        InfoReport {
            matroid: MatroidJson::from_matroid(m),
            n: m.n(),
            rank: m.rank(),
            basis_count: m.bases().len(),
            loops: set(m.loops()),
            circuits: m.circuits().iter().map(|c| c.to_vec()).collect(),
            flats_by_rank: (0..=m.rank())
                .map(|k| m.flats_of_rank(k).iter().map(|f| f.to_vec()).collect())
                .collect(),
            simple: m.is_simple(),
            automorphism_order: automorphism_order.map(|o| o.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictJson {
    NonEmpty,
    Empty,
    Undecided,
}

impl From<Verdict> for VerdictJson {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::NonEmpty => VerdictJson::NonEmpty,
            Verdict::Empty => VerdictJson::Empty,
            Verdict::Undecided => VerdictJson::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub matroid: MatroidJson,
    pub characteristic: u64,
    pub basis: Vec<usize>,
    /// All entries of the parameterized matrix that are variables.
    pub variables: Vec<String>,
    pub free_variables: Vec<String>,
    /// `x = numerator / denominator`, in elimination order.
    pub substitutions: Vec<String>,
    pub ideal: Vec<String>,
    pub inequations: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub verdict: VerdictJson,
    pub budget_error: Option<String>,
}

impl RealizationReport {
    pub fn new(m: &Matroid, space: &RealizationSpace) -> RealizationReport {
        let pm = space.parameterized_matrix();
        let names = space.ring().names();
        let matrix = (0..pm.matrix().rows())
            .map(|i| (0..pm.matrix().cols()).map(|j| pm.matrix().get(i, j).to_string()).collect())
            .collect();
        RealizationReport {
            matroid: MatroidJson::from_matroid(m),
            characteristic: space.characteristic(),
            basis: set(space.basis()),
            variables: names.to_vec(),
            free_variables: space.free_variable_names(),
            substitutions: space
                .substitutions()
                .iter()
                .map(|s| {
                    let name = &names[s.var];
                    match s.denominator.constant_value() {
                        Some(c) => {
                            let inv = space.field().inv(&c).expect("nonzero denominator");
                            format!("{name} = {}", s.numerator.scale(&inv))
                        }
                        None => format!("{name} = ({}) / ({})", s.numerator, s.denominator),
                    }
                })
                .collect(),
            ideal: polys(space.ideal()),
            inequations: polys(space.inequations()),
            matrix,
            verdict: space.verdict().into(),
            budget_error: space.budget_error().map(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub characteristic: u64,
    pub verdict: VerdictJson,
    pub free_variables: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngletonJson {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub lhs: i64,
    pub rhs: i64,
}

impl From<&IngletonWitness> for IngletonJson {
    fn from(w: &IngletonWitness) -> Self {
        IngletonJson {
            a: set(w.a),
            b: set(w.b),
            c: set(w.c),
            d: set(w.d),
            lhs: w.lhs as i64,
            rhs: w.rhs as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub matroid: MatroidJson,
    pub tutte: String,
    pub characteristic: String,
    /// Absent when the matroid has loops.
    pub reduced_characteristic: Option<String>,
    pub log_concave: bool,
    /// False when the search ran out of budget.
    pub ingleton_checked: bool,
    pub ingleton_violation: Option<IngletonJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowReport {
    pub matroid: MatroidJson,
    pub flats: Vec<Vec<usize>>,
    pub graded_dimensions: Vec<usize>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub k: usize,
    pub ell: String,
    pub mat1: Vec<Vec<String>>,
    pub mat2: Vec<Vec<String>>,
    pub kernel_dimension: usize,
    pub restricted_form: Vec<Vec<String>>,
    pub poincare_nondegenerate: bool,
    pub hard_lefschetz_iso: bool,
    pub hodge_riemann_definite: bool,
    /// `(-1)^j vol(α^{r-1-j} β^j)` for `j = 0..r-1`.
    pub omega: Vec<String>,
}

fn coords(e: &ChowElement) -> Vec<String> {
    e.coords().iter().map(|c| Field::Rationals.format(c)).collect()
}

impl ChowReport {
    pub fn new(ring: &ChowRing, ell: &str, report: &PairingReport, omega: &[num_bigint::BigInt]) -> ChowReport {
        ChowReport {
            matroid: MatroidJson::from_matroid(ring.matroid()),
            flats: ring.flats().iter().map(|f| f.to_vec()).collect(),
            graded_dimensions: ring.graded_dimensions(),
            alpha: coords(&ring.alpha()),
            beta: coords(&ring.beta()),
            k: report.k,
            ell: ell.to_string(),
            mat1: matrix_strings(&report.mat1),
            mat2: matrix_strings(&report.mat2),
            kernel_dimension: report.kernel.len(),
            restricted_form: matrix_strings(&report.restricted_form),
            poincare_nondegenerate: report.poincare_nondegenerate,
            hard_lefschetz_iso: report.hard_lefschetz_iso,
            hodge_riemann_definite: report.hodge_riemann_definite,
            omega: omega.iter().map(|w| w.to_string()).collect(),
        }
    }
}
