//! Serde types for the version 1 JSON format.
//!
//! Every struct rejects unknown fields. Complex numbers are `[re, im]`
//! pairs, matrices are lists of rows, and 2-cells are maps from simple id to
//! block (missing blocks are zero).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

pub type Complex = [f64; 2];
pub type Matrix = Vec<Vec<Complex>>;
/// Simple id to multiplicity.
pub type MultMap = BTreeMap<String, usize>;
/// Simple id to the block of a 2-cell at that simple.
pub type Blocks = BTreeMap<String, Matrix>;

/// A presentation together with optional named structures on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub name: String,
    pub objects: Vec<String>,
    pub simples: Vec<SimpleJson>,
    /// Object to the id of its unit simple.
    pub units: BTreeMap<String, String>,
    pub fusion: Vec<FusionJson>,
    pub fsymbols: Vec<FSymbolJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitors: Option<UnitorsJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qsystems: Vec<QSystemJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<BimoduleJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transformations: Vec<TransformationJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modifications: Vec<ModificationJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `N_{ij}^k = mult`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionJson {
    pub i: String,
    pub j: String,
    pub k: String,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FSymbolJson {
    pub i: String,
    pub j: String,
    pub k: String,
    pub l: String,
    pub matrix: Matrix,
}

/// Unitor scalars per simple; absent simples use 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitorsJson {
    #[serde(default)]
    pub left: BTreeMap<String, Complex>,
    #[serde(default)]
    pub right: BTreeMap<String, Complex>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSystemJson {
    pub name: String,
    pub base: String,
    #[serde(rename = "Q")]
    pub q: MultMap,
    pub m: Blocks,
    pub i: Blocks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleJson {
    pub name: String,
    pub left: String,
    pub right: String,
    #[serde(rename = "X")]
    pub x: MultMap,
    pub lam: Blocks,
    pub rho: Blocks,
}

/// A skeletal functor out of the document's presentation. `target` is a
/// path relative to the document; absent means the document itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub obj_map: BTreeMap<String, String>,
    pub cell_map: BTreeMap<String, MultMap>,
    /// Entries equal to the identity may be omitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub f2: Vec<F2Json>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub f1: BTreeMap<String, Blocks>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct F2Json {
    pub s: String,
    pub t: String,
    pub blocks: Blocks,
}

/// `φ : source ⇒ target` between functors of the document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub comp0: BTreeMap<String, MultMap>,
    pub comp1: BTreeMap<String, Blocks>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModificationJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub comps: BTreeMap<String, Blocks>,
}

/// One row of a report. A non-finite residual is written as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub id: String,
    pub paper_anchor: String,
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummaryJson {
    pub pass: bool,
    pub total: usize,
    pub failed: usize,
    pub max_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingJson {
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub schema_version: String,
    pub command: String,
    pub checks: Vec<CheckJson>,
    pub summary: SummaryJson,
    /// `null` under `--no-timing`.
    pub timing: Option<TimingJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateJson {
    pub dimension: f64,
    pub residual: Option<f64>,
    pub start: usize,
    pub qsystem: QSystemJson,
}

/// Output of `find-qsystems`: the candidates and their axiom checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchJson {
    pub schema_version: String,
    pub object: String,
    pub dim_bound: f64,
    pub seed: u64,
    pub candidates: Vec<CandidateJson>,
    pub report: ReportJson,
}
