//! JSON analysis reports, schema `toric-crn/1`.
//!
//! Rationals and big integers are strings (`"3/2"`, `"-4"`); only values
//! that are genuinely floating point (multistationarity witnesses, float
//! fallbacks) are JSON numbers. Complex and species indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::linalg::{Integer, IntegerMatrix, Rational, Sign};
use crate::network::{graph_summary, ReactionNetwork};

pub const SCHEMA: &str = "toric-crn/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub schema: String,
    pub results: Results,
}

impl Default for AnalysisReport {
    fn default() -> Self {
        Self {
            schema: SCHEMA.to_string(),
            results: Results::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Results {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phospho: Option<PhosphoSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multistat: Option<MultistatSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<RaysSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    pub species: Vec<String>,
    pub complexes: Vec<String>,
    pub reactions: usize,
    pub linkage_classes: usize,
    pub terminal_classes: Vec<Vec<usize>>,
    pub dim_s: usize,
    pub deficiency: i64,
    pub formula_valid: bool,
    pub regular: bool,
    /// Columns of `Z`, each a list of integers.
    pub conservation: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToricStatus {
    Toric,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierEntry {
    pub alpha: Vec<u32>,
    /// 1-based equation index.
    pub equation: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinomialEntry {
    /// `c1·x^e1 − c2·x^e2`.
    pub c1: String,
    pub e1: Vec<u32>,
    pub c2: String,
    pub e2: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizationSection {
    pub w: usize,
    /// Rows of `A`.
    pub a: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_tilde: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_tilde_float: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_relative_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSection {
    pub status: ToricStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multipliers: Vec<MultiplierEntry>,
    /// Exponent vectors of the monomials added by enlargement.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_monomials: Vec<Vec<u32>>,
    pub cond1: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond2: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond3: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partition: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub binomials: Vec<BinomialEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParametrizationSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminantEntry {
    /// 1-based complex index `ℓ`.
    pub index: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhosphoSection {
    pub n: usize,
    pub network: String,
    pub partition: Vec<Vec<usize>>,
    pub basis: Vec<Vec<String>>,
    pub d: String,
    pub determinants: Vec<DeterminantEntry>,
    pub x_tilde: Vec<String>,
    pub sample_t: Vec<String>,
    pub sample_x: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultistatVerdict {
    Witness,
    NoCapacity,
    Degenerate,
    NotToric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSection {
    pub omega: Vec<Sign>,
    pub tau: Vec<String>,
    pub sigma: Vec<String>,
    pub alpha: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub k: Vec<f64>,
    pub lambda: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationSection {
    pub residual_x1: f64,
    pub residual_x2: f64,
    pub within_tolerance: bool,
    pub conserved: bool,
    pub sigma_consistent: bool,
    pub positive: bool,
    pub distinct: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultistatSection {
    pub verdict: MultistatVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaysSection {
    pub degenerate: bool,
    pub rays: Vec<Vec<String>>,
}

/// Structural summary of a network.
pub fn network_section(net: &ReactionNetwork) -> NetworkSection {
    let g = graph_summary(net);
    NetworkSection {
        species: net.species().to_vec(),
        complexes: (0..net.num_complexes()).map(|i| net.complex_label(i)).collect(),
        reactions: net.num_reactions(),
        linkage_classes: g.num_linkage_classes(),
        terminal_classes: one_based(&g.terminal_classes),
        dim_s: g.dim_s,
        deficiency: g.deficiency,
        formula_valid: g.formula_valid,
        regular: g.regular(),
        conservation: integer_columns(&g.conservation),
    }
}

pub fn render_report(report: &AnalysisReport) -> String {
    serde_json::to_string(report).expect("reports always serialize")
}

pub fn render_report_pretty(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}

/// Parses and schema-checks a report.
pub fn parse_report(text: &str) -> Result<AnalysisReport, serde_json::Error> {
    let report: AnalysisReport = serde_json::from_str(text)?;
    if report.schema != SCHEMA {
        return Err(serde::de::Error::custom(format!(
            "unsupported schema {:?}",
            report.schema
        )));
    }
    Ok(report)
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn integers(v: &[Integer]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn integer_rows(m: &IntegerMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| integers(r)).collect()
}

pub fn integer_columns(m: &IntegerMatrix) -> Vec<Vec<String>> {
    m.column_vecs().iter().map(|c| integers(c)).collect()
}

pub fn one_based(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|i| i + 1).collect())
        .collect()
}
