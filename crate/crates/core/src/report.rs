//! Serializable report types shared by the command line and the Python
//! bindings.
//!
//! Integers that fit in 64 bits serialize as numbers; larger ones as decimal
//! strings. Lengths serialize as a number or the string `"infinite"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::graded_rings::GradedRingSpec;
use crate::hilbert::{GradedDimensionFunction, HilbertSeries, Length};
use crate::invariants::{InvariantReport, VerdictReport};
use crate::segre_kunneth::LocalCohomologyTable;

pub const TOOL_VERSION: &str = concat!("segre-mcm ", env!("CARGO_PKG_VERSION"));

pub fn serialize_bigint<S: Serializer>(n: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(small) => serializer.serialize_i64(small),
        None => serializer.collect_str(n),
    }
}

fn serialize_bigints<S: Serializer>(values: &[BigInt], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(|v| Length::Finite(v.clone())))
}

/// One local cohomology module: its nonzero tabulated degrees and length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub q: u32,
    pub support: Vec<(i64, Length)>,
    pub length: Length,
    /// Polynomial giving the dimensions below the tabulated range.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neg_tail: Option<String>,
    /// Polynomial giving the dimensions above the tabulated range.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos_tail: Option<String>,
}

impl CohomologyEntry {
    pub fn new(q: u32, f: &GradedDimensionFunction) -> Self {
        let tail = |p: &crate::exact_poly::RatPolynomial, bound: String| {
            (!p.is_zero()).then(|| format!("{p} for {bound}"))
        };
        Self {
            q,
            support: f
                .support()
                .into_iter()
                .map(|(j, v)| (j, Length::Finite(v)))
                .collect(),
            length: f.total_length(),
            neg_tail: tail(f.neg_tail(), format!("j < {}", f.lo())),
            pos_tail: tail(f.pos_tail(), format!("j > {}", f.hi())),
        }
    }
}

/// Serialized form of a local cohomology table; vanishing modules are absent.
pub fn cohomology_entries(table: &LocalCohomologyTable) -> Vec<CohomologyEntry> {
    table
        .entries()
        .iter()
        .map(|(&q, f)| CohomologyEntry::new(q, f))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub numerator: String,
    pub denominator_exponents: Vec<u32>,
    pub rational_function: String,
    pub dimension: u32,
    #[serde(serialize_with = "serialize_bigint")]
    pub multiplicity: BigInt,
    pub series_degree: i64,
    #[serde(serialize_with = "serialize_bigints")]
    pub coefficients: Vec<BigInt>,
    pub hilbert_polynomial: String,
}

impl SeriesReport {
    pub fn new(series: &HilbertSeries, coefficients: usize) -> Result<Self> {
        let f = series.to_dimension_function()?;
        Ok(Self {
            numerator: series.numerator().to_string(),
            denominator_exponents: series.denominator_exponents().to_vec(),
            rational_function: series.to_string(),
            dimension: series.krull_dimension()?,
            multiplicity: series.multiplicity()?,
            series_degree: series.series_degree()?,
            coefficients: series.expand(coefficients.saturating_sub(1)),
            hilbert_polynomial: f.pos_tail().to_string(),
        })
    }
}

/// Top-level JSON document emitted by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub input_echo: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal_cohen_macaulay: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<CohomologyEntry>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictReport>,
}

impl ReportEnvelope {
    pub fn new(inputs: &[&GradedRingSpec]) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            input_echo: inputs.iter().map(|s| s.to_string()).collect(),
            twist: None,
            maximal_cohen_macaulay: None,
            series: None,
            invariants: None,
            cohomology: None,
            verdicts: Vec::new(),
        }
    }
}
