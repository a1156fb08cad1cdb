//! Polynomial rings and graded complete intersections, described
//! symbolically.
//!
//! A complete intersection `K[x_1..x_n]/(f_1..f_h)` is determined, as far as
//! every invariant computed here goes, by `n` and the degrees of the `f_i`.
//! The field `K` is never represented. Hypotheses that need the actual
//! equations (isolated singularity, being a domain) are carried as caller
//! assertions and never verified.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_poly::{binomial, IntPolynomial};
use crate::hilbert::{GradedDimensionFunction, HilbertSeries};

/// Unverified hypotheses a caller may assert about a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    IsolatedSingularity,
    Domain,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Assumption::IsolatedSingularity => "isolated singularity at the homogeneous maximal ideal",
            Assumption::Domain => "domain",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Polynomial { n: u32 },
    /// Relation degrees are kept sorted ascending.
    CompleteIntersection { n: u32, degrees: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRingSpec {
    kind: RingKind,
    assumptions: BTreeSet<Assumption>,
}

impl GradedRingSpec {
    pub fn polynomial(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("polynomial ring needs at least one variable".into()));
        }
        Ok(Self {
            kind: RingKind::Polynomial { n },
            assumptions: BTreeSet::new(),
        })
    }

    pub fn complete_intersection(n: u32, mut degrees: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("complete intersection needs at least one variable".into()));
        }
        if degrees.is_empty() {
            return Err(Error::InvalidSpec("complete intersection needs at least one relation".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSpec(format!(
                "relation degree {d} is below 2; drop the linear form and reduce n instead"
            )));
        }
        if degrees.len() >= n as usize {
            return Err(Error::InvalidSpec(format!(
                "{} relations in {n} variables leave no positive dimension",
                degrees.len()
            )));
        }
        degrees.sort_unstable();
        Ok(Self {
            kind: RingKind::CompleteIntersection { n, degrees },
            assumptions: BTreeSet::new(),
        })
    }

    pub fn with_assumption(mut self, assumption: Assumption) -> Self {
        self.assumptions.insert(assumption);
        self
    }

    pub fn without_assumption(mut self, assumption: Assumption) -> Self {
        self.assumptions.remove(&assumption);
        self
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn assumptions(&self) -> &BTreeSet<Assumption> {
        &self.assumptions
    }

    pub fn assumes(&self, assumption: Assumption) -> bool {
        self.assumptions.contains(&assumption)
    }

    /// Number of variables.
    pub fn n(&self) -> u32 {
        match self.kind {
            RingKind::Polynomial { n } | RingKind::CompleteIntersection { n, .. } => n,
        }
    }

    /// Relation degrees; empty for a polynomial ring.
    pub fn degrees(&self) -> &[u32] {
        match &self.kind {
            RingKind::Polynomial { .. } => &[],
            RingKind::CompleteIntersection { degrees, .. } => degrees,
        }
    }

    /// Number of relations.
    pub fn h(&self) -> u32 {
        self.degrees().len() as u32
    }

    /// Sum of the relation degrees.
    pub fn total_degree(&self) -> u32 {
        self.degrees().iter().sum()
    }

    pub fn krull_dimension(&self) -> u32 {
        self.n() - self.h()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        matches!(self.kind, RingKind::Polynomial { .. })
    }

    /// `prod_j (1 - t^{d_j}) / (1 - t)^n`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let numerator = self
            .degrees()
            .iter()
            .fold(IntPolynomial::one(), |acc, &d| &acc * &IntPolynomial::one_minus_t_pow(d));
        HilbertSeries::new_unchecked(numerator, vec![1; self.n() as usize])
            .expect("exponents are positive")
    }

    /// Graded dimensions of the ring as an eventually-polynomial function.
    pub fn dimension_function(&self) -> GradedDimensionFunction {
        self.hilbert_series()
            .to_dimension_function()
            .expect("complete intersection series are well formed")
    }

    /// `dim_K [A]_j` by inclusion-exclusion over the Koszul resolution,
    /// independent of the series machinery.
    pub fn koszul_graded_dimension(&self, j: i64) -> BigInt {
        if j < 0 {
            return BigInt::zero();
        }
        let n = self.n() as i64;
        let degrees = self.degrees();
        let mut total = BigInt::zero();
        for mask in 0u32..(1 << degrees.len()) {
            let shift: i64 = degrees
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &d)| d as i64)
                .sum();
            if j < shift {
                continue;
            }
            let term = binomial(n - 1 + j - shift, n - 1).expect("n >= 1");
            if mask.count_ones() % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// `sum d_j - n`.
    pub fn a_invariant(&self) -> i64 {
        self.total_degree() as i64 - self.n() as i64
    }

    /// Product of the relation degrees.
    pub fn multiplicity(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64).product()
    }
}

/// Free function form of [`GradedRingSpec::hilbert_series`].
pub fn ring_hilbert_series(spec: &GradedRingSpec) -> HilbertSeries {
    spec.hilbert_series()
}

impl fmt::Display for GradedRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Polynomial { n } => write!(f, "poly:n={n}")?,
            RingKind::CompleteIntersection { n, degrees } => {
                let degs: Vec<String> = degrees.iter().map(u32::to_string).collect();
                write!(f, "ci:n={n},deg={}", degs.join("+"))?;
                if self.assumes(Assumption::IsolatedSingularity) {
                    f.write_str(",assume=isolated")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for GradedRingSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_uint(text: &str, position: usize) -> Result<u32> {
    if text.is_empty() {
        return Err(parse_error(position, "expected an integer"));
    }
    if let Some(offset) = text.find(|c: char| !c.is_ascii_digit()) {
        return Err(parse_error(position + offset, "expected a digit"));
    }
    text.parse()
        .map_err(|_| parse_error(position, format!("integer {text} is out of range")))
}

/// Parses `poly:n=<int>` or `ci:n=<int>,deg=<int>[+<int>]*[,assume=isolated]`,
/// case-insensitively. Positions in errors are byte offsets into the input.
impl FromStr for GradedRingSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        if let Some(pos) = input.find(char::is_whitespace) {
            return Err(parse_error(pos, "whitespace is not allowed in a ring spec"));
        }
        let text = input.to_ascii_lowercase();
        let colon = text
            .find(':')
            .ok_or_else(|| parse_error(text.len(), "expected ':' after the ring kind"))?;
        let kind = &text[..colon];
        if kind != "poly" && kind != "ci" {
            return Err(parse_error(0, format!("unknown ring kind '{kind}', expected 'poly' or 'ci'")));
        }

        let mut n = None;
        let mut degrees = None;
        let mut isolated = false;
        let mut offset = colon + 1;
        for field in text[colon + 1..].split(',') {
            let start = offset;
            offset += field.len() + 1;
            let eq = field
                .find('=')
                .ok_or_else(|| parse_error(start, "expected key=value"))?;
            let (key, value) = (&field[..eq], &field[eq + 1..]);
            let value_pos = start + eq + 1;
            match (kind, key) {
                (_, "n") if n.is_none() => n = Some(parse_uint(value, value_pos)?),
                ("ci", "deg") if degrees.is_none() => {
                    let mut parsed = Vec::new();
                    let mut pos = value_pos;
                    for part in value.split('+') {
                        parsed.push(parse_uint(part, pos)?);
                        pos += part.len() + 1;
                    }
                    degrees = Some(parsed);
                }
                ("ci", "assume") if !isolated => {
                    if value != "isolated" {
                        return Err(parse_error(value_pos, "the only supported assumption is 'isolated'"));
                    }
                    isolated = true;
                }
                _ => return Err(parse_error(start, format!("unexpected or repeated key '{key}'"))),
            }
        }

        let n = n.ok_or_else(|| parse_error(text.len(), "missing n=<int>"))?;
        let spec = if kind == "poly" {
            GradedRingSpec::polynomial(n)?
        } else {
            let degrees = degrees.ok_or_else(|| parse_error(text.len(), "missing deg=<int>[+<int>]*"))?;
            GradedRingSpec::complete_intersection(n, degrees)?
        };
        Ok(if isolated {
            spec.with_assumption(Assumption::IsolatedSingularity)
        } else {
            spec
        })
    }
}
