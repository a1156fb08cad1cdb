//! Numeric invariants (multiplicity, I-invariant, parameter-degree bounds)
//! and the decision procedures for rank-one and very small maximal
//! Cohen-Macaulay modules.
//!
//! Every verdict is ternary. The theorems behind the `does_not_exist`
//! branches are sufficient conditions resting on hypotheses this crate
//! cannot check (isolated singularity, class-group identifications); those
//! are listed in `assumptions_used` whenever the logic consumes them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::graded_rings::{Assumption, GradedRingSpec};
use crate::hilbert::Length;
use crate::report::serialize_bigint;
use crate::segre_kunneth::{is_mcm_twist, kunneth_table, segre_hilbert_series, LocalCohomologyTable, SegreRingSpec};

const RESIDUE_FIELD: &str = "the residue field K is infinite";
const LEMMA_AMBIENT: &str =
    "R is an excellent normal domain that is Cohen-Macaulay on the punctured spectrum (follows from the isolated singularity of A)";
const UFD_BY_CODIMENSION: &str =
    "A is a UFD: a complete intersection regular in codimension 3 is factorial (Grothendieck)";
const CLASS_GROUP: &str = "Cl(R) = Z, generated by P = A[1]#B, with inverse class Q = A[-1]#B";
const RANK_ONE_ARE_TWISTS: &str =
    "every rank one MCM over R is a symbolic power of P or Q, i.e. isomorphic to A[k]#B for some k";
const COMPLETION: &str =
    "Cl(R) -> Cl(completion of R) is an isomorphism (Flenner: R is graded, R_2 and S_3)";
const KUNNETH_REFLEXIVE: &str = "A and B are normal domains, so the Künneth formula applies to the reflexive modules A[k]#B";

/// `I(R) = sum_{i < dim} binomial(dim - 1, i) * length(H^i_m(R))`.
pub fn i_invariant(table: &LocalCohomologyTable) -> Length {
    let top = table.ring_dimension() as i64 - 1;
    table
        .lower_lengths()
        .into_iter()
        .map(|(i, length)| {
            let weight = crate::exact_poly::binomial(top, i as i64).expect("nonnegative index");
            length.weighted(&weight)
        })
        .sum()
}

/// `[e, e + I]`: the parameter degree lies in this interval.
pub fn paramdeg_interval(e: &BigInt, i: &BigInt) -> [BigInt; 2] {
    [e.clone(), e + i]
}

/// Largest rank a very small MCM can have: `rank * e <= e + I`.
pub fn very_small_rank_bound(e: &BigInt, i: &BigInt) -> BigInt {
    assert!(e >= &BigInt::one(), "multiplicity must be positive");
    (e + i) / e
}

/// Invariants of a Segre product ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dimension: u32,
    #[serde(serialize_with = "serialize_bigint")]
    pub multiplicity_e: BigInt,
    pub a_invariant: i64,
    pub i_invariant: Length,
    pub lower_cohomology_lengths: BTreeMap<u32, Length>,
    #[serde(serialize_with = "serialize_interval")]
    pub paramdeg_interval: Option<[BigInt; 2]>,
}

fn serialize_interval<S: serde::Serializer>(
    interval: &Option<[BigInt; 2]>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match interval {
        None => serializer.serialize_none(),
        Some([lo, hi]) => {
            let mut seq = serializer.serialize_seq(Some(2))?;
            seq.serialize_element(&Length::Finite(lo.clone()))?;
            seq.serialize_element(&Length::Finite(hi.clone()))?;
            seq.end()
        }
    }
}

impl InvariantReport {
    pub fn is_cohen_macaulay(&self) -> bool {
        self.i_invariant == Length::zero()
    }

    pub fn rank_bound(&self) -> Option<BigInt> {
        self.i_invariant
            .finite()
            .map(|i| very_small_rank_bound(&self.multiplicity_e, i))
    }
}

/// Computes the invariants of `A # B` together with its Künneth table.
pub fn segre_invariants(spec: &SegreRingSpec) -> Result<(InvariantReport, LocalCohomologyTable)> {
    let ring = spec.with_twist(0);
    let series = segre_hilbert_series(&ring)?;
    let table = kunneth_table(&ring);
    let multiplicity_e = series.multiplicity()?;
    let i_invariant = i_invariant(&table);
    let a_invariant = table
        .top()
        .and_then(|top| top.top_degree())
        .expect("top cohomology of a Segre ring is bounded above and nonzero");
    let paramdeg_interval = i_invariant
        .finite()
        .map(|i| paramdeg_interval(&multiplicity_e, i));
    let report = InvariantReport {
        dimension: ring.krull_dimension(),
        multiplicity_e,
        a_invariant,
        lower_cohomology_lengths: table.lower_lengths(),
        i_invariant,
        paramdeg_interval,
    };
    Ok((report, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    RankOneMcm,
    VerySmallMcm,
    UfdRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Exists,
    DoesNotExist,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Exists => "exists",
            Outcome::DoesNotExist => "does_not_exist",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::RankOneMcm => "rank_one_mcm",
            Question::VerySmallMcm => "very_small_mcm",
            Question::UfdRule => "ufd_rule",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FactValue {
    Integer(#[serde(serialize_with = "serialize_bigint")] BigInt),
    Length(Length),
    Flag(bool),
    Twists(Vec<i64>),
    Text(String),
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactValue::Integer(n) => write!(f, "{n}"),
            FactValue::Length(l) => write!(f, "{l}"),
            FactValue::Flag(b) => write!(f, "{b}"),
            FactValue::Twists(ks) => {
                let parts: Vec<String> = ks.iter().map(i64::to_string).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            FactValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for FactValue {
    fn from(n: i64) -> Self {
        FactValue::Integer(n.into())
    }
}

impl From<BigInt> for FactValue {
    fn from(n: BigInt) -> Self {
        FactValue::Integer(n)
    }
}

impl From<bool> for FactValue {
    fn from(b: bool) -> Self {
        FactValue::Flag(b)
    }
}

impl From<Length> for FactValue {
    fn from(l: Length) -> Self {
        FactValue::Length(l)
    }
}

impl From<&str> for FactValue {
    fn from(s: &str) -> Self {
        FactValue::Text(s.to_string())
    }
}

impl From<String> for FactValue {
    fn from(s: String) -> Self {
        FactValue::Text(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: FactValue,
}

/// Outcome of one decision procedure, with the facts it used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub question: Question,
    pub outcome: Outcome,
    pub evidence: Vec<Fact>,
    pub assumptions_used: Vec<String>,
}

impl VerdictReport {
    fn new(question: Question) -> Self {
        Self {
            question,
            outcome: Outcome::Inconclusive,
            evidence: Vec::new(),
            assumptions_used: Vec::new(),
        }
    }

    fn fact(&mut self, name: &str, value: impl Into<FactValue>) -> &mut Self {
        self.evidence.push(Fact {
            name: name.to_string(),
            value: value.into(),
        });
        self
    }

    fn assume(&mut self, assumption: impl Into<String>) -> &mut Self {
        let assumption = assumption.into();
        if !self.assumptions_used.contains(&assumption) {
            self.assumptions_used.push(assumption);
        }
        self
    }

    pub fn evidence(&self, name: &str) -> Option<&FactValue> {
        self.evidence.iter().find(|f| f.name == name).map(|f| &f.value)
    }

    /// Twists reported as rank-one MCM witnesses, if any.
    pub fn witnesses(&self) -> &[i64] {
        match self.evidence("witness_twists") {
            Some(FactValue::Twists(ks)) => ks,
            _ => &[],
        }
    }
}

fn theorem_obstruction(a: &GradedRingSpec, b: &GradedRingSpec) -> Option<String> {
    let (n, d, dim_a) = (a.n(), a.total_degree(), a.krull_dimension());
    if a.is_polynomial_ring() {
        Some("A is a polynomial ring, not a complete intersection with relations".into())
    } else if !(b.is_polynomial_ring() && b.n() == 2) {
        Some(format!("B = {b} is not the polynomial ring in two variables"))
    } else if d <= n {
        Some(format!("total relation degree d = {d} does not exceed n = {n}"))
    } else if dim_a < 4 {
        Some(format!("dim A = {dim_a} is below 4"))
    } else if !a.assumes(Assumption::IsolatedSingularity) {
        Some("A is not asserted to have an isolated singularity".into())
    } else {
        None
    }
}

/// Decides whether `A # B` (and its completion) has a rank-one MCM.
pub fn rank_one_verdict(a: &GradedRingSpec, b: &GradedRingSpec) -> Result<VerdictReport> {
    let ring = SegreRingSpec::ring(a.clone(), b.clone())?;
    let (a_a, a_b) = (a.a_invariant(), b.a_invariant());
    let window = ring.mcm_window();
    let mut report = VerdictReport::new(Question::RankOneMcm);
    report
        .fact("a_A", a_a)
        .fact("a_B", a_b)
        .fact("a_A + a_B", a_a + a_b)
        .fact("window", format!("{a_a} < k < {}", -a_b))
        .fact("window_nonempty", !window.is_empty());

    match theorem_obstruction(a, b) {
        None => {
            // d > n and a_B = -2 force a_A + a_B >= -1, so the window is empty
            debug_assert!(window.is_empty());
            for k in (a_a - 1)..=(-a_b + 1) {
                if is_mcm_twist(&ring.with_twist(k))? {
                    return Err(crate::error::Error::Inconsistent(format!(
                        "twist {k} is MCM although the window is empty"
                    )));
                }
            }
            report.outcome = Outcome::DoesNotExist;
            report
                .fact("d - n - 2", a.total_degree() as i64 - a.n() as i64 - 2)
                .fact("dim A", a.krull_dimension() as i64)
                .assume(Assumption::IsolatedSingularity.to_string() + " (A, asserted)")
                .assume(UFD_BY_CODIMENSION)
                .assume(CLASS_GROUP)
                .assume(RANK_ONE_ARE_TWISTS)
                .assume(COMPLETION);
        }
        Some(_) if !window.is_empty() => {
            let witnesses: Vec<i64> = window.clone().collect();
            for &k in &witnesses {
                if !is_mcm_twist(&ring.with_twist(k))? {
                    return Err(crate::error::Error::Inconsistent(format!(
                        "window twist {k} is not MCM"
                    )));
                }
            }
            for k in [window.start - 1, window.end] {
                if is_mcm_twist(&ring.with_twist(k))? {
                    return Err(crate::error::Error::Inconsistent(format!(
                        "twist {k} outside the window is MCM"
                    )));
                }
            }
            report.outcome = Outcome::Exists;
            report
                .fact("witness_twists", FactValue::Twists(witnesses))
                .fact("witness_module", format!("A[{}]#B", window.start));
            if !a.is_polynomial_ring() {
                report.assume(KUNNETH_REFLEXIVE);
            }
        }
        Some(reason) => {
            report
                .fact("limiting_fact", reason)
                .fact(
                    "note",
                    "no twist A[k]#B is MCM, but rank one modules outside the twist family are not excluded",
                );
        }
    }
    Ok(report)
}

/// Decides whether the completion of `A # B` admits a very small MCM.
pub fn very_small_verdict(a: &GradedRingSpec, b: &GradedRingSpec) -> Result<VerdictReport> {
    let ring = SegreRingSpec::ring(a.clone(), b.clone())?;
    let (invariants, _) = segre_invariants(&ring)?;
    very_small_from(a, b, &invariants)
}

/// Same as [`very_small_verdict`] with the invariants already computed.
pub fn very_small_from(a: &GradedRingSpec, b: &GradedRingSpec, invariants: &InvariantReport) -> Result<VerdictReport> {
    let mut report = VerdictReport::new(Question::VerySmallMcm);
    report
        .fact("e", invariants.multiplicity_e.clone())
        .fact("I", invariants.i_invariant.clone());

    let Some(i) = invariants.i_invariant.finite() else {
        report.fact("limiting_fact", "I-invariant is infinite");
        return Ok(report);
    };
    if i.is_zero() {
        report.outcome = Outcome::Exists;
        report
            .fact("cohen_macaulay", true)
            .fact(
                "justification",
                "R is Cohen-Macaulay, so l(R/(x)) = e(x, R) >= e(R) for every system of parameters x; R itself is a very small MCM",
            )
            .assume(RESIDUE_FIELD);
        return Ok(report);
    }

    let bound = very_small_rank_bound(&invariants.multiplicity_e, i);
    report
        .fact("cohen_macaulay", false)
        .fact("rank_bound", bound.clone());
    if !bound.is_one() {
        report.fact(
            "limiting_fact",
            format!("rank bound is {bound}: I >= e, so very small MCM of higher rank are not excluded"),
        );
        return Ok(report);
    }
    let rank_one = rank_one_verdict(a, b)?;
    report.fact("rank_one", rank_one.outcome.to_string());
    match rank_one.outcome {
        Outcome::DoesNotExist => {
            report.outcome = Outcome::DoesNotExist;
            report.assume(LEMMA_AMBIENT).assume(RESIDUE_FIELD);
            for assumption in rank_one.assumptions_used {
                report.assume(assumption);
            }
        }
        Outcome::Exists => {
            report.fact(
                "limiting_fact",
                "rank one MCM exist, but whether their multiplicity reaches the parameter degree is not decided",
            );
        }
        Outcome::Inconclusive => {
            report.fact("limiting_fact", "rank one MCM status is unknown");
        }
    }
    Ok(report)
}

/// A non-Cohen-Macaulay local UFD of dimension 3 with `I < e` has no very
/// small MCM.
pub fn ufd_rule(dimension: u32, is_ufd: bool, is_cm: bool, e: &BigInt, i: &Length) -> VerdictReport {
    let mut report = VerdictReport::new(Question::UfdRule);
    report
        .fact("dimension", dimension as i64)
        .fact("ufd_asserted", is_ufd)
        .fact("cohen_macaulay", is_cm)
        .fact("e", e.clone())
        .fact("I", i.clone());
    let failure = if dimension != 3 {
        Some(format!("dimension {dimension} is not 3"))
    } else if !is_ufd {
        Some("ring is not asserted to be a UFD".into())
    } else if is_cm {
        Some("ring is Cohen-Macaulay".into())
    } else {
        match i.finite() {
            Some(i) if i < e => None,
            Some(i) => Some(format!("I = {i} is not below e = {e}")),
            None => Some("I-invariant is infinite".into()),
        }
    };
    match failure {
        Some(reason) => {
            report.fact("limiting_fact", reason);
        }
        None => {
            report.outcome = Outcome::DoesNotExist;
            report
                .assume("R is an excellent local UFD (asserted), so Cl(R) is trivial")
                .assume(RESIDUE_FIELD);
        }
    }
    report
}
