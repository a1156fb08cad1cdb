//! Exact Hilbert series, Segre products and graded local cohomology for
//! complete intersections, with decision procedures for rank-one and very
//! small maximal Cohen-Macaulay modules over Segre products.

pub mod error;
pub mod exact_poly;
pub mod graded_rings;
pub mod hilbert;
pub mod invariants;
pub mod report;
pub mod segre_kunneth;

pub use error::{Error, Result};
pub use exact_poly::{binomial, poly_mul, ExactRational, IntPolynomial, RatPolynomial};
pub use graded_rings::{ring_hilbert_series, Assumption, GradedRingSpec, RingKind};
pub use hilbert::{GradedDimensionFunction, HilbertSeries, Length};
pub use invariants::{
    i_invariant, paramdeg_interval, rank_one_verdict, segre_invariants, ufd_rule, very_small_rank_bound,
    very_small_verdict, Fact, FactValue, InvariantReport, Outcome, Question, VerdictReport,
};
pub use report::ReportEnvelope;
pub use segre_kunneth::{
    is_mcm_twist, kunneth_table, mcm_window, segre_hilbert_series, top_local_cohomology, LocalCohomologyTable,
    SegreRingSpec,
};
