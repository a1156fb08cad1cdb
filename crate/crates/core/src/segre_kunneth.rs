//! Segre products `A[k] # B` and their graded local cohomology.
//!
//! Graded dimensions of a Segre product are degreewise products of the
//! factors' dimensions, so the ring series is a Hadamard product computed on
//! eventually-polynomial functions. Local cohomology of the factors comes
//! from graded duality (complete intersections are Gorenstein), and the
//! Künneth formula assembles the cohomology of the product:
//!
//! ```text
//! H^q(M # N) = M # H^q(N)  +  H^q(M) # N  +  sum_{i + j = q + 1} H^i(M) # H^j(N)
//! ```
//!
//! Twists act on factor `A` with `[A[k]]_j = [A]_{k+j}` and
//! `H^i(A[k]) = H^i(A)[k]`. Segre products of modules range over all
//! degrees `j`; for the ring itself the factors vanish in negative degrees.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::graded_rings::GradedRingSpec;
use crate::hilbert::{GradedDimensionFunction, HilbertSeries, Length};

/// `A[twist] # B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegreRingSpec {
    factor_a: GradedRingSpec,
    factor_b: GradedRingSpec,
    twist: i64,
}

impl SegreRingSpec {
    pub fn new(factor_a: GradedRingSpec, factor_b: GradedRingSpec, twist: i64) -> Result<Self> {
        for (factor, spec) in [('A', &factor_a), ('B', &factor_b)] {
            let dimension = spec.krull_dimension();
            if dimension < 2 {
                return Err(Error::FactorDimensionTooSmall { factor, dimension });
            }
        }
        Ok(Self {
            factor_a,
            factor_b,
            twist,
        })
    }

    /// The Segre product ring `A # B`.
    pub fn ring(factor_a: GradedRingSpec, factor_b: GradedRingSpec) -> Result<Self> {
        Self::new(factor_a, factor_b, 0)
    }

    pub fn factor_a(&self) -> &GradedRingSpec {
        &self.factor_a
    }

    pub fn factor_b(&self) -> &GradedRingSpec {
        &self.factor_b
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn with_twist(&self, twist: i64) -> Self {
        Self {
            twist,
            ..self.clone()
        }
    }

    pub fn swapped(&self) -> Result<Self> {
        if self.twist != 0 {
            return Err(Error::InvalidSpec("only untwisted Segre products can swap factors".into()));
        }
        Self::ring(self.factor_b.clone(), self.factor_a.clone())
    }

    /// `dim A + dim B - 1`.
    pub fn krull_dimension(&self) -> u32 {
        self.factor_a.krull_dimension() + self.factor_b.krull_dimension() - 1
    }

    /// Graded dimensions of `A[twist] # B`.
    pub fn dimension_function(&self) -> GradedDimensionFunction {
        self.factor_a
            .dimension_function()
            .shift(self.twist)
            .pointwise_product(&self.factor_b.dimension_function())
    }

    /// Twists `k` with `a_A < k < -a_B`.
    pub fn mcm_window(&self) -> Range<i64> {
        mcm_window(self.factor_a.a_invariant(), self.factor_b.a_invariant())
    }
}

/// The integers strictly between `a_a` and `-a_b`.
pub fn mcm_window(a_a: i64, a_b: i64) -> Range<i64> {
    (a_a + 1)..(-a_b).max(a_a + 1)
}

/// Hilbert series of the Segre product ring, as a Hadamard product.
pub fn segre_hilbert_series(spec: &SegreRingSpec) -> Result<HilbertSeries> {
    if spec.twist != 0 {
        return Err(Error::TwistedSeries(spec.twist));
    }
    HilbertSeries::from_dimension_function(&spec.dimension_function(), spec.krull_dimension())
}

/// `dim [H^{dim A}_m(A)]_j = dim [A]_{a_A - j}`, valid because polynomial
/// rings and complete intersections are Gorenstein.
pub fn top_local_cohomology(spec: &GradedRingSpec) -> GradedDimensionFunction {
    spec.dimension_function().reflect(spec.a_invariant())
}

/// Graded local cohomology modules `q -> H^q_m(M)`, with vanishing modules
/// left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCohomologyTable {
    ring_dimension: u32,
    entries: BTreeMap<u32, GradedDimensionFunction>,
}

impl LocalCohomologyTable {
    pub fn new(ring_dimension: u32, entries: BTreeMap<u32, GradedDimensionFunction>) -> Self {
        let entries = entries.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        Self {
            ring_dimension,
            entries,
        }
    }

    /// Cohen-Macaulay factor: cohomology only in the top index.
    pub fn cohen_macaulay(ring_dimension: u32, top: GradedDimensionFunction) -> Self {
        Self::new(ring_dimension, BTreeMap::from([(ring_dimension, top)]))
    }

    pub fn ring_dimension(&self) -> u32 {
        self.ring_dimension
    }

    pub fn entries(&self) -> &BTreeMap<u32, GradedDimensionFunction> {
        &self.entries
    }

    pub fn entry(&self, q: u32) -> Option<&GradedDimensionFunction> {
        self.entries.get(&q)
    }

    pub fn top(&self) -> Option<&GradedDimensionFunction> {
        self.entry(self.ring_dimension)
    }

    /// Nonvanishing entries below the top index.
    pub fn lower_entries(&self) -> impl Iterator<Item = (u32, &GradedDimensionFunction)> {
        self.entries
            .iter()
            .filter(|(&q, _)| q < self.ring_dimension)
            .map(|(&q, f)| (q, f))
    }

    /// Lengths of `H^q` for every `q` below the top index.
    pub fn lower_lengths(&self) -> BTreeMap<u32, Length> {
        (0..self.ring_dimension)
            .map(|q| (q, self.entry(q).map_or_else(Length::zero, |f| f.total_length())))
            .collect()
    }

    pub fn is_maximal_cohen_macaulay(&self) -> bool {
        self.lower_entries().next().is_none()
    }
}

/// Local cohomology of `M # N` from the modules and their cohomology tables.
///
/// `module_a`/`module_b` are the graded dimensions of `M` and `N`.
pub fn kunneth_sum(
    module_a: &GradedDimensionFunction,
    cohomology_a: &LocalCohomologyTable,
    module_b: &GradedDimensionFunction,
    cohomology_b: &LocalCohomologyTable,
) -> LocalCohomologyTable {
    let dimension = cohomology_a.ring_dimension + cohomology_b.ring_dimension - 1;
    let mut entries: BTreeMap<u32, GradedDimensionFunction> = BTreeMap::new();
    let mut add = |q: u32, f: GradedDimensionFunction| {
        let merged = match entries.remove(&q) {
            Some(existing) => existing.sum(&f),
            None => f,
        };
        entries.insert(q, merged);
    };
    for (&q, hb) in cohomology_b.entries() {
        add(q, module_a.pointwise_product(hb));
    }
    for (&q, ha) in cohomology_a.entries() {
        add(q, ha.pointwise_product(module_b));
    }
    for (&i, ha) in cohomology_a.entries() {
        for (&j, hb) in cohomology_b.entries() {
            if i + j >= 1 {
                add(i + j - 1, ha.pointwise_product(hb));
            }
        }
    }
    LocalCohomologyTable::new(dimension, entries)
}

/// Local cohomology of factor `A` or `B` on its own.
pub fn factor_cohomology(spec: &GradedRingSpec) -> LocalCohomologyTable {
    LocalCohomologyTable::cohen_macaulay(spec.krull_dimension(), top_local_cohomology(spec))
}

/// Local cohomology table of `A[twist] # B` over `A # B`.
pub fn kunneth_table(spec: &SegreRingSpec) -> LocalCohomologyTable {
    let k = spec.twist;
    let (a, b) = (&spec.factor_a, &spec.factor_b);
    let module_a = a.dimension_function();
    let module_b = b.dimension_function();
    let top_a = module_a.reflect(a.a_invariant()).shift(k);
    let top_b = module_b.reflect(b.a_invariant());
    kunneth_sum(
        &module_a.shift(k),
        &LocalCohomologyTable::cohen_macaulay(a.krull_dimension(), top_a),
        &module_b,
        &LocalCohomologyTable::cohen_macaulay(b.krull_dimension(), top_b),
    )
}

/// Whether `A[twist] # B` is maximal Cohen-Macaulay over `A # B`, read off
/// the Künneth table and cross-checked against the twist window.
pub fn is_mcm_twist(spec: &SegreRingSpec) -> Result<bool> {
    let by_table = kunneth_table(spec).is_maximal_cohen_macaulay();
    let by_window = spec.mcm_window().contains(&spec.twist);
    if by_table != by_window {
        return Err(Error::Inconsistent(format!(
            "{} # {} twisted by {}: Künneth table says MCM = {by_table}, window {:?} says {by_window}",
            spec.factor_a,
            spec.factor_b,
            spec.twist,
            spec.mcm_window()
        )));
    }
    Ok(by_table)
}
