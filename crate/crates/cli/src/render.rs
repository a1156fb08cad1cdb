//! Plain-text rendering of report envelopes.

use std::fmt::Write;

use segre_mcm_core::report::{CohomologyEntry, SeriesReport};
use segre_mcm_core::{GradedRingSpec, InvariantReport, ReportEnvelope, VerdictReport};

fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn series(ring: &GradedRingSpec, s: &SeriesReport) -> String {
    let mut out = String::new();
    writeln!(out, "ring:               {ring}").unwrap();
    write_series(&mut out, s);
    out
}

fn write_series(out: &mut String, s: &SeriesReport) {
    writeln!(out, "hilbert series:     {}", s.rational_function).unwrap();
    writeln!(out, "coefficients:       {}", join(&s.coefficients, ", ")).unwrap();
    writeln!(out, "dimension:          {}", s.dimension).unwrap();
    writeln!(out, "multiplicity:       {}", s.multiplicity).unwrap();
    writeln!(out, "series degree:      {}", s.series_degree).unwrap();
    writeln!(out, "hilbert polynomial: {}", s.hilbert_polynomial).unwrap();
}

fn write_invariants(out: &mut String, inv: &InvariantReport) {
    writeln!(out, "dimension:          {}", inv.dimension).unwrap();
    writeln!(out, "multiplicity e:     {}", inv.multiplicity_e).unwrap();
    writeln!(out, "a-invariant:        {}", inv.a_invariant).unwrap();
    writeln!(out, "I-invariant:        {}", inv.i_invariant).unwrap();
    for (q, len) in &inv.lower_cohomology_lengths {
        writeln!(out, "  length H^{q}:       {len}").unwrap();
    }
    match &inv.paramdeg_interval {
        Some([lo, hi]) => writeln!(out, "parameter degree:   [{lo}, {hi}]").unwrap(),
        None => writeln!(out, "parameter degree:   unbounded").unwrap(),
    }
    match inv.rank_bound() {
        Some(r) => writeln!(out, "very small rank:    <= {r}").unwrap(),
        None => writeln!(out, "very small rank:    no bound").unwrap(),
    }
}

fn write_cohomology(out: &mut String, entries: &[CohomologyEntry]) {
    for entry in entries {
        let support: Vec<String> = entry.support.iter().map(|(j, v)| format!("{j}:{v}")).collect();
        writeln!(out, "H^{} length {}", entry.q, entry.length).unwrap();
        if !support.is_empty() {
            writeln!(out, "  degrees {}", support.join(" ")).unwrap();
        }
        if let Some(tail) = &entry.neg_tail {
            writeln!(out, "  {tail}").unwrap();
        }
        if let Some(tail) = &entry.pos_tail {
            writeln!(out, "  {tail}").unwrap();
        }
    }
}

fn write_verdict(out: &mut String, v: &VerdictReport) {
    writeln!(out, "{}: {}", v.question, v.outcome).unwrap();
    for fact in &v.evidence {
        writeln!(out, "  {} = {}", fact.name, fact.value).unwrap();
    }
    for assumption in &v.assumptions_used {
        writeln!(out, "  assumes: {assumption}").unwrap();
    }
}

fn header(out: &mut String, env: &ReportEnvelope) {
    writeln!(out, "A = {}", env.input_echo[0]).unwrap();
    writeln!(out, "B = {}", env.input_echo[1]).unwrap();
}

pub fn segre(env: &ReportEnvelope) -> String {
    let mut out = String::new();
    header(&mut out, env);
    if let Some(s) = &env.series {
        write_series(&mut out, s);
    }
    if let Some(inv) = &env.invariants {
        write_invariants(&mut out, inv);
    }
    out
}

pub fn localcoh(env: &ReportEnvelope, dimension: u32) -> String {
    let mut out = String::new();
    header(&mut out, env);
    writeln!(out, "twist:              {}", env.twist.unwrap_or(0)).unwrap();
    writeln!(out, "ring dimension:     {dimension}").unwrap();
    if let Some(mcm) = env.maximal_cohen_macaulay {
        writeln!(out, "MCM:                {mcm}").unwrap();
    }
    if let Some(entries) = &env.cohomology {
        write_cohomology(&mut out, entries);
    }
    out
}

pub fn verdict(env: &ReportEnvelope) -> String {
    let mut out = String::new();
    header(&mut out, env);
    if let Some(inv) = &env.invariants {
        write_invariants(&mut out, inv);
    }
    for v in &env.verdicts {
        write_verdict(&mut out, v);
    }
    out
}
