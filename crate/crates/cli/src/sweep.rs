//! Parameter sweeps over the complete-intersection family.

use std::io::Write;

use rayon::prelude::*;
use segre_mcm_core::{
    invariants::very_small_from, rank_one_verdict, segre_invariants, Assumption, GradedRingSpec, Length,
    SegreRingSpec,
};
use serde::Serialize;

use crate::CliError;

/// Items evaluated in parallel before their records are written out.
const CHUNK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeRule {
    /// One relation-degree list used for every `n`.
    Fixed(Vec<u32>),
    /// Total relation degree `d = n + offset`, over every split into `h`
    /// degrees of at least 2.
    Offsets(Vec<u32>),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub degree_rule: DegreeRule,
    pub h_max: u32,
    pub factor_b: GradedRingSpec,
    pub assume_isolated: bool,
    pub theorem_mode: bool,
    pub output_format: OutputFormat,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.n_min > self.n_max {
            return usage(format!("empty n range {}..{}", self.n_min, self.n_max));
        }
        if self.h_max == 0 {
            return usage("h_max must be positive".into());
        }
        match &self.degree_rule {
            DegreeRule::Fixed(degrees) if degrees.is_empty() => return usage("empty degree list".into()),
            DegreeRule::Fixed(degrees) if degrees.len() > self.h_max as usize => {
                return usage(format!("{} fixed degrees exceed h_max = {}", degrees.len(), self.h_max))
            }
            DegreeRule::Offsets(offsets) if offsets.is_empty() => return usage("empty offset list".into()),
            _ => {}
        }
        if self.theorem_mode && self.n_min < self.h_max + 4 {
            return usage(format!(
                "theorem mode needs n >= h_max + 4 = {} so that dim A >= 4",
                self.h_max + 4
            ));
        }
        Ok(())
    }

    /// Factor `A` specs in output order: by `n`, then degree list.
    pub fn items(&self) -> Vec<GradedRingSpec> {
        let mut items = Vec::new();
        for n in self.n_min..=self.n_max {
            let mut lists: Vec<Vec<u32>> = match &self.degree_rule {
                DegreeRule::Fixed(degrees) => vec![degrees.clone()],
                DegreeRule::Offsets(offsets) => (1..=self.h_max)
                    .flat_map(|h| offsets.iter().flat_map(move |&o| partitions(n + o, h, 2)))
                    .collect(),
            };
            lists.sort();
            lists.dedup();
            for degrees in lists {
                if n < degrees.len() as u32 + 2 {
                    continue;
                }
                let Ok(spec) = GradedRingSpec::complete_intersection(n, degrees) else {
                    continue;
                };
                items.push(if self.assume_isolated {
                    spec.with_assumption(Assumption::IsolatedSingularity)
                } else {
                    spec
                });
            }
        }
        items
    }
}

/// Nondecreasing lists of `parts` integers, each at least `min`, summing to `total`.
fn partitions(total: u32, parts: u32, min: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first * parts <= total {
        for mut rest in partitions(total - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// One sweep row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub n: u32,
    pub degrees: String,
    #[serde(rename = "dimA")]
    pub dim_a: u32,
    pub d: u32,
    #[serde(rename = "aA")]
    pub a_a: i64,
    pub e: String,
    #[serde(rename = "I")]
    pub i: String,
    pub rank_bound: String,
    pub rank_one: String,
    pub very_small: String,
}

pub const CSV_HEADER: [&str; 10] = [
    "n", "degrees", "dimA", "d", "aA", "e", "I", "rank_bound", "rank_one", "very_small",
];

pub fn evaluate(a: &GradedRingSpec, b: &GradedRingSpec) -> Result<SweepRecord, CliError> {
    let ring = SegreRingSpec::ring(a.clone(), b.clone())?;
    let (invariants, _) = segre_invariants(&ring)?;
    let rank_one = rank_one_verdict(a, b)?;
    let very_small = very_small_from(a, b, &invariants)?;
    let degrees: Vec<String> = a.degrees().iter().map(u32::to_string).collect();
    Ok(SweepRecord {
        n: a.n(),
        degrees: degrees.join("+"),
        dim_a: a.krull_dimension(),
        d: a.total_degree(),
        a_a: a.a_invariant(),
        e: invariants.multiplicity_e.to_string(),
        i: invariants.i_invariant.to_string(),
        rank_bound: match &invariants.i_invariant {
            Length::Finite(_) => invariants.rank_bound().map(|b| b.to_string()).unwrap_or_default(),
            Length::Infinite => "n/a".into(),
        },
        rank_one: rank_one.outcome.to_string(),
        very_small: very_small.outcome.to_string(),
    })
}

enum Sink<W: Write> {
    Text(W),
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> Sink<W> {
    fn new(format: OutputFormat, mut out: W) -> Result<Self, CliError> {
        Ok(match format {
            OutputFormat::Text => {
                writeln!(
                    out,
                    "{:>4} {:>10} {:>5} {:>4} {:>4} {:>8} {:>8} {:>10} {:>15} {:>15}",
                    "n", "degrees", "dimA", "d", "aA", "e", "I", "rank_bound", "rank_one", "very_small"
                )
                .map_err(CliError::Output)?;
                Sink::Text(out)
            }
            OutputFormat::Json => Sink::Json(out),
            OutputFormat::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(CSV_HEADER).map_err(csv_error)?;
                Sink::Csv(Box::new(w))
            }
        })
    }

    fn write(&mut self, r: &SweepRecord) -> Result<(), CliError> {
        match self {
            Sink::Text(out) => writeln!(
                out,
                "{:>4} {:>10} {:>5} {:>4} {:>4} {:>8} {:>8} {:>10} {:>15} {:>15}",
                r.n, r.degrees, r.dim_a, r.d, r.a_a, r.e, r.i, r.rank_bound, r.rank_one, r.very_small
            )
            .map_err(CliError::Output),
            Sink::Json(out) => {
                serde_json::to_writer(&mut *out, r).map_err(|e| CliError::Output(e.into()))?;
                out.write_all(b"\n").map_err(CliError::Output)
            }
            Sink::Csv(w) => w.serialize(r).map_err(csv_error),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        match self {
            Sink::Text(mut out) | Sink::Json(mut out) => out.flush().map_err(CliError::Output),
            Sink::Csv(mut w) => w.flush().map_err(CliError::Output),
        }
    }
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Output(io),
        other => CliError::Output(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Evaluates the sweep in parallel chunks and streams records in order.
pub fn run<W: Write>(config: &SweepConfig, out: W) -> Result<(), CliError> {
    config.validate()?;
    let mut sink = Sink::new(config.output_format, out)?;
    let items = config.items();
    for chunk in items.chunks(CHUNK) {
        let records: Vec<Result<SweepRecord, CliError>> =
            chunk.par_iter().map(|a| evaluate(a, &config.factor_b)).collect();
        for record in records {
            sink.write(&record?)?;
        }
    }
    sink.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_sorted_and_complete() {
        assert_eq!(partitions(6, 1, 2), vec![vec![6]]);
        assert_eq!(partitions(7, 2, 2), vec![vec![2, 5], vec![3, 4]]);
        assert_eq!(partitions(3, 2, 2), Vec::<Vec<u32>>::new());
        assert_eq!(partitions(6, 3, 2), vec![vec![2, 2, 2]]);
    }

    #[test]
    fn items_follow_n_then_degrees() {
        let config = SweepConfig {
            n_min: 6,
            n_max: 7,
            degree_rule: DegreeRule::Offsets(vec![1, 2]),
            h_max: 2,
            factor_b: GradedRingSpec::polynomial(2).unwrap(),
            assume_isolated: true,
            theorem_mode: true,
            output_format: OutputFormat::Csv,
        };
        config.validate().unwrap();
        let names: Vec<String> = config.items().iter().map(|s| s.to_string()).collect();
        assert_eq!(names[0], "ci:n=6,deg=2+5,assume=isolated");
        assert_eq!(names.iter().filter(|s| s.starts_with("ci:n=6")).count(), 7);
        let ns: Vec<u32> = config.items().iter().map(|s| s.n()).collect();
        assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn theorem_mode_requires_room_for_dim_four() {
        let config = SweepConfig {
            n_min: 5,
            n_max: 7,
            degree_rule: DegreeRule::Offsets(vec![1]),
            h_max: 2,
            factor_b: GradedRingSpec::polynomial(2).unwrap(),
            assume_isolated: true,
            theorem_mode: true,
            output_format: OutputFormat::Text,
        };
        assert!(matches!(config.validate(), Err(CliError::Usage(_))));
    }
}
