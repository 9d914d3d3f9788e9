use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::builders::{
    AuthorCitationBuilder, BuildStats, CollaborationBuilder, CountryCitationBuilder,
    CountryResolver, GraphBuilder, PaperCitationBuilder,
};
use super::graph::LabeledGraph;
use super::GraphsError;
use crate::ingest::{Venue, YearBuckets};

/// The five graph datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    /// Author citation.
    #[serde(rename = "aci")]
    AuthorCitation,
    /// Author collaboration.
    #[serde(rename = "aco")]
    Collaboration,
    /// Paper citation.
    #[serde(rename = "pc")]
    PaperCitation,
    /// Author-paper citation.
    #[serde(rename = "apc")]
    AuthorPaper,
    /// Country citation.
    #[serde(rename = "cc")]
    CountryCitation,
}

impl GraphKind {
    pub const ALL: [GraphKind; 5] = [
        GraphKind::AuthorCitation,
        GraphKind::Collaboration,
        GraphKind::PaperCitation,
        GraphKind::AuthorPaper,
        GraphKind::CountryCitation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::AuthorCitation => "aci",
            GraphKind::Collaboration => "aco",
            GraphKind::PaperCitation => "pc",
            GraphKind::AuthorPaper => "apc",
            GraphKind::CountryCitation => "cc",
        }
    }

    pub fn needs_resolver(self) -> bool {
        self == GraphKind::CountryCitation
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown graph kind {s:?} (expected aci, aco, pc, apc or cc)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnapshotMode {
    /// Graph over every record published up to and including the year.
    Cumulative,
    /// Nodes and edges contributed by the year's records only; references
    /// still resolve against every earlier year.
    PerYear,
}

impl SnapshotMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SnapshotMode::Cumulative => "cumulative",
            SnapshotMode::PerYear => "per_year",
        }
    }
}

/// One graph per year of a range.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotSeries {
    pub kind: GraphKind,
    pub mode: SnapshotMode,
    pub venues: BTreeSet<Venue>,
    pub years: Vec<Snapshot>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub year: i32,
    pub graph: LabeledGraph,
    pub stats: BuildStats,
}

impl SnapshotSeries {
    pub fn get(&self, year: i32) -> Option<&Snapshot> {
        self.years.iter().find(|s| s.year == year)
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }
}

/// Creates a fresh builder for `kind`.
pub fn make_builder<'r>(
    kind: GraphKind,
    resolver: Option<&'r dyn CountryResolver>,
) -> Result<Box<dyn GraphBuilder + 'r>, GraphsError> {
    Ok(match kind {
        GraphKind::AuthorCitation => Box::new(AuthorCitationBuilder::default()),
        GraphKind::Collaboration => Box::new(CollaborationBuilder::default()),
        GraphKind::PaperCitation => Box::new(PaperCitationBuilder::papers_only()),
        GraphKind::AuthorPaper => Box::new(PaperCitationBuilder::with_authors()),
        GraphKind::CountryCitation => Box::new(CountryCitationBuilder::new(
            resolver.ok_or(GraphsError::MissingResolver)?,
        )),
    })
}

/// Builds `kind` from every bucket with year ≤ `through`, from scratch.
pub fn build_through(
    buckets: &YearBuckets,
    kind: GraphKind,
    resolver: Option<&dyn CountryResolver>,
    through: i32,
) -> Result<Snapshot, GraphsError> {
    let mut builder = make_builder(kind, resolver)?;
    for (_, records) in buckets.range(..=through) {
        builder.add_year(records, true);
    }
    Ok(Snapshot {
        year: through,
        graph: builder.graph().clone(),
        stats: builder.stats(),
    })
}

/// Builds the per-year (non-cumulative) graph for a single year.
pub fn build_single_year(
    buckets: &YearBuckets,
    kind: GraphKind,
    resolver: Option<&dyn CountryResolver>,
    year: i32,
) -> Result<Snapshot, GraphsError> {
    let mut builder = make_builder(kind, resolver)?;
    for (&y, records) in buckets.range(..=year) {
        builder.add_year(records, y == year);
    }
    Ok(Snapshot {
        year,
        graph: builder.graph().clone(),
        stats: builder.stats(),
    })
}

/// One snapshot per year of `years`.
///
/// Cumulative snapshots are built incrementally by a single builder; the
/// result equals [`build_through`] for every year.
pub fn snapshots(
    buckets: &YearBuckets,
    kind: GraphKind,
    resolver: Option<&dyn CountryResolver>,
    venues: &BTreeSet<Venue>,
    years: RangeInclusive<i32>,
    mode: SnapshotMode,
) -> Result<SnapshotSeries, GraphsError> {
    if kind.needs_resolver() && resolver.is_none() {
        return Err(GraphsError::MissingResolver);
    }
    let mut out = Vec::new();
    match mode {
        SnapshotMode::Cumulative => {
            let mut builder = make_builder(kind, resolver)?;
            let mut fed = buckets.range(..).peekable();
            for year in years {
                while let Some((_, records)) = fed.next_if(|(&y, _)| y <= year) {
                    builder.add_year(records, true);
                }
                out.push(Snapshot {
                    year,
                    graph: builder.graph().clone(),
                    stats: builder.stats(),
                });
            }
        }
        SnapshotMode::PerYear => {
            for year in years {
                out.push(build_single_year(buckets, kind, resolver, year)?);
            }
        }
    }
    Ok(SnapshotSeries {
        kind,
        mode,
        venues: venues.clone(),
        years: out,
    })
}

/// Cumulative series; see [`snapshots`].
pub fn cumulative_snapshots(
    buckets: &YearBuckets,
    kind: GraphKind,
    resolver: Option<&dyn CountryResolver>,
    venues: &BTreeSet<Venue>,
    years: RangeInclusive<i32>,
) -> Result<SnapshotSeries, GraphsError> {
    snapshots(
        buckets,
        kind,
        resolver,
        venues,
        years,
        SnapshotMode::Cumulative,
    )
}
