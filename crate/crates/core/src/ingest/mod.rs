//! Streaming ingestion of line-delimited paper records.
//!
//! Records are parsed lazily ([`parse_records`]), de-duplicated by id
//! ([`Corpus::from_records`]), annotated with a canonical venue
//! ([`VenueAliases`]), filtered ([`filter_by_venues`]) and split into
//! year buckets ([`bucket_by_year`]).

mod parse;
mod record;
mod venue;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use indexmap::IndexMap;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use parse::{open_records, parse_records, LineDiagnostic, ParsedLine, RecordReader};
pub use record::{AuthorRef, IndexedAbstract, PaperRecord, VenueRef};
pub use venue::{Venue, VenueAliases};

/// First year of the default analysis window.
pub const FIRST_ANALYSIS_YEAR: i32 = 1969;

/// Records grouped by publication year, in ascending year order.
pub type YearBuckets = BTreeMap<i32, Vec<PaperRecord>>;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("I/O error{}: {source}", path.as_ref().map(|p| format!(" reading {}", p.display())).unwrap_or_default())]
    Io {
        path: Option<PathBuf>,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid venue alias table: {0}")]
    AliasTable(String),
}

/// A de-duplicated collection of records plus everything noteworthy that
/// happened while assembling it.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub records: Vec<PaperRecord>,
    pub diagnostics: Vec<String>,
}

impl Corpus {
    /// Keeps the last record for every id. The surviving record takes the
    /// position of the first occurrence; each replacement is reported.
    pub fn from_records(records: impl IntoIterator<Item = PaperRecord>) -> Self {
        let mut by_id: IndexMap<String, PaperRecord> = IndexMap::new();
        let mut diagnostics = Vec::new();
        for record in records {
            if let Some(prev) = by_id.insert(record.id.clone(), record) {
                diagnostics.push(format!(
                    "duplicate paper id {:?}: later record replaces the one from {}",
                    prev.id, prev.year
                ));
            }
        }
        Self {
            records: by_id.into_values().collect(),
            diagnostics,
        }
    }

    pub fn annotate_venues(&mut self, aliases: &VenueAliases) {
        for r in &mut self.records {
            aliases.annotate(r);
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Inclusive year range considered by the analytics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisWindow {
    pub first: i32,
    pub last: i32,
}

impl AnalysisWindow {
    pub fn new(first: i32, last: i32) -> Self {
        Self { first, last }
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.first..=self.last).contains(&year)
    }

    /// Flags out-of-window records and returns how many were flagged.
    pub fn tag<'a>(&self, records: impl IntoIterator<Item = &'a mut PaperRecord>) -> usize {
        let mut flagged = 0;
        for r in records {
            r.out_of_window = !self.contains(r.year);
            flagged += r.out_of_window as usize;
        }
        flagged
    }
}

/// Keeps, in order, the records whose canonical venue is in `venues`.
pub fn filter_by_venues(
    records: impl IntoIterator<Item = PaperRecord>,
    venues: &BTreeSet<Venue>,
) -> Vec<PaperRecord> {
    records
        .into_iter()
        .filter(|r| venues.contains(&r.canonical_venue()))
        .collect()
}

/// Splits records into per-year buckets, preserving input order within a year.
pub fn bucket_by_year(records: impl IntoIterator<Item = PaperRecord>) -> YearBuckets {
    let mut buckets = YearBuckets::new();
    for r in records {
        buckets.entry(r.year).or_default().push(r);
    }
    buckets
}

/// SHA-256 over the canonical serialisation of the records, in order.
pub fn corpus_digest<'a>(records: impl IntoIterator<Item = &'a PaperRecord>) -> String {
    let mut hasher = Sha256::new();
    for r in records {
        let line = serde_json::to_vec(r).expect("records always serialise");
        hasher.update(&line);
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, year: i32) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: String::new(),
            authors: vec![],
            venue: VenueRef {
                raw: "Some Conference".into(),
                id: None,
                canonical: None,
            },
            year,
            references: vec![],
            indexed_abstract: None,
            out_of_window: false,
        }
    }

    #[test]
    fn duplicate_ids_last_wins() {
        let mut a2 = rec("a", 2000);
        a2.title = "second".into();
        let corpus = Corpus::from_records(vec![rec("a", 1999), rec("b", 1999), a2]);
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.records[0].title, "second");
        assert_eq!(corpus.diagnostics.len(), 1);
    }

    #[test]
    fn buckets_keep_order() {
        let b = bucket_by_year(vec![rec("x", 1970), rec("y", 1967), rec("z", 1970)]);
        assert_eq!(b.keys().copied().collect::<Vec<_>>(), vec![1967, 1970]);
        let ids: Vec<_> = b[&1970].iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["x", "z"]);
        assert!(bucket_by_year(Vec::new()).is_empty());
    }

    #[test]
    fn filter_uses_canonical_venue() {
        let aliases = VenueAliases::builtin();
        let mut records = vec![rec("1", 1967), rec("2", 1970), rec("3", 2003)];
        records.iter_mut().for_each(|r| aliases.annotate(r));
        let other = BTreeSet::from([Venue::Other]);
        assert_eq!(filter_by_venues(records.clone(), &other).len(), 3);
        let ijcai = BTreeSet::from([Venue::Ijcai]);
        assert!(filter_by_venues(records, &ijcai).is_empty());
        assert!(filter_by_venues(Vec::new(), &other).is_empty());
    }

    #[test]
    fn window_tagging() {
        let mut records = [rec("1", 1967), rec("2", 1970)];
        let flagged = AnalysisWindow::new(FIRST_ANALYSIS_YEAR, 2019).tag(records.iter_mut());
        assert_eq!(flagged, 1);
        assert!(records[0].out_of_window);
        assert!(!records[1].out_of_window);
    }

    #[test]
    fn digest_is_sensitive_to_content() {
        let a = vec![rec("1", 1967)];
        let mut b = a.clone();
        b[0].title.push('x');
        assert_eq!(corpus_digest(&a), corpus_digest(&a.clone()));
        assert_ne!(corpus_digest(&a), corpus_digest(&b));
    }
}
