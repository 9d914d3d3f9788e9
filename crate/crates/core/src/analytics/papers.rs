use std::collections::{BTreeMap, HashMap};

use super::rank::rank_order;
use super::share::{ShareMode, ShareRow, ShareTable};
use crate::centrality::CentralityTable;
use crate::graphs::{EdgeKind, LabeledGraph, NodeKind};
use crate::ingest::{Venue, YearBuckets};

/// Year and canonical venue of every paper in a corpus.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PaperIndex {
    papers: HashMap<String, (i32, Venue)>,
}

impl PaperIndex {
    pub fn from_buckets(buckets: &YearBuckets) -> Self {
        let papers = buckets
            .values()
            .flatten()
            .map(|r| (r.id.clone(), (r.year, r.canonical_venue())))
            .collect();
        Self { papers }
    }

    pub fn year_of(&self, id: &str) -> Option<i32> {
        self.papers.get(id).map(|p| p.0)
    }

    pub fn venue_of(&self, id: &str) -> Option<Venue> {
        self.papers.get(id).map(|p| p.1)
    }
}

/// Venue mix of the `k` highest-scoring papers of each year's table.
/// Non-paper nodes are ignored; years with fewer than `k` papers use all of
/// them and say so in the row note.
pub fn top_k_venue_share(
    paper_tables: &BTreeMap<i32, CentralityTable>,
    index: &PaperIndex,
    k: usize,
    mode: ShareMode,
) -> ShareTable {
    let mut counts = BTreeMap::new();
    let mut notes = BTreeMap::new();
    for (&year, table) in paper_tables {
        let papers: Vec<usize> = rank_order(table)
            .into_iter()
            .filter(|&i| table.nodes[i].kind == NodeKind::Paper)
            .collect();
        if papers.len() < k {
            notes.insert(year, format!("fewer than k papers: {}", papers.len()));
        }
        let row: &mut BTreeMap<String, f64> = counts.entry(year).or_default();
        for i in papers.into_iter().take(k) {
            let venue = index.venue_of(&table.nodes[i].id).unwrap_or(Venue::Other);
            *row.entry(venue.to_string()).or_default() += 1.0;
        }
    }
    let mut share = ShareTable::from_counts(counts, mode);
    for (year, note) in notes {
        if let Some(row) = share.rows.get_mut(&year) {
            row.note = Some(match row.note.take() {
                Some(prev) => format!("{prev}; {note}"),
                None => note,
            });
        }
    }
    share
        .with_meta("analysis", "top_k_venue_share")
        .with_meta("k", k)
        .with_meta("tie_rule", "score descending, then node id ascending")
}

/// For each year, where the citations made by that year's `source` papers
/// point to, by target venue. Years without such citations are noted empty.
pub fn citation_share_by_source(
    pc: &LabeledGraph,
    index: &PaperIndex,
    source: Venue,
    years: impl IntoIterator<Item = i32>,
    mode: ShareMode,
) -> ShareTable {
    let mut counts: BTreeMap<i32, BTreeMap<String, f64>> =
        years.into_iter().map(|y| (y, BTreeMap::new())).collect();
    for e in pc.edges().filter(|e| e.kind == EdgeKind::Citation) {
        let (s, t) = (pc.node(e.source), pc.node(e.target));
        if s.kind != NodeKind::Paper || index.venue_of(&s.id) != Some(source) {
            continue;
        }
        let Some(row) = index.year_of(&s.id).and_then(|y| counts.get_mut(&y)) else {
            continue;
        };
        let target = index.venue_of(&t.id).unwrap_or(Venue::Other);
        *row.entry(target.to_string()).or_default() += f64::from(e.multiplicity);
    }
    let mut share = ShareTable::from_counts(counts, mode);
    for row in share.rows.values_mut().filter(|r| r.is_empty()) {
        *row = ShareRow {
            values: BTreeMap::new(),
            note: Some("no citations from source venue".into()),
        };
    }
    share
        .with_meta("analysis", "citation_share_by_source")
        .with_meta("source_venue", source)
}
