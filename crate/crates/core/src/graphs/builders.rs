//! The five graph builders.
//!
//! Every builder is a fold over ascending years. For each year, the year's
//! papers first enter a lookup table keyed by paper id; only then are the
//! year's references resolved against that table, so same-year citations
//! resolve and forward citations never do.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::graph::{EdgeKind, LabeledGraph, NodeIx, NodeKey};
use crate::ingest::{PaperRecord, YearBuckets};

/// Counters collected while building.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildStats {
    /// References to ids absent from the lookup table.
    pub skipped_references: u64,
    /// References from a record to its own id (dropped).
    pub self_references: u64,
    /// Records without authors, excluded from author-based graphs.
    pub zero_author_records: u64,
    /// Author occurrences whose country could not be resolved.
    pub unresolved_authors: u64,
}

/// Maps (record, position in `record.authors`) to a country name.
pub trait CountryResolver {
    fn country_of(&self, record: &PaperRecord, author_index: usize) -> Option<String>;
}

impl<F> CountryResolver for F
where
    F: Fn(&PaperRecord, usize) -> Option<String>,
{
    fn country_of(&self, record: &PaperRecord, author_index: usize) -> Option<String> {
        self(record, author_index)
    }
}

/// Incremental graph construction, one year at a time.
pub trait GraphBuilder {
    /// Feeds one year's bucket. Records always enter the lookup table; they
    /// contribute nodes and edges only when `emit` is set.
    fn add_year(&mut self, records: &[PaperRecord], emit: bool);
    fn graph(&self) -> &LabeledGraph;
    fn stats(&self) -> BuildStats;
}

/// A finished graph with its build counters.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltGraph {
    pub graph: LabeledGraph,
    pub stats: BuildStats,
}

fn run(mut builder: impl GraphBuilder, buckets: &YearBuckets) -> BuiltGraph {
    for records in buckets.values() {
        builder.add_year(records, true);
    }
    BuiltGraph {
        graph: builder.graph().clone(),
        stats: builder.stats(),
    }
}

/// Reference list with duplicates removed, first occurrence kept.
fn distinct_refs(record: &PaperRecord) -> impl Iterator<Item = &str> {
    let mut seen = HashSet::new();
    record
        .references
        .iter()
        .map(String::as_str)
        .filter(move |r| seen.insert(*r))
}

/// (position, author id) pairs with repeated ids removed.
fn distinct_authors(record: &PaperRecord) -> Vec<(usize, &str)> {
    let mut seen = HashSet::new();
    record
        .authors
        .iter()
        .enumerate()
        .filter(|(_, a)| seen.insert(a.id.as_str()))
        .map(|(i, a)| (i, a.id.as_str()))
        .collect()
}

/// Author citation graph: directed multigraph, authors as nodes.
#[derive(Debug, Clone)]
pub struct AuthorCitationBuilder {
    graph: LabeledGraph,
    authors_of: HashMap<String, Vec<String>>,
    stats: BuildStats,
}

impl Default for AuthorCitationBuilder {
    fn default() -> Self {
        Self {
            graph: LabeledGraph::new(true, true),
            authors_of: HashMap::new(),
            stats: BuildStats::default(),
        }
    }
}

impl GraphBuilder for AuthorCitationBuilder {
    fn add_year(&mut self, records: &[PaperRecord], emit: bool) {
        for r in records {
            let ids = distinct_authors(r)
                .into_iter()
                .map(|(_, id)| id.to_owned())
                .collect();
            self.authors_of.insert(r.id.clone(), ids);
        }
        if !emit {
            return;
        }
        for r in records {
            if r.authors.is_empty() {
                self.stats.zero_author_records += 1;
                continue;
            }
            let citing: Vec<NodeIx> = distinct_authors(r)
                .into_iter()
                .map(|(_, id)| self.graph.add_node(NodeKey::author(id)))
                .collect();
            for cited_id in distinct_refs(r) {
                if cited_id == r.id {
                    self.stats.self_references += 1;
                    continue;
                }
                let Some(cited_authors) = self.authors_of.get(cited_id) else {
                    self.stats.skipped_references += 1;
                    continue;
                };
                for cited in cited_authors {
                    let t = self.graph.add_node(NodeKey::author(cited.as_str()));
                    for &s in &citing {
                        self.graph
                            .add_edge(s, t, EdgeKind::Citation)
                            .expect("citation edge in directed graph");
                    }
                }
            }
        }
    }

    fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn stats(&self) -> BuildStats {
        self.stats
    }
}

/// Collaboration graph: undirected simple graph, one clique per record.
#[derive(Debug, Clone)]
pub struct CollaborationBuilder {
    graph: LabeledGraph,
    stats: BuildStats,
}

impl Default for CollaborationBuilder {
    fn default() -> Self {
        Self {
            graph: LabeledGraph::new(false, false),
            stats: BuildStats::default(),
        }
    }
}

impl GraphBuilder for CollaborationBuilder {
    fn add_year(&mut self, records: &[PaperRecord], emit: bool) {
        if !emit {
            return;
        }
        for r in records {
            if r.authors.is_empty() {
                self.stats.zero_author_records += 1;
                continue;
            }
            let ixs: Vec<NodeIx> = distinct_authors(r)
                .into_iter()
                .map(|(_, id)| self.graph.add_node(NodeKey::author(id)))
                .collect();
            for (i, &a) in ixs.iter().enumerate() {
                for &b in &ixs[i + 1..] {
                    self.graph
                        .add_edge(a, b, EdgeKind::Collaboration)
                        .expect("collaboration edge in undirected graph");
                }
            }
        }
    }

    fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn stats(&self) -> BuildStats {
        self.stats
    }
}

/// Paper citation graph, optionally extended with author nodes and
/// authorship edges (the author-paper graph).
#[derive(Debug, Clone)]
pub struct PaperCitationBuilder {
    graph: LabeledGraph,
    known: HashSet<String>,
    with_authors: bool,
    stats: BuildStats,
}

impl PaperCitationBuilder {
    pub fn papers_only() -> Self {
        Self::new(false)
    }

    pub fn with_authors() -> Self {
        Self::new(true)
    }

    fn new(with_authors: bool) -> Self {
        Self {
            graph: LabeledGraph::new(true, false),
            known: HashSet::new(),
            with_authors,
            stats: BuildStats::default(),
        }
    }
}

impl GraphBuilder for PaperCitationBuilder {
    fn add_year(&mut self, records: &[PaperRecord], emit: bool) {
        self.known.extend(records.iter().map(|r| r.id.clone()));
        if !emit {
            return;
        }
        for r in records {
            let p = self.graph.add_node(NodeKey::paper(r.id.as_str()));
            if self.with_authors {
                if r.authors.is_empty() {
                    self.stats.zero_author_records += 1;
                }
                for (_, id) in distinct_authors(r) {
                    let a = self.graph.add_node(NodeKey::author(id));
                    self.graph
                        .add_edge(a, p, EdgeKind::Authorship)
                        .expect("authorship edge in directed graph");
                }
            }
            for cited in distinct_refs(r) {
                if cited == r.id {
                    self.stats.self_references += 1;
                } else if self.known.contains(cited) {
                    let t = self.graph.add_node(NodeKey::paper(cited));
                    self.graph
                        .add_edge(p, t, EdgeKind::Citation)
                        .expect("citation edge in directed graph");
                } else {
                    self.stats.skipped_references += 1;
                }
            }
        }
    }

    fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn stats(&self) -> BuildStats {
        self.stats
    }
}

/// Country citation graph: directed multigraph over resolved countries.
pub struct CountryCitationBuilder<'r> {
    graph: LabeledGraph,
    countries_of: HashMap<String, Vec<String>>,
    resolver: &'r dyn CountryResolver,
    stats: BuildStats,
}

impl<'r> CountryCitationBuilder<'r> {
    pub fn new(resolver: &'r dyn CountryResolver) -> Self {
        Self {
            graph: LabeledGraph::new(true, true),
            countries_of: HashMap::new(),
            resolver,
            stats: BuildStats::default(),
        }
    }

    fn resolve(&self, r: &PaperRecord) -> Vec<Option<String>> {
        distinct_authors(r)
            .into_iter()
            .map(|(i, _)| self.resolver.country_of(r, i))
            .collect()
    }
}

impl GraphBuilder for CountryCitationBuilder<'_> {
    fn add_year(&mut self, records: &[PaperRecord], emit: bool) {
        let mut resolved = Vec::with_capacity(records.len());
        for r in records {
            let countries = self.resolve(r);
            self.countries_of
                .insert(r.id.clone(), countries.iter().flatten().cloned().collect());
            resolved.push(countries);
        }
        if !emit {
            return;
        }
        for (r, countries) in records.iter().zip(resolved) {
            if r.authors.is_empty() {
                self.stats.zero_author_records += 1;
                continue;
            }
            let mut citing = Vec::with_capacity(countries.len());
            for c in countries {
                match c {
                    Some(c) => citing.push(self.graph.add_node(NodeKey::country(c))),
                    None => self.stats.unresolved_authors += 1,
                }
            }
            for cited_id in distinct_refs(r) {
                if cited_id == r.id {
                    self.stats.self_references += 1;
                    continue;
                }
                let Some(cited_countries) = self.countries_of.get(cited_id) else {
                    self.stats.skipped_references += 1;
                    continue;
                };
                for cited in cited_countries {
                    let t = self.graph.add_node(NodeKey::country(cited.as_str()));
                    for &s in &citing {
                        self.graph
                            .add_edge(s, t, EdgeKind::Citation)
                            .expect("citation edge in directed graph");
                    }
                }
            }
        }
    }

    fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    fn stats(&self) -> BuildStats {
        self.stats
    }
}

pub fn build_author_citation(buckets: &YearBuckets) -> BuiltGraph {
    run(AuthorCitationBuilder::default(), buckets)
}

pub fn build_collaboration(buckets: &YearBuckets) -> BuiltGraph {
    run(CollaborationBuilder::default(), buckets)
}

pub fn build_paper_citation(buckets: &YearBuckets) -> BuiltGraph {
    run(PaperCitationBuilder::papers_only(), buckets)
}

pub fn build_author_paper(buckets: &YearBuckets) -> BuiltGraph {
    run(PaperCitationBuilder::with_authors(), buckets)
}

pub fn build_country_citation(buckets: &YearBuckets, resolver: &dyn CountryResolver) -> BuiltGraph {
    run(CountryCitationBuilder::new(resolver), buckets)
}
