//! Bibliometric graph analytics over scholarly paper records.
//!
//! The crate is organised as a pipeline:
//!
//! * [`ingest`] streams newline-delimited JSON paper records, canonicalises
//!   venues and buckets records per year.
//! * [`graphs`] builds the author-citation, collaboration, paper-citation,
//!   author-paper and country-citation graphs, plus cumulative snapshots and
//!   an on-disk snapshot cache.
//! * [`centrality`] computes exact node centralities on those graphs, with a
//!   deterministic parallel mode for the shortest-path based measures.
//! * [`geo`] resolves free-form affiliations to countries.
//! * [`analytics`] turns all of the above into per-year tables.

pub mod analytics;
pub mod centrality;
pub mod geo;
pub mod graphs;
pub mod ingest;
pub mod table;

#[cfg(test)]
mod test_support;
