//! Graph datasets built from year-bucketed paper records.

mod builders;
mod cache;
pub mod export;
mod graph;
mod snapshot;

use thiserror::Error;

pub use builders::{
    build_author_citation, build_author_paper, build_collaboration, build_country_citation,
    build_paper_citation, AuthorCitationBuilder, BuildStats, BuiltGraph, CollaborationBuilder,
    CountryCitationBuilder, CountryResolver, GraphBuilder, PaperCitationBuilder,
};
pub use cache::{snapshot_cache_key, SnapshotCache, CACHE_FORMAT_VERSION};
pub use graph::{EdgeEntry, EdgeKind, GraphError, LabeledGraph, NodeIx, NodeKey, NodeKind};
pub use snapshot::{
    build_single_year, build_through, cumulative_snapshots, make_builder, snapshots, GraphKind,
    Snapshot, SnapshotMode, SnapshotSeries,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphsError {
    #[error("the country citation graph needs a country resolver")]
    MissingResolver,
}
