//! Longitudinal analyses over snapshots, centrality tables and resolved
//! countries: rank trajectories, venue and country shares, author
//! statistics and title-word correlations.

mod authors;
mod papers;
mod rank;
mod share;
mod text;

pub use authors::{
    author_overlap, author_overlap_table, authors_per_paper_distribution, authors_per_paper_table,
    country_share, new_author_stats, new_coauthor_table, self_citation_distribution,
    self_citation_stats, self_citation_table, AuthorsPerPaper, NewAuthorStats, NewCoauthors,
    SelfCitationYear, UNKNOWN_COUNTRY,
};
pub use papers::{citation_share_by_source, top_k_venue_share, PaperIndex};
pub use rank::{rank_order, rank_over_time, RankCell, RankSeries, RankTrajectory};
pub use share::{sliding_window_average, sliding_window_series, ShareMode, ShareRow, ShareTable};
pub use text::{
    average_ranks, correlation_table, parse_laureates, spearman, tfidf_rank_correlation,
    tfidf_weights, tokenize, CorrelationRow, Laureate, Stopwords, Undefined, MIN_COMMON_WORDS,
};
