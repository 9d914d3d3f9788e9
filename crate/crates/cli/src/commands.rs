use std::collections::BTreeMap;

use serde_json::{json, Value};

use citegraph::analytics::{
    author_overlap_table, authors_per_paper_distribution, authors_per_paper_table,
    citation_share_by_source, correlation_table, country_share, new_author_stats,
    new_coauthor_table, parse_laureates, rank_over_time, self_citation_distribution,
    self_citation_stats, self_citation_table, sliding_window_average, tfidf_rank_correlation,
    top_k_venue_share, PaperIndex, ShareMode, ShareTable, Stopwords,
};
use citegraph::centrality::{compute, CentralityKind, CentralityTable};
use citegraph::geo::{coverage_report, coverage_table};
use citegraph::graphs::{build_through, GraphKind, SnapshotMode};

use crate::config::Analysis;
use crate::output::Output;
use crate::pipeline::Pipeline;
use crate::CliError;

pub fn build(p: &Pipeline) -> Result<(), CliError> {
    let out = Output::new(&p.settings, &p.digest)?;
    let mut items = Vec::new();
    for &kind in &p.settings.echo.graphs {
        let series = p.series(kind, SnapshotMode::Cumulative)?;
        for snap in &series.years {
            items.push(json!({
                "kind": kind,
                "year": snap.year,
                "nodes": snap.graph.node_count(),
                "edges": snap.graph.edge_count(),
                "distinct_edges": snap.graph.distinct_edge_count(),
                "cache_key": p.cache_key(kind, snap.year, SnapshotMode::Cumulative)?,
            }));
        }
    }
    out.finish("build", items)
}

fn item(graph: GraphKind, centrality: CentralityKind, year: i32) -> Value {
    json!({ "graph": graph, "centrality": centrality, "year": year })
}

/// Centrality tables of one graph kind, per snapshot year; failures are
/// recorded in `out` and left out of the map.
fn centrality_series(
    p: &Pipeline,
    out: &mut Output,
    graph: GraphKind,
    centrality: CentralityKind,
) -> Result<BTreeMap<i32, CentralityTable>, CliError> {
    let series = p.series(graph, SnapshotMode::Cumulative)?;
    let mut tables = BTreeMap::new();
    for snap in &series.years {
        match compute(
            &snap.graph,
            centrality,
            &p.settings.echo.params,
            p.settings.workers,
        ) {
            Ok(t) => {
                tables.insert(snap.year, t);
            }
            Err(e) => out.error(item(graph, centrality, snap.year), e.to_string()),
        }
    }
    Ok(tables)
}

pub fn centrality(p: &Pipeline) -> Result<(), CliError> {
    let mut out = Output::new(&p.settings, &p.digest)?;
    let mut items = Vec::new();
    for &graph in &p.settings.echo.graphs {
        for &c in &p.settings.echo.centralities {
            for (year, table) in centrality_series(p, &mut out, graph, c)? {
                let t = table
                    .to_table(Some(year))
                    .meta("graph", graph)
                    .meta("year", year);
                out.table(&format!("{graph}_{c}_{year}"), t)?;
                items.push(item(graph, c, year));
            }
        }
    }
    out.finish("centrality", items)
}

fn share_in_range(p: &Pipeline, mut share: ShareTable) -> ShareTable {
    share.rows.retain(|&y, _| p.in_range(y));
    share
}

pub fn analyze(p: &Pipeline, analysis: Analysis) -> Result<(), CliError> {
    let mut out = Output::new(&p.settings, &p.digest)?;
    let e = &p.settings.echo;
    let name = serde_json::to_value(analysis).expect("name serialises");
    let name = name.as_str().expect("string").replace('-', "_");
    let first_centrality = e.centralities[0];
    match analysis {
        Analysis::RankOverTime => {
            let graph = e.graphs[0];
            let tables = centrality_series(p, &mut out, graph, first_centrality)?;
            let sample = e.sample_years.clone().unwrap_or_else(|| p.years.clone());
            let series = rank_over_time(&tables, &sample, e.top_k.unwrap_or(10));
            let t = series.to_table().meta("graph", graph);
            out.table(&format!("{name}_{graph}_{first_centrality}"), t)?;
        }
        Analysis::TopKShare => {
            let graph = GraphKind::PaperCitation;
            let tables = centrality_series(p, &mut out, graph, first_centrality)?;
            let index = PaperIndex::from_buckets(&p.buckets);
            let share = top_k_venue_share(
                &tables,
                &index,
                e.top_k.unwrap_or(100),
                ShareMode::Percentage,
            )
            .with_meta("centrality", first_centrality);
            out.table(&format!("{name}_{first_centrality}"), share.to_table())?;
        }
        Analysis::CitationShare => {
            let source = e
                .source_venue
                .ok_or_else(|| CliError::Usage("citation-share needs --source-venue".into()))?;
            let share = match p.years.last() {
                Some(&last) => {
                    let pc = build_through(&p.buckets, GraphKind::PaperCitation, None, last)
                        .map_err(|e| CliError::Input(e.to_string()))?
                        .graph;
                    let index = PaperIndex::from_buckets(&p.buckets);
                    citation_share_by_source(
                        &pc,
                        &index,
                        source,
                        p.years.iter().copied(),
                        ShareMode::Percentage,
                    )
                }
                None => ShareTable::default(),
            };
            out.table(&name, share.to_table())?;
        }
        Analysis::SelfCite => {
            let series = p.series(GraphKind::AuthorCitation, SnapshotMode::PerYear)?;
            let rows = self_citation_stats(&series, &p.buckets);
            out.table(&name, self_citation_table(&rows))?;
            out.table(
                &format!("{name}_distribution"),
                self_citation_distribution(&rows),
            )?;
        }
        Analysis::NewAuthors => {
            let stats = new_author_stats(&p.buckets, ShareMode::Percentage);
            let share = share_in_range(p, stats.venue_share.clone());
            out.table(&format!("{name}_venue_share"), share.to_table())?;
            out.table(&format!("{name}_coauthors"), new_coauthor_table(&stats))?;
        }
        Analysis::Overlap => {
            let venues: Vec<_> = e.venues.iter().copied().collect();
            out.table(&name, author_overlap_table(&p.range_buckets(), &venues))?;
        }
        Analysis::AuthorsPerPaper => {
            let stats = authors_per_paper_distribution(&p.range_buckets());
            out.table(&name, authors_per_paper_table(&stats))?;
        }
        Analysis::CountryShare | Analysis::SlidingWindow => {
            let res = p.resolutions()?;
            let share = country_share(&p.buckets, res, ShareMode::Percentage, e.include_unresolved);
            if analysis == Analysis::CountryShare {
                out.table(&name, share_in_range(p, share).to_table())?;
                let mut coverage = coverage_report(res);
                coverage.retain(|r| p.in_range(r.year));
                out.table("country_coverage", coverage_table(&coverage))?;
            } else {
                let avg = sliding_window_average(&share, e.window);
                out.table(
                    &format!("country_share_{name}"),
                    share_in_range(p, avg).to_table(),
                )?;
            }
        }
        Analysis::LaureateCorrelation => laureate_correlation(p, &mut out, &name)?,
    }
    out.finish(&format!("analyze {name}"), Value::Null)
}

fn laureate_correlation(p: &Pipeline, out: &mut Output, name: &str) -> Result<(), CliError> {
    let e = &p.settings.echo;
    let path = e
        .laureates
        .as_ref()
        .ok_or_else(|| CliError::Usage("laureate-correlation needs --laureates".into()))?;
    let text = std::fs::read_to_string(path).map_err(|err| {
        CliError::Input(format!(
            "cannot read laureate file {}: {err}",
            path.display()
        ))
    })?;
    let laureates = parse_laureates(&text)
        .map_err(|err| CliError::Input(format!("laureate file {}: {err}", path.display())))?;
    let stopwords = match &e.stopwords {
        Some(s) => Stopwords::load(s).map_err(|err| {
            CliError::Input(format!("cannot read stop words {}: {err}", s.display()))
        })?,
        None => Stopwords::builtin(),
    };

    let by_id: BTreeMap<&str, (i32, &str)> = p
        .buckets
        .values()
        .flatten()
        .filter(|r| !r.out_of_window)
        .map(|r| (r.id.as_str(), (r.year, r.title.as_str())))
        .collect();
    let mut laureate_titles: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut missing = 0usize;
    for id in laureates.iter().flat_map(|l| &l.papers) {
        match by_id.get(id.as_str()) {
            Some(&(year, title)) if p.in_range(year) => laureate_titles
                .entry(year)
                .or_default()
                .push(title.to_string()),
            Some(_) => {}
            None => missing += 1,
        }
    }
    if missing > 0 {
        log::warn!("{missing} laureate paper ids are not in the corpus");
    }
    let mut corpus_titles: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    for &(year, title) in by_id.values().filter(|(y, _)| p.in_range(*y)) {
        corpus_titles
            .entry(year)
            .or_default()
            .push(title.to_string());
    }
    let rows = tfidf_rank_correlation(&laureate_titles, &corpus_titles, &stopwords);
    let t = correlation_table(&rows)
        .meta("laureates", laureates.len())
        .meta("missing_papers", missing);
    out.table(name, t)
}
