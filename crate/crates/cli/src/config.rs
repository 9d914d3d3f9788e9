//! Command-line flags, the optional TOML config file, and their merge into
//! [`Settings`]. A flag always wins over the same key in the file.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::{DeserializeOwned, IntoDeserializer};
use serde::{Deserialize, Serialize};

use citegraph::centrality::{
    CentralityKind, CentralityParams, ClosenessMode, Normalizer, PathMode,
};
use citegraph::graphs::GraphKind;
use citegraph::ingest::{Venue, FIRST_ANALYSIS_YEAR};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "citegraph",
    version,
    about = "Citation graph construction and analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build (or load from cache) every requested graph snapshot.
    Build(Flags),
    /// Compute centralities on cumulative snapshots.
    Centrality(Flags),
    /// Run one analysis.
    Analyze {
        name: Analysis,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    RankOverTime,
    TopKShare,
    CitationShare,
    SelfCite,
    NewAuthors,
    Overlap,
    AuthorsPerPaper,
    CountryShare,
    SlidingWindow,
    LaureateCorrelation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML file with default values for any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Line-delimited JSON records, optionally gzipped. Repeatable.
    #[arg(long, value_delimiter = ',')]
    pub input: Vec<PathBuf>,
    /// Comma-separated venues, or `all`.
    #[arg(long)]
    pub venues: Option<String>,
    /// `FIRST-LAST` or a single year.
    #[arg(long)]
    pub years: Option<String>,
    /// Comma-separated graph kinds (aci, aco, pc, apc, cc) or `all`.
    #[arg(long)]
    pub graphs: Option<String>,
    /// Comma-separated centralities or `all`.
    #[arg(long)]
    pub centralities: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<u32>,
    /// Volume radius.
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// undirected or directed.
    #[arg(long)]
    pub normalizer: Option<String>,
    /// strict or per_component.
    #[arg(long)]
    pub closeness_mode: Option<String>,
    /// directed or symmetrized.
    #[arg(long)]
    pub path_mode: Option<String>,
    #[arg(long)]
    pub org_table: Option<PathBuf>,
    #[arg(long)]
    pub author_table: Option<PathBuf>,
    #[arg(long)]
    pub laureates: Option<PathBuf>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub include_unresolved: bool,
    /// Sliding window width in years.
    #[arg(long)]
    pub window: Option<u32>,
    /// First year of the analysis window.
    #[arg(long)]
    pub window_start: Option<i32>,
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Count distinct neighbours for degree.
    #[arg(long)]
    pub distinct: bool,
    /// Source venue of citation-share.
    #[arg(long)]
    pub source_venue: Option<String>,
    /// Comma-separated years sampled by rank-over-time.
    #[arg(long)]
    pub sample_years: Option<String>,
}

/// Keys accepted in the config file; names mirror the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    input: Option<Vec<PathBuf>>,
    venues: Option<String>,
    years: Option<String>,
    graphs: Option<String>,
    centralities: Option<String>,
    q: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<u32>,
    h: Option<u32>,
    workers: Option<usize>,
    normalizer: Option<String>,
    closeness_mode: Option<String>,
    path_mode: Option<String>,
    org_table: Option<PathBuf>,
    author_table: Option<PathBuf>,
    laureates: Option<PathBuf>,
    stopwords: Option<PathBuf>,
    out: Option<PathBuf>,
    cache: Option<PathBuf>,
    format: Option<Format>,
    include_unresolved: Option<bool>,
    window: Option<u32>,
    window_start: Option<i32>,
    top_k: Option<usize>,
    distinct: Option<bool>,
    source_venue: Option<String>,
    sample_years: Option<String>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct Settings {
    pub echo: Echo,
    pub workers: usize,
    pub out: PathBuf,
    pub cache: PathBuf,
}

/// The part of the configuration that determines output contents. It is
/// written into the metadata of every output file.
#[derive(Debug, Clone, Serialize)]
pub struct Echo {
    pub input: Vec<PathBuf>,
    pub venues: BTreeSet<Venue>,
    /// `None` means "window start through the last year with data".
    pub years: Option<(i32, i32)>,
    pub graphs: Vec<GraphKind>,
    pub centralities: Vec<CentralityKind>,
    pub params: CentralityParams,
    pub org_table: Option<PathBuf>,
    pub author_table: Option<PathBuf>,
    pub laureates: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub format: Format,
    pub include_unresolved: bool,
    pub window: u32,
    pub window_start: i32,
    pub top_k: Option<usize>,
    pub source_venue: Option<Venue>,
    pub sample_years: Option<Vec<i32>>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn list<T>(text: &str, all: &[T]) -> Result<Vec<T>, CliError>
where
    T: std::str::FromStr<Err = String> + Copy + PartialEq,
{
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v = item.parse::<T>().map_err(usage)?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(usage(format!("empty list {text:?}")));
    }
    Ok(out)
}

fn snake_enum<T: DeserializeOwned>(flag: &str, text: &str) -> Result<T, CliError> {
    let norm = text.trim().to_ascii_lowercase().replace('-', "_");
    T::deserialize(norm.as_str().into_deserializer())
        .map_err(|e: serde::de::value::Error| usage(format!("--{flag}: {e}")))
}

pub fn parse_years(text: &str) -> Result<(i32, i32), CliError> {
    let bad = || {
        usage(format!(
            "--years: expected FIRST-LAST or YEAR, got {text:?}"
        ))
    };
    let (a, b) = match text.trim().split_once(['-', ':']) {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), text.trim()),
    };
    let a: i32 = a.parse().map_err(|_| bad())?;
    let b: i32 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))
}

impl Settings {
    pub fn resolve(flags: Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => read_file_config(p)?,
            None => FileConfig::default(),
        };
        let input = if flags.input.is_empty() {
            file.input.unwrap_or_default()
        } else {
            flags.input
        };
        if input.is_empty() {
            return Err(usage("no --input given"));
        }
        let venues = match flags.venues.or(file.venues) {
            Some(v) => list(&v, &Venue::ALL)?.into_iter().collect(),
            None => Venue::ALL.into_iter().collect(),
        };
        let years = flags
            .years
            .or(file.years)
            .map(|y| parse_years(&y))
            .transpose()?;
        let graphs = list(
            &flags.graphs.or(file.graphs).unwrap_or_else(|| "all".into()),
            &GraphKind::ALL,
        )?;
        let centralities = list(
            &flags
                .centralities
                .or(file.centralities)
                .unwrap_or_else(|| "pagerank".into()),
            &CentralityKind::ALL,
        )?;

        let d = CentralityParams::default();
        let params = CentralityParams {
            q: flags.q.or(file.q).unwrap_or(d.q),
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
            max_iter: flags.max_iter.or(file.max_iter).unwrap_or(d.max_iter),
            h: flags.h.or(file.h).unwrap_or(d.h),
            normalizer: match flags.normalizer.or(file.normalizer) {
                Some(s) => snake_enum::<Normalizer>("normalizer", &s)?,
                None => d.normalizer,
            },
            path_mode: match flags.path_mode.or(file.path_mode) {
                Some(s) => snake_enum::<PathMode>("path-mode", &s)?,
                None => d.path_mode,
            },
            closeness_mode: match flags.closeness_mode.or(file.closeness_mode) {
                Some(s) => snake_enum::<ClosenessMode>("closeness-mode", &s)?,
                None => d.closeness_mode,
            },
            distinct_degree: flags.distinct || file.distinct.unwrap_or(false),
        };
        if !(0.0..=1.0).contains(&params.q) {
            return Err(usage(format!("--q must lie in [0, 1], got {}", params.q)));
        }
        if params.tol.is_nan() || params.tol <= 0.0 {
            return Err(usage(format!("--tol must be positive, got {}", params.tol)));
        }
        if params.h == 0 {
            return Err(usage("--h must be at least 1"));
        }

        let window = flags.window.or(file.window).unwrap_or(2);
        if window == 0 {
            return Err(usage("--window must be at least 1"));
        }
        let source_venue = flags
            .source_venue
            .or(file.source_venue)
            .map(|s| s.parse::<Venue>().map_err(usage))
            .transpose()?;
        let sample_years = match flags.sample_years.or(file.sample_years) {
            Some(s) => Some(
                s.split(',')
                    .map(|y| {
                        y.trim()
                            .parse::<i32>()
                            .map_err(|_| usage(format!("--sample-years: bad year {y:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let workers = flags
            .workers
            .or(file.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let out = flags
            .out
            .or(file.out)
            .unwrap_or_else(|| PathBuf::from("citegraph-out"));
        let cache = flags
            .cache
            .or(file.cache)
            .unwrap_or_else(|| out.join("cache"));

        Ok(Settings {
            echo: Echo {
                input,
                venues,
                years,
                graphs,
                centralities,
                params,
                org_table: flags.org_table.or(file.org_table),
                author_table: flags.author_table.or(file.author_table),
                laureates: flags.laureates.or(file.laureates),
                stopwords: flags.stopwords.or(file.stopwords),
                format: flags.format.or(file.format).unwrap_or_default(),
                include_unresolved: flags.include_unresolved
                    || file.include_unresolved.unwrap_or(false),
                window,
                window_start: flags
                    .window_start
                    .or(file.window_start)
                    .unwrap_or(FIRST_ANALYSIS_YEAR),
                top_k: flags.top_k.or(file.top_k),
                source_venue,
                sample_years,
            },
            workers,
            out,
            cache,
        })
    }
}
