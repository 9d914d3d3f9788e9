//! Corpus loading and cached snapshot construction shared by all commands.

use std::cell::{Cell, OnceCell};
use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use citegraph::geo::{load_lookup, resolve_corpus, CorpusResolutions, CountryVocabulary};
use citegraph::graphs::{
    build_single_year, snapshot_cache_key, snapshots, CountryResolver, GraphKind, Snapshot,
    SnapshotCache, SnapshotMode, SnapshotSeries,
};
use citegraph::ingest::{
    bucket_by_year, corpus_digest, filter_by_venues, open_records, AnalysisWindow, Corpus,
    ParsedLine, VenueAliases, YearBuckets,
};

use crate::config::Settings;
use crate::CliError;

pub struct Pipeline {
    pub settings: Settings,
    pub buckets: YearBuckets,
    pub digest: String,
    /// Reported year range.
    pub range: (i32, i32),
    /// Years of the range that have records; one snapshot each.
    pub years: Vec<i32>,
    cache: SnapshotCache,
    hits: Cell<usize>,
    lookups: Cell<usize>,
    geo: OnceCell<(CorpusResolutions, String)>,
}

impl Pipeline {
    pub fn load(settings: Settings) -> Result<Self, CliError> {
        let mut records = Vec::new();
        for path in &settings.echo.input {
            let reader = open_records(path).map_err(|e| CliError::Input(e.to_string()))?;
            let mut skipped = 0usize;
            for item in reader {
                match item.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))? {
                    ParsedLine::Record(r) => records.push(r),
                    ParsedLine::Skipped(d) => {
                        skipped += 1;
                        log::debug!("{}:{}: {}", path.display(), d.line, d.reason);
                    }
                }
            }
            if skipped > 0 {
                log::warn!("{}: skipped {skipped} malformed lines", path.display());
            }
        }
        let mut corpus = Corpus::from_records(records);
        for d in &corpus.diagnostics {
            log::warn!("{d}");
        }
        corpus.annotate_venues(&VenueAliases::builtin());
        let mut records = filter_by_venues(corpus.records, &settings.echo.venues);

        let last_data_year = records.iter().map(|r| r.year).max();
        let start = settings.echo.window_start;
        let range = settings
            .echo
            .years
            .unwrap_or((start, last_data_year.unwrap_or(start)));
        let flagged = AnalysisWindow::new(start, range.1).tag(&mut records);
        if flagged > 0 {
            log::info!("{flagged} records fall outside the analysis window");
        }
        let buckets = bucket_by_year(records);
        let digest = corpus_digest(buckets.values().flatten());
        let years = buckets.range(range.0..=range.1).map(|(&y, _)| y).collect();
        let cache = SnapshotCache::new(&settings.cache);
        Ok(Self {
            settings,
            buckets,
            digest,
            range,
            years,
            cache,
            hits: Cell::new(0),
            lookups: Cell::new(0),
            geo: OnceCell::new(),
        })
    }

    pub fn in_range(&self, year: i32) -> bool {
        (self.range.0..=self.range.1).contains(&year)
    }

    /// Buckets of the reported range only.
    pub fn range_buckets(&self) -> YearBuckets {
        self.buckets
            .range(self.range.0..=self.range.1)
            .map(|(&y, r)| (y, r.clone()))
            .collect()
    }

    /// Country resolutions of the whole corpus, plus a digest of the
    /// lookup tables that produced them.
    pub fn resolutions(&self) -> Result<&CorpusResolutions, CliError> {
        if self.geo.get().is_none() {
            let e = &self.settings.echo;
            let (mut lookup, report) = load_lookup(
                e.org_table.as_deref(),
                e.author_table.as_deref(),
                &CountryVocabulary::builtin(),
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            for d in &report.diagnostics {
                log::warn!("{d}");
            }
            let mut h = Sha256::new();
            for table in [&lookup.org_table, &lookup.author_table] {
                let sorted: BTreeMap<_, _> = table.iter().collect();
                h.update(serde_json::to_vec(&sorted).expect("string map serialises"));
            }
            let digest = hex::encode(h.finalize());
            let res = resolve_corpus(&self.buckets, &mut lookup)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let _ = self.geo.set((res, digest));
        }
        Ok(&self.geo.get().expect("initialised above").0)
    }

    fn key(&self, kind: GraphKind, year: i32, mode: SnapshotMode) -> Result<String, CliError> {
        let digest = if kind.needs_resolver() {
            self.resolutions()?;
            let lookup = &self.geo.get().expect("resolved").1;
            hex::encode(Sha256::digest(format!("{}:{lookup}", self.digest)))
        } else {
            self.digest.clone()
        };
        Ok(snapshot_cache_key(
            kind,
            &self.settings.echo.venues,
            year,
            mode,
            &digest,
        ))
    }

    /// One snapshot per year of [`Self::years`], loaded from the cache when
    /// possible. Freshly built snapshots are stored.
    pub fn series(&self, kind: GraphKind, mode: SnapshotMode) -> Result<SnapshotSeries, CliError> {
        let keys = self
            .years
            .iter()
            .map(|&y| self.key(kind, y, mode))
            .collect::<Result<Vec<_>, _>>()?;
        let cached: Vec<Option<Snapshot>> = keys.iter().map(|k| self.cache.load(k)).collect();
        self.lookups.set(self.lookups.get() + keys.len());
        self.hits
            .set(self.hits.get() + cached.iter().flatten().count());

        let resolver: Option<&dyn CountryResolver> = if kind.needs_resolver() {
            Some(self.resolutions()?)
        } else {
            None
        };
        let graph_err = |e: citegraph::graphs::GraphsError| CliError::Input(e.to_string());
        let built: BTreeMap<i32, Snapshot> = if cached.iter().all(Option::is_some) {
            BTreeMap::new()
        } else if mode == SnapshotMode::Cumulative {
            let (first, last) = (self.years[0], *self.years.last().expect("non-empty"));
            let venues = &self.settings.echo.venues;
            snapshots(&self.buckets, kind, resolver, venues, first..=last, mode)
                .map_err(graph_err)?
                .years
                .into_iter()
                .map(|s| (s.year, s))
                .collect()
        } else {
            let mut out = BTreeMap::new();
            for (&year, hit) in self.years.iter().zip(&cached) {
                if hit.is_none() {
                    let snap = build_single_year(&self.buckets, kind, resolver, year)
                        .map_err(graph_err)?;
                    out.insert(year, snap);
                }
            }
            out
        };

        let mut years = Vec::with_capacity(keys.len());
        for ((key, hit), year) in keys.iter().zip(cached).zip(&self.years) {
            let snap = match hit {
                Some(s) => s,
                None => {
                    let s = built.get(year).expect("built every missing year").clone();
                    self.cache.store(key, &s).map_err(|e| {
                        CliError::Environment(format!(
                            "cannot write cache entry under {}: {e}",
                            self.cache.root().display()
                        ))
                    })?;
                    s
                }
            };
            years.push(snap);
        }
        Ok(SnapshotSeries {
            kind,
            mode,
            venues: self.settings.echo.venues.clone(),
            years,
        })
    }

    pub fn cache_key(
        &self,
        kind: GraphKind,
        year: i32,
        mode: SnapshotMode,
    ) -> Result<String, CliError> {
        self.key(kind, year, mode)
    }

    pub fn cache_stats(&self) -> (usize, usize) {
        (self.hits.get(), self.lookups.get())
    }
}
