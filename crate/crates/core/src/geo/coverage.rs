use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{CountryLookup, CountryResolution, GeoError};
use crate::graphs::CountryResolver;
use crate::ingest::{PaperRecord, YearBuckets};
use crate::table::Table;

/// Resolutions for every author occurrence of a corpus.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusResolutions {
    by_record: HashMap<String, Vec<CountryResolution>>,
    /// Record ids per year, in resolution order.
    years: BTreeMap<i32, Vec<String>>,
}

impl CorpusResolutions {
    pub fn get(&self, record_id: &str) -> Option<&[CountryResolution]> {
        self.by_record.get(record_id).map(Vec::as_slice)
    }

    /// `(year, record id, resolutions)` in ascending year order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &str, &[CountryResolution])> {
        self.years.iter().flat_map(move |(&y, ids)| {
            ids.iter()
                .map(move |id| (y, id.as_str(), self.by_record[id].as_slice()))
        })
    }

    pub fn len(&self) -> usize {
        self.by_record.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_record.is_empty()
    }
}

impl CountryResolver for CorpusResolutions {
    fn country_of(&self, record: &PaperRecord, author_index: usize) -> Option<String> {
        self.by_record
            .get(&record.id)?
            .get(author_index)?
            .country
            .clone()
    }
}

/// Resolves every record of `buckets`, year by year in ascending order.
pub fn resolve_corpus(
    buckets: &YearBuckets,
    lookup: &mut CountryLookup,
) -> Result<CorpusResolutions, GeoError> {
    let mut out = CorpusResolutions::default();
    for (&year, records) in buckets {
        let ids = out.years.entry(year).or_default();
        for record in records {
            let resolved = lookup.resolve_record(record)?;
            ids.push(record.id.clone());
            out.by_record.insert(record.id.clone(), resolved);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageRow {
    pub year: i32,
    pub resolved: u64,
    pub unresolved: u64,
}

impl CoverageRow {
    /// Resolved share of author occurrences; `None` for a year without any.
    pub fn resolution_rate(&self) -> Option<f64> {
        let total = self.resolved + self.unresolved;
        (total > 0).then(|| self.resolved as f64 / total as f64)
    }
}

/// Resolved and unresolved author occurrences per record year.
pub fn coverage_report(resolutions: &CorpusResolutions) -> Vec<CoverageRow> {
    let mut rows: BTreeMap<i32, CoverageRow> = BTreeMap::new();
    for (year, _, resolved) in resolutions.iter() {
        let row = rows.entry(year).or_insert(CoverageRow {
            year,
            resolved: 0,
            unresolved: 0,
        });
        for r in resolved {
            if r.country.is_some() {
                row.resolved += 1;
            } else {
                row.unresolved += 1;
            }
        }
    }
    rows.into_values().collect()
}

/// Export rows `year,resolved,unresolved,resolution_rate`.
pub fn coverage_table(rows: &[CoverageRow]) -> Table {
    let mut t = Table::new(["year", "resolved", "unresolved", "resolution_rate"]);
    for r in rows {
        t.push(vec![
            r.year.into(),
            r.resolved.into(),
            r.unresolved.into(),
            r.resolution_rate().into(),
        ]);
    }
    t
}
