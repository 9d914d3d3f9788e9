//! Affiliation → country resolution.
//!
//! An author occurrence is resolved by a fixed cascade: the curated author
//! table, then the organisation table keyed by the cleaned organisation,
//! its first word, its last word and the raw text, and finally the country
//! last resolved for the same author during this run.

mod coverage;
mod tables;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coverage::{
    coverage_report, coverage_table, resolve_corpus, CorpusResolutions, CoverageRow,
};
pub use tables::{
    builtin_org_table, load_lookup, parse_author_table, parse_org_table, CountryVocabulary,
    LoadReport,
};

/// Cascade stage that produced a resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    CuratedAuthor,
    Exact,
    FirstWord,
    LastWord,
    Raw,
    PastAuthor,
    Unresolved,
}

impl Step {
    pub fn as_str(self) -> &'static str {
        match self {
            Step::CuratedAuthor => "curated_author",
            Step::Exact => "exact",
            Step::FirstWord => "first_word",
            Step::LastWord => "last_word",
            Step::Raw => "raw",
            Step::PastAuthor => "past_author",
            Step::Unresolved => "unresolved",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountryResolution {
    pub author_id: String,
    pub raw_org: Option<String>,
    pub country: Option<String>,
    pub step: Step,
}

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("{file}: line {line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("{file}: {key:?} maps to {country:?}, which is not in the country vocabulary")]
    UnknownCountry {
        file: String,
        key: String,
        country: String,
    },
    #[error("records must be resolved in ascending year order: {year} after {previous}")]
    OutOfOrder { previous: i32, year: i32 },
}

/// Lookup state for one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CountryLookup {
    pub org_table: HashMap<String, String>,
    pub author_table: HashMap<String, String>,
    /// Countries learned during this run, per author.
    pub past_table: HashMap<String, String>,
    last_year: Option<i32>,
}

/// Keeps the text after the last comma, removes the `#TAB#`/`#tab#` tags
/// and the characters `()[]-_`, and trims surrounding whitespace.
pub fn preprocess_org(raw_org: &str) -> String {
    let last = raw_org.rsplit(',').next().unwrap_or("");
    last.replace("#TAB#", "")
        .replace("#tab#", "")
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | '[' | ']' | '-' | '_'))
        .collect::<String>()
        .trim()
        .to_string()
}

impl CountryLookup {
    pub fn new(org_table: HashMap<String, String>, author_table: HashMap<String, String>) -> Self {
        Self {
            org_table,
            author_table,
            ..Self::default()
        }
    }

    fn org(&self, key: &str) -> Option<&String> {
        if key.is_empty() {
            None
        } else {
            self.org_table.get(key)
        }
    }

    /// Runs the cascade for one author occurrence. Hits on the organisation
    /// table also update the author's entry in the past table.
    pub fn infer_country(&mut self, raw_org: Option<&str>, author_id: &str) -> CountryResolution {
        let raw = raw_org.unwrap_or("");
        let resolution = |country: Option<&String>, step| CountryResolution {
            author_id: author_id.to_string(),
            raw_org: raw_org.map(str::to_string),
            country: country.cloned(),
            step,
        };
        if let Some(c) = self.author_table.get(author_id) {
            return resolution(Some(c), Step::CuratedAuthor);
        }
        let org = preprocess_org(raw);
        let mut words = org.split_whitespace();
        let first = words.next().unwrap_or("");
        let last = words.next_back().unwrap_or(first);
        let hit = [
            (org.as_str(), Step::Exact),
            (first, Step::FirstWord),
            (last, Step::LastWord),
            (raw, Step::Raw),
        ]
        .into_iter()
        .find_map(|(key, step)| self.org(key).map(|c| (c.clone(), step)));
        if let Some((country, step)) = hit {
            self.past_table
                .insert(author_id.to_string(), country.clone());
            return resolution(Some(&country), step);
        }
        match self.past_table.get(author_id) {
            Some(c) => resolution(Some(c), Step::PastAuthor),
            None => resolution(None, Step::Unresolved),
        }
    }

    /// Resolves every author of a record. Records must arrive in ascending
    /// year order, since earlier resolutions feed the past table.
    pub fn resolve_record(
        &mut self,
        record: &crate::ingest::PaperRecord,
    ) -> Result<Vec<CountryResolution>, GeoError> {
        if let Some(previous) = self.last_year {
            if record.year < previous {
                return Err(GeoError::OutOfOrder {
                    previous,
                    year: record.year,
                });
            }
        }
        self.last_year = Some(record.year);
        Ok(record
            .authors
            .iter()
            .map(|a| self.infer_country(a.org.as_deref(), &a.id))
            .collect())
    }

    /// Forgets everything learned during a run.
    pub fn reset_run(&mut self) {
        self.past_table.clear();
        self.last_year = None;
    }
}
