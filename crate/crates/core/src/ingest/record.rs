use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::venue::Venue;

/// One publication as it appears in the line-delimited dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub authors: Vec<AuthorRef>,
    pub venue: VenueRef,
    pub year: i32,
    #[serde(default)]
    pub references: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indexed_abstract: Option<IndexedAbstract>,
    /// Set by [`AnalysisWindow::tag`](super::AnalysisWindow::tag) when the
    /// record's year lies outside the analysis window.
    #[serde(skip)]
    pub out_of_window: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorRef {
    pub id: String,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub org: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VenueRef {
    pub raw: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Only ever written by [`VenueAliases::annotate`](super::VenueAliases::annotate).
    #[serde(skip)]
    pub canonical: Option<Venue>,
}

/// Inverted index of an abstract: word → 0-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedAbstract {
    #[serde(rename = "indexLength", alias = "IndexLength")]
    pub index_length: usize,
    #[serde(rename = "InvertedIndex", alias = "invertedIndex")]
    pub inverted_index: BTreeMap<String, Vec<usize>>,
}

impl IndexedAbstract {
    /// Checks that every position list is strictly increasing and in range.
    pub fn validate(&self) -> Result<(), String> {
        for (word, positions) in &self.inverted_index {
            if let Some(w) = positions.windows(2).find(|w| w[0] >= w[1]) {
                return Err(format!(
                    "positions of {word:?} not strictly increasing ({} then {})",
                    w[0], w[1]
                ));
            }
            if let Some(&p) = positions.iter().find(|&&p| p >= self.index_length) {
                return Err(format!(
                    "position {p} of {word:?} exceeds index length {}",
                    self.index_length
                ));
            }
        }
        Ok(())
    }
}

impl PaperRecord {
    /// Record-level invariants that serde cannot express.
    pub fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("empty paper id".into());
        }
        if self.year <= 0 {
            return Err(format!("non-positive year {}", self.year));
        }
        if self.venue.raw.trim().is_empty() {
            return Err("empty venue name".into());
        }
        if let Some(i) = self.authors.iter().position(|a| a.id.is_empty()) {
            return Err(format!("author #{i} has an empty id"));
        }
        if let Some(abs) = &self.indexed_abstract {
            abs.validate()?;
        }
        Ok(())
    }

    /// Effective canonical venue; unannotated records count as `Other`.
    pub fn canonical_venue(&self) -> Venue {
        self.venue.canonical.unwrap_or(Venue::Other)
    }

    pub fn author_ids(&self) -> impl Iterator<Item = &str> {
        self.authors.iter().map(|a| a.id.as_str())
    }
}
