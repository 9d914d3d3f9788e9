use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShareMode {
    Count,
    #[default]
    Percentage,
}

/// Values of one year; `note` explains an empty or partial row.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ShareRow {
    pub values: BTreeMap<String, f64>,
    pub note: Option<String>,
}

impl ShareRow {
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, category: &str) -> f64 {
        self.values.get(category).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.values().sum()
    }
}

/// Per-year values over a set of categories.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ShareTable {
    pub mode: ShareMode,
    pub rows: BTreeMap<i32, ShareRow>,
    pub metadata: BTreeMap<String, Value>,
}

impl ShareTable {
    /// Builds a table from raw per-year counts. In percentage mode each
    /// non-empty year is scaled to sum to 100; years whose counts are all
    /// zero keep no values and are noted.
    pub fn from_counts(counts: BTreeMap<i32, BTreeMap<String, f64>>, mode: ShareMode) -> Self {
        let rows = counts
            .into_iter()
            .map(|(year, values)| {
                let total: f64 = values.values().sum();
                let row = if total <= 0.0 {
                    ShareRow {
                        values: BTreeMap::new(),
                        note: Some("empty".into()),
                    }
                } else {
                    let values = match mode {
                        ShareMode::Count => values,
                        ShareMode::Percentage => values
                            .into_iter()
                            .map(|(k, v)| (k, 100.0 * v / total))
                            .collect(),
                    };
                    ShareRow { values, note: None }
                };
                (year, row)
            })
            .collect();
        Self {
            mode,
            rows,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Serialize) -> Self {
        self.metadata.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serialisable"),
        );
        self
    }

    /// Every category that has a value in some year, sorted.
    pub fn categories(&self) -> BTreeSet<&str> {
        self.rows
            .values()
            .flat_map(|r| r.values.keys().map(String::as_str))
            .collect()
    }

    pub fn row(&self, year: i32) -> Option<&ShareRow> {
        self.rows.get(&year)
    }

    /// Export rows `year,category,value,note`, one per (year, category);
    /// empty years appear once with only their note.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["year", "category", "value", "note"]).meta("mode", self.mode);
        for (k, v) in &self.metadata {
            t.set_meta(k, v);
        }
        for (&year, row) in &self.rows {
            if row.values.is_empty() {
                t.push(vec![
                    year.into(),
                    None::<&str>.into(),
                    None::<f64>.into(),
                    row.note.clone().into(),
                ]);
            }
            for (cat, &v) in &row.values {
                t.push(vec![
                    year.into(),
                    cat.as_str().into(),
                    v.into(),
                    row.note.clone().into(),
                ]);
            }
        }
        t
    }
}

/// value(y) = mean of the values over the non-empty years in
/// [y − width + 1, y]; a category missing from a present year counts as 0.
pub fn sliding_window_average(share: &ShareTable, width: u32) -> ShareTable {
    let width = width.max(1) as i32;
    let mut rows = BTreeMap::new();
    for (&year, row) in &share.rows {
        if row.is_empty() {
            rows.insert(year, row.clone());
            continue;
        }
        let present: Vec<&ShareRow> = share
            .rows
            .range(year - width + 1..=year)
            .map(|(_, r)| r)
            .filter(|r| !r.is_empty())
            .collect();
        let cats: BTreeSet<&String> = present.iter().flat_map(|r| r.values.keys()).collect();
        let n = present.len() as f64;
        let values = cats
            .into_iter()
            .map(|c| (c.clone(), present.iter().map(|r| r.get(c)).sum::<f64>() / n))
            .collect();
        rows.insert(
            year,
            ShareRow {
                values,
                note: row.note.clone(),
            },
        );
    }
    let mut out = ShareTable {
        mode: share.mode,
        rows,
        metadata: share.metadata.clone(),
    };
    out.metadata
        .insert("sliding_window".into(), Value::from(width));
    out
}

/// The same averaging over a plain year → value series.
pub fn sliding_window_series(series: &BTreeMap<i32, f64>, width: u32) -> BTreeMap<i32, f64> {
    let width = width.max(1) as i32;
    series
        .keys()
        .map(|&y| {
            let window: Vec<f64> = series.range(y - width + 1..=y).map(|(_, &v)| v).collect();
            (y, window.iter().sum::<f64>() / window.len() as f64)
        })
        .collect()
}
