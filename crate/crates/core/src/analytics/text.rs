use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::table::Table;

const BUILTIN_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Words ignored when weighting titles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn builtin() -> Self {
        Self::from_lines(BUILTIN_STOPWORDS)
    }

    /// One word per line, compared in lower case.
    pub fn from_lines(text: &str) -> Self {
        Self(
            text.lines()
                .map(|l| l.trim().to_lowercase())
                .filter(|l| !l.is_empty())
                .collect(),
        )
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(Self::from_lines(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }
}

/// Lower-cased alphanumeric runs of at least two characters that are not
/// stop words.
pub fn tokenize<'a>(title: &'a str, stopwords: &'a Stopwords) -> impl Iterator<Item = String> + 'a {
    title
        .split(|c: char| !c.is_alphanumeric())
        .map(str::to_lowercase)
        .filter(move |w| w.chars().count() >= 2 && !stopwords.contains(w))
}

/// Corpus-level weight of every word: Σ over titles of tf · ln(N / df),
/// where tf is the raw count of the word in a title and df the number of
/// titles containing it.
pub fn tfidf_weights(titles: &[String], stopwords: &Stopwords) -> BTreeMap<String, f64> {
    let docs: Vec<HashMap<String, u32>> = titles
        .iter()
        .map(|t| {
            let mut tf = HashMap::new();
            for w in tokenize(t, stopwords) {
                *tf.entry(w).or_insert(0) += 1;
            }
            tf
        })
        .collect();
    let mut df: HashMap<&str, u32> = HashMap::new();
    for d in &docs {
        for w in d.keys() {
            *df.entry(w).or_insert(0) += 1;
        }
    }
    let n = docs.len() as f64;
    let mut weights = BTreeMap::new();
    for d in &docs {
        for (w, &tf) in d {
            let idf = (n / f64::from(df[w.as_str()])).ln();
            *weights.entry(w.clone()).or_insert(0.0) += f64::from(tf) * idf;
        }
    }
    weights
}

/// 1-based ranks with ties sharing the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut ix: Vec<usize> = (0..values.len()).collect();
    ix.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < ix.len() {
        let mut end = start + 1;
        while end < ix.len() && values[ix[end]] == values[ix[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &ix[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    /// Fewer than two observations, or unequal lengths.
    TooShort,
    /// One side is constant.
    ZeroVariance,
}

fn has_ties(v: &[f64]) -> bool {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s.windows(2).any(|w| w[0] == w[1])
}

/// Spearman's rho of two samples: the Pearson correlation of their average
/// ranks, computed as 1 − 6Σd²/(n(n² − 1)) when neither side has ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, Undefined> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Undefined::TooShort);
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let n = x.len() as f64;
    if !has_ties(x) && !has_ties(y) {
        let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
        return Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)));
    }
    let mean = (n + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (a - mean, b - mean);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Undefined::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationRow {
    pub year: i32,
    pub common_words: usize,
    pub rho: Option<f64>,
    /// Why `rho` is missing or unreliable.
    pub flag: Option<String>,
}

/// Fewest shared words for which a correlation is reported.
pub const MIN_COMMON_WORDS: usize = 3;

/// Per year, Spearman's rho between the title-word weights of the two
/// corpora over the words they share.
pub fn tfidf_rank_correlation(
    laureate_titles: &BTreeMap<i32, Vec<String>>,
    corpus_titles: &BTreeMap<i32, Vec<String>>,
    stopwords: &Stopwords,
) -> Vec<CorrelationRow> {
    let years: std::collections::BTreeSet<i32> = laureate_titles
        .keys()
        .chain(corpus_titles.keys())
        .copied()
        .collect();
    years
        .into_iter()
        .map(|year| {
            let empty = Vec::new();
            let a = laureate_titles.get(&year).unwrap_or(&empty);
            let b = corpus_titles.get(&year).unwrap_or(&empty);
            let row = |common, rho, flag: Option<&str>| CorrelationRow {
                year,
                common_words: common,
                rho,
                flag: flag.map(str::to_string),
            };
            if a.is_empty() || b.is_empty() {
                return row(0, None, Some("empty side"));
            }
            let (wa, wb) = (tfidf_weights(a, stopwords), tfidf_weights(b, stopwords));
            let common: Vec<&String> = wa.keys().filter(|w| wb.contains_key(*w)).collect();
            if common.len() < MIN_COMMON_WORDS {
                return row(common.len(), None, Some("insufficient common words"));
            }
            let x: Vec<f64> = common.iter().map(|w| wa[*w]).collect();
            let y: Vec<f64> = common.iter().map(|w| wb[*w]).collect();
            match spearman(&x, &y) {
                Ok(rho) => row(common.len(), Some(rho), None),
                Err(Undefined::ZeroVariance) => row(common.len(), None, Some("constant weights")),
                Err(Undefined::TooShort) => {
                    row(common.len(), None, Some("insufficient common words"))
                }
            }
        })
        .collect()
}

pub fn correlation_table(rows: &[CorrelationRow]) -> Table {
    let mut t = Table::new(["year", "common_words", "rho", "flag"])
        .meta("analysis", "tfidf_rank_correlation")
        .meta("document", "one title")
        .meta("tf", "raw count")
        .meta("idf", "ln(N / df)")
        .meta("aggregation", "sum over titles")
        .meta("ranking", "average ranks for ties")
        .meta("min_common_words", MIN_COMMON_WORDS);
    for r in rows {
        t.push(vec![
            r.year.into(),
            r.common_words.into(),
            r.rho.into(),
            r.flag.clone().into(),
        ]);
    }
    t
}

/// One curated laureate entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Laureate {
    pub laureate: String,
    pub year_awarded: i32,
    #[serde(deserialize_with = "paper_ids")]
    pub papers: Vec<String>,
}

/// Paper ids may be written as bare numbers.
fn paper_ids<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Id {
        Text(String),
        Number(u64),
    }
    Ok(Vec::<Id>::deserialize(d)?
        .into_iter()
        .map(|id| match id {
            Id::Text(s) => s,
            Id::Number(n) => n.to_string(),
        })
        .collect())
}

/// Parses a YAML list of laureates.
pub fn parse_laureates(text: &str) -> Result<Vec<Laureate>, serde_yaml::Error> {
    serde_yaml::from_str(text)
}
