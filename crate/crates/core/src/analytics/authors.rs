use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::share::{ShareMode, ShareTable};
use crate::geo::CorpusResolutions;
use crate::graphs::{NodeKind, SnapshotSeries};
use crate::ingest::{PaperRecord, Venue, YearBuckets};
use crate::table::Table;

fn in_window(records: &[PaperRecord]) -> impl Iterator<Item = &PaperRecord> {
    records.iter().filter(|r| !r.out_of_window)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfCitationYear {
    pub year: i32,
    /// Self-loop multiplicity per self-citing author.
    pub per_author: BTreeMap<String, u64>,
    pub total: u64,
    /// Distinct authors with at least one record that year.
    pub publishing_authors: usize,
    /// Mean over self-citing authors.
    pub mean: f64,
    /// `total / publishing_authors`.
    pub normalized_mean: f64,
}

/// Self-citations per year, read from per-year author citation graphs.
pub fn self_citation_stats(
    per_year: &SnapshotSeries,
    buckets: &YearBuckets,
) -> Vec<SelfCitationYear> {
    per_year
        .years
        .iter()
        .filter_map(|snap| {
            let records = buckets
                .get(&snap.year)
                .map(Vec::as_slice)
                .unwrap_or_default();
            if !records.is_empty() && records.iter().all(|r| r.out_of_window) {
                return None;
            }
            let g = &snap.graph;
            let per_author: BTreeMap<String, u64> = g
                .self_loops()
                .into_iter()
                .zip(g.nodes())
                .filter(|&(m, k)| m > 0 && k.kind == NodeKind::Author)
                .map(|(m, k)| (k.id.clone(), u64::from(m)))
                .collect();
            let total: u64 = per_author.values().sum();
            let publishing: HashSet<&str> =
                in_window(records).flat_map(|r| r.author_ids()).collect();
            let ratio = |n: usize| if n == 0 { 0.0 } else { total as f64 / n as f64 };
            Some(SelfCitationYear {
                year: snap.year,
                mean: ratio(per_author.len()),
                normalized_mean: ratio(publishing.len()),
                publishing_authors: publishing.len(),
                total,
                per_author,
            })
        })
        .collect()
}

/// Export rows `year,total,self_citing_authors,publishing_authors,mean,normalized_mean`.
pub fn self_citation_table(rows: &[SelfCitationYear]) -> Table {
    let mut t = Table::new([
        "year",
        "total",
        "self_citing_authors",
        "publishing_authors",
        "mean",
        "normalized_mean",
    ])
    .meta("analysis", "self_citation")
    .meta(
        "normalization",
        "total self-loops / distinct authors publishing that year",
    );
    for r in rows {
        t.push(vec![
            r.year.into(),
            r.total.into(),
            r.per_author.len().into(),
            r.publishing_authors.into(),
            r.mean.into(),
            r.normalized_mean.into(),
        ]);
    }
    t
}

/// Number of authors per self-citation count, per year.
pub fn self_citation_distribution(rows: &[SelfCitationYear]) -> Table {
    let mut t = Table::new(["year", "self_citations", "authors"])
        .meta("analysis", "self_citation_distribution");
    for r in rows {
        let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in r.per_author.values() {
            *hist.entry(c).or_default() += 1;
        }
        for (c, n) in hist {
            t.push(vec![r.year.into(), c.into(), n.into()]);
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewCoauthors {
    pub author: String,
    pub debut: i32,
    pub last_year: i32,
    /// Distinct coauthors met on a record from the coauthor's debut year.
    pub new_coauthors: usize,
    pub career_length: i32,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewAuthorStats {
    pub debut: BTreeMap<String, i32>,
    pub new_per_year: BTreeMap<i32, usize>,
    /// Per venue and year, share of that year's new authors; an author
    /// debuting in k venues adds 1/k to each.
    pub venue_share: ShareTable,
    pub per_author: Vec<NewCoauthors>,
    pub mean_rate: f64,
    pub std_rate: f64,
}

/// Debut years, new-author venue shares and new-coauthor counts.
pub fn new_author_stats(buckets: &YearBuckets, mode: ShareMode) -> NewAuthorStats {
    let mut debut: BTreeMap<String, i32> = BTreeMap::new();
    let mut last: HashMap<String, i32> = HashMap::new();
    for (&year, records) in buckets {
        for a in in_window(records).flat_map(|r| r.author_ids()) {
            debut.entry(a.to_string()).or_insert(year);
            last.insert(a.to_string(), year);
        }
    }

    let mut new_per_year = BTreeMap::new();
    let mut counts: BTreeMap<i32, BTreeMap<String, f64>> = BTreeMap::new();
    let mut met: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (&year, records) in buckets {
        if in_window(records).next().is_none() {
            continue;
        }
        let mut venues_of: BTreeMap<&str, BTreeSet<Venue>> = BTreeMap::new();
        for r in in_window(records) {
            let authors: BTreeSet<&str> = r.author_ids().collect();
            for &a in &authors {
                if debut[a] == year {
                    venues_of.entry(a).or_default().insert(r.canonical_venue());
                }
                let newcomers = authors.iter().filter(|&&b| b != a && debut[b] == year);
                met.entry(a).or_default().extend(newcomers);
            }
        }
        new_per_year.insert(year, venues_of.len());
        let row = counts.entry(year).or_default();
        for venues in venues_of.values() {
            let w = 1.0 / venues.len() as f64;
            for v in venues {
                *row.entry(v.to_string()).or_default() += w;
            }
        }
    }

    let per_author: Vec<NewCoauthors> = debut
        .iter()
        .map(|(a, &d)| {
            let l = last[a];
            let n = met.get(a.as_str()).map_or(0, BTreeSet::len);
            let career = l - d + 1;
            NewCoauthors {
                author: a.clone(),
                debut: d,
                last_year: l,
                new_coauthors: n,
                career_length: career,
                rate: n as f64 / career as f64,
            }
        })
        .collect();
    let (mean_rate, std_rate) = mean_std(per_author.iter().map(|p| p.rate));
    let venue_share = ShareTable::from_counts(counts, mode)
        .with_meta("analysis", "new_author_venue_share")
        .with_meta(
            "attribution",
            "an author debuting in k venues adds 1/k to each",
        );
    NewAuthorStats {
        debut,
        new_per_year,
        venue_share,
        per_author,
        mean_rate,
        std_rate,
    }
}

/// Population mean and standard deviation; zeros when empty.
fn mean_std(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = values.collect();
    if v.is_empty() {
        return (0.0, 0.0);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Export rows `author,debut,last_year,career_length,new_coauthors,rate`.
pub fn new_coauthor_table(stats: &NewAuthorStats) -> Table {
    let mut t = Table::new([
        "author",
        "debut",
        "last_year",
        "career_length",
        "new_coauthors",
        "rate",
    ])
    .meta("analysis", "new_coauthors")
    .meta("mean_rate", stats.mean_rate)
    .meta("std_rate", stats.std_rate)
    .meta(
        "counting",
        "distinct coauthors on a record from their debut year; mutual debuts count both ways",
    );
    for p in &stats.per_author {
        t.push(vec![
            p.author.as_str().into(),
            p.debut.into(),
            p.last_year.into(),
            p.career_length.into(),
            p.new_coauthors.into(),
            p.rate.into(),
        ]);
    }
    t
}

fn venue_authors(records: &[PaperRecord], venue: Venue) -> HashSet<&str> {
    in_window(records)
        .filter(|r| r.canonical_venue() == venue)
        .flat_map(|r| r.author_ids())
        .collect()
}

/// Jaccard overlap, in percent, of the authors publishing in `a` and in
/// `b` in `year`. `None` when neither venue has authors that year.
pub fn author_overlap(buckets: &YearBuckets, a: Venue, b: Venue, year: i32) -> Option<f64> {
    let records = buckets.get(&year).map(Vec::as_slice).unwrap_or_default();
    let sa = venue_authors(records, a);
    let sb = venue_authors(records, b);
    let union = sa.union(&sb).count();
    (union > 0).then(|| 100.0 * sa.intersection(&sb).count() as f64 / union as f64)
}

/// Export rows `year,venue_a,venue_b,overlap` for every year and unordered
/// venue pair; years where both venues are empty have an empty overlap.
pub fn author_overlap_table(buckets: &YearBuckets, venues: &[Venue]) -> Table {
    let mut t = Table::new(["year", "venue_a", "venue_b", "overlap"])
        .meta("analysis", "author_overlap")
        .meta("denominator", "jaccard: |A and B| / |A or B|, percent");
    for &year in buckets.keys() {
        for (i, &a) in venues.iter().enumerate() {
            for &b in &venues[i + 1..] {
                t.push(vec![
                    year.into(),
                    a.as_str().into(),
                    b.as_str().into(),
                    author_overlap(buckets, a, b, year).into(),
                ]);
            }
        }
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuthorsPerPaper {
    pub papers: usize,
    pub mean: f64,
    pub median: f64,
    pub p95: f64,
    pub p99: f64,
    pub zero_author: usize,
}

/// Linear interpolation between closest ranks; `sorted` must be non-empty.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let pos = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Author-list length statistics per year; years without records are absent.
pub fn authors_per_paper_distribution(buckets: &YearBuckets) -> BTreeMap<i32, AuthorsPerPaper> {
    buckets
        .iter()
        .filter_map(|(&year, records)| {
            let mut lens: Vec<f64> = in_window(records).map(|r| r.authors.len() as f64).collect();
            if lens.is_empty() {
                return None;
            }
            lens.sort_by(f64::total_cmp);
            let stats = AuthorsPerPaper {
                papers: lens.len(),
                mean: lens.iter().sum::<f64>() / lens.len() as f64,
                median: percentile(&lens, 50.0),
                p95: percentile(&lens, 95.0),
                p99: percentile(&lens, 99.0),
                zero_author: lens.iter().filter(|&&l| l == 0.0).count(),
            };
            Some((year, stats))
        })
        .collect()
}

pub fn authors_per_paper_table(stats: &BTreeMap<i32, AuthorsPerPaper>) -> Table {
    let mut t = Table::new([
        "year",
        "papers",
        "mean",
        "median",
        "p95",
        "p99",
        "zero_author",
    ])
    .meta("analysis", "authors_per_paper")
    .meta("percentiles", "linear interpolation between closest ranks");
    for (&year, s) in stats {
        t.push(vec![
            year.into(),
            s.papers.into(),
            s.mean.into(),
            s.median.into(),
            s.p95.into(),
            s.p99.into(),
            s.zero_author.into(),
        ]);
    }
    t
}

/// Category used for records without any resolved author.
pub const UNKNOWN_COUNTRY: &str = "Unknown";

/// Records per country and year. A record counts once for each distinct
/// country among its resolved authors; records with none count towards
/// [`UNKNOWN_COUNTRY`] when `include_unresolved` is set.
pub fn country_share(
    buckets: &YearBuckets,
    resolutions: &CorpusResolutions,
    mode: ShareMode,
    include_unresolved: bool,
) -> ShareTable {
    let mut counts: BTreeMap<i32, BTreeMap<String, f64>> = BTreeMap::new();
    for (&year, records) in buckets {
        let mut row = BTreeMap::new();
        let mut any = false;
        for r in in_window(records) {
            any = true;
            let countries: BTreeSet<&str> = resolutions
                .get(&r.id)
                .unwrap_or_default()
                .iter()
                .filter_map(|c| c.country.as_deref())
                .collect();
            if countries.is_empty() {
                if include_unresolved {
                    *row.entry(UNKNOWN_COUNTRY.to_string()).or_default() += 1.0;
                }
                continue;
            }
            for c in countries {
                *row.entry(c.to_string()).or_default() += 1.0;
            }
        }
        if any {
            counts.insert(year, row);
        }
    }
    ShareTable::from_counts(counts, mode)
        .with_meta("analysis", "country_share")
        .with_meta(
            "attribution",
            "one per distinct resolved country per record",
        )
        .with_meta("include_unresolved", include_unresolved)
}
