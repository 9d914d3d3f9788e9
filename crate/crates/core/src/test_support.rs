//! Fixtures shared by unit tests.

use std::io::Cursor;

use crate::ingest::{
    bucket_by_year, parse_records, AuthorRef, PaperRecord, VenueAliases, VenueRef, YearBuckets,
};

pub const WORKED_EXAMPLE: &str = include_str!("../tests/fixtures/worked_example.jsonl");

pub fn worked_example_records() -> Vec<PaperRecord> {
    let (mut records, diags) = parse_records(Cursor::new(WORKED_EXAMPLE.as_bytes().to_vec()))
        .unwrap()
        .collect_all()
        .unwrap();
    assert!(diags.is_empty());
    let aliases = VenueAliases::builtin();
    records.iter_mut().for_each(|r| aliases.annotate(r));
    records
}

pub fn worked_example() -> YearBuckets {
    bucket_by_year(worked_example_records())
}

/// Org → country mapping used with the worked example.
pub fn worked_example_country(record: &PaperRecord, author_index: usize) -> Option<String> {
    match record.authors[author_index].org.as_deref()? {
        "MIT" => Some("USA".into()),
        "UFRGS" => Some("Brazil".into()),
        "TU KL" => Some("Germany".into()),
        _ => None,
    }
}

pub fn record(id: &str, year: i32, authors: &[&str], refs: &[&str]) -> PaperRecord {
    PaperRecord {
        id: id.into(),
        title: format!("paper {id}"),
        authors: authors
            .iter()
            .map(|a| AuthorRef {
                id: (*a).into(),
                name: format!("author {a}"),
                org: None,
            })
            .collect(),
        venue: VenueRef {
            raw: "Some Conference".into(),
            id: None,
            canonical: None,
        },
        year,
        references: refs.iter().map(|r| (*r).into()).collect(),
        indexed_abstract: None,
        out_of_window: false,
    }
}
