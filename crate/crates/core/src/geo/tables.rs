use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use super::{CountryLookup, GeoError};

const BUILTIN_COUNTRIES: &str = include_str!("../../data/countries.txt");
const BUILTIN_ORG_TABLE: &str = include_str!("../../data/org_table.json");

/// Closed set of country names accepted in lookup tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountryVocabulary {
    names: BTreeSet<String>,
}

impl CountryVocabulary {
    pub fn builtin() -> Self {
        Self::from_lines(BUILTIN_COUNTRIES)
    }

    /// One name per line; blank lines and `#` comments are ignored.
    pub fn from_lines(text: &str) -> Self {
        let names = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        Self { names }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Non-fatal findings while loading tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub diagnostics: Vec<String>,
}

/// Map entries in file order, duplicates included. Scalar keys of any
/// type (author ids are often bare integers in YAML) become strings.
struct Entries(Vec<(String, String)>);

struct ScalarString(String);

impl<'de> Deserialize<'de> for ScalarString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ScalarString;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a string or number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ScalarString, E> {
                Ok(ScalarString(v.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ScalarString, E> {
                Ok(ScalarString(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ScalarString, E> {
                Ok(ScalarString(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entries;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a mapping of names to countries")
            }
            fn visit_unit<E: de::Error>(self) -> Result<Entries, E> {
                Ok(Entries(Vec::new()))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<ScalarString, ScalarString>()? {
                    out.push((k.0, v.0));
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_any(V)
    }
}

fn into_table(
    entries: Entries,
    file: &str,
    vocabulary: &CountryVocabulary,
    report: &mut LoadReport,
) -> Result<HashMap<String, String>, GeoError> {
    let mut table = HashMap::with_capacity(entries.0.len());
    for (key, country) in entries.0 {
        if !vocabulary.contains(&country) {
            return Err(GeoError::UnknownCountry {
                file: file.to_string(),
                key,
                country,
            });
        }
        if let Some(prev) = table.insert(key.clone(), country.clone()) {
            report.diagnostics.push(format!(
                "{file}: duplicate key {key:?} ({prev:?} replaced by {country:?})"
            ));
        }
    }
    Ok(table)
}

/// Parses an organisation table: a JSON object of organisation → country.
pub fn parse_org_table(
    text: &str,
    file: &str,
    vocabulary: &CountryVocabulary,
    report: &mut LoadReport,
) -> Result<HashMap<String, String>, GeoError> {
    let entries: Entries = serde_json::from_str(text).map_err(|e| GeoError::Parse {
        file: file.to_string(),
        line: e.line(),
        message: e.to_string(),
    })?;
    into_table(entries, file, vocabulary, report)
}

/// Parses an author table: a YAML mapping of author id → country.
pub fn parse_author_table(
    text: &str,
    file: &str,
    vocabulary: &CountryVocabulary,
    report: &mut LoadReport,
) -> Result<HashMap<String, String>, GeoError> {
    if text
        .lines()
        .all(|l| l.trim().is_empty() || l.trim_start().starts_with('#'))
    {
        return Ok(HashMap::new());
    }
    let entries: Entries = serde_yaml::from_str(text).map_err(|e| GeoError::Parse {
        file: file.to_string(),
        line: e.location().map_or(0, |l| l.line()),
        message: e.to_string(),
    })?;
    into_table(entries, file, vocabulary, report)
}

fn read(path: &Path) -> Result<String, GeoError> {
    std::fs::read_to_string(path).map_err(|e| GeoError::Io {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

/// The small organisation table shipped with the crate.
pub fn builtin_org_table() -> HashMap<String, String> {
    let mut report = LoadReport::default();
    parse_org_table(
        BUILTIN_ORG_TABLE,
        "org_table.json",
        &CountryVocabulary::builtin(),
        &mut report,
    )
    .expect("shipped org table is valid")
}

/// Loads the lookup tables. A missing organisation table path selects the
/// shipped one; a missing author table path leaves that table empty.
pub fn load_lookup(
    org_table: Option<&Path>,
    author_table: Option<&Path>,
    vocabulary: &CountryVocabulary,
) -> Result<(CountryLookup, LoadReport), GeoError> {
    let mut report = LoadReport::default();
    let orgs = match org_table {
        Some(p) => parse_org_table(&read(p)?, &p.display().to_string(), vocabulary, &mut report)?,
        None => builtin_org_table(),
    };
    let authors = match author_table {
        Some(p) => {
            parse_author_table(&read(p)?, &p.display().to_string(), vocabulary, &mut report)?
        }
        None => HashMap::new(),
    };
    Ok((CountryLookup::new(orgs, authors), report))
}
