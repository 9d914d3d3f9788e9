use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{IngestError, PaperRecord};

const DEFAULT_ALIASES: &str = include_str!("../../data/venue_aliases.json");

/// The studied conferences, plus a catch-all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Venue {
    #[serde(rename = "IJCAI")]
    Ijcai,
    #[serde(rename = "AAAI")]
    Aaai,
    #[serde(rename = "NeurIPS")]
    NeurIps,
    #[serde(rename = "CVPR")]
    Cvpr,
    #[serde(rename = "ECCV")]
    Eccv,
    #[serde(rename = "ICCV")]
    Iccv,
    #[serde(rename = "ACL")]
    Acl,
    #[serde(rename = "NAACL")]
    Naacl,
    #[serde(rename = "EMNLP")]
    Emnlp,
    #[serde(rename = "ICML")]
    Icml,
    #[serde(rename = "KDD")]
    Kdd,
    #[serde(rename = "SIGIR")]
    Sigir,
    #[serde(rename = "WWW")]
    Www,
    Other,
}

impl Venue {
    pub const ALL: [Venue; 14] = [
        Venue::Ijcai,
        Venue::Aaai,
        Venue::NeurIps,
        Venue::Cvpr,
        Venue::Eccv,
        Venue::Iccv,
        Venue::Acl,
        Venue::Naacl,
        Venue::Emnlp,
        Venue::Icml,
        Venue::Kdd,
        Venue::Sigir,
        Venue::Www,
        Venue::Other,
    ];

    /// The thirteen named conferences (everything except `Other`).
    pub fn conferences() -> &'static [Venue] {
        &Self::ALL[..13]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Venue::Ijcai => "IJCAI",
            Venue::Aaai => "AAAI",
            Venue::NeurIps => "NeurIPS",
            Venue::Cvpr => "CVPR",
            Venue::Eccv => "ECCV",
            Venue::Iccv => "ICCV",
            Venue::Acl => "ACL",
            Venue::Naacl => "NAACL",
            Venue::Emnlp => "EMNLP",
            Venue::Icml => "ICML",
            Venue::Kdd => "KDD",
            Venue::Sigir => "SIGIR",
            Venue::Www => "WWW",
            Venue::Other => "Other",
        }
    }
}

impl fmt::Display for Venue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Venue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Venue::ALL
            .iter()
            .copied()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .or_else(|| s.eq_ignore_ascii_case("NIPS").then_some(Venue::NeurIps))
            .ok_or_else(|| format!("unknown venue {s:?}"))
    }
}

/// Case-insensitive alias table mapping raw venue strings to [`Venue`]s.
#[derive(Debug, Clone, Default)]
pub struct VenueAliases {
    aliases: HashMap<String, Venue>,
}

fn alias_key(raw: &str) -> String {
    raw.trim().to_lowercase()
}

impl VenueAliases {
    /// The alias table shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json_str(DEFAULT_ALIASES).expect("bundled venue alias table is valid")
    }

    pub fn from_json_str(text: &str) -> Result<Self, IngestError> {
        let raw: HashMap<String, String> =
            serde_json::from_str(text).map_err(|e| IngestError::AliasTable(e.to_string()))?;
        let mut aliases = HashMap::with_capacity(raw.len());
        for (alias, target) in raw {
            let venue = target.parse::<Venue>().map_err(IngestError::AliasTable)?;
            aliases.insert(alias_key(&alias), venue);
        }
        Ok(Self { aliases })
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
            path: Some(path.to_path_buf()),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn len(&self) -> usize {
        self.aliases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aliases.is_empty()
    }

    /// Maps a free-form venue name to a canonical venue; unknown names are `Other`.
    pub fn canonicalize(&self, raw: &str) -> Venue {
        self.aliases
            .get(&alias_key(raw))
            .copied()
            .unwrap_or(Venue::Other)
    }

    pub fn annotate(&self, record: &mut PaperRecord) {
        record.venue.canonical = Some(self.canonicalize(&record.venue.raw));
    }
}
