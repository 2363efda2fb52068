use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::one_array::OneArrayIndexKind;
use crate::two_array::{Orientation, TwoArrayIndexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arity {
    OneArray,
    TwoArray,
}

/// Any of the 23 indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexKind {
    One(OneArrayIndexKind),
    Two(TwoArrayIndexKind),
}

impl IndexKind {
    pub fn abbrev(self) -> &'static str {
        match self {
            IndexKind::One(k) => k.abbrev(),
            IndexKind::Two(k) => k.abbrev(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::One(k) => k.name(),
            IndexKind::Two(k) => k.name(),
        }
    }

    pub fn arity(self) -> Arity {
        match self {
            IndexKind::One(_) => Arity::OneArray,
            IndexKind::Two(_) => Arity::TwoArray,
        }
    }

    /// One-array indices are judged by their change against the reference,
    /// which grows with difference.
    pub fn orientation(self) -> Orientation {
        match self {
            IndexKind::One(_) => Orientation::GrowsWithDifference,
            IndexKind::Two(k) => k.orientation(),
        }
    }

    /// Position in catalog order.
    pub fn ordinal(self) -> usize {
        all_indices()
            .position(|k| k == self)
            .expect("every kind is in the catalog")
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbrev())
    }
}

/// Case-insensitive abbreviation lookup.
impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        all_indices()
            .find(|k| k.abbrev().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownIndex(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexCatalogEntry {
    pub kind: IndexKind,
    pub name: &'static str,
    pub abbrev: &'static str,
    pub arity: Arity,
    pub orientation: Orientation,
}

/// The nine one-array indices, then the thirteen classic two-array indices,
/// then AADRR.
pub fn all_indices() -> impl Iterator<Item = IndexKind> {
    OneArrayIndexKind::ALL
        .into_iter()
        .map(IndexKind::One)
        .chain(TwoArrayIndexKind::ALL.into_iter().map(IndexKind::Two))
}

pub fn catalog() -> Vec<IndexCatalogEntry> {
    all_indices()
        .map(|kind| IndexCatalogEntry {
            kind,
            name: kind.name(),
            abbrev: kind.abbrev(),
            arity: kind.arity(),
            orientation: kind.orientation(),
        })
        .collect()
}

/// Parses a comma-separated list such as `DABS,aadrr`.
pub fn parse_index_list(list: &str) -> Result<Vec<IndexKind>, Error> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}
