//! Built-in algebra documents. Each entry is embedded at compile time and
//! passes every applicable validator (a test below loads all of them).

use crate::document::{load_document, parse_document, AlgebraDocument, LoadedAlgebra};
use crate::error::{Error, Result};

/// Name, embedded document text, and a one-line description.
pub struct CatalogEntry {
    pub name: &'static str,
    pub notes: &'static str,
    text: &'static str,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "f1",
        notes: "the ground field as a 1-dimensional algebra",
        text: include_str!("../fixtures/f1.json"),
    },
    CatalogEntry {
        name: "ut2",
        notes: "upper triangular 2x2 matrices, basis (e11, e22, e12)",
        text: include_str!("../fixtures/ut2.json"),
    },
    CatalogEntry {
        name: "ut2_z2",
        notes: "upper triangular 2x2 matrices with the diagonal/strictly-upper parity grading",
        text: include_str!("../fixtures/ut2_z2.json"),
    },
    CatalogEntry {
        name: "fz2",
        notes: "group algebra of the order-2 group, basis (1, g)",
        text: include_str!("../fixtures/fz2.json"),
    },
    CatalogEntry {
        name: "fz2_z2",
        notes: "group algebra of the order-2 group with its group grading",
        text: include_str!("../fixtures/fz2_z2.json"),
    },
    CatalogEntry {
        name: "m2",
        notes: "full 2x2 matrix algebra, basis (e11, e12, e21, e22)",
        text: include_str!("../fixtures/m2.json"),
    },
    CatalogEntry {
        name: "m2_transpose",
        notes: "full 2x2 matrix algebra acted on by transposition (an anti-automorphism)",
        text: include_str!("../fixtures/m2_transpose.json"),
    },
    CatalogEntry {
        name: "m2_conj",
        notes: "full 2x2 matrix algebra acted on by conjugation with diag(1, -1) (an automorphism)",
        text: include_str!("../fixtures/m2_conj.json"),
    },
    CatalogEntry {
        name: "zero3",
        notes: "3-dimensional algebra with zero multiplication",
        text: include_str!("../fixtures/zero3.json"),
    },
];

/// All entries in catalog order.
pub fn catalog_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Names of all entries, in catalog order.
pub fn catalog_list() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalog {
            name: name.to_string(),
            available: catalog_list().join(", "),
        })
}

/// Raw document text of an entry (exactly what `catalog show` prints).
pub fn catalog_text(name: &str) -> Result<&'static str> {
    Ok(lookup(name)?.text)
}

/// Parsed (but not semantically validated) document of an entry.
pub fn catalog_get(name: &str) -> Result<AlgebraDocument> {
    parse_document(lookup(name)?.text)
}

/// Fully validated entry, ready to compute with.
pub fn catalog_load(name: &str) -> Result<LoadedAlgebra> {
    load_document(&catalog_get(name)?)
}
