//! The on-disk JSON schema for algebras: structure constants as sparse
//! quadruples with rationals written as `"p/q"` strings, plus optional
//! grading and action blocks. All indices in documents are 0-based.
//!
//! Loading a document runs every applicable validator — the structure
//! table, the grading consistency check, and the action module laws — so
//! anything this module hands back is safe to compute with. Documents
//! also get a stable content hash so reports can name their input
//! unambiguously.

use crate::algebra::{
    validate_grading, validate_haction, Algebra, GeneralizedHAction, Grading,
};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational, SparseRow};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Schema version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Serialized algebra: text rationals, sparse table, optional extras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub format: u32,
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Sparse structure constants: `[i, j, k, "p/q"]` means the product
    /// of basis `i` and basis `j` has coefficient p/q at basis `k`.
    pub table: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haction: Option<HActionDocument>,
}

/// Serialized grading: degree maps basis index to label index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDocument {
    pub labels: Vec<String>,
    pub degree: Vec<usize>,
}

/// Serialized generalized action of a unital associative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HActionDocument {
    pub hdim: usize,
    pub hbasis: Vec<String>,
    /// Coordinates of the unit in the acting basis.
    pub unit: Vec<String>,
    /// Sparse multiplication table of the acting algebra.
    pub htable: Vec<(usize, usize, usize, String)>,
    /// One matrix per acting basis element; entry `[r][c]` is the
    /// coefficient of basis `r` in the image of basis `c`.
    pub rho: Vec<Vec<Vec<String>>>,
}

/// Everything a document can describe, fully validated.
pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub grading: Option<Grading>,
    pub action: Option<GeneralizedHAction>,
    /// Content hash of the originating document.
    pub hash: String,
}

/// Parse document text without semantic validation.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let doc: AlgebraDocument = serde_json::from_str(text)?;
    if doc.format != FORMAT_VERSION {
        return Err(Error::Document {
            detail: format!(
                "unsupported format {} (this build reads format {FORMAT_VERSION})",
                doc.format
            ),
        });
    }
    Ok(doc)
}

fn rational(text: &str) -> Result<Rational> {
    parse_rational(text)
}

/// Validate a parsed document and build the in-memory structures.
pub fn load_document(doc: &AlgebraDocument) -> Result<LoadedAlgebra> {
    if doc.dim != doc.basis.len() {
        return Err(Error::Document {
            detail: format!(
                "declared dimension {} does not match {} basis labels",
                doc.dim,
                doc.basis.len()
            ),
        });
    }
    let entries: Vec<(usize, usize, usize, Rational)> = doc
        .table
        .iter()
        .map(|(i, j, k, v)| Ok((*i, *j, *k, rational(v)?)))
        .collect::<Result<_>>()?;
    let algebra = Algebra::new(doc.name.clone(), doc.basis.clone(), entries)?;

    let grading = match &doc.grading {
        None => None,
        Some(g) => Some(validate_grading(
            &algebra,
            g.labels.clone(),
            g.degree.clone(),
        )?),
    };

    let action = match &doc.haction {
        None => None,
        Some(h) => {
            if h.hdim != h.hbasis.len() {
                return Err(Error::Document {
                    detail: format!(
                        "declared acting dimension {} does not match {} basis labels",
                        h.hdim,
                        h.hbasis.len()
                    ),
                });
            }
            let mut htable: Vec<Vec<SparseRow>> = vec![vec![Vec::new(); h.hdim]; h.hdim];
            for (i, j, k, v) in &h.htable {
                if *i >= h.hdim || *j >= h.hdim || *k >= h.hdim {
                    return Err(Error::Document {
                        detail: format!(
                            "acting table index ({i}, {j}, {k}) out of range for dimension {}",
                            h.hdim
                        ),
                    });
                }
                htable[*i][*j].push((*k, rational(v)?));
            }
            for rows in htable.iter_mut() {
                for row in rows.iter_mut() {
                    row.sort_by_key(|(c, _)| *c);
                }
            }
            let unit: Vec<Rational> = h.unit.iter().map(|v| rational(v)).collect::<Result<_>>()?;
            let rho: Vec<Vec<Vec<Rational>>> = h
                .rho
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|v| rational(v)).collect())
                        .collect()
                })
                .collect::<Result<_>>()?;
            let raw =
                GeneralizedHAction::new(h.hbasis.clone(), htable, unit, rho, None)?;
            Some(validate_haction(&algebra, &raw)?)
        }
    };

    Ok(LoadedAlgebra {
        algebra,
        grading,
        action,
        hash: content_hash(doc),
    })
}

/// Parse and validate in one step.
pub fn load_document_text(text: &str) -> Result<LoadedAlgebra> {
    load_document(&parse_document(text)?)
}

/// Serialize in-memory structures back to a document.
pub fn document_from_parts(
    a: &Algebra,
    grading: Option<&Grading>,
    action: Option<&GeneralizedHAction>,
) -> AlgebraDocument {
    let mut table = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, v) in a.basis_product(i, j) {
                table.push((i, j, *k, format_rational(v)));
            }
        }
    }
    AlgebraDocument {
        format: FORMAT_VERSION,
        name: a.name().to_string(),
        dim: a.dim(),
        basis: a.basis().to_vec(),
        table,
        grading: grading.map(|g| GradingDocument {
            labels: g.labels().to_vec(),
            degree: (0..a.dim()).map(|b| g.degree_of(b)).collect(),
        }),
        haction: action.map(|act| {
            let s = a.dim();
            let hdim = act.hdim();
            let mut htable = Vec::new();
            for i in 0..hdim {
                for j in 0..hdim {
                    for (k, v) in act.htable_entry(i, j) {
                        htable.push((i, j, *k, format_rational(v)));
                    }
                }
            }
            HActionDocument {
                hdim,
                hbasis: act.hbasis().to_vec(),
                unit: act.unit().iter().map(format_rational).collect(),
                htable,
                rho: (0..hdim)
                    .map(|h| {
                        (0..s)
                            .map(|r| {
                                (0..s).map(|c| format_rational(&act.rho(h)[r][c])).collect()
                            })
                            .collect()
                    })
                    .collect(),
            }
        }),
    }
}

/// Canonical serialization: compact JSON with fields in declaration order.
pub fn canonical_json(doc: &AlgebraDocument) -> String {
    serde_json::to_string(doc).expect("document serializes")
}

/// Hex SHA-256 of the canonical serialization; names the input in reports.
pub fn content_hash(doc: &AlgebraDocument) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_json(doc).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;

    fn ut2_doc_text() -> String {
        r#"{
            "format": 1,
            "name": "ut2",
            "dim": 3,
            "basis": ["e11", "e22", "e12"],
            "table": [
                [0, 0, 0, "1"],
                [1, 1, 1, "1"],
                [0, 2, 2, "1"],
                [2, 1, 2, "1"]
            ],
            "grading": {"labels": ["0", "1"], "degree": [0, 0, 1]}
        }"#
        .to_string()
    }

    #[test]
    fn loads_a_graded_document() {
        let loaded = load_document_text(&ut2_doc_text()).unwrap();
        assert_eq!(loaded.algebra.dim(), 3);
        assert_eq!(loaded.algebra.name(), "ut2");
        let g = loaded.grading.unwrap();
        assert_eq!(g.support().len(), 2);
        assert!(loaded.action.is_none());
        assert_eq!(loaded.hash.len(), 64);
    }

    #[test]
    fn round_trips_through_serialization() {
        let a = ut2();
        let g = ut2_grading();
        let doc = document_from_parts(&a, Some(&g), None);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back = parse_document(&text).unwrap();
        assert_eq!(doc, back);
        let loaded = load_document(&back).unwrap();
        assert_eq!(loaded.algebra.dim(), 3);
        assert_eq!(
            loaded.algebra.basis_product(0, 2),
            a.basis_product(0, 2)
        );
    }

    #[test]
    fn round_trips_an_action_document() {
        let a = m2();
        let act = m2_transpose_action();
        let doc = document_from_parts(&a, None, Some(&act));
        let loaded = load_document(&doc).unwrap();
        let reloaded = loaded.action.unwrap();
        assert_eq!(reloaded.hdim(), 2);
        // The transpose representation survives the trip.
        assert_eq!(reloaded.rho(1)[1][2], crate::exactlin::rat(1, 1));
        let doc2 = document_from_parts(&a, None, Some(&reloaded));
        assert_eq!(doc, doc2);
    }

    #[test]
    fn rejects_bad_documents() {
        // Wrong format version.
        let text = ut2_doc_text().replace("\"format\": 1", "\"format\": 2");
        assert!(matches!(
            parse_document(&text),
            Err(Error::Document { .. })
        ));
        // Dimension disagrees with the basis list.
        let text = ut2_doc_text().replace("\"dim\": 3", "\"dim\": 4");
        assert!(load_document_text(&text).is_err());
        // Unparseable rational.
        let text = ut2_doc_text().replace("[0, 0, 0, \"1\"]", "[0, 0, 0, \"one\"]");
        assert!(load_document_text(&text).is_err());
        // Index out of bounds.
        let text = ut2_doc_text().replace("[0, 0, 0, \"1\"]", "[0, 0, 7, \"1\"]");
        assert!(load_document_text(&text).is_err());
        // Malformed JSON.
        assert!(parse_document("{").is_err());
    }

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let doc = parse_document(&ut2_doc_text()).unwrap();
        let h1 = content_hash(&doc);
        let h2 = content_hash(&doc);
        assert_eq!(h1, h2);
        let mut other = doc.clone();
        other.name = "renamed".to_string();
        assert_ne!(h1, content_hash(&other));
    }
}
