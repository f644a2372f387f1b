//! Stage artifact schemas and their pinned JSON encoding.
//!
//! Every pipeline stage persists its result as JSON with floats written
//! at 17 significant digits, enough for an exact f64 round-trip, so the
//! same inputs always produce byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cluster::{ClusterModel, DifficultyLabels};
use crate::error::Result;
use crate::fuzzy::{Level, LevelAssignment, MembershipTriple};
use crate::lsi::TruncatedModel;
use crate::mat::Mat;
use crate::matrix::{TermDocumentMatrix, WindowId};
use crate::similarity::ConceptMap;
use crate::text::Token;
use crate::weighting::WeightMatrix;

/// JSON formatter that writes every float with 17 significant digits.
struct PinnedFloats;

impl serde_json::ser::Formatter for PinnedFloats {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value with pinned float formatting, trailing newline
/// included.
pub fn to_pinned_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PinnedFloats);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Parses an artifact back from its JSON text.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Tokenized, tagged source documents — the text-pipeline stage output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokensArtifact {
    pub docs: Vec<TokenizedDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub id: String,
    pub tokens: Vec<Token>,
}

/// Sparse term-document counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixArtifact {
    pub terms: Vec<String>,
    pub docs: Vec<WindowId>,
    pub entries: Vec<(usize, usize, u64)>,
}

impl MatrixArtifact {
    pub fn from_matrix(matrix: &TermDocumentMatrix) -> Self {
        Self {
            terms: matrix.index().terms().to_vec(),
            docs: matrix.doc_ids().to_vec(),
            entries: matrix.entries().collect(),
        }
    }

    pub fn into_matrix(self) -> Result<TermDocumentMatrix> {
        TermDocumentMatrix::from_parts(self.terms, self.docs, self.entries)
    }
}

/// Sparse tf-idf weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsArtifact {
    pub terms: Vec<String>,
    pub docs: Vec<WindowId>,
    pub entries: Vec<(usize, usize, f64)>,
}

impl WeightsArtifact {
    pub fn from_weights(weights: &WeightMatrix) -> Self {
        Self {
            terms: weights.index().terms().to_vec(),
            docs: weights.doc_ids().to_vec(),
            entries: weights.entries().collect(),
        }
    }

    pub fn into_weights(self) -> Result<WeightMatrix> {
        WeightMatrix::from_parts(self.terms, self.docs, self.entries)
    }
}

/// Rank-k latent model (row-major factor matrices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatentArtifact {
    pub k: usize,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<f64>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<f64>>,
}

impl LatentArtifact {
    pub fn from_model(model: &TruncatedModel) -> Self {
        Self {
            k: model.k,
            s: model.s_k.clone(),
            u: model.u_k.to_rows(),
            v: model.v_k.to_rows(),
        }
    }

    pub fn into_model(self) -> Result<TruncatedModel> {
        let u_k = Mat::from_rows(&self.u)?;
        let v_k = Mat::from_rows(&self.v)?;
        let doc_vectors = (0..v_k.rows())
            .map(|d| (0..self.k).map(|j| v_k[(d, j)] * self.s[j]).collect())
            .collect();
        Ok(TruncatedModel {
            k: self.k,
            u_k,
            s_k: self.s,
            v_k,
            doc_vectors,
        })
    }
}

/// Concept vocabulary with weighted relations, rows sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptMapArtifact {
    pub concepts: Vec<String>,
    pub relations: Vec<(String, String, f64)>,
}

impl ConceptMapArtifact {
    pub fn from_map(map: &ConceptMap) -> Self {
        Self {
            concepts: map.concepts.iter().cloned().collect(),
            relations: map
                .relations
                .iter()
                .map(|((s, t), &w)| (s.clone(), t.clone(), w))
                .collect(),
        }
    }

    pub fn into_map(self) -> ConceptMap {
        ConceptMap {
            concepts: self.concepts.into_iter().collect(),
            relations: self
                .relations
                .into_iter()
                .map(|(s, t, w)| ((s, t), w))
                .collect(),
        }
    }
}

/// Clustering result with difficulty labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClustersArtifact {
    pub k: usize,
    pub seed: u64,
    pub objective: f64,
    pub centroids: Vec<Vec<f64>>,
    pub assignments: Vec<usize>,
    pub labels: BTreeMap<usize, String>,
}

impl ClustersArtifact {
    pub fn from_model(model: &ClusterModel, labels: &DifficultyLabels) -> Self {
        Self {
            k: model.k,
            seed: model.seed,
            objective: model.objective,
            centroids: model.centroids.clone(),
            assignments: model.assignments.clone(),
            labels: labels.clone(),
        }
    }
}

/// Fuzzy classification of one learner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationArtifact {
    pub similarity: f64,
    pub memberships: MembershipTriple,
    pub level: Level,
    pub support: f64,
}

impl ClassificationArtifact {
    pub fn new(similarity: f64, assignment: &LevelAssignment) -> Self {
        Self {
            similarity,
            memberships: assignment.memberships,
            level: assignment.level,
            support: assignment.support,
        }
    }
}
