//! TF-IDF weighting of the term-document matrix and concept filtering.
//!
//! Term frequency is the count of a term divided by the total counted
//! tokens of its document. Inverse document frequency is the natural log
//! of the corpus size over the document frequency, optionally smoothed by
//! adding one to the denominator. Weights are tf * idf; only strictly
//! positive weights are stored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{TermDocumentMatrix, TermIndex, WindowId};

/// How the idf denominator treats document frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdfSmoothing {
    /// ln(|D| / df); undefined for df = 0 which cannot occur for indexed terms.
    #[default]
    None,
    /// ln(|D| / (1 + df)), clamped at zero so weights stay non-negative.
    AddOneDocuments,
}

impl IdfSmoothing {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdfSmoothing::None => "none",
            IdfSmoothing::AddOneDocuments => "add_one_documents",
        }
    }
}

impl std::fmt::Display for IdfSmoothing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for IdfSmoothing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(IdfSmoothing::None),
            "add_one_documents" => Ok(IdfSmoothing::AddOneDocuments),
            other => Err(format!("unknown idf smoothing `{other}`")),
        }
    }
}

/// Sparse tf-idf weights over the same term/document axes as the source
/// matrix. Entries are strictly positive; anything else is implicitly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    index: TermIndex,
    doc_ids: Vec<WindowId>,
    weights: BTreeMap<(usize, usize), f64>,
}

impl WeightMatrix {
    pub fn index(&self) -> &TermIndex {
        &self.index
    }

    pub fn doc_ids(&self) -> &[WindowId] {
        &self.doc_ids
    }

    pub fn term_count(&self) -> usize {
        self.index.len()
    }

    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    /// Weight of term `t` in document `d`; zero for absent entries.
    pub fn weight(&self, term: usize, doc: usize) -> f64 {
        self.weights.get(&(term, doc)).copied().unwrap_or(0.0)
    }

    /// Stored (strictly positive) entries in (term, doc) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.weights.iter().map(|(&(t, d), &w)| (t, d, w))
    }

    /// Largest weight of term `t` across all documents.
    pub fn max_weight(&self, term: usize) -> f64 {
        self.weights
            .range((term, 0)..=(term, usize::MAX))
            .map(|(_, &w)| w)
            .fold(0.0, f64::max)
    }

    /// Documents in which term `t` has positive weight, ascending.
    pub fn support(&self, term: usize) -> Vec<usize> {
        self.weights
            .range((term, 0)..=(term, usize::MAX))
            .map(|(&(_, d), _)| d)
            .collect()
    }

    /// Dense row-major copy, terms as rows and documents as columns.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut rows = vec![vec![0.0; self.doc_count()]; self.term_count()];
        for (t, d, w) in self.entries() {
            rows[t][d] = w;
        }
        rows
    }

    /// Rebuilds a weight matrix from its serialized parts. Entries must be
    /// finite; non-positive entries are dropped.
    pub fn from_parts(
        terms: Vec<String>,
        doc_ids: Vec<WindowId>,
        entries: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let index = TermIndex::from_terms(terms);
        let mut weights = BTreeMap::new();
        for (t, d, w) in entries {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if t >= index.len() {
                return Err(Error::ShapeMismatch {
                    expected: index.len(),
                    found: t + 1,
                });
            }
            if d >= doc_ids.len() {
                return Err(Error::ShapeMismatch {
                    expected: doc_ids.len(),
                    found: d + 1,
                });
            }
            if w <= 0.0 {
                continue;
            }
            weights.insert((t, d), w);
        }
        Ok(Self {
            index,
            doc_ids,
            weights,
        })
    }
}

/// Relative frequency of a term within one document.
pub fn term_frequency(count: u64, doc_total: u64) -> Result<f64> {
    if doc_total == 0 {
        return Err(Error::EmptyDocument {
            doc: "unknown".to_string(),
        });
    }
    Ok(count as f64 / doc_total as f64)
}

/// Corpus-level rarity of a term.
pub fn inverse_document_frequency(
    corpus_size: usize,
    document_frequency: usize,
    smoothing: IdfSmoothing,
) -> Result<f64> {
    if document_frequency == 0 || document_frequency > corpus_size {
        return Err(Error::OutOfRange {
            value: document_frequency as f64,
        });
    }
    let idf = match smoothing {
        IdfSmoothing::None => (corpus_size as f64 / document_frequency as f64).ln(),
        IdfSmoothing::AddOneDocuments => {
            let raw = (corpus_size as f64 / (1 + document_frequency) as f64).ln();
            raw.max(0.0)
        }
    };
    Ok(idf)
}

/// Weights every stored count by tf * idf.
///
/// Documents with zero counted tokens fail with `EmptyDocument`; entries
/// whose idf is zero (terms present everywhere) drop out of the result.
pub fn tf_idf(matrix: &TermDocumentMatrix, smoothing: IdfSmoothing) -> Result<WeightMatrix> {
    let n_docs = matrix.doc_count();
    let mut doc_totals = vec![0u64; n_docs];
    let mut doc_freq = vec![0usize; matrix.term_count()];
    for (t, d, c) in matrix.entries() {
        doc_totals[d] += c;
        doc_freq[t] += 1;
    }
    for (d, &total) in doc_totals.iter().enumerate() {
        if total == 0 {
            return Err(Error::EmptyDocument {
                doc: matrix.doc_ids()[d].to_string(),
            });
        }
    }

    let mut idf = vec![0.0; matrix.term_count()];
    for (t, &df) in doc_freq.iter().enumerate() {
        idf[t] = inverse_document_frequency(n_docs, df, smoothing)?;
    }

    let mut weights = BTreeMap::new();
    for (t, d, c) in matrix.entries() {
        let tf = term_frequency(c, doc_totals[d])?;
        let w = tf * idf[t];
        if w > 0.0 {
            weights.insert((t, d), w);
        }
    }

    Ok(WeightMatrix {
        index: matrix.index().clone(),
        doc_ids: matrix.doc_ids().to_vec(),
        weights,
    })
}

/// Term ordinals whose best weight clears the threshold, optionally capped
/// to the `top_n` strongest terms.
///
/// Selection keeps terms with max weight strictly above `threshold`. With
/// `top_n`, terms rank by descending max weight, ties broken by ascending
/// term; the returned ordinals are always sorted ascending.
pub fn filter_concepts(
    weights: &WeightMatrix,
    threshold: f64,
    top_n: Option<usize>,
) -> Result<Vec<usize>> {
    if !threshold.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut kept: Vec<usize> = (0..weights.term_count())
        .filter(|&t| weights.max_weight(t) > threshold)
        .collect();

    if let Some(n) = top_n {
        kept.sort_by(|&a, &b| {
            weights
                .max_weight(b)
                .partial_cmp(&weights.max_weight(a))
                .expect("weights are finite")
                .then_with(|| weights.index().term(a).cmp(&weights.index().term(b)))
        });
        kept.truncate(n);
        kept.sort_unstable();
    }

    Ok(kept)
}
