//! Window segmentation and the raw term-document matrix.
//!
//! Token streams are split into fixed-size word windows treated as
//! pseudo-documents. Counting the concept-bearing tokens of each window
//! yields a sparse term-document matrix over a lexicographically sorted
//! term index.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::text::{PosTag, Token};

/// Identifier of a word window: source document id plus window ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowId {
    pub source: String,
    pub ordinal: usize,
}

impl fmt::Display for WindowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.source, self.ordinal)
    }
}

impl serde::Serialize for WindowId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for WindowId {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = <String as serde::Deserialize>::deserialize(deserializer)?;
        let (source, ordinal) = raw
            .rsplit_once('#')
            .ok_or_else(|| serde::de::Error::custom(format!("window id `{raw}` lacks `#`")))?;
        let ordinal = ordinal
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("bad window ordinal in `{raw}`")))?;
        Ok(WindowId {
            source: source.to_string(),
            ordinal,
        })
    }
}

/// A fixed-size consecutive run of tokens treated as one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoDocument {
    pub id: WindowId,
    pub tokens: Vec<Token>,
}

/// Unique terms in ascending lexicographic order with ordinal lookup.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermIndex {
    terms: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl TermIndex {
    /// Builds an index from any term collection; duplicates collapse and the
    /// result is sorted ascending.
    pub fn from_terms(terms: impl IntoIterator<Item = String>) -> Self {
        let sorted: BTreeSet<String> = terms.into_iter().collect();
        let terms: Vec<String> = sorted.into_iter().collect();
        let lookup = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Self { terms, lookup }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn ordinal(&self, term: &str) -> Option<usize> {
        self.lookup.get(term).copied()
    }

    pub fn term(&self, ordinal: usize) -> Option<&str> {
        self.terms.get(ordinal).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> {
        self.terms.iter().enumerate().map(|(i, t)| (i, t.as_str()))
    }
}

/// Sparse term-document counts: rows are terms, columns are pseudo-documents.
///
/// Entries iterate in (term ordinal, doc ordinal) order, so serialized
/// output is identical across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocumentMatrix {
    index: TermIndex,
    doc_ids: Vec<WindowId>,
    counts: BTreeMap<(usize, usize), u64>,
}

impl TermDocumentMatrix {
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

    /// Count of term `t` in document `d`; zero for absent entries.
    pub fn count(&self, term: usize, doc: usize) -> u64 {
        self.counts.get(&(term, doc)).copied().unwrap_or(0)
    }

    /// Stored entries in (term, doc) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().map(|(&(t, d), &c)| (t, d, c))
    }

    /// Total counted tokens in document `d`.
    pub fn doc_total(&self, doc: usize) -> u64 {
        self.counts
            .range((0, 0)..(self.index.len(), usize::MAX))
            .filter(|(&(_, d), _)| d == doc)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Number of documents containing term `t`.
    pub fn document_frequency(&self, term: usize) -> usize {
        self.counts.range((term, 0)..=(term, usize::MAX)).count()
    }

    /// Sum of all stored counts.
    pub fn total_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Rebuilds a matrix from its serialized parts.
    pub fn from_parts(
        terms: Vec<String>,
        doc_ids: Vec<WindowId>,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let index = TermIndex::from_terms(terms);
        let mut counts = BTreeMap::new();
        for (t, d, c) in entries {
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
            if c == 0 {
                continue;
            }
            counts.insert((t, d), c);
        }
        Ok(Self {
            index,
            doc_ids,
            counts,
        })
    }
}

/// Splits a token stream into consecutive non-overlapping windows of
/// `window_size` tokens. The last window per source may be shorter; an empty
/// stream yields no windows.
pub fn segment(source: &str, tokens: &[Token], window_size: usize) -> Vec<PseudoDocument> {
    assert!(window_size >= 1, "window_size must be at least 1");
    tokens
        .chunks(window_size)
        .enumerate()
        .map(|(ordinal, chunk)| PseudoDocument {
            id: WindowId {
                source: source.to_string(),
                ordinal,
            },
            tokens: chunk.to_vec(),
        })
        .collect()
}

/// Counts occurrences of concept-bearing terms per pseudo-document.
///
/// Only tokens whose tag is in `concept_pos` are counted. Fails with
/// `EmptyVocabulary` when no token survives the filter.
pub fn build_matrix(
    docs: &[PseudoDocument],
    concept_pos: &BTreeSet<PosTag>,
) -> Result<TermDocumentMatrix> {
    let mut vocabulary: BTreeSet<String> = BTreeSet::new();
    for doc in docs {
        for token in &doc.tokens {
            if concept_pos.contains(&token.pos) {
                vocabulary.insert(token.surface.clone());
            }
        }
    }
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }

    let index = TermIndex::from_terms(vocabulary);
    let doc_ids: Vec<WindowId> = docs.iter().map(|d| d.id.clone()).collect();

    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (d, doc) in docs.iter().enumerate() {
        for token in &doc.tokens {
            if concept_pos.contains(&token.pos) {
                let t = index
                    .ordinal(&token.surface)
                    .expect("vocabulary covers every counted token");
                *counts.entry((t, d)).or_insert(0) += 1;
            }
        }
    }

    Ok(TermDocumentMatrix {
        index,
        doc_ids,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noun(surface: &str, position: usize) -> Token {
        Token {
            surface: surface.to_string(),
            pos: PosTag::Noun,
            position,
        }
    }

    fn tokens(words: &[&str]) -> Vec<Token> {
        words.iter().enumerate().map(|(i, w)| noun(w, i)).collect()
    }

    fn nouns_only() -> BTreeSet<PosTag> {
        BTreeSet::from([PosTag::Noun])
    }

    #[test]
    fn segment_23_tokens_window_8() {
        let words: Vec<String> = (0..23).map(|i| format!("w{i}")).collect();
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let windows = segment("doc", &tokens(&refs), 8);
        assert_eq!(windows.len(), 3);
        let sizes: Vec<usize> = windows.iter().map(|w| w.tokens.len()).collect();
        assert_eq!(sizes, vec![8, 8, 7]);

        // concatenation reproduces the input stream
        let rebuilt: Vec<Token> = windows.into_iter().flat_map(|w| w.tokens).collect();
        assert_eq!(rebuilt, tokens(&refs));
    }

    #[test]
    fn segment_exact_and_empty() {
        let words: Vec<String> = (0..8).map(|i| format!("w{i}")).collect();
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let windows = segment("doc", &tokens(&refs), 8);
        assert_eq!(windows.len(), 1);
        assert_eq!(windows[0].tokens.len(), 8);
        assert_eq!(windows[0].id.ordinal, 0);

        assert!(segment("doc", &[], 8).is_empty());
    }

    #[test]
    fn build_matrix_counts_by_hand() {
        let docs = segment("d", &tokens(&["data", "data", "mining"]), 8);
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        assert_eq!(matrix.index().terms(), &["data", "mining"]);
        assert_eq!(matrix.count(0, 0), 2);
        assert_eq!(matrix.count(1, 0), 1);
        assert_eq!(matrix.doc_total(0), 3);
    }

    #[test]
    fn build_matrix_single_term() {
        let docs = segment("d", &tokens(&["x"]), 8);
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        assert_eq!(matrix.term_count(), 1);
        assert_eq!(matrix.doc_count(), 1);
        assert_eq!(matrix.count(0, 0), 1);
    }

    #[test]
    fn build_matrix_rejects_filtered_out_corpus() {
        let verb = Token {
            surface: "run".to_string(),
            pos: PosTag::Verb,
            position: 0,
        };
        let docs = segment("d", &[verb], 8);
        let err = build_matrix(&docs, &nouns_only()).unwrap_err();
        assert!(matches!(err, Error::EmptyVocabulary));
    }

    #[test]
    fn mass_conservation() {
        let docs = [
            segment("a", &tokens(&["data", "mining", "data"]), 2),
            segment("b", &tokens(&["fuzzy", "logic"]), 2),
        ]
        .concat();
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        assert_eq!(matrix.total_count(), 5);
    }

    #[test]
    fn index_is_sorted_and_invertible() {
        let docs = segment("d", &tokens(&["zeta", "alpha", "mu", "alpha"]), 8);
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        let terms = matrix.index().terms();
        assert!(terms.windows(2).all(|w| w[0] < w[1]));
        for (i, t) in matrix.index().iter() {
            assert_eq!(matrix.index().ordinal(t), Some(i));
        }
    }

    #[test]
    fn mixed_tags_only_concept_pos_counted() {
        let toks = vec![
            Token {
                surface: "learning".to_string(),
                pos: PosTag::Noun,
                position: 0,
            },
            Token {
                surface: "analyze".to_string(),
                pos: PosTag::Verb,
                position: 1,
            },
            Token {
                surface: "system".to_string(),
                pos: PosTag::Noun,
                position: 2,
            },
        ];
        let docs = segment("d", &toks, 8);
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        assert_eq!(matrix.index().terms(), &["learning", "system"]);
        assert_eq!(matrix.doc_total(0), 2);

        let both = BTreeSet::from([PosTag::Noun, PosTag::Verb]);
        let matrix = build_matrix(&docs, &both).unwrap();
        assert_eq!(matrix.term_count(), 3);
    }

    #[test]
    fn entries_iterate_in_term_doc_order() {
        let docs = [
            segment("a", &tokens(&["beta", "alpha"]), 8),
            segment("b", &tokens(&["alpha", "gamma"]), 8),
        ]
        .concat();
        let matrix = build_matrix(&docs, &nouns_only()).unwrap();
        let entries: Vec<(usize, usize, u64)> = matrix.entries().collect();
        let mut sorted = entries.clone();
        sorted.sort();
        assert_eq!(entries, sorted);
    }

    #[test]
    fn window_id_display() {
        let id = WindowId {
            source: "doc1".to_string(),
            ordinal: 2,
        };
        assert_eq!(id.to_string(), "doc1#2");
    }
}
