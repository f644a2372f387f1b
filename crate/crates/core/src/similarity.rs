//! Jaccard similarity over concept sets and construction of concept maps.
//!
//! Similarity is the share of concepts two sets have in common:
//! |A∩B| / |A∪B|, equivalently n11 / (n11 + n10 + n01) over presence
//! contingency counts. Concept maps carry the retained vocabulary plus
//! pairwise relations weighted by document co-occurrence.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::weighting::WeightMatrix;

/// Jaccard score with its presence/absence contingency counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityScore {
    /// n11 / (n11 + n10 + n01), in [0,1].
    pub value: f64,
    /// Positions/elements present in both.
    pub n11: usize,
    /// Present in the first only.
    pub n10: usize,
    /// Present in the second only.
    pub n01: usize,
}

/// Concept vocabulary plus weighted co-occurrence relations.
///
/// Relation keys are ordered pairs with the lexicographically smaller
/// concept first; weights lie in (0,1] (zero-weight pairs are omitted).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConceptMap {
    pub concepts: BTreeSet<String>,
    pub relations: BTreeMap<(String, String), f64>,
}

impl ConceptMap {
    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Relation weight for a pair in either order; zero when absent.
    pub fn relation(&self, a: &str, b: &str) -> f64 {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.relations
            .get(&(key.0.to_string(), key.1.to_string()))
            .copied()
            .unwrap_or(0.0)
    }
}

/// Jaccard similarity of two sets.
pub fn jaccard_sets(a: &BTreeSet<String>, b: &BTreeSet<String>) -> Result<SimilarityScore> {
    let n11 = a.intersection(b).count();
    let n10 = a.len() - n11;
    let n01 = b.len() - n11;
    score_from_counts(n11, n10, n01)
}

/// Jaccard similarity of two equal-length presence vectors.
pub fn jaccard_binary_vectors(a: &[bool], b: &[bool]) -> Result<SimilarityScore> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut n11 = 0;
    let mut n10 = 0;
    let mut n01 = 0;
    for (&x, &y) in a.iter().zip(b) {
        match (x, y) {
            (true, true) => n11 += 1,
            (true, false) => n10 += 1,
            (false, true) => n01 += 1,
            (false, false) => {}
        }
    }
    score_from_counts(n11, n10, n01)
}

fn score_from_counts(n11: usize, n10: usize, n01: usize) -> Result<SimilarityScore> {
    let union = n11 + n10 + n01;
    if union == 0 {
        return Err(Error::UndefinedSimilarity);
    }
    Ok(SimilarityScore {
        value: n11 as f64 / union as f64,
        n11,
        n10,
        n01,
    })
}

/// Builds a concept map over the retained terms of a weight matrix.
///
/// Concepts are the retained terms; each pair is related with the Jaccard
/// similarity of the document sets where the two terms carry positive
/// weight. Pairs with no shared document get no edge. An empty retained
/// set yields an empty map.
pub fn build_concept_map(retained: &[usize], weights: &WeightMatrix) -> ConceptMap {
    let mut map = ConceptMap::default();
    let mut supports: Vec<(String, BTreeSet<usize>)> = Vec::with_capacity(retained.len());
    for &t in retained {
        let term = weights
            .index()
            .term(t)
            .expect("retained ordinals index the weight vocabulary")
            .to_string();
        let docs: BTreeSet<usize> = weights.support(t).into_iter().collect();
        map.concepts.insert(term.clone());
        supports.push((term, docs));
    }

    for i in 0..supports.len() {
        for j in (i + 1)..supports.len() {
            let (s, docs_s) = &supports[i];
            let (t, docs_t) = &supports[j];
            let n11 = docs_s.intersection(docs_t).count();
            if n11 == 0 {
                continue;
            }
            let union = docs_s.union(docs_t).count();
            let weight = n11 as f64 / union as f64;
            let key = if s <= t {
                (s.clone(), t.clone())
            } else {
                (t.clone(), s.clone())
            };
            map.relations.insert(key, weight);
        }
    }
    map
}

/// Jaccard similarity of two concept maps over their concept sets.
pub fn map_similarity(learner: &ConceptMap, reference: &ConceptMap) -> Result<SimilarityScore> {
    jaccard_sets(&learner.concepts, &reference.concepts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_matrix, segment};
    use crate::text::{PosTag, Token};
    use crate::weighting::{filter_concepts, tf_idf, IdfSmoothing};

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identical_sets_score_one() {
        let a = set(&["x", "y"]);
        let score = jaccard_sets(&a, &a).unwrap();
        assert_eq!(score.value, 1.0);
        assert_eq!((score.n11, score.n10, score.n01), (2, 0, 0));
    }

    #[test]
    fn disjoint_sets_score_zero() {
        let score = jaccard_sets(&set(&["a"]), &set(&["b"])).unwrap();
        assert_eq!(score.value, 0.0);
        assert_eq!((score.n11, score.n10, score.n01), (0, 1, 1));
    }

    #[test]
    fn overlapping_sets_by_hand() {
        // {a,b,c} vs {b,c,d}: intersection 2, union 4
        let score = jaccard_sets(&set(&["a", "b", "c"]), &set(&["b", "c", "d"])).unwrap();
        assert_eq!(score.value, 0.5);
        assert_eq!((score.n11, score.n10, score.n01), (2, 1, 1));
    }

    #[test]
    fn empty_vs_empty_undefined() {
        let err = jaccard_sets(&set(&[]), &set(&[])).unwrap_err();
        assert!(matches!(err, Error::UndefinedSimilarity));
    }

    #[test]
    fn empty_vs_nonempty_is_zero() {
        let score = jaccard_sets(&set(&[]), &set(&["a"])).unwrap();
        assert_eq!(score.value, 0.0);
    }

    #[test]
    fn binary_vectors_by_hand() {
        let score =
            jaccard_binary_vectors(&[true, true, false, true], &[false, true, true, true]).unwrap();
        assert_eq!((score.n11, score.n10, score.n01), (2, 1, 1));
        assert_eq!(score.value, 0.5);

        let same = jaccard_binary_vectors(&[true, true, false], &[true, true, false]).unwrap();
        assert_eq!(same.value, 1.0);

        let opposite = jaccard_binary_vectors(&[true, false], &[false, true]).unwrap();
        assert_eq!(opposite.value, 0.0);
    }

    #[test]
    fn binary_vectors_reject_unequal_lengths() {
        let err = jaccard_binary_vectors(&[true], &[true, false]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn all_false_vectors_undefined() {
        let err = jaccard_binary_vectors(&[false, false], &[false, false]).unwrap_err();
        assert!(matches!(err, Error::UndefinedSimilarity));
    }

    #[test]
    fn forms_agree_on_support_sets() {
        let universe = ["a", "b", "c", "d", "e"];
        let a = [true, false, true, true, false];
        let b = [false, false, true, true, true];
        let set_a: BTreeSet<String> = universe
            .iter()
            .zip(a)
            .filter(|(_, p)| *p)
            .map(|(s, _)| s.to_string())
            .collect();
        let set_b: BTreeSet<String> = universe
            .iter()
            .zip(b)
            .filter(|(_, p)| *p)
            .map(|(s, _)| s.to_string())
            .collect();
        let from_vectors = jaccard_binary_vectors(&a, &b).unwrap();
        let from_sets = jaccard_sets(&set_a, &set_b).unwrap();
        assert_eq!(from_vectors, from_sets);
    }

    fn weights_from(docs: &[&[&str]]) -> WeightMatrix {
        let windows: Vec<_> = docs
            .iter()
            .enumerate()
            .flat_map(|(i, words)| {
                let tokens: Vec<Token> = words
                    .iter()
                    .enumerate()
                    .map(|(p, w)| Token {
                        surface: w.to_string(),
                        pos: PosTag::Noun,
                        position: p,
                    })
                    .collect();
                segment(&format!("d{i}"), &tokens, 64)
            })
            .collect();
        let matrix = build_matrix(&windows, &BTreeSet::from([PosTag::Noun])).unwrap();
        tf_idf(&matrix, IdfSmoothing::None).unwrap()
    }

    #[test]
    fn concept_map_co_occurrence_weights() {
        // "ontology" in docs {0,1}, "mining" in docs {1,2}: edge 1/3;
        // "alpha" only in doc 3: no shared doc with either
        let weights = weights_from(&[
            &["ontology", "filler1"],
            &["ontology", "mining"],
            &["mining", "filler2"],
            &["alpha"],
        ]);
        let retained = filter_concepts(&weights, 0.0, None).unwrap();
        let map = build_concept_map(&retained, &weights);

        assert!(map.concepts.contains("ontology"));
        assert!(map.concepts.contains("mining"));
        assert!((map.relation("ontology", "mining") - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            map.relation("mining", "ontology"),
            map.relation("ontology", "mining")
        );
        assert_eq!(map.relation("alpha", "mining"), 0.0);
        assert!(!map
            .relations
            .contains_key(&("alpha".to_string(), "mining".to_string())));
    }

    #[test]
    fn concept_map_identical_supports_weight_one() {
        // "fuzzy" and "logic" always together, apart from everything else
        let weights = weights_from(&[
            &["fuzzy", "logic"],
            &["fuzzy", "logic"],
            &["noise1"],
            &["noise2"],
        ]);
        let retained = filter_concepts(&weights, 0.0, None).unwrap();
        let map = build_concept_map(&retained, &weights);
        assert_eq!(map.relation("fuzzy", "logic"), 1.0);
    }

    #[test]
    fn concept_map_empty_retained() {
        let weights = weights_from(&[&["a", "b"], &["c"]]);
        let map = build_concept_map(&[], &weights);
        assert!(map.is_empty());
        assert!(map.relations.is_empty());
    }

    #[test]
    fn concept_map_invariants() {
        let weights = weights_from(&[
            &["data", "mining", "fuzzy"],
            &["data", "ontology"],
            &["mining", "ontology", "logic"],
        ]);
        let retained = filter_concepts(&weights, 0.0, None).unwrap();
        let map = build_concept_map(&retained, &weights);
        for ((s, t), &w) in &map.relations {
            assert!(map.concepts.contains(s) && map.concepts.contains(t));
            assert!(s < t);
            assert!(w > 0.0 && w <= 1.0);
        }
    }

    #[test]
    fn map_similarity_concept_sets_only() {
        let learner = ConceptMap {
            concepts: set(&["a", "b", "c", "d"]),
            relations: BTreeMap::new(),
        };
        let mut reference = ConceptMap {
            concepts: set(&["a", "b", "c", "e", "f"]),
            relations: BTreeMap::new(),
        };
        // relations must not enter the score
        reference
            .relations
            .insert(("a".to_string(), "b".to_string()), 1.0);
        let score = map_similarity(&learner, &reference).unwrap();
        assert_eq!(score.value, 0.5);

        let identical = map_similarity(&learner, &learner).unwrap();
        assert_eq!(identical.value, 1.0);
    }

    #[test]
    fn map_similarity_subset_case() {
        let learner = ConceptMap {
            concepts: set(&["a", "b", "c"]),
            relations: BTreeMap::new(),
        };
        let reference = ConceptMap {
            concepts: set(&["a", "b", "c", "d"]),
            relations: BTreeMap::new(),
        };
        let score = map_similarity(&learner, &reference).unwrap();
        assert_eq!(score.value, 0.75);
    }

    #[test]
    fn symmetry_smoke() {
        let a = set(&["p", "q", "r"]);
        let b = set(&["q", "s"]);
        assert_eq!(
            jaccard_sets(&a, &b).unwrap().value,
            jaccard_sets(&b, &a).unwrap().value
        );
    }

    #[test]
    fn growing_shared_element_never_decreases() {
        let mut a = set(&["x", "y"]);
        let mut b = set(&["y", "z"]);
        let before = jaccard_sets(&a, &b).unwrap().value;
        a.insert("shared".to_string());
        b.insert("shared".to_string());
        let after = jaccard_sets(&a, &b).unwrap().value;
        assert!(after >= before);
    }
}
