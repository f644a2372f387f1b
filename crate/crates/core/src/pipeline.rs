//! End-to-end analysis: wires the stages together for a corpus run and for
//! classifying a single learner document against a reference map.

use std::collections::BTreeSet;

use crate::cluster::{kmeans, label_difficulty, ClusterModel, DifficultyLabels, MAX_ITER_DEFAULT};
use crate::error::{Error, Result};
use crate::fuzzy::{classify, FuzzyConfig, LevelAssignment};
use crate::lsi::{svd, truncate, TruncatedModel};
use crate::matrix::{build_matrix, segment, PseudoDocument, TermDocumentMatrix};
use crate::similarity::{build_concept_map, jaccard_sets, map_similarity, ConceptMap};
use crate::text::{preprocess, PosLexicon, PosTag, RawDocument, StopWordList};
use crate::weighting::{filter_concepts, tf_idf, IdfSmoothing, WeightMatrix};

/// Tunable knobs shared by corpus runs and learner classification.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineSettings {
    pub window_size: usize,
    pub concept_pos: BTreeSet<PosTag>,
    pub fallback_pos: PosTag,
    pub idf_smoothing: IdfSmoothing,
    pub filter_threshold: f64,
    pub top_n: Option<usize>,
    pub lsi_k: usize,
    pub clusters_k: usize,
    pub seed: u64,
}

impl Default for PipelineSettings {
    fn default() -> Self {
        Self {
            window_size: 8,
            concept_pos: BTreeSet::from([PosTag::Noun]),
            fallback_pos: PosTag::Noun,
            idf_smoothing: IdfSmoothing::None,
            filter_threshold: 0.0,
            top_n: None,
            lsi_k: 2,
            clusters_k: 4,
            seed: 42,
        }
    }
}

/// Everything a corpus run produces, stage by stage.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusAnalysis {
    pub windows: Vec<PseudoDocument>,
    pub matrix: TermDocumentMatrix,
    pub weights: WeightMatrix,
    pub retained: Vec<usize>,
    pub reference_map: ConceptMap,
    pub latent: TruncatedModel,
    /// Per-window Jaccard similarity to the reference concept set.
    pub ref_similarities: Vec<f64>,
    pub clusters: ClusterModel,
    pub labels: DifficultyLabels,
}

/// One learner document scored against a reference map.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnerAnalysis {
    pub concept_map: ConceptMap,
    pub similarity: f64,
    pub assignment: LevelAssignment,
}

/// Runs every stage over a corpus and builds the reference concept map.
pub fn analyze_corpus(
    documents: &[RawDocument],
    stops: &StopWordList,
    lexicon: &PosLexicon,
    settings: &PipelineSettings,
) -> Result<CorpusAnalysis> {
    if documents.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let mut windows = Vec::new();
    for doc in documents {
        let tokens = preprocess(doc, stops, lexicon, settings.fallback_pos);
        windows.extend(segment(&doc.id, &tokens, settings.window_size));
    }

    let matrix = build_matrix(&windows, &settings.concept_pos)?;
    let weights = tf_idf(&matrix, settings.idf_smoothing)?;
    let retained = filter_concepts(&weights, settings.filter_threshold, settings.top_n)?;
    if retained.is_empty() {
        return Err(Error::NoConceptsRetained);
    }
    let reference_map = build_concept_map(&retained, &weights);

    let latent = truncate(&svd(&weights)?, settings.lsi_k)?;
    let ref_similarities = window_similarities(&weights, &retained, &reference_map)?;
    let clusters = kmeans(
        &latent.doc_vectors,
        settings.clusters_k,
        settings.seed,
        MAX_ITER_DEFAULT,
    )?;
    let labels = label_difficulty(&clusters, &ref_similarities)?;

    Ok(CorpusAnalysis {
        windows,
        matrix,
        weights,
        retained,
        reference_map,
        latent,
        ref_similarities,
        clusters,
        labels,
    })
}

/// Jaccard similarity of each window's retained-concept support against
/// the reference concept set.
pub fn window_similarities(
    weights: &WeightMatrix,
    retained: &[usize],
    reference: &ConceptMap,
) -> Result<Vec<f64>> {
    let mut sims = Vec::with_capacity(weights.doc_count());
    for d in 0..weights.doc_count() {
        let mut present = BTreeSet::new();
        for &t in retained {
            if weights.weight(t, d) > 0.0 {
                present.insert(
                    weights
                        .index()
                        .term(t)
                        .expect("retained ordinals are in range")
                        .to_string(),
                );
            }
        }
        sims.push(jaccard_sets(&present, &reference.concepts)?.value);
    }
    Ok(sims)
}

/// Builds a learner document's concept map through the same pipeline
/// settings and scores it against the reference.
///
/// A learner text producing no concept-bearing terms gets an empty map
/// (similarity 0 against any non-empty reference), not an error.
pub fn analyze_learner(
    learner: &RawDocument,
    stops: &StopWordList,
    lexicon: &PosLexicon,
    settings: &PipelineSettings,
    reference: &ConceptMap,
) -> Result<LearnerAnalysis> {
    let tokens = preprocess(learner, stops, lexicon, settings.fallback_pos);
    let windows = segment(&learner.id, &tokens, settings.window_size);

    let concept_map = match build_matrix(&windows, &settings.concept_pos) {
        Err(Error::EmptyVocabulary) => ConceptMap::default(),
        Err(other) => return Err(other),
        Ok(matrix) => {
            let weights = tf_idf(&matrix, settings.idf_smoothing)?;
            let retained = filter_concepts(&weights, settings.filter_threshold, settings.top_n)?;
            build_concept_map(&retained, &weights)
        }
    };

    let similarity = map_similarity(&concept_map, reference)?.value;
    let assignment = classify(similarity, &FuzzyConfig::default())?;
    Ok(LearnerAnalysis {
        concept_map,
        similarity,
        assignment,
    })
}
