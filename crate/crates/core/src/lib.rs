//! Concept-map text mining over small document corpora.
//!
//! The library turns free-text documents into a weighted term model and
//! derives learner-facing analyses from it:
//!
//! 1. [`text`] — tokenize, drop stop words, tag parts of speech
//! 2. [`matrix`] — cut token streams into word windows and count terms
//! 3. [`weighting`] — tf-idf weights and concept filtering
//! 4. [`lsi`] — singular value decomposition and rank-k latent vectors
//! 5. [`similarity`] — concept maps and Jaccard similarity
//! 6. [`fuzzy`] — Mamdani classification of similarity into levels
//! 7. [`cluster`] — seeded k-means with difficulty labels
//! 8. [`recommend`] — the material-delivery decision rules
//!
//! [`pipeline`] wires the stages end to end and [`artifact`] gives every
//! stage a deterministic JSON form. All floating-point work is pinned
//! (fixed iteration orders, seeded randomness, 17-digit serialization) so
//! identical inputs produce byte-identical outputs.

pub mod artifact;
pub mod cluster;
pub mod error;
pub mod fuzzy;
pub mod lsi;
pub mod mat;
pub mod matrix;
pub mod pipeline;
pub mod recommend;
pub mod similarity;
pub mod text;
pub mod weighting;

pub use cluster::{kmeans, label_difficulty, ClusterModel, DifficultyLabels, SplitMix64};
pub use error::{Error, Result};
pub use fuzzy::{classify, defuzzify_centroid, memberships, FuzzyConfig, Level, LevelAssignment};
pub use lsi::{reconstruct, svd, truncate, LatentModel, TruncatedModel};
pub use matrix::{build_matrix, segment, PseudoDocument, TermDocumentMatrix, TermIndex, WindowId};
pub use pipeline::{
    analyze_corpus, analyze_learner, window_similarities, CorpusAnalysis, LearnerAnalysis,
    PipelineSettings,
};
pub use recommend::{recommend, Action, Recommendation};
pub use similarity::{
    build_concept_map, jaccard_binary_vectors, jaccard_sets, map_similarity, ConceptMap,
    SimilarityScore,
};
pub use text::{
    pos_tag, preprocess, remove_stop_words, tokenize, PosLexicon, PosTag, RawDocument,
    StopWordList, Token,
};
pub use weighting::{
    filter_concepts, inverse_document_frequency, term_frequency, tf_idf, IdfSmoothing, WeightMatrix,
};
