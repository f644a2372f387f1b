//! The `run` subcommand: executes every pipeline stage over a corpus
//! directory, writing one JSON artifact per stage plus a run manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use conceptmine::artifact::{
    to_pinned_json, ClustersArtifact, ConceptMapArtifact, LatentArtifact, MatrixArtifact,
    TokenizedDoc, TokensArtifact, WeightsArtifact,
};
use conceptmine::cluster::MAX_ITER_DEFAULT;
use conceptmine::{
    build_concept_map, build_matrix, filter_concepts, kmeans, label_difficulty, preprocess,
    segment, svd, tf_idf, truncate, window_similarities, Error, PosLexicon, PseudoDocument,
    RawDocument, StopWordList,
};

use crate::config::PipelineConfig;
use crate::manifest::RunManifest;

/// Writes `bytes` to `path` via a `.partial` sibling and an atomic rename,
/// so a crash never leaves a truncated artifact under the final name.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut partial = path.as_os_str().to_owned();
    partial.push(".partial");
    let partial = PathBuf::from(partial);
    std::fs::write(&partial, bytes).with_context(|| format!("writing {}", partial.display()))?;
    std::fs::rename(&partial, path)
        .with_context(|| format!("moving {} into place", partial.display()))?;
    Ok(())
}

/// Reads every `.txt` file in `dir` (sorted by file name) as a document;
/// the file stem becomes the document id.
pub fn load_corpus(dir: &Path) -> Result<Vec<RawDocument>> {
    let entries = std::fs::read_dir(dir)
        .with_context(|| format!("reading corpus directory {}", dir.display()))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry
            .with_context(|| format!("listing corpus directory {}", dir.display()))?
            .path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            paths.push(path);
        }
    }
    paths.sort();

    let mut documents = Vec::with_capacity(paths.len());
    for path in &paths {
        let stem = path
            .file_stem()
            .and_then(|stem| stem.to_str())
            .with_context(|| format!("non-UTF-8 file name {}", path.display()))?;
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let doc = RawDocument::from_bytes(stem, &bytes)
            .with_context(|| format!("decoding {}", path.display()))?;
        documents.push(doc);
    }
    if documents.is_empty() {
        bail!("no .txt documents in {}", dir.display());
    }
    Ok(documents)
}

pub fn load_stops(config: &PipelineConfig) -> Result<StopWordList> {
    match &config.stopwords_path {
        Some(path) => StopWordList::load(path)
            .with_context(|| format!("loading stop words from {}", path.display())),
        None => Ok(StopWordList::default_list()),
    }
}

pub fn load_lexicon(config: &PipelineConfig) -> Result<PosLexicon> {
    match &config.lexicon_path {
        Some(path) => PosLexicon::load(path)
            .with_context(|| format!("loading tag lexicon from {}", path.display())),
        None => Ok(PosLexicon::empty()),
    }
}

fn write_stage<T: Serialize>(
    out_dir: &Path,
    manifest: &mut RunManifest,
    stage: &str,
    file_name: &str,
    value: &T,
    started: Instant,
) -> Result<()> {
    let text = to_pinned_json(value).with_context(|| format!("serializing {file_name}"))?;
    write_atomic(&out_dir.join(file_name), text.as_bytes())?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    manifest.record(stage, file_name, text.as_bytes(), elapsed_ms);
    Ok(())
}

pub fn run(config: &PipelineConfig) -> Result<()> {
    let corpus_dir = config.require_corpus_dir()?;
    let out_dir = config.require_out_dir()?.to_path_buf();
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;

    let documents = load_corpus(corpus_dir)?;
    let stops = load_stops(config)?;
    let lexicon = load_lexicon(config)?;
    let settings = config.settings();
    let mut manifest = RunManifest::new(config.clone());

    let started = Instant::now();
    let tokenized: Vec<TokenizedDoc> = documents
        .iter()
        .map(|doc| TokenizedDoc {
            id: doc.id.clone(),
            tokens: preprocess(doc, &stops, &lexicon, settings.fallback_pos),
        })
        .collect();
    let tokens_artifact = TokensArtifact { docs: tokenized };
    write_stage(
        &out_dir,
        &mut manifest,
        "text-pipeline",
        "tokens.json",
        &tokens_artifact,
        started,
    )?;

    let started = Instant::now();
    let mut windows: Vec<PseudoDocument> = Vec::new();
    for doc in &tokens_artifact.docs {
        windows.extend(segment(&doc.id, &doc.tokens, settings.window_size));
    }
    let matrix = build_matrix(&windows, &settings.concept_pos).context("term-matrix stage")?;
    write_stage(
        &out_dir,
        &mut manifest,
        "term-matrix",
        "matrix.json",
        &MatrixArtifact::from_matrix(&matrix),
        started,
    )?;

    let started = Instant::now();
    let weights = tf_idf(&matrix, settings.idf_smoothing).context("weighting stage")?;
    let retained = filter_concepts(&weights, settings.filter_threshold, settings.top_n)
        .context("weighting stage")?;
    if retained.is_empty() {
        return Err(Error::NoConceptsRetained).context("weighting stage");
    }
    write_stage(
        &out_dir,
        &mut manifest,
        "weighting",
        "weights.json",
        &WeightsArtifact::from_weights(&weights),
        started,
    )?;

    let started = Instant::now();
    let latent = truncate(
        &svd(&weights).context("latent-semantics stage")?,
        settings.lsi_k,
    )
    .context("latent-semantics stage")?;
    write_stage(
        &out_dir,
        &mut manifest,
        "latent-semantics",
        "latent.json",
        &LatentArtifact::from_model(&latent),
        started,
    )?;

    let started = Instant::now();
    let reference_map = build_concept_map(&retained, &weights);
    let ref_similarities =
        window_similarities(&weights, &retained, &reference_map).context("similarity stage")?;
    write_stage(
        &out_dir,
        &mut manifest,
        "similarity",
        "concept_map.json",
        &ConceptMapArtifact::from_map(&reference_map),
        started,
    )?;

    let started = Instant::now();
    let clusters = kmeans(
        &latent.doc_vectors,
        settings.clusters_k,
        settings.seed,
        MAX_ITER_DEFAULT,
    )
    .context("clustering stage")?;
    let labels = label_difficulty(&clusters, &ref_similarities).context("clustering stage")?;
    write_stage(
        &out_dir,
        &mut manifest,
        "clustering",
        "clusters.json",
        &ClustersArtifact::from_model(&clusters, &labels),
        started,
    )?;

    manifest.write(&out_dir)?;

    println!(
        "analyzed {} documents: {} windows, {} terms, {} concepts retained",
        documents.len(),
        windows.len(),
        matrix.index().len(),
        retained.len()
    );
    let label_list: Vec<String> = labels
        .iter()
        .map(|(id, name)| format!("{id}={name}"))
        .collect();
    println!(
        "latent rank {}, {} clusters: {}",
        latent.k,
        clusters.k,
        label_list.join(" ")
    );
    println!(
        "wrote {} artifacts and manifest.json to {}",
        manifest.artifacts.len(),
        out_dir.display()
    );
    Ok(())
}
