//! Pipeline configuration: TOML file values overridden by CLI flags.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use conceptmine::{IdfSmoothing, PipelineSettings, PosTag};

/// Flags shared by `run` and `classify`, mirroring the config file keys.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// TOML config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Directory of .txt corpus files (file stem = document id)
    #[arg(long)]
    pub corpus_dir: Option<PathBuf>,

    /// Stop-word file, one word per line (bundled default list if omitted)
    #[arg(long)]
    pub stopwords_path: Option<PathBuf>,

    /// Tab-separated word/tag lexicon (unknown words fall back to noun)
    #[arg(long)]
    pub lexicon_path: Option<PathBuf>,

    /// Tokens per pseudo-document window
    #[arg(long)]
    pub window_size: Option<usize>,

    /// Comma-separated tags counted as concepts (noun,verb,adjective,adverb,other)
    #[arg(long, value_delimiter = ',')]
    pub concept_pos: Option<Vec<PosTag>>,

    /// Idf smoothing: none or add_one_documents
    #[arg(long)]
    pub idf_smoothing: Option<IdfSmoothing>,

    /// Minimum max-weight a term must exceed to stay a concept
    #[arg(long)]
    pub filter_threshold: Option<f64>,

    /// Keep only the strongest N concepts
    #[arg(long)]
    pub top_n: Option<usize>,

    /// Latent dimensions kept after decomposition
    #[arg(long)]
    pub lsi_k: Option<usize>,

    /// Number of document clusters
    #[arg(long)]
    pub clusters_k: Option<usize>,

    /// Seed for the clustering RNG
    #[arg(long)]
    pub seed: Option<u64>,

    /// Directory for stage artifacts and the run manifest
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Raw config file shape: every key optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    corpus_dir: Option<PathBuf>,
    stopwords_path: Option<PathBuf>,
    lexicon_path: Option<PathBuf>,
    window_size: Option<usize>,
    concept_pos: Option<Vec<PosTag>>,
    idf_smoothing: Option<IdfSmoothing>,
    filter_threshold: Option<f64>,
    top_n: Option<usize>,
    lsi_k: Option<usize>,
    clusters_k: Option<usize>,
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
}

/// Fully resolved configuration, also snapshotted into the run manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub corpus_dir: Option<PathBuf>,
    pub stopwords_path: Option<PathBuf>,
    pub lexicon_path: Option<PathBuf>,
    pub window_size: usize,
    pub concept_pos: BTreeSet<PosTag>,
    pub idf_smoothing: IdfSmoothing,
    pub filter_threshold: f64,
    pub top_n: Option<usize>,
    pub lsi_k: usize,
    pub clusters_k: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl PipelineConfig {
    /// Merges config file (if any) and flags; flags win.
    pub fn resolve(flags: &ConfigFlags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config file {}", path.display()))?;
                toml::from_str::<ConfigFile>(&text)
                    .with_context(|| format!("parsing config file {}", path.display()))?
            }
            None => ConfigFile::default(),
        };

        let concept_pos: BTreeSet<PosTag> = flags
            .concept_pos
            .clone()
            .or(file.concept_pos)
            .unwrap_or_else(|| vec![PosTag::Noun])
            .into_iter()
            .collect();
        if concept_pos.is_empty() {
            bail!("concept_pos must name at least one tag");
        }

        let config = Self {
            corpus_dir: flags.corpus_dir.clone().or(file.corpus_dir),
            stopwords_path: flags.stopwords_path.clone().or(file.stopwords_path),
            lexicon_path: flags.lexicon_path.clone().or(file.lexicon_path),
            window_size: flags.window_size.or(file.window_size).unwrap_or(8),
            concept_pos,
            idf_smoothing: flags
                .idf_smoothing
                .or(file.idf_smoothing)
                .unwrap_or_default(),
            filter_threshold: flags
                .filter_threshold
                .or(file.filter_threshold)
                .unwrap_or(0.0),
            top_n: flags.top_n.or(file.top_n),
            lsi_k: flags.lsi_k.or(file.lsi_k).unwrap_or(2),
            clusters_k: flags.clusters_k.or(file.clusters_k).unwrap_or(4),
            seed: flags.seed.or(file.seed).unwrap_or(42),
            out_dir: flags.out_dir.clone().or(file.out_dir),
        };

        if config.window_size < 1 {
            bail!("window_size must be at least 1");
        }
        if config.lsi_k < 1 {
            bail!("lsi_k must be at least 1");
        }
        if config.clusters_k < 1 {
            bail!("clusters_k must be at least 1");
        }
        if !(config.filter_threshold >= 0.0 && config.filter_threshold.is_finite()) {
            bail!("filter_threshold must be a finite value ≥ 0");
        }
        if config.top_n == Some(0) {
            bail!("top_n must be at least 1 when given");
        }
        Ok(config)
    }

    pub fn settings(&self) -> PipelineSettings {
        PipelineSettings {
            window_size: self.window_size,
            concept_pos: self.concept_pos.clone(),
            fallback_pos: PosTag::Noun,
            idf_smoothing: self.idf_smoothing,
            filter_threshold: self.filter_threshold,
            top_n: self.top_n,
            lsi_k: self.lsi_k,
            clusters_k: self.clusters_k,
            seed: self.seed,
        }
    }

    pub fn require_corpus_dir(&self) -> Result<&Path> {
        self.corpus_dir
            .as_deref()
            .context("corpus_dir is required (flag --corpus-dir or config key corpus_dir)")
    }

    pub fn require_out_dir(&self) -> Result<&Path> {
        self.out_dir
            .as_deref()
            .context("out_dir is required (flag --out-dir or config key out_dir)")
    }

    /// Output directory for `classify`, defaulting to the working directory.
    pub fn out_dir_or_cwd(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}
