//! The `classify` subcommand: scores one learner document against a
//! reference concept map and writes classification + recommendation files.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use conceptmine::artifact::{
    from_json, to_pinned_json, ClassificationArtifact, ClustersArtifact, ConceptMapArtifact,
};
use conceptmine::{analyze_learner, recommend, Action, DifficultyLabels, RawDocument};

use crate::config::{ConfigFlags, PipelineConfig};
use crate::run::{load_lexicon, load_stops, write_atomic};

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Learner response file (plain text)
    pub learner: PathBuf,

    /// Reference concept map artifact from a completed run
    #[arg(long)]
    pub concept_map: PathBuf,

    /// Cluster artifact supplying difficulty labels for delivery targeting
    #[arg(long)]
    pub clusters: Option<PathBuf>,

    /// Cluster id of the learner's cohort
    #[arg(long, default_value_t = 0)]
    pub group: usize,

    #[command(flatten)]
    pub flags: ConfigFlags,
}

pub fn action_name(action: Action) -> &'static str {
    match action {
        Action::Reteach => "reteach",
        Action::Elaborate => "elaborate",
        Action::DeliverAndStore => "deliver_and_store",
    }
}

pub fn classify_command(args: &ClassifyArgs) -> Result<()> {
    let config = PipelineConfig::resolve(&args.flags)?;
    let stops = load_stops(&config)?;
    let lexicon = load_lexicon(&config)?;
    let settings = config.settings();

    let map_text = std::fs::read_to_string(&args.concept_map)
        .with_context(|| format!("reading {}", args.concept_map.display()))?;
    let reference = from_json::<ConceptMapArtifact>(&map_text)
        .with_context(|| format!("parsing {}", args.concept_map.display()))?
        .into_map();

    let labels: DifficultyLabels = match &args.clusters {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            from_json::<ClustersArtifact>(&text)
                .with_context(|| format!("parsing {}", path.display()))?
                .labels
        }
        // Without a cluster artifact, treat everyone as one cohort.
        None => DifficultyLabels::from([(0, "simple".to_string())]),
    };

    let stem = args
        .learner
        .file_stem()
        .and_then(|stem| stem.to_str())
        .with_context(|| format!("non-UTF-8 file name {}", args.learner.display()))?
        .to_string();
    let bytes = std::fs::read(&args.learner)
        .with_context(|| format!("reading {}", args.learner.display()))?;
    let learner = RawDocument::from_bytes(&stem, &bytes)
        .with_context(|| format!("decoding {}", args.learner.display()))?;

    let analysis = analyze_learner(&learner, &stops, &lexicon, &settings, &reference)?;
    let recommendation = recommend(
        &analysis.assignment,
        analysis.similarity,
        &labels,
        args.group,
    )?;

    let out_dir = config.out_dir_or_cwd();
    let class_dir = out_dir.join("classifications");
    let rec_dir = out_dir.join("recommendations");
    std::fs::create_dir_all(&class_dir)
        .with_context(|| format!("creating {}", class_dir.display()))?;
    std::fs::create_dir_all(&rec_dir).with_context(|| format!("creating {}", rec_dir.display()))?;

    let classification = ClassificationArtifact::new(analysis.similarity, &analysis.assignment);
    let file_name = format!("{stem}.json");
    write_atomic(
        &class_dir.join(&file_name),
        to_pinned_json(&classification)?.as_bytes(),
    )?;
    write_atomic(
        &rec_dir.join(&file_name),
        to_pinned_json(&recommendation)?.as_bytes(),
    )?;

    let target = match recommendation.deliver_group {
        Some(group) => format!(" to group {group}"),
        None => String::new(),
    };
    println!(
        "{stem}: similarity {:.4}, level {}, action {}{target} ({})",
        analysis.similarity,
        classification.level,
        action_name(recommendation.action),
        recommendation.rationale.join("; ")
    );
    Ok(())
}
