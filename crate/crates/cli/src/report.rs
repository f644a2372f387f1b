//! The `report` subcommand: prints CSV summaries of a run's artifacts.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

use conceptmine::artifact::{
    from_json, ClassificationArtifact, ClustersArtifact, ConceptMapArtifact, WeightsArtifact,
};
use conceptmine::window_similarities;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    /// Cluster sizes, difficulty labels, and mean reference similarity
    Clusters,
    /// Every classified learner with memberships and level
    Levels,
    /// Per-stage wall-clock timings from the run manifest
    Timings,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Which table to print
    #[arg(value_enum)]
    pub kind: ReportKind,

    /// Directory holding the run artifacts and classification outputs
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

/// Rounds to six significant digits and prints the shortest decimal form,
/// so report values stay readable without losing cross-run comparability.
pub fn fmt_sig6(value: f64) -> String {
    let rounded: f64 = format!("{value:.5e}")
        .parse()
        .expect("a rounded float always parses back");
    format!("{rounded}")
}

fn read_artifact<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn report(args: &ReportArgs) -> Result<()> {
    let lines = match args.kind {
        ReportKind::Clusters => cluster_rows(&args.out_dir)?,
        ReportKind::Levels => level_rows(&args.out_dir)?,
        ReportKind::Timings => timing_rows(&args.out_dir)?,
    };
    for line in lines {
        println!("{line}");
    }
    Ok(())
}

pub fn cluster_rows(out_dir: &Path) -> Result<Vec<String>> {
    let clusters: ClustersArtifact = read_artifact(&out_dir.join("clusters.json"))?;
    let weights = read_artifact::<WeightsArtifact>(&out_dir.join("weights.json"))?
        .into_weights()
        .context("rebuilding the weight matrix")?;
    let reference =
        read_artifact::<ConceptMapArtifact>(&out_dir.join("concept_map.json"))?.into_map();

    let retained: Vec<usize> = reference
        .concepts
        .iter()
        .filter_map(|term| weights.index().ordinal(term))
        .collect();
    let sims = window_similarities(&weights, &retained, &reference)?;

    let mut rows = vec!["cluster,label,size,mean_similarity".to_string()];
    for cluster in 0..clusters.k {
        let members: Vec<usize> = clusters
            .assignments
            .iter()
            .enumerate()
            .filter(|(_, &assigned)| assigned == cluster)
            .map(|(window, _)| window)
            .collect();
        let mean = if members.is_empty() {
            0.0
        } else {
            members.iter().map(|&w| sims[w]).sum::<f64>() / members.len() as f64
        };
        let label = clusters
            .labels
            .get(&cluster)
            .map(String::as_str)
            .unwrap_or("");
        rows.push(format!(
            "{cluster},{label},{},{}",
            members.len(),
            fmt_sig6(mean)
        ));
    }
    Ok(rows)
}

pub fn level_rows(out_dir: &Path) -> Result<Vec<String>> {
    let mut rows = vec!["document,similarity,level,support,low,medium,high".to_string()];
    let dir = out_dir.join("classifications");
    if !dir.is_dir() {
        return Ok(rows);
    }

    let mut paths = Vec::new();
    for entry in std::fs::read_dir(&dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry
            .with_context(|| format!("listing {}", dir.display()))?
            .path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "json") {
            paths.push(path);
        }
    }
    paths.sort();

    for path in &paths {
        let classification: ClassificationArtifact = read_artifact(path)?;
        let stem = path
            .file_stem()
            .and_then(|stem| stem.to_str())
            .with_context(|| format!("non-UTF-8 file name {}", path.display()))?;
        rows.push(format!(
            "{stem},{},{},{},{},{},{}",
            fmt_sig6(classification.similarity),
            classification.level,
            fmt_sig6(classification.support),
            fmt_sig6(classification.memberships.low),
            fmt_sig6(classification.memberships.medium),
            fmt_sig6(classification.memberships.high),
        ));
    }
    Ok(rows)
}

pub fn timing_rows(out_dir: &Path) -> Result<Vec<String>> {
    let path = out_dir.join("manifest.json");
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let manifest: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let timings = manifest
        .get("timings_ms")
        .and_then(|value| value.as_object())
        .with_context(|| format!("{} has no timings_ms table", path.display()))?;

    let mut rows = vec!["stage,milliseconds".to_string()];
    // serde_json preserves insertion order; sort for a stable report.
    let mut stages: Vec<&String> = timings.keys().collect();
    stages.sort();
    for stage in stages {
        let ms = timings[stage]
            .as_f64()
            .with_context(|| format!("timing for {stage} is not a number"))?;
        rows.push(format!("{stage},{}", fmt_sig6(ms)));
    }
    Ok(rows)
}
