//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

const STAGES: [(&str, &str); 6] = [
    ("text-pipeline", "tokens.json"),
    ("term-matrix", "matrix.json"),
    ("weighting", "weights.json"),
    ("latent-semantics", "latent.json"),
    ("similarity", "concept_map.json"),
    ("clustering", "clusters.json"),
];

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .and_then(Path::parent)
        .expect("crate lives two levels under the repo root")
        .to_path_buf()
}

fn fixture(path: &str) -> String {
    repo_root()
        .join("fixtures")
        .join(path)
        .to_str()
        .unwrap()
        .to_string()
}

fn conceptmine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conceptmine"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

fn assert_failure(output: &Output, needle: &str) {
    assert!(!output.status.success(), "expected a nonzero exit");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains(needle),
        "stderr {stderr:?} does not mention {needle:?}"
    );
}

/// Runs the pipeline over the bundled corpus into `out`, with extra flags.
fn run_fixture_corpus(out: &Path, extra: &[&str]) -> Output {
    let corpus = fixture("corpus");
    let lexicon = fixture("lexicon.tsv");
    let mut args = vec![
        "run",
        "--corpus-dir",
        &corpus,
        "--lexicon-path",
        &lexicon,
        "--out-dir",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    conceptmine(&args)
}

fn read_json(path: &Path) -> serde_json::Value {
    let text =
        std::fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("parsing {}: {e}", path.display()))
}

#[test]
fn run_writes_all_artifacts_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_fixture_corpus(dir.path(), &[]);
    assert_success(&output);

    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("analyzed 3 documents"), "stdout: {stdout}");

    for (_, file) in STAGES {
        assert!(dir.path().join(file).is_file(), "{file} missing");
    }

    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["tool"], "conceptmine");
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["created_unix_s"].as_u64().unwrap() > 0);

    let artifacts = manifest["artifacts"].as_object().unwrap();
    assert_eq!(artifacts.len(), STAGES.len());
    for (stage, file) in STAGES {
        assert_eq!(artifacts[stage]["path"], file);
        let bytes = std::fs::read(dir.path().join(file)).unwrap();
        let mut expected = String::new();
        for byte in Sha256::digest(&bytes) {
            use std::fmt::Write;
            write!(expected, "{byte:02x}").unwrap();
        }
        assert_eq!(
            artifacts[stage]["sha256"].as_str().unwrap(),
            expected,
            "hash mismatch for {file}"
        );
        assert!(manifest["timings_ms"][stage].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn repeated_runs_write_identical_artifacts() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(first.path(), &[]));
    assert_success(&run_fixture_corpus(second.path(), &[]));

    for (_, file) in STAGES {
        let a = std::fs::read(first.path().join(file)).unwrap();
        let b = std::fs::read(second.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
}

#[test]
fn no_partial_files_survive_a_run() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let name = entry.unwrap().file_name();
        let name = name.to_string_lossy();
        assert!(!name.ends_with(".partial"), "leftover {name}");
    }
}

#[test]
fn run_fails_on_a_corpus_without_documents() {
    let corpus = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let output = conceptmine(&[
        "run",
        "--corpus-dir",
        corpus.path().to_str().unwrap(),
        "--out-dir",
        out.path().to_str().unwrap(),
    ]);
    assert_failure(&output, "no .txt documents");
}

#[test]
fn run_fails_when_clusters_exceed_windows() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_fixture_corpus(dir.path(), &["--clusters-k", "50"]);
    assert_failure(&output, "50 clusters");
}

#[test]
fn run_rejects_a_zero_window() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_fixture_corpus(dir.path(), &["--window-size", "0"]);
    assert_failure(&output, "window_size");
}

#[test]
fn config_file_applies_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("cfg.toml");
    std::fs::write(
        &config_path,
        format!(
            "corpus_dir = {:?}\nlexicon_path = {:?}\nseed = 7\nclusters_k = 3\n",
            fixture("corpus"),
            fixture("lexicon.tsv")
        ),
    )
    .unwrap();

    let out_a = dir.path().join("a");
    assert_success(&conceptmine(&[
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--out-dir",
        out_a.to_str().unwrap(),
    ]));
    let clusters = read_json(&out_a.join("clusters.json"));
    assert_eq!(clusters["seed"], 7);
    assert_eq!(clusters["k"], 3);

    let out_b = dir.path().join("b");
    assert_success(&conceptmine(&[
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--out-dir",
        out_b.to_str().unwrap(),
        "--seed",
        "9",
    ]));
    let clusters = read_json(&out_b.join("clusters.json"));
    assert_eq!(clusters["seed"], 9);
    assert_eq!(clusters["k"], 3);
}

#[test]
fn classify_writes_classification_and_recommendation() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));

    let out = dir.path().to_str().unwrap().to_string();
    let concept_map = dir.path().join("concept_map.json");
    let clusters = dir.path().join("clusters.json");
    let lexicon = fixture("lexicon.tsv");
    let learner = fixture("learner.txt");
    let output = conceptmine(&[
        "classify",
        &learner,
        "--concept-map",
        concept_map.to_str().unwrap(),
        "--clusters",
        clusters.to_str().unwrap(),
        "--group",
        "1",
        "--lexicon-path",
        &lexicon,
        "--out-dir",
        &out,
    ]);
    assert_success(&output);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("learner:"), "stdout: {stdout}");

    let classification = read_json(&dir.path().join("classifications/learner.json"));
    let level = classification["level"].as_str().unwrap();
    assert!(["low", "medium", "high"].contains(&level));
    let similarity = classification["similarity"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&similarity));

    let recommendation = read_json(&dir.path().join("recommendations/learner.json"));
    let action = recommendation["action"].as_str().unwrap();
    match level {
        "low" => assert_eq!(action, "reteach"),
        "medium" => assert_eq!(action, "elaborate"),
        _ => assert!(["elaborate", "deliver_and_store"].contains(&action)),
    }
}

#[test]
fn classify_defaults_to_a_single_cohort_without_clusters() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));

    let output = conceptmine(&[
        "classify",
        &fixture("learner.txt"),
        "--concept-map",
        dir.path().join("concept_map.json").to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_success(&output);
    assert!(dir.path().join("recommendations/learner.json").is_file());
}

#[test]
fn report_levels_lists_classified_learners() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));
    assert_success(&conceptmine(&[
        "classify",
        &fixture("learner.txt"),
        "--concept-map",
        dir.path().join("concept_map.json").to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]));

    let output = conceptmine(&[
        "report",
        "levels",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8(output.stdout.clone()).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "document,similarity,level,support,low,medium,high"
    );
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("learner,"), "row: {}", lines[1]);
}

#[test]
fn report_levels_prints_only_a_header_without_classifications() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));
    let output = conceptmine(&[
        "report",
        "levels",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8(output.stdout.clone()).unwrap();
    assert_eq!(stdout.lines().count(), 1);
}

#[test]
fn report_clusters_prints_one_row_per_cluster() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &["--clusters-k", "3"]));
    let output = conceptmine(&[
        "report",
        "clusters",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8(output.stdout.clone()).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "cluster,label,size,mean_similarity");
    assert_eq!(lines.len(), 4);

    let clusters = read_json(&dir.path().join("clusters.json"));
    let assignments = clusters["assignments"].as_array().unwrap();
    let mut total = 0;
    for (idx, line) in lines[1..].iter().enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[0], idx.to_string());
        assert!(!fields[1].is_empty());
        total += fields[2].parse::<usize>().unwrap();
    }
    assert_eq!(total, assignments.len(), "sizes sum to the window count");
}

#[test]
fn report_timings_covers_every_stage_in_order() {
    let dir = tempfile::tempdir().unwrap();
    assert_success(&run_fixture_corpus(dir.path(), &[]));
    let output = conceptmine(&[
        "report",
        "timings",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_success(&output);
    let stdout = String::from_utf8(output.stdout.clone()).unwrap();
    let stages: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|line| line.split(',').next().unwrap())
        .collect();
    let mut expected: Vec<&str> = STAGES.iter().map(|(stage, _)| *stage).collect();
    expected.sort_unstable();
    assert_eq!(stages, expected);
}

#[test]
fn report_fails_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let output = conceptmine(&[
        "report",
        "clusters",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_failure(&output, "clusters.json");
}
