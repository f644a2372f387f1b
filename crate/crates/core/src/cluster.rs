//! Seeded k-means over latent document vectors and difficulty labeling.
//!
//! Clustering is Lloyd's algorithm with k-means++ seeding driven by a
//! pinned 64-bit generator, so a (vectors, k, seed) triple always yields
//! the same model. Groups are then labeled simple/medium/hard by their
//! mean similarity to the reference concept map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Lloyd iterations attempted before accepting the current state.
pub const MAX_ITER_DEFAULT: usize = 100;

/// SplitMix64: tiny pinned generator for reproducible seeding.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0,1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Result of a k-means run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub seed: u64,
    pub centroids: Vec<Vec<f64>>,
    /// Document ordinal → cluster id.
    pub assignments: Vec<usize>,
    /// Sum of squared distances to assigned centroids.
    pub objective: f64,
    pub iterations: usize,
}

/// Cluster id → difficulty label (`simple`, `medium`, `hard`, then
/// `group-4`, `group-5`, … for larger k).
pub type DifficultyLabels = BTreeMap<usize, String>;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid of a point; ties go to the lowest cluster id.
fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = squared_distance(point, &centroids[0]);
    for (j, c) in centroids.iter().enumerate().skip(1) {
        let d = squared_distance(point, c);
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    (best, best_d)
}

/// Groups vectors into k clusters.
///
/// Seeding, sampling walks, and centroid accumulation all run over a
/// canonically sorted view of the points, so the model depends only on the
/// multiset of inputs, never on their order.
pub fn kmeans(vectors: &[Vec<f64>], k: usize, seed: u64, max_iter: usize) -> Result<ClusterModel> {
    let dim = vectors.first().map_or(0, Vec::len);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::ShapeMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
    }

    let compare = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| compare(&vectors[a], &vectors[b]));

    let distinct = {
        let mut count = 0;
        let mut prev: Option<usize> = None;
        for &i in &order {
            if prev.is_none_or(|p| compare(&vectors[p], &vectors[i]).is_ne()) {
                count += 1;
            }
            prev = Some(i);
        }
        count
    };
    if k < 1 || k > distinct {
        return Err(Error::TooFewPoints { k, distinct });
    }

    // k-means++ seeding over the sorted view
    let mut rng = SplitMix64::new(seed);
    let n = vectors.len();
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    let first = ((rng.next_f64() * n as f64) as usize).min(n - 1);
    centroids.push(vectors[order[first]].clone());
    while centroids.len() < k {
        let d2: Vec<f64> = order
            .iter()
            .map(|&i| nearest(&vectors[i], &centroids).1)
            .collect();
        let total: f64 = d2.iter().sum();
        let target = rng.next_f64() * total;
        let mut cum = 0.0;
        let mut chosen = None;
        for (pos, &d) in d2.iter().enumerate() {
            cum += d;
            if cum > target {
                chosen = Some(pos);
                break;
            }
        }
        let pos = chosen.unwrap_or_else(|| {
            // numerical remainder: fall back to the last separated point
            d2.iter()
                .rposition(|&d| d > 0.0)
                .expect("k ≤ distinct points")
        });
        centroids.push(vectors[order[pos]].clone());
    }

    let assign = |centroids: &[Vec<f64>]| -> Vec<usize> {
        vectors.iter().map(|v| nearest(v, centroids).0).collect()
    };

    let mut assignments = assign(&centroids);
    let mut iterations = 0;
    while iterations < max_iter {
        // repair empty clusters: hand each one the point farthest from its
        // current centroid, lowest cluster id and sorted point order first
        let mut sizes = vec![0usize; k];
        for &a in &assignments {
            sizes[a] += 1;
        }
        let mut repaired = false;
        let mut taken = vec![false; n];
        for j in 0..k {
            if sizes[j] > 0 {
                continue;
            }
            let mut far_pos = None;
            let mut far_d = -1.0f64;
            for (pos, &i) in order.iter().enumerate() {
                if taken[pos] {
                    continue;
                }
                let d = squared_distance(&vectors[i], &centroids[assignments[i]]);
                if d > far_d {
                    far_d = d;
                    far_pos = Some(pos);
                }
            }
            let pos = far_pos.expect("points outnumber empty clusters");
            taken[pos] = true;
            let i = order[pos];
            sizes[assignments[i]] -= 1;
            assignments[i] = j;
            sizes[j] = 1;
            centroids[j] = vectors[i].clone();
            repaired = true;
        }

        // centroid update, accumulated in sorted point order
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for &i in &order {
            let a = assignments[i];
            counts[a] += 1;
            for (s, x) in sums[a].iter_mut().zip(&vectors[i]) {
                *s += x;
            }
        }
        for j in 0..k {
            if counts[j] > 0 {
                for s in &mut sums[j] {
                    *s /= counts[j] as f64;
                }
                centroids[j] = sums[j].clone();
            }
        }

        let next = assign(&centroids);
        iterations += 1;
        let stable = next == assignments;
        assignments = next;
        if stable && !repaired {
            break;
        }
    }

    let objective = order
        .iter()
        .map(|&i| squared_distance(&vectors[i], &centroids[assignments[i]]))
        .sum();

    Ok(ClusterModel {
        k,
        seed,
        centroids,
        assignments,
        objective,
        iterations,
    })
}

/// Labels clusters by descending mean reference similarity: the best-
/// understood group is `simple`, then `medium`, then `hard`, with numbered
/// `group-N` labels beyond the third rank. Ties rank by ascending id.
pub fn label_difficulty(model: &ClusterModel, ref_similarity: &[f64]) -> Result<DifficultyLabels> {
    if ref_similarity.len() != model.assignments.len() {
        return Err(Error::MissingSimilarity {
            expected: model.assignments.len(),
            found: ref_similarity.len(),
        });
    }
    for &s in ref_similarity {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange { value: s });
        }
    }

    let mut sums = vec![0.0f64; model.k];
    let mut counts = vec![0usize; model.k];
    for (doc, &cluster) in model.assignments.iter().enumerate() {
        sums[cluster] += ref_similarity[doc];
        counts[cluster] += 1;
    }
    let means: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();

    let mut ranked: Vec<usize> = (0..model.k).collect();
    ranked.sort_by(|&a, &b| means[b].partial_cmp(&means[a]).unwrap().then(a.cmp(&b)));

    let mut labels = DifficultyLabels::new();
    for (rank, &cluster) in ranked.iter().enumerate() {
        let label = match rank {
            0 => "simple".to_string(),
            1 => "medium".to_string(),
            2 => "hard".to_string(),
            n => format!("group-{}", n + 1),
        };
        labels.insert(cluster, label);
    }
    Ok(labels)
}
