//! Material recommendation from fuzzy level, similarity, and cluster
//! difficulty labels.
//!
//! Exactly one rule fires per input: low-level learners get the material
//! retaught, medium-level learners get it elaborated, and high-level
//! learners receive delivery only when similarity clears the strict 75%
//! gate — otherwise they too get elaboration.

use serde::{Deserialize, Serialize};

use crate::cluster::DifficultyLabels;
use crate::error::{Error, Result};
use crate::fuzzy::{Level, LevelAssignment};

/// Similarity a high-level learner must strictly exceed for delivery.
pub const DELIVERY_GATE: f64 = 0.75;

/// What to do with the learning material.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Reteach,
    Elaborate,
    DeliverAndStore,
}

/// Recommended action with the cluster to deliver to (delivery only) and
/// the names of the rules that fired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub action: Action,
    pub deliver_group: Option<usize>,
    pub rationale: Vec<String>,
}

/// Applies the decision rules. The learner's cluster must carry a
/// difficulty label.
pub fn recommend(
    assignment: &LevelAssignment,
    sim: f64,
    labels: &DifficultyLabels,
    learner_cluster: usize,
) -> Result<Recommendation> {
    if !(0.0..=1.0).contains(&sim) {
        return Err(Error::OutOfRange { value: sim });
    }
    if !labels.contains_key(&learner_cluster) {
        return Err(Error::UnknownCluster {
            id: learner_cluster,
        });
    }

    let (action, deliver_group, rule) = match assignment.level {
        Level::Low => (Action::Reteach, None, "low-reteach"),
        Level::Medium => (Action::Elaborate, None, "medium-elaborate"),
        Level::High if sim > DELIVERY_GATE => (
            Action::DeliverAndStore,
            Some(learner_cluster),
            "high-deliver-gate",
        ),
        Level::High => (Action::Elaborate, None, "high-below-gate"),
    };

    Ok(Recommendation {
        action,
        deliver_group,
        rationale: vec![rule.to_string()],
    })
}
