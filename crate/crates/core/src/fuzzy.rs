//! Mamdani fuzzy classification of similarity scores into learner levels.
//!
//! Three triangular membership functions (low, medium, high) partition the
//! unit interval. A score activates each level to some degree; the crisp
//! level is the strongest activation (ties go to the higher level), and a
//! defuzzified support score is the centroid of the min-clipped,
//! max-aggregated output sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trapezoid samples used for centroid integration (1000 intervals).
const CENTROID_SAMPLES: usize = 1001;

/// Crisp learner knowledge level, ordered low to high.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Low,
    Medium,
    High,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Low, Level::Medium, Level::High];

    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Low => "low",
            Level::Medium => "medium",
            Level::High => "high",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "low" => Ok(Level::Low),
            "medium" => Ok(Level::Medium),
            "high" => Ok(Level::High),
            other => Err(format!("unknown level `{other}`")),
        }
    }
}

/// Degrees of membership in each level; sums to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipTriple {
    pub low: f64,
    pub medium: f64,
    pub high: f64,
}

impl MembershipTriple {
    fn get(&self, level: Level) -> f64 {
        match level {
            Level::Low => self.low,
            Level::Medium => self.medium,
            Level::High => self.high,
        }
    }
}

/// Crisp level plus the fuzzy evidence behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub level: Level,
    pub memberships: MembershipTriple,
    pub support: f64,
}

/// Peak positions of the three membership triangles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzyConfig {
    pub peaks: [f64; 3],
}

impl Default for FuzzyConfig {
    fn default() -> Self {
        Self {
            peaks: [0.0, 0.5, 1.0],
        }
    }
}

impl FuzzyConfig {
    /// Validates strictly increasing peaks within [0,1].
    pub fn new(peaks: [f64; 3]) -> Result<Self> {
        for &p in &peaks {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::OutOfRange { value: p });
            }
        }
        if !(peaks[0] < peaks[1] && peaks[1] < peaks[2]) {
            return Err(Error::OutOfRange { value: peaks[1] });
        }
        Ok(Self { peaks })
    }
}

fn check_unit(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange { value: s });
    }
    Ok(s)
}

/// Membership of `x` in one level's triangle. Low and high carry shoulders
/// (constant 1 before/after their peak) so the three always sum to 1.
fn membership(x: f64, level: Level, cfg: &FuzzyConfig) -> f64 {
    let [p0, p1, p2] = cfg.peaks;
    match level {
        Level::Low => {
            if x <= p0 {
                1.0
            } else if x < p1 {
                (p1 - x) / (p1 - p0)
            } else {
                0.0
            }
        }
        Level::Medium => {
            if x <= p0 || x >= p2 {
                0.0
            } else if x <= p1 {
                (x - p0) / (p1 - p0)
            } else {
                (p2 - x) / (p2 - p1)
            }
        }
        Level::High => {
            if x >= p2 {
                1.0
            } else if x > p1 {
                (x - p1) / (p2 - p1)
            } else {
                0.0
            }
        }
    }
}

/// Evaluates all three triangles at similarity `s`.
pub fn memberships(s: f64, cfg: &FuzzyConfig) -> Result<MembershipTriple> {
    let s = check_unit(s)?;
    Ok(MembershipTriple {
        low: membership(s, Level::Low, cfg),
        medium: membership(s, Level::Medium, cfg),
        high: membership(s, Level::High, cfg),
    })
}

/// Assigns the crisp level (argmax membership, ties toward the higher
/// level) together with the defuzzified support score.
pub fn classify(s: f64, cfg: &FuzzyConfig) -> Result<LevelAssignment> {
    let triple = memberships(s, cfg)?;
    let mut level = Level::Low;
    for candidate in [Level::Medium, Level::High] {
        if triple.get(candidate) >= triple.get(level) {
            level = candidate;
        }
    }
    Ok(LevelAssignment {
        level,
        memberships: triple,
        support: defuzzify_centroid(s, cfg)?,
    })
}

/// Centroid defuzzification: clip each output triangle at its rule
/// strength (min implication), aggregate pointwise by max, integrate by
/// the trapezoid rule on a fixed 1001-sample grid.
pub fn defuzzify_centroid(s: f64, cfg: &FuzzyConfig) -> Result<f64> {
    let strengths = memberships(s, cfg)?;
    let aggregate = |x: f64| -> f64 {
        Level::ALL
            .iter()
            .map(|&level| membership(x, level, cfg).min(strengths.get(level)))
            .fold(0.0, f64::max)
    };

    let step = 1.0 / (CENTROID_SAMPLES - 1) as f64;
    let mut moment = 0.0;
    let mut area = 0.0;
    let mut prev_x = 0.0;
    let mut prev_mu = aggregate(0.0);
    for i in 1..CENTROID_SAMPLES {
        let x = i as f64 * step;
        let mu = aggregate(x);
        moment += (prev_x * prev_mu + x * mu) * 0.5 * step;
        area += (prev_mu + mu) * 0.5 * step;
        prev_x = x;
        prev_mu = mu;
    }
    // the aggregate always has mass: the strongest rule fires at ≥ 1/3
    Ok(moment / area)
}
