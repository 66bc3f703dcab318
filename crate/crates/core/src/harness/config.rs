//! Experiment configurations, read from JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShiftError};
use crate::grids::ShiftSpec2D;
use crate::trees::{AdjacencyMatrix, VertexSet};
use crate::treeshifts::TreeShiftSpec;
use crate::words::{PositionSet, ShiftSpec1D};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub task: Task,
    /// Echoed in the report; every computation is deterministic.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "target")]
pub enum Task {
    /// Block counts and raw entropy for lengths `1..=n`.
    #[serde(rename = "entropy1d")]
    Entropy1D { shift: ShiftSpec1D, n: usize },
    /// Block counts and raw entropy for each window.
    #[serde(rename = "entropy2d")]
    Entropy2D { shift: ShiftSpec2D, windows: Vec<[usize; 2]> },
    /// `M^a_{k,k}` for `k ≤ kmax` and the resulting frequency bound.
    #[serde(rename = "fr")]
    Fr { shift: ShiftSpec2D, symbol: u8, kmax: usize },
    /// Sauer–Shelah independence witnesses for each window.
    #[serde(rename = "indep2d")]
    Indep2D { shift: ShiftSpec2D, windows: Vec<[usize; 2]> },
    /// Pattern counts and raw entropy for depths `1..=n`.
    #[serde(rename = "tree-entropy")]
    TreeEntropy { shift: TreeShiftSpec, n: usize },
    /// Surface counts and raw surface entropy for depths `1..=n`.
    #[serde(rename = "surface")]
    Surface { shift: TreeShiftSpec, n: usize },
    /// `|S ∩ Δ_m| / |Δ_m|` for `m = 1..=n`.
    #[serde(rename = "density")]
    Density { tree: AdjacencyMatrix, set: DensitySet, n: usize },
    /// Independence sets in the top `l` levels for depths `1..=n`.
    #[serde(rename = "bip")]
    Bip { shift: TreeShiftSpec, l: usize, n: usize },
    #[serde(rename = "reproduce")]
    Reproduce {
        theorem: Theorem,
        #[serde(default)]
        depth: Option<usize>,
    },
}

/// Vertex sets that a density experiment can measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensitySet {
    Whole,
    EvenLevels,
    Vertices(VertexSet),
    SinkLift { base: ShiftSpec1D, positions: PositionSet },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Thm1,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Cor1,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Thm1,
        Theorem::Thm3,
        Theorem::Thm4,
        Theorem::Thm5,
        Theorem::Thm6,
        Theorem::Cor1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm3 => "thm3",
            Theorem::Thm4 => "thm4",
            Theorem::Thm5 => "thm5",
            Theorem::Thm6 => "thm6",
            Theorem::Cor1 => "cor1",
        }
    }
}

impl ExperimentConfig {
    /// Parses a config, reporting the JSON path of the first bad field.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| ShiftError::Config {
            path: format!("{origin}:{}", e.path()),
            message: e.inner().to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::from_json(&text, &path.display().to_string())
    }

    /// Canonical JSON used for the report's config hash.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("configs always serialize")
    }
}
