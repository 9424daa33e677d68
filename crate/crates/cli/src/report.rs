//! Machine-readable command output. Every collection is ordered, so equal
//! inputs and flags give byte-identical JSON.

use std::collections::BTreeMap;

use dhpath_core::laws::LawReport;
use dhpath_core::omega::BettiTable;
use dhpath_core::{Field, TheoryKind};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::document::DocumentKind;
use crate::fixtures::FixtureEntry;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// The command line after parsing, with defaults filled in.
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub engine_version: String,
    pub field: Field,
    /// Longest path length enumerated, when the command enumerates paths.
    pub truncation: Option<usize>,
    pub result: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: &str, text: &str) -> Self {
        InputDigest {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Validate {
        document: DocumentKind,
        vertices: usize,
        edges: usize,
    },
    Compute {
        theory: TheoryKind,
        density: Option<usize>,
        betti: Vec<usize>,
        table: BettiTable,
        notes: Vec<String>,
        basis: Option<Vec<LevelDump>>,
    },
    Morphism {
        edge_map: Vec<usize>,
        theories: Vec<TheoryCheck>,
    },
    Homotopy {
        found: bool,
        max_steps: usize,
        cap: u64,
        start: Option<BTreeMap<String, String>>,
        steps: Vec<StepDump>,
    },
    Laws {
        max_length: usize,
        results: Vec<LawOutcome>,
    },
    Fixtures {
        fixtures: Vec<FixtureEntry>,
    },
}

/// Bases and boundary of one dimension, entries rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDump {
    pub dim: usize,
    pub allowed: Vec<String>,
    /// Omega basis vectors as combinations of allowed paths.
    pub omega_basis: Vec<String>,
    /// Boundary into the previous dimension in Omega coordinates.
    pub boundary: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryCheck {
    pub theory: TheoryKind,
    pub density: Option<usize>,
    pub morphism: bool,
    pub witness: Option<String>,
    pub warning: Option<String>,
    /// Induced homology matrices in dimensions `0..=induced_dim`.
    pub induced: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDump {
    pub orientation: String,
    pub to: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub law: String,
    pub report: Option<LawReport>,
    /// Set when the check stopped at a resource cap.
    pub skipped: Option<String>,
}
