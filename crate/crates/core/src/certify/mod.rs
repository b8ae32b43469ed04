//! Decision procedures and budgeted searches.
//!
//! Every check returns a [`Verdict`]. `PROVED` carries a replayable
//! certificate or a finite structural witness, `REFUTED` a finite
//! counterexample, `UNKNOWN` the budget that ran out. Verdicts resting on a
//! homology screen say so in their notes.

use serde::{Deserialize, Serialize};

use crate::certificate::MoveCertificate;
use crate::complex::Face;
use crate::homology::CoefficientField;
use crate::label::Label;

pub mod classes;
pub mod collapse;
pub mod ears;
pub mod shelling;
pub mod stacked;
pub mod stellated;
pub mod tightness;

pub use classes::{is_in_class, WalkupClass};
pub use collapse::collapse;
pub use ears::{ear_scan, ear_scan_with, EarMode, EarReport};
pub use shelling::certify_k_shelled;
pub use stacked::{certify_k_stacked_sphere, certify_k_stacked_sphere_with, is_k_stacked_ball, is_one_stacked_ball};
pub use stellated::{certify_k_stellated, flip_scan};
pub use tightness::{is_tight_exhaustive, tightness_beta_condition, tightness_required_beta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Proved,
    Refuted,
    Unknown,
}

impl Status {
    /// CLI exit code: 0, 1 or 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Proved => 0,
            Status::Refuted => 1,
            Status::Unknown => 2,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Proved => "PROVED",
            Status::Refuted => "REFUTED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Certificate { certificate: MoveCertificate },
    /// Faces up to `dimension` all lie in the boundary.
    SkeletonEquality { dimension: i64 },
    InteriorFace { face: Face },
    Tree { edges: Vec<(Face, Face)> },
    NotTree { nodes: usize, edges: usize, connected: bool },
    /// A ball whose boundary is the input sphere.
    Ball { facets: Vec<Face> },
    /// Why a reconstruction or candidate failed.
    Reconstruction { reason: String },
    Exhausted { nodes: u64 },
    Collapse { steps: Vec<(Face, Face)> },
    Subset { vertices: Vec<Label>, dimension: usize },
    Link { vertex: Label, status: Status, witness: Option<Box<Witness>> },
    Links { checked: Vec<Label> },
    Arithmetic { numerator: u64, denominator: u64, betti: Option<u64> },
    Precondition { reason: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BudgetSpent {
    pub nodes: u64,
    pub moves: u64,
    pub restarts: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub budget_spent: BudgetSpent,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status, witness: Option<Witness>) -> Verdict {
        Verdict { status, witness, budget_spent: BudgetSpent::default(), notes: Vec::new() }
    }

    pub fn proved(w: Witness) -> Verdict {
        Verdict::new(Status::Proved, Some(w))
    }

    pub fn refuted(w: Witness) -> Verdict {
        Verdict::new(Status::Refuted, Some(w))
    }

    pub fn unknown() -> Verdict {
        Verdict::new(Status::Unknown, None)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.notes.push(note.into());
        self
    }

    pub fn with_spent(mut self, spent: BudgetSpent) -> Verdict {
        self.budget_spent = spent;
        self
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn certificate(&self) -> Option<&MoveCertificate> {
        match &self.witness {
            Some(Witness::Certificate { certificate }) => Some(certificate),
            _ => None,
        }
    }
}

/// Search limits and annealing parameters.
///
/// Defaults: 2 000 000 nodes, 20 000 moves per restart, 16 restarts, seed 0,
/// initial temperature 1.0, cooling factor 0.995 per move, one worker.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_moves: u64,
    pub seed: u64,
    pub restarts: u64,
    pub initial_temperature: f64,
    pub cooling: f64,
    pub jobs: usize,
    /// Escalate stellatedness to an exact decision through the unique
    /// stacked reconstruction and a complete shelling search (`d ≥ 2k`).
    pub exhaustive: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000,
            max_moves: 20_000,
            seed: 0,
            restarts: 16,
            initial_temperature: 1.0,
            cooling: 0.995,
            jobs: 1,
            exhaustive: false,
        }
    }
}

pub(crate) fn screen_note(fields: &[CoefficientField]) -> String {
    let names: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
    format!("modulo field screen over {{{}}}", names.join(","))
}
