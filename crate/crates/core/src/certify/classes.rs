//! Membership in the classes defined by conditions on vertex links.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Face};
use crate::label::Label;
use crate::symmetry;

use super::stacked::certify_k_stacked_sphere;
use super::stellated::certify_k_stellated;
use super::{BudgetSpent, SearchBudget, Status, Verdict, Witness};

/// `W`: every vertex link `k`-stellated. `K`: every vertex link `k`-stacked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WalkupClass {
    W,
    K,
}

/// Vertices whose links represent every link up to automorphism: one per
/// orbit when the group is small enough to compute, else all.
fn representatives(m: &Complex) -> (Vec<Label>, bool) {
    match symmetry::automorphism_group(m, symmetry::DEFAULT_GUARD) {
        Ok(g) => (g.orbits.iter().map(|o| o[0].clone()).collect(), true),
        Err(_) => (m.vertices(), false),
    }
}

/// Checks the link condition at one vertex per orbit.
pub fn is_in_class(m: &Complex, k: i64, class: WalkupClass, budget: &SearchBudget) -> Verdict {
    let (reps, by_orbit) = representatives(m);
    let mut spent = BudgetSpent { seed: budget.seed, ..Default::default() };
    let mut open: Option<Label> = None;
    for v in &reps {
        let link = match m.link(&Face::new([v.clone()])) {
            Ok(l) => l,
            Err(e) => return Verdict::unknown().with_note(format!("link of {v}: {e}")),
        };
        let lv = match class {
            WalkupClass::W => certify_k_stellated(&link, k, budget),
            WalkupClass::K => certify_k_stacked_sphere(&link, k),
        };
        spent.nodes += lv.budget_spent.nodes;
        spent.moves += lv.budget_spent.moves;
        match lv.status {
            Status::Proved => {}
            Status::Refuted => {
                return Verdict::refuted(Witness::Link {
                    vertex: v.clone(),
                    status: Status::Refuted,
                    witness: lv.witness.map(Box::new),
                })
                .with_spent(spent);
            }
            Status::Unknown => {
                open.get_or_insert_with(|| v.clone());
            }
        }
    }
    let note = if by_orbit { "one link per automorphism orbit" } else { "every vertex link" };
    match open {
        Some(vertex) => Verdict::new(Status::Unknown, Some(Witness::Link { vertex, status: Status::Unknown, witness: None }))
            .with_spent(spent)
            .with_note(note),
        None => Verdict::proved(Witness::Links { checked: reps }).with_spent(spent).with_note(note),
    }
}
