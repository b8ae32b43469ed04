//! Randomized greedy collapsing.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{bits, popcount, subsets_of_size, Complex, Face, Mask};

use super::{BudgetSpent, SearchBudget, Verdict, Witness};

struct Lattice {
    faces: HashSet<Mask>,
    /// Number of faces one dimension up containing each face.
    cofaces: HashMap<Mask, usize>,
}

impl Lattice {
    fn new(x: &Complex) -> Lattice {
        let mut faces = HashSet::new();
        for &f in x.facet_masks() {
            for s in 1..=popcount(f) {
                faces.extend(subsets_of_size(f, s));
            }
        }
        let mut cofaces: HashMap<Mask, usize> = faces.iter().map(|&f| (f, 0)).collect();
        for &f in &faces {
            for i in bits(f) {
                let r = f & !(1 << i);
                if r != 0 {
                    *cofaces.get_mut(&r).expect("closed under subsets") += 1;
                }
            }
        }
        Lattice { faces, cofaces }
    }

    fn unique_coface(&self, s: Mask, all: Mask) -> Option<Mask> {
        bits(all & !s).map(|v| s | (1 << v)).find(|c| self.faces.contains(c))
    }

    fn free_pairs(&self, all: Mask) -> Vec<(Mask, Mask)> {
        let mut out: Vec<(Mask, Mask)> = self
            .faces
            .iter()
            .filter(|&&s| self.cofaces[&s] == 1)
            .filter_map(|&s| {
                let t = self.unique_coface(s, all)?;
                (self.cofaces[&t] == 0).then_some((s, t))
            })
            .collect();
        out.sort_unstable_by(|a, b| crate::complex::lex_cmp(a.0, b.0).then(crate::complex::lex_cmp(a.1, b.1)));
        out
    }

    fn remove(&mut self, f: Mask) {
        self.faces.remove(&f);
        self.cofaces.remove(&f);
        for i in bits(f) {
            let r = f & !(1 << i);
            if let Some(c) = self.cofaces.get_mut(&r) {
                *c -= 1;
            }
        }
    }
}

/// Elementary collapses chosen uniformly at random among the free pairs,
/// restarted with fresh seeds until one run ends at a single vertex.
pub fn collapse(b: &Complex, budget: &SearchBudget) -> Verdict {
    let mut spent = BudgetSpent { seed: budget.seed, ..Default::default() };
    if b.is_void() {
        return Verdict::unknown().with_note("void complex").with_spent(spent);
    }
    let all = b.all_vertices_mask();
    let base = Lattice::new(b);
    for r in 0..budget.restarts.max(1) {
        spent.restarts = r + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(r));
        let mut lat = Lattice { faces: base.faces.clone(), cofaces: base.cofaces.clone() };
        let mut steps: Vec<(Mask, Mask)> = Vec::new();
        while lat.faces.len() > 1 {
            let pairs = lat.free_pairs(all);
            let Some(&(s, t)) = pairs.choose(&mut rng) else { break };
            spent.moves += 1;
            lat.remove(t);
            lat.remove(s);
            steps.push((s, t));
            if spent.moves > budget.max_moves.saturating_mul(budget.restarts.max(1)) {
                return Verdict::unknown().with_spent(spent);
            }
        }
        if lat.faces.len() == 1 {
            let steps: Vec<(Face, Face)> = steps.into_iter().map(|(s, t)| (b.face_of(s), b.face_of(t))).collect();
            return Verdict::proved(Witness::Collapse { steps }).with_spent(spent);
        }
    }
    Verdict::unknown().with_spent(spent)
}
