//! Complete backtracking search for `k`-shelling orders.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::certificate::{CertificateKind, MoveCertificate, StartRef};
use crate::complex::{popcount, Complex, Mask};
use crate::moves::{self, shelling_split, Move};

use super::{BudgetSpent, SearchBudget, Verdict, Witness};

struct Frame {
    set: FixedBitSet,
    /// Candidate facet index with the split `(α, β)` it attaches by.
    options: Vec<(usize, Mask, Mask)>,
    next: usize,
}

fn options(facets: &[Mask], set: &FixedBitSet, k: usize) -> Vec<(usize, Mask, Mask)> {
    let current: Vec<Mask> = set.ones().map(|i| facets[i]).collect();
    let d = popcount(facets[0]);
    (0..facets.len())
        .filter(|&i| !set.contains(i))
        .filter(|&i| current.iter().any(|&c| popcount(c & facets[i]) + 1 == d))
        .filter_map(|i| {
            let (a, b) = shelling_split(&current, facets[i])?;
            (popcount(b) <= k).then_some((i, a, b))
        })
        .collect()
}

/// Searches for a sequence of shelling moves of index below `k` that builds
/// `B` from one of its facets. Every reachable set of already shelled facets
/// is explored at most once, so exhausting the search refutes.
pub fn certify_k_shelled(b: &Complex, k: i64, budget: &SearchBudget) -> Verdict {
    let cls = b.classify();
    if !cls.pure || !cls.weak_pseudomanifold {
        return Verdict::refuted(Witness::Precondition { reason: "not a pure pseudomanifold".into() });
    }
    let dim = b.dim();
    if k < 0 {
        return Verdict::refuted(Witness::Precondition { reason: format!("k = {k} is negative") });
    }
    let mut notes = Vec::new();
    let k = if k > dim {
        notes.push(format!("k clamped to the dimension {dim}"));
        dim
    } else {
        k
    } as usize;
    let facets = b.facet_masks();
    let n = facets.len();
    let mut spent = BudgetSpent { seed: budget.seed, ..Default::default() };
    let mut failed: HashSet<FixedBitSet> = HashSet::new();
    let finish = |v: Verdict, spent: BudgetSpent, notes: &[String]| {
        notes.iter().fold(v.with_spent(spent), |v, n| v.with_note(n.clone()))
    };

    for first in 0..n {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(first);
        if failed.contains(&set) {
            continue;
        }
        let opts = options(facets, &set, k);
        let mut stack = vec![Frame { set, options: opts, next: 0 }];
        let mut path: Vec<(Mask, Mask)> = Vec::new();
        while let Some(top) = stack.last_mut() {
            if top.set.count_ones(..) == n {
                let start = moves::standard_ball(dim, Some(b.face_of(facets[first]).labels()))
                    .expect("a facet spans a simplex");
                let mv = path.iter().map(|&(a, bb)| Move::new(b.face_of(a), b.face_of(bb))).collect();
                let cert = MoveCertificate::build(CertificateKind::Shelling, StartRef::describe(&start), mv)
                    .expect("search only takes valid shelling moves");
                return finish(Verdict::proved(Witness::Certificate { certificate: cert }), spent, &notes);
            }
            if top.next >= top.options.len() {
                let done = stack.pop().expect("non-empty stack");
                failed.insert(done.set);
                path.pop();
                continue;
            }
            let (i, a, bb) = top.options[top.next];
            top.next += 1;
            let mut set = top.set.clone();
            set.insert(i);
            if failed.contains(&set) {
                continue;
            }
            spent.nodes += 1;
            if spent.nodes > budget.max_nodes {
                return finish(Verdict::unknown(), spent, &notes);
            }
            let opts = options(facets, &set, k);
            path.push((a, bb));
            stack.push(Frame { set, options: opts, next: 0 });
        }
    }
    finish(Verdict::refuted(Witness::Exhausted { nodes: spent.nodes }), spent, &notes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Status;
    use crate::moves::standard_ball;

    fn c(raw: &[&[i64]]) -> Complex {
        Complex::from_facets(raw.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn simplex_needs_no_moves() {
        let b = standard_ball(3, None).unwrap();
        let v = certify_k_shelled(&b, 0, &SearchBudget::default());
        assert!(v.is_proved());
        assert!(v.certificate().unwrap().moves.is_empty());
    }

    #[test]
    fn index_bound_matters() {
        let b = c(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 1]]);
        // the third triangle attaches along two edges: an index-1 move
        assert_eq!(certify_k_shelled(&b, 1, &SearchBudget::default()).status, Status::Refuted);
        let v = certify_k_shelled(&b, 2, &SearchBudget::default());
        assert!(v.is_proved());
        let r = v.certificate().unwrap().replay().unwrap();
        assert_eq!(r.result, b);
    }

    #[test]
    fn path_of_triangles_is_one_shelled() {
        let b = c(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6]]);
        let v = certify_k_shelled(&b, 1, &SearchBudget::default());
        assert!(v.is_proved());
        assert_eq!(v.certificate().unwrap().max_index(), Some(0));
    }

    #[test]
    fn budget_cutoff_is_unknown() {
        let b = c(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6]]);
        let tiny = SearchBudget { max_nodes: 1, ..Default::default() };
        assert_eq!(certify_k_shelled(&b, 1, &tiny).status, Status::Unknown);
    }

    #[test]
    fn disconnected_is_refuted() {
        let b = c(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(certify_k_shelled(&b, 2, &SearchBudget::default()).status, Status::Refuted);
    }
}
