//! Stellatedness: exact routes through stacked reconstructions where they
//! are decisive, seeded annealing over reverse moves otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::certificate::{boundary_transport, CertificateKind, MoveCertificate, StartRef};
use crate::complex::{bits, popcount, Complex, Mask, MAX_VERTICES};
use crate::constructions::subset_closure;
use crate::homology::{screen_homology_ball, CoefficientField};
use crate::label::Label;
use crate::moves::{self, bistellar_options, bistellar_result, mask_options_of_index, Move};

use super::shelling::certify_k_shelled;
use super::stacked::is_one_stacked_ball;
use super::{BudgetSpent, SearchBudget, Status, Verdict, Witness};

/// All bistellar moves of `S` with index in `lo..=hi`. Stacked spheres
/// admit none in the range `k+1..=d−k`.
pub fn flip_scan(s: &Complex, lo: i64, hi: i64) -> Vec<Move> {
    bistellar_options(s, lo, hi)
}

fn certificate_verdict(cert: MoveCertificate) -> Verdict {
    Verdict::proved(Witness::Certificate { certificate: cert })
}

/// Decides or searches whether `S` reduces to the standard sphere by
/// bistellar moves of index below `k`.
///
/// Exact answers: `k = 0` (equality with the standard sphere) and `k = 1`
/// for `d ≥ 2` (the 1-stacked reconstruction must have a tree as dual
/// graph). For `d ≥ 2k` the unique candidate ball is shelled first; with
/// `budget.exhaustive` a failed reconstruction or a complete shelling
/// search refutes. Everything else is annealing, which never refutes.
pub fn certify_k_stellated(s: &Complex, k: i64, budget: &SearchBudget) -> Verdict {
    let cls = s.classify();
    if !cls.pure || !cls.closed {
        return Verdict::refuted(Witness::Precondition { reason: "not a closed pseudomanifold".into() });
    }
    let d = s.dim();
    if k < 0 {
        return Verdict::refuted(Witness::Precondition { reason: format!("k = {k} is negative") });
    }
    let k = k.min(d + 1);
    if moves::is_standard_sphere(s) {
        let cert = MoveCertificate::build(CertificateKind::Bistellar, StartRef::describe(s), Vec::new())
            .expect("empty certificate replays");
        return certificate_verdict(cert);
    }
    if k == 0 {
        return Verdict::refuted(Witness::Reconstruction { reason: "not the standard sphere".into() });
    }
    if k == 1 && d >= 2 {
        return one_stellated(s, budget);
    }
    let mut notes = Vec::new();
    if d >= 2 * k {
        match reconstruct_and_shell(s, k, budget) {
            Ok(v) if v.is_proved() => return v,
            Ok(v) => {
                if budget.exhaustive && v.status == Status::Refuted {
                    return v;
                }
                notes.push(format!("stacked reconstruction not shelled: {}", v.status));
            }
            Err(reason) => {
                if budget.exhaustive {
                    return Verdict::refuted(Witness::Reconstruction { reason });
                }
                notes.push(format!("stacked reconstruction failed: {reason}"));
            }
        }
    }
    let v = anneal(s, k, budget);
    notes.into_iter().fold(v, |v, n| v.with_note(n))
}

fn one_stellated(s: &Complex, budget: &SearchBudget) -> Verdict {
    let bar = subset_closure(s, 2);
    let tree = match is_one_stacked_ball(&bar) {
        Ok(v) => v,
        Err(e) => return Verdict::refuted(Witness::Reconstruction { reason: format!("reconstruction: {e}") }),
    };
    if tree.status != Status::Proved {
        return tree.with_note("dual graph of the 1-stacked reconstruction");
    }
    if bar.boundary_unchecked() != *s {
        return Verdict::refuted(Witness::Reconstruction { reason: "reconstruction does not bound the sphere".into() });
    }
    match certify_k_shelled(&bar, 1, budget) {
        v if v.is_proved() => transport(v),
        v => Verdict::unknown().with_spent(v.budget_spent).with_note("tree-shaped reconstruction not shelled within budget"),
    }
}

fn transport(shelled: Verdict) -> Verdict {
    let spent = shelled.budget_spent;
    let cert = shelled.certificate().expect("proved shelling carries a certificate");
    match boundary_transport(cert) {
        Ok(c) => certificate_verdict(c).with_spent(spent),
        Err(e) => Verdict::unknown().with_note(format!("transport failed: {e}")),
    }
}

/// Shells the unique candidate `k`-stacked ball. `Err` explains why the
/// candidate is not a stacked ball bounding `S`.
fn reconstruct_and_shell(s: &Complex, k: i64, budget: &SearchBudget) -> Result<Verdict, String> {
    let bar = subset_closure(s, (k + 1) as usize);
    if bar.dim() != s.dim() + 1 {
        return Err("reconstruction has the wrong dimension".into());
    }
    if !screen_homology_ball(&bar, &CoefficientField::default_screen()).pass {
        return Err("reconstruction fails the ball screen".into());
    }
    if bar.boundary_unchecked() != *s {
        return Err("reconstruction does not bound the sphere".into());
    }
    let v = certify_k_shelled(&bar, k, budget);
    Ok(match v.status {
        Status::Proved => transport(v),
        _ => v,
    })
}

struct Run {
    /// Reverse moves applied to `S`, as masks over the run's label table.
    path: Vec<(Mask, Mask)>,
    facets: Vec<Mask>,
    moves: u64,
}

/// Label table: the sphere's labels plus spare integer labels for index-0
/// moves, sorted.
fn label_table(s: &Complex, spare: usize) -> (Vec<Label>, Vec<Mask>) {
    let mut labels: Vec<Label> = s.labels().to_vec();
    let mut n = 0;
    while labels.len() < s.vertex_count() + spare {
        let l = Label::Num(n);
        if s.index_of(&l).is_none() {
            labels.push(l);
        }
        n += 1;
    }
    labels.sort();
    let map: Vec<usize> = s.labels().iter().map(|l| labels.binary_search(l).expect("present")).collect();
    let facets = s.facet_masks().iter().map(|&f| crate::complex::remap(f, &map)).collect();
    (labels, facets)
}

fn run_once(start: &[Mask], n_labels: usize, d: usize, k: usize, budget: &SearchBudget, seed: u64) -> Option<Run> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (d + 1).saturating_sub(k);
    let mut facets = start.to_vec();
    let mut path = Vec::new();
    let mut temp = budget.initial_temperature;
    let full: Mask = if n_labels == 128 { Mask::MAX } else { (1 << n_labels) - 1 };
    for step in 0..budget.max_moves {
        let used = facets.iter().fold(0 as Mask, |a, &f| a | f);
        if facets.len() == d + 2 && popcount(used) == d + 2 {
            return Some(Run { path, facets, moves: step });
        }
        let mut opts: Vec<(Mask, Mask)> = Vec::new();
        for i in lo.max(1)..=d {
            opts.extend(mask_options_of_index(&facets, d, i));
        }
        if lo == 0 {
            if let Some(v) = bits(full & !used).next() {
                opts.extend(facets.iter().map(|&f| (f, 1 << v)));
            }
        }
        if opts.is_empty() {
            return None;
        }
        let (a, b) = opts[rng.gen_range(0..opts.len())];
        let delta = d as f64 - 2.0 * (popcount(b) as f64 - 1.0);
        if delta > 0.0 && rng.gen::<f64>() >= (-delta / temp.max(1e-9)).exp() {
            temp *= budget.cooling;
            continue;
        }
        facets = bistellar_result(&facets, a, b);
        path.push((a, b));
        temp *= budget.cooling;
    }
    None
}

/// Seeded annealing on reverse moves of index at least `d − k + 1`, energy
/// the facet count; restarts use seeds `seed, seed+1, ...` and the first
/// successful restart in that order wins.
fn anneal(s: &Complex, k: i64, budget: &SearchBudget) -> Verdict {
    let d = s.dim() as usize;
    let k = k as usize;
    let spare = if k > d { 8.min(MAX_VERTICES - s.vertex_count()) } else { 0 };
    let (labels, start) = label_table(s, spare);
    let restarts = budget.restarts.max(1);
    let attempt = |r: u64| run_once(&start, labels.len(), d, k, budget, budget.seed.wrapping_add(r));
    let found = if budget.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(budget.jobs).build();
        match pool {
            Ok(p) => p.install(|| (0..restarts).into_par_iter().map(|r| (r, attempt(r))).find_first(|x| x.1.is_some())),
            Err(_) => (0..restarts).map(|r| (r, attempt(r))).find(|x| x.1.is_some()),
        }
    } else {
        (0..restarts).map(|r| (r, attempt(r))).find(|x| x.1.is_some())
    };
    let mut spent = BudgetSpent { seed: budget.seed, restarts, ..Default::default() };
    let Some((r, Some(run))) = found else {
        spent.moves = restarts * budget.max_moves;
        return Verdict::unknown().with_spent(spent).with_note("annealing did not reach the standard sphere");
    };
    spent.restarts = r + 1;
    spent.moves = run.moves;
    let table = Complex::from_masks(labels.clone(), vec![Mask::MAX >> (128 - labels.len())]);
    let end = table.with_masks(run.facets.clone());
    let forward: Vec<Move> = run
        .path
        .iter()
        .rev()
        .map(|&(a, b)| Move::new(table.face_of(b), table.face_of(a)))
        .collect();
    match MoveCertificate::build(CertificateKind::Bistellar, StartRef::describe(&end), forward) {
        Ok(cert) => certificate_verdict(cert).with_spent(spent),
        Err(e) => Verdict::unknown().with_spent(spent).with_note(format!("certificate failed to replay: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cross_polytope;
    use crate::moves::{standard_ball, standard_sphere};

    fn c(raw: &[&[i64]]) -> Complex {
        Complex::from_facets(raw.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn check(v: &Verdict, s: &Complex, k: i64) {
        let cert = v.certificate().expect("certificate");
        assert_eq!(cert.replay().unwrap().result, *s);
        assert!(cert.max_index().unwrap_or(-1) < k);
    }

    #[test]
    fn standard_sphere_trivially() {
        let s = standard_sphere(3, None).unwrap();
        let v = certify_k_stellated(&s, 0, &SearchBudget::default());
        assert!(v.is_proved());
        assert!(v.certificate().unwrap().moves.is_empty());
    }

    #[test]
    fn k_zero_is_equality() {
        let s = c(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]).boundary().unwrap();
        assert_eq!(certify_k_stellated(&s, 0, &SearchBudget::default()).status, Status::Refuted);
    }

    #[test]
    fn stacked_sphere_is_one_stellated() {
        let s = c(&[&[1, 2, 3, 4], &[2, 3, 4, 5], &[3, 4, 5, 6]]).boundary().unwrap();
        let v = certify_k_stellated(&s, 1, &SearchBudget::default());
        check(&v, &s, 1);
    }

    #[test]
    fn octahedron() {
        let x = cross_polytope(2).unwrap();
        assert_eq!(certify_k_stellated(&x, 1, &SearchBudget::default()).status, Status::Refuted);
        let v = certify_k_stellated(&x, 2, &SearchBudget::default());
        check(&v, &x, 2);
    }

    #[test]
    fn cycles_reduce() {
        let hexagon = c(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 1]]);
        let v = certify_k_stellated(&hexagon, 1, &SearchBudget::default());
        check(&v, &hexagon, 1);
    }

    #[test]
    fn full_range_uses_fresh_vertices() {
        let x = cross_polytope(1).unwrap();
        let v = certify_k_stellated(&x, 2, &SearchBudget::default());
        check(&v, &x, 2);
    }

    #[test]
    fn non_closed_refuted() {
        let b = standard_ball(2, None).unwrap();
        assert_eq!(certify_k_stellated(&b, 1, &SearchBudget::default()).status, Status::Refuted);
    }

    #[test]
    fn flip_scan_on_stacked_sphere() {
        let s = c(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]).boundary().unwrap();
        // both degree-3 vertices can be removed
        let expected = vec![
            Move::new(crate::Face::new([1]), crate::Face::new([2, 3, 4])),
            Move::new(crate::Face::new([5]), crate::Face::new([2, 3, 4])),
        ];
        assert_eq!(flip_scan(&s, 2, 2), expected);
    }
}
