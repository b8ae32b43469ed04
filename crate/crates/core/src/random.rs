//! Seeded random generators of shelled balls and stellated spheres, with
//! the certificates that build them.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::certificate::{CertificateKind, MoveCertificate, StartRef};
use crate::complex::{bits, popcount, Complex, Mask};
use crate::error::Result;
use crate::label::Label;
use crate::moves::{self, apply_bistellar, bistellar_options, shelling_split, Move};

/// Grows a `d`-ball from `B^d_{d+1}` by `steps` random shelling moves of
/// index below `k` (`1 ≤ k ≤ d`). Index-0 moves add a new vertex; other
/// moves attach along boundary ridges only, so the result stays a ball.
pub fn random_k_shelled_ball<R: Rng>(d: usize, k: usize, steps: usize, rng: &mut R) -> Result<(Complex, MoveCertificate)> {
    let k = k.clamp(1, d.max(1));
    let start = moves::standard_ball(d as i64, None)?;
    let mut labels: Vec<Label> = start.labels().to_vec();
    let mut facets: Vec<Mask> = start.facet_masks().to_vec();
    let mut path: Vec<(Mask, Mask)> = Vec::new();
    for _ in 0..steps {
        let mut ridges: std::collections::HashMap<Mask, usize> = std::collections::HashMap::new();
        for &f in &facets {
            for v in bits(f) {
                *ridges.entry(f & !(1 << v)).or_default() += 1;
            }
        }
        let mut boundary: Vec<Mask> = ridges.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
        boundary.sort_unstable();
        let used = facets.iter().fold(0 as Mask, |a, &f| a | f);
        let mut cands: Vec<(Mask, Mask)> = Vec::new();
        for &r in &boundary {
            for v in bits(used & !r) {
                let s = r | (1 << v);
                if let Some((a, b)) = shelling_split(&facets, s) {
                    let in_boundary = bits(b).all(|u| boundary.binary_search(&(s & !(1 << u))).is_ok());
                    if popcount(b) <= k && popcount(b) >= 2 && in_boundary {
                        cands.push((a, b));
                    }
                }
            }
        }
        cands.sort_unstable();
        cands.dedup();
        let fresh = labels.len() < 120 && (cands.is_empty() || rng.gen_bool(0.5));
        let (a, b) = if fresh {
            let r = *boundary.choose(rng).expect("a ball has boundary");
            let v = labels.len();
            labels.push(Label::Num(v as i64 + 1));
            (r, 1 << v)
        } else if let Some(&m) = cands.choose(rng) {
            m
        } else {
            break;
        };
        facets.push(a | b);
        path.push((a, b));
    }
    let table = Complex::from_masks(labels.clone(), vec![Mask::MAX >> (128 - labels.len())]);
    let mv: Vec<Move> = path.iter().map(|&(a, b)| Move::new(table.face_of(a), table.face_of(b))).collect();
    let cert = MoveCertificate::build(CertificateKind::Shelling, StartRef::describe(&start), mv)?;
    let ball = cert.replay()?.result;
    Ok((ball, cert))
}

/// Applies `steps` random bistellar moves of index below `k` to
/// `S^d_{d+2}`. Index-0 moves add the smallest unused integer label.
pub fn random_k_stellated_sphere<R: Rng>(d: usize, k: usize, steps: usize, rng: &mut R) -> Result<(Complex, MoveCertificate)> {
    let start = moves::standard_sphere(d as i64, None)?;
    let mut x = start.clone();
    let mut path = Vec::new();
    for _ in 0..steps {
        if k == 0 {
            break;
        }
        let opts = bistellar_options(&x, 0, k as i64 - 1);
        let Some(m) = opts.choose(rng) else { break };
        x = apply_bistellar(&x, m)?;
        path.push(m.clone());
    }
    let cert = MoveCertificate::build(CertificateKind::Bistellar, StartRef::describe(&start), path)?;
    Ok((x, cert))
}

/// Boundary of a random index-0 shelled `(d+1)`-ball: a stacked `d`-sphere.
pub fn random_stacked_sphere<R: Rng>(d: usize, steps: usize, rng: &mut R) -> Result<Complex> {
    random_k_shelled_ball(d + 1, 1, steps, rng)?.0.boundary()
}
