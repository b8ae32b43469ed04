//! Tightness: the closed-form Betti condition and an exhaustive check over
//! induced subcomplexes.

use crate::complex::{binomial, bits, subsets_of_size, Complex, Mask};
use crate::error::{Error, Result};
use crate::homology::{betti, boundary_columns, orientable_over, rank_over, CoefficientField, Column};

use super::{Verdict, Witness};

/// Numerator and denominator of the Betti number a tight member of the
/// class must have: `C(n−k−3, k+1)` over `C(2k+3, k+1)`.
pub fn tightness_ratio(k: u64, n: u64) -> (u64, u64) {
    let num = if n >= k + 3 { binomial(n - k - 3, k + 1) } else { 0 };
    (num, binomial(2 * k + 3, k + 1))
}

/// The required `β_k`, or `None` when the ratio is not an integer.
pub fn tightness_required_beta(k: u64, n: u64) -> Option<u64> {
    let (num, den) = tightness_ratio(k, n);
    (num % den == 0).then_some(num / den)
}

/// Compares `β_k(M; F)` with the closed form in `n = f_0(M)`. A
/// non-integer closed form refutes without computing homology; unmet
/// orientability or neighborliness hypotheses leave the verdict open.
pub fn tightness_beta_condition(m: &Complex, k: i64, field: CoefficientField) -> Verdict {
    if k < 0 {
        return Verdict::unknown().with_note(format!("k = {k} is negative"));
    }
    let n = m.vertex_count() as u64;
    let (num, den) = tightness_ratio(k as u64, n);
    let Some(required) = tightness_required_beta(k as u64, n) else {
        return Verdict::refuted(Witness::Arithmetic { numerator: num, denominator: den, betti: None });
    };
    if !m.is_l_neighborly(k as usize + 1) {
        return Verdict::new(
            super::Status::Unknown,
            Some(Witness::Precondition { reason: format!("not {}-neighborly", k + 1) }),
        );
    }
    if !orientable_over(m, field).unwrap_or(false) {
        return Verdict::new(
            super::Status::Unknown,
            Some(Witness::Precondition { reason: format!("not closed and orientable over {field}") }),
        );
    }
    let b = betti(m, field).reduced_betti.get(k as usize).copied().unwrap_or(0);
    let w = Witness::Arithmetic { numerator: num, denominator: den, betti: Some(b) };
    if b == required {
        Verdict::proved(w)
    } else {
        Verdict::refuted(w)
    }
}

struct Level {
    /// `∂_{j+1}` columns with rows over the `j`-faces.
    cols: Vec<Column<i64>>,
    /// The `(j+1)`-faces, aligned with `cols`.
    tops: Vec<Mask>,
    /// The `j`-faces, indexed like the rows.
    rows: Vec<Mask>,
    rank: usize,
}

/// Checks that every induced subcomplex injects in homology, by rank
/// counting: `H_j(X[U]) → H_j(X)` is injective iff the boundaries of `X`
/// supported on `U` are exactly the boundaries of `X[U]`, i.e.
/// `rank ∂_{j+1}(X) − rank P_U ∂_{j+1}(X) = rank ∂_{j+1}(X[U])` where
/// `P_U` deletes the rows of faces inside `U`.
pub fn is_tight_exhaustive(x: &Complex, field: CoefficientField, max_vertices: usize) -> Result<Verdict> {
    let n = x.vertex_count();
    if n > max_vertices {
        return Err(Error::GuardExceeded { found: n, guard: max_vertices });
    }
    let d = x.dim();
    let levels: Vec<Level> = (0..d.max(0))
        .map(|j| {
            let cols = boundary_columns(x, j + 1);
            let rank = rank_over(&cols, field);
            Level { cols, tops: x.face_masks(j + 1).to_vec(), rows: x.face_masks(j).to_vec(), rank }
        })
        .collect();
    let all: Mask = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
    let mut checked: u64 = 0;
    for size in 1..n {
        for u in subsets_of_size(all, size) {
            checked += 1;
            for (j, lv) in levels.iter().enumerate() {
                let inside: Vec<Column<i64>> = lv
                    .tops
                    .iter()
                    .zip(&lv.cols)
                    .filter(|(t, _)| *t & !u == 0)
                    .map(|(_, c)| c.clone())
                    .collect();
                let projected: Vec<Column<i64>> = lv
                    .cols
                    .iter()
                    .map(|c| c.iter().copied().filter(|&(r, _)| lv.rows[r] & !u != 0).collect::<Column<i64>>())
                    .filter(|c| !c.is_empty())
                    .collect();
                let lhs = lv.rank - rank_over(&projected, field);
                if lhs != rank_over(&inside, field) {
                    let vertices = bits(u).map(|i| x.labels()[i].clone()).collect();
                    return Ok(Verdict::refuted(Witness::Subset { vertices, dimension: j })
                        .with_note(format!("{checked} vertex subsets examined")));
                }
            }
        }
    }
    Ok(Verdict::proved(Witness::Exhausted { nodes: checked }).with_note(format!("{checked} vertex subsets examined")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Status;
    use crate::label::Label;
    use crate::moves::{standard_ball, standard_sphere};

    /// Injectivity by explicit cycle bases over GF(2): the induced map is
    /// injective in degree `j` iff no nonzero combination of a cycle basis of
    /// `X[U]` lies in the boundary space of `X` modulo boundaries of `X[U]`.
    fn oracle_tight(x: &Complex) -> Option<(Mask, usize)> {
        let n = x.vertex_count();
        let d = x.dim();
        fn rank2(mut v: Vec<u128>) -> usize {
            let mut r = 0;
            for bit in 0..128 {
                if let Some(p) = (r..v.len()).find(|&i| v[i] >> bit & 1 == 1) {
                    v.swap(r, p);
                    for i in 0..v.len() {
                        if i != r && v[i] >> bit & 1 == 1 {
                            v[i] ^= v[r];
                        }
                    }
                    r += 1;
                }
            }
            r
        }
        for u in 1..(1u128 << n) - 1 {
            for j in 0..=d {
                let faces = x.face_masks(j);
                let idx = |m: Mask| faces.iter().position(|&f| f == m).unwrap();
                let bd = |t: Mask| bits(t).fold(0u128, |acc, v| acc | 1 << idx(t & !(1 << v)));
                let tops: Vec<Mask> = if j < d { x.face_masks(j + 1).to_vec() } else { vec![] };
                let bx: Vec<u128> = tops.iter().map(|&t| bd(t)).collect();
                let by: Vec<u128> = bx
                    .iter()
                    .zip(tops.iter())
                    .filter(|(_, t)| **t & !u == 0)
                    .map(|(c, _)| *c)
                    .collect();
                // cycles of X[U]: kernel of ∂_j on chains supported in U
                let cells: Vec<usize> = (0..faces.len()).filter(|&i| faces[i] & !u == 0).collect();
                let mut cycles = Vec::new();
                for mask in 1..(1u64 << cells.len()) {
                    let chain: u128 = (0..cells.len()).filter(|&b| mask >> b & 1 == 1).fold(0, |a, b| a | 1 << cells[b]);
                    let is_cycle = j == 0 || {
                        let lower = x.face_masks(j - 1);
                        let mut acc = vec![false; lower.len()];
                        for i in bits(chain) {
                            for v in bits(faces[i]) {
                                let r = faces[i] & !(1 << v);
                                let p = lower.iter().position(|&f| f == r).unwrap();
                                acc[p] ^= true;
                            }
                        }
                        acc.iter().all(|b| !b)
                    };
                    if is_cycle {
                        cycles.push(chain);
                    }
                }
                let z = rank2(cycles.clone());
                let hy = z - rank2(by.clone());
                let img = rank2([cycles.clone(), bx.clone()].concat()) - rank2(bx.clone());
                if img != hy {
                    return Some((u, j as usize));
                }
            }
        }
        None
    }

    fn cone_over(k: i64) -> Complex {
        standard_sphere(k, None).unwrap().cone(Label::name("apex")).unwrap()
    }

    #[test]
    fn balls_and_cones() {
        for field in [CoefficientField::Prime(2), CoefficientField::Rational] {
            for d in 0..=3 {
                let b = standard_ball(d, None).unwrap();
                assert!(is_tight_exhaustive(&b, field, 16).unwrap().is_proved());
            }
            for k in 0..=3 {
                let v = is_tight_exhaustive(&cone_over(k), field, 16).unwrap();
                assert_eq!(v.status, Status::Refuted, "k={k}");
            }
            for d in 1..=3 {
                let s = standard_sphere(d, None).unwrap();
                assert!(is_tight_exhaustive(&s, field, 16).unwrap().is_proved());
            }
        }
    }

    #[test]
    fn rank_test_matches_cycle_oracle() {
        let samples = [
            cone_over(1),
            cone_over(2),
            standard_sphere(2, None).unwrap(),
            Complex::from_facets([[1, 2], [2, 3], [3, 4], [4, 1]]).unwrap(),
            Complex::from_facets([[1, 2, 3], [2, 3, 4], [1, 3, 5]]).unwrap(),
            Complex::from_facets([[1, 2], [3, 4]]).unwrap(),
        ];
        for x in samples {
            let v = is_tight_exhaustive(&x, CoefficientField::Prime(2), 16).unwrap();
            assert_eq!(v.is_proved(), oracle_tight(&x).is_none(), "{x:?}");
        }
    }

    #[test]
    fn guard() {
        let x = standard_ball(4, None).unwrap();
        assert!(matches!(
            is_tight_exhaustive(&x, CoefficientField::Rational, 3),
            Err(Error::GuardExceeded { found: 5, guard: 3 })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(tightness_required_beta(1, 9), Some(1));
        assert_eq!(tightness_required_beta(1, 14), None);
        assert_eq!(tightness_required_beta(2, 12), Some(1));
        let s = standard_sphere(3, None).unwrap();
        // n = 5, k = 1: C(1,2)/C(5,2) = 0 and β_1 = 0
        assert!(tightness_beta_condition(&s, 1, CoefficientField::Rational).is_proved());
    }
}
