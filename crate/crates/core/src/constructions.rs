//! Generators: vertex balls, subset closures, cross-polytopes, the
//! Klee–Novik family, connected sums and the double-suspension pipeline.

use std::collections::{HashMap, HashSet};

use crate::complex::{bits, maximalize, popcount, Complex, Face, Mask};
use crate::error::{Error, Result};
use crate::label::Label;

pub use crate::moves::{standard_ball, standard_sphere};

/// `x̄ ∗ antistar(S, x)`.
pub fn vertex_ball(s: &Complex, x: &Label) -> Result<Complex> {
    let i = s.index_of(x).ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
    let bit: Mask = 1 << i;
    let antistar = maximalize(s.facet_masks().iter().map(|&f| f & !bit).collect());
    let masks = antistar.into_iter().map(|f| f | bit).collect();
    Ok(Complex::from_masks(s.labels().to_vec(), masks))
}

/// All vertex sets whose subsets of size at most `m` are faces of `x`.
pub fn subset_closure(x: &Complex, m: usize) -> Complex {
    if x.is_void() || m == 0 {
        return x.clone();
    }
    let all: Mask = x.facet_masks().iter().fold(0, |a, &f| a | f);
    if m == 1 {
        return x.with_masks(vec![all]);
    }
    let mut kept: Vec<Mask> = x.facet_masks().iter().copied().filter(|&f| popcount(f) < m).collect();
    let mut level: Vec<Mask> = x.face_masks(m as i64 - 1).to_vec();
    while !level.is_empty() {
        kept.extend(level.iter().copied());
        let set: HashSet<Mask> = level.iter().copied().collect();
        let mut next: Vec<Mask> = Vec::new();
        for &a in &level {
            let top = 127 - a.leading_zeros() as usize;
            for v in bits(all).filter(|&v| v > top) {
                let c = a | (1 << v);
                if bits(c).all(|u| u == v || set.contains(&(c & !(1 << u)))) {
                    next.push(c);
                }
            }
        }
        level = next;
    }
    x.with_masks(maximalize(kept))
}

/// The reconstruction `{α : every subset of size ≤ k+1 is a face of S}`.
pub fn murai_nevo_bar_sphere(s: &Complex, k: usize) -> Complex {
    subset_closure(s, k + 1)
}

/// The reconstruction `{α : every subset of size ≤ k+2 is a face of M}`.
pub fn murai_nevo_bar_manifold(m: &Complex, k: usize) -> Complex {
    subset_closure(m, k + 2)
}

/// `S^d_{2d+2}` on `x1..x{d+1}, y1..y{d+1}`, the join of `d+1` copies of `S^0`.
pub fn cross_polytope(d: i64) -> Result<Complex> {
    if d < 0 {
        return Err(Error::BadDimension(d));
    }
    let n = (d + 1) as usize;
    let facets: Vec<Vec<Label>> = (0..1usize << n)
        .map(|signs| {
            (0..n)
                .map(|i| Label::name(&format!("{}{}", if signs >> i & 1 == 0 { 'x' } else { 'y' }, i + 1)))
                .collect()
        })
        .collect();
    Complex::from_facets(facets)
}

/// A sign sequence `(ε_1, ..., ε_n)`; `true` is `+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence(pub Vec<bool>);

impl SignSequence {
    pub fn sign_changes(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// `{x_i : ε_i = +} ∪ {y_i : ε_i = −}`.
    pub fn facet(&self) -> Face {
        Face::new(self.0.iter().enumerate().map(|(i, &p)| kn_vertex(p, i + 1)))
    }

    /// All sequences of length `n` in binary order.
    pub fn all(n: usize) -> impl Iterator<Item = SignSequence> {
        (0..1u64 << n).map(move |m| SignSequence((0..n).map(|i| m >> i & 1 == 0).collect()))
    }
}

fn kn_vertex(plus: bool, j: usize) -> Label {
    Label::name(&format!("{}{}", if plus { 'x' } else { 'y' }, j))
}

fn check_kd(k: i64, d: i64) -> Result<()> {
    if k < 0 || k > d || d > 60 {
        return Err(Error::BadParameters(format!("need 0 <= k <= d, got k={k}, d={d}")));
    }
    Ok(())
}

/// `M̄(k,d)`: the facets of `S^{d+1}_{2d+4}` whose sign sequences have at
/// most `k` sign changes.
pub fn klee_novik_bar(k: i64, d: i64) -> Result<Complex> {
    check_kd(k, d)?;
    let facets: Vec<Face> = SignSequence::all((d + 2) as usize)
        .filter(|s| s.sign_changes() <= k as usize)
        .map(|s| s.facet())
        .collect();
    Complex::from_faces(&facets)
}

/// `M(k,d) = ∂M̄(k,d)`, a triangulation of `S^k × S^{d-k}`.
pub fn klee_novik(k: i64, d: i64) -> Result<Complex> {
    klee_novik_bar(k, d)?.boundary()
}

/// `2·Σ_{j≤k} C(d+1, j)`.
pub fn klee_novik_bar_facet_count(k: i64, d: i64) -> u64 {
    2 * (0..=k).map(|j| crate::complex::binomial((d + 1) as u64, j as u64)).sum::<u64>()
}

/// Reduced Betti numbers of `S^k × S^{d-k}`, indices `0..=d`.
pub fn product_sphere_betti(k: i64, d: i64) -> Vec<u64> {
    let mut b = vec![0u64; (d + 1) as usize];
    for i in [0, k, d - k, d] {
        b[i as usize] += 1;
    }
    b[0] -= 1;
    b
}

/// The permutations `D`, `E`, `R`, `A` acting on `M̄(k,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleeNovikMap {
    D,
    E,
    R,
    A,
}

pub fn klee_novik_map(which: KleeNovikMap, k: i64, d: i64) -> HashMap<Label, Label> {
    let n = (d + 2) as usize;
    let x = |j: usize| kn_vertex(true, j);
    let y = |j: usize| kn_vertex(false, j);
    let mut map = HashMap::new();
    let mut swap = |a: Label, b: Label| {
        map.insert(a.clone(), b.clone());
        map.insert(b, a);
    };
    match which {
        KleeNovikMap::D => (1..=n).for_each(|j| swap(x(j), y(j))),
        KleeNovikMap::E => {
            for j in (1..=n).filter(|&j| 2 * j < n + 1) {
                swap(x(j), x(n + 1 - j));
                swap(y(j), y(n + 1 - j));
            }
        }
        KleeNovikMap::A => (2..=n).step_by(2).for_each(|j| swap(x(j), y(j))),
        KleeNovikMap::R => {
            let xs: Vec<Label> = (1..=n).map(x).collect();
            let ys: Vec<Label> = (1..=n).map(y).collect();
            let cycles = if k % 2 == 0 { vec![xs, ys] } else { vec![[xs, ys].concat()] };
            for cycle in cycles {
                for (i, l) in cycle.iter().enumerate() {
                    map.insert(l.clone(), cycle[(i + 1) % cycle.len()].clone());
                }
            }
        }
    }
    map
}

/// True when the vertex map sends the facet set onto itself.
pub fn is_automorphism(x: &Complex, map: &HashMap<Label, Label>) -> bool {
    x.relabel(map).map(|y| y == *x).unwrap_or(false)
}

/// Facets of `S^{d+1}_{2d+4}` that are not facets of `M̄(k,d)`.
pub fn klee_novik_complement(k: i64, d: i64) -> Result<Complex> {
    check_kd(k, d)?;
    let facets: Vec<Face> = SignSequence::all((d + 2) as usize)
        .filter(|s| s.sign_changes() > k as usize)
        .map(|s| s.facet())
        .collect();
    if facets.is_empty() {
        return Ok(Complex::empty());
    }
    Complex::from_faces(&facets)
}

/// Connected sum along `fx ∈ X` and `fy ∈ Y` with `matching[i] = (u, v)`
/// pairing `u ∈ fx` with `v ∈ fy`. Identified vertices keep `X`'s labels.
///
/// When `fx` is a facet of `X` (closed-style sum) the common facet is
/// removed; when `fx` is a boundary face of codimension one the two
/// complexes are glued along it and nothing is removed.
pub fn connected_sum(x: &Complex, y: &Complex, fx: &Face, fy: &Face, matching: &[(Label, Label)]) -> Result<Complex> {
    let d = x.dim();
    let facet_style = x.is_facet(fx) && y.is_facet(fy);
    let boundary_style = !facet_style
        && fx.dim() == d - 1
        && fy.dim() == y.dim() - 1
        && x.boundary().map(|b| b.is_facet(fx)).unwrap_or(false)
        && y.boundary().map(|b| b.is_facet(fy)).unwrap_or(false);
    if !facet_style && !boundary_style {
        let which = if x.is_facet(fx) || x.boundary().map(|b| b.is_facet(fx)).unwrap_or(false) { fy } else { fx };
        return Err(Error::NotFacet(which.to_string()));
    }
    if x.dim() != y.dim() {
        return Err(Error::BadMatching("complexes differ in dimension".into()));
    }
    let left: HashSet<&Label> = matching.iter().map(|p| &p.0).collect();
    let right: HashSet<&Label> = matching.iter().map(|p| &p.1).collect();
    let fx_set: HashSet<&Label> = fx.labels().iter().collect();
    let fy_set: HashSet<&Label> = fy.labels().iter().collect();
    if matching.len() != fx.len() || left != fx_set || right != fy_set || fx.len() != fy.len() {
        return Err(Error::BadMatching("matching is not a bijection between the two faces".into()));
    }
    for l in y.labels() {
        if !fy.contains(l) && x.index_of(l).is_some() {
            return Err(Error::VertexClash(l.to_string()));
        }
    }
    let rename: HashMap<Label, Label> = matching.iter().map(|(u, v)| (v.clone(), u.clone())).collect();
    let y2 = y.relabel(&rename)?;
    let mut facets: Vec<Face> = x.facets();
    facets.extend(y2.facets());
    if facet_style {
        facets.retain(|f| f != fx);
    } else {
        facets.dedup();
    }
    Complex::from_faces(&facets)
}

/// The named complexes derived from a homology sphere `Σ` and its vertex `apex`.
#[derive(Clone, Debug)]
pub struct DoubleSuspension {
    pub d4_16: Complex,
    pub s5_18: Complex,
    pub d6_18: Complex,
    pub d7_19: Complex,
    pub s6_19: Complex,
}

/// `D = apex̄ ∗ antistar(Σ, apex)`, `D ∗ B¹₂`, `D ∗ B²₃` and their boundaries.
/// The new vertices are `a`, `b` (and `c`).
pub fn double_suspension_pipeline(sigma: &Complex, apex: &Label) -> Result<DoubleSuspension> {
    let d4 = vertex_ball(sigma, apex)?;
    let b12 = Complex::from_facets([["a", "b"]])?;
    let b23 = Complex::from_facets([["a", "b", "c"]])?;
    let d6 = d4.join(&b12)?;
    let d7 = d4.join(&b23)?;
    Ok(DoubleSuspension {
        s5_18: d6.boundary()?,
        s6_19: d7.boundary()?,
        d4_16: d4,
        d6_18: d6,
        d7_19: d7,
    })
}
