//! Automorphism groups and isomorphisms of complexes.
//!
//! The search individualizes one vertex at a time and refines colors by the
//! facets each vertex lies in. The group order is the product of the orbit
//! sizes along a pointwise stabilizer chain, each orbit found by searching
//! for automorphisms that fix the earlier base points.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::complex::{bits, Complex, Mask, UnionFind};
use crate::constructions::klee_novik;
use crate::error::{Error, Result};
use crate::label::Label;

/// Default vertex-count guard for the searches.
pub const DEFAULT_GUARD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    /// Vertex permutations, each as a map of every vertex to its image.
    pub generators: Vec<Vec<(Label, Label)>>,
    #[serde(serialize_with = "serialize_order")]
    pub order: BigUint,
    pub orbits: Vec<Vec<Label>>,
}

fn serialize_order<S: serde::Serializer>(o: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&o.to_string())
}

impl AutGroup {
    pub fn is_vertex_transitive(&self) -> bool {
        self.orbits.len() == 1
    }

    /// Generators in cycle notation, fixed points omitted.
    pub fn cycles(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| {
                let map: HashMap<&Label, &Label> = g.iter().map(|(a, b)| (a, b)).collect();
                let mut seen: HashSet<&Label> = HashSet::new();
                let mut out = String::new();
                for (start, _) in g {
                    if seen.contains(start) || map[start] == start {
                        continue;
                    }
                    let mut cyc = vec![start.to_string()];
                    seen.insert(start);
                    let mut cur = map[start];
                    while cur != start {
                        seen.insert(cur);
                        cyc.push(cur.to_string());
                        cur = map[cur];
                    }
                    out.push_str(&format!("({})", cyc.join(" ")));
                }
                if out.is_empty() {
                    "()".into()
                } else {
                    out
                }
            })
            .collect()
    }
}

/// Facets over a vertex table `0..n`.
struct Hyper {
    n: usize,
    facets: Vec<Mask>,
    set: HashSet<Mask>,
    /// Facets containing each vertex.
    incident: Vec<Vec<usize>>,
}

impl Hyper {
    fn new(x: &Complex) -> Hyper {
        let facets = x.facet_masks().to_vec();
        let n = x.vertex_count();
        let mut incident = vec![Vec::new(); n];
        for (i, &f) in facets.iter().enumerate() {
            for v in bits(f) {
                incident[v].push(i);
            }
        }
        Hyper { n, set: facets.iter().copied().collect(), facets, incident }
    }

    fn preserves(&self, other: &Hyper, perm: &[usize]) -> bool {
        self.facets.iter().all(|&f| other.set.contains(&bits(f).fold(0 as Mask, |a, v| a | (1 << perm[v]))))
    }
}

/// Joint color refinement of two colorings. Returns `None` when the color
/// multisets diverge.
fn refine(a: &Hyper, ca: &mut Vec<usize>, b: &Hyper, cb: &mut Vec<usize>) -> Option<()> {
    loop {
        let sig = |h: &Hyper, c: &[usize]| -> Vec<(usize, Vec<Vec<usize>>)> {
            (0..h.n)
                .map(|v| {
                    let mut fs: Vec<Vec<usize>> = h.incident[v]
                        .iter()
                        .map(|&f| {
                            let mut cs: Vec<usize> = bits(h.facets[f] & !(1 << v)).map(|u| c[u]).collect();
                            cs.sort_unstable();
                            cs
                        })
                        .collect();
                    fs.sort_unstable();
                    (c[v], fs)
                })
                .collect()
        };
        let sa = sig(a, ca);
        let sb = sig(b, cb);
        let mut all: Vec<&(usize, Vec<Vec<usize>>)> = sa.iter().chain(sb.iter()).collect();
        all.sort();
        all.dedup();
        let id = |s: &(usize, Vec<Vec<usize>>)| all.binary_search(&s).expect("present");
        let na: Vec<usize> = sa.iter().map(id).collect();
        let nb: Vec<usize> = sb.iter().map(id).collect();
        let mut ha = na.clone();
        let mut hb = nb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let before = classes(ca);
        *ca = na;
        *cb = nb;
        if classes(ca) == before {
            return Some(());
        }
    }
}

fn classes(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Searches for a facet-preserving bijection `a → b` compatible with the
/// given colorings.
fn extend(a: &Hyper, mut ca: Vec<usize>, b: &Hyper, mut cb: Vec<usize>) -> Option<Vec<usize>> {
    refine(a, &mut ca, b, &mut cb)?;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *counts.entry(c).or_default() += 1;
    }
    let split = counts.iter().filter(|(_, &n)| n > 1).map(|(&c, _)| c).min();
    match split {
        None => {
            let mut perm = vec![0; a.n];
            for v in 0..a.n {
                perm[v] = cb.iter().position(|&c| c == ca[v]).expect("same colors");
            }
            a.preserves(b, &perm).then_some(perm)
        }
        Some(c) => {
            let v = ca.iter().position(|&x| x == c).expect("class is non-empty");
            let fresh = ca.iter().chain(cb.iter()).max().copied().unwrap_or(0) + 1;
            let mut na = ca.clone();
            na[v] = fresh;
            for w in (0..b.n).filter(|&w| cb[w] == c) {
                let mut nb = cb.clone();
                nb[w] = fresh;
                if let Some(p) = extend(a, na.clone(), b, nb) {
                    return Some(p);
                }
            }
            None
        }
    }
}

/// Initial coloring individualizing `fixed[i]` with color `i + 1`.
fn individualize(n: usize, fixed: &[usize]) -> Vec<usize> {
    let mut c = vec![0; n];
    for (i, &v) in fixed.iter().enumerate() {
        c[v] = i + 1;
    }
    c
}

fn orbit_of(v: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![v];
    let mut i = 0;
    while i < seen.len() {
        for g in gens {
            let w = g[seen[i]];
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen
}

fn check_guard(x: &Complex, guard: usize) -> Result<()> {
    if x.vertex_count() > guard {
        return Err(Error::GuardExceeded { found: x.vertex_count(), guard });
    }
    Ok(())
}

/// The full automorphism group, as generators, exact order and orbits.
pub fn automorphism_group(x: &Complex, guard: usize) -> Result<AutGroup> {
    check_guard(x, guard)?;
    let h = Hyper::new(x);
    let n = h.n;
    // base: individualize the first vertex of the first non-trivial class
    // until the refined coloring is discrete
    let mut base: Vec<usize> = Vec::new();
    loop {
        let mut c = individualize(n, &base);
        let mut c2 = c.clone();
        refine(&h, &mut c, &h, &mut c2).expect("self-refinement agrees");
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &col in &c {
            *counts.entry(col).or_default() += 1;
        }
        match counts.iter().filter(|(_, &k)| k > 1).map(|(&col, _)| col).min() {
            None => break,
            Some(col) => base.push(c.iter().position(|&x| x == col).expect("non-empty")),
        }
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order = BigUint::from(1u32);
    for i in (0..base.len()).rev() {
        let prefix = &base[..i];
        let bi = base[i];
        let mut orbit = orbit_of(bi, &gens);
        let mut ca = individualize(n, prefix);
        let mut cb = ca.clone();
        refine(&h, &mut ca, &h, &mut cb).expect("self-refinement agrees");
        for c in 0..n {
            if orbit.contains(&c) || ca[c] != ca[bi] {
                continue;
            }
            let mut fa = prefix.to_vec();
            fa.push(bi);
            let mut fb = prefix.to_vec();
            fb.push(c);
            if let Some(p) = extend(&h, individualize(n, &fa), &h, individualize(n, &fb)) {
                gens.push(p);
                orbit = orbit_of(bi, &gens);
            }
        }
        order *= BigUint::from(orbit.len());
    }
    let mut uf = UnionFind::new(n);
    for g in &gens {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w);
        }
    }
    let mut groups: HashMap<usize, Vec<Label>> = HashMap::new();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(x.labels()[v].clone());
    }
    let mut orbits: Vec<Vec<Label>> = groups.into_values().collect();
    orbits.sort();
    let mut generators: Vec<Vec<(Label, Label)>> = gens
        .iter()
        .map(|g| g.iter().enumerate().map(|(v, &w)| (x.labels()[v].clone(), x.labels()[w].clone())).collect())
        .collect();
    generators.sort();
    Ok(AutGroup { generators, order, orbits })
}

/// A facet-preserving bijection from the vertices of `x` to those of `y`.
pub fn is_isomorphic(x: &Complex, y: &Complex, guard: usize) -> Result<Option<HashMap<Label, Label>>> {
    check_guard(x, guard)?;
    check_guard(y, guard)?;
    if x.dim() != y.dim() || x.vertex_count() != y.vertex_count() || x.f_vector() != y.f_vector() {
        return Ok(None);
    }
    let (hx, hy) = (Hyper::new(x), Hyper::new(y));
    if hx.facets.len() != hy.facets.len() {
        return Ok(None);
    }
    let n = hx.n;
    Ok(extend(&hx, vec![0; n], &hy, vec![0; n]).map(|p| {
        p.iter().enumerate().map(|(v, &w)| (x.labels()[v].clone(), y.labels()[w].clone())).collect()
    }))
}

/// Computed order of `Aut(M(k, 2k))` next to `16(k+1)`, the order of the
/// subgroup generated by the four explicit maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Question2Report {
    pub k: i64,
    pub vertices: usize,
    #[serde(serialize_with = "serialize_order")]
    pub order: BigUint,
    pub comparison: u64,
    pub equal: bool,
    pub generators: Vec<String>,
}

pub fn explore_question_2(k: i64, guard: usize) -> Result<Question2Report> {
    if k < 0 {
        return Err(Error::BadParameters(format!("k = {k} is negative")));
    }
    let m = klee_novik(k, 2 * k)?;
    let g = automorphism_group(&m, guard)?;
    let comparison = 16 * (k as u64 + 1);
    Ok(Question2Report {
        k,
        vertices: m.vertex_count(),
        equal: g.order == BigUint::from(comparison),
        generators: g.cycles(),
        order: g.order,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cross_polytope, klee_novik_bar};
    use crate::moves::standard_sphere;

    /// Counts automorphisms over all permutations.
    fn brute_order(x: &Complex) -> u64 {
        let h = Hyper::new(x);
        let mut perm: Vec<usize> = (0..h.n).collect();
        let mut count = 0;
        fn rec(h: &Hyper, perm: &mut Vec<usize>, i: usize, count: &mut u64) {
            if i == perm.len() {
                if h.preserves(h, perm) {
                    *count += 1;
                }
                return;
            }
            for j in i..perm.len() {
                perm.swap(i, j);
                rec(h, perm, i + 1, count);
                perm.swap(i, j);
            }
        }
        rec(&h, &mut perm, 0, &mut count);
        count
    }

    #[test]
    fn standard_spheres_have_full_symmetry() {
        for d in 0..5 {
            let s = standard_sphere(d, None).unwrap();
            let g = automorphism_group(&s, DEFAULT_GUARD).unwrap();
            let fact: u64 = (1..=(d as u64 + 2)).product();
            assert_eq!(g.order, BigUint::from(fact));
        }
    }

    #[test]
    fn matches_brute_force() {
        let samples = [
            cross_polytope(2).unwrap(),
            Complex::from_facets([[1, 2, 3], [2, 3, 4], [3, 4, 5]]).unwrap(),
            Complex::from_facets([[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [6, 1]]).unwrap(),
            klee_novik_bar(1, 1).unwrap(),
        ];
        for x in samples {
            let g = automorphism_group(&x, DEFAULT_GUARD).unwrap();
            assert_eq!(g.order, BigUint::from(brute_order(&x)), "{x:?}");
        }
    }

    #[test]
    fn generators_preserve_facets() {
        let x = klee_novik(1, 3).unwrap();
        let g = automorphism_group(&x, DEFAULT_GUARD).unwrap();
        assert_eq!(g.order, BigUint::from(20u32));
        assert!(g.is_vertex_transitive());
        for gen in &g.generators {
            let map: HashMap<Label, Label> = gen.iter().cloned().collect();
            assert_eq!(x.relabel(&map).unwrap(), x);
        }
    }

    #[test]
    fn isomorphism() {
        let x = klee_novik(1, 3).unwrap();
        let y = klee_novik(2, 3).unwrap();
        let map = is_isomorphic(&x, &y, DEFAULT_GUARD).unwrap().expect("isomorphic");
        assert_eq!(x.relabel(&map).unwrap(), y);
        let s2 = standard_sphere(2, None).unwrap();
        let c4 = cross_polytope(1).unwrap();
        assert!(is_isomorphic(&s2, &c4, DEFAULT_GUARD).unwrap().is_none());
    }

    #[test]
    fn guard() {
        let x = standard_sphere(5, None).unwrap();
        assert!(matches!(automorphism_group(&x, 3), Err(Error::GuardExceeded { .. })));
    }
}
