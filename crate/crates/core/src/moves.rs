//! Standard spheres and balls, bistellar moves and shelling moves.
//!
//! A bistellar move `α ↦ β` on a pure `d`-complex `X` needs `α ⊔ β` of size
//! `d + 2`, `β ∉ X`, the link of `α` equal to `∂β` and the induced
//! subcomplex on `α ⊔ β` equal to `ᾱ ∗ ∂β`. It swaps the facets
//! `α ∪ (β − b)` for the facets `(α − a) ∪ β`. A shelling move `α ⇝ β`
//! adds the single facet `α ⊔ β` to a pure `d`-complex meeting it in `ᾱ ∗ ∂β`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{bits, lex_cmp, maximalize, popcount, remap, subsets_of_size, Complex, Face, Mask, Merge};
use crate::error::{Error, Result};
use crate::label::Label;

/// Why a move is not applicable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvalidReason {
    NotPure,
    EmptyBeta,
    NotDisjoint,
    WrongDimensions,
    BetaIsFace,
    AlreadyFacet,
    LinkMismatch,
    NotInduced,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvalidReason::NotPure => "complex is not pure",
            InvalidReason::EmptyBeta => "beta is empty",
            InvalidReason::NotDisjoint => "alpha and beta are not disjoint",
            InvalidReason::WrongDimensions => "dim alpha + dim beta does not match the complex",
            InvalidReason::BetaIsFace => "beta is already a face",
            InvalidReason::AlreadyFacet => "alpha + beta is already a face",
            InvalidReason::LinkMismatch => "link of alpha is not the boundary of beta",
            InvalidReason::NotInduced => "induced subcomplex on alpha + beta is not closure(alpha) * boundary(beta)",
        };
        f.write_str(s)
    }
}

/// A move `α ↦ β` (bistellar) or `α ⇝ β` (shelling); the index is `dim β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub alpha: Face,
    pub beta: Face,
}

pub type BistellarMove = Move;
pub type ShellingMove = Move;

impl Move {
    pub fn new(alpha: Face, beta: Face) -> Move {
        Move { alpha, beta }
    }

    pub fn index(&self) -> i64 {
        self.beta.dim()
    }

    /// The inverse bistellar move `β ↦ α`.
    pub fn reverse(&self) -> Move {
        Move { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} -> {{{}}}", self.alpha, self.beta)
    }
}

fn default_pool(n: usize) -> Vec<Label> {
    (1..=n as i64).map(Label::Num).collect()
}

fn pool(n: usize, labels: Option<&[Label]>, d: i64) -> Result<Vec<Label>> {
    match labels {
        None => Ok(default_pool(n)),
        Some(l) => {
            let mut v = l.to_vec();
            v.sort();
            v.dedup();
            if v.len() != n {
                return Err(Error::BadDimension(d));
            }
            Ok(v)
        }
    }
}

/// `S^d_{d+2}`, the boundary of a `(d+1)`-simplex; labels default to `1..=d+2`.
pub fn standard_sphere(d: i64, labels: Option<&[Label]>) -> Result<Complex> {
    if d < 0 {
        return Err(Error::BadDimension(d));
    }
    let n = (d + 2) as usize;
    let ls = pool(n, labels, d)?;
    let full: Mask = (1 << n) - 1;
    Ok(Complex::from_masks(ls, (0..n).map(|i| full & !(1 << i)).collect()))
}

/// `B^d_{d+1}`, a single `d`-simplex; labels default to `1..=d+1`.
pub fn standard_ball(d: i64, labels: Option<&[Label]>) -> Result<Complex> {
    if d < 0 {
        return Err(Error::BadDimension(d));
    }
    let n = (d + 1) as usize;
    let ls = pool(n, labels, d)?;
    Ok(Complex::from_masks(ls, vec![(1 << n) - 1]))
}

/// Whether `x` is a standard sphere of its dimension.
pub fn is_standard_sphere(x: &Complex) -> bool {
    let n = x.vertex_count();
    x.dim() >= 0 && n as i64 == x.dim() + 2 && x.facet_count() == n && x.is_pure()
}

/// Whether `x` is a single simplex.
pub fn is_standard_ball(x: &Complex) -> bool {
    !x.is_void() && x.facet_masks().len() == 1
}

/// Smallest non-negative integer label absent from `x`.
pub fn fresh_label(x: &Complex) -> Label {
    let mut n = 0;
    while x.index_of(&Label::Num(n)).is_some() {
        n += 1;
    }
    Label::Num(n)
}

/// The expected facets of `ᾱ ∗ ∂β`.
pub(crate) fn closure_join_boundary(a: Mask, b: Mask) -> Vec<Mask> {
    if popcount(b) == 1 {
        return vec![a];
    }
    let mut v: Vec<Mask> = bits(b).map(|i| a | (b & !(1 << i))).collect();
    v.sort_unstable_by(|x, y| lex_cmp(*x, *y));
    v
}

/// Facets of the induced subcomplex on `u`, sorted.
pub(crate) fn induced_masks(facets: &[Mask], u: Mask) -> Vec<Mask> {
    let mut v = maximalize(facets.iter().map(|&f| f & u).collect());
    if v.is_empty() {
        v.push(0);
    }
    v
}

/// Mask-level bistellar validity on a pure complex of dimension `d` with
/// facet list `facets`.
pub(crate) fn check_bistellar(facets: &[Mask], d: usize, a: Mask, b: Mask) -> std::result::Result<(), InvalidReason> {
    if b == 0 {
        return Err(InvalidReason::EmptyBeta);
    }
    if a & b != 0 {
        return Err(InvalidReason::NotDisjoint);
    }
    if a == 0 || popcount(a) + popcount(b) != d + 2 {
        return Err(InvalidReason::WrongDimensions);
    }
    if facets.iter().any(|&f| f & b == b) {
        return Err(InvalidReason::BetaIsFace);
    }
    let mut star: Vec<Mask> = facets.iter().copied().filter(|&f| f & a == a).collect();
    star.sort_unstable_by(|x, y| lex_cmp(*x, *y));
    let expected = closure_join_boundary(a, b);
    if star != expected {
        return Err(InvalidReason::LinkMismatch);
    }
    if induced_masks(facets, a | b) != expected {
        return Err(InvalidReason::NotInduced);
    }
    Ok(())
}

/// Facets after a (validated) bistellar move.
pub(crate) fn bistellar_result(facets: &[Mask], a: Mask, b: Mask) -> Vec<Mask> {
    let mut out: Vec<Mask> = facets.iter().copied().filter(|&f| !(f & a == a && f & !(a | b) == 0)).collect();
    out.extend(bits(a).map(|i| (a & !(1 << i)) | b));
    out
}

/// Mask-level shelling validity: `σ = a ⊔ b` meets the complex in `ᾱ ∗ ∂β`.
pub(crate) fn check_shelling(facets: &[Mask], d: usize, a: Mask, b: Mask) -> std::result::Result<(), InvalidReason> {
    if b == 0 {
        return Err(InvalidReason::EmptyBeta);
    }
    if a & b != 0 {
        return Err(InvalidReason::NotDisjoint);
    }
    if popcount(a) + popcount(b) != d + 1 {
        return Err(InvalidReason::WrongDimensions);
    }
    let s = a | b;
    if facets.iter().any(|&f| f & s == s) {
        return Err(InvalidReason::AlreadyFacet);
    }
    if induced_masks(facets, s) != closure_join_boundary(a, b) {
        return Err(InvalidReason::NotInduced);
    }
    Ok(())
}

/// The unique shelling split of a new facet `s`, if adding it is a
/// shelling move: `β` collects the vertices `v` with `s − v` already a face
/// of the complex, and the move is valid iff the intersection with the
/// complex is exactly `ᾱ ∗ ∂β`.
pub(crate) fn shelling_split(facets: &[Mask], s: Mask) -> Option<(Mask, Mask)> {
    if facets.iter().any(|&f| f & s == s) {
        return None;
    }
    let inter = induced_masks(facets, s);
    let b = bits(s)
        .filter(|&v| {
            let r = s & !(1 << v);
            inter.contains(&r)
        })
        .fold(0 as Mask, |acc, v| acc | (1 << v));
    if b == 0 {
        // disjoint attachment: only valid as an index-0 move on a fresh vertex,
        // which never arises for an existing vertex set
        return None;
    }
    let a = s & !b;
    (inter == closure_join_boundary(a, b)).then_some((a, b))
}

struct Lifted {
    labels: Vec<Label>,
    facets: Vec<Mask>,
    a: Mask,
    b: Mask,
}

fn lift(x: &Complex, m: &Move) -> Result<Lifted> {
    let extra: Vec<Label> = m.alpha.labels().iter().chain(m.beta.labels()).cloned().collect();
    let merge = Merge::new(x.labels(), &extra);
    let facets: Vec<Mask> = if x.is_void() {
        Vec::new()
    } else {
        x.facet_masks().iter().map(|&f| remap(f, &merge.left)).collect()
    };
    let to_mask = |f: &Face| {
        f.labels()
            .iter()
            .fold(0 as Mask, |acc, l| acc | (1 << merge.labels.binary_search(l).unwrap()))
    };
    let (a, b) = (to_mask(&m.alpha), to_mask(&m.beta));
    if merge.labels.len() > crate::complex::MAX_VERTICES {
        return Err(Error::TooManyVertices(merge.labels.len()));
    }
    Ok(Lifted { labels: merge.labels, facets, a, b })
}

/// Checks a bistellar move against `x`.
pub fn validate_bistellar(x: &Complex, m: &Move) -> std::result::Result<(), InvalidReason> {
    if !x.is_pure() || x.is_void() {
        return Err(InvalidReason::NotPure);
    }
    let l = lift(x, m).map_err(|_| InvalidReason::WrongDimensions)?;
    check_bistellar(&l.facets, x.dim() as usize, l.a, l.b)
}

pub fn apply_bistellar(x: &Complex, m: &Move) -> Result<Complex> {
    validate_bistellar(x, m).map_err(Error::InvalidMove)?;
    let l = lift(x, m)?;
    Ok(Complex::from_masks(l.labels, bistellar_result(&l.facets, l.a, l.b)))
}

/// Checks a shelling move against `y`.
pub fn validate_shelling(y: &Complex, m: &Move) -> std::result::Result<(), InvalidReason> {
    if !y.is_pure() || y.is_void() {
        return Err(InvalidReason::NotPure);
    }
    let l = lift(y, m).map_err(|_| InvalidReason::WrongDimensions)?;
    check_shelling(&l.facets, y.dim() as usize, l.a, l.b)
}

pub fn apply_shelling(y: &Complex, m: &Move) -> Result<Complex> {
    validate_shelling(y, m).map_err(Error::InvalidMove)?;
    let l = lift(y, m)?;
    let mut facets = l.facets;
    facets.push(l.a | l.b);
    Ok(Complex::from_masks(l.labels, facets))
}

/// Every valid bistellar move with index in `lo..=hi`, canonically sorted.
/// Index-0 moves carry the placeholder [`fresh_label`] as `β`.
pub fn bistellar_options(x: &Complex, lo: i64, hi: i64) -> Vec<Move> {
    if !x.is_pure() || x.is_void() {
        return Vec::new();
    }
    let d = x.dim();
    let facets = x.facet_masks();
    let mut out: Vec<Move> = Vec::new();
    for i in lo.max(0)..=hi.min(d) {
        if i == 0 {
            let fresh = Face::new([fresh_label(x)]);
            out.extend(facets.iter().map(|&f| Move::new(x.face_of(f), fresh.clone())));
            continue;
        }
        for (a, b) in mask_options_of_index(facets, d as usize, i as usize) {
            out.push(Move::new(x.face_of(a), x.face_of(b)));
        }
    }
    out.sort();
    out
}

/// Valid proper or vertex-deleting moves of index `i >= 1` as masks.
pub(crate) fn mask_options_of_index(facets: &[Mask], d: usize, i: usize) -> Vec<(Mask, Mask)> {
    let size = d + 1 - i;
    let mut count: std::collections::HashMap<Mask, (usize, Mask)> = std::collections::HashMap::new();
    for &f in facets {
        for a in subsets_of_size(f, size) {
            let e = count.entry(a).or_insert((0, 0));
            e.0 += 1;
            e.1 |= f;
        }
    }
    let mut out: Vec<(Mask, Mask)> = count
        .into_iter()
        .filter(|&(a, (n, u))| n == i + 1 && popcount(u & !a) == i + 1)
        .map(|(a, (_, u))| (a, u & !a))
        .filter(|&(a, b)| check_bistellar(facets, d, a, b).is_ok())
        .collect();
    out.sort_unstable_by(|x, y| lex_cmp(x.0, y.0).then(lex_cmp(x.1, y.1)));
    out
}

/// Moves restricted to one index, as a convenience over [`bistellar_options`].
pub fn bistellar_options_of_index(x: &Complex, i: i64) -> Vec<Move> {
    bistellar_options(x, i, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(raw: &[&[i64]]) -> Complex {
        Complex::from_facets(raw.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn mv(a: &[i64], b: &[i64]) -> Move {
        Move::new(Face::new(a.iter().copied()), Face::new(b.iter().copied()))
    }

    #[test]
    fn standard_objects() {
        let s0 = standard_sphere(0, None).unwrap();
        assert_eq!(s0.facet_count(), 2);
        assert_eq!(s0.dim(), 0);
        let s2 = standard_sphere(2, None).unwrap();
        assert_eq!(s2.f_vector().0, vec![4, 6, 4]);
        let b3 = standard_ball(3, None).unwrap();
        assert_eq!(b3.boundary().unwrap(), standard_sphere(2, None).unwrap());
        assert_eq!(standard_sphere(-1, None), Err(Error::BadDimension(-1)));
        assert!(is_standard_sphere(&s2));
        assert!(!is_standard_sphere(&b3));
    }

    #[test]
    fn zero_move_cones_off_facet() {
        let s = standard_sphere(2, None).unwrap();
        let y = apply_bistellar(&s, &mv(&[1, 2, 3], &[5])).unwrap();
        assert_eq!(y, c(&[&[1, 2, 4], &[1, 3, 4], &[2, 3, 4], &[1, 2, 5], &[1, 3, 5], &[2, 3, 5]]));
        let back = apply_bistellar(&y, &mv(&[5], &[1, 2, 3])).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn invalid_reasons() {
        let s = standard_sphere(2, None).unwrap();
        assert_eq!(validate_bistellar(&s, &mv(&[1, 2], &[3, 4])), Err(InvalidReason::BetaIsFace));
        assert_eq!(validate_bistellar(&s, &mv(&[1, 2], &[2, 5])), Err(InvalidReason::NotDisjoint));
        assert_eq!(validate_bistellar(&s, &mv(&[1], &[5])), Err(InvalidReason::WrongDimensions));
        assert_eq!(validate_bistellar(&s, &mv(&[1, 2, 3], &[4])), Err(InvalidReason::BetaIsFace));
        assert!(matches!(
            apply_bistellar(&s, &mv(&[1, 2, 3], &[4])),
            Err(Error::InvalidMove(InvalidReason::BetaIsFace))
        ));
    }

    #[test]
    fn standard_sphere_has_no_two_moves() {
        let s = standard_sphere(2, None).unwrap();
        assert!(bistellar_options(&s, 2, 2).is_empty());
        assert!(bistellar_options(&s, 1, 1).is_empty());
        assert_eq!(bistellar_options(&s, 0, 0).len(), 4);
    }

    #[test]
    fn stacked_sphere_reverse_moves() {
        // both degree-3 vertices can be removed; each yields a tetrahedron boundary
        let s = c(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]).boundary().unwrap();
        let opts = bistellar_options(&s, 2, 2);
        assert_eq!(opts, vec![mv(&[1], &[2, 3, 4]), mv(&[5], &[2, 3, 4])]);
        for m in &opts {
            assert!(is_standard_sphere(&apply_bistellar(&s, m).unwrap()));
        }
    }

    #[test]
    fn shelling_index_zero_and_one() {
        let b = standard_ball(3, None).unwrap();
        let y = apply_shelling(&b, &mv(&[2, 3, 4], &[5])).unwrap();
        assert_eq!(y, c(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]));
        assert_eq!(validate_shelling(&y, &mv(&[2, 3, 4], &[1])), Err(InvalidReason::AlreadyFacet));
        let t = c(&[&[1, 2, 3], &[2, 3, 4]]);
        let z = apply_shelling(&t, &mv(&[3], &[1, 4])).unwrap();
        assert_eq!(z.facet_count(), 3);
        assert_eq!(validate_shelling(&t, &mv(&[1], &[4, 5])), Err(InvalidReason::NotInduced));
    }

    #[test]
    fn split_recovers_move() {
        let t = c(&[&[1, 2, 3], &[2, 3, 4]]);
        let s: Mask = 0b1101; // {1,3,4}
        let (a, b) = shelling_split(t.facet_masks(), s).unwrap();
        assert_eq!(t.face_of(a), Face::new([3]));
        assert_eq!(t.face_of(b), Face::new([1, 4]));
    }

    /// Random walk with index < d moves from the standard sphere; checks
    /// reversibility and the vertex count rule at every step.
    fn random_walk(d: i64, steps: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = standard_sphere(d, None).unwrap();
        for _ in 0..steps {
            let opts = bistellar_options(&x, 0, d);
            if opts.is_empty() {
                return false;
            }
            let m = &opts[rng.gen_range(0..opts.len())];
            let y = apply_bistellar(&x, m).unwrap();
            let f0 = y.vertex_count() as i64 - x.vertex_count() as i64;
            let want = if m.index() == 0 { 1 } else if m.index() == d { -1 } else { 0 };
            if f0 != want || apply_bistellar(&y, &m.reverse()).unwrap() != x {
                return false;
            }
            x = y;
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn bistellar_reversible(seed in any::<u64>(), d in 1i64..4) {
            prop_assert!(random_walk(d, 12, seed));
        }
    }
}
