//! Facet-based simplicial complexes.
//!
//! A [`Complex`] stores only its inclusion-maximal faces. Vertices are kept in
//! a sorted label table and every face is a bitmask over that table, so the
//! face lattice is the implicit downward closure of the facet masks. Faces of
//! a given dimension are enumerated on demand and memoized.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::label::Label;

/// Vertex subset of one complex, bit `i` standing for `labels()[i]`.
pub type Mask = u128;

/// Upper bound on the number of vertices a complex may carry.
pub const MAX_VERTICES: usize = 128;

/// Finite vertex set, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Face(Vec<Label>);

impl Face {
    pub fn new<T: Into<Label>, I: IntoIterator<Item = T>>(items: I) -> Face {
        let mut v: Vec<Label> = items.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        Face(v)
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cardinality minus one; the empty face has dimension -1.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: &Label) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(v))
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| !other.contains(v)).cloned().collect())
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Face counts `(f_0, ..., f_d)`; the empty face is not counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Alternating sum `f_0 - f_1 + ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Counts with `f_{-1} = 1` prepended.
    pub fn extended(&self) -> Vec<u64> {
        std::iter::once(1).chain(self.0.iter().copied()).collect()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Facets as nodes, codimension-one adjacencies as edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub nodes: Vec<Face>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(self.nodes.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.components() == 1
    }

    pub fn is_tree(&self) -> bool {
        !self.nodes.is_empty() && self.edges.len() + 1 == self.nodes.len() && self.is_connected()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == node || b == node).count()
    }
}

/// Exact structural flags of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub pure: bool,
    pub weak_pseudomanifold: bool,
    pub pseudomanifold: bool,
    pub normal_pseudomanifold: bool,
    pub closed: bool,
}

#[derive(Clone)]
pub struct Complex {
    labels: Arc<[Label]>,
    facets: Vec<Mask>,
    faces: Arc<[OnceLock<Vec<Mask>>]>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
        self.facets.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("dim", &self.dim())
            .field("vertices", &self.labels.len())
            .field("facets", &self.facets())
            .finish()
    }
}

/// Lexicographic order of the sorted index lists of two masks.
pub(crate) fn lex_cmp(mut a: Mask, mut b: Mask) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (a.trailing_zeros(), b.trailing_zeros());
        if ta != tb {
            return ta.cmp(&tb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

/// All submasks of `m` with exactly `size` bits, in lexicographic order.
pub(crate) fn subsets_of_size(m: Mask, size: usize) -> Vec<Mask> {
    let idx: Vec<usize> = bits(m).collect();
    let mut out = Vec::new();
    if size > idx.len() {
        return out;
    }
    let n = idx.len();
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        out.push(pick.iter().fold(0, |acc, &p| acc | (1 << idx[p])));
        let mut i = size;
        while i > 0 && pick[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        pick[i - 1] += 1;
        for j in i..size {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Keeps the inclusion-maximal masks, sorted lexicographically.
pub(crate) fn maximalize(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.sort_unstable_by(|a, b| popcount(*b).cmp(&popcount(*a)).then(a.cmp(b)));
    masks.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(masks.len());
    // kept[..larger] holds the masks strictly bigger than the current one
    let mut larger = 0;
    for m in masks {
        while larger < kept.len() && popcount(kept[larger]) > popcount(m) {
            larger += 1;
        }
        if !kept[..larger].iter().any(|&k| m & k == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable_by(|a, b| lex_cmp(*a, *b));
    kept
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Merged label table of two complexes plus index maps into it.
pub(crate) struct Merge {
    pub labels: Vec<Label>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Merge {
    pub(crate) fn new(a: &[Label], b: &[Label]) -> Merge {
        let mut labels: Vec<Label> = a.iter().chain(b.iter()).cloned().collect();
        labels.sort();
        labels.dedup();
        let pos = |l: &Label| labels.binary_search(l).expect("label present");
        let left = a.iter().map(pos).collect();
        let right = b.iter().map(pos).collect();
        Merge { labels, left, right }
    }
}

pub(crate) fn remap(m: Mask, map: &[usize]) -> Mask {
    bits(m).fold(0, |acc, i| acc | (1 << map[i]))
}

impl Complex {
    /// Builds a complex from raw vertex sets; dominated and duplicate sets
    /// are absorbed.
    pub fn from_facets<I, F, T>(raw: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = T>,
        T: Into<Label>,
    {
        let faces: Vec<Face> = raw.into_iter().map(Face::new).collect();
        if faces.is_empty() {
            return Err(Error::EmptyInput);
        }
        if faces.iter().any(Face::is_empty) {
            return Err(Error::EmptyFace);
        }
        Complex::from_faces(&faces)
    }

    /// Like [`Complex::from_facets`] but accepts the empty face, which
    /// yields `{∅}` when it is the only member.
    pub fn from_faces(faces: &[Face]) -> Result<Complex> {
        let mut labels: Vec<Label> = faces.iter().flat_map(|f| f.labels().iter().cloned()).collect();
        labels.sort();
        labels.dedup();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let masks = faces
            .iter()
            .map(|f| {
                f.labels()
                    .iter()
                    .fold(0 as Mask, |acc, l| acc | (1 << labels.binary_search(l).unwrap()))
            })
            .collect();
        Ok(Complex::from_masks(labels, masks))
    }

    /// The complex `{∅}` whose only face is the empty set.
    pub fn empty() -> Complex {
        Complex::from_masks(Vec::new(), vec![0])
    }

    /// Core constructor: `labels` sorted and distinct, masks over it. Unused
    /// labels are dropped and the facets reduced to maximal ones.
    pub(crate) fn from_masks(labels: Vec<Label>, masks: Vec<Mask>) -> Complex {
        let used = masks.iter().fold(0 as Mask, |a, &m| a | m);
        let (labels, masks) = if popcount(used) == labels.len() {
            (labels, masks)
        } else {
            let mut map = vec![usize::MAX; labels.len()];
            let mut kept = Vec::new();
            for (i, l) in labels.into_iter().enumerate() {
                if used >> i & 1 == 1 {
                    map[i] = kept.len();
                    kept.push(l);
                }
            }
            let masks = masks.into_iter().map(|m| remap(m, &map)).collect();
            (kept, masks)
        };
        let mut facets = maximalize(masks);
        if facets.is_empty() {
            facets.push(0);
        }
        let dim = facets.iter().map(|&m| popcount(m)).max().unwrap_or(0);
        Complex {
            labels: labels.into(),
            facets,
            faces: (0..=dim).map(|_| OnceLock::new()).collect::<Vec<_>>().into(),
        }
    }

    /// A complex on the same label table (possibly shrinking it).
    pub(crate) fn with_masks(&self, masks: Vec<Mask>) -> Complex {
        Complex::from_masks(self.labels.to_vec(), masks)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertices(&self) -> Vec<Label> {
        self.labels.to_vec()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn facet_masks(&self) -> &[Mask] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Face> {
        self.facets.iter().map(|&m| self.face_of(m)).collect()
    }

    pub fn facet_count(&self) -> usize {
        if self.is_void() {
            0
        } else {
            self.facets.len()
        }
    }

    /// True for `{∅}`.
    pub fn is_void(&self) -> bool {
        self.facets == [0]
    }

    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|&m| popcount(m) as i64).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = popcount(self.facets[0]);
        self.facets.iter().all(|&m| popcount(m) == d)
    }

    pub(crate) fn all_vertices_mask(&self) -> Mask {
        if self.labels.len() == MAX_VERTICES {
            Mask::MAX
        } else {
            (1 << self.labels.len()) - 1
        }
    }

    pub(crate) fn face_of(&self, m: Mask) -> Face {
        Face(bits(m).map(|i| self.labels[i].clone()).collect())
    }

    pub(crate) fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.binary_search(l).ok()
    }

    /// Mask of a vertex set; fails on labels absent from the complex.
    pub(crate) fn mask_of(&self, face: &Face) -> Result<Mask> {
        face.labels().iter().try_fold(0 as Mask, |acc, l| {
            self.index_of(l)
                .map(|i| acc | (1 << i))
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        })
    }

    pub(crate) fn contains_mask(&self, m: Mask) -> bool {
        self.facets.iter().any(|&f| f & m == m)
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        match self.mask_of(face) {
            Ok(m) => self.contains_mask(m),
            Err(_) => false,
        }
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        match self.mask_of(face) {
            Ok(m) => self.facets.binary_search_by(|&f| lex_cmp(f, m)).is_ok(),
            Err(_) => false,
        }
    }

    /// Faces of dimension `dim` (`-1` gives the empty face), sorted.
    pub(crate) fn face_masks(&self, dim: i64) -> &[Mask] {
        static NONE: [Mask; 0] = [];
        static EMPTY: [Mask; 1] = [0];
        if dim < -1 || dim > self.dim() {
            return &NONE;
        }
        if dim == -1 {
            return &EMPTY;
        }
        let size = (dim + 1) as usize;
        self.faces[size - 1].get_or_init(|| {
            let mut seen: HashSet<Mask> = HashSet::new();
            for &f in &self.facets {
                if popcount(f) >= size {
                    seen.extend(subsets_of_size(f, size));
                }
            }
            let mut v: Vec<Mask> = seen.into_iter().collect();
            v.sort_unstable_by(|a, b| lex_cmp(*a, *b));
            v
        })
    }

    pub fn faces_of_dim(&self, dim: i64) -> Vec<Face> {
        self.face_masks(dim).iter().map(|&m| self.face_of(m)).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..=self.dim()).map(|i| self.face_masks(i).len() as u64).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Number of facets containing the vertex.
    pub fn degree(&self, v: &Label) -> usize {
        match self.index_of(v) {
            Some(i) => self.facets.iter().filter(|&&f| f >> i & 1 == 1).count(),
            None => 0,
        }
    }

    pub fn link(&self, face: &Face) -> Result<Complex> {
        let m = self.mask_of(face).map_err(|_| Error::NotAFace(face.to_string()))?;
        self.link_mask(m).ok_or_else(|| Error::NotAFace(face.to_string()))
    }

    pub(crate) fn link_mask(&self, m: Mask) -> Option<Complex> {
        let parts: Vec<Mask> = self.facets.iter().filter(|&&f| f & m == m).map(|&f| f & !m).collect();
        if parts.is_empty() {
            None
        } else {
            Some(self.with_masks(parts))
        }
    }

    pub fn star(&self, face: &Face) -> Result<Complex> {
        let m = self.mask_of(face).map_err(|_| Error::NotAFace(face.to_string()))?;
        let parts: Vec<Mask> = self.facets.iter().filter(|&&f| f & m == m).copied().collect();
        if parts.is_empty() {
            return Err(Error::NotAFace(face.to_string()));
        }
        Ok(self.with_masks(parts))
    }

    pub fn antistar(&self, v: &Label) -> Result<Complex> {
        let i = self.index_of(v).ok_or_else(|| Error::NotAFace(v.to_string()))?;
        let bit: Mask = 1 << i;
        Ok(self.with_masks(self.facets.iter().map(|&f| f & !bit).collect()))
    }

    pub fn induced(&self, vertices: &[Label]) -> Result<Complex> {
        let u = self.mask_of(&Face::new(vertices.iter().cloned()))?;
        Ok(self.induced_mask(u))
    }

    pub(crate) fn induced_mask(&self, u: Mask) -> Complex {
        self.with_masks(self.facets.iter().map(|&f| f & u).collect())
    }

    /// Faces of dimension at most `m`.
    pub fn skeleton(&self, m: i64) -> Complex {
        if m >= self.dim() {
            return self.clone();
        }
        if m < 0 {
            return Complex::empty();
        }
        self.with_masks(self.face_masks(m).to_vec())
    }

    pub fn join(&self, other: &Complex) -> Result<Complex> {
        if let Some(l) = self.labels.iter().find(|l| other.index_of(l).is_some()) {
            return Err(Error::VertexClash(l.to_string()));
        }
        let merge = Merge::new(&self.labels, &other.labels);
        let mut masks = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &a in &self.facets {
            let ra = remap(a, &merge.left);
            for &b in &other.facets {
                masks.push(ra | remap(b, &merge.right));
            }
        }
        Ok(Complex::from_masks(merge.labels, masks))
    }

    /// Cone with apex `v`.
    pub fn cone(&self, v: Label) -> Result<Complex> {
        let apex = Complex::from_facets([[v]])?;
        apex.join(self)
    }

    /// Codimension-one faces with the facets containing them.
    pub(crate) fn ridges(&self) -> HashMap<Mask, Vec<usize>> {
        let mut map: HashMap<Mask, Vec<usize>> = HashMap::new();
        for (idx, &f) in self.facets.iter().enumerate() {
            for i in bits(f) {
                map.entry(f & !(1 << i)).or_default().push(idx);
            }
        }
        map
    }

    pub fn is_weak_pseudomanifold(&self) -> bool {
        self.is_pure() && !self.is_void() && self.ridges().values().all(|v| v.len() <= 2)
    }

    pub fn boundary(&self) -> Result<Complex> {
        if !self.is_weak_pseudomanifold() {
            return Err(Error::NotWeakPseudomanifold);
        }
        Ok(self.boundary_unchecked())
    }

    pub(crate) fn boundary_unchecked(&self) -> Complex {
        let masks: Vec<Mask> = self
            .ridges()
            .into_iter()
            .filter(|(_, v)| v.len() == 1)
            .map(|(m, _)| m)
            .collect();
        self.with_masks(masks)
    }

    pub fn dual_graph(&self) -> Result<DualGraph> {
        if !self.is_weak_pseudomanifold() {
            return Err(Error::NotWeakPseudomanifold);
        }
        let mut edges: Vec<(usize, usize)> = self
            .ridges()
            .into_values()
            .filter(|v| v.len() == 2)
            .map(|v| (v[0].min(v[1]), v[0].max(v[1])))
            .collect();
        edges.sort_unstable();
        Ok(DualGraph { nodes: self.facets(), edges })
    }

    pub(crate) fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.labels.len());
        for &f in &self.facets {
            let mut it = bits(f);
            if let Some(first) = it.next() {
                for j in it {
                    uf.union(first, j);
                }
            }
        }
        uf.components() == 1
    }

    pub fn missing_faces(&self, max_dim: i64) -> Vec<Face> {
        let mut out = Vec::new();
        for size in 2..=(max_dim + 1).max(0) as usize {
            let prev = self.face_masks(size as i64 - 2);
            let prev_set: HashSet<Mask> = prev.iter().copied().collect();
            let mut found: Vec<Mask> = Vec::new();
            for &p in prev {
                let top = 127 - p.leading_zeros() as usize;
                for v in top + 1..self.labels.len() {
                    let cand = p | (1 << v);
                    if self.contains_mask(cand) {
                        continue;
                    }
                    if bits(cand).all(|i| prev_set.contains(&(cand & !(1 << i)))) {
                        found.push(cand);
                    }
                }
            }
            found.sort_unstable_by(|a, b| lex_cmp(*a, *b));
            out.extend(found.into_iter().map(|m| self.face_of(m)));
        }
        out
    }

    pub fn is_l_neighborly(&self, l: usize) -> bool {
        if l == 0 {
            return true;
        }
        let n = self.labels.len() as u64;
        let want = binomial(n, l as u64);
        self.face_masks(l as i64 - 1).len() as u64 == want
    }

    pub fn classify(&self) -> Classification {
        let pure = self.is_pure() && !self.is_void();
        let ridges = if pure { Some(self.ridges()) } else { None };
        let weak = ridges.as_ref().is_some_and(|r| r.values().all(|v| v.len() <= 2));
        let closed = weak && ridges.as_ref().is_some_and(|r| r.values().all(|v| v.len() == 2));
        let pseudo = weak && self.dual_graph().map(|g| g.is_connected()).unwrap_or(false);
        let normal = weak && self.links_connected();
        Classification {
            pure,
            weak_pseudomanifold: weak,
            pseudomanifold: pseudo,
            normal_pseudomanifold: normal,
            closed,
        }
    }

    /// Every face of dimension at most `d - 2` (the empty face included)
    /// has a connected link.
    fn links_connected(&self) -> bool {
        let d = self.dim();
        (-1..=d - 2).all(|i| {
            self.face_masks(i)
                .iter()
                .all(|&m| self.link_mask(m).is_some_and(|l| l.is_connected()))
        })
    }

    /// Same faces up to dimension `m`, compared by label.
    pub fn same_skeleton(&self, other: &Complex, m: i64) -> bool {
        (0..=m).all(|i| {
            let a = self.face_masks(i);
            let b = other.face_masks(i);
            if a.len() != b.len() {
                return false;
            }
            if self.labels == other.labels {
                return a == b;
            }
            let bs: HashSet<Face> = b.iter().map(|&x| other.face_of(x)).collect();
            a.iter().all(|&x| bs.contains(&self.face_of(x)))
        })
    }

    /// Applies a label substitution; labels not in `map` are kept. The
    /// substitution must stay injective on the vertex set.
    pub fn relabel(&self, map: &HashMap<Label, Label>) -> Result<Complex> {
        let image = |l: &Label| map.get(l).cloned().unwrap_or_else(|| l.clone());
        let mut images: Vec<Label> = self.labels.iter().map(image).collect();
        images.sort();
        images.dedup();
        if images.len() != self.labels.len() {
            return Err(Error::BadMatching("relabeling is not injective".into()));
        }
        let faces: Vec<Face> = self
            .facets()
            .into_iter()
            .map(|f| Face::new(f.labels().iter().map(image)))
            .collect();
        Complex::from_faces(&faces)
    }

    /// Canonical text form: one facet per line, labels separated by spaces.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for f in self.facets() {
            s.push_str(&f.to_string());
            s.push('\n');
        }
        s
    }

    /// SHA-256 of [`Complex::canonical_text`], hex encoded.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.canonical_text().as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(raw: &[&[i64]]) -> Complex {
        Complex::from_facets(raw.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn tetra_boundary() -> Complex {
        c(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn dominated_faces_absorbed() {
        let x = c(&[&[1, 2, 3], &[2, 3], &[3, 4]]);
        assert_eq!(x.facets(), vec![Face::new([1, 2, 3]), Face::new([3, 4])]);
    }

    #[test]
    fn construction_errors() {
        let none: Vec<Vec<i64>> = vec![];
        assert_eq!(Complex::from_facets(none), Err(Error::EmptyInput));
        let with_empty: Vec<Vec<i64>> = vec![vec![1], vec![]];
        assert_eq!(Complex::from_facets(with_empty), Err(Error::EmptyFace));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b111, 3), vec![0b111]);
        assert_eq!(subsets_of_size(0b111, 0), vec![0]);
        assert!(subsets_of_size(0b11, 3).is_empty());
    }

    #[test]
    fn f_vector_of_tetra_boundary() {
        assert_eq!(tetra_boundary().f_vector(), FVector(vec![4, 6, 4]));
        assert_eq!(tetra_boundary().euler_characteristic(), 2);
    }

    #[test]
    fn star_link_antistar() {
        let s = tetra_boundary();
        let star = s.star(&Face::new([1])).unwrap();
        assert_eq!(star.facet_count(), 3);
        let link = s.link(&Face::new([1])).unwrap();
        assert_eq!(link.facets(), vec![Face::new([2, 3]), Face::new([2, 4]), Face::new([3, 4])]);
        let ast = s.antistar(&1.into()).unwrap();
        assert_eq!(ast.facets(), vec![Face::new([2, 3, 4])]);
        assert!(matches!(s.link(&Face::new([1, 5])), Err(Error::NotAFace(_))));
        assert!(s.link(&Face::new([1, 2, 3])).unwrap().is_void());
    }

    #[test]
    fn induced_full_triangle() {
        let s = tetra_boundary();
        let t = s.induced(&[1.into(), 2.into(), 3.into()]).unwrap();
        assert_eq!(t.facets(), vec![Face::new([1, 2, 3])]);
        assert!(matches!(s.induced(&[9.into()]), Err(Error::UnknownVertex(_))));
        assert!(s.induced(&[]).unwrap().is_void());
    }

    #[test]
    fn join_of_zero_spheres_is_square() {
        let a = c(&[&[1], &[2]]);
        let b = c(&[&[3], &[4]]);
        let sq = a.join(&b).unwrap();
        assert_eq!(sq.f_vector(), FVector(vec![4, 4]));
        assert!(matches!(a.join(&a), Err(Error::VertexClash(_))));
    }

    #[test]
    fn boundary_cases() {
        let ball = c(&[&[1, 2, 3, 4]]);
        assert_eq!(ball.boundary().unwrap(), tetra_boundary());
        assert!(tetra_boundary().boundary().unwrap().is_void());
        let bad = c(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]);
        assert_eq!(bad.boundary(), Err(Error::NotWeakPseudomanifold));
    }

    #[test]
    fn dual_graph_of_tetra_boundary_is_k4() {
        let g = tetra_boundary().dual_graph().unwrap();
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(g.edges.len(), 6);
        assert!(!g.is_tree());
    }

    #[test]
    fn missing_faces_of_octahedron() {
        let oct = c(&[&[1], &[2]])
            .join(&c(&[&[3], &[4]]))
            .unwrap()
            .join(&c(&[&[5], &[6]]))
            .unwrap();
        let m = oct.missing_faces(2);
        assert_eq!(m, vec![Face::new([1, 2]), Face::new([3, 4]), Face::new([5, 6])]);
        assert!(tetra_boundary().missing_faces(2).is_empty());
        assert_eq!(tetra_boundary().missing_faces(3), vec![Face::new([1, 2, 3, 4])]);
        assert!(!oct.is_l_neighborly(2));
        assert!(oct.is_l_neighborly(1));
    }

    #[test]
    fn classification_flags() {
        let s = tetra_boundary().classify();
        assert!(s.pure && s.weak_pseudomanifold && s.pseudomanifold && s.normal_pseudomanifold && s.closed);
        let bowtie = c(&[&[1, 2, 3], &[3, 4, 5]]).classify();
        assert!(bowtie.pure && bowtie.weak_pseudomanifold);
        assert!(!bowtie.normal_pseudomanifold);
        assert!(!bowtie.pseudomanifold);
        let mixed = c(&[&[1, 2, 3], &[3, 4]]).classify();
        assert!(!mixed.pure && !mixed.weak_pseudomanifold);
    }

    #[test]
    fn digest_depends_only_on_facets() {
        let a = c(&[&[3, 2, 1], &[4, 3]]);
        let b = c(&[&[4, 3], &[1, 2, 3], &[1, 2]]);
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.canonical_text(), "1 2 3\n3 4\n");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 2), 120);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(10, 0), 1);
    }
}
