//! Simplicial homology over prime fields and the rationals.
//!
//! Boundary matrices are built sparsely one dimension at a time and reduced
//! column by column. Over `GF(p)` entries are residues; over `Q` the
//! reduction is fraction-free on integers with content removal, first in
//! checked `i64` and, on overflow, in arbitrary precision.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{bits, Complex, Mask};
use crate::error::{Error, Result};

/// Coefficient field: the rationals or `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Rational,
    Prime(u32),
}

impl CoefficientField {
    /// `0` selects the rationals, a prime `p < 2^31` selects `GF(p)`.
    pub fn new(descriptor: u64) -> Result<CoefficientField> {
        if descriptor == 0 {
            return Ok(CoefficientField::Rational);
        }
        if descriptor >= 1 << 31 {
            return Err(Error::FieldTooLarge(descriptor));
        }
        if !is_prime(descriptor) {
            return Err(Error::NotPrime(descriptor));
        }
        Ok(CoefficientField::Prime(descriptor as u32))
    }

    pub fn descriptor(&self) -> u64 {
        match self {
            CoefficientField::Rational => 0,
            CoefficientField::Prime(p) => *p as u64,
        }
    }

    /// The screening default `{Q, GF(2), GF(3)}`.
    pub fn default_screen() -> Vec<CoefficientField> {
        vec![CoefficientField::Rational, CoefficientField::Prime(2), CoefficientField::Prime(3)]
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => f.write_str("Q"),
            CoefficientField::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoefficientField::Rational => s.serialize_str("Q"),
            CoefficientField::Prime(p) => s.serialize_u32(*p),
        }
    }
}

impl<'de> Deserialize<'de> for CoefficientField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let desc = match &v {
            serde_json::Value::String(s) if s == "Q" => 0,
            serde_json::Value::Number(n) => n.as_u64().ok_or_else(|| serde::de::Error::custom("bad field"))?,
            _ => return Err(serde::de::Error::custom("field must be \"Q\" or a prime")),
        };
        CoefficientField::new(desc).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Reduced Betti numbers `(β̃_0, ..., β̃_d)` over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: CoefficientField,
    pub reduced_betti: Vec<u64>,
}

impl BettiVector {
    /// `1 + Σ (-1)^i β̃_i`, which equals the Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        1 + self
            .reduced_betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
    }

    pub fn is_sphere_like(&self) -> bool {
        match self.reduced_betti.split_last() {
            Some((&top, rest)) => top == 1 && rest.iter().all(|&b| b == 0),
            None => false,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }
}

/// Sparse column: `(row, value)` sorted by row.
pub(crate) type Column<T> = Vec<(usize, T)>;

/// Boundary columns of the `dim`-faces, rows indexed by `(dim-1)`-faces in
/// the complex's canonical face order. Signs follow vertex position.
pub(crate) fn boundary_columns(x: &Complex, dim: i64) -> Vec<Column<i64>> {
    let rows: HashMap<Mask, usize> = x.face_masks(dim - 1).iter().enumerate().map(|(i, &m)| (m, i)).collect();
    x.face_masks(dim)
        .iter()
        .map(|&f| {
            let mut col: Column<i64> = bits(f)
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (rows[&(f & !(1 << v))], sign)
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank over `GF(p)` of a sparse integer matrix given by columns.
pub(crate) fn rank_mod_p(cols: &[Column<i64>], p: u32) -> usize {
    let p = p as u64;
    let mut pivots: HashMap<usize, Column<u64>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Column<u64> = col
            .iter()
            .filter_map(|&(r, v)| {
                let m = v.rem_euclid(p as i64) as u64;
                (m != 0).then_some((r, m))
            })
            .collect();
        while let Some(&(low, val)) = c.last() {
            match pivots.get(&low) {
                Some(piv) => {
                    let factor = val * inv_mod(piv.last().unwrap().1, p) % p;
                    c = axpy_mod(&c, piv, p - factor, p);
                }
                None => {
                    pivots.insert(low, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a + s*b` over `GF(p)`, dropping zeros.
fn axpy_mod(a: &Column<u64>, b: &Column<u64>, s: u64, p: u64) -> Column<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1 * s % p));
            j += 1;
        } else {
            let v = (a[i].1 + b[j].1 * s) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

trait Integral: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `x*a - y*b`, `None` on overflow.
    fn mul_sub(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Integral for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self> {
        x.checked_mul(*a)?.checked_sub(y.checked_mul(*b)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Integral for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self> {
        Some(x * a - y * b)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Fraction-free rank over `Q`; `None` when the integer type overflows.
fn rank_integral<T: Integral>(cols: &[Column<i64>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Column<T>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Column<T> = col.iter().map(|&(r, v)| (r, T::from_i64(v))).collect();
        while let Some((low, val)) = c.last().cloned() {
            match pivots.get(&low) {
                Some(piv) => {
                    let pval = piv.last().unwrap().1.clone();
                    c = combine(&c, &pval, piv, &val)?;
                    normalize(&mut c);
                }
                None => {
                    pivots.insert(low, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// `pval*c - val*piv`, dropping zeros.
fn combine<T: Integral>(c: &Column<T>, pval: &T, piv: &Column<T>, val: &T) -> Option<Column<T>> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(c.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < piv.len() {
        let (row, a, b) = if j >= piv.len() || (i < c.len() && c[i].0 < piv[j].0) {
            i += 1;
            (c[i - 1].0, &c[i - 1].1, &zero)
        } else if i >= c.len() || piv[j].0 < c[i].0 {
            j += 1;
            (piv[j - 1].0, &zero, &piv[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (c[i - 1].0, &c[i - 1].1, &piv[j - 1].1)
        };
        let v = T::mul_sub(pval, a, val, b)?;
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Some(out)
}

fn normalize<T: Integral>(c: &mut Column<T>) {
    let mut g: Option<T> = None;
    for (_, v) in c.iter() {
        let next = match &g {
            None => v.gcd(v),
            Some(g) => g.gcd(v),
        };
        if next.is_unit() {
            return;
        }
        g = Some(next);
    }
    if let Some(g) = g {
        if !g.is_zero() {
            for (_, v) in c.iter_mut() {
                *v = v.div_exact(&g);
            }
        }
    }
}

pub(crate) fn rank_rational(cols: &[Column<i64>]) -> usize {
    rank_integral::<i64>(cols).unwrap_or_else(|| rank_integral::<BigInt>(cols).expect("bigint never overflows"))
}

pub(crate) fn rank_over(cols: &[Column<i64>], field: CoefficientField) -> usize {
    match field {
        CoefficientField::Rational => rank_rational(cols),
        CoefficientField::Prime(p) => rank_mod_p(cols, p),
    }
}

/// Rank of `∂_dim` for `dim >= 1`; the augmentation map for `dim == 0`.
pub(crate) fn boundary_rank(x: &Complex, dim: i64, field: CoefficientField) -> usize {
    if dim < 0 || dim > x.dim() {
        return 0;
    }
    if dim == 0 {
        return usize::from(!x.face_masks(0).is_empty());
    }
    rank_over(&boundary_columns(x, dim), field)
}

/// Reduced Betti numbers over `field`.
pub fn betti(x: &Complex, field: CoefficientField) -> BettiVector {
    let d = x.dim();
    if d < 0 {
        return BettiVector { field, reduced_betti: Vec::new() };
    }
    let ranks: Vec<usize> = (0..=d + 1).into_par_iter().map(|i| boundary_rank(x, i, field)).collect();
    let reduced_betti = (0..=d)
        .map(|i| {
            let n = x.face_masks(i).len();
            (n - ranks[i as usize] - ranks[i as usize + 1]) as u64
        })
        .collect();
    BettiVector { field, reduced_betti }
}

pub fn euler_characteristic(x: &Complex) -> i64 {
    x.euler_characteristic()
}

/// `β̃_d(X; F) == 1` for a closed weak pseudomanifold `X`.
pub fn orientable_over(x: &Complex, field: CoefficientField) -> Result<bool> {
    let cls = x.classify();
    if !cls.closed {
        return Err(Error::NotClosed);
    }
    let d = x.dim();
    let top = x.face_masks(d).len() - boundary_rank(x, d, field);
    Ok(top == 1)
}

/// Where a homology screen failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenFailure {
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<CoefficientField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

/// Result of a homology screen; a pass is evidence over the listed fields,
/// not a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenVerdict {
    pub pass: bool,
    pub fields: Vec<CoefficientField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<ScreenFailure>,
}

impl ScreenVerdict {
    fn pass(fields: &[CoefficientField]) -> Self {
        ScreenVerdict { pass: true, fields: fields.to_vec(), failure: None }
    }

    fn fail(fields: &[CoefficientField], reason: &str, field: Option<CoefficientField>, dim: Option<usize>) -> Self {
        ScreenVerdict {
            pass: false,
            fields: fields.to_vec(),
            failure: Some(ScreenFailure { reason: reason.to_string(), field, dimension: dim }),
        }
    }
}

fn first_mismatch(b: &BettiVector, expected: impl Fn(usize) -> u64) -> Option<usize> {
    b.reduced_betti.iter().enumerate().position(|(i, &v)| v != expected(i))
}

/// Closed normal pseudomanifold with the reduced homology of a sphere over
/// every listed field.
pub fn screen_homology_sphere(x: &Complex, fields: &[CoefficientField]) -> ScreenVerdict {
    let cls = x.classify();
    if !cls.normal_pseudomanifold {
        return ScreenVerdict::fail(fields, "not a normal pseudomanifold", None, None);
    }
    if !cls.closed {
        return ScreenVerdict::fail(fields, "has non-empty boundary", None, None);
    }
    sphere_betti_screen(x, fields)
}

fn sphere_betti_screen(x: &Complex, fields: &[CoefficientField]) -> ScreenVerdict {
    let d = x.dim().max(0) as usize;
    for &f in fields {
        let b = betti(x, f);
        if let Some(i) = first_mismatch(&b, |i| u64::from(i == d)) {
            return ScreenVerdict::fail(fields, "reduced homology differs from a sphere", Some(f), Some(i));
        }
    }
    ScreenVerdict::pass(fields)
}

/// Normal pseudomanifold with boundary, acyclic over every listed field,
/// whose boundary screens as a sphere.
pub fn screen_homology_ball(x: &Complex, fields: &[CoefficientField]) -> ScreenVerdict {
    let cls = x.classify();
    if !cls.normal_pseudomanifold {
        return ScreenVerdict::fail(fields, "not a normal pseudomanifold", None, None);
    }
    if cls.closed {
        return ScreenVerdict::fail(fields, "boundary is empty", None, None);
    }
    for &f in fields {
        let b = betti(x, f);
        if let Some(i) = first_mismatch(&b, |_| 0) {
            return ScreenVerdict::fail(fields, "reduced homology differs from a point", Some(f), Some(i));
        }
    }
    let bd = x.boundary_unchecked();
    if x.dim() == 0 {
        return ScreenVerdict::pass(fields);
    }
    let inner = if x.dim() == 1 {
        // boundary of a path: two points
        if bd.vertex_count() == 2 {
            ScreenVerdict::pass(fields)
        } else {
            ScreenVerdict::fail(fields, "boundary is not a 0-sphere", None, None)
        }
    } else {
        screen_homology_sphere(&bd, fields)
    };
    if inner.pass {
        ScreenVerdict::pass(fields)
    } else {
        let mut f = inner.failure.unwrap();
        f.reason = format!("boundary: {}", f.reason);
        ScreenVerdict { pass: false, fields: fields.to_vec(), failure: Some(f) }
    }
}
