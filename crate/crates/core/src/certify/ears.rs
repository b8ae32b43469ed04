//! Ears: facets meeting the boundary in a ball of one dimension less.

use serde::Serialize;

use crate::complex::{maximalize, popcount, Complex, Face};
use crate::error::{Error, Result};

use super::shelling::certify_k_shelled;
use super::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EarMode {
    /// Exact where possible, a budgeted shellability screen above dimension 2.
    Auto,
    /// Exact only; higher dimensions are an error.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EarReport {
    pub ears: Vec<Face>,
    /// False when some intersection was judged by the shellability screen.
    pub exact: bool,
}

fn is_path_or_cycle(l: &Complex) -> Option<bool> {
    if l.dim() != 1 || !l.is_pure() || !l.is_connected() {
        return None;
    }
    let v = l.vertex_count();
    let e = l.facet_count();
    if l.vertices().iter().any(|x| l.degree(x) > 2) {
        return None;
    }
    match e + 1 {
        x if x == v => Some(false),
        x if x == v + 1 => Some(true),
        _ => None,
    }
}

/// Exact recognition of balls of dimension at most 2.
fn is_low_ball(y: &Complex) -> bool {
    if y.is_void() || !y.is_pure() {
        return false;
    }
    match y.dim() {
        0 => y.vertex_count() == 1,
        1 => is_path_or_cycle(y) == Some(false),
        2 => {
            if !y.is_connected() || !y.is_weak_pseudomanifold() || y.euler_characteristic() != 1 {
                return false;
            }
            let links_ok = y.vertices().iter().all(|v| {
                y.link(&Face::new([v.clone()])).is_ok_and(|l| is_path_or_cycle(&l).is_some())
            });
            let bd = y.boundary_unchecked();
            links_ok && is_path_or_cycle(&bd) == Some(true)
        }
        _ => false,
    }
}

/// Screen for higher balls: a pseudomanifold with boundary that the
/// shelling search can build.
fn is_shellable_ball(y: &Complex) -> bool {
    let cls = y.classify();
    if !cls.pure || !cls.weak_pseudomanifold || cls.closed {
        return false;
    }
    let budget = SearchBudget { max_nodes: 10_000, ..Default::default() };
    certify_k_shelled(y, y.dim(), &budget).is_proved()
}

/// All ears of `B`, sorted. A single simplex is its own ear by convention.
pub fn ear_scan(b: &Complex) -> Result<Vec<Face>> {
    Ok(ear_scan_with(b, EarMode::Auto)?.ears)
}

pub fn ear_scan_with(b: &Complex, mode: EarMode) -> Result<EarReport> {
    if !b.is_weak_pseudomanifold() {
        return Err(Error::NotWeakPseudomanifold);
    }
    let facets = b.facet_masks();
    if facets.len() == 1 {
        return Ok(EarReport { ears: b.facets(), exact: true });
    }
    let e = b.dim() - 1;
    if e > 2 && mode == EarMode::Exact {
        return Err(Error::DimensionTooHigh(e));
    }
    let bd = b.boundary_unchecked();
    let bd_masks: Vec<_> = bd.facets().iter().map(|f| b.mask_of(f)).collect::<Result<_>>()?;
    let mut ears = Vec::new();
    for &alpha in facets {
        let inter: Vec<_> = bd_masks.iter().map(|&f| f & alpha).filter(|&m| popcount(m) > 0).collect();
        let inter = maximalize(inter);
        if inter.is_empty() {
            continue;
        }
        let y = b.with_masks(inter);
        if y.dim() != e {
            continue;
        }
        let ball = if e <= 2 { is_low_ball(&y) } else { is_shellable_ball(&y) };
        if ball {
            ears.push(b.face_of(alpha));
        }
    }
    ears.sort();
    Ok(EarReport { ears, exact: e <= 2 })
}
