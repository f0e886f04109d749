//! Certifiers for covers, packings, perfect codes and tilings, the lower and
//! upper bounds on B_h parameters, and the conjecture experiments.

mod bounds;
mod experiments;

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::algebra::{quotient_group, AbelianGroup, GroupElement};
use crate::codes::{LatticeCode, SyndromeTable};
use crate::error::{Error, Result};
use crate::geometry::{drop0, AnPoint, Shape};
use crate::limits::Limits;
use crate::sets::{verify_difference_set, DsParams};

pub use bounds::{
    bound_f_h, bound_h_k, bound_phi_h, bound_phi_k, check_witness_bounds, BoundCheck, BoundReport,
    FormulaId, Relation,
};
pub use experiments::{experiment_cyclicity, experiment_ppc, CyclicityRow, PpcRow};

/// Coverage profile of the radius-`r` balls around the points of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub r: u32,
    /// Number of balls containing a lattice point.
    pub i: u64,
    /// Number of balls containing a non-lattice point, if the same for all of them.
    #[serde(serialize_with = "uniform_or_tag")]
    pub j: Option<u64>,
    pub is_cover: bool,
    /// First nonzero coset (in index order) whose count differs from the first one.
    pub witness: Option<GroupElement>,
}

fn uniform_or_tag<S: Serializer>(j: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match j {
        Some(x) => s.serialize_u64(*x),
        None => s.serialize_str("nonuniform"),
    }
}

/// Counts, for every coset of `Z^n / L`, how many ball points map to it.
/// The count at coset `g` is the number of balls centred in `L` that cover
/// any point of `g`.
pub fn check_cover(code: &LatticeCode, r: u32, limits: &Limits) -> Result<CoverReport> {
    let group = code.quotient();
    let shape = Shape::ball(code.n(), r);
    limits.check_enum(u128::try_from(shape.size()).unwrap_or(u128::MAX))?;
    limits.check_enum(group.order())?;
    let hom = code.syndrome_map();
    let mut hist: HashMap<GroupElement, u64> = HashMap::new();
    for p in shape.iter() {
        *hist.entry(hom.apply_unchecked(&p)).or_default() += 1;
    }
    let i = hist.get(&group.zero()).copied().unwrap_or(0);
    let mut j = None;
    let mut witness = None;
    for g in group.elements().skip(1) {
        let c = hist.get(&g).copied().unwrap_or(0);
        match j {
            None => j = Some(c),
            Some(first) if first != c => {
                witness = Some(g);
                break;
            }
            _ => {}
        }
    }
    if group.order() == 1 {
        // no non-lattice points: vacuously uniform
        j = Some(0);
    }
    if witness.is_some() {
        j = None;
    }
    Ok(CoverReport {
        r,
        i,
        j,
        is_cover: j.is_some(),
        witness,
    })
}

/// True iff the translates of `shape` by `L` are pairwise disjoint.
pub fn check_packing(code: &LatticeCode, shape: Shape, limits: &Limits) -> Result<bool> {
    if shape.n != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            got: shape.n,
        });
    }
    if shape.size() > code.det_abs().into() {
        return Ok(false);
    }
    match SyndromeTable::build(code.syndrome_map(), shape, limits) {
        Ok(_) => Ok(true),
        Err(Error::SyndromeCollision { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Packing by the shape with `|shape| = |det L|`.
pub fn check_tiling(code: &LatticeCode, shape: Shape, limits: &Limits) -> Result<bool> {
    if shape.size() != code.det_abs().into() {
        return Ok(false);
    }
    check_packing(code, shape, limits)
}

/// `L` is an `r`-perfect code: the radius-`r` balls tile.
pub fn check_perfect(code: &LatticeCode, r: u32, limits: &Limits) -> Result<bool> {
    check_tiling(code, Shape::ball(code.n(), r), limits)
}

/// Smallest `t >= 1` with `t f_{i,j}` in `L`.
pub fn period_along(code: &LatticeCode, i: usize, j: usize) -> Result<u64> {
    if i == j {
        return Err(Error::InvalidParameter("direction needs i != j".into()));
    }
    let f = AnPoint::direction(code.n(), i, j)?;
    let x = drop0(&f);
    let s = code.syndrome(&x.0)?;
    code.quotient().element_order(&s)
}

/// Reads off `{0, [e_1], ..., [e_n]}` in `Z^n / L`, with the quotient computed
/// afresh from the basis.
pub fn extract_set(code: &LatticeCode) -> Result<(AbelianGroup, Vec<GroupElement>)> {
    let (group, hom) = quotient_group(code.basis(), code.n())?;
    let elements = std::iter::once(group.zero())
        .chain(hom.images().iter().cloned())
        .collect();
    Ok((group, elements))
}

/// Difference-set parameters of [`extract_set`], if it is one.
pub fn extract_difference_set(code: &LatticeCode) -> Result<Option<DsParams>> {
    let (group, elements) = extract_set(code)?;
    let mut seen = std::collections::HashSet::new();
    if !elements.iter().all(|e| seen.insert(e.clone())) {
        return Ok(None);
    }
    verify_difference_set(&group, &elements)
}
