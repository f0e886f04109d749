//! Difference sets and B_h sets: verification, constructions, normalization
//! and exhaustive search.

mod construct;
mod search;

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianGroup, GroupElement};
use crate::error::{Error, Result};

pub use construct::{bose_chowla, singer};
pub use search::{
    search_bh_in_group, search_min_group, search_planar, Budget, FoundSet, SearchKind,
    SearchReport,
};

/// Parameters `(v, k, lambda)` of a difference set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DsParams {
    /// The order `k - lambda`.
    pub fn order(&self) -> i64 {
        self.k as i64 - self.lambda as i64
    }
}

/// A verified `(v, k, lambda)`-difference set; elements sorted by group index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    group: AbelianGroup,
    elements: Vec<GroupElement>,
    params: DsParams,
}

impl DifferenceSet {
    pub fn new(group: AbelianGroup, elements: Vec<GroupElement>) -> Result<Self> {
        let params = verify_difference_set(&group, &elements)?.ok_or_else(|| {
            Error::InvalidParameter("the elements do not form a difference set".into())
        })?;
        let elements = sorted(&group, elements);
        Ok(DifferenceSet {
            group,
            elements,
            params,
        })
    }

    /// Convenience constructor for `Z_v`.
    pub fn cyclic(v: u64, elements: &[u64]) -> Result<Self> {
        let group = AbelianGroup::cyclic(v)?;
        let elems = cyclic_elements(&group, elements)?;
        Self::new(group, elems)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn params(&self) -> DsParams {
        self.params
    }

    pub fn order_n(&self) -> i64 {
        self.params.order()
    }

    pub fn is_planar(&self) -> bool {
        self.params.lambda == 1
    }

    /// Element values when the group is cyclic.
    pub fn cyclic_values(&self) -> Option<Vec<u64>> {
        cyclic_values(&self.group, &self.elements)
    }
}

/// A verified B_h set, translated to contain 0 and sorted by group index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhSet {
    group: AbelianGroup,
    h: u32,
    elements: Vec<GroupElement>,
}

impl BhSet {
    pub fn new(group: AbelianGroup, elements: Vec<GroupElement>, h: u32) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParameter("a B_h set needs at least one element".into()));
        }
        let elements = translate_to_zero(&group, elements)?;
        if !verify_bh(&group, &elements, h)? {
            return Err(Error::InvalidParameter(format!(
                "the elements do not form a B_{h} set"
            )));
        }
        Ok(BhSet { group, h, elements })
    }

    pub fn cyclic(v: u64, elements: &[u64], h: u32) -> Result<Self> {
        let group = AbelianGroup::cyclic(v)?;
        let elems = cyclic_elements(&group, elements)?;
        Self::new(group, elems, h)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn cyclic_values(&self) -> Option<Vec<u64>> {
        cyclic_values(&self.group, &self.elements)
    }
}

pub(crate) fn cyclic_elements(group: &AbelianGroup, values: &[u64]) -> Result<Vec<GroupElement>> {
    values
        .iter()
        .map(|&x| {
            let e = match group.rank() {
                0 => GroupElement(vec![]),
                _ => GroupElement(vec![x]),
            };
            if group.rank() == 0 && x != 0 {
                return Err(Error::ElementOutOfRange(vec![x as i64]));
            }
            group.check(&e)?;
            Ok(e)
        })
        .collect()
}

pub(crate) fn cyclic_values(group: &AbelianGroup, elements: &[GroupElement]) -> Option<Vec<u64>> {
    group
        .is_cyclic()
        .then(|| elements.iter().map(|e| group.index_of(e)).collect())
}

fn sorted(group: &AbelianGroup, mut elements: Vec<GroupElement>) -> Vec<GroupElement> {
    elements.sort_by_key(|e| group.index_of(e));
    elements
}

/// Subtracts the smallest element from every element and re-sorts, so 0 comes first.
pub(crate) fn translate_to_zero(
    group: &AbelianGroup,
    elements: Vec<GroupElement>,
) -> Result<Vec<GroupElement>> {
    for e in &elements {
        group.check(e)?;
    }
    let elements = sorted(group, elements);
    let Some(first) = elements.first().cloned() else {
        return Ok(elements);
    };
    let shifted = elements
        .iter()
        .map(|e| group.sub(e, &first))
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted(group, shifted))
}

fn check_distinct(group: &AbelianGroup, elements: &[GroupElement]) -> Result<Vec<u64>> {
    let mut seen = HashSet::with_capacity(elements.len());
    let mut idx = Vec::with_capacity(elements.len());
    for e in elements {
        group.check(e)?;
        let i = group.index_of(e);
        if !seen.insert(i) {
            return Err(Error::DuplicateElement(e.0.clone()));
        }
        idx.push(i);
    }
    Ok(idx)
}

/// Returns `(v, k, lambda)` iff every nonzero element of `group` occurs the
/// same number of times as a difference `d_i - d_j`, counted over all ordered pairs.
pub fn verify_difference_set(
    group: &AbelianGroup,
    elements: &[GroupElement],
) -> Result<Option<DsParams>> {
    check_distinct(group, elements)?;
    if elements.is_empty() {
        return Err(Error::InvalidParameter("empty set".into()));
    }
    let v = group.order();
    let k = elements.len() as u64;
    if v == 1 {
        return Ok(Some(DsParams { v, k, lambda: k }));
    }
    let mut counts: HashMap<GroupElement, u64> = HashMap::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if i != j {
                *counts.entry(group.sub(a, b)?).or_default() += 1;
            }
        }
    }
    let pairs = k * (k - 1);
    if !pairs.is_multiple_of(v - 1) {
        return Ok(None);
    }
    let lambda = pairs / (v - 1);
    if lambda == 0 {
        return Ok(None);
    }
    let uniform = counts.len() as u64 == v - 1 && counts.values().all(|&c| c == lambda);
    Ok(uniform.then_some(DsParams { v, k, lambda }))
}

/// True iff all `C(k + h - 1, h)` multiset sums of `h` elements are pairwise distinct.
pub fn verify_bh(group: &AbelianGroup, elements: &[GroupElement], h: u32) -> Result<bool> {
    if h < 1 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    check_distinct(group, elements)?;
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut stack = vec![(0usize, 0u32, group.zero())];
    // depth-first over nondecreasing index sequences
    while let Some((start, depth, sum)) = stack.pop() {
        if depth == h {
            if !seen.insert(sum) {
                return Ok(false);
            }
            continue;
        }
        for i in start..elements.len() {
            stack.push((i, depth + 1, group.add(&sum, &elements[i])?));
        }
    }
    Ok(true)
}

/// Canonical representative of `{z d + g}` over units `z` of `Z_v` and shifts `g`:
/// the lexicographically smallest sorted image containing 0 and 1 (or, if no
/// image contains both, the smallest image containing 0).
pub fn normalize_cyclic(v: u64, elements: &[u64]) -> Result<Vec<u64>> {
    if v == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let mut best_with_one: Option<Vec<u64>> = None;
    let mut best_any: Option<Vec<u64>> = None;
    for z in (1..v.max(2)).filter(|z| z.gcd(&v) == 1) {
        for &d0 in elements {
            let mut image: Vec<u64> = elements
                .iter()
                .map(|&d| ((d as i128 - d0 as i128) * z as i128).rem_euclid(v as i128) as u64)
                .collect();
            image.sort_unstable();
            let has_one = image.get(1) == Some(&1);
            if has_one && best_with_one.as_ref().is_none_or(|b| image < *b) {
                best_with_one = Some(image.clone());
            }
            if best_any.as_ref().is_none_or(|b| image < *b) {
                best_any = Some(image);
            }
        }
    }
    Ok(best_with_one.or(best_any).unwrap_or_default())
}

/// Canonical representative of the equivalence class of a cyclic difference set.
pub fn normalize_equivalence(set: &DifferenceSet) -> Result<DifferenceSet> {
    let values = set.cyclic_values().ok_or(Error::NotCyclic)?;
    let v = set.group.order();
    let canon = normalize_cyclic(v, &values)?;
    let elements = cyclic_elements(&set.group, &canon)?;
    Ok(DifferenceSet {
        group: set.group.clone(),
        elements,
        params: set.params,
    })
}
