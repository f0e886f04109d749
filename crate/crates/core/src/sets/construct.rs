use std::collections::BTreeSet;

use super::{cyclic_elements, normalize_equivalence, BhSet, DifferenceSet};
use crate::algebra::{prime_power, AbelianGroup, FiniteField};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Planar difference set of order `q` in `Z_{q^2+q+1}`, normalized.
///
/// With `theta` primitive in GF(q^3), the exponents `a` for which `theta^a`
/// lies in the GF(q)-span of `{1, theta}` form a union of cosets of the
/// kernel of `Z_{q^3-1} -> Z_v`; their residues mod `v` are the set.
pub fn singer(q: u64, limits: &Limits) -> Result<DifferenceSet> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let big = FiniteField::of_order(q.checked_pow(3).ok_or(Error::FieldTooLarge {
        order: (q as u128).pow(3),
        bound: limits.field_bound,
    })?, limits)?;
    let v = q * q + q + 1;
    let sub = big.subfield(q)?;
    let theta = big.primitive();
    let mut residues = BTreeSet::new();
    for &a in &sub {
        for &b in &sub {
            let x = big.add(a, big.mul(b, theta));
            if x.0 != 0 {
                residues.insert(big.dlog(x)? % v);
            }
        }
    }
    let values: Vec<u64> = residues.into_iter().collect();
    let ds = DifferenceSet::cyclic(v, &values)?;
    normalize_equivalence(&ds)
}

/// B_h set of size `q` in `Z_{q^h - 1}`: `{dlog(theta + c) : c in GF(q)}`,
/// translated so the minimum is 0.
///
/// For `h = 1` the cyclic group would be too small to hold `q` distinct
/// elements, so the degenerate B_1 set `{0, ..., q-1}` in `Z_q` is returned.
pub fn bose_chowla(q: u64, h: u32, limits: &Limits) -> Result<BhSet> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if h < 1 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    if h == 1 {
        let values: Vec<u64> = (0..q).collect();
        return BhSet::cyclic(q, &values, 1);
    }
    let order = (q as u128).checked_pow(h).unwrap_or(u128::MAX);
    if order > limits.field_bound as u128 {
        return Err(Error::FieldTooLarge {
            order,
            bound: limits.field_bound,
        });
    }
    let big = FiniteField::of_order(order as u64, limits)?;
    let theta = big.primitive();
    let values = big
        .subfield(q)?
        .into_iter()
        .map(|c| big.dlog(big.add(theta, c)))
        .collect::<Result<Vec<u64>>>()?;
    let group = AbelianGroup::cyclic(big.order() - 1)?;
    let elements = cyclic_elements(&group, &values)?;
    BhSet::new(group, elements, h)
}
