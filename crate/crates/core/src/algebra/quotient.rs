use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::group::{AbelianGroup, GroupElement};
use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A homomorphism `Z^n -> G` given by the images of the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    group: AbelianGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(group: AbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        for g in &images {
            group.check(g)?;
        }
        Ok(GroupHom { group, images })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// Dimension of the domain.
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: &[i64]) -> Result<GroupElement> {
        if x.len() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                got: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[i64]) -> GroupElement {
        let factors = self.group.invariant_factors();
        let coords = factors
            .iter()
            .enumerate()
            .map(|(c, &m)| {
                let m = m as i128;
                let mut acc: i128 = 0;
                for (xi, img) in x.iter().zip(&self.images) {
                    let term = (*xi as i128).rem_euclid(m) * img.0[c] as i128 % m;
                    acc = (acc + term) % m;
                }
                acc as u64
            })
            .collect();
        GroupElement(coords)
    }

    /// Image as a mixed-radix group index.
    pub fn apply_index(&self, x: &[i64]) -> Result<u64> {
        let e = self.apply(x)?;
        Ok(self.group.index_of(&e))
    }

    pub fn apply_big(&self, x: &[BigInt]) -> Result<GroupElement> {
        if x.len() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                got: x.len(),
            });
        }
        let factors = self.group.invariant_factors();
        let coords = factors
            .iter()
            .enumerate()
            .map(|(c, &m)| {
                let mb = BigInt::from(m);
                let mut acc = BigInt::zero();
                for (xi, img) in x.iter().zip(&self.images) {
                    acc += xi * BigInt::from(img.0[c]);
                }
                let r = ((acc % &mb) + &mb) % &mb;
                r.to_u64().unwrap_or(0)
            })
            .collect();
        Ok(GroupElement(coords))
    }
}

/// `Z^n / L` for the lattice `L` spanned by the rows of `basis`, in
/// invariant-factor form, with the quotient map.
pub fn quotient_group(basis: &IntegerMatrix, n: usize) -> Result<(AbelianGroup, GroupHom)> {
    if basis.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.cols(),
        });
    }
    let snf = smith_normal_form(basis);
    let diag = snf.diagonal_entries();
    if diag.len() < n || diag.iter().any(|d| d.is_zero()) {
        return Err(Error::RankDeficient);
    }
    // x V maps L onto diag(d_1, ..., d_n) Z^n
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("invariant factor {d}")))?;
        if d > 1 {
            kept.push(i);
            factors.push(d);
        }
    }
    let group = AbelianGroup::new(&factors)?;
    debug_assert_eq!(group.invariant_factors(), factors.as_slice());
    let images = (0..n)
        .map(|j| {
            let coords: Vec<u64> = kept
                .iter()
                .zip(&factors)
                .map(|(&i, &d)| {
                    let db = BigInt::from(d);
                    let r = ((&snf.right[(j, i)] % &db) + &db) % &db;
                    r.to_u64().unwrap_or(0)
                })
                .collect();
            GroupElement(coords)
        })
        .collect();
    let hom = GroupHom::new(group.clone(), images)?;
    Ok((group, hom))
}
