use std::collections::HashMap;

use rand::RngCore;
use serde::Serialize;

use super::{FiniteCode, LatticeCode};
use crate::algebra::{AbelianGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::geometry::Shape;
use crate::limits::Limits;
use crate::sets::translate_to_zero;

/// Anything with a syndrome map `Z^n -> G` whose kernel is the code.
pub trait Code {
    fn syndrome_map(&self) -> &GroupHom;

    fn length(&self) -> usize {
        self.syndrome_map().dim()
    }

    fn syndrome(&self, y: &[i64]) -> Result<GroupElement> {
        self.syndrome_map().apply(y)
    }

    /// Canonical representative of a word (mod `v` for finite codes).
    fn reduce(&self, y: Vec<i64>) -> Vec<i64>;

    fn random_codeword(&self, rng: &mut dyn RngCore) -> Vec<i64>;
}

impl Code for LatticeCode {
    fn syndrome_map(&self) -> &GroupHom {
        &self.hom
    }

    fn reduce(&self, y: Vec<i64>) -> Vec<i64> {
        y
    }

    fn random_codeword(&self, rng: &mut dyn RngCore) -> Vec<i64> {
        self.random_combination(rng)
    }
}

impl Code for FiniteCode {
    fn syndrome_map(&self) -> &GroupHom {
        FiniteCode::syndrome_map(self)
    }

    fn reduce(&self, y: Vec<i64>) -> Vec<i64> {
        FiniteCode::reduce(self, &y).into_iter().map(|x| x as i64).collect()
    }

    fn random_codeword(&self, rng: &mut dyn RngCore) -> Vec<i64> {
        FiniteCode::random_codeword(self, rng)
    }
}

/// Syndrome -> error vector over the shape `S_n(r+, r-)`, injective by construction.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    shape: Shape,
    group: AbelianGroup,
    map: HashMap<GroupElement, Vec<i64>>,
}

impl SyndromeTable {
    /// Fails with [`Error::SyndromeCollision`] on the first two shape points
    /// (in enumeration order) sharing a syndrome.
    pub fn build(hom: &GroupHom, shape: Shape, limits: &Limits) -> Result<Self> {
        if hom.dim() != shape.n {
            return Err(Error::DimensionMismatch {
                expected: hom.dim(),
                got: shape.n,
            });
        }
        limits.check_enum(u128::try_from(shape.size()).unwrap_or(u128::MAX))?;
        let mut map = HashMap::new();
        for p in shape.iter() {
            let s = hom.apply_unchecked(&p);
            if let Some(first) = map.get(&s) {
                return Err(Error::SyndromeCollision {
                    first: Vec::clone(first),
                    second: p,
                });
            }
            map.insert(s, p);
        }
        Ok(SyndromeTable {
            shape,
            group: hom.group().clone(),
            map,
        })
    }

    /// Table for the code of a set `{b_0, ..., b_n}` in `group` (sorted, `b_0` translated to 0).
    pub fn for_set(
        group: &AbelianGroup,
        elements: &[GroupElement],
        r_plus: u32,
        r_minus: u32,
        limits: &Limits,
    ) -> Result<Self> {
        let normalized = translate_to_zero(group, elements.to_vec())?;
        if normalized.is_empty() {
            return Err(Error::InvalidParameter("empty set".into()));
        }
        let hom = GroupHom::new(group.clone(), normalized[1..].to_vec())?;
        Self::build(&hom, Shape::new(hom.dim(), r_plus, r_minus), limits)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn r_plus(&self) -> u32 {
        self.shape.r_plus
    }

    pub fn r_minus(&self) -> u32 {
        self.shape.r_minus
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn lookup(&self, syndrome: &GroupElement) -> Option<&[i64]> {
        self.map.get(syndrome).map(Vec::as_slice)
    }

    /// True when every group element is a syndrome of the shape.
    pub fn is_bijective(&self) -> bool {
        self.map.len() as u64 == self.group.order()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Decoded {
    Corrected { codeword: Vec<i64>, error: Vec<i64> },
    /// The syndrome is not produced by any shape point.
    Detected,
}

/// Subtracts the table entry for the syndrome of `y`.
pub fn decode_radius_r<C: Code + ?Sized>(table: &SyndromeTable, code: &C, y: &[i64]) -> Result<Decoded> {
    if code.syndrome_map().group() != table.group() || code.length() != table.shape.n {
        return Err(Error::Precondition(
            "syndrome table was built for a different code".into(),
        ));
    }
    let s = code.syndrome(y)?;
    Ok(match table.lookup(&s) {
        Some(e) => Decoded::Corrected {
            codeword: code.reduce(y.iter().zip(e).map(|(a, b)| a - b).collect()),
            error: e.to_vec(),
        },
        None => Decoded::Detected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::cyclic_elements;

    fn table(v: u64, xs: &[u64], rp: u32, rm: u32) -> Result<SyndromeTable> {
        let g = AbelianGroup::cyclic(v).unwrap();
        SyndromeTable::for_set(&g, &cyclic_elements(&g, xs).unwrap(), rp, rm, &Limits::default())
    }

    #[test]
    fn tables_for_small_sets() {
        let t = table(7, &[0, 1, 3], 1, 1).unwrap();
        assert_eq!(t.len(), 7);
        assert!(t.is_bijective());
        let t = table(7, &[0, 1, 3], 2, 0).unwrap();
        assert_eq!(t.len(), 6);
        let mut sums: Vec<u64> = t.map.keys().map(|k| k.0[0]).collect();
        sums.sort();
        assert_eq!(sums, vec![0, 1, 2, 3, 4, 6]);
        assert!(matches!(
            table(7, &[0, 1, 2], 1, 1),
            Err(Error::SyndromeCollision { .. })
        ));
    }

    #[test]
    fn detect_outside_shape() {
        let code = FiniteCode::new(7, &[1, 3]).unwrap();
        let t = table(7, &[0, 1, 3], 2, 0).unwrap();
        let c = code.encode(&[5]).unwrap();
        let c: Vec<i64> = c.into_iter().map(|x| x as i64).collect();
        let y: Vec<i64> = vec![c[0] + 2, c[1]];
        assert_eq!(
            decode_radius_r(&t, &code, &y).unwrap(),
            Decoded::Corrected {
                codeword: c.clone(),
                error: vec![2, 0]
            }
        );
        // syndrome -2 = 5 is not a sum of at most two of {1, 3}
        let y = vec![c[0] - 2, c[1]];
        assert_eq!(decode_radius_r(&t, &code, &y).unwrap(), Decoded::Detected);
        // (0, -1) has syndrome 4 = 1 + 3 and aliases to (1, 1)
        let y = vec![c[0], c[1] - 1];
        assert!(matches!(
            decode_radius_r(&t, &code, &y).unwrap(),
            Decoded::Corrected { error, .. } if error == vec![1, 1]
        ));
    }
}
