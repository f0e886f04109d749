use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, RngCore};

use super::check_normalized;
use crate::algebra::{AbelianGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::sets::DifferenceSet;

/// Length-`n` code over `Z_v` with a single parity check `H y = 0 mod v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCode {
    v: u64,
    parity_row: Vec<u64>,
    hom: GroupHom,
    /// `d_i - d_j -> (i, j)` over the set `{0} + parity_row`, when injective.
    differences: Option<HashMap<u64, (usize, usize)>>,
}

impl FiniteCode {
    /// Code with parity row `H`; entries are reduced mod `v`.
    pub fn new(v: u64, parity_row: &[u64]) -> Result<Self> {
        if parity_row.is_empty() {
            return Err(Error::InvalidParameter("parity row is empty".into()));
        }
        let group = AbelianGroup::cyclic(v)?;
        let row: Vec<u64> = parity_row.iter().map(|&h| h % v).collect();
        let images = row
            .iter()
            .map(|&h| {
                if group.rank() == 0 {
                    GroupElement(vec![])
                } else {
                    GroupElement(vec![h])
                }
            })
            .collect();
        let hom = GroupHom::new(group, images)?;
        let differences = difference_table(v, &row);
        Ok(FiniteCode {
            v,
            parity_row: row,
            hom,
            differences,
        })
    }

    /// The code `H = (1, d_2, ..., d_n)` of a normalized cyclic difference set.
    pub fn from_difference_set(set: &DifferenceSet) -> Result<Self> {
        let values = set.cyclic_values().ok_or(Error::NotCyclic)?;
        check_normalized(&values)?;
        Self::new(set.group().order(), &values[1..])
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn n(&self) -> usize {
        self.parity_row.len()
    }

    pub fn parity_row(&self) -> &[u64] {
        &self.parity_row
    }

    /// The underlying set `{0, h_1, ..., h_n}`.
    pub fn d_elements(&self) -> Vec<u64> {
        std::iter::once(0).chain(self.parity_row.iter().copied()).collect()
    }

    pub fn syndrome_map(&self) -> &GroupHom {
        &self.hom
    }

    /// `v^(n-1)` when `h_1` is a unit.
    pub fn codeword_count(&self) -> BigUint {
        let g = self.parity_row.iter().fold(self.v, |g, &h| g.gcd(&h));
        // the image of H is the subgroup generated by gcd(v, h_i)
        BigUint::from(self.v).pow(self.n() as u32) / BigUint::from(self.v / g)
    }

    pub fn syndrome(&self, y: &[i64]) -> Result<u64> {
        if y.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: y.len(),
            });
        }
        let v = self.v as i128;
        let s = y
            .iter()
            .zip(&self.parity_row)
            .fold(0i128, |acc, (&x, &h)| (acc + (x as i128).rem_euclid(v) * h as i128) % v);
        Ok(s as u64)
    }

    fn h1_inverse(&self) -> Result<u64> {
        let h1 = self.parity_row[0] as i128;
        let v = self.v as i128;
        let e = num_integer::Integer::extended_gcd(&h1, &v);
        if e.gcd != 1 {
            return Err(Error::NotNormalized(format!(
                "first parity entry {h1} is not a unit mod {v}"
            )));
        }
        Ok(e.x.rem_euclid(v) as u64)
    }

    /// Systematic encoding: positions 2..n carry `info`, position 1 the check symbol.
    pub fn encode(&self, info: &[u64]) -> Result<Vec<u64>> {
        if info.len() + 1 != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n() - 1,
                got: info.len(),
            });
        }
        if let Some(&bad) = info.iter().find(|&&x| x >= self.v) {
            return Err(Error::ElementOutOfRange(vec![bad as i64]));
        }
        let inv = self.h1_inverse()? as i128;
        let v = self.v as i128;
        let rest = info
            .iter()
            .zip(&self.parity_row[1..])
            .fold(0i128, |acc, (&x, &h)| (acc + x as i128 * h as i128) % v);
        let x1 = ((-rest).rem_euclid(v) * inv % v) as u64;
        Ok(std::iter::once(x1).chain(info.iter().copied()).collect())
    }

    pub fn reduce(&self, y: &[i64]) -> Vec<u64> {
        y.iter()
            .map(|&x| (x as i128).rem_euclid(self.v as i128) as u64)
            .collect()
    }

    /// Corrects one error `f_{i,j}` for codes from planar difference sets.
    /// Returns the codeword and the error that was removed.
    pub fn decode_radius1(&self, y: &[i64]) -> Result<(Vec<u64>, Vec<i64>)> {
        let table = self.differences.as_ref().ok_or(Error::NotPlanar)?;
        let s = self.syndrome(y)?;
        let mut error = vec![0i64; self.n()];
        if s != 0 {
            // every nonzero syndrome is d_i - d_j for exactly one pair
            let &(i, j) = table.get(&s).ok_or(Error::NotPlanar)?;
            if i > 0 {
                error[i - 1] += 1;
            }
            if j > 0 {
                error[j - 1] -= 1;
            }
        }
        let corrected: Vec<i64> = y.iter().zip(&error).map(|(a, e)| a - e).collect();
        Ok((self.reduce(&corrected), error))
    }

    pub(crate) fn random_codeword(&self, rng: &mut dyn RngCore) -> Vec<i64> {
        match self.h1_inverse() {
            Ok(_) => {
                let info: Vec<u64> = (1..self.n()).map(|_| rng.random_range(0..self.v)).collect();
                self.encode(&info)
                    .map(|c| c.into_iter().map(|x| x as i64).collect())
                    .unwrap_or_else(|_| vec![0; self.n()])
            }
            Err(_) => {
                let step = self.v / self.v.gcd(&self.parity_row[0]);
                let mut c = vec![0i64; self.n()];
                c[0] = (rng.random_range(0..self.v) * step % self.v) as i64;
                c
            }
        }
    }
}

/// Injective difference table of `{0} + row` covering every nonzero residue, if any.
fn difference_table(v: u64, row: &[u64]) -> Option<HashMap<u64, (usize, usize)>> {
    let d: Vec<u64> = std::iter::once(0).chain(row.iter().copied()).collect();
    let mut table = HashMap::new();
    for (i, &a) in d.iter().enumerate() {
        for (j, &b) in d.iter().enumerate() {
            if i != j && table.insert((a + v - b) % v, (i, j)).is_some() {
                return None;
            }
        }
    }
    (table.len() as u64 + 1 == v && !table.contains_key(&0)).then_some(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singer13() -> FiniteCode {
        FiniteCode::from_difference_set(&DifferenceSet::cyclic(13, &[0, 1, 3, 9]).unwrap()).unwrap()
    }

    #[test]
    fn encode_and_count() {
        let c = singer13();
        assert_eq!((c.v(), c.n(), c.parity_row()), (13, 3, &[1, 3, 9][..]));
        assert_eq!(c.codeword_count(), BigUint::from(169u32));
        assert_eq!(c.encode(&[3, 0]).unwrap(), vec![4, 3, 0]);
        assert_eq!(c.encode(&[0, 0]).unwrap(), vec![0, 0, 0]);
        let c7 = FiniteCode::new(7, &[1, 3]).unwrap();
        assert_eq!(c7.encode(&[5]).unwrap(), vec![6, 5]);
        assert_eq!(c7.codeword_count(), BigUint::from(7u32));
        let c3 = FiniteCode::new(3, &[1]).unwrap();
        assert_eq!(c3.encode(&[]).unwrap(), vec![0]);
        assert_eq!(c3.codeword_count(), BigUint::from(1u32));
    }

    #[test]
    fn syndromes() {
        let c = singer13();
        assert_eq!(c.syndrome(&[4, 4, 12]).unwrap(), 7);
        assert_eq!(c.syndrome(&[4, 3, 0]).unwrap(), 0);
        assert_eq!(c.syndrome(&[0, 1, -1]).unwrap(), 7);
        assert!(c.syndrome(&[1, 2]).is_err());
    }

    #[test]
    fn radius_one_decoding() {
        let c = singer13();
        let (w, e) = c.decode_radius1(&[4, 4, 12]).unwrap();
        assert_eq!(w, vec![4, 3, 0]);
        assert_eq!(e, vec![0, 1, -1]);
        assert_eq!(c.decode_radius1(&[4, 3, 0]).unwrap().0, vec![4, 3, 0]);
        let not_planar = FiniteCode::new(7, &[1, 2]).unwrap();
        assert_eq!(not_planar.decode_radius1(&[1, 0]), Err(Error::NotPlanar));
    }
}
