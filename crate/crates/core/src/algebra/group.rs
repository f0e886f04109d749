use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted anywhere in the crate.
pub const MAX_GROUP_ORDER: u64 = 1 << 62;

/// A finite abelian group `Z_{m_1} x ... x Z_{m_s}` with `m_i | m_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// Coordinates of an element, `coords[i]` reduced modulo the `i`-th invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

impl AbelianGroup {
    /// Builds the group from any list of cyclic factors, normalizing to invariant-factor form.
    pub fn new(factors: &[u64]) -> Result<Self> {
        let mut order: u64 = 1;
        for &m in factors {
            if m == 0 {
                return Err(Error::InvalidParameter(
                    "cyclic factor 0 describes an infinite group".into(),
                ));
            }
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::Overflow(format!("group order of {factors:?}")))?;
        }
        let mut chain: Vec<u64> = factors.iter().copied().filter(|&m| m > 1).collect();
        // pairwise (gcd, lcm) sweeps give the Smith form of diag(chain)
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                let (a, b) = (chain[i], chain[j]);
                let g = a.gcd(&b);
                chain[i] = g;
                chain[j] = a / g * b;
            }
        }
        chain.retain(|&m| m > 1);
        Ok(AbelianGroup {
            factors: chain,
            order,
        })
    }

    pub fn cyclic(v: u64) -> Result<Self> {
        Self::new(&[v])
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Element with the given (unreduced, possibly negative) coordinates.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &m)| (c as i128).rem_euclid(m as i128) as u64)
                .collect(),
        ))
    }

    /// Checks that `a` is a reduced element of this group.
    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: a.0.len(),
            });
        }
        if a.0.iter().zip(&self.factors).any(|(&c, &m)| c >= m) {
            return Err(Error::ElementOutOfRange(
                a.0.iter().map(|&c| c as i64).collect(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &m)| ((x as u128 + y as u128) % m as u128) as u64)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
                .collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// `z` copies of `a`, or `|z|` copies of `-a` when `z < 0`.
    pub fn scale(&self, a: &GroupElement, z: i64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| (x as i128 * z as i128).rem_euclid(m as i128) as u64)
                .collect(),
        ))
    }

    /// Order of `a` as a group element.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.0
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| m / x.gcd(&m))
            .fold(1u64, |acc, o| acc.lcm(&o)))
    }

    /// Mixed-radix index in `[0, order)`; index order is lexicographic order on coordinates.
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&c, &m)| acc * m + c)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &m) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % m;
            index /= m;
        }
        GroupElement(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Every abelian group of order `v`, cyclic first, then by factor list.
    pub fn all_of_order(v: u64) -> Result<Vec<AbelianGroup>> {
        if v == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if v > MAX_GROUP_ORDER {
            return Err(Error::Overflow(format!("group order {v}")));
        }
        let mut chains = Vec::new();
        chains_from(v, 1, &mut Vec::new(), &mut chains);
        chains.sort_by(|a: &Vec<u64>, b: &Vec<u64>| a.len().cmp(&b.len()).then(a.cmp(b)));
        chains.iter().map(|c| AbelianGroup::new(c)).collect()
    }
}

fn chains_from(rest: u64, prev: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 1 {
        out.push(current.clone());
        return;
    }
    // every later factor is a multiple of m, so m^2 | rest unless m is the last factor
    let mut m = prev.max(2);
    while m.saturating_mul(m) <= rest {
        if rest.is_multiple_of(m) && m.is_multiple_of(prev) && (rest / m).is_multiple_of(m) {
            current.push(m);
            chains_from(rest / m, m, current, out);
            current.pop();
        }
        m += 1;
    }
    if rest.is_multiple_of(prev) {
        current.push(rest);
        out.push(current.clone());
        current.pop();
    }
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        AbelianGroup::new(&v)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Self {
        g.factors
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{m}")?;
        }
        Ok(())
    }
}
