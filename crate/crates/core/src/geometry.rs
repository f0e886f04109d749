//! `(A_n, d)` and `(Z^n, d_a)`, the shapes `S_n(r+, r-)` and their volumes.
//!
//! `A_n` is the set of integer vectors of length `n + 1` summing to zero, with
//! `d(x, y) = |x - y|_1 / 2`. Dropping coordinate 0 is an isometry onto `Z^n`
//! with `d_a(x, y) = max(sum of positive parts of x - y, sum of negative parts)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AnPoint(Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZnPoint(pub Vec<i64>);

impl AnPoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let sum: i128 = coords.iter().map(|&c| c as i128).sum();
        if sum != 0 {
            return Err(Error::NotInAn(sum));
        }
        Ok(AnPoint(coords))
    }

    pub fn origin(n: usize) -> Self {
        AnPoint(vec![0; n + 1])
    }

    /// The neighbor direction `f_{i,j}`: `+1` at `i`, `-1` at `j`, zero when `i == j`.
    pub fn direction(n: usize, i: usize, j: usize) -> Result<Self> {
        if i > n || j > n {
            return Err(Error::InvalidParameter(format!(
                "direction ({i}, {j}) outside 0..={n}"
            )));
        }
        let mut c = vec![0; n + 1];
        if i != j {
            c[i] = 1;
            c[j] = -1;
        }
        Ok(AnPoint(c))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `n` such that the point lives in `A_n`.
    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, other: &AnPoint) -> Result<AnPoint> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                got: other.0.len(),
            });
        }
        Ok(AnPoint(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl TryFrom<Vec<i64>> for AnPoint {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        AnPoint::new(v)
    }
}

impl From<AnPoint> for Vec<i64> {
    fn from(p: AnPoint) -> Self {
        p.0
    }
}

impl ZnPoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// Half the `l1` distance; always an integer on `A_n`.
pub fn metric_d(x: &AnPoint, y: &AnPoint) -> Result<u64> {
    if x.0.len() != y.0.len() {
        return Err(Error::DimensionMismatch {
            expected: x.0.len(),
            got: y.0.len(),
        });
    }
    let l1: i128 = x
        .0
        .iter()
        .zip(&y.0)
        .map(|(&a, &b)| (a as i128 - b as i128).abs())
        .sum();
    Ok((l1 / 2) as u64)
}

pub fn metric_da(x: &ZnPoint, y: &ZnPoint) -> Result<u64> {
    if x.0.len() != y.0.len() {
        return Err(Error::DimensionMismatch {
            expected: x.0.len(),
            got: y.0.len(),
        });
    }
    let (mut pos, mut neg) = (0i128, 0i128);
    for (&a, &b) in x.0.iter().zip(&y.0) {
        let d = a as i128 - b as i128;
        if d > 0 {
            pos += d;
        } else {
            neg -= d;
        }
    }
    Ok(pos.max(neg) as u64)
}

pub fn drop0(x: &AnPoint) -> ZnPoint {
    ZnPoint(x.0.iter().skip(1).copied().collect())
}

pub fn lift0(x: &ZnPoint) -> Result<AnPoint> {
    let sum: i128 = x.0.iter().map(|&c| c as i128).sum();
    let x0 = i64::try_from(-sum).map_err(|_| Error::Overflow("lift0 coordinate".into()))?;
    let mut c = Vec::with_capacity(x.0.len() + 1);
    c.push(x0);
    c.extend_from_slice(&x.0);
    Ok(AnPoint(c))
}

/// `S_n(r+, r-)`: integer vectors whose positive coordinates sum to at most
/// `r_plus` and whose negative coordinates sum to at least `-r_minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub r_plus: u32,
    pub r_minus: u32,
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

impl Shape {
    pub fn new(n: usize, r_plus: u32, r_minus: u32) -> Self {
        Shape {
            n,
            r_plus,
            r_minus,
        }
    }

    /// The ball of radius `r` in `(Z^n, d_a)`.
    pub fn ball(n: usize, r: u32) -> Self {
        Shape::new(n, r, r)
    }

    pub fn h(&self) -> u32 {
        self.r_plus + self.r_minus
    }

    /// Closed-form cardinality `sum_m C(n,m) C(r+,m) C(r- + n - m, n - m)`.
    pub fn size(&self) -> BigUint {
        let n = self.n as u64;
        let (rp, rm) = (self.r_plus as u64, self.r_minus as u64);
        (0..=n.min(rp))
            .map(|m| binomial(n, m) * binomial(rp, m) * binomial(rm + n - m, n - m))
            .sum()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.n {
            return false;
        }
        let (mut pos, mut neg) = (0i128, 0i128);
        for &c in x {
            if c > 0 {
                pos += c as i128;
            } else {
                neg -= c as i128;
            }
        }
        pos <= self.r_plus as i128 && neg <= self.r_minus as i128
    }

    /// Lexicographic iterator over the points; no size guard.
    pub fn iter(&self) -> ShapeIter {
        ShapeIter::new(*self)
    }

    /// All points in lexicographic order, refusing more than `limits.max_enum`.
    pub fn points(&self, limits: &Limits) -> Result<Vec<ZnPoint>> {
        let size = self.size();
        let size_u128: u128 = size.try_into().unwrap_or(u128::MAX);
        limits.check_enum(size_u128)?;
        let mut out = Vec::with_capacity(size_u128 as usize);
        out.extend(self.iter().map(ZnPoint));
        Ok(out)
    }
}

/// Walks `S_n(r+, r-)` in increasing lexicographic order.
#[derive(Debug, Clone)]
pub struct ShapeIter {
    shape: Shape,
    current: Option<Vec<i64>>,
}

impl ShapeIter {
    fn new(shape: Shape) -> Self {
        let mut first = vec![0i64; shape.n];
        if let Some(c) = first.first_mut() {
            *c = -(shape.r_minus as i64);
        }
        ShapeIter {
            shape,
            current: Some(first),
        }
    }
}

impl Iterator for ShapeIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.take()?;
        let (rp, rm) = (self.shape.r_plus as i64, self.shape.r_minus as i64);
        let mut pos_prefix = Vec::with_capacity(out.len());
        let mut neg_prefix = Vec::with_capacity(out.len());
        let (mut pos, mut neg) = (0i64, 0i64);
        for &c in &out {
            pos_prefix.push(pos);
            neg_prefix.push(neg);
            if c > 0 {
                pos += c;
            } else {
                neg -= c;
            }
        }
        // rightmost coordinate that can be incremented, then reset the suffix to its minimum
        for i in (0..out.len()).rev() {
            let c = out[i];
            let pos_before = pos_prefix[i] + c.max(0);
            let can = c < 0 || pos_before < rp;
            if can {
                let mut next = out.clone();
                next[i] = c + 1;
                let neg_used = neg_prefix[i] + (-(c + 1)).max(0);
                for slot in next.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                if i + 1 < next.len() {
                    next[i + 1] = -(rm - neg_used);
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Volume of the convex hull of `S_n(r)`: `r^n / n! * C(2n, n)`.
pub fn vol_convex(n: usize, r: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let n = n as u64;
    let num = BigInt::from(BigUint::from(r).pow(n as u32) * binomial(2 * n, n));
    Ok(BigRational::new(num, BigInt::from(factorial(n))))
}

/// Volume of the union of unit cubes centred on `S_n(r)`, i.e. `|S_n(r)|`.
pub fn vol_cubical(n: usize, r: u32) -> BigUint {
    Shape::ball(n, r).size()
}

/// `vol_convex / vol_cubical`, which tends to 1 as `r` grows.
pub fn efficiency_ratio(n: usize, r: u32) -> Result<BigRational> {
    let cube = BigInt::from(vol_cubical(n, r));
    Ok(vol_convex(n, r)? / BigRational::from_integer(cube))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, rp: i64, rm: i64) -> Vec<Vec<i64>> {
        // independent oracle: filter the full box [-rm, rp]^n
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for c in -rm..=rp {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
            out = next;
        }
        out.retain(|p| {
            let pos: i64 = p.iter().filter(|&&c| c > 0).sum();
            let neg: i64 = -p.iter().filter(|&&c| c < 0).sum::<i64>();
            pos <= rp && neg <= rm
        });
        out
    }

    #[test]
    fn metric_examples() {
        let o = AnPoint::origin(2);
        assert_eq!(metric_d(&o, &o).unwrap(), 0);
        let x = AnPoint::new(vec![-3, 1, 2]).unwrap();
        assert_eq!(metric_d(&o, &x).unwrap(), 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let f = AnPoint::direction(2, i, j).unwrap();
                    assert_eq!(metric_d(&x, &x.add(&f).unwrap()).unwrap(), 1);
                }
            }
        }
        assert_eq!(
            metric_da(&ZnPoint(vec![0, 0]), &ZnPoint(vec![-2, 3])).unwrap(),
            3
        );
        assert!(AnPoint::new(vec![1, 1]).is_err());
        assert!(metric_da(&ZnPoint(vec![0]), &ZnPoint(vec![0, 1])).is_err());
    }

    #[test]
    fn drop_and_lift() {
        let x = AnPoint::new(vec![-3, 1, 2]).unwrap();
        assert_eq!(drop0(&x), ZnPoint(vec![1, 2]));
        assert_eq!(lift0(&ZnPoint(vec![1, 2])).unwrap(), x);
    }

    #[test]
    fn shape_sizes() {
        assert_eq!(Shape::new(2, 1, 1).size(), BigUint::from(7u32));
        assert_eq!(Shape::new(3, 2, 2).size(), BigUint::from(55u32));
        assert_eq!(Shape::new(2, 2, 1).size(), BigUint::from(12u32));
        assert_eq!(Shape::new(4, 0, 0).size(), BigUint::from(1u32));
        assert_eq!(Shape::new(0, 3, 2).size(), BigUint::from(1u32));
        assert_eq!(brute(3, 2, 2).len(), 55);
        assert_eq!(brute(2, 2, 1).len(), 12);
    }

    #[test]
    fn points_match_brute_force() {
        for n in 0..=4 {
            for rp in 0..=3 {
                for rm in 0..=3 {
                    let s = Shape::new(n, rp as u32, rm as u32);
                    let got: Vec<Vec<i64>> = s.iter().collect();
                    let mut want = brute(n, rp, rm);
                    want.sort();
                    assert_eq!(got, want, "{s:?}");
                }
            }
        }
    }

    #[test]
    fn hexagon() {
        let pts: Vec<Vec<i64>> = Shape::ball(2, 1).iter().collect();
        assert_eq!(
            pts,
            vec![
                vec![-1, 0],
                vec![-1, 1],
                vec![0, -1],
                vec![0, 0],
                vec![0, 1],
                vec![1, -1],
                vec![1, 0]
            ]
        );
        let interval: Vec<Vec<i64>> = Shape::ball(1, 2).iter().collect();
        assert_eq!(interval, (-2..=2).map(|c| vec![c]).collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_guard() {
        let limits = Limits {
            max_enum: 10,
            ..Limits::default()
        };
        assert!(matches!(
            Shape::ball(2, 2).points(&limits),
            Err(Error::EnumerationLimit { .. })
        ));
        assert_eq!(Shape::ball(2, 1).points(&limits).unwrap().len(), 7);
    }

    #[test]
    fn volumes() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(vol_convex(1, 4).unwrap(), q(8, 1));
        assert_eq!(vol_convex(2, 1).unwrap(), q(3, 1));
        assert_eq!(vol_convex(3, 1).unwrap(), q(10, 3));
        assert_eq!(vol_cubical(2, 1), BigUint::from(7u32));
        assert_eq!(vol_cubical(3, 2), BigUint::from(55u32));
        assert_eq!(vol_cubical(5, 0), BigUint::from(1u32));
        assert_eq!(efficiency_ratio(3, 1).unwrap(), q(10, 39));
        for r in 1..6 {
            assert_eq!(efficiency_ratio(1, r).unwrap(), q(2 * r as i64, 2 * r as i64 + 1));
        }
        assert!(efficiency_ratio(3, 50).unwrap() > efficiency_ratio(3, 5).unwrap());
        assert!(vol_convex(0, 1).is_err());
    }
}
