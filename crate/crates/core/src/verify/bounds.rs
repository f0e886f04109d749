//! Bounds on B_h parameters obtained by comparing the group order with the
//! size of the packed shape `S_n(ceil(h/2), floor(h/2))`.
//!
//! * `phi(h, k) > (k - ceil(h/2))^h / (ceil(h/2)! floor(h/2)!)`
//! * `f_h(v) < (v ceil(h/2)! floor(h/2)!)^(1/h) + ceil(h/2)`
//! * `phi(h, k) > (h - 2n + 2)^n / n! * C(2n, n) / 2^n` for `k = n + 1`, `h >= 2k - 4`
//! * `h_k(v) < 2 (v (n!)^3 / (2n)!)^(1/n) + 2n - 2`
//!
//! Roots are enclosed in rational intervals of width below `1e-9`, so every
//! strictness check is exact.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    PhiK,
    FH,
    PhiH,
    HK,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::PhiK => "phi_k",
            FormulaId::FH => "f_h",
            FormulaId::PhiH => "phi_h",
            FormulaId::HK => "h_k",
        }
    }
}

/// Which side of the bound the bounded quantity lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// quantity > value
    GreaterThan,
    /// quantity < value
    LessThan,
}

/// A bound value enclosed in `[lower, upper]`; exact bounds have `lower == upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub formula_id: FormulaId,
    pub inputs: BTreeMap<&'static str, u64>,
    pub relation: Relation,
    #[serde(serialize_with = "ser_rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: BigRational,
    pub exact: bool,
    /// Decimal approximation, for display only.
    pub approx: f64,
}

fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(x))
}

pub(crate) fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl BoundReport {
    fn exact(id: FormulaId, inputs: &[(&'static str, u64)], relation: Relation, value: BigRational) -> Self {
        let approx = to_f64(&value);
        BoundReport {
            formula_id: id,
            inputs: inputs.iter().copied().collect(),
            relation,
            lower: value.clone(),
            upper: value,
            exact: true,
            approx,
        }
    }

    fn enclosed(
        id: FormulaId,
        inputs: &[(&'static str, u64)],
        relation: Relation,
        (lower, upper): (BigRational, BigRational),
    ) -> Self {
        let approx = to_f64(&lower);
        BoundReport {
            formula_id: id,
            inputs: inputs.iter().copied().collect(),
            relation,
            lower,
            upper,
            exact: false,
            approx,
        }
    }

    /// True when `x` is certainly on the correct side of the bound.
    pub fn strictly_satisfied_by(&self, x: u64) -> bool {
        let x = BigRational::from_integer(x.into());
        match self.relation {
            Relation::GreaterThan => x > self.upper,
            Relation::LessThan => x < self.lower,
        }
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn halves(h: u32) -> (u64, u64) {
    let h = h as u64;
    (h.div_ceil(2), h / 2)
}

/// `[lo, hi]` with `lo^m <= x <= hi^m` and `hi - lo < 2^-32` (under `1e-9`).
fn root_enclosure(x: &BigRational, m: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = if x > &BigRational::one() {
        x.clone()
    } else {
        BigRational::one()
    };
    let width = BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << 32u32));
    let two = rat(2);
    while &hi - &lo >= width {
        let mid = (&lo + &hi) / &two;
        if num_traits::pow(mid.clone(), m as usize) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}

/// Lower bound on `phi(h, k)`; requires `h >= 1`, `k >= ceil(h/2)`.
pub fn bound_phi_k(h: u32, k: u64) -> Result<BoundReport> {
    need(h >= 1, "h >= 1")?;
    let (up, down) = halves(h);
    need(k >= up, "k >= ceil(h/2)")?;
    let num = BigInt::from(k - up).pow(h);
    let value = BigRational::new(num, factorial(up) * factorial(down));
    Ok(BoundReport::exact(
        FormulaId::PhiK,
        &[("h", h as u64), ("k", k)],
        Relation::GreaterThan,
        value,
    ))
}

/// Upper bound on `f_h(v)`; requires `h >= 1`, `v >= 1`.
pub fn bound_f_h(h: u32, v: u64) -> Result<BoundReport> {
    need(h >= 1, "h >= 1")?;
    need(v >= 1, "v >= 1")?;
    let (up, down) = halves(h);
    let inside = rat(BigInt::from(v) * factorial(up) * factorial(down));
    let (lo, hi) = root_enclosure(&inside, h);
    let shift = rat(up);
    Ok(BoundReport::enclosed(
        FormulaId::FH,
        &[("h", h as u64), ("v", v)],
        Relation::LessThan,
        (lo + &shift, hi + shift),
    ))
}

/// Lower bound on `phi(h, k)` for `k = n + 1 >= 2` and `h >= 2k - 4`.
pub fn bound_phi_h(h: u32, k: u64) -> Result<BoundReport> {
    need(k >= 2, "k >= 2")?;
    need(h as u64 + 4 >= 2 * k, "h >= 2k - 4")?;
    let n = k - 1;
    let base = BigInt::from(h as i64 - 2 * n as i64 + 2);
    let num = base.pow(n as u32) * binomial(2 * n, n);
    let den = factorial(n) * (BigInt::one() << n as usize);
    Ok(BoundReport::exact(
        FormulaId::PhiH,
        &[("h", h as u64), ("k", k)],
        Relation::GreaterThan,
        BigRational::new(num, den),
    ))
}

/// Upper bound on `h_k(v)` for `k = n + 1 >= 2`.
pub fn bound_h_k(k: u64, v: u64) -> Result<BoundReport> {
    need(k >= 2, "k >= 2")?;
    need(v >= 1, "v >= 1")?;
    let n = k - 1;
    let inside = BigRational::new(
        BigInt::from(v) * factorial(n).pow(3),
        factorial(2 * n),
    );
    let (lo, hi) = root_enclosure(&inside, n as u32);
    let two = rat(2);
    let shift = rat(2 * n as i64 - 2);
    Ok(BoundReport::enclosed(
        FormulaId::HK,
        &[("k", k), ("v", v)],
        Relation::LessThan,
        (&two * lo + &shift, two * hi + shift),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub formula_id: FormulaId,
    pub bound: BoundReport,
    /// The quantity the witness certifies (`v`, `k` or `h`).
    pub witnessed: u64,
    pub satisfied: bool,
}

/// Checks every bound whose hypotheses hold against a B_h set of size `k` in
/// a group of order `v`: `v > phi` bounds, `k < f_h(v)`, `h < h_k(v)`.
///
/// The `h_k` bound is only checked in the regime `h >= 2k - 4` of its derivation.
pub fn check_witness_bounds(h: u32, k: u64, v: u64) -> Result<Vec<BoundCheck>> {
    let mut out = Vec::new();
    let mut push = |bound: BoundReport, witnessed: u64| {
        out.push(BoundCheck {
            formula_id: bound.formula_id,
            satisfied: bound.strictly_satisfied_by(witnessed),
            bound,
            witnessed,
        })
    };
    if h >= 1 && k >= halves(h).0 {
        push(bound_phi_k(h, k)?, v);
    }
    if h >= 1 {
        push(bound_f_h(h, v)?, k);
    }
    if k >= 2 && h as u64 + 4 >= 2 * k {
        push(bound_phi_h(h, k)?, v);
        push(bound_h_k(k, v)?, h as u64);
    }
    Ok(out)
}

impl BoundReport {
    pub fn lower_string(&self) -> String {
        rational_string(&self.lower)
    }

    pub fn upper_string(&self) -> String {
        rational_string(&self.upper)
    }

    pub fn width(&self) -> BigRational {
        (&self.upper - &self.lower).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_bounds() {
        assert_eq!(bound_phi_k(2, 4).unwrap().lower, rat(9));
        for k in 1..10 {
            assert_eq!(bound_phi_k(1, k).unwrap().lower, rat(k as i64 - 1));
        }
        assert_eq!(bound_phi_h(4, 3).unwrap().lower, rat(3));
        assert!(bound_phi_k(5, 2).is_err());
        assert!(bound_phi_h(1, 4).is_err());
    }

    #[test]
    fn enclosures_are_tight_and_correct() {
        let b = bound_f_h(2, 13).unwrap();
        assert!(b.width() < BigRational::new(1.into(), 1_000_000_000.into()));
        // sqrt(13) + 1
        assert!((b.approx - (13f64.sqrt() + 1.0)).abs() < 1e-8);
        let b = bound_h_k(3, 12).unwrap();
        assert!((b.approx - (2.0 * (12.0f64 * 8.0 / 24.0).sqrt() + 2.0)).abs() < 1e-8);
        let (lo, hi) = root_enclosure(&rat(27), 3);
        assert!(lo <= rat(3) && rat(3) <= hi);
    }

    #[test]
    fn singer_witness() {
        let checks = check_witness_bounds(2, 4, 13).unwrap();
        assert!(checks.iter().all(|c| c.satisfied));
        assert_eq!(checks.len(), 2);
    }
}
