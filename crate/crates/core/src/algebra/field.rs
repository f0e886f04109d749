//! Table-driven arithmetic in GF(p^m).
//!
//! Elements are polynomials over GF(p) of degree `< m`, identified with the
//! integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. "Smallest" below always
//! means smallest in that encoding, which is lexicographic order on the
//! coefficient list read from the highest degree down.

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u64);

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    m: u32,
    order: u64,
    /// Low coefficients of the monic modulus `x^m + ...`.
    modulus: Vec<u64>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let (mut rest, mut e) = (n, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = idx % p;
        idx /= p;
    }
    out
}

/// Remainder of `a` modulo a monic polynomial `b` (coefficients low to high).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap_or(&0);
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - lead * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// GF(p^m) with the smallest monic irreducible modulus and the smallest primitive element.
    pub fn new(p: u64, m: u32, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > limits.field_bound as u128 || order > u32::MAX as u128 {
            return Err(Error::FieldTooLarge {
                order,
                bound: limits.field_bound,
            });
        }
        let order = order as u64;
        let mlen = m as usize;

        let modulus = (0..order)
            .map(|low| digits(low, p, mlen))
            .find(|low| {
                let mut poly = low.clone();
                poly.push(1);
                is_irreducible(&poly, p)
            })
            .ok_or_else(|| Error::InvalidParameter(format!("no irreducible of degree {m}")))?;

        let mut field = FiniteField {
            p,
            m,
            order,
            modulus,
            primitive: FieldElement(1),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let group_order = order - 1;
        let factors = prime_factors(group_order);
        let primitive = (1..order)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| field.pow_slow(g, group_order / r) != FieldElement(1))
            })
            .ok_or_else(|| Error::InvalidParameter("no primitive element".into()))?;
        field.primitive = primitive;

        let mut exp = Vec::with_capacity(group_order as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = FieldElement(1);
        for i in 0..group_order {
            exp.push(cur.0 as u32);
            log[cur.0 as usize] = i as u32;
            cur = field.mul_slow(cur, primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64, limits: &Limits) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m, limits)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Full modulus coefficients, low to high, including the leading 1.
    pub fn modulus(&self) -> Vec<u64> {
        let mut full = self.modulus.clone();
        full.push(1);
        full
    }

    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        digits(x.0, self.p, self.m as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.m as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m as usize,
                got: coeffs.len(),
            });
        }
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c % self.p);
        Ok(FieldElement(idx))
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if x.0 >= self.order {
            return Err(Error::ElementOutOfRange(vec![x.0 as i64]));
        }
        Ok(())
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&sum).unwrap_or(FieldElement(0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c: Vec<u64> = self
            .coeffs(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.from_coeffs(&c).unwrap_or(FieldElement(0))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.order - 1;
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        FieldElement(self.exp[s as usize] as u64)
    }

    /// `x^e`; negative exponents invert (zero stays zero).
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        if x.0 == 0 {
            return if e == 0 { FieldElement(1) } else { FieldElement(0) };
        }
        let n = (self.order - 1) as i128;
        let s = (self.log[x.0 as usize] as i128 * e as i128).rem_euclid(n);
        FieldElement(self.exp[s as usize] as u64)
    }

    /// `a` in `[0, p^m - 1)` with `primitive^a = x`.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        if x.0 == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// `primitive^a`.
    pub fn exp(&self, a: u64) -> FieldElement {
        FieldElement(self.exp[(a % (self.order - 1)) as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElement) -> Result<u64> {
        use num_integer::Integer;
        let l = self.dlog(x)?;
        let n = self.order - 1;
        Ok(n / l.gcd(&n))
    }

    /// Elements of the subfield of order `q` (zero included), if it exists.
    pub fn subfield(&self, q: u64) -> Result<Vec<FieldElement>> {
        let n = self.order - 1;
        let valid = prime_power(q)
            .map(|(p, e)| p == self.p && self.m.is_multiple_of(e))
            .unwrap_or(false);
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "GF({}) has no subfield of order {q}",
                self.order
            )));
        }
        let step = n / (q - 1);
        let mut out: Vec<FieldElement> = std::iter::once(FieldElement(0))
            .chain((0..q - 1).map(|j| self.exp(j * step)))
            .collect();
        out.sort();
        Ok(out)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus(), self.p);
        self.from_coeffs(&r).unwrap_or(FieldElement(0))
    }

    fn pow_slow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}
