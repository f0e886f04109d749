//! Brute-force oracles shared by the integration tests. They deliberately
//! avoid the library's own enumeration code.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use sidon_lattice::algebra::{AbelianGroup, GroupElement};

/// Every `x` in the box `[-r_minus, r_plus]^n` meeting the shape definition.
pub fn shape_points_by_box(n: usize, r_plus: u32, r_minus: u32) -> Vec<Vec<i64>> {
    let lo = -(r_minus as i64);
    let hi = r_plus as i64;
    let mut out = Vec::new();
    let mut x = vec![lo; n];
    loop {
        let pos: i64 = x.iter().filter(|&&c| c > 0).sum();
        let neg: i64 = x.iter().filter(|&&c| c < 0).sum();
        if pos <= hi && neg >= lo {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < hi {
                x[i] += 1;
                break;
            }
            x[i] = lo;
            i += 1;
        }
    }
}

/// `(v, k, lambda)` by counting all ordered differences of residues mod `v`.
pub fn cyclic_dset_params(v: u64, set: &[u64]) -> Option<(u64, u64, u64)> {
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for &a in set {
        for &b in set {
            if a != b {
                *counts.entry((a + v - b) % v).or_default() += 1;
            }
        }
    }
    let lambda = counts.get(&1).copied().unwrap_or(0);
    if v > 1 && (1..v).all(|d| counts.get(&d).copied().unwrap_or(0) == lambda) {
        Some((v, set.len() as u64, lambda))
    } else {
        None
    }
}

/// B_h property mod `v` by listing every nondecreasing index tuple.
pub fn cyclic_is_bh(v: u64, set: &[u64], h: u32) -> bool {
    let k = set.len();
    let mut seen = HashSet::new();
    let mut idx = vec![0usize; h as usize];
    loop {
        let s = idx.iter().map(|&i| set[i]).sum::<u64>() % v;
        if !seen.insert(s) {
            return false;
        }
        // next nondecreasing tuple
        let mut p = idx.len();
        loop {
            if p == 0 {
                return true;
            }
            p -= 1;
            if idx[p] + 1 < k {
                let nv = idx[p] + 1;
                for q in p..idx.len() {
                    idx[q] = nv;
                }
                break;
            }
        }
    }
}

pub fn cyclic(v: u64, xs: &[u64]) -> (AbelianGroup, Vec<GroupElement>) {
    let g = AbelianGroup::cyclic(v).unwrap();
    let e = xs.iter().map(|&x| g.element(&[x as i64]).unwrap()).collect();
    (g, e)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
