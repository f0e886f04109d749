use serde::Serialize;

use super::{check_perfect, period_along};
use crate::algebra::prime_power;
use crate::codes::LatticeCode;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::sets::{search_planar, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PpcRow {
    pub n: u64,
    /// `n = 1` counts as a prime power.
    pub prime_power: bool,
    pub found: Option<Vec<u64>>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    /// Whether existence matches the prime-power predicate; `None` when the
    /// search ran out of budget without a hit.
    pub agrees: Option<bool>,
}

/// Planar difference set search for every order `1..=n_max`.
pub fn experiment_ppc(n_max: u64, budget: &Budget) -> Result<Vec<PpcRow>> {
    (1..=n_max)
        .map(|n| {
            let report = search_planar(n, budget)?;
            let prime_power = n == 1 || prime_power(n).is_some();
            let found: Option<Vec<u64>> = report
                .found
                .map(|f| f.elements.iter().map(|e| f.group.index_of(e)).collect());
            let agrees = if found.is_some() || report.exhaustive {
                Some(found.is_some() == prime_power)
            } else {
                None
            };
            Ok(PpcRow {
                n,
                prime_power,
                found,
                exhaustive: report.exhaustive,
                nodes_explored: report.nodes_explored,
                agrees,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicityRow {
    pub label: String,
    pub n: usize,
    pub det: u64,
    pub quotient: Vec<u64>,
    /// A 1-perfect code; only these fall under the conjecture.
    pub in_scope: bool,
    pub cyclic: bool,
    pub max_period: u64,
    /// Some direction `f_{i,j}` has period `n^2 + n + 1`.
    pub full_period: bool,
}

/// For each code, compares quotient cyclicity with the existence of a
/// direction of full period. For 1-perfect codes the two must agree; a
/// disagreement is reported as [`Error::ConjectureDisagreement`].
pub fn experiment_cyclicity(codes: &[(String, LatticeCode)], limits: &Limits) -> Result<Vec<CyclicityRow>> {
    let mut rows = Vec::with_capacity(codes.len());
    for (label, code) in codes {
        let n = code.n();
        let in_scope = check_perfect(code, 1, limits)?;
        let mut max_period = 1;
        for i in 0..=n {
            for j in 0..=n {
                if i != j {
                    max_period = max_period.max(period_along(code, i, j)?);
                }
            }
        }
        let target = (n * n + n + 1) as u64;
        let row = CyclicityRow {
            label: label.clone(),
            n,
            det: code.det_abs(),
            quotient: code.quotient().invariant_factors().to_vec(),
            in_scope,
            cyclic: code.quotient().is_cyclic(),
            max_period,
            full_period: max_period == target,
        };
        if row.in_scope && row.cyclic != row.full_period {
            return Err(Error::ConjectureDisagreement(label.clone()));
        }
        rows.push(row);
    }
    Ok(rows)
}
