//! Exhaustive backtracking searches for planar difference sets and B_h sets.
//!
//! Candidate sets are built in ascending group-index order. Planar search
//! forces the prefix `{0, 1}`; B_h search forces only `b_0 = 0`. Every
//! placement attempt counts as one node against the budget.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AbelianGroup, GroupElement};
use crate::error::Result;

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
    pub threads: usize,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchKind {
    Planar { n: u64 },
    BhInGroup { group: AbelianGroup, h: u32, k: u64 },
    MinGroup { h: u32, k: u64, v_max: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundSet {
    pub group: AbelianGroup,
    pub elements: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SearchKind,
    pub found: Option<FoundSet>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    /// Smallest group order with a hit (min-group search only).
    pub phi: Option<u64>,
}

/// Shared node counter and deadline.
struct Meter {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

impl Meter {
    fn new(budget: &Budget) -> Self {
        Meter {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes,
            deadline: budget.timeout.map(|t| Instant::now() + t),
            aborted: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|m| n > m);
        let over_time = n.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }
}

/// Index arithmetic in a finite abelian group.
enum Arith {
    Cyclic(u64),
    Mixed(AbelianGroup),
}

impl Arith {
    fn new(group: &AbelianGroup) -> Self {
        if group.rank() <= 1 {
            Arith::Cyclic(group.order())
        } else {
            Arith::Mixed(group.clone())
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            Arith::Cyclic(v) => ((a as u128 + b as u128) % *v as u128) as u64,
            Arith::Mixed(g) => {
                let (x, y) = (g.element_at(a), g.element_at(b));
                g.add(&x, &y).map(|s| g.index_of(&s)).unwrap_or(0)
            }
        }
    }

    fn scale(&self, a: u64, z: u64) -> u64 {
        match self {
            Arith::Cyclic(v) => ((a as u128 * z as u128) % *v as u128) as u64,
            Arith::Mixed(g) => g
                .scale(&g.element_at(a), z as i64)
                .map(|s| g.index_of(&s))
                .unwrap_or(0),
        }
    }
}

fn run_branches<T: Send>(
    threads: usize,
    branches: Vec<u64>,
    f: impl Fn(u64) -> T + Sync + Send,
) -> Vec<T> {
    if threads <= 1 {
        return branches.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| branches.into_par_iter().map(&f).collect()),
        Err(_) => branches.into_iter().map(f).collect(),
    }
}

/// Merges per-branch outcomes: the hit from the lowest branch wins, and the
/// node count covers only branches up to that one so the report does not
/// depend on thread scheduling.
fn merge(outcomes: Vec<(Option<Vec<u64>>, u64, bool)>) -> (Option<Vec<u64>>, u64, bool) {
    let mut nodes = 0;
    let mut complete = true;
    let mut fallback = None;
    for (hit, n, done) in outcomes {
        nodes += n;
        if let Some(set) = hit {
            if complete {
                return (Some(set), nodes, true);
            }
            fallback.get_or_insert(set);
        }
        complete &= done;
    }
    (fallback, nodes, complete)
}

struct PlanarState<'a> {
    v: u64,
    k: usize,
    chosen: Vec<u64>,
    used: Vec<bool>,
    meter: &'a Meter,
    nodes: u64,
}

impl PlanarState<'_> {
    fn new(v: u64, k: usize, meter: &Meter) -> PlanarState<'_> {
        let mut used = vec![false; v as usize];
        used[1 % v as usize] = true;
        used[(v - 1) as usize] = true;
        PlanarState {
            v,
            k,
            chosen: vec![0, 1],
            used,
            meter,
            nodes: 0,
        }
    }

    /// Marks all differences between `c` and the chosen set; undoes and returns false on a clash.
    fn try_place(&mut self, c: u64) -> bool {
        let v = self.v;
        let mut marked = Vec::with_capacity(2 * self.chosen.len());
        for &d in &self.chosen {
            for diff in [(c + v - d) % v, (d + v - c) % v] {
                if self.used[diff as usize] {
                    for m in marked {
                        self.used[m as usize] = false;
                    }
                    return false;
                }
                self.used[diff as usize] = true;
                marked.push(diff);
            }
        }
        self.chosen.push(c);
        true
    }

    fn remove_last(&mut self) {
        let c = self.chosen.pop().unwrap_or(0);
        let v = self.v;
        for &d in &self.chosen {
            self.used[((c + v - d) % v) as usize] = false;
            self.used[((d + v - c) % v) as usize] = false;
        }
    }

    fn dfs(&mut self) -> Option<bool> {
        if self.chosen.len() == self.k {
            return Some(true);
        }
        let last = *self.chosen.last().unwrap_or(&0);
        let need = (self.k - self.chosen.len()) as u64;
        let mut c = last + 1;
        while c + need <= self.v {
            if !self.meter.tick() {
                return None;
            }
            self.nodes += 1;
            if self.try_place(c) {
                match self.dfs() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.remove_last();
            }
            c += 1;
        }
        Some(false)
    }
}

/// Exhaustive search for a planar difference set of order `n` in `Z_{n^2+n+1}`.
pub fn search_planar(n: u64, budget: &Budget) -> Result<SearchReport> {
    if n < 1 {
        return Err(crate::Error::InvalidParameter("order must be at least 1".into()));
    }
    let v = n
        .checked_mul(n)
        .and_then(|x| x.checked_add(n + 1))
        .filter(|&v| v <= u32::MAX as u64)
        .ok_or_else(|| crate::Error::Overflow(format!("group order for n = {n}")))?;
    let k = (n + 1) as usize;
    let meter = Meter::new(budget);
    let params = SearchKind::Planar { n };
    let group = AbelianGroup::cyclic(v)?;

    let report = |hit: Option<Vec<u64>>, nodes: u64, exhaustive: bool| SearchReport {
        params: params.clone(),
        found: hit.map(|set| FoundSet {
            group: group.clone(),
            elements: set.iter().map(|&x| GroupElement(vec![x])).collect(),
        }),
        nodes_explored: nodes,
        exhaustive,
        phi: None,
    };

    if k == 2 {
        return Ok(report(Some(vec![0, 1]), 0, true));
    }
    // branch on the third element
    let need = (k - 3) as u64;
    let branches: Vec<u64> = (2..v).filter(|c| c + need < v).collect();
    let outcomes = run_branches(budget.threads, branches, |c| {
        let mut st = PlanarState::new(v, k, &meter);
        if !meter.tick() {
            return (None, 0, false);
        }
        st.nodes = 1;
        if !st.try_place(c) {
            return (None, st.nodes, true);
        }
        match st.dfs() {
            Some(true) => (Some(st.chosen.clone()), st.nodes, true),
            Some(false) => (None, st.nodes, true),
            None => (None, st.nodes, false),
        }
    });
    let (hit, nodes, complete) = merge(outcomes);
    Ok(report(hit, nodes, complete))
}

struct BhState<'a> {
    arith: Arith,
    v: u64,
    h: usize,
    k: usize,
    chosen: Vec<u64>,
    used: Vec<bool>,
    /// `by_size[u]`: sums of exactly `u` nonzero chosen elements (with repetition).
    by_size: Vec<Vec<u64>>,
    meter: &'a Meter,
    nodes: u64,
}

impl BhState<'_> {
    fn new<'a>(group: &AbelianGroup, h: usize, k: usize, meter: &'a Meter) -> BhState<'a> {
        let v = group.order();
        let mut used = vec![false; v as usize];
        used[0] = true;
        let mut by_size = vec![Vec::new(); h + 1];
        by_size[0].push(0);
        BhState {
            arith: Arith::new(group),
            v,
            h,
            k,
            chosen: vec![0],
            used,
            by_size,
            meter,
            nodes: 0,
        }
    }

    /// Adds `b`, registering every new sum `t + j b` with `t` an old sum of size `u`, `u + j <= h`.
    fn try_place(&mut self, b: u64) -> Option<Vec<usize>> {
        let lens: Vec<usize> = self.by_size.iter().map(Vec::len).collect();
        let mut fresh: Vec<(usize, u64)> = Vec::new();
        let mut ok = true;
        'outer: for j in 1..=self.h {
            let jb = self.arith.scale(b, j as u64);
            for u in 0..=self.h - j {
                for t in 0..lens[u] {
                    let s = self.arith.add(self.by_size[u][t], jb);
                    if self.used[s as usize] {
                        ok = false;
                        break 'outer;
                    }
                    self.used[s as usize] = true;
                    fresh.push((u + j, s));
                }
            }
        }
        if !ok {
            for (_, s) in fresh {
                self.used[s as usize] = false;
            }
            return None;
        }
        for (size, s) in fresh {
            self.by_size[size].push(s);
        }
        self.chosen.push(b);
        Some(lens)
    }

    fn undo(&mut self, lens: &[usize]) {
        for (list, &len) in self.by_size.iter_mut().zip(lens) {
            for &s in &list[len..] {
                self.used[s as usize] = false;
            }
            list.truncate(len);
        }
        self.chosen.pop();
    }

    fn dfs(&mut self) -> Option<bool> {
        if self.chosen.len() == self.k {
            return Some(true);
        }
        let last = *self.chosen.last().unwrap_or(&0);
        let need = (self.k - self.chosen.len()) as u64;
        let mut b = last + 1;
        while b + need <= self.v {
            if !self.meter.tick() {
                return None;
            }
            self.nodes += 1;
            if let Some(lens) = self.try_place(b) {
                match self.dfs() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.undo(&lens);
            }
            b += 1;
        }
        Some(false)
    }
}

/// `C(k - 1 + h, h)`: the number of sums of at most `h` nonzero elements among
/// `k - 1`, all of which must be distinct in a B_h set with `b_0 = 0`.
fn required_sums(h: u32, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=h as u128 {
        acc = acc.saturating_mul(k as u128 - 1 + i) / i;
    }
    acc
}

fn bh_in_group(group: &AbelianGroup, h: u32, k: u64, meter: &Meter, threads: usize) -> (Option<Vec<u64>>, u64, bool) {
    let v = group.order();
    if k > v || required_sums(h, k) > v as u128 {
        return (None, 0, true);
    }
    if k == 1 {
        return (Some(vec![0]), 0, true);
    }
    let need = k - 2;
    let branches: Vec<u64> = (1..v).filter(|b| b + need < v).collect();
    let outcomes = run_branches(threads, branches, |b| {
        let mut st = BhState::new(group, h as usize, k as usize, meter);
        if !meter.tick() {
            return (None, 0, false);
        }
        st.nodes = 1;
        if st.try_place(b).is_none() {
            return (None, st.nodes, true);
        }
        match st.dfs() {
            Some(true) => (Some(st.chosen.clone()), st.nodes, true),
            Some(false) => (None, st.nodes, true),
            None => (None, st.nodes, false),
        }
    });
    merge(outcomes)
}

fn check_bh_params(h: u32, k: u64) -> Result<()> {
    if h < 1 || k < 1 {
        return Err(crate::Error::InvalidParameter("h and k must be at least 1".into()));
    }
    Ok(())
}

/// Exhaustive search for a B_h set of size `k` containing 0 in `group`.
pub fn search_bh_in_group(
    group: &AbelianGroup,
    h: u32,
    k: u64,
    budget: &Budget,
) -> Result<SearchReport> {
    check_bh_params(h, k)?;
    if group.order() > u32::MAX as u64 {
        return Err(crate::Error::Overflow(format!("group order {}", group.order())));
    }
    let meter = Meter::new(budget);
    let (hit, nodes, complete) = bh_in_group(group, h, k, &meter, budget.threads);
    Ok(SearchReport {
        params: SearchKind::BhInGroup {
            group: group.clone(),
            h,
            k,
        },
        exhaustive: complete,
        found: hit.map(|set| FoundSet {
            group: group.clone(),
            elements: set.into_iter().map(|i| group.element_at(i)).collect(),
        }),
        nodes_explored: nodes,
        phi: None,
    })
}

/// Smallest order `v <= v_max` of an abelian group holding a B_h set of size `k`,
/// scanning every group of each order.
pub fn search_min_group(h: u32, k: u64, v_max: u64, budget: &Budget) -> Result<SearchReport> {
    check_bh_params(h, k)?;
    if v_max > u32::MAX as u64 {
        return Err(crate::Error::Overflow(format!("group order {v_max}")));
    }
    let meter = Meter::new(budget);
    let params = SearchKind::MinGroup { h, k, v_max };
    let mut nodes = 0;
    for v in k..=v_max {
        for group in AbelianGroup::all_of_order(v)? {
            let (hit, n, complete) = bh_in_group(&group, h, k, &meter, budget.threads);
            nodes += n;
            if let Some(set) = hit {
                return Ok(SearchReport {
                    params,
                    found: Some(FoundSet {
                        elements: set.into_iter().map(|i| group.element_at(i)).collect(),
                        group,
                    }),
                    nodes_explored: nodes,
                    // a hit in a group whose predecessors were all cleared is the true minimum
                    exhaustive: complete,
                    phi: Some(v),
                });
            }
            if !complete || meter.aborted() {
                return Ok(SearchReport {
                    params,
                    found: None,
                    nodes_explored: nodes,
                    exhaustive: false,
                    phi: None,
                });
            }
        }
    }
    Ok(SearchReport {
        params,
        found: None,
        nodes_explored: nodes,
        exhaustive: true,
        phi: None,
    })
}
