//! Depth-first search over unit assignments with table-driven field arithmetic.
//!
//! Free positions are assigned in a fixed order, each running through the
//! units in canonical order, so leaves are visited in the lexicographic
//! order of the mixed-radix counter over that order. The order is chosen
//! greedily so that constraints become fully assigned as early as possible.
//!
//! Every product in a constraint uses a position at most once, so the
//! constraint is affine in its last position `x`: `a·x + c = 0`. At that
//! depth the admissible values are read off directly instead of tried one
//! by one. Pruning never skips a survivor, so the first leaf reached is the
//! first survivor of the plain enumeration.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::par::{find_map_first, Exec};
use crate::scalars::{FieldElem, FieldSpec};

/// Largest field handled; the tables are quadratic in the field size.
pub const MAX_TABLE_FIELD: usize = 1024;

/// Element `0` is zero, element `k ≥ 1` is the `k`-th unit in canonical order.
pub(crate) struct Tables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    elems: Vec<FieldElem>,
}

impl Tables {
    pub fn new(f: FieldSpec) -> Result<Tables> {
        let mut elems = vec![f.zero()];
        elems.extend(f.units()?);
        let q = elems.len();
        if q > MAX_TABLE_FIELD {
            return Err(Error::Unsupported(format!("{f} is too large for the obstruction search")));
        }
        let index: HashMap<&FieldElem, u16> = elems.iter().enumerate().map(|(k, e)| (e, k as u16)).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                add[a * q + b] = index[&x.add(y)];
                mul[a * q + b] = index[&x.mul(y)];
            }
        }
        let neg = elems.iter().map(|x| index[&x.neg()]).collect();
        let inv = elems.iter().map(|x| x.inv().map_or(0, |y| index[&y])).collect();
        Ok(Tables { q, add, mul, neg, inv, elems })
    }

    pub fn units(&self) -> usize {
        self.q - 1
    }

    pub fn elem(&self, k: u16) -> &FieldElem {
        &self.elems[k as usize]
    }

    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }
}

/// Signed products of positions whose sum must vanish.
pub(crate) struct Constraint {
    pub terms: Vec<(bool, Vec<usize>)>,
}

fn signed_sum(t: &Tables, terms: &[(bool, Vec<usize>)], values: &[u16]) -> u16 {
    let mut acc = 0;
    for (odd, pos) in terms {
        let prod = pos.iter().fold(1, |a, &k| t.mul(a, values[k]));
        acc = t.add(acc, if *odd { t.neg[prod as usize] } else { prod });
    }
    acc
}

impl Constraint {
    fn vanishes(&self, t: &Tables, values: &[u16]) -> bool {
        signed_sum(t, &self.terms, values) == 0
    }

    fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().flat_map(|(_, pos)| pos.iter().copied())
    }

    /// `(a, c)` split on `x`: terms through `x` with `x` removed, and the rest.
    fn split_on(&self, x: usize) -> Affine {
        let (mut with, mut without) = (Vec::new(), Vec::new());
        for (odd, pos) in &self.terms {
            if pos.contains(&x) {
                with.push((*odd, pos.iter().copied().filter(|&p| p != x).collect()));
            } else {
                without.push((*odd, pos.clone()));
            }
        }
        Affine { with, without }
    }
}

/// A constraint seen from its last position `x`: `a·x + c`.
struct Affine {
    with: Vec<(bool, Vec<usize>)>,
    without: Vec<(bool, Vec<usize>)>,
}

/// Values allowed for the position being assigned.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Allowed {
    Any,
    Only(u16),
    Nothing,
}

impl Allowed {
    fn contains(self, v: u16) -> bool {
        match self {
            Allowed::Any => true,
            Allowed::Only(w) => w == v,
            Allowed::Nothing => false,
        }
    }
}

pub(crate) enum Outcome {
    /// Digits of the first survivor, one per free position.
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Problem<'a> {
    pub tables: &'a Tables,
    /// Flat positions in assignment order.
    pub free: Vec<usize>,
    pub cells: usize,
    pub constraints: Vec<Constraint>,
}

impl<'a> Problem<'a> {
    /// Orders `free` greedily: next is the position completing the most
    /// constraints, then the one closest to completing others, then the
    /// smallest index.
    pub fn new(tables: &'a Tables, free: Vec<usize>, cells: usize, constraints: Vec<Constraint>) -> Self {
        let mut is_free = vec![false; cells];
        for &p in &free {
            is_free[p] = true;
        }
        let mut remaining: Vec<usize> = constraints
            .iter()
            .map(|c| {
                let mut ps: Vec<usize> = c.positions().filter(|&p| is_free[p]).collect();
                ps.sort_unstable();
                ps.dedup();
                ps.len()
            })
            .collect();
        let mut touching = vec![Vec::new(); cells];
        for (k, c) in constraints.iter().enumerate() {
            let mut ps: Vec<usize> = c.positions().filter(|&p| is_free[p]).collect();
            ps.sort_unstable();
            ps.dedup();
            for p in ps {
                touching[p].push(k);
            }
        }
        let mut left: Vec<usize> = free;
        left.sort_unstable();
        let mut order = Vec::with_capacity(left.len());
        while !left.is_empty() {
            let score = |p: usize| {
                let done = touching[p].iter().filter(|&&k| remaining[k] == 1).count();
                let near: u64 = touching[p].iter().map(|&k| 1u64 << (20usize.saturating_sub(remaining[k]))).sum();
                (done, near)
            };
            let (at, _) = left
                .iter()
                .enumerate()
                .map(|(i, &p)| (i, score(p)))
                .fold(None, |best: Option<(usize, (usize, u64))>, (i, sc)| match best {
                    Some((_, b)) if b >= sc => best,
                    _ => Some((i, sc)),
                })
                .expect("nonempty");
            let p = left.remove(at);
            for &k in &touching[p] {
                remaining[k] -= 1;
            }
            order.push(p);
        }
        Problem { tables, free: order, cells, constraints }
    }
}

struct Budget<'a> {
    used: &'a AtomicU64,
    limit: u64,
    stop: &'a AtomicBool,
    /// Global count at the last flush.
    seen: u64,
    local: u64,
}

const FLUSH: u64 = 1024;

impl Budget<'_> {
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.seen + self.local > self.limit {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        if self.local >= FLUSH {
            self.flush();
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.seen = self.used.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
    }
}

/// Result of a search: the outcome and the number of nodes visited.
pub(crate) struct SearchStats {
    pub outcome: Outcome,
    pub nodes: u64,
}

/// Constraints checked at each depth: `root` before any assignment,
/// `at[d]` as affine forms in the position assigned at depth `d`.
struct Schedule {
    root: Vec<usize>,
    at: Vec<Vec<Affine>>,
}

impl Problem<'_> {
    fn schedule(&self) -> Schedule {
        let mut depth_of = vec![0usize; self.cells];
        for (d, &p) in self.free.iter().enumerate() {
            depth_of[p] = d + 1;
        }
        let mut root = Vec::new();
        let mut at: Vec<Vec<Affine>> = (0..self.free.len()).map(|_| Vec::new()).collect();
        for (k, con) in self.constraints.iter().enumerate() {
            match con.positions().map(|p| depth_of[p]).max().unwrap_or(0) {
                0 => root.push(k),
                d => at[d - 1].push(con.split_on(self.free[d - 1])),
            }
        }
        Schedule { root, at }
    }

    fn allowed(&self, checks: &[Affine], values: &[u16]) -> Allowed {
        let t = self.tables;
        let mut allowed = Allowed::Any;
        for chk in checks {
            let a = signed_sum(t, &chk.with, values);
            let c = signed_sum(t, &chk.without, values);
            let here = if a == 0 {
                if c == 0 {
                    Allowed::Any
                } else {
                    Allowed::Nothing
                }
            } else {
                match t.mul(t.neg[c as usize], t.inv[a as usize]) {
                    0 => Allowed::Nothing,
                    x => Allowed::Only(x),
                }
            };
            allowed = match (allowed, here) {
                (Allowed::Any, h) => h,
                (al, Allowed::Any) => al,
                (Allowed::Only(x), Allowed::Only(y)) if x == y => Allowed::Only(x),
                _ => Allowed::Nothing,
            };
            if allowed == Allowed::Nothing {
                break;
            }
        }
        allowed
    }

    fn dfs(&self, depth: usize, sched: &Schedule, values: &mut [u16], digits: &mut [usize], budget: &mut Budget) -> Outcome {
        if depth == self.free.len() {
            return Outcome::Found(digits.to_vec());
        }
        let allowed = self.allowed(&sched.at[depth], values);
        for u in 0..self.tables.units() {
            let v = u as u16 + 1;
            if !allowed.contains(v) {
                continue;
            }
            if !budget.tick() {
                return Outcome::OutOfBudget;
            }
            digits[depth] = u;
            values[self.free[depth]] = v;
            match self.dfs(depth + 1, sched, values, digits, budget) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    /// Gauge positions hold 1, every other cell is overwritten by the search.
    pub fn search(&self, node_budget: u64, exec: Exec) -> SearchStats {
        let sched = self.schedule();
        let used = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        let base = vec![1u16; self.cells];
        if !sched.root.iter().all(|&k| self.constraints[k].vanishes(self.tables, &base)) {
            return SearchStats { outcome: Outcome::Exhausted, nodes: 0 };
        }
        let u = self.tables.units();
        // split the tree into prefix tasks so that parallel workers have something to share
        let mut split = 0;
        let mut tasks = 1usize;
        while split < self.free.len() && tasks < 256 && u > 1 {
            split += 1;
            tasks *= u;
        }
        let outcome = find_map_first(exec, 0..tasks, |task| {
            let mut budget =
                Budget { used: &used, limit: node_budget, stop: &stop, seen: used.load(Ordering::Relaxed), local: 0 };
            let mut values = base.clone();
            let mut digits = vec![0; self.free.len()];
            let mut rest = task;
            for d in (0..split).rev() {
                digits[d] = rest % u;
                rest /= u;
            }
            let mut out = None;
            for d in 0..split {
                let v = digits[d] as u16 + 1;
                if !self.allowed(&sched.at[d], &values).contains(v) {
                    out = Some(Outcome::Exhausted);
                    break;
                }
                if !budget.tick() {
                    out = Some(Outcome::OutOfBudget);
                    break;
                }
                values[self.free[d]] = v;
            }
            let out = out.unwrap_or_else(|| self.dfs(split, &sched, &mut values, &mut digits, &mut budget));
            budget.flush();
            match out {
                Outcome::Exhausted => None,
                other => Some(other),
            }
        })
        .unwrap_or(Outcome::Exhausted);
        SearchStats { outcome, nodes: used.load(Ordering::Relaxed) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_field_operations() {
        for f in [FieldSpec::Fp(2), FieldSpec::Fp(5), FieldSpec::Gf4] {
            let t = Tables::new(f).unwrap();
            for a in 0..t.q as u16 {
                for b in 0..t.q as u16 {
                    assert_eq!(t.elem(t.add(a, b)), &t.elem(a).add(t.elem(b)));
                    assert_eq!(t.elem(t.mul(a, b)), &t.elem(a).mul(t.elem(b)));
                }
            }
        }
        assert!(Tables::new(FieldSpec::Q).is_err());
    }

    #[test]
    fn first_leaf_is_the_first_survivor() {
        // x0 · x1 − 1 = 0 over F5: the first solution in lexicographic order is (1, 1)
        let t = Tables::new(FieldSpec::Fp(5)).unwrap();
        let c = Constraint { terms: vec![(false, vec![0, 1]), (true, vec![2])] };
        let p = Problem { tables: &t, free: vec![0, 1], cells: 3, constraints: vec![c] };
        let s = p.search(1000, Exec::Sequential);
        assert!(matches!(s.outcome, Outcome::Found(ref d) if d == &[0, 0]));
        // x0 + x1 + x2 = 0 with x2 fixed to 1: the first is (1, 3), digits (0, 2)
        let c = Constraint { terms: vec![(false, vec![0]), (false, vec![1]), (false, vec![2])] };
        let p = Problem { tables: &t, free: vec![0, 1], cells: 3, constraints: vec![c] };
        assert!(matches!(p.search(1000, Exec::Parallel).outcome, Outcome::Found(ref d) if d == &[0, 2]));
    }

    #[test]
    fn budget_is_enforced() {
        // a product of units never vanishes, and it is only due at the leaves
        let t = Tables::new(FieldSpec::Fp(5)).unwrap();
        let free: Vec<usize> = (0..12).collect();
        let c = Constraint { terms: vec![(false, free.clone())] };
        let p = Problem { tables: &t, free, cells: 12, constraints: vec![c] };
        assert!(matches!(p.search(10_000, Exec::Sequential).outcome, Outcome::OutOfBudget));
        assert!(matches!(p.search(10_000, Exec::Parallel).outcome, Outcome::OutOfBudget));
    }
}
