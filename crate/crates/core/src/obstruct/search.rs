use std::fmt;

use crate::error::{Error, Result};
use crate::obstruct::minors::{singular_minors_with_cap, Assignment, MinorInfo};
use crate::obstruct::engine::{Constraint, Outcome, Problem, Tables};
use crate::par::Exec;
use crate::scalars::FieldSpec;
use crate::tropical::{parity, TropMatrix, DEFAULT_PERM_CAP};

pub const DEFAULT_BUDGET: u128 = 1 << 26;
pub const BUDGET_ENV: &str = "TROPRANK_BUDGET";

/// `TROPRANK_BUDGET` if set to an integer, otherwise [`DEFAULT_BUDGET`].
pub fn default_budget() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [Verdict::Certified, Verdict::Inconclusive].into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A spanning tree of the bipartite row/column graph, as matrix positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    positions: Vec<(usize, usize)>,
}

impl Gauge {
    /// Row `row` and column `col` in full.
    pub fn star(rows: usize, cols: usize, row: usize, col: usize) -> Result<Gauge> {
        let mut positions: Vec<(usize, usize)> = (0..cols).map(|j| (row, j)).collect();
        positions.extend((0..rows).filter(|&i| i != row).map(|i| (i, col)));
        Gauge::tree(rows, cols, positions)
    }

    /// Checks that `positions` form a spanning tree on `rows + cols` vertices.
    pub fn tree(rows: usize, cols: usize, mut positions: Vec<(usize, usize)>) -> Result<Gauge> {
        if rows == 0 || cols == 0 || positions.len() != rows + cols - 1 {
            return Err(Error::Domain(format!("{} positions cannot span a {rows}×{cols} grid", positions.len())));
        }
        let mut parent: Vec<usize> = (0..rows + cols).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(i, j) in &positions {
            if i >= rows || j >= cols {
                return Err(Error::Domain(format!("gauge position ({i}, {j}) outside the grid")));
            }
            let (a, b) = (root(&mut parent, i), root(&mut parent, rows + j));
            if a == b {
                return Err(Error::Domain(format!("gauge position ({i}, {j}) closes a cycle")));
            }
            parent[a] = b;
        }
        positions.sort_unstable();
        Ok(Gauge { positions })
    }

    /// Star on the last row and last column.
    pub fn standard(rows: usize, cols: usize) -> Result<Gauge> {
        Gauge::star(rows, cols, rows.saturating_sub(1), cols.saturating_sub(1))
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub budget: u128,
    /// `None` picks [`Gauge::standard`].
    pub gauge: Option<Gauge>,
    pub exec: Exec,
    pub perm_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { budget: default_budget(), gauge: None, exec: Exec::default(), perm_cap: DEFAULT_PERM_CAP }
    }
}

/// Outcome of the first-order obstruction search for `K_F(B) ≥ r + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub r: usize,
    pub field: FieldSpec,
    /// Assignments accounted for: the full space when certified by
    /// enumeration, zero on the non-singular-minor fast path, and the
    /// position of the witness in enumeration order (from 1) otherwise.
    pub searched_count: u128,
    /// Search-tree nodes actually evaluated; pruning keeps this far below
    /// `searched_count` on most inputs.
    pub nodes_visited: u64,
    /// First surviving assignment in enumeration order.
    pub witness: Option<Assignment>,
    /// All `(r+1) × (r+1)` minors, singular or not.
    pub minors: Vec<MinorInfo>,
}

/// Sound lower bound `K_F(B) ≥ r + 1` by exhaustive search over gauge-reduced
/// leading-coefficient assignments.
///
/// The search is depth-first over the free positions, in an order fixed by
/// the minors alone, and prunes on every minor as soon as all of the
/// entries its first-order coefficient involves are assigned.
/// `budget` bounds the number of search nodes; running out is a resource
/// error, never a verdict.
pub fn certify_lower_bound(b: &TropMatrix, r: usize, f: FieldSpec, budget: u128) -> Result<ObstructionReport> {
    certify_lower_bound_with(b, r, f, &CertifyOptions { budget, ..CertifyOptions::default() })
}

pub fn certify_lower_bound_with(
    b: &TropMatrix,
    r: usize,
    f: FieldSpec,
    opts: &CertifyOptions,
) -> Result<ObstructionReport> {
    if !f.is_finite() {
        return Err(Error::Unsupported(format!("obstruction search over the infinite field {f}")));
    }
    let (m, n) = (b.rows(), b.cols());
    let k = r + 1;
    let report = |verdict, searched_count, witness, minors, nodes_visited| ObstructionReport {
        verdict,
        r,
        field: f,
        searched_count,
        nodes_visited,
        witness,
        minors,
    };
    if k > m.min(n) {
        return Ok(report(Verdict::Inconclusive, 1, Some(Assignment::ones(f, m, n)), Vec::new(), 0));
    }
    let minors = singular_minors_with_cap(b, k, opts.perm_cap)?;
    if minors.iter().any(|mi| !mi.is_singular()) {
        return Ok(report(Verdict::Certified, 0, None, minors, 0));
    }

    let gauge = match &opts.gauge {
        Some(g) => Gauge::tree(m, n, g.positions().to_vec())?,
        None => Gauge::standard(m, n)?,
    };
    let mut fixed = vec![false; m * n];
    for &(i, j) in gauge.positions() {
        fixed[i * n + j] = true;
    }
    let tables = Tables::new(f)?;
    let u = tables.units() as u128;
    let free: Vec<usize> = (0..m * n).filter(|&p| !fixed[p]).collect();
    let constraints = minors.iter().map(|mi| expansion(mi, n)).collect();
    let problem = Problem::new(&tables, free, m * n, constraints);
    let node_budget = u64::try_from(opts.budget).unwrap_or(u64::MAX);
    let stats = problem.search(node_budget, opts.exec);
    Ok(match stats.outcome {
        Outcome::Found(digits) => {
            let mut values = vec![f.one(); m * n];
            for (&p, &d) in problem.free.iter().zip(&digits) {
                values[p] = tables.elem(d as u16 + 1).clone();
            }
            let index = digits.iter().fold(0u128, |acc, &d| acc.saturating_mul(u).saturating_add(d as u128));
            let witness = Assignment::new(f, m, n, values, fixed)?;
            report(Verdict::Inconclusive, index.saturating_add(1), Some(witness), minors, stats.nodes)
        }
        Outcome::Exhausted => {
            let size = u32::try_from(problem.free.len()).ok().and_then(|e| u.checked_pow(e)).unwrap_or(u128::MAX);
            report(Verdict::Certified, size, None, minors, stats.nodes)
        }
        Outcome::OutOfBudget => return Err(Error::Resource { needed: u128::from(stats.nodes), budget: opts.budget }),
    })
}

fn expansion(minor: &MinorInfo, cols: usize) -> Constraint {
    let terms = minor
        .achievers
        .iter()
        .map(|p| (parity(p), p.iter().enumerate().map(|(i, &pi)| minor.rows[i] * cols + minor.cols[pi]).collect()))
        .collect();
    Constraint { terms }
}
