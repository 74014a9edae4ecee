//! Tropical permanent by exhaustive enumeration, keeping every minimizing permutation.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalars::Rational;
use crate::tropical::matrix::{IntGrid, ScaledGrid, TropMatrix, Weight};

/// Default largest permanent size enumerated (8! = 40320 permutations).
pub const DEFAULT_PERM_CAP: usize = 8;

/// Hard ceiling for the configurable cap.
pub const MAX_PERM_CAP: usize = 10;

/// All permutations of `0..k` in lexicographic order, with their signs.
pub struct PermTable {
    pub k: usize,
    pub perms: Vec<Vec<usize>>,
    /// `true` for odd permutations.
    pub odd: Vec<bool>,
}

fn build_table(k: usize) -> PermTable {
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    let odd = perms.iter().map(|p| parity(p)).collect();
    PermTable { k, perms, odd }
}

/// `true` if the permutation is odd (counted by inversions).
pub fn parity(p: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

pub fn perm_table(k: usize) -> &'static PermTable {
    static TABLES: [OnceLock<PermTable>; MAX_PERM_CAP + 1] = [const { OnceLock::new() }; MAX_PERM_CAP + 1];
    assert!(k <= MAX_PERM_CAP, "permutation table of size {k} exceeds the hard ceiling");
    TABLES[k].get_or_init(|| build_table(k))
}

/// Value of the tropical permanent and all permutations attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermOutcome {
    pub value: Rational,
    pub achievers: Vec<Vec<usize>>,
}

impl PermOutcome {
    pub fn achiever_count(&self) -> usize {
        self.achievers.len()
    }

    pub fn is_singular(&self) -> bool {
        self.achievers.len() >= 2
    }
}

fn check_cap(k: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_PERM_CAP);
    if k > cap {
        return Err(Error::Size { size: k, cap });
    }
    Ok(())
}

/// Minimum and the indices (into the perm table) of all achievers.
pub(crate) fn perm_scan<W: Weight>(grid: &IntGrid<W>, rows: &[usize], cols: &[usize]) -> (W, Vec<usize>) {
    let table = perm_table(rows.len());
    let mut best: Option<W> = None;
    let mut hits = Vec::new();
    for (idx, p) in table.perms.iter().enumerate() {
        let mut s = W::zero();
        for (i, &pi) in p.iter().enumerate() {
            s = s + grid.at(rows[i], cols[pi]).clone();
        }
        match &best {
            Some(b) if s > *b => {}
            Some(b) if s == *b => hits.push(idx),
            _ => {
                best = Some(s);
                hits.clear();
                hits.push(idx);
            }
        }
    }
    (best.unwrap_or_else(W::zero), hits)
}

/// True if the minimum over permutations of the square submatrix is attained at least twice.
pub(crate) fn is_singular_on<W: Weight>(grid: &IntGrid<W>, rows: &[usize], cols: &[usize]) -> bool {
    let table = perm_table(rows.len());
    let mut best: Option<W> = None;
    let mut count = 0;
    for p in &table.perms {
        let mut s = W::zero();
        for (i, &pi) in p.iter().enumerate() {
            s = s + grid.at(rows[i], cols[pi]).clone();
        }
        match &best {
            Some(b) if s > *b => {}
            Some(b) if s == *b => count += 1,
            _ => {
                best = Some(s);
                count = 1;
            }
        }
    }
    count >= 2
}

fn outcome<W: Weight>(grid: &IntGrid<W>, den: &BigInt, k: usize) -> PermOutcome {
    let idx: Vec<usize> = (0..k).collect();
    let (value, hits) = perm_scan(grid, &idx, &idx);
    let table = perm_table(k);
    PermOutcome { value: value.to_rational(den), achievers: hits.into_iter().map(|h| table.perms[h].clone()).collect() }
}

/// Tropical permanent of a square matrix with the full set of minimizing permutations.
pub fn trop_perm(b: &TropMatrix) -> Result<PermOutcome> {
    trop_perm_with_cap(b, DEFAULT_PERM_CAP)
}

pub fn trop_perm_with_cap(b: &TropMatrix, cap: usize) -> Result<PermOutcome> {
    if !b.is_square() {
        return Err(Error::Domain(format!("permanent of a {}x{} matrix", b.rows(), b.cols())));
    }
    check_cap(b.rows(), cap)?;
    Ok(match b.integer_grid() {
        ScaledGrid::Small(g, d) => outcome(&g, &d, b.rows()),
        ScaledGrid::Big(g, d) => outcome(&g, &d, b.rows()),
    })
}

pub fn is_trop_singular(b: &TropMatrix) -> Result<bool> {
    Ok(trop_perm(b)?.is_singular())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn rank_on<W: Weight>(grid: &IntGrid<W>) -> usize {
    let top = grid.rows.min(grid.cols);
    for r in (1..=top).rev() {
        let row_sets = combinations(grid.rows, r);
        let col_sets = combinations(grid.cols, r);
        for rs in &row_sets {
            for cs in &col_sets {
                if !is_singular_on(grid, rs, cs) {
                    return r;
                }
            }
        }
    }
    0
}

/// Size of the largest tropically non-singular square submatrix.
pub fn trop_rank(b: &TropMatrix) -> Result<usize> {
    trop_rank_with_cap(b, DEFAULT_PERM_CAP)
}

pub fn trop_rank_with_cap(b: &TropMatrix, cap: usize) -> Result<usize> {
    check_cap(b.rows().min(b.cols()), cap)?;
    Ok(match b.integer_grid() {
        ScaledGrid::Small(g, _) => rank_on(&g),
        ScaledGrid::Big(g, _) => rank_on(&g),
    })
}

/// True if some `k × k` submatrix is tropically non-singular.
pub fn has_nonsingular_minor(b: &TropMatrix, k: usize) -> Result<bool> {
    check_cap(k, DEFAULT_PERM_CAP)?;
    fn scan<W: Weight>(g: &IntGrid<W>, k: usize) -> bool {
        combinations(g.rows, k)
            .iter()
            .any(|rs| combinations(g.cols, k).iter().any(|cs| !is_singular_on(g, rs, cs)))
    }
    Ok(match b.integer_grid() {
        ScaledGrid::Small(g, _) => scan(&g, k),
        ScaledGrid::Big(g, _) => scan(&g, k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::scalars::int;

    #[test]
    fn tables_have_factorial_size_and_signs() {
        assert_eq!(perm_table(4).perms.len(), 24);
        assert_eq!(perm_table(4).odd.iter().filter(|&&o| o).count(), 12);
        assert_eq!(perm_table(0).perms, vec![Vec::<usize>::new()]);
        assert!(parity(&[1, 0, 2]));
        assert!(!parity(&[1, 2, 0]));
    }

    #[test]
    fn permanent_examples() {
        let b = TropMatrix::from_ints(&[[0, 1], [1, 0]]).unwrap();
        let out = trop_perm(&b).unwrap();
        assert_eq!(out.value, int(0));
        assert_eq!(out.achievers, vec![vec![0, 1]]);
        assert!(!is_trop_singular(&b).unwrap());

        let z = TropMatrix::zeros(3, 3);
        let out = trop_perm(&z).unwrap();
        assert_eq!(out.achiever_count(), 6);
        assert!(is_trop_singular(&TropMatrix::zeros(2, 2)).unwrap());
    }

    #[test]
    fn golden_d_minor_has_three_achievers() {
        // D[1,2,3,5 | 1,2,3,5] (1-based)
        let d = golden::matrix_d();
        let m = d.submatrix(&[0, 1, 2, 4], &[0, 1, 2, 4]);
        let out = trop_perm(&m).unwrap();
        assert_eq!(out.value, int(0));
        assert_eq!(out.achiever_count(), 3);
        assert!(is_trop_singular(&m).unwrap());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(trop_rank(&golden::matrix_b()).unwrap(), 3);
        assert_eq!(trop_rank(&golden::matrix_d()).unwrap(), 3);
        assert_eq!(trop_rank(&TropMatrix::zeros(5, 5)).unwrap(), 1);
        assert_eq!(trop_rank(&TropMatrix::zeros(5, 0)).unwrap(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let big = TropMatrix::zeros(9, 9);
        assert!(matches!(trop_perm(&big), Err(Error::Size { size: 9, cap: 8 })));
        assert!(trop_rank_with_cap(&TropMatrix::zeros(5, 5), 4).is_err());
        assert!(trop_perm(&TropMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
