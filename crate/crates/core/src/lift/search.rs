//! Frame search used when the block dispatch does not apply.
//!
//! Two row subsets `S1`, `S2` carry the supports of the frame columns. For
//! each column of `B` the search picks a pair of rows of `S1` and a
//! different pair of rows of `S2` forced to tie at the column minimum; the
//! two resulting difference-constraint systems are solved independently.
//! Leading coefficients are then chosen so that rows with equal
//! `λ_i − μ_i` get distinct ratios, which rules out cancellation in the 2×2
//! minors of the frame.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::Result;
use crate::hahn::{GenPoly, SeriesMatrix};
use crate::lift::block::three_zeros_frame;
use crate::lift::certificate::{LiftCertificate, LiftMethod};
use crate::lift::cramer::column_violations;
use crate::lift::frame::{check_pair_premise, require_capacity, PairFrame};
use crate::par::{self, Exec};
use crate::scalars::{FieldElem, FieldSpec, Rational};
use crate::tropical::combinations;
use crate::tropical::dbm::Dbm;
use crate::tropical::{IntGrid, ScaledGrid, TropMatrix, Weight};

/// Node budget per subset pair; exhausting it moves on to the next pair.
const NODE_LIMIT: usize = 200_000;

/// Ordered subset pairs: both of size `m − 1` first, then every other pair
/// of subsets of size ≥ 2 whose union has at least three rows.
pub(crate) fn subset_pairs(m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut sizes: Vec<usize> = Vec::new();
    if m >= 3 {
        sizes.push(m - 1);
    }
    sizes.extend((2..=m).rev().filter(|&k| k + 1 != m));
    let subsets: Vec<Vec<usize>> = sizes.iter().flat_map(|&k| combinations(m, k)).collect();
    let top = if m >= 3 { combinations(m, m - 1).len() } else { 0 };
    let mut out = Vec::new();
    for a in 0..top {
        for b in 0..top {
            out.push((subsets[a].clone(), subsets[b].clone()));
        }
    }
    for (a, s1) in subsets.iter().enumerate() {
        for (b, s2) in subsets.iter().enumerate() {
            if a < top && b < top {
                continue;
            }
            let mut union = s1.clone();
            union.extend(s2.iter().copied());
            union.sort_unstable();
            union.dedup();
            if union.len() >= 3 {
                out.push((s1.clone(), s2.clone()));
            }
        }
    }
    out
}

struct PairSearch<'a, W> {
    grid: &'a IntGrid<W>,
    den: &'a BigInt,
    field: FieldSpec,
    s1: &'a [usize],
    s2: &'a [usize],
    pairs1: Vec<(usize, usize)>,
    pairs2: Vec<(usize, usize)>,
    nodes: usize,
}

impl<W: Weight> PairSearch<'_, W> {
    fn weights(&self, rows: &[usize], j: usize) -> Vec<W> {
        rows.iter().map(|&r| self.grid.at(r, j).clone()).collect()
    }

    fn dfs(&mut self, j: usize, d1: &Dbm<W>, d2: &Dbm<W>) -> Option<PairFrame> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return None;
        }
        if j == self.grid.cols {
            return self.leaf(d1, d2);
        }
        let w1 = self.weights(self.s1, j);
        let w2 = self.weights(self.s2, j);
        for pi in 0..self.pairs1.len() {
            let (a, b) = self.pairs1[pi];
            let Some(n1) = crate::tropical::extend(d1, &w1, a, b) else { continue };
            let g1 = [self.s1[a], self.s1[b]];
            for qi in 0..self.pairs2.len() {
                let (c, d) = self.pairs2[qi];
                if [self.s2[c], self.s2[d]] == g1 {
                    continue;
                }
                let Some(n2) = crate::tropical::extend(d2, &w2, c, d) else { continue };
                if let Some(found) = self.dfs(j + 1, &n1, &n2) {
                    return Some(found);
                }
                if self.nodes > NODE_LIMIT {
                    return None;
                }
            }
        }
        None
    }

    fn leaf(&self, d1: &Dbm<W>, d2: &Dbm<W>) -> Option<PairFrame> {
        let lam = d1.to_rational(self.den).interior_point();
        let mu = d2.to_rational(self.den).interior_point();
        let frame = frame_from_points(self.field, self.grid.rows, self.s1, &lam, self.s2, &mu)?;
        let premise = check_pair_premise(&frame).ok()?;
        if !premise.holds() {
            return None;
        }
        Some(frame)
    }
}

/// Frame with `t^{λ}` on `s1` and `c_i t^{μ}` on `s2`, where the units `c_i`
/// are distinct within each class of equal `λ_i − μ_i`. `None` when a class
/// outgrows the unit group.
pub(crate) fn frame_from_points(
    field: FieldSpec,
    m: usize,
    s1: &[usize],
    lam: &[Rational],
    s2: &[usize],
    mu: &[Rational],
) -> Option<PairFrame> {
    let mut first = vec![GenPoly::zero(field); m];
    let mut second = vec![GenPoly::zero(field); m];
    for (k, &i) in s1.iter().enumerate() {
        first[i] = GenPoly::t_pow(field, lam[k].clone());
    }
    let mut classes: BTreeMap<Rational, Vec<FieldElem>> = BTreeMap::new();
    for (k, &i) in s2.iter().enumerate() {
        let coeff = match s1.iter().position(|&x| x == i) {
            Some(l) => {
                let used = classes.entry(&lam[l] - &mu[k]).or_default();
                let c = field.pick_excluding(used).ok()?;
                used.push(c.clone());
                c
            }
            None => field.one(),
        };
        second[i] = GenPoly::monomial(coeff, mu[k].clone());
    }
    PairFrame::new(field, first, second).ok()
}

fn search_on<W: Weight>(grid: &IntGrid<W>, den: &BigInt, f: FieldSpec, exec: Exec) -> Option<PairFrame> {
    let pairs = subset_pairs(grid.rows);
    par::find_map_first(exec, 0..pairs.len(), |k| {
        let (s1, s2) = &pairs[k];
        let mut st = PairSearch {
            grid,
            den,
            field: f,
            s1,
            s2,
            pairs1: crate::tropical::local_pairs(s1.len()),
            pairs2: crate::tropical::local_pairs(s2.len()),
            nodes: 0,
        };
        st.dfs(0, &Dbm::new(s1.len()), &Dbm::new(s2.len()))
    })
}

/// A frame satisfying the Cramer premise and the per-column Θ conditions for `b`.
pub fn generic_pair_search(b: &TropMatrix, f: FieldSpec) -> Result<Option<PairFrame>> {
    generic_pair_search_with(b, f, Exec::default())
}

pub fn generic_pair_search_with(b: &TropMatrix, f: FieldSpec, exec: Exec) -> Result<Option<PairFrame>> {
    require_capacity(f)?;
    if b.rows() < 3 {
        return Ok(None);
    }
    if b.cols() == 0 && b.rows() == 5 {
        return Ok(Some(three_zeros_frame(f)?));
    }
    let found = match b.integer_grid() {
        ScaledGrid::Small(g, d) => search_on(&g, &d, f, exec),
        ScaledGrid::Big(g, d) => search_on(&g, &d, f, exec),
    };
    match found {
        Some(frame) if column_violations(&frame, b)?.is_empty() => Ok(Some(frame)),
        _ => Ok(None),
    }
}

/// Monomial lift when the rows fall into at most `rows − 2` classes of rows
/// differing by a constant; the relations are `e_i − t^{c} e_k` for two
/// non-representative rows `i`.
pub fn repeated_rows_lift(b: &TropMatrix, f: FieldSpec) -> Result<Option<LiftCertificate>> {
    let m = b.rows();
    if m < 3 || b.cols() == 0 {
        return Ok(None);
    }
    let mut rep: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for k in 0..i {
            if rep[k] != k {
                continue;
            }
            let c = b.get(i, 0) - b.get(k, 0);
            if (0..b.cols()).all(|j| b.get(i, j) - b.get(k, j) == c) {
                rep[i] = k;
                break;
            }
        }
    }
    let dup: Vec<usize> = (0..m).filter(|&i| rep[i] != i).collect();
    if m - dup.len() > m - 2 {
        return Ok(None);
    }
    let relation = |i: usize| {
        let k = rep[i];
        let mut col = vec![GenPoly::zero(f); m];
        col[i] = GenPoly::one(f);
        col[k] = GenPoly::monomial(f.one().neg(), b.get(i, 0) - b.get(k, 0));
        col
    };
    let frame = PairFrame::new(f, relation(dup[0]), relation(dup[1]))?;
    Ok(Some(LiftCertificate {
        b: b.clone(),
        field: f,
        target_rank: m - 2,
        frame,
        lift: SeriesMatrix::monomial_lift(f, b),
        columns: Vec::new(),
        method: LiftMethod::RepeatedRows,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::lift::cramer::build_lift_from_pair;

    #[test]
    fn subset_pairs_start_with_four_subsets() {
        let pairs = subset_pairs(5);
        assert_eq!(pairs[0], (vec![0, 1, 2, 3], vec![0, 1, 2, 3]));
        assert_eq!(pairs[1], (vec![0, 1, 2, 3], vec![0, 1, 2, 4]));
        assert!(pairs.iter().all(|(a, b)| a.len() >= 2 && b.len() >= 2));
    }

    #[test]
    fn finds_a_frame_for_golden_b_over_f5() {
        let b = golden::matrix_b();
        let frame = generic_pair_search(&b, FieldSpec::Fp(5)).unwrap().expect("frame");
        let cert = build_lift_from_pair(&frame, &b).unwrap();
        assert!(cert.check().unwrap().passed());
    }

    #[test]
    fn empty_matrix_gets_the_trivial_frame() {
        let frame = generic_pair_search(&TropMatrix::zeros(5, 0), FieldSpec::Gf4).unwrap();
        assert!(frame.is_some());
    }

    #[test]
    fn no_frame_for_tropical_rank_four() {
        let mut rows = vec![[0i64, 5, 5, 5]; 5];
        for (i, r) in rows.iter_mut().enumerate().take(4) {
            *r = [5, 5, 5, 5];
            r[i] = 0;
        }
        rows[4] = [5, 5, 5, 5];
        let b = TropMatrix::from_ints(&rows).unwrap();
        assert_eq!(crate::tropical::trop_rank(&b).unwrap(), 4);
        assert!(generic_pair_search(&b, FieldSpec::Fp(5)).unwrap().is_none());
    }

    #[test]
    fn repeated_rows_of_d() {
        let d = golden::matrix_d();
        // only one repeat: four classes, not enough for two relations
        assert!(repeated_rows_lift(&d, FieldSpec::Fp(5)).unwrap().is_none());
        let b = TropMatrix::from_ints(&[[0, 1], [1, 2], [0, 1], [3, 0], [3, 0]]).unwrap();
        let cert = repeated_rows_lift(&b, FieldSpec::Fp(2)).unwrap().unwrap();
        assert!(cert.check().unwrap().passed());
    }
}
