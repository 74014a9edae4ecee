use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lift::block::{build_lift_3zeros, build_lift_block, Block, BlockShape};
use crate::lift::certificate::{LiftCertificate, LiftMethod, Transport};
use crate::lift::cramer::build_lift_from_pair;
use crate::lift::frame::require_capacity;
use crate::lift::search::{generic_pair_search_with, repeated_rows_lift};
use crate::par::Exec;
use crate::scalars::{FieldSpec, Rational};
use crate::tropical::{find_witness_with, trop_rank, TropMatrix};

fn construction(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

fn zeros_in(w: &TropMatrix, j: usize, rows: std::ops::Range<usize>) -> Vec<usize> {
    rows.filter(|&i| w.get(i, j).is_zero()).collect()
}

/// Item 1 and 2 of the normalization: scale by a dependence witness so every
/// column has two zeros and no negative entry, then subtract row minima.
fn normalize(b: &TropMatrix, exec: Exec) -> Result<Transport> {
    let mut t = Transport::new(b);
    let all: Vec<usize> = (0..b.rows()).collect();
    let w = find_witness_with(b, &all, exec)?
        .ok_or_else(|| Error::Invariant("rows are tropically independent despite rank ≤ 3".into()))?;
    let lam: Vec<Rational> = (0..b.rows())
        .map(|i| w.lambda.get(i).finite().cloned().unwrap_or_else(Rational::zero))
        .collect();
    t.shift(&lam, &vec![Rational::zero(); b.cols()]);
    let mins: Vec<Rational> = t.working().column_minima().into_iter().map(|x| -x).collect();
    t.shift(&vec![Rational::zero(); b.rows()], &mins);
    let rmins: Vec<Rational> = t.working().row_minima().into_iter().map(|x| -x).collect();
    t.shift(&rmins, &vec![Rational::zero(); b.cols()]);
    Ok(t)
}

fn check_normal_form(w: &TropMatrix) -> Result<()> {
    if w.entries().iter().any(|x| *x < Rational::zero()) {
        return Err(construction("normal form has a negative entry"));
    }
    if let Some(j) = (0..w.cols()).find(|&j| zeros_in(w, j, 0..5).len() < 2) {
        return Err(construction(format!("normal form column {j} has fewer than two zeros")));
    }
    Ok(())
}

/// Orders columns into the `v, p, q, r, s` blocks. With `strict_v`, only
/// columns whose last three entries are positive count as `v`.
fn block_order(w: &TropMatrix, strict_v: bool) -> Option<(Vec<usize>, BlockShape)> {
    let mut buckets: [Vec<usize>; 5] = Default::default();
    for j in 0..w.cols() {
        let top_zero = w.get(0, j).is_zero() && w.get(1, j).is_zero();
        let bottom_pos = (2..5).all(|i| *w.get(i, j) > Rational::zero());
        if top_zero && (!strict_v || bottom_pos) {
            buckets[0].push(j);
            continue;
        }
        let slot = match Block::of_bottom(w, j)? {
            Block::P => 1,
            Block::Q => 2,
            Block::R => 3,
            Block::S => 4,
            Block::V => 0,
        };
        buckets[slot].push(j);
    }
    let perm: Vec<usize> = buckets.iter().flatten().copied().collect();
    let permuted = w.permute_cols(&perm);
    let [v, p, q, r, s] = buckets.map(|b| b.len());
    let shape = BlockShape::measure(&permuted, v, p, q, r, s);
    shape.validate(&permuted).ok()?;
    Some((perm, shape))
}

fn block_dispatch(t: &Transport, f: FieldSpec) -> Result<LiftCertificate> {
    let mut notes = Vec::new();
    for strict in [false, true] {
        let Some((perm, shape)) = block_order(t.working(), strict) else {
            notes.push(format!("no block form (strict v: {strict})"));
            continue;
        };
        let mut tt = t.clone();
        tt.permute_cols(&perm);
        match build_lift_block(tt.working(), &shape, f) {
            Ok(cert) => return tt.pull_back(&cert),
            Err(e @ Error::Capacity { .. }) => return Err(e),
            Err(e) => notes.push(e.to_string()),
        }
    }
    Err(construction(notes.join("; ")))
}

fn three_zeros_dispatch(t: &Transport, f: FieldSpec) -> Result<LiftCertificate> {
    t.pull_back(&build_lift_3zeros(t.working(), f)?)
}

/// The case analysis on a normalized matrix.
fn dispatch(mut t: Transport, f: FieldSpec) -> Result<LiftCertificate> {
    let n = t.working().cols();
    for _ in 0..=n {
        let w = t.working().clone();
        check_normal_form(&w)?;
        let Some(c0) = (0..n).find(|&j| zeros_in(&w, j, 0..5).len() == 2) else {
            return three_zeros_dispatch(&t, f);
        };
        let z = zeros_in(&w, c0, 0..5);
        let mut perm = z.clone();
        perm.extend((0..5).filter(|i| !z.contains(i)));
        t.permute_rows(&perm);
        let w = t.working().clone();

        if let Some(c1) = (0..n).find(|&j| zeros_in(&w, j, 2..5).len() == 1) {
            let k = zeros_in(&w, c1, 2..5)[0];
            let mut perm = vec![0, 1, k];
            perm.extend((2..5).filter(|&i| i != k));
            t.permute_rows(&perm);
            let w = t.working();
            if let Some(j) = (0..n).find(|&j| w.get(3, j).is_zero() != w.get(4, j).is_zero()) {
                return Err(construction(format!("case 1: rows 3 and 4 differ in zero pattern at column {j}")));
            }
            t.permute_rows(&[3, 4, 0, 1, 2]);
            return block_dispatch(&t, f);
        }

        if let Some(c1) = (0..n).find(|&j| zeros_in(&w, j, 2..5).len() == 2) {
            let k = (2..5).find(|&i| !w.get(i, c1).is_zero()).unwrap_or(4);
            let mut perm = vec![0, 1];
            perm.extend((2..5).filter(|&i| i != k));
            perm.push(k);
            t.permute_rows(&perm);
            return block_dispatch(&t, f);
        }

        // every column has zero or three zeros among the last three rows
        let g: Vec<usize> = (0..n).filter(|&j| !(w.get(2, j) == w.get(3, j) && w.get(3, j) == w.get(4, j))).collect();
        if g.is_empty() {
            let lift_by: Vec<Rational> = (0..n).map(|j| -w.get(2, j).clone()).collect();
            let top = (0..n).map(|j| w.get(2, j).clone()).max().unwrap_or_else(Rational::zero);
            let z = Rational::zero();
            t.shift(&[top.clone(), top, z.clone(), z.clone(), z], &lift_by);
            return three_zeros_dispatch(&t, f);
        }
        let m = g.iter().flat_map(|&j| (2..5).map(move |i| (i, j))).map(|(i, j)| w.get(i, j).clone()).min().unwrap();
        let cols: Vec<Rational> = (0..n).map(|j| -std::cmp::min(m.clone(), w.get(2, j).clone())).collect();
        let z = Rational::zero();
        t.shift(&[m.clone(), m, z.clone(), z.clone(), z], &cols);
    }
    Err(construction(format!("case-3 reduction did not terminate within {} steps", n + 1)))
}

/// A verified lift of rank at most 3 of a 5-row matrix with tropical rank at most 3.
///
/// Runs the normalization and case analysis; when the block construction
/// does not apply it falls back to a frame search and finally to a
/// repeated-rows monomial lift. Every returned certificate has been
/// re-checked from scratch.
pub fn kapranov_upper(b: &TropMatrix, f: FieldSpec) -> Result<LiftCertificate> {
    kapranov_upper_with(b, f, Exec::default())
}

pub fn kapranov_upper_with(b: &TropMatrix, f: FieldSpec, exec: Exec) -> Result<LiftCertificate> {
    if b.rows() != 5 {
        return Err(Error::Precondition(format!("expected 5 rows, found {}", b.rows())));
    }
    require_capacity(f)?;
    let r = trop_rank(b)?;
    if r > 3 {
        return Err(Error::Precondition(format!("tropical rank {r} exceeds 3")));
    }
    let mut notes = Vec::new();
    let direct = if b.cols() == 0 { build_lift_3zeros(b, f) } else { normalize(b, exec).and_then(|t| dispatch(t, f)) };
    let cert = match direct {
        Ok(c) => c,
        Err(e @ Error::Capacity { .. }) => return Err(e),
        Err(e) => {
            notes.push(format!("dispatch: {e}"));
            fallback(b, f, exec, &mut notes)?
        }
    };
    let check = cert.check()?;
    if !check.passed() || cert.b != *b {
        return Err(Error::Invariant(format!("constructed certificate fails verification: {check}")));
    }
    Ok(cert)
}

fn fallback(b: &TropMatrix, f: FieldSpec, exec: Exec, notes: &mut Vec<String>) -> Result<LiftCertificate> {
    match generic_pair_search_with(b, f, exec)? {
        Some(frame) => match build_lift_from_pair(&frame, b) {
            Ok(mut c) => {
                c.method = LiftMethod::PairSearch;
                return Ok(c);
            }
            Err(e) => notes.push(format!("pair search frame: {e}")),
        },
        None => notes.push("pair search: no frame".into()),
    }
    if let Some(c) = repeated_rows_lift(b, f)? {
        return Ok(c);
    }
    Err(construction(notes.join("; ")))
}
