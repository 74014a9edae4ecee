//! Fixed-frame constructions: columns with three zeros, and the five-block form
//!
//! ```text
//!        v     p     q     r     s
//!      0..0 | B1  | B2  | B3  | B4
//!      0..0 |     |     |     |
//!           | 0   | 0   | γ   | 0
//!       B'  | 0   | β   | 0   | 0
//!           | α   | 0   | 0   | 0
//! ```
//!
//! with `α, β, γ > 0` and either `B'` or `(B1|B2|B3|B4)` positive.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hahn::GenPoly;
use crate::lift::certificate::{LiftCertificate, LiftMethod, Transport};
use crate::lift::cramer::build_lift_from_pair;
use crate::lift::frame::{require_capacity, PairFrame};
use crate::scalars::{FieldSpec, Rational};
use crate::tropical::{find_witness, is_trop_singular, TropMatrix};

fn require_five_rows(b: &TropMatrix) -> Result<()> {
    if b.rows() != 5 {
        return Err(Error::Precondition(format!("expected 5 rows, found {}", b.rows())));
    }
    Ok(())
}

fn zero_count(b: &TropMatrix, j: usize, rows: std::ops::Range<usize>) -> usize {
    rows.filter(|&i| b.get(i, j).is_zero()).count()
}

/// The frame with columns `(1, 1, 1, 1, 0)` and `(1, η, ζ, 0, 1)`.
pub fn three_zeros_frame(f: FieldSpec) -> Result<PairFrame> {
    require_capacity(f)?;
    let picked = f.pick_distinct_excluding(&[f.zero(), f.one()], 2)?;
    let c = GenPoly::constant;
    let (o, z) = (f.one(), f.zero());
    PairFrame::new(
        f,
        vec![c(o.clone()), c(o.clone()), c(o.clone()), c(o.clone()), c(z.clone())],
        vec![c(o.clone()), c(picked[0].clone()), c(picked[1].clone()), c(z), c(o)],
    )
}

/// Lift of a nonnegative 5-row matrix with at least three zeros in every column.
pub fn build_lift_3zeros(b: &TropMatrix, f: FieldSpec) -> Result<LiftCertificate> {
    require_capacity(f)?;
    require_five_rows(b)?;
    if b.entries().iter().any(|x| *x < Rational::zero()) {
        return Err(Error::Precondition("entries must be nonnegative".into()));
    }
    if let Some(j) = (0..b.cols()).find(|&j| zero_count(b, j, 0..5) < 3) {
        return Err(Error::Precondition(format!("column {j} has fewer than three zeros")));
    }
    let mut cert = build_lift_from_pair(&three_zeros_frame(f)?, b)?;
    cert.method = LiftMethod::ThreeZeros;
    Ok(cert)
}

/// Column counts of the five blocks, in the order `v, p, q, r, s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockShape {
    pub v: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub b_prime_positive: bool,
    pub blocks_positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Block {
    V,
    P,
    Q,
    R,
    S,
}

impl Block {
    /// Which non-`v` block a column belongs to, from its last three entries.
    pub(crate) fn of_bottom(b: &TropMatrix, j: usize) -> Option<Block> {
        let z = |i: usize| b.get(i, j).is_zero();
        match (z(2), z(3), z(4)) {
            (true, true, false) => Some(Block::P),
            (true, false, true) => Some(Block::Q),
            (false, true, true) => Some(Block::R),
            (true, true, true) => Some(Block::S),
            _ => None,
        }
    }
}

impl BlockShape {
    pub fn cols(&self) -> usize {
        self.v + self.p + self.q + self.r + self.s
    }

    pub(crate) fn block_of(&self, j: usize) -> Block {
        let bounds = [self.v, self.p, self.q, self.r];
        let mut acc = 0;
        for (k, blk) in [Block::V, Block::P, Block::Q, Block::R].into_iter().enumerate() {
            acc += bounds[k];
            if j < acc {
                return blk;
            }
        }
        Block::S
    }

    /// Shape with the given block sizes and positivity flags read off `b`.
    pub fn measure(b: &TropMatrix, v: usize, p: usize, q: usize, r: usize, s: usize) -> BlockShape {
        let mut shape = BlockShape { v, p, q, r, s, b_prime_positive: false, blocks_positive: false };
        let pos = |i: usize, j: usize| *b.get(i, j) > Rational::zero();
        let in_range = shape.cols() == b.cols() && b.rows() == 5;
        shape.b_prime_positive = in_range && (0..v).all(|j| (2..5).all(|i| pos(i, j)));
        shape.blocks_positive = in_range && (v..b.cols()).all(|j| pos(0, j) && pos(1, j));
        shape
    }

    /// Checks that `b` has this block form.
    pub fn validate(&self, b: &TropMatrix) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(format!("block form: {msg}")));
        require_five_rows(b)?;
        if self.cols() != b.cols() {
            return fail(format!("shape covers {} columns, matrix has {}", self.cols(), b.cols()));
        }
        if self.v == 0 || self.p == 0 || self.q + self.r + self.s == 0 {
            return fail(format!("needs v > 0, p > 0, q + r + s > 0; got {self:?}"));
        }
        if b.entries().iter().any(|x| *x < Rational::zero()) {
            return fail("entries must be nonnegative".into());
        }
        for j in 0..b.cols() {
            let blk = self.block_of(j);
            let ok = match blk {
                Block::V => b.get(0, j).is_zero() && b.get(1, j).is_zero(),
                other => Block::of_bottom(b, j) == Some(other),
            };
            if !ok {
                return fail(format!("column {j} does not fit block {blk:?}"));
            }
        }
        let measured = BlockShape::measure(b, self.v, self.p, self.q, self.r, self.s);
        if !measured.b_prime_positive && !measured.blocks_positive {
            return fail("neither B' nor (B1|B2|B3|B4) is positive".into());
        }
        Ok(())
    }
}

fn lambda_at(w: &crate::tropical::Witness, i: usize) -> Result<Rational> {
    w.lambda
        .get(i)
        .finite()
        .cloned()
        .ok_or_else(|| Error::Invariant(format!("witness entry {i} is infinite")))
}

fn construction(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

/// Lift of a matrix in the five-block form.
///
/// The top two rows are shifted by `−m` (and the `v` columns by `+m`), where
/// `m` is the least entry of `(B1|…|B4)`, so that `B'` becomes positive.
/// Dependence witnesses `λ` on rows `{0,1,3,4}` and `μ` on rows `{0,2,3,4}`
/// give the frame `(t^λ0, t^λ1, 0, t^λ3, t^λ4)`, `(t^μ0, 0, t^μ2, t^μ3, η t^μ4)`.
pub fn build_lift_block(b: &TropMatrix, shape: &BlockShape, f: FieldSpec) -> Result<LiftCertificate> {
    require_capacity(f)?;
    shape.validate(b)?;
    let mut t = Transport::new(b);
    let v = shape.v;
    let m = (v..b.cols())
        .flat_map(|j| [b.get(0, j).clone(), b.get(1, j).clone()])
        .min()
        .unwrap_or_else(Rational::zero);
    let col_shift: Vec<Rational> =
        (0..b.cols()).map(|j| if j < v { m.clone() } else { Rational::zero() }).collect();
    t.shift(&[-m.clone(), -m.clone(), Rational::zero(), Rational::zero(), Rational::zero()], &col_shift);
    if !BlockShape::measure(t.working(), shape.v, shape.p, shape.q, shape.r, shape.s).b_prime_positive {
        return Err(Error::Precondition("block form: B' is not positive after the shift".into()));
    }

    let w = t.working().clone();
    let zero_free = |j: usize| !w.get(0, j).is_zero() && !w.get(1, j).is_zero();
    let q_range = shape.v + shape.p..shape.v + shape.p + shape.q;
    let r_range = q_range.end..q_range.end + shape.r;
    let j1 = q_range.clone().find(|&j| zero_free(j));
    let j2 = r_range.clone().find(|&j| zero_free(j));
    let mut shape = *shape;
    match (j1, j2) {
        (Some(j1), Some(j2)) => {
            let j3 = (0..w.cols()).find(|&j| w.get(0, j).is_zero() != w.get(1, j).is_zero());
            if let Some(j3) = j3 {
                let sub = w.submatrix(&[0, 1, 2, 3], &[0, j1, j2, j3]);
                if !is_trop_singular(&sub)? {
                    return Err(Error::Precondition(format!(
                        "rows 0-3, columns {:?} form a tropically non-singular 4x4 submatrix",
                        [0, j1, j2, j3]
                    )));
                }
            }
        }
        (None, Some(_)) => {
            // exchanging rows 2 and 3 exchanges the roles of the q and r blocks
            t.permute_rows(&[0, 1, 3, 2, 4]);
            let mut perm: Vec<usize> = (0..shape.v + shape.p).collect();
            perm.extend(r_range.clone());
            perm.extend(q_range.clone());
            perm.extend(r_range.end..w.cols());
            t.permute_cols(&perm);
            std::mem::swap(&mut shape.q, &mut shape.r);
        }
        _ => {}
    }

    let w = t.working().clone();
    let lam = find_witness(&w, &[0, 1, 3, 4])?.ok_or_else(|| construction("rows 0,1,3,4 are independent"))?;
    let mu = find_witness(&w, &[0, 2, 3, 4])?.ok_or_else(|| construction("rows 0,2,3,4 are independent"))?;
    let l: Vec<Rational> = [0, 1, 3, 4].iter().map(|&i| lambda_at(&lam, i)).collect::<Result<_>>()?;
    let u: Vec<Rational> = [0, 2, 3, 4].iter().map(|&i| lambda_at(&mu, i)).collect::<Result<_>>()?;
    let (l0, l1, l3, l4) = (&l[0], &l[1], &l[2], &l[3]);
    let (u0, u2, u3, u4) = (&u[0], &u[1], &u[2], &u[3]);
    if !(l0 == l1 && l0 <= l3 && l0 <= l4) {
        return Err(construction(format!("λ = ({l0}, {l1}, {l3}, {l4}) violates λ0 = λ1 ≤ min(λ3, λ4)")));
    }
    if !(u2 == u3 && u3 <= u4 && u3 < u0) {
        return Err(construction(format!("μ = ({u0}, {u2}, {u3}, {u4}) violates μ2 = μ3 ≤ μ4, μ3 < μ0")));
    }

    let eta = f.pick_excluding(&[f.zero(), f.one()])?;
    let tp = |e: &Rational| GenPoly::t_pow(f, e.clone());
    let frame = PairFrame::new(
        f,
        vec![tp(l0), tp(l1), GenPoly::zero(f), tp(l3), tp(l4)],
        vec![tp(u0), GenPoly::zero(f), tp(u2), tp(u3), GenPoly::monomial(eta, u4.clone())],
    )?;
    let mut cert = build_lift_from_pair(&frame, &w).map_err(|e| match e {
        Error::Precondition(msg) => construction(format!("block frame rejected: {msg}")),
        other => other,
    })?;
    cert.method = LiftMethod::Block;
    t.pull_back(&cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::frame::check_pair_premise;

    #[test]
    fn three_zeros_example_over_f5() {
        let f5 = FieldSpec::Fp(5);
        let b = TropMatrix::from_ints(&[[0, 1], [0, 0], [0, 0], [1, 0], [2, 3]]).unwrap();
        let cert = build_lift_3zeros(&b, f5).unwrap();
        assert!(cert.check().unwrap().passed());
        assert_eq!(cert.method, LiftMethod::ThreeZeros);
        assert!(check_pair_premise(&three_zeros_frame(f5).unwrap()).unwrap().holds());
    }

    #[test]
    fn three_zeros_all_zero_matrix() {
        let cert = build_lift_3zeros(&TropMatrix::zeros(5, 4), FieldSpec::Gf4).unwrap();
        assert!(cert.check().unwrap().passed());
    }

    #[test]
    fn three_zeros_rejects_small_fields_and_bad_columns() {
        let b = TropMatrix::zeros(5, 2);
        assert!(matches!(build_lift_3zeros(&b, FieldSpec::Fp(3)), Err(Error::Capacity { .. })));
        let b = TropMatrix::from_ints(&[[0], [0], [1], [1], [1]]).unwrap();
        assert!(matches!(build_lift_3zeros(&b, FieldSpec::Fp(5)), Err(Error::Precondition(_))));
    }

    fn conforming() -> (TropMatrix, BlockShape) {
        // v = 1, p = 1, q = 1, r = 1, s = 0
        let b = TropMatrix::from_ints(&[[0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1], [2, 0, 1, 0], [1, 1, 0, 0]]).unwrap();
        let shape = BlockShape::measure(&b, 1, 1, 1, 1, 0);
        (b, shape)
    }

    #[test]
    fn conforming_block_matrix_lifts() {
        let (b, shape) = conforming();
        shape.validate(&b).unwrap();
        assert!(shape.b_prime_positive);
        let cert = build_lift_block(&b, &shape, FieldSpec::Fp(5)).unwrap();
        let check = cert.check().unwrap();
        assert!(check.passed(), "{check}");
        assert_eq!(cert.b, b);
    }

    #[test]
    fn non_positive_b_prime_is_a_shape_error() {
        let b = TropMatrix::from_ints(&[[0, 0, 1], [0, 1, 0], [0, 0, 0], [1, 0, 1], [1, 1, 0]]).unwrap();
        let shape = BlockShape::measure(&b, 1, 1, 1, 0, 0);
        assert!(matches!(shape.validate(&b), Err(Error::Precondition(_))));
        assert!(build_lift_block(&b, &shape, FieldSpec::Fp(5)).is_err());
    }

    #[test]
    fn non_singular_item_three_minor_is_detected() {
        // zero-free columns in B2 (col 2) and B3 (col 3), col 4 has one zero in rows 0,1
        let b = TropMatrix::from_ints(&[
            [0, 1, 1, 1, 0],
            [0, 1, 1, 1, 2],
            [1, 0, 0, 3, 0],
            [1, 0, 3, 0, 0],
            [1, 2, 0, 0, 0],
        ])
        .unwrap();
        let shape = BlockShape::measure(&b, 1, 1, 1, 1, 1);
        shape.validate(&b).unwrap();
        let sub = b.submatrix(&[0, 1, 2, 3], &[0, 2, 3, 4]);
        assert!(!is_trop_singular(&sub).unwrap());
        assert!(matches!(build_lift_block(&b, &shape, FieldSpec::Fp(5)), Err(Error::Precondition(_))));
    }
}
