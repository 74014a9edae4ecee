use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hahn::{verify_lift, GenFrac, GenPoly, LiftCheck, SeriesMatrix};
use crate::lift::frame::PairFrame;
use crate::scalars::{FieldElem, FieldSpec, Rational};
use crate::tropical::TropMatrix;

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftMethod {
    ThreeZeros,
    Block,
    PairSearch,
    RepeatedRows,
}

impl LiftMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftMethod::ThreeZeros => "three-zeros",
            LiftMethod::Block => "block",
            LiftMethod::PairSearch => "pair-search",
            LiftMethod::RepeatedRows => "repeated-rows",
        }
    }

    pub fn parse(s: &str) -> Option<LiftMethod> {
        [LiftMethod::ThreeZeros, LiftMethod::Block, LiftMethod::PairSearch, LiftMethod::RepeatedRows]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

impl fmt::Display for LiftMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-column record of a Cramer-rule construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnData {
    /// `(i1, i2)`: the rows solved for.
    pub split: (usize, usize),
    /// The complementary rows, each carrying `−ξ_ι t^{b_ιj}`.
    pub triple: Vec<usize>,
    pub xi: Vec<FieldElem>,
    pub theta1: Rational,
    pub theta2: Rational,
}

/// A lift of `b` together with two independent vanishing row relations.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftCertificate {
    pub b: TropMatrix,
    pub field: FieldSpec,
    pub target_rank: usize,
    pub frame: PairFrame,
    pub lift: SeriesMatrix,
    /// Empty for methods that do not go through the Cramer construction.
    pub columns: Vec<ColumnData>,
    pub method: LiftMethod,
}

/// Outcome of re-checking a certificate from scratch.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateCheck {
    pub lift: LiftCheck,
    /// Indices of frame columns whose row combination is not identically zero.
    pub nonvanishing_relations: Vec<usize>,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.lift.passed() && self.nonvanishing_relations.is_empty()
    }
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.lift.passed() {
            return write!(f, "{}", self.lift);
        }
        if let Some(k) = self.nonvanishing_relations.first() {
            return write!(f, "relation {} does not vanish", k + 1);
        }
        write!(f, "{}; every relation vanishes", self.lift)
    }
}

/// True if `Σ_i weights_i · row_i(m)` is identically zero.
pub fn relation_vanishes(m: &SeriesMatrix, weights: &[GenPoly]) -> Result<bool> {
    let w: Vec<GenFrac> = weights.iter().cloned().map(GenFrac::from_poly).collect();
    Ok(m.row_combination(&w)?.iter().all(GenFrac::is_zero))
}

impl LiftCertificate {
    /// Degree match, rank bound and both relations, all by exact arithmetic.
    pub fn check(&self) -> Result<CertificateCheck> {
        let lift = verify_lift(&self.lift, &self.b, self.target_rank)?;
        let mut bad = Vec::new();
        if lift.shape_ok {
            for (k, col) in [&self.frame.first, &self.frame.second].into_iter().enumerate() {
                if col.len() != self.lift.rows() || !relation_vanishes(&self.lift, col)? {
                    bad.push(k);
                }
            }
        }
        Ok(CertificateCheck { lift, nonvanishing_relations: bad })
    }

    /// Certificate for `scale(b, row_offsets, col_offsets)`: rows and columns of
    /// the lift are multiplied by the corresponding monomials.
    pub fn transported(&self, row_offsets: &[Rational], col_offsets: &[Rational]) -> Result<LiftCertificate> {
        let b = self.b.scale(row_offsets, col_offsets)?;
        let lift = self.lift.shift_exponents(row_offsets, col_offsets);
        let neg: Vec<Rational> = row_offsets.iter().map(|r| -r).collect();
        let frame = shift_frame(&self.frame, &neg)?;
        let columns = recompute_thetas(&self.columns, &frame, &b);
        Ok(LiftCertificate { b, field: self.field, target_rank: self.target_rank, frame, lift, columns, method: self.method })
    }
}

fn shift_frame(frame: &PairFrame, by: &[Rational]) -> Result<PairFrame> {
    let shift = |col: &[GenPoly]| col.iter().zip(by).map(|(p, e)| p.shift(e)).collect();
    PairFrame::new(frame.field, shift(&frame.first), shift(&frame.second))
}

fn column_theta(frame_col: &[GenPoly], b: &TropMatrix, j: usize) -> Rational {
    (0..b.rows())
        .map(|i| frame_col[i].degree().add_rational(b.get(i, j)))
        .min()
        .and_then(|m| m.finite().cloned())
        .unwrap_or_else(Rational::zero)
}

fn recompute_thetas(columns: &[ColumnData], frame: &PairFrame, b: &TropMatrix) -> Vec<ColumnData> {
    columns
        .iter()
        .enumerate()
        .map(|(j, c)| ColumnData {
            theta1: column_theta(&frame.first, b, j),
            theta2: column_theta(&frame.second, b, j),
            ..c.clone()
        })
        .collect()
}

/// Bookkeeping for row/column permutations and tropical scalings applied to
/// an input matrix, so that a certificate for the working matrix can be
/// pulled back to the input.
///
/// The working matrix is `W[i][j] = B[rp_i][cp_j] + R[rp_i] + C[cp_j]`,
/// offsets indexed by input rows and columns.
#[derive(Debug, Clone)]
pub(crate) struct Transport {
    input: TropMatrix,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    row_off: Vec<Rational>,
    col_off: Vec<Rational>,
    working: TropMatrix,
}

impl Transport {
    pub fn new(input: &TropMatrix) -> Self {
        Transport {
            input: input.clone(),
            row_perm: (0..input.rows()).collect(),
            col_perm: (0..input.cols()).collect(),
            row_off: vec![Rational::zero(); input.rows()],
            col_off: vec![Rational::zero(); input.cols()],
            working: input.clone(),
        }
    }

    pub fn working(&self) -> &TropMatrix {
        &self.working
    }

    fn refresh(&mut self) {
        let (rp, cp) = (&self.row_perm, &self.col_perm);
        self.working = TropMatrix::from_fn(self.input.rows(), self.input.cols(), |i, j| {
            self.input.get(rp[i], cp[j]) + &self.row_off[rp[i]] + &self.col_off[cp[j]]
        });
    }

    /// Adds `row[i]` to working row `i` and `col[j]` to working column `j`.
    pub fn shift(&mut self, row: &[Rational], col: &[Rational]) {
        for (i, d) in row.iter().enumerate() {
            self.row_off[self.row_perm[i]] += d;
        }
        for (j, d) in col.iter().enumerate() {
            self.col_off[self.col_perm[j]] += d;
        }
        self.refresh();
    }

    /// New working row `i` is old working row `perm[i]`.
    pub fn permute_rows(&mut self, perm: &[usize]) {
        self.row_perm = perm.iter().map(|&p| self.row_perm[p]).collect();
        self.refresh();
    }

    pub fn permute_cols(&mut self, perm: &[usize]) {
        self.col_perm = perm.iter().map(|&p| self.col_perm[p]).collect();
        self.refresh();
    }

    /// Turns a certificate of the working matrix into one of the input.
    pub fn pull_back(&self, cert: &LiftCertificate) -> Result<LiftCertificate> {
        if cert.b != self.working {
            return Err(Error::Invariant("certificate does not match the working matrix".into()));
        }
        let (m, n) = (self.input.rows(), self.input.cols());
        let field = cert.field;
        let mut lift = SeriesMatrix::zeros(field, m, n);
        let one = field.one();
        for i in 0..m {
            for j in 0..n {
                let (oi, oj) = (self.row_perm[i], self.col_perm[j]);
                let e = -(&self.row_off[oi] + &self.col_off[oj]);
                lift.set(oi, oj, cert.lift.get(i, j).mul_monomial(&one, &e));
            }
        }
        let mut first = vec![GenPoly::zero(field); m];
        let mut second = vec![GenPoly::zero(field); m];
        for i in 0..m {
            let oi = self.row_perm[i];
            first[oi] = cert.frame.first[i].shift(&self.row_off[oi]);
            second[oi] = cert.frame.second[i].shift(&self.row_off[oi]);
        }
        let frame = PairFrame::new(field, first, second)?;
        let mut columns = vec![None; cert.columns.len()];
        for (j, c) in cert.columns.iter().enumerate() {
            let map = |i: usize| self.row_perm[i];
            columns[self.col_perm[j]] = Some(ColumnData {
                split: (map(c.split.0), map(c.split.1)),
                triple: c.triple.iter().map(|&i| map(i)).collect(),
                ..c.clone()
            });
        }
        let columns: Vec<ColumnData> = columns.into_iter().flatten().collect();
        let columns = recompute_thetas(&columns, &frame, &self.input);
        Ok(LiftCertificate {
            b: self.input.clone(),
            field,
            target_rank: cert.target_rank,
            frame,
            lift,
            columns,
            method: cert.method,
        })
    }
}
