use std::fmt;

use crate::error::{Error, Result};
use crate::hahn::{GenFrac, GenPoly};
use crate::scalars::{ExtRational, FieldElem, FieldSpec, Rational};
use crate::tropical::TropMatrix;

/// Dense matrix of [`GenFrac`] entries over one coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<GenFrac>,
}

impl SeriesMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<GenFrac>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::Domain(format!("entry over {} in a matrix over {field}", bad.field())));
        }
        Ok(SeriesMatrix { field, rows, cols, entries })
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GenFrac) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        SeriesMatrix { field, rows, cols, entries }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SeriesMatrix::from_fn(field, rows, cols, |_, _| GenFrac::zero(field))
    }

    /// The lift `a_ij = t^{b_ij}`.
    pub fn monomial_lift(field: FieldSpec, b: &TropMatrix) -> Self {
        SeriesMatrix::from_fn(field, b.rows(), b.cols(), |i, j| GenFrac::monomial(field.one(), b.get(i, j).clone()))
    }

    pub fn from_polys(field: FieldSpec, rows: usize, cols: usize, polys: Vec<GenPoly>) -> Result<Self> {
        SeriesMatrix::new(field, rows, cols, polys.into_iter().map(GenFrac::from_poly).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GenFrac {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GenFrac) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[GenFrac] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[GenFrac] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    pub fn permute_cols(&self, perm: &[usize]) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, perm[j]).clone())
    }

    /// Multiplies entry `(i, j)` by `t^{row_shift_i + col_shift_j}`.
    pub fn shift_exponents(&self, row_shift: &[Rational], col_shift: &[Rational]) -> SeriesMatrix {
        let one = self.field.one();
        SeriesMatrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).mul_monomial(&one, &(&row_shift[i] + &col_shift[j]))
        })
    }

    pub fn scale_row(&self, i: usize, factor: &GenFrac) -> Result<SeriesMatrix> {
        let mut out = self.clone();
        for j in 0..self.cols {
            out.set(i, j, self.get(i, j).checked_mul(factor)?);
        }
        Ok(out)
    }

    /// `Σ_i weights_i · row_i`.
    pub fn row_combination(&self, weights: &[GenFrac]) -> Result<Vec<GenFrac>> {
        if weights.len() != self.rows {
            return Err(Error::Domain(format!("{} weights for {} rows", weights.len(), self.rows)));
        }
        let mut acc = vec![GenFrac::zero(self.field); self.cols];
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                *slot = slot.checked_add(&w.checked_mul(self.get(i, j))?)?;
            }
        }
        Ok(acc)
    }

    /// Entrywise degree; every entry must be nonzero.
    pub fn deg_matrix(&self) -> Result<TropMatrix> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            match e.degree() {
                ExtRational::Finite(d) => out.push(d),
                ExtRational::Infinity => {
                    return Err(Error::Domain(format!(
                        "entry ({}, {}) is zero and has no finite degree",
                        k / self.cols.max(1),
                        k % self.cols.max(1)
                    )))
                }
            }
        }
        TropMatrix::new(self.rows, self.cols, out)
    }

    /// Polynomial matrix with the same rank, obtained by clearing
    /// denominators along rows or along columns (whichever needs fewer
    /// distinct factors). Returns the matrix and the product of the
    /// multipliers used.
    fn cleared(&self) -> Result<(Vec<GenPoly>, GenPoly)> {
        let distinct = |idx: &mut dyn Iterator<Item = &GenFrac>| {
            let mut dens: Vec<GenPoly> = Vec::new();
            for e in idx {
                if !e.is_poly() && !dens.contains(e.den()) {
                    dens.push(e.den().clone());
                }
            }
            dens
        };
        let row_dens: Vec<Vec<GenPoly>> = (0..self.rows).map(|i| distinct(&mut self.row(i).iter())).collect();
        let col_dens: Vec<Vec<GenPoly>> =
            (0..self.cols).map(|j| distinct(&mut (0..self.rows).map(|i| self.get(i, j)))).collect();
        let cost = |d: &Vec<Vec<GenPoly>>| d.iter().map(|v| v.len()).sum::<usize>();
        let by_rows = cost(&row_dens) <= cost(&col_dens);

        let mut total = GenPoly::one(self.field);
        let mut out = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let dens = if by_rows { &row_dens[i] } else { &col_dens[j] };
                let mut v = e.num().clone();
                let mut skipped = e.is_poly();
                for d in dens {
                    if !skipped && d == e.den() {
                        skipped = true;
                        continue;
                    }
                    v = v.checked_mul(d)?;
                }
                out.push(v);
            }
        }
        for dens in if by_rows { &row_dens } else { &col_dens } {
            for d in dens {
                total = total.checked_mul(d)?;
            }
        }
        Ok((out, total))
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> Result<usize> {
        let (grid, _) = self.cleared()?;
        Ok(bareiss(grid, self.rows, self.cols)?.rank)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<GenFrac> {
        if self.rows != self.cols {
            return Err(Error::Domain(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(GenFrac::one(self.field));
        }
        let (grid, total) = self.cleared()?;
        let out = bareiss(grid, self.rows, self.cols)?;
        match out.det {
            Some(d) => GenFrac::new(d, total),
            None => Ok(GenFrac::zero(self.field)),
        }
    }
}

struct Elimination {
    rank: usize,
    det: Option<GenPoly>,
}

/// Fraction-free (Bareiss) elimination with full pivoting on the
/// lowest-degree available entry.
fn bareiss(mut a: Vec<GenPoly>, rows: usize, cols: usize) -> Result<Elimination> {
    let Some(field) = a.first().map(GenPoly::field) else {
        return Ok(Elimination { rank: 0, det: None });
    };
    let mut prev = GenPoly::one(field);
    let mut negative = false;
    let mut k = 0;
    while k < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let e = &a[i * cols + j];
                if e.is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => {
                        let p = &a[pi * cols + pj];
                        (e.degree(), e.len()) < (p.degree(), p.len())
                    }
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            for j in 0..cols {
                a.swap(k * cols + j, pi * cols + j);
            }
            negative = !negative;
        }
        if pj != k {
            for i in 0..rows {
                a.swap(i * cols + k, i * cols + pj);
            }
            negative = !negative;
        }
        let piv = a[k * cols + k].clone();
        for i in k + 1..rows {
            let aik = a[i * cols + k].clone();
            for j in k + 1..cols {
                let v = &(&piv * &a[i * cols + j]) - &(&aik * &a[k * cols + j]);
                a[i * cols + j] = v.exact_div(&prev)?;
            }
            a[i * cols + k] = GenPoly::zero(field);
        }
        prev = piv;
        k += 1;
    }
    let det = (rows == cols && k == rows).then(|| if negative { -&prev } else { prev });
    Ok(Elimination { rank: k, det })
}

/// Outcome of checking a candidate lift against a tropical matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftCheck {
    /// `(row, col, degree found, degree expected)` for every mismatching entry.
    pub degree_mismatches: Vec<(usize, usize, ExtRational, Rational)>,
    pub shape_ok: bool,
    pub rank: usize,
    pub target_rank: usize,
}

impl LiftCheck {
    pub fn degree_ok(&self) -> bool {
        self.shape_ok && self.degree_mismatches.is_empty()
    }

    pub fn rank_ok(&self) -> bool {
        self.rank <= self.target_rank
    }

    pub fn passed(&self) -> bool {
        self.degree_ok() && self.rank_ok()
    }
}

impl fmt::Display for LiftCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.shape_ok {
            return f.write_str("shape mismatch");
        }
        if let Some((i, j, found, want)) = self.degree_mismatches.first() {
            return write!(f, "degree mismatch at ({i}, {j}): found {found}, expected {}", ExtRational::Finite(want.clone()));
        }
        if !self.rank_ok() {
            return write!(f, "rank {} exceeds {}", self.rank, self.target_rank);
        }
        write!(f, "ok: degrees match, rank {} <= {}", self.rank, self.target_rank)
    }
}

/// Checks `deg M = B` entrywise and `rank M ≤ r`; failures are reported, not raised.
pub fn verify_lift(m: &SeriesMatrix, b: &TropMatrix, r: usize) -> Result<LiftCheck> {
    let shape_ok = m.rows() == b.rows() && m.cols() == b.cols();
    let mut mismatches = Vec::new();
    if shape_ok {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let d = m.get(i, j).degree();
                if d != ExtRational::Finite(b.get(i, j).clone()) {
                    mismatches.push((i, j, d, b.get(i, j).clone()));
                }
            }
        }
    }
    Ok(LiftCheck { degree_mismatches: mismatches, shape_ok, rank: m.rank()?, target_rank: r })
}

/// `c · t^e` shorthand used by the constructions.
pub fn mono(c: &FieldElem, e: &Rational) -> GenFrac {
    GenFrac::monomial(c.clone(), e.clone())
}
