use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalars::{format_rational, int, Rational};

/// A dense `rows × cols` matrix of exact rationals, read in the min-plus semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(TropMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        TropMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::Domain("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.as_ref().iter().map(|&x| int(x))).collect();
        Ok(TropMatrix { rows: rows.len(), cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        TropMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> TropMatrix {
        TropMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The submatrix on the given row and column indices (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> TropMatrix {
        TropMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> TropMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// `b'_{ij} = b_{ij} + row_offsets_i + col_offsets_j`.
    pub fn scale(&self, row_offsets: &[Rational], col_offsets: &[Rational]) -> Result<TropMatrix> {
        if row_offsets.len() != self.rows || col_offsets.len() != self.cols {
            return Err(Error::Domain(format!(
                "offsets of length {}/{} for a {}x{} matrix",
                row_offsets.len(),
                col_offsets.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(TropMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + &row_offsets[i] + &col_offsets[j]
        }))
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> TropMatrix {
        TropMatrix::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> TropMatrix {
        TropMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]).clone())
    }

    pub fn row_minima(&self) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().min().cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn column_minima(&self) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).min().cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Integer image of the matrix after multiplying by the least common
    /// denominator. Positive scaling preserves every min-plus comparison.
    pub(crate) fn integer_grid(&self) -> ScaledGrid {
        let mut den = BigInt::one();
        for e in &self.entries {
            den = den.lcm(e.denom());
        }
        let big: Vec<BigInt> = self.entries.iter().map(|e| e.numer() * (&den / e.denom())).collect();
        // headroom so that sums of up to a few hundred entries stay in range
        let limit = BigInt::from(1i64 << 52);
        if big.iter().all(|x| x.abs() < limit) {
            let small = big.iter().map(|x| x.to_i64().unwrap()).collect();
            ScaledGrid::Small(IntGrid { rows: self.rows, cols: self.cols, data: small }, den)
        } else {
            ScaledGrid::Big(IntGrid { rows: self.rows, cols: self.cols, data: big }, den)
        }
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact integer arithmetic used by the combinatorial kernels.
pub(crate) trait Weight:
    Clone + Ord + Zero + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> + fmt::Debug + Send + Sync
{
    fn to_rational(&self, den: &BigInt) -> Rational;
}

impl Weight for i64 {
    fn to_rational(&self, den: &BigInt) -> Rational {
        Rational::new(BigInt::from(*self), den.clone())
    }
}

impl Weight for BigInt {
    fn to_rational(&self, den: &BigInt) -> Rational {
        Rational::new(self.clone(), den.clone())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct IntGrid<W> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<W>,
}

impl<W> IntGrid<W> {
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &W {
        &self.data[i * self.cols + j]
    }
}

/// Integer grid plus the common denominator it was scaled by.
pub(crate) enum ScaledGrid {
    Small(IntGrid<i64>, BigInt),
    Big(IntGrid<BigInt>, BigInt),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn scale_with_zero_offsets_is_identity() {
        let b = TropMatrix::from_ints(&[[1, 2], [3, 4]]).unwrap();
        let z = vec![Rational::zero(); 2];
        assert_eq!(b.scale(&z, &z).unwrap(), b);
        assert!(b.scale(&z[..1], &z).is_err());
    }

    #[test]
    fn subtracting_row_minima_puts_a_zero_in_every_row() {
        let b = TropMatrix::from_ints(&[[3, 5, 4], [7, 2, 9]]).unwrap();
        let neg: Vec<Rational> = b.row_minima().into_iter().map(|m| -m).collect();
        let s = b.scale(&neg, &vec![Rational::zero(); 3]).unwrap();
        for i in 0..2 {
            assert!(s.row(i).iter().any(|x| x.is_zero()));
        }
    }

    #[test]
    fn integer_grid_clears_denominators() {
        let b = TropMatrix::new(1, 3, vec![rat(1, 2), rat(1, 3), int(2)]).unwrap();
        match b.integer_grid() {
            ScaledGrid::Small(g, d) => {
                assert_eq!(d, BigInt::from(6));
                assert_eq!(g.data, vec![3, 2, 12]);
            }
            ScaledGrid::Big(..) => panic!("small entries expected"),
        }
    }
}
