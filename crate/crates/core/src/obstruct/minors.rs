use crate::error::{Error, Result};
use crate::scalars::{FieldElem, FieldSpec, Rational};
use crate::tropical::{combinations, trop_perm_with_cap, TropMatrix, DEFAULT_PERM_CAP};

/// A square submatrix together with its tropical permanent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorInfo {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub perm_value: Rational,
    /// Minimizing permutations, local to the minor: row `rows[i]` meets column `cols[p[i]]`.
    pub achievers: Vec<Vec<usize>>,
}

impl MinorInfo {
    pub fn is_singular(&self) -> bool {
        self.achievers.len() >= 2
    }

    pub fn achiever_count(&self) -> usize {
        self.achievers.len()
    }
}

/// Every `k × k` submatrix of `b`, rows outer and columns inner, both lexicographic.
pub fn singular_minors(b: &TropMatrix, k: usize) -> Result<Vec<MinorInfo>> {
    singular_minors_with_cap(b, k, DEFAULT_PERM_CAP)
}

pub fn singular_minors_with_cap(b: &TropMatrix, k: usize, cap: usize) -> Result<Vec<MinorInfo>> {
    if k > b.rows().min(b.cols()) {
        return Err(Error::Domain(format!("{k}×{k} minors of a {}×{} matrix", b.rows(), b.cols())));
    }
    let col_sets = combinations(b.cols(), k);
    let mut out = Vec::new();
    for rows in combinations(b.rows(), k) {
        for cols in &col_sets {
            let p = trop_perm_with_cap(&b.submatrix(&rows, cols), cap)?;
            out.push(MinorInfo { rows: rows.clone(), cols: cols.clone(), perm_value: p.value, achievers: p.achievers });
        }
    }
    Ok(out)
}

/// A unit leading coefficient for every entry, with the gauge-fixed
/// positions recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    values: Vec<FieldElem>,
    gauge: Vec<bool>,
}

impl Assignment {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, values: Vec<FieldElem>, gauge: Vec<bool>) -> Result<Self> {
        if values.len() != rows * cols || gauge.len() != rows * cols {
            return Err(Error::Domain(format!("assignment of {} values for a {rows}×{cols} grid", values.len())));
        }
        if let Some(v) = values.iter().find(|v| v.is_zero() || v.field() != field) {
            return Err(Error::Domain(format!("assignment value {v} is not a unit of {field}")));
        }
        if values.iter().zip(&gauge).any(|(v, &g)| g && !v.is_one()) {
            return Err(Error::Domain("gauge position not set to 1".into()));
        }
        Ok(Assignment { field, rows, cols, values, gauge })
    }

    /// Every entry 1, no gauge.
    pub fn ones(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Assignment { field, rows, cols, values: vec![field.one(); rows * cols], gauge: vec![false; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.values[i * self.cols + j]
    }

    pub fn is_gauge(&self, i: usize, j: usize) -> bool {
        self.gauge[i * self.cols + j]
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }
}

/// Coefficient of `t^{perm value}` in the determinant of a lift of the minor
/// whose entries have the given leading coefficients.
pub fn first_order_coeff(minor: &MinorInfo, assignment: &Assignment) -> FieldElem {
    let f = assignment.field;
    let mut acc = f.zero();
    for p in &minor.achievers {
        let mut term = f.one();
        for (i, &pi) in p.iter().enumerate() {
            term = term.mul(assignment.get(minor.rows[i], minor.cols[pi]));
        }
        acc = acc.add(&term.signed(crate::tropical::parity(p)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    fn minor_on(b: &TropMatrix, rows: &[usize], cols: &[usize]) -> MinorInfo {
        singular_minors(b, rows.len()).unwrap().into_iter().find(|m| m.rows == rows && m.cols == cols).unwrap()
    }

    #[test]
    fn every_four_minor_of_d_is_singular() {
        let minors = singular_minors(&golden::matrix_d(), 4).unwrap();
        assert_eq!(minors.len(), 25);
        assert!(minors.iter().all(MinorInfo::is_singular));
    }

    #[test]
    fn one_by_one_minors_are_never_singular() {
        let minors = singular_minors(&golden::matrix_b(), 1).unwrap();
        assert_eq!(minors.len(), 25);
        assert!(minors.iter().all(|m| m.achiever_count() == 1));
    }

    #[test]
    fn nonsingular_minor_is_tagged() {
        let b = TropMatrix::from_ints(&[[0, 1], [1, 0]]).unwrap();
        assert!(!singular_minors(&b, 2).unwrap()[0].is_singular());
    }

    #[test]
    fn d_minor_has_nonzero_first_order_term_over_f2() {
        let d = golden::matrix_d();
        let m = minor_on(&d, &[0, 1, 2, 4], &[0, 1, 2, 4]);
        assert_eq!(m.achiever_count(), 3);
        let f2 = FieldSpec::Fp(2);
        assert_eq!(first_order_coeff(&m, &Assignment::ones(f2, 5, 5)), f2.one());
    }

    #[test]
    fn minus_one_entries_annihilate_b_minor_over_f3() {
        let f3 = FieldSpec::Fp(3);
        let m = minor_on(&golden::matrix_b(), &[0, 1, 3, 4], &[0, 1, 3, 4]);
        let local = |g: usize, set: &[usize]| set.iter().position(|&x| x == g);
        let values = (0..25)
            .map(|k| match (local(k / 5, &m.rows), local(k % 5, &m.cols)) {
                (Some(a), Some(b)) if a != b => f3.from_i64(-1),
                _ => f3.one(),
            })
            .collect();
        let a = Assignment::new(f3, 5, 5, values, vec![false; 25]).unwrap();
        assert!(first_order_coeff(&m, &a).is_zero());
        assert!(!first_order_coeff(&m, &Assignment::ones(f3, 5, 5)).is_zero());
    }

    #[test]
    fn assignments_reject_zero_and_broken_gauge() {
        let f3 = FieldSpec::Fp(3);
        assert!(Assignment::new(f3, 1, 1, vec![f3.zero()], vec![false]).is_err());
        assert!(Assignment::new(f3, 1, 1, vec![f3.from_i64(2)], vec![true]).is_err());
        assert!(Assignment::new(f3, 1, 2, vec![f3.one()], vec![false]).is_err());
    }
}
