#![allow(dead_code)]

use rand::Rng;
use troprank::hahn::{GenFrac, GenPoly, SeriesMatrix};
use troprank::scalars::{int, rat, FieldElem, FieldSpec, Rational};
use troprank::tropical::TropMatrix;

pub const FINITE_FIELDS: [FieldSpec; 4] = [FieldSpec::Fp(2), FieldSpec::Fp(3), FieldSpec::Fp(5), FieldSpec::Gf4];

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, max: i64) -> TropMatrix {
    TropMatrix::from_fn(rows, cols, |_, _| int(rng.gen_range(0..=max)))
}

/// Offsets in halves, between -3 and 3.
pub fn random_offsets(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rat(rng.gen_range(-6..=6), 2)).collect()
}

pub fn random_elem(rng: &mut impl Rng, f: FieldSpec) -> FieldElem {
    match f.cardinality() {
        Some(q) => {
            let k = rng.gen_range(0..q) as usize;
            if k == 0 {
                f.zero()
            } else {
                f.units().unwrap()[k - 1].clone()
            }
        }
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Up to four terms with exponents in halves between -2 and 3.
pub fn random_poly(rng: &mut impl Rng, f: FieldSpec) -> GenPoly {
    let n = rng.gen_range(0..=4);
    let terms: Vec<(Rational, FieldElem)> =
        (0..n).map(|_| (rat(rng.gen_range(-4..=6), 2), random_elem(rng, f))).collect();
    GenPoly::from_terms(f, terms).unwrap()
}

pub fn random_series_matrix(rng: &mut impl Rng, f: FieldSpec, rows: usize, cols: usize) -> SeriesMatrix {
    SeriesMatrix::from_fn(f, rows, cols, |_, _| {
        if rng.gen_bool(0.25) {
            GenFrac::zero(f)
        } else {
            GenFrac::from_poly(random_poly(rng, f))
        }
    })
}

/// Rank as the size of the largest nonvanishing minor, by cofactor expansion.
pub fn rank_by_minors(m: &SeriesMatrix) -> usize {
    let top = m.rows().min(m.cols());
    for k in (1..=top).rev() {
        for rows in troprank::tropical::combinations(m.rows(), k) {
            for cols in troprank::tropical::combinations(m.cols(), k) {
                if !cofactor_det(&m.submatrix(&rows, &cols)).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn cofactor_det(m: &SeriesMatrix) -> GenFrac {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = GenFrac::zero(m.field());
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j).checked_mul(&cofactor_det(&m.submatrix(&rows, &cols))).unwrap();
        acc = if j % 2 == 0 { acc.checked_add(&term) } else { acc.checked_sub(&term) }.unwrap();
    }
    acc
}
