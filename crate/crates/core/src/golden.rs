//! The two 5×5 matrices exhibiting different tropical and Kapranov ranks
//! over `F_3` and `F_2`, and the explicit rank-4 lift of `B` over `F_3`.

use crate::hahn::{GenFrac, GenPoly, SeriesMatrix};
use crate::scalars::{int, FieldSpec};
use crate::tropical::TropMatrix;

const B: [[i64; 5]; 5] = [
    [1, 0, 0, 0, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 0, 1],
    [1, 1, 1, 1, 0],
];

const D: [[i64; 5]; 5] = [
    [1, 0, 0, 0, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1],
    [1, 1, 1, 1, 0],
];

/// Tropical rank 3, Kapranov rank 4 over `F_3`.
pub fn matrix_b() -> TropMatrix {
    TropMatrix::from_ints(&B).expect("static shape")
}

/// Tropical rank 3, Kapranov rank 4 over `F_2`.
pub fn matrix_d() -> TropMatrix {
    TropMatrix::from_ints(&D).expect("static shape")
}

pub fn by_name(name: &str) -> Option<TropMatrix> {
    match name {
        "B" => Some(matrix_b()),
        "D" => Some(matrix_d()),
        _ => None,
    }
}

/// Over `F_3`: `a_ij = t^{b_ij}` except `a_42 = a_43 = 2 + 2t` (1-based),
/// so that rows 2, 3 and 4 sum to zero.
pub fn explicit_f3_lift() -> SeriesMatrix {
    let f3 = FieldSpec::Fp(3);
    let b = matrix_b();
    let two_two_t = GenPoly::from_terms(f3, [(int(0), f3.from_i64(2)), (int(1), f3.from_i64(2))]).expect("F3 terms");
    SeriesMatrix::from_fn(f3, 5, 5, |i, j| {
        if i == 3 && (j == 1 || j == 2) {
            GenFrac::from_poly(two_two_t.clone())
        } else {
            GenFrac::monomial(f3.one(), b.get(i, j).clone())
        }
    })
}

/// The relation vector `e_2 + e_3 + e_4` annihilating [`explicit_f3_lift`].
pub fn explicit_f3_relation() -> Vec<GenPoly> {
    let f3 = FieldSpec::Fp(3);
    (0..5).map(|i| if (1..=3).contains(&i) { GenPoly::one(f3) } else { GenPoly::zero(f3) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::GenFrac;

    #[test]
    fn rows_two_three_four_of_the_f3_lift_sum_to_zero() {
        let a = explicit_f3_lift();
        let w: Vec<GenFrac> = explicit_f3_relation().into_iter().map(GenFrac::from_poly).collect();
        assert!(a.row_combination(&w).unwrap().iter().all(GenFrac::is_zero));
    }

    #[test]
    fn d_repeats_row_three() {
        let d = matrix_d();
        assert_eq!(d.row(2), d.row(3));
        assert_eq!(matrix_b().row(3), &[int(0), int(0), int(0), int(0), int(1)]);
        assert_eq!(matrix_b().row(4), &[int(1), int(1), int(1), int(1), int(0)]);
    }
}
