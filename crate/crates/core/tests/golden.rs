//! Hand-computed values.

use troprank::golden::{matrix_b, matrix_d};
use troprank::hahn::{GenFrac, GenPoly, SeriesMatrix};
use troprank::scalars::{int, rat, ExtRational, FieldSpec};
use troprank::tropical::{is_trop_singular, theta, trop_perm, trop_rank, TropMatrix};

fn m(rows: &[&[i64]]) -> TropMatrix {
    TropMatrix::from_ints(rows).unwrap()
}

#[test]
fn permanents_of_b_and_d() {
    // Row 5 must take column 5; the rest avoid the 1s on the diagonal:
    // 24 - 18 + 6 - 1 = 11 derangement-like choices for B, 24 - 12 + 2 = 14 for D.
    let pb = trop_perm(&matrix_b()).unwrap();
    assert_eq!((pb.value.clone(), pb.achiever_count()), (int(0), 11));
    let pd = trop_perm(&matrix_d()).unwrap();
    assert_eq!((pd.value.clone(), pd.achiever_count()), (int(0), 14));
}

#[test]
fn two_by_two_singularity() {
    assert!(is_trop_singular(&m(&[&[0, 0], &[0, 0]])).unwrap());
    assert!(!is_trop_singular(&m(&[&[0, 1], &[1, 0]])).unwrap());
    assert!(is_trop_singular(&m(&[&[1, 2], &[3, 4]])).unwrap());
}

#[test]
fn small_ranks() {
    assert_eq!(trop_rank(&TropMatrix::zeros(5, 7)).unwrap(), 1);
    let outer = TropMatrix::from_fn(4, 6, |i, j| int(3 * i as i64 - j as i64));
    assert_eq!(trop_rank(&outer).unwrap(), 1);
    let diag = TropMatrix::from_fn(5, 5, |i, j| int(if i == j { 0 } else { 10 }));
    assert_eq!(trop_rank(&diag).unwrap(), 5);
    assert_eq!(trop_rank(&m(&[&[0, 1], &[1, 0], &[5, 5]])).unwrap(), 2);
}

#[test]
fn theta_set() {
    let lambda = [ExtRational::Finite(int(0)), ExtRational::Finite(int(1)), ExtRational::Infinity];
    assert_eq!(theta(&lambda, &[int(2), int(1), int(0)]).unwrap(), vec![0, 1]);
    assert_eq!(theta(&lambda, &[int(0), int(1), int(0)]).unwrap(), vec![0]);
}

#[test]
fn series_products() {
    let q = FieldSpec::Q;
    let one_plus_t = GenPoly::from_terms(q, [(int(0), q.one()), (int(1), q.one())]).unwrap();
    let one_minus_t = GenPoly::from_terms(q, [(int(0), q.one()), (int(1), q.from_i64(-1))]).unwrap();
    let want = GenPoly::from_terms(q, [(int(0), q.one()), (int(2), q.from_i64(-1))]).unwrap();
    assert_eq!(one_plus_t.checked_mul(&one_minus_t).unwrap(), want);

    let f2 = FieldSpec::Fp(2);
    let s = GenPoly::from_terms(f2, [(int(0), f2.one()), (rat(1, 2), f2.one())]).unwrap();
    let frob = GenPoly::from_terms(f2, [(int(0), f2.one()), (int(1), f2.one())]).unwrap();
    assert_eq!(s.checked_mul(&s).unwrap(), frob);
}

#[test]
fn determinants() {
    let q = FieldSpec::Q;
    assert!(SeriesMatrix::monomial_lift(q, &TropMatrix::zeros(2, 2)).det().unwrap().is_zero());
    let a = SeriesMatrix::monomial_lift(q, &m(&[&[0, 1], &[1, 0]]));
    // 1 - t^2
    let d = a.det().unwrap();
    assert_eq!(d.degree(), ExtRational::Finite(int(0)));
    let want = GenFrac::from_poly(GenPoly::from_terms(q, [(int(0), q.one()), (int(2), q.from_i64(-1))]).unwrap());
    assert_eq!(d, want);
}
