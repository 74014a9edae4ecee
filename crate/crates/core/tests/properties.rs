mod common;

use common::{random_matrix, random_offsets, random_poly, rank_by_minors, random_series_matrix, FINITE_FIELDS};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troprank::corpus::generate;
use troprank::lift::{kapranov_upper, kapranov_upper_with};
use troprank::obstruct::{
    certify_lower_bound_with, first_order_coeff, singular_minors, Assignment, CertifyOptions, Gauge,
};
use troprank::par::Exec;
use troprank::scalars::{FieldSpec, ExtRational};
use troprank::tropical::{find_witness_with, trop_rank};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lift_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Gf4), Just(FieldSpec::Fp(5)), Just(FieldSpec::Fp(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_invariant_under_scaling(seed in any::<u64>(), m in 1usize..=5, n in 1usize..=6) {
        let mut r = rng(seed);
        let b = random_matrix(&mut r, m, n, 4);
        let scaled = b.scale(&random_offsets(&mut r, m), &random_offsets(&mut r, n)).unwrap();
        prop_assert_eq!(trop_rank(&b).unwrap(), trop_rank(&scaled).unwrap());
        prop_assert_eq!(trop_rank(&b).unwrap(), trop_rank(&b.transpose()).unwrap());
    }

    #[test]
    fn witness_exists_iff_rows_dependent(seed in any::<u64>(), m in 2usize..=5, n in 1usize..=6) {
        let b = random_matrix(&mut rng(seed), m, n, 3);
        let rows: Vec<usize> = (0..m).collect();
        let w = find_witness_with(&b, &rows, Exec::Sequential).unwrap();
        prop_assert_eq!(w.is_some(), trop_rank(&b).unwrap() < m);
        if let Some(w) = w {
            prop_assert!(w.verify(&b));
        }
    }

    #[test]
    fn degree_laws(seed in any::<u64>(), k in 0usize..4) {
        let f = FINITE_FIELDS[k];
        let mut r = rng(seed);
        let (p, q) = (random_poly(&mut r, f), random_poly(&mut r, f));
        let prod = p.checked_mul(&q).unwrap();
        prop_assert_eq!(prod.degree(), p.degree().add(&q.degree()));
        let sum = p.checked_add(&q).unwrap();
        prop_assert!(sum.degree() >= p.degree().clone().min(q.degree()));
        if p.degree() != q.degree() {
            prop_assert_eq!(sum.degree(), p.degree().min(q.degree()));
        }
        prop_assert!(p.checked_sub(&p).unwrap().is_zero());
        prop_assert_eq!(p.degree() == ExtRational::Infinity, p.is_zero());
    }

    #[test]
    fn bareiss_rank_matches_minors(seed in any::<u64>(), k in 0usize..4, m in 1usize..=4, n in 1usize..=4) {
        let a = random_series_matrix(&mut rng(seed), FINITE_FIELDS[k], m, n);
        prop_assert_eq!(a.rank().unwrap(), rank_by_minors(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transported_certificates_still_check(seed in any::<u64>(), n in 3usize..=7, f in lift_field()) {
        let b = generate(n, seed, 5).unwrap();
        let cert = kapranov_upper(&b, f).unwrap();
        let mut r = rng(seed ^ 1);
        let moved = cert.transported(&random_offsets(&mut r, 5), &random_offsets(&mut r, n)).unwrap();
        prop_assert!(moved.check().unwrap().passed());
        prop_assert_eq!(moved.lift.deg_matrix().unwrap(), moved.b);
    }

    #[test]
    fn leading_coefficients_of_a_lift_kill_every_first_order_term(seed in any::<u64>(), n in 4usize..=7, f in lift_field()) {
        let b = generate(n, seed, 5).unwrap();
        let lift = kapranov_upper(&b, f).unwrap().lift;
        let values = lift.entries().iter().map(|e| e.leading_coeff().unwrap().clone()).collect();
        let a = Assignment::new(f, 5, n, values, vec![false; 5 * n]).unwrap();
        for minor in singular_minors(&b, 4).unwrap() {
            prop_assert!(first_order_coeff(&minor, &a).is_zero(), "minor {:?}/{:?}", minor.rows, minor.cols);
        }
    }

    #[test]
    fn lifts_agree_across_schedules(seed in any::<u64>(), n in 3usize..=7, f in lift_field()) {
        let b = generate(n, seed, 5).unwrap();
        let seq = kapranov_upper_with(&b, f, Exec::Sequential).unwrap();
        let par = kapranov_upper_with(&b, f, Exec::Parallel).unwrap();
        prop_assert_eq!(seq.method, par.method);
        prop_assert_eq!(seq.lift, par.lift);
    }

    #[test]
    fn verdict_ignores_gauge_and_schedule(seed in any::<u64>(), row in 0usize..5, col in 0usize..5, p in prop_oneof![Just(2u32), Just(3u32)]) {
        let b = random_matrix(&mut rng(seed), 5, 5, 2);
        let f = FieldSpec::Fp(p);
        let base = CertifyOptions { exec: Exec::Sequential, ..CertifyOptions::default() };
        let star = CertifyOptions { gauge: Some(Gauge::star(5, 5, row, col).unwrap()), exec: Exec::Parallel, ..CertifyOptions::default() };
        let a = certify_lower_bound_with(&b, 3, f, &base).unwrap();
        let c = certify_lower_bound_with(&b, 3, f, &star).unwrap();
        prop_assert_eq!(a.verdict, c.verdict);
        let par = certify_lower_bound_with(&b, 3, f, &CertifyOptions { exec: Exec::Parallel, ..CertifyOptions::default() }).unwrap();
        prop_assert_eq!(a.searched_count, par.searched_count);
        prop_assert_eq!(a.witness, par.witness);
    }
}
