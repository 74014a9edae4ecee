//! Seeded generation of 5-row matrices with tropical rank at most 3.
//!
//! Each matrix is the min-plus product of a random 5×3 and a random 3×n
//! integer matrix. Such products have tropical rank at most 3, but the
//! generator does not rely on that: every candidate is filtered by the
//! computed tropical rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalars::int;
use crate::tropical::{trop_rank, TropMatrix};

pub const CORPUS_ROWS: usize = 5;
const INNER: usize = 3;
const MAX_ATTEMPTS: usize = 64;

fn random_grid(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<i64> {
    (0..rows * cols).map(|_| rng.gen_range(0..=bound)).collect()
}

fn min_plus(u: &[i64], v: &[i64], n: usize) -> TropMatrix {
    TropMatrix::from_fn(CORPUS_ROWS, n, |i, j| {
        int((0..INNER).map(|k| u[i * INNER + k] + v[k * n + j]).min().unwrap_or(0))
    })
}

/// One 5×n matrix of tropical rank ≤ 3 with entries in `0..=2·entry_bound`.
pub fn generate(n: usize, seed: u64, entry_bound: i64) -> Result<TropMatrix> {
    if entry_bound < 0 {
        return Err(Error::Domain(format!("negative entry bound {entry_bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let u = random_grid(&mut rng, CORPUS_ROWS, INNER, entry_bound);
        let v = random_grid(&mut rng, INNER, n, entry_bound);
        let b = min_plus(&u, &v, n);
        if trop_rank(&b)? <= 3 {
            return Ok(b);
        }
    }
    Err(Error::Invariant(format!("no rank-3 candidate in {MAX_ATTEMPTS} attempts")))
}

/// A corpus entry: the seed it came from and the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub seed: u64,
    pub matrix: TropMatrix,
}

/// `count` instances, the k-th seeded by `base_seed + k`, with `n` drawn
/// uniformly from `n_range` by the instance's own generator.
pub fn corpus(count: usize, base_seed: u64, n_range: std::ops::RangeInclusive<usize>, entry_bound: i64) -> Result<Vec<Instance>> {
    (0..count as u64)
        .map(|k| {
            let seed = base_seed.wrapping_add(k);
            let n = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(n_range.clone());
            Ok(Instance { seed, matrix: generate(n, seed, entry_bound)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate(5, 1, 5).unwrap(), generate(5, 1, 5).unwrap());
        assert_ne!(generate(5, 1, 5).unwrap(), generate(5, 2, 5).unwrap());
    }

    #[test]
    fn generated_matrices_have_rank_at_most_three() {
        for inst in corpus(20, 7, 3..=8, 5).unwrap() {
            assert_eq!(inst.matrix.rows(), 5);
            assert!((3..=8).contains(&inst.matrix.cols()));
            assert!(trop_rank(&inst.matrix).unwrap() <= 3);
        }
    }

    #[test]
    fn zero_columns() {
        let b = generate(0, 3, 5).unwrap();
        assert_eq!((b.rows(), b.cols()), (5, 0));
    }
}
