//! Difference constraints `x_u − x_v ≤ c` over a handful of variables.
//!
//! [`Dbm`] keeps the all-pairs closure of the constraint graph so that a new
//! constraint is rejected exactly when it closes a negative cycle. The
//! standalone [`bellman_ford`] solves a full system in one pass and serves as
//! an independent check of the incremental closure.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalars::Rational;
use crate::tropical::matrix::Weight;

/// Closed difference-bound matrix: `bound[u][v]` is the tightest known `c`
/// with `x_u − x_v ≤ c`, `None` meaning unconstrained.
#[derive(Debug, Clone)]
pub(crate) struct Dbm<W> {
    n: usize,
    bound: Vec<Option<W>>,
}

impl<W: Weight> Dbm<W> {
    pub fn new(n: usize) -> Self {
        let mut bound = vec![None; n * n];
        for i in 0..n {
            bound[i * n + i] = Some(W::zero());
        }
        Dbm { n, bound }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> Option<&W> {
        self.bound[u * self.n + v].as_ref()
    }

    /// Adds `x_u − x_v ≤ c`; returns `false` (leaving `self` unusable) if
    /// the system becomes infeasible.
    pub fn add(&mut self, u: usize, v: usize, c: W) -> bool {
        if let Some(back) = self.get(v, u) {
            if c.clone() + back.clone() < W::zero() {
                return false;
            }
        }
        if let Some(cur) = self.get(u, v) {
            if *cur <= c {
                return true;
            }
        }
        let n = self.n;
        // in-place is safe: entries in row v and column u cannot shrink here
        for i in 0..n {
            let Some(iu) = self.get(i, u).cloned() else { continue };
            let left = iu + c.clone();
            for j in 0..n {
                let Some(vj) = self.get(v, j) else { continue };
                let cand = left.clone() + vj.clone();
                let slot = &mut self.bound[i * n + j];
                if slot.as_ref().map_or(true, |cur| cand < *cur) {
                    *slot = Some(cand);
                }
            }
        }
        true
    }

    pub fn to_rational(&self, den: &BigInt) -> RatDbm {
        RatDbm { n: self.n, bound: self.bound.iter().map(|b| b.as_ref().map(|w| w.to_rational(den))).collect() }
    }
}

/// Rational closed difference-bound matrix.
#[derive(Debug, Clone)]
pub(crate) struct RatDbm {
    n: usize,
    bound: Vec<Option<Rational>>,
}

impl RatDbm {
    /// Floyd–Warshall closure of a constraint list; `None` on a negative cycle.
    pub fn close(n: usize, constraints: &[(usize, usize, Rational)]) -> Option<RatDbm> {
        let mut bound: Vec<Option<Rational>> = vec![None; n * n];
        for i in 0..n {
            bound[i * n + i] = Some(Rational::zero());
        }
        for (u, v, c) in constraints {
            let slot = &mut bound[u * n + v];
            if slot.as_ref().map_or(true, |cur| c < cur) {
                *slot = Some(c.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = bound[i * n + k].clone() else { continue };
                for j in 0..n {
                    let Some(kj) = bound[k * n + j].clone() else { continue };
                    let cand = &ik + &kj;
                    let slot = &mut bound[i * n + j];
                    if slot.as_ref().map_or(true, |cur| cand < *cur) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        if (0..n).any(|i| bound[i * n + i].as_ref().is_some_and(|d| *d < Rational::zero())) {
            return None;
        }
        Some(RatDbm { n, bound })
    }

    /// A feasible point that keeps every inequality slack where the system allows.
    ///
    /// Variables are fixed in index order, each at the midpoint of the
    /// interval left open by the variables already fixed (or one unit inside a
    /// half-line). Closure guarantees each interval is non-empty.
    pub fn interior_point(&self) -> Vec<Rational> {
        let n = self.n;
        let two = Rational::from_integer(BigInt::from(2));
        let mut x: Vec<Rational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for (j, xj) in x.iter().enumerate() {
                if let Some(d) = &self.bound[j * n + i] {
                    let v = xj - d;
                    if lo.as_ref().map_or(true, |l| v > *l) {
                        lo = Some(v);
                    }
                }
                if let Some(d) = &self.bound[i * n + j] {
                    let v = xj + d;
                    if hi.as_ref().map_or(true, |h| v < *h) {
                        hi = Some(v);
                    }
                }
            }
            let xi = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / &two,
                (Some(l), None) => l + Rational::one(),
                (None, Some(h)) => h - Rational::one(),
                (None, None) => Rational::zero(),
            };
            x.push(xi);
        }
        x
    }
}

/// Bellman–Ford from a virtual source joined to every variable by a 0 edge.
/// Returns the shortest-path potentials, a feasible point, or `None` on a
/// negative cycle.
pub(crate) fn bellman_ford(n: usize, constraints: &[(usize, usize, Rational)]) -> Option<Vec<Rational>> {
    let mut dist = vec![Rational::zero(); n];
    // x_u − x_v ≤ c  is the edge v → u with weight c
    for _ in 0..n {
        let mut changed = false;
        for (u, v, c) in constraints {
            let cand = &dist[*v] + c;
            if cand < dist[*u] {
                dist[*u] = cand;
                changed = true;
            }
        }
        if !changed {
            return Some(dist);
        }
    }
    for (u, v, c) in constraints {
        if &dist[*v] + c < dist[*u] {
            return None;
        }
    }
    Some(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn contradictory_equalities_are_rejected() {
        // x0 − x1 = 1 and x1 − x0 = 1
        let mut d: Dbm<i64> = Dbm::new(2);
        assert!(d.add(0, 1, 1));
        assert!(d.add(1, 0, -1));
        assert!(!d.add(1, 0, -2));
        let sys = vec![(0, 1, int(1)), (1, 0, int(-1)), (1, 0, int(1)), (0, 1, int(-1))];
        assert!(bellman_ford(2, &sys).is_none());
        assert!(RatDbm::close(2, &sys).is_none());
    }

    #[test]
    fn interior_point_is_feasible_and_slack() {
        // 0 ≤ x1 − x0 ≤ 2, x2 − x0 ≥ 1
        let sys = vec![(1, 0, int(2)), (0, 1, int(0)), (0, 2, int(-1))];
        let p = RatDbm::close(3, &sys).unwrap().interior_point();
        for (u, v, c) in &sys {
            assert!(&p[*u] - &p[*v] <= *c);
        }
        assert_eq!(&p[1] - &p[0], int(1));
        assert!(&p[2] - &p[0] > int(1));
    }

    #[test]
    fn incremental_closure_matches_bellman_ford() {
        let sys: Vec<(usize, usize, i64)> = vec![(0, 1, 3), (1, 2, -2), (2, 0, 0), (2, 1, 5), (0, 2, -4)];
        let mut d: Dbm<i64> = Dbm::new(3);
        let mut feasible = true;
        for (u, v, c) in &sys {
            feasible &= d.add(*u, *v, *c);
        }
        let rat_sys: Vec<_> = sys.iter().map(|(u, v, c)| (*u, *v, int(*c))).collect();
        assert_eq!(feasible, bellman_ford(3, &rat_sys).is_some());
    }
}
