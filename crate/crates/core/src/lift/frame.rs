use crate::error::{Error, Result};
use crate::hahn::{GenFrac, GenPoly, SeriesMatrix};
use crate::scalars::{ExtRational, FieldElem, FieldSpec};

/// Two coefficient columns `A^(1), A^(2)` whose row combinations annihilate a lift.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFrame {
    pub field: FieldSpec,
    pub first: Vec<GenPoly>,
    pub second: Vec<GenPoly>,
}

impl PairFrame {
    pub fn new(field: FieldSpec, first: Vec<GenPoly>, second: Vec<GenPoly>) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Domain("frame columns of different lengths".into()));
        }
        if first.iter().chain(&second).any(|p| p.field() != field) {
            return Err(Error::Domain(format!("frame entries not over {field}")));
        }
        Ok(PairFrame { field, first, second })
    }

    pub fn rows(&self) -> usize {
        self.first.len()
    }

    pub fn entry(&self, i: usize, col: usize) -> &GenPoly {
        if col == 0 {
            &self.first[i]
        } else {
            &self.second[i]
        }
    }

    pub fn column_degrees(&self, col: usize) -> Vec<ExtRational> {
        (0..self.rows()).map(|i| self.entry(i, col).degree()).collect()
    }

    /// `det A[p, q] = a_p1 a_q2 − a_q1 a_p2`.
    pub fn minor(&self, p: usize, q: usize) -> GenPoly {
        &(&self.first[p] * &self.second[q]) - &(&self.first[q] * &self.second[p])
    }

    pub fn as_matrix(&self) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.field, self.rows(), 2, |i, j| GenFrac::from_poly(self.entry(i, j).clone()))
    }

    pub fn columns(&self) -> Vec<Vec<GenPoly>> {
        vec![self.first.clone(), self.second.clone()]
    }
}

/// Result of checking the two-column frame hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremiseReport {
    pub rank: usize,
    /// Pairs `(p, q)`, `p < q`, whose 2×2 minor loses its expected degree.
    pub failing_pairs: Vec<(usize, usize)>,
}

impl PremiseReport {
    pub fn holds(&self) -> bool {
        self.rank == 2 && self.failing_pairs.is_empty()
    }
}

/// Checks `rank A = 2` and, for every pair of rows, that the leading terms of
/// `a_p1 a_q2` and `a_q1 a_p2` do not cancel:
/// `deg(a_p1 a_q2 − a_q1 a_p2) = min(deg a_p1 + deg a_q2, deg a_q1 + deg a_p2)`.
pub fn check_pair_premise(frame: &PairFrame) -> Result<PremiseReport> {
    let rank = frame.as_matrix().rank()?;
    let mut failing = Vec::new();
    for p in 0..frame.rows() {
        for q in p + 1..frame.rows() {
            let expected = std::cmp::min(
                frame.first[p].degree().add(&frame.second[q].degree()),
                frame.first[q].degree().add(&frame.second[p].degree()),
            );
            if frame.minor(p, q).degree() != expected {
                failing.push((p, q));
            }
        }
    }
    Ok(PremiseReport { rank, failing_pairs: failing })
}

fn capacity_gate(field: FieldSpec) -> Result<()> {
    if !field.has_at_least(4) {
        return Err(Error::Capacity {
            field: field.to_string(),
            reason: "the construction needs at least four elements".into(),
        });
    }
    Ok(())
}

/// A unit `ξ` with `deg(ξ s_i1 + s_i2) = min(deg s_i1, deg s_i2)` for both rows of `s`.
///
/// With `σ_ij` the leading coefficient of `s_ij` (1 for a zero entry), any
/// `ξ ∉ {0, −σ_12/σ_11, −σ_22/σ_21}` works; the first such unit in canonical
/// order is returned.
pub fn choose_xi(s: &[[GenPoly; 2]; 2], field: FieldSpec) -> Result<FieldElem> {
    capacity_gate(field)?;
    let sigma = |p: &GenPoly| p.leading_coeff().cloned().unwrap_or_else(|| field.one());
    let mut forbidden = vec![field.zero()];
    for row in s {
        let ratio = sigma(&row[1]).div(&sigma(&row[0]))?.neg();
        if !forbidden.contains(&ratio) {
            forbidden.push(ratio);
        }
    }
    field.pick_excluding(&forbidden)
}

pub(crate) fn require_capacity(field: FieldSpec) -> Result<()> {
    capacity_gate(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    fn constant_frame(f: FieldSpec, first: &[i64], second: &[i64]) -> PairFrame {
        let col = |v: &[i64]| v.iter().map(|&c| GenPoly::constant(f.from_i64(c))).collect();
        PairFrame::new(f, col(first), col(second)).unwrap()
    }

    #[test]
    fn three_zeros_frame_satisfies_the_premise() {
        let f5 = FieldSpec::Fp(5);
        let frame = constant_frame(f5, &[1, 1, 1, 1, 0], &[1, 2, 3, 0, 1]);
        let r = check_pair_premise(&frame).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn eta_equal_to_one_breaks_the_premise() {
        let f5 = FieldSpec::Fp(5);
        let frame = constant_frame(f5, &[1, 1, 1, 1, 0], &[1, 1, 3, 0, 1]);
        let r = check_pair_premise(&frame).unwrap();
        assert!(!r.holds());
        assert_eq!(r.failing_pairs, vec![(0, 1)]);
    }

    #[test]
    fn proportional_columns_have_rank_one() {
        let q = FieldSpec::Q;
        let frame = constant_frame(q, &[1, 2, 3, 4, 5], &[2, 4, 6, 8, 10]);
        let r = check_pair_premise(&frame).unwrap();
        assert_eq!(r.rank, 1);
        assert!(!r.holds());
    }

    #[test]
    fn xi_for_all_ones() {
        let f5 = FieldSpec::Fp(5);
        let one = GenPoly::one(f5);
        let s = [[one.clone(), one.clone()], [one.clone(), one.clone()]];
        let xi = choose_xi(&s, f5).unwrap();
        assert_eq!(xi, f5.one());
        let sum = &one.scale(&xi) + &one;
        assert_eq!(sum.degree(), ExtRational::Finite(Rational::from_integer(0.into())));
    }

    #[test]
    fn xi_with_zero_entries() {
        let g = FieldSpec::Gf4;
        let t = GenPoly::t_pow(g, int(1));
        let s = [[GenPoly::zero(g), t.clone()], [t.clone(), GenPoly::zero(g)]];
        let xi = choose_xi(&s, g).unwrap();
        for row in &s {
            let v = &row[0].scale(&xi) + &row[1];
            assert_eq!(v.degree(), std::cmp::min(row[0].degree(), row[1].degree()));
        }
    }

    #[test]
    fn xi_over_small_fields_is_a_capacity_error() {
        let f3 = FieldSpec::Fp(3);
        let one = GenPoly::one(f3);
        let two = GenPoly::constant(f3.from_i64(2));
        // ratios −1 and −2 exclude every unit of F3
        let s = [[one.clone(), one.clone()], [one.clone(), two]];
        assert!(matches!(choose_xi(&s, f3), Err(Error::Capacity { .. })));
    }
}
