//! The two-relation lift: given a frame `A` with no leading-term cancellation
//! in its 2×2 minors, every column of `B` whose Θ-sets with respect to both
//! frame columns are large enough can be lifted so that both
//! `Σ a_i1 C_(i)` and `Σ a_i2 C_(i)` vanish.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hahn::{mono, GenFrac, GenPoly, SeriesMatrix};
use crate::lift::certificate::{relation_vanishes, ColumnData, LiftCertificate, LiftMethod};
use crate::lift::frame::{check_pair_premise, choose_xi, require_capacity, PairFrame};
use crate::scalars::{ExtRational, FieldElem, FieldSpec, Rational};
use crate::tropical::{theta, TropMatrix};

/// Why a column cannot be lifted with a given frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnViolation {
    pub column: usize,
    pub theta1: Vec<usize>,
    pub theta2: Vec<usize>,
}

/// Θ-sets of every column with respect to both frame columns.
pub fn frame_thetas(frame: &PairFrame, b: &TropMatrix) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let d1 = frame.column_degrees(0);
    let d2 = frame.column_degrees(1);
    (0..b.cols()).map(|j| Ok((theta(&d1, &b.column(j))?, theta(&d2, &b.column(j))?))).collect()
}

/// Columns violating `|Θ1| ≥ 2`, `|Θ2| ≥ 2`, `|Θ1 ∪ Θ2| ≥ 3`.
pub fn column_violations(frame: &PairFrame, b: &TropMatrix) -> Result<Vec<ColumnViolation>> {
    let mut out = Vec::new();
    for (j, (t1, t2)) in frame_thetas(frame, b)?.into_iter().enumerate() {
        let union = t1.len() + t2.iter().filter(|i| !t1.contains(i)).count();
        if t1.len() < 2 || t2.len() < 2 || union < 3 {
            out.push(ColumnViolation { column: j, theta1: t1, theta2: t2 });
        }
    }
    Ok(out)
}

fn find_split(m: usize, t1: &[usize], t2: &[usize]) -> Option<(usize, usize, Vec<usize>)> {
    for i1 in 0..m {
        for i2 in 0..m {
            if i1 == i2 || !t1.contains(&i1) || !t2.contains(&i2) {
                continue;
            }
            let rest: Vec<usize> = (0..m).filter(|&i| i != i1 && i != i2).collect();
            if rest.iter().any(|i| t1.contains(i)) && rest.iter().any(|i| t2.contains(i)) {
                return Some((i1, i2, rest));
            }
        }
    }
    None
}

/// Units `ξ_ι` over `rest` such that `Σ ξ_ι u_ι` and `Σ ξ_ι w_ι` both keep
/// the minimum degree of their summands.
fn combine(u: &[GenPoly], w: &[GenPoly], field: FieldSpec) -> Result<Vec<FieldElem>> {
    let k = u.len();
    let mut xi = vec![field.one(); k];
    if k == 1 {
        return Ok(xi);
    }
    let s = [[u[0].clone(), u[1].clone()], [w[0].clone(), w[1].clone()]];
    xi[0] = choose_xi(&s, field)?;
    let mut acc_u = &u[0].scale(&xi[0]) + &u[1];
    let mut acc_w = &w[0].scale(&xi[0]) + &w[1];
    for l in 2..k {
        let s = [[u[l].clone(), acc_u.clone()], [w[l].clone(), acc_w.clone()]];
        xi[l] = choose_xi(&s, field)?;
        acc_u = &u[l].scale(&xi[l]) + &acc_u;
        acc_w = &w[l].scale(&xi[l]) + &acc_w;
    }
    Ok(xi)
}

fn weighted_sum(terms: impl Iterator<Item = GenPoly>, field: FieldSpec) -> GenPoly {
    terms.fold(GenPoly::zero(field), |acc, p| &acc + &p)
}

fn lift_column(
    frame: &PairFrame,
    b: &TropMatrix,
    j: usize,
    t1: &[usize],
    t2: &[usize],
) -> Result<(Vec<GenFrac>, ColumnData)> {
    let field = frame.field;
    let m = frame.rows();
    let (i1, i2, rest) = find_split(m, t1, t2)
        .ok_or_else(|| Error::Invariant(format!("column {j}: no index split despite the union condition")))?;
    let bj: Vec<Rational> = b.column(j);
    let theta1 = frame.column_degrees(0)[t1[0]].add_rational(&bj[t1[0]]);
    let theta2 = frame.column_degrees(1)[t2[0]].add_rational(&bj[t2[0]]);
    let target = theta1.add(&theta2);

    let u: Vec<GenPoly> = rest.iter().map(|&l| frame.minor(i1, l).shift(&(&bj[i1] + &bj[l]))).collect();
    let w: Vec<GenPoly> = rest.iter().map(|&l| frame.minor(i2, l).shift(&(&bj[i2] + &bj[l]))).collect();
    let xi = combine(&u, &w, field)?;
    let su = weighted_sum(u.iter().zip(&xi).map(|(p, x)| p.scale(x)), field);
    let sw = weighted_sum(w.iter().zip(&xi).map(|(p, x)| p.scale(x)), field);
    if su.degree() != target || sw.degree() != target {
        return Err(Error::Invariant(format!("column {j}: combined minors lost degree {target}")));
    }

    let rhs = |col: usize| {
        weighted_sum(rest.iter().zip(&xi).map(|(&l, x)| frame.entry(l, col).mul_monomial(x, &bj[l])), field)
    };
    let (r1, r2) = (rhs(0), rhs(1));
    let a = |i: usize, c: usize| frame.entry(i, c);
    let det0 = frame.minor(i1, i2).shift(&(&bj[i1] + &bj[i2]));
    let x1 = GenFrac::new((&(&r1 * a(i2, 1)) - &(&r2 * a(i2, 0))).shift(&bj[i2]), det0.clone())?;
    let x2 = GenFrac::new((&(a(i1, 0) * &r2) - &(a(i1, 1) * &r1)).shift(&bj[i1]), det0)?;
    let zero = ExtRational::Finite(Rational::zero());
    if x1.degree() != zero || x2.degree() != zero {
        return Err(Error::Invariant(format!(
            "column {j}: Cramer solution degrees {} and {} are not 0",
            x1.degree(),
            x2.degree()
        )));
    }

    let one = field.one();
    let mut entries = vec![GenFrac::zero(field); m];
    entries[i1] = x1.mul_monomial(&one, &bj[i1]);
    entries[i2] = x2.mul_monomial(&one, &bj[i2]);
    for (&l, x) in rest.iter().zip(&xi) {
        entries[l] = mono(&x.neg(), &bj[l]);
    }
    let fin = |e: ExtRational| e.finite().cloned().unwrap_or_else(Rational::zero);
    let data = ColumnData { split: (i1, i2), triple: rest, xi, theta1: fin(theta1), theta2: fin(theta2) };
    Ok((entries, data))
}

/// Lifts `b` column by column so that both frame relations vanish.
///
/// The lift has rank at most `rows − 2` because the two frame columns are
/// independent relations among its rows.
pub fn build_lift_from_pair(frame: &PairFrame, b: &TropMatrix) -> Result<LiftCertificate> {
    let field = frame.field;
    require_capacity(field)?;
    if frame.rows() != b.rows() || b.rows() < 3 {
        return Err(Error::Domain(format!("frame with {} rows for a {}x{} matrix", frame.rows(), b.rows(), b.cols())));
    }
    let premise = check_pair_premise(frame)?;
    if !premise.holds() {
        return Err(Error::Precondition(format!(
            "frame premise fails: rank {}, cancelling pairs {:?}",
            premise.rank, premise.failing_pairs
        )));
    }
    let bad = column_violations(frame, b)?;
    if !bad.is_empty() {
        let cols: Vec<usize> = bad.iter().map(|v| v.column).collect();
        return Err(Error::Precondition(format!("Θ-set conditions fail in columns {cols:?}")));
    }
    let thetas = frame_thetas(frame, b)?;
    let (m, n) = (b.rows(), b.cols());
    let mut lift = SeriesMatrix::zeros(field, m, n);
    let mut columns = Vec::with_capacity(n);
    for (j, (t1, t2)) in thetas.iter().enumerate() {
        let (entries, data) = lift_column(frame, b, j, t1, t2)?;
        for (i, e) in entries.into_iter().enumerate() {
            lift.set(i, j, e);
        }
        columns.push(data);
    }
    for col in [&frame.first, &frame.second] {
        if !relation_vanishes(&lift, col)? {
            return Err(Error::Invariant("a frame relation does not vanish on the lift".into()));
        }
    }
    Ok(LiftCertificate {
        b: b.clone(),
        field,
        target_rank: m - 2,
        frame: frame.clone(),
        lift,
        columns,
        method: LiftMethod::PairSearch,
    })
}
