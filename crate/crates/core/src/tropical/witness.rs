//! Tropical dependence of rows: Θ-sets, witnesses and the tie-pattern search.
//!
//! A witness for a row set `R` is a vector `λ` (finite exactly on `R`) such
//! that in every column the minimum of `λ_i + b_ij` is attained at least
//! twice. The search fixes, column by column, one pair of rows forced to
//! tie at the minimum; each partial choice is a difference-constraint system
//! and infeasible prefixes are pruned.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::scalars::{ExtRational, Rational};
use crate::tropical::dbm::{bellman_ford, Dbm, RatDbm};
use crate::tropical::matrix::{IntGrid, ScaledGrid, TropMatrix, Weight};

/// A vector over `Q ∪ {+∞}` with at least one finite entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVector(Vec<ExtRational>);

impl ExtVector {
    pub fn new(entries: Vec<ExtRational>) -> Result<Self> {
        if !entries.iter().any(ExtRational::is_finite) {
            return Err(Error::Domain("vector has no finite entry".into()));
        }
        Ok(ExtVector(entries))
    }

    /// `values[k]` placed at `support[k]`, `+∞` elsewhere.
    pub fn padded(len: usize, support: &[usize], values: &[Rational]) -> Result<Self> {
        let mut v = vec![ExtRational::Infinity; len];
        for (&i, x) in support.iter().zip(values) {
            v[i] = ExtRational::Finite(x.clone());
        }
        ExtVector::new(v)
    }

    pub fn entries(&self) -> &[ExtRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &ExtRational {
        &self.0[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_finite()).collect()
    }
}

/// Indices attaining `min_i (lambda_i + col_i)`; `+∞` entries never attain it.
pub fn theta(lambda: &[ExtRational], col: &[Rational]) -> Result<Vec<usize>> {
    if lambda.len() != col.len() {
        return Err(Error::Domain(format!("vector lengths {} and {} differ", lambda.len(), col.len())));
    }
    let sums: Vec<ExtRational> = lambda.iter().zip(col).map(|(l, c)| l.add_rational(c)).collect();
    let min = sums.iter().min().cloned().unwrap_or(ExtRational::Infinity);
    if !min.is_finite() {
        return Err(Error::Domain("all entries of lambda are infinite".into()));
    }
    Ok((0..sums.len()).filter(|&i| sums[i] == min).collect())
}

/// A vector realizing the tropical dependence of the rows in `row_set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub row_set: Vec<usize>,
    pub lambda: ExtVector,
}

impl Witness {
    /// Checks `|Θ(λ, B^(j))| ≥ 2` for every column.
    pub fn verify(&self, b: &TropMatrix) -> bool {
        self.lambda.len() == b.rows()
            && (0..b.cols()).all(|j| theta(self.lambda.entries(), &b.column(j)).is_ok_and(|t| t.len() >= 2))
    }
}

/// One tied pair of rows per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiePattern(pub Vec<(usize, usize)>);

/// All pairs `(a, b)`, `a < b`, of positions `0..k`, lexicographic.
pub(crate) fn local_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            out.push((a, b));
        }
    }
    out
}

/// Constraints forcing local rows `a` and `b` to tie at the column minimum.
/// `w[l]` is the column entry of local row `l`.
pub(crate) fn tie_constraints<W: Weight>(w: &[W], a: usize, b: usize) -> Vec<(usize, usize, W)> {
    let mut out = vec![(a, b, w[b].clone() - w[a].clone()), (b, a, w[a].clone() - w[b].clone())];
    for l in 0..w.len() {
        if l != a && l != b {
            out.push((a, l, w[l].clone() - w[a].clone()));
        }
    }
    out
}

pub(crate) fn column_weights<W: Weight>(grid: &IntGrid<W>, rows: &[usize], j: usize) -> Vec<W> {
    rows.iter().map(|&r| grid.at(r, j).clone()).collect()
}

/// Adds one tie choice to a closure, returning the extended closure if feasible.
pub(crate) fn extend<W: Weight>(dbm: &Dbm<W>, w: &[W], a: usize, b: usize) -> Option<Dbm<W>> {
    let mut next = dbm.clone();
    for (u, v, c) in tie_constraints(w, a, b) {
        if !next.add(u, v, c) {
            return None;
        }
    }
    Some(next)
}

fn dfs<W: Weight>(
    grid: &IntGrid<W>,
    rows: &[usize],
    pairs: &[(usize, usize)],
    col: usize,
    dbm: Dbm<W>,
    chosen: &mut Vec<usize>,
) -> Option<Dbm<W>> {
    if col == grid.cols {
        return Some(dbm);
    }
    let w = column_weights(grid, rows, col);
    for (p, &(a, b)) in pairs.iter().enumerate() {
        if let Some(next) = extend(&dbm, &w, a, b) {
            chosen.push(p);
            if let Some(done) = dfs(grid, rows, pairs, col + 1, next, chosen) {
                return Some(done);
            }
            chosen.pop();
        }
    }
    None
}

fn search<W: Weight>(grid: &IntGrid<W>, den: &BigInt, rows: &[usize], exec: Exec) -> Option<(Vec<Rational>, TiePattern)> {
    let k = rows.len();
    let pairs = local_pairs(k);
    let found = if grid.cols == 0 {
        Some((Dbm::new(k), Vec::new()))
    } else {
        let w0 = column_weights(grid, rows, 0);
        par::find_map_first(exec, 0..pairs.len(), |p| {
            let (a, b) = pairs[p];
            let start = extend(&Dbm::new(k), &w0, a, b)?;
            let mut chosen = vec![p];
            dfs(grid, rows, &pairs, 1, start, &mut chosen).map(|d| (d, chosen))
        })
    };
    let (dbm, chosen) = found?;
    let point = dbm.to_rational(den).interior_point();
    let pattern = TiePattern(chosen.iter().map(|&p| (rows[pairs[p].0], rows[pairs[p].1])).collect());
    Some((point, pattern))
}

fn normalized(m: usize, rows: &[usize], mut values: Vec<Rational>) -> Result<ExtVector> {
    if let Some(min) = values.iter().min().cloned() {
        for v in values.iter_mut() {
            *v -= &min;
        }
    }
    ExtVector::padded(m, rows, &values)
}

fn check_row_set(b: &TropMatrix, row_set: &[usize]) -> Result<Vec<usize>> {
    let mut rows = row_set.to_vec();
    rows.sort_unstable();
    rows.dedup();
    if rows.len() != row_set.len() || rows.iter().any(|&r| r >= b.rows()) {
        return Err(Error::Precondition(format!("invalid row set {row_set:?} for {} rows", b.rows())));
    }
    if rows.len() < 2 {
        return Err(Error::Precondition("a dependence witness needs at least two rows".into()));
    }
    Ok(rows)
}

/// Searches for a witness of tropical dependence of the rows in `row_set`.
///
/// Returns the witness of the lexicographically first feasible tie pattern,
/// normalised so that its least finite entry is 0, or `None` when the rows
/// are tropically independent.
pub fn find_witness(b: &TropMatrix, row_set: &[usize]) -> Result<Option<Witness>> {
    find_witness_with(b, row_set, Exec::default())
}

pub fn find_witness_with(b: &TropMatrix, row_set: &[usize], exec: Exec) -> Result<Option<Witness>> {
    Ok(find_witness_pattern(b, row_set, exec)?.map(|(w, _)| w))
}

/// As [`find_witness`], also returning the tie pattern that produced the witness.
pub fn find_witness_pattern(b: &TropMatrix, row_set: &[usize], exec: Exec) -> Result<Option<(Witness, TiePattern)>> {
    let rows = check_row_set(b, row_set)?;
    let found = match b.integer_grid() {
        ScaledGrid::Small(g, d) => search(&g, &d, &rows, exec),
        ScaledGrid::Big(g, d) => search(&g, &d, &rows, exec),
    };
    let Some((point, pattern)) = found else { return Ok(None) };
    let lambda = normalized(b.rows(), &rows, point)?;
    let w = Witness { row_set: rows, lambda };
    if !w.verify(b) {
        return Err(Error::Invariant("witness search produced a vector without double minima".into()));
    }
    Ok(Some((w, pattern)))
}

/// Rational constraints of a full tie pattern on `rows` (local variable indices).
pub(crate) fn pattern_constraints(
    b: &TropMatrix,
    rows: &[usize],
    pattern: &TiePattern,
) -> Result<Vec<(usize, usize, Rational)>> {
    if pattern.0.len() != b.cols() {
        return Err(Error::Precondition(format!("pattern has {} columns, matrix {}", pattern.0.len(), b.cols())));
    }
    let local = |r: usize| rows.iter().position(|&x| x == r);
    let mut out = Vec::new();
    for (j, &(p, q)) in pattern.0.iter().enumerate() {
        let (Some(a), Some(c)) = (local(p), local(q)) else {
            return Err(Error::Precondition(format!("pattern pair ({p},{q}) outside the row set")));
        };
        if a == c {
            return Err(Error::Precondition(format!("pattern pair ({p},{q}) is not two rows")));
        }
        let w: Vec<Rational> = rows.iter().map(|&r| b.get(r, j).clone()).collect();
        out.extend(tie_constraints_rat(&w, a, c));
    }
    Ok(out)
}

fn tie_constraints_rat(w: &[Rational], a: usize, b: usize) -> Vec<(usize, usize, Rational)> {
    let mut out = vec![(a, b, &w[b] - &w[a]), (b, a, &w[a] - &w[b])];
    for l in 0..w.len() {
        if l != a && l != b {
            out.push((a, l, &w[l] - &w[a]));
        }
    }
    out
}

/// Solves the difference-constraint system of one tie pattern.
///
/// Feasibility is decided by Bellman–Ford; a feasible system yields the
/// interior-leaning point of its closure, normalised to least entry 0.
pub fn witness_feasible(pattern: &TiePattern, b: &TropMatrix, row_set: &[usize]) -> Result<Option<ExtVector>> {
    let rows = check_row_set(b, row_set)?;
    let cons = pattern_constraints(b, &rows, pattern)?;
    if bellman_ford(rows.len(), &cons).is_none() {
        return Ok(None);
    }
    let closed = RatDbm::close(rows.len(), &cons)
        .ok_or_else(|| Error::Invariant("closure disagrees with Bellman-Ford".into()))?;
    Ok(Some(normalized(b.rows(), &rows, closed.interior_point())?))
}

/// Any witness induces a tie pattern: the first two Θ indices of each column.
pub fn pattern_of(w: &Witness, b: &TropMatrix) -> Result<TiePattern> {
    let mut out = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let t = theta(w.lambda.entries(), &b.column(j))?;
        if t.len() < 2 {
            return Err(Error::Domain(format!("column {j} has a unique minimum")));
        }
        out.push((t[0], t[1]));
    }
    Ok(TiePattern(out))
}
