use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Sparse rational matrix in coordinate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatQ {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatQ {
    /// Validates ranges and rejects duplicate positions; zero entries are dropped.
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, Rational)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(entries.len());
        let mut kept = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if r >= rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: r + 1,
                });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: c + 1,
                });
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidArgument(format!("duplicate entry at ({r}, {c})")));
            }
            if !v.is_zero() {
                kept.push((r, c, v));
            }
        }
        kept.sort_by_key(|e| (e.1, e.0));
        Ok(SparseMatQ {
            rows,
            cols,
            entries: kept,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatQ {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatQ {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Rational::one())).collect(),
        }
    }

    /// Builds a matrix from column vectors; each column must be a valid `SparseVec`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut entries = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                debug_assert!(*r < rows);
                if !v.is_zero() {
                    entries.push((*r, c, v.clone()));
                }
            }
        }
        SparseMatQ {
            rows,
            cols: columns.len(),
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v.clone()));
                }
            }
        }
        entries.sort_by_key(|e| (e.1, e.0));
        SparseMatQ {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.1, e.0));
        SparseMatQ {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        for row in &mut out {
            row.sort_by_key(|e| e.0);
        }
        out
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v.clone()));
        }
        for col in &mut out {
            col.sort_by_key(|e| e.0);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, v) in &self.entries {
            if !x[*c].is_zero() {
                out[*r] += v * &x[*c];
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let cols = self.column_vectors();
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (c, xv) in x {
            for (r, v) in &cols[*c] {
                *acc.entry(*r).or_insert_with(Rational::zero) += v * xv;
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn mul(&self, other: &SparseMatQ) -> Result<SparseMatQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let cols: Vec<SparseVec> = other.column_vectors().iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatQ::from_columns(self.rows, &cols))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &SparseMatQ) -> Result<SparseMatQ> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(r, c, v)| (r + self.rows, *c, v.clone())));
        entries.sort_by_key(|e| (e.1, e.0));
        Ok(SparseMatQ {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn content(row: &IntRow) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(row: &mut IntRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn integer_row(v: &[(usize, Rational)]) -> IntRow {
    let mut l = BigInt::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let mut row: IntRow = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&l / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// Returns `a*r - b*p`, made primitive.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Eliminates `pivot_row` (whose entry at `col` is nonzero) from `row`.
fn reduce_by(row: &IntRow, pivot_row: &IntRow, col: usize) -> IntRow {
    let a = entry(pivot_row, col).expect("pivot entry");
    let b = match entry(row, col) {
        Some(b) => b,
        None => return row.clone(),
    };
    let g = a.gcd(b);
    combine(&(a / &g), row, &(b / &g), pivot_row)
}

/// Result of forward elimination: pivot rows in elimination order plus rows
/// left with entries only in the excluded column.
struct Forward {
    pivots: Vec<(usize, IntRow)>,
    leftovers: Vec<IntRow>,
}

/// Fraction-free sparse elimination with Markowitz-style pivot choice.
/// Rows stay primitive integer vectors; `excluded` is never chosen as pivot.
fn forward(rows: Vec<IntRow>, ncols: usize, excluded: Option<usize>) -> Forward {
    let total_cols = ncols + usize::from(excluded.is_some());
    let mut store: Vec<Option<IntRow>> = Vec::with_capacity(rows.len());
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); total_cols];
    let mut by_len: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut leftovers = Vec::new();

    let only_excluded = |r: &IntRow| excluded.is_some() && r.iter().all(|(c, _)| Some(*c) == excluded);

    for row in rows {
        if row.is_empty() {
            continue;
        }
        if only_excluded(&row) {
            leftovers.push(row);
            continue;
        }
        let id = store.len();
        for (c, _) in &row {
            col_rows[*c].insert(id);
        }
        by_len.insert((row.len(), id));
        store.push(Some(row));
    }

    let mut pivots = Vec::new();
    while let Some(&(_, _)) = by_len.iter().next() {
        // Markowitz cost over a few of the shortest rows.
        let mut best: Option<(usize, usize, usize, bool)> = None;
        for &(len, id) in by_len.iter().take(6) {
            let row = store[id].as_ref().unwrap();
            for (c, v) in row {
                if Some(*c) == excluded {
                    continue;
                }
                let cost = (len - 1) * (col_rows[*c].len() - 1);
                let unit = v.abs().is_one();
                let better = match best {
                    None => true,
                    Some((bc, _, _, bu)) => cost < bc || (cost == bc && unit && !bu),
                };
                if better {
                    best = Some((cost, id, *c, unit));
                }
            }
            if matches!(best, Some((0, _, _, true))) {
                break;
            }
        }
        let (_, pid, pcol, _) = best.expect("active row has a pivot candidate");
        let prow = store[pid].take().unwrap();
        by_len.remove(&(prow.len(), pid));
        for (c, _) in &prow {
            col_rows[*c].remove(&pid);
        }
        let targets: Vec<usize> = col_rows[pcol].iter().copied().collect();
        for rid in targets {
            let old = store[rid].take().unwrap();
            by_len.remove(&(old.len(), rid));
            for (c, _) in &old {
                col_rows[*c].remove(&rid);
            }
            let new = reduce_by(&old, &prow, pcol);
            if new.is_empty() {
                continue;
            }
            if only_excluded(&new) {
                leftovers.push(new);
                continue;
            }
            for (c, _) in &new {
                col_rows[*c].insert(rid);
            }
            by_len.insert((new.len(), rid));
            store[rid] = Some(new);
        }
        pivots.push((pcol, prow));
    }
    Forward { pivots, leftovers }
}

/// Back-substitution: afterwards every pivot row has no entries in other pivot columns.
fn back_reduce(pivots: &mut [(usize, IntRow)]) {
    let pivot_index: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, (c, _))| (*c, k)).collect();
    for k in (0..pivots.len()).rev() {
        let own = pivots[k].0;
        loop {
            let hit = pivots[k]
                .1
                .iter()
                .find(|(c, _)| *c != own && pivot_index.contains_key(c))
                .map(|(c, _)| *c);
            let Some(c) = hit else { break };
            let j = pivot_index[&c];
            debug_assert!(j > k);
            let reduced = reduce_by(&pivots[k].1, &pivots[j].1, c);
            pivots[k].1 = reduced;
        }
    }
}

fn to_int_rows(m: &SparseMatQ) -> Vec<IntRow> {
    m.row_vectors().iter().map(|r| integer_row(r)).collect()
}

pub fn rank(m: &SparseMatQ) -> usize {
    forward(to_int_rows(m), m.cols, None).pivots.len()
}

#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    /// Kernel basis in reduced form: vector `k` has a 1 at its own free column
    /// and 0 at every other free column.
    pub kernel: Vec<SparseVec>,
    pub free_columns: Vec<usize>,
}

pub fn rank_kernel(m: &SparseMatQ) -> RankKernel {
    let mut fw = forward(to_int_rows(m), m.cols, None);
    back_reduce(&mut fw.pivots);
    let pivot_cols: BTreeSet<usize> = fw.pivots.iter().map(|(c, _)| *c).collect();
    let free_columns: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut per_free: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for (pc, row) in &fw.pivots {
        let pv = entry(row, *pc).unwrap().clone();
        for (c, v) in row {
            if c != pc {
                per_free
                    .entry(*c)
                    .or_default()
                    .push((*pc, -Rational::new(v.clone(), pv.clone())));
            }
        }
    }
    let kernel = free_columns
        .iter()
        .map(|f| {
            let mut v = per_free.remove(f).unwrap_or_default();
            v.push((*f, Rational::one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    RankKernel {
        rank: fw.pivots.len(),
        kernel,
        free_columns,
    }
}

#[derive(Clone, Debug)]
pub enum Membership {
    /// `m * witness == v`.
    InImage { witness: Vec<Rational> },
    /// `certificate * m == 0` and `certificate . v != 0`.
    NotInImage { certificate: Vec<Rational> },
}

impl Membership {
    pub fn is_in_image(&self) -> bool {
        matches!(self, Membership::InImage { .. })
    }
}

pub fn solve_membership(m: &SparseMatQ, v: &[Rational]) -> Result<Membership> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: v.len(),
        });
    }
    let aug = m.cols;
    let mut rows = m.row_vectors();
    for (r, x) in v.iter().enumerate() {
        if !x.is_zero() {
            rows[r].push((aug, x.clone()));
        }
    }
    let int_rows: Vec<IntRow> = rows.iter().map(|r| integer_row(r)).collect();
    let mut fw = forward(int_rows, m.cols, Some(aug));
    if fw.leftovers.is_empty() {
        back_reduce(&mut fw.pivots);
        let mut witness = vec![Rational::zero(); m.cols];
        for (pc, row) in &fw.pivots {
            if let Some(rhs) = entry(row, aug) {
                witness[*pc] = Rational::new(rhs.clone(), entry(row, *pc).unwrap().clone());
            }
        }
        return Ok(Membership::InImage { witness });
    }
    let left = rank_kernel(&m.transpose());
    let vs: SparseVec = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect();
    for y in left.kernel {
        if !sparse_dot(&y, &vs).is_zero() {
            let mut dense = vec![Rational::zero(); m.rows];
            for (i, x) in y {
                dense[i] = x;
            }
            return Ok(Membership::NotInImage { certificate: dense });
        }
    }
    unreachable!("inconsistent system always has a separating left-kernel vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn dense(rows: &[&[i64]]) -> SparseMatQ {
        SparseMatQ::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|x| rat(*x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_has_full_rank() {
        let rk = rank_kernel(&SparseMatQ::identity(3));
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = dense(&[&[1, 2], &[2, 4]]);
        let rk = rank_kernel(&m);
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel.len(), 1);
        let k = &rk.kernel[0];
        // spanned by (2, -1)
        let x = k.iter().find(|e| e.0 == 0).map(|e| e.1.clone()).unwrap_or_default();
        let y = k.iter().find(|e| e.0 == 1).map(|e| e.1.clone()).unwrap_or_default();
        assert_eq!(x, -rat(2) * &y);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(rank(&SparseMatQ::zero(0, 0)), 0);
        assert_eq!(rank_kernel(&SparseMatQ::zero(2, 3)).kernel.len(), 3);
    }

    #[test]
    fn duplicates_rejected() {
        let e = vec![(0, 0, rat(1)), (0, 0, rat(2))];
        assert!(SparseMatQ::new(1, 1, e).is_err());
        assert!(SparseMatQ::new(1, 1, vec![(1, 0, rat(1))]).is_err());
    }

    #[test]
    fn membership_identity_and_zero() {
        let v = vec![rat(3), rat(-1)];
        match solve_membership(&SparseMatQ::identity(2), &v).unwrap() {
            Membership::InImage { witness } => assert_eq!(witness, v),
            _ => panic!(),
        }
        match solve_membership(&SparseMatQ::zero(2, 2), &v).unwrap() {
            Membership::NotInImage { certificate } => {
                let s: Rational = certificate.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(!s.is_zero());
            }
            _ => panic!(),
        }
        assert!(solve_membership(&SparseMatQ::identity(2), &[rat(1)]).is_err());
    }
}
