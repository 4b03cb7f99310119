use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LieKind {
    Sl,
    Gl,
}

/// Sparse `n x n` matrix as (row, col, value).
pub type MatEntries = Vec<(usize, usize, Rational)>;

/// `sl_n` or `gl_n` in the basis of elementary matrices: raising `E_ij`
/// (i < j), then the Cartan part, then lowering `E_ij` (i > j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    pub kind: LieKind,
    pub n: usize,
    pub labels: Vec<String>,
    pub matrices: Vec<MatEntries>,
    /// `brackets[i][j] = [b_i, b_j]`.
    pub brackets: Vec<Vec<SparseVec>>,
    /// Weight under the diagonal torus, in coordinates `ε_1 .. ε_n`.
    pub torus: Vec<Vec<i64>>,
    /// Indices of the simple raising operators `E_{k,k+1}`.
    pub raising: Vec<usize>,
    pub exponents: Vec<usize>,
}

fn mat_mul(a: &MatEntries, b: &MatEntries, n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); n]; n];
    for (i, k, x) in a {
        for (k2, j, y) in b {
            if k == k2 {
                out[*i][*j] += x * y;
            }
        }
    }
    out
}

fn dense_mul(a: &[Vec<Rational>], b: &MatEntries) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for (k, j, y) in b {
        for i in 0..n {
            if !a[i][*k].is_zero() {
                out[i][*j] += &a[i][*k] * y;
            }
        }
    }
    out
}

impl LiePresentation {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn name(&self) -> String {
        match self.kind {
            LieKind::Sl => format!("sl{}", self.n),
            LieKind::Gl => format!("gl{}", self.n),
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i][j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Coordinates of a matrix in the basis.
    fn decompose(&self, m: &[Vec<Rational>]) -> Result<SparseVec> {
        let n = self.n;
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, mat) in self.matrices.iter().enumerate() {
            if let [(i, j, _)] = mat.as_slice() {
                if i != j && !m[*i][*j].is_zero() {
                    acc.insert(k, m[*i][*j].clone());
                }
            }
        }
        let diag: Vec<Rational> = (0..n).map(|i| m[i][i].clone()).collect();
        match self.kind {
            LieKind::Gl => {
                for (k, mat) in self.matrices.iter().enumerate() {
                    if let [(i, j, _)] = mat.as_slice() {
                        if i == j && !diag[*i].is_zero() {
                            acc.insert(k, diag[*i].clone());
                        }
                    }
                }
            }
            LieKind::Sl => {
                let tr: Rational = diag.iter().cloned().sum();
                if !tr.is_zero() {
                    return Err(Error::InvalidArgument("matrix is not traceless".into()));
                }
                let first_h = n * (n - 1) / 2;
                let mut partial = Rational::zero();
                for k in 0..n - 1 {
                    partial += &diag[k];
                    if !partial.is_zero() {
                        acc.insert(first_h + k, partial.clone());
                    }
                }
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Matrix of a basis combination.
    pub fn to_matrix(&self, v: &[(usize, Rational)]) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n]; self.n];
        for (k, c) in v {
            for (i, j, x) in &self.matrices[*k] {
                out[*i][*j] += c * x;
            }
        }
        out
    }

    /// Trace form `Tr(b_i b_j)`.
    pub fn trace_form(&self, i: usize, j: usize) -> Rational {
        let p = mat_mul(&self.matrices[i], &self.matrices[j], self.n);
        (0..self.n).map(|k| p[k][k].clone()).sum()
    }

    /// Symmetrized trace `P(b_{a_0}, ..., b_{a_r}) = (1/(r+1)!) Σ_σ Tr(b_{a_σ(0)} ... b_{a_σ(r)})`.
    pub fn invariant_poly(&self, args: &[usize]) -> Rational {
        let mut total = Rational::zero();
        let mut count = 0i64;
        permutations(args.len(), &mut |perm| {
            let mut m = identity(self.n);
            for &p in perm {
                m = dense_mul(&m, &self.matrices[args[p]]);
            }
            total += (0..self.n).map(|k| m[k][k].clone()).sum::<Rational>();
            count += 1;
        });
        total / Rational::from_integer(count.into())
    }

    pub fn check_jacobi(&self) -> bool {
        let d = self.dim();
        let br = |v: &[(usize, Rational)], k: usize| -> BTreeMap<usize, Rational> {
            let mut acc = BTreeMap::new();
            for (i, c) in v {
                for (j, x) in self.bracket(*i, k) {
                    *acc.entry(*j).or_insert_with(Rational::zero) += c * x;
                }
            }
            acc
        };
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, v) in br(self.bracket(x, y), z) {
                            *acc.entry(k).or_insert_with(Rational::zero) += v;
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `<[a,b],c> + <b,[a,c]> = 0` for the trace form.
    pub fn check_form_invariance(&self) -> bool {
        let d = self.dim();
        let pair =
            |v: &[(usize, Rational)], k: usize| -> Rational { v.iter().map(|(i, c)| c * self.trace_form(*i, k)).sum() };
        (0..d).all(|a| {
            (0..d).all(|b| (0..d).all(|c| (pair(self.bracket(a, b), c) + pair(self.bracket(a, c), b)).is_zero()))
        })
    }

    /// Polarized ad-invariance of the degree `r + 1` symmetrized trace on all basis tuples.
    pub fn check_poly_invariance(&self, r: usize) -> bool {
        let d = self.dim();
        let mut tuple = vec![0usize; r + 1];
        loop {
            for x in 0..d {
                let mut s = Rational::zero();
                for slot in 0..=r {
                    for (k, c) in self.bracket(x, tuple[slot]) {
                        let mut args = tuple.clone();
                        args[slot] = *k;
                        s += c * self.invariant_poly(&args);
                    }
                }
                if !s.is_zero() {
                    return false;
                }
            }
            // next nondecreasing tuple
            let mut p = r + 1;
            loop {
                if p == 0 {
                    return true;
                }
                p -= 1;
                if tuple[p] + 1 < d {
                    tuple[p] += 1;
                    for q in p + 1..=r {
                        tuple[q] = tuple[p];
                    }
                    break;
                }
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut impl FnMut(&[usize])) {
        if k == perm.capacity() {
            f(perm);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                perm.push(i);
                rec(k + 1, perm, used, f);
                perm.pop();
                used[i] = false;
            }
        }
    }
    let mut perm = Vec::with_capacity(n);
    rec(0, &mut perm, &mut vec![false; n], f);
}

/// `sl_n` (n >= 2) or `gl_n` (n >= 1).
pub fn lie_presentation(name: &str, n: usize) -> Result<LiePresentation> {
    let kind = match name {
        "sl" => LieKind::Sl,
        "gl" => LieKind::Gl,
        other => return Err(Error::InvalidArgument(format!("unsupported Lie algebra `{other}`"))),
    };
    if (kind == LieKind::Sl && n < 2) || n < 1 {
        return Err(Error::InvalidArgument(format!("{name}{n} is not available")));
    }
    let one = Rational::one;
    let mut labels = Vec::new();
    let mut matrices: Vec<MatEntries> = Vec::new();
    let mut torus = Vec::new();
    let eps = |i: usize, j: usize| {
        let mut w = vec![0i64; n];
        w[i] += 1;
        w[j] -= 1;
        w
    };
    let elem_label = |i: usize, j: usize| {
        if n == 2 && kind == LieKind::Sl {
            if i < j {
                "e".to_string()
            } else {
                "f".to_string()
            }
        } else {
            format!("E{}{}", i + 1, j + 1)
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            labels.push(elem_label(i, j));
            matrices.push(vec![(i, j, one())]);
            torus.push(eps(i, j));
        }
    }
    let raising: Vec<usize> = {
        let mut idx = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if j == i + 1 {
                    idx.push(k);
                }
                k += 1;
            }
        }
        idx
    };
    match kind {
        LieKind::Sl => {
            for k in 0..n - 1 {
                labels.push(if n == 2 { "h".to_string() } else { format!("H{}", k + 1) });
                matrices.push(vec![(k, k, one()), (k + 1, k + 1, -one())]);
                torus.push(vec![0; n]);
            }
        }
        LieKind::Gl => {
            for k in 0..n {
                labels.push(format!("E{}{}", k + 1, k + 1));
                matrices.push(vec![(k, k, one())]);
                torus.push(vec![0; n]);
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            labels.push(elem_label(i, j));
            matrices.push(vec![(i, j, one())]);
            torus.push(eps(i, j));
        }
    }
    let exponents = match kind {
        LieKind::Sl => (1..n).collect(),
        LieKind::Gl => (0..n).collect(),
    };
    let mut pres = LiePresentation {
        kind,
        n,
        labels,
        matrices,
        brackets: Vec::new(),
        torus,
        raising,
        exponents,
    };
    let d = pres.dim();
    let mut brackets = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let ab = mat_mul(&pres.matrices[a], &pres.matrices[b], n);
            let ba = mat_mul(&pres.matrices[b], &pres.matrices[a], n);
            let c: Vec<Vec<Rational>> = ab
                .iter()
                .zip(&ba)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
                .collect();
            brackets[a][b] = pres.decompose(&c)?;
        }
    }
    pres.brackets = brackets;
    Ok(pres)
}
