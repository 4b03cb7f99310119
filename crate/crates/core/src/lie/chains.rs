use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::presentation::LiePresentation;
use crate::algebra::{AlgebraSpec, GradedAlgebraPresentation};
use crate::error::{Error, Result};
use crate::exact::{rank, rank_kernel, Rational, SparseMatQ, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Absolute,
    Relative,
}

/// Coefficient module of the complex. `Exterior { p }` is `Λ^p(g ⊗ M)` for
/// the module `M` of a square-zero extension `A ⊕ M`; it is realized as the
/// part of `Λ(g ⊗ (A ⊕ M))` with exactly `p` factors from `M`, selected by
/// the second weight coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Trivial,
    Exterior { p: usize },
}

/// A subcomplex cut out by a nonnegative grading that the boundary never
/// increases: chains with total filtration value at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub values: Vec<i64>,
    pub cap: i64,
}

#[derive(Clone, Debug)]
pub struct CeComplexSpec {
    pub lie: LiePresentation,
    pub algebra: GradedAlgebraPresentation,
    pub mode: Mode,
    pub coefficients: Coefficients,
    pub filtration: Option<Filtration>,
}

impl CeComplexSpec {
    pub fn new(lie: LiePresentation, algebra: GradedAlgebraPresentation, mode: Mode) -> Self {
        CeComplexSpec {
            lie,
            algebra,
            mode,
            coefficients: Coefficients::Trivial,
            filtration: None,
        }
    }
}

/// Suspended generator `s(X ⊗ a)` of the chain algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentGen {
    pub lie: usize,
    pub alg: usize,
    pub odd: bool,
    pub degree: i64,
    pub weight: Vec<i64>,
    pub torus: Vec<i64>,
    pub filt: i64,
}

/// One graded piece of the chain space: fixed degree, weight and (optionally) torus weight.
#[derive(Clone, Debug)]
pub struct ChainSlice {
    pub k: i64,
    pub weight: Vec<i64>,
    pub torus: Option<Vec<i64>>,
    pub basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    pub complete: bool,
}

impl ChainSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, mono: &[u32]) -> Option<usize> {
        self.index.get(mono).copied()
    }
}

/// g-invariant part of a torus-weight-zero slice.
#[derive(Clone, Debug)]
pub struct InvariantSlice {
    pub ambient: ChainSlice,
    /// Basis of invariants as vectors over the ambient basis, in reduced form.
    pub basis: Vec<SparseVec>,
    pub free_columns: Vec<usize>,
}

impl InvariantSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an invariant vector in the reduced basis.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        let pos: HashMap<usize, usize> = self.free_columns.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        v.iter()
            .filter_map(|(c, x)| pos.get(c).map(|i| (*i, x.clone())))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct CeComplex {
    pub spec: CeComplexSpec,
    pub gens: Vec<CurrentGen>,
    gen_index: HashMap<(usize, usize), usize>,
}

type Terms = HashMap<Vec<u32>, Rational>;

fn add_term(acc: &mut Terms, key: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key).or_insert_with(Rational::zero);
    *slot += c;
}

impl CeComplex {
    pub fn new(spec: CeComplexSpec) -> Result<Self> {
        let a = &spec.algebra;
        if spec.mode == Mode::Relative && !a.augmentation_ideal_closed() {
            return Err(Error::RelativeUnavailable(format!(
                "non-unit part of `{}` is not an ideal, so g is not a summand of g ⊗ A with a complement closed under the bracket",
                a.pretty()
            )));
        }
        if let Some(f) = &spec.filtration {
            if f.values.len() != a.dim() || f.values.iter().any(|v| *v < 0) {
                return Err(Error::InvalidArgument(
                    "filtration needs a nonnegative value per algebra basis element".into(),
                ));
            }
        }
        if let Coefficients::Exterior { .. } = spec.coefficients {
            if a.module().is_none() || a.weight_arity() < 2 {
                return Err(Error::InvalidArgument(
                    "exterior coefficients need a square-zero extension".into(),
                ));
            }
        }
        let mut gens = Vec::new();
        let mut gen_index = HashMap::new();
        for (ai, b) in a.basis().iter().enumerate() {
            if spec.mode == Mode::Relative && ai == a.unit() {
                continue;
            }
            for li in 0..spec.lie.dim() {
                gen_index.insert((li, ai), gens.len());
                gens.push(CurrentGen {
                    lie: li,
                    alg: ai,
                    odd: (b.degree + 1).rem_euclid(2) == 1,
                    degree: b.degree + 1,
                    weight: b.weight.clone(),
                    torus: spec.lie.torus[li].clone(),
                    filt: spec.filtration.as_ref().map_or(0, |f| f.values[ai]),
                });
            }
        }
        Ok(CeComplex { spec, gens, gen_index })
    }

    pub fn lie(&self) -> &LiePresentation {
        &self.spec.lie
    }

    pub fn algebra(&self) -> &GradedAlgebraPresentation {
        &self.spec.algebra
    }

    pub fn gen(&self, lie: usize, alg: usize) -> Option<usize> {
        self.gen_index.get(&(lie, alg)).copied()
    }

    pub fn label(&self, mono: &[u32]) -> String {
        let parts: Vec<String> = mono
            .iter()
            .map(|g| {
                let g = &self.gens[*g as usize];
                format!(
                    "{}⊗{}",
                    self.spec.lie.labels[g.lie],
                    self.spec.algebra.basis()[g.alg].label
                )
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ∧ ")
        }
    }

    /// Sorts a factor list into canonical order; `None` when an odd factor repeats.
    pub fn normalize(&self, mut v: Vec<u32>) -> Option<(bool, Vec<u32>)> {
        let mut neg = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if self.gens[v[j - 1] as usize].odd && self.gens[v[j] as usize].odd {
                    neg = !neg;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1] && self.gens[w[0] as usize].odd) {
            return None;
        }
        Some((neg, v))
    }

    fn gens_allowed(&self, allowed: Option<&[bool]>, g: usize) -> bool {
        allowed.is_none_or(|a| a[g])
    }

    /// Whether every chain of this weight in the untruncated algebra is present.
    fn covers(&self, weight: &[i64]) -> bool {
        let a = &self.spec.algebra;
        match a.spec() {
            AlgebraSpec::Quot { .. } => true,
            AlgebraSpec::Free { window, .. } => weight.iter().zip(window).all(|(w, h)| w <= h),
            AlgebraSpec::Cross { w } => weight.iter().all(|x| x <= w),
            AlgebraSpec::Laurent { .. } => false,
            AlgebraSpec::SqZero { d_plus, d_minus } => match &self.spec.filtration {
                Some(f) => *d_plus >= f.cap && *d_minus >= f.cap - weight[0],
                None => false,
            },
        }
    }

    /// Chain monomials of degree `k` and the given weight; `torus = None`
    /// keeps every torus weight. `allowed` restricts the generators.
    pub fn slice_with(&self, k: i64, weight: &[i64], torus: Option<&[i64]>, allowed: Option<&[bool]>) -> ChainSlice {
        let n = self.gens.len();
        let arity = weight.len();
        let tarity = self.spec.lie.n;
        // suffix bounds for pruning
        let mut lo = vec![vec![0i64; arity + tarity]; n + 1];
        let mut hi = vec![vec![0i64; arity + tarity]; n + 1];
        for g in (0..n).rev() {
            for c in 0..arity + tarity {
                let v = if c < arity {
                    self.gens[g].weight[c]
                } else {
                    self.gens[g].torus[c - arity]
                };
                let (l, h) = if self.gens_allowed(allowed, g) {
                    (v, v)
                } else {
                    (lo[g + 1][c], hi[g + 1][c])
                };
                lo[g][c] = l.min(lo[g + 1][c]);
                hi[g][c] = h.max(hi[g + 1][c]);
            }
        }
        let cap = self.spec.filtration.as_ref().map(|f| f.cap);
        let mut target: Vec<i64> = weight.to_vec();
        if let Some(t) = torus {
            target.extend_from_slice(t);
        }
        let ncoord = target.len();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut sum = vec![0i64; ncoord];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            cx: &CeComplex,
            allowed: Option<&[bool]>,
            start: usize,
            left: i64,
            filt: i64,
            cap: Option<i64>,
            target: &[i64],
            arity: usize,
            lo: &[Vec<i64>],
            hi: &[Vec<i64>],
            cur: &mut Vec<u32>,
            sum: &mut Vec<i64>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if left == 0 {
                if sum.as_slice() == target {
                    out.push(cur.clone());
                }
                return;
            }
            for c in 0..target.len() {
                let need = target[c] - sum[c];
                let reach_lo = (left * lo[start][c]).min(0);
                let reach_hi = (left * hi[start][c]).max(0);
                if need < reach_lo || need > reach_hi {
                    return;
                }
            }
            for g in start..cx.gens.len() {
                if !cx.gens_allowed(allowed, g) {
                    continue;
                }
                let gen = &cx.gens[g];
                if gen.degree > left || cap.is_some_and(|c| filt + gen.filt > c) {
                    continue;
                }
                let next = if gen.odd { g + 1 } else { g };
                for c in 0..target.len() {
                    sum[c] += if c < arity { gen.weight[c] } else { gen.torus[c - arity] };
                }
                cur.push(g as u32);
                rec(
                    cx,
                    allowed,
                    next,
                    left - gen.degree,
                    filt + gen.filt,
                    cap,
                    target,
                    arity,
                    lo,
                    hi,
                    cur,
                    sum,
                    out,
                );
                cur.pop();
                for c in 0..target.len() {
                    sum[c] -= if c < arity { gen.weight[c] } else { gen.torus[c - arity] };
                }
            }
        }
        if k >= 0 {
            rec(
                self, allowed, 0, k, 0, cap, &target, arity, &lo, &hi, &mut cur, &mut sum, &mut out,
            );
        }
        let index = out.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        ChainSlice {
            k,
            weight: weight.to_vec(),
            torus: torus.map(|t| t.to_vec()),
            basis: out,
            index,
            complete: self.covers(weight) && allowed.is_none(),
        }
    }

    pub fn slice(&self, k: i64, weight: &[i64], torus: Option<&[i64]>) -> ChainSlice {
        self.slice_with(k, weight, torus, None)
    }

    /// Boundary of one monomial, plus whether a truncated product was used.
    pub fn boundary_of(&self, mono: &[u32]) -> (Terms, bool) {
        let a = &self.spec.algebra;
        let lie = &self.spec.lie;
        let mut acc = Terms::new();
        let mut truncated = false;
        let par: Vec<bool> = mono.iter().map(|g| self.gens[*g as usize].odd).collect();
        for p in 0..mono.len() {
            let before_p = par[..p].iter().filter(|x| **x).count();
            let s1 = par[p] && before_p % 2 == 1;
            for q in p + 1..mono.len() {
                let before_q = par[..q].iter().enumerate().filter(|(j, x)| *j != p && **x).count();
                let s2 = par[q] && before_q % 2 == 1;
                let gp = &self.gens[mono[p] as usize];
                let gq = &self.gens[mono[q] as usize];
                let br = lie.bracket(gp.lie, gq.lie);
                if br.is_empty() {
                    continue;
                }
                truncated |= a.is_truncated(gp.alg, gq.alg);
                let prod = a.product(gp.alg, gq.alg);
                if prod.is_empty() {
                    continue;
                }
                // s(z_p) s(z_q) -> (-1)^{|z_p|} s[z_p, z_q]
                let z_odd = !gp.odd;
                let neg = s1 ^ s2 ^ z_odd;
                let rest: Vec<u32> = mono
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != p && *j != q)
                    .map(|(_, g)| *g)
                    .collect();
                for (lk, lc) in br {
                    for (ak, ac) in prod {
                        let Some(r) = self.gen(*lk, *ak) else {
                            continue;
                        };
                        let mut v = Vec::with_capacity(rest.len() + 1);
                        v.push(r as u32);
                        v.extend_from_slice(&rest);
                        if let Some((n2, sorted)) = self.normalize(v) {
                            let c = lc * ac;
                            add_term(&mut acc, sorted, if neg ^ n2 { -c } else { c });
                        }
                    }
                }
            }
        }
        if a.has_differential() {
            for p in 0..mono.len() {
                let before = par[..p].iter().filter(|x| **x).count();
                let gp = &self.gens[mono[p] as usize];
                for (ak, ac) in a.delta(gp.alg) {
                    let Some(r) = self.gen(gp.lie, *ak) else { continue };
                    let mut v = mono.to_vec();
                    v[p] = r as u32;
                    if let Some((n2, sorted)) = self.normalize(v) {
                        // s z -> -s(δz), passed across the preceding factors
                        let neg = !(before % 2 == 1) ^ n2;
                        add_term(&mut acc, sorted, if neg { -ac.clone() } else { ac.clone() });
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        (acc, truncated)
    }

    /// Action of the basis element `x` of g on one monomial.
    pub fn act(&self, x: usize, mono: &[u32]) -> Terms {
        let mut acc = Terms::new();
        for p in 0..mono.len() {
            let gp = &self.gens[mono[p] as usize];
            for (lk, lc) in self.spec.lie.bracket(x, gp.lie) {
                let Some(r) = self.gen(*lk, gp.alg) else { continue };
                let mut v = mono.to_vec();
                v[p] = r as u32;
                if let Some((neg, sorted)) = self.normalize(v) {
                    add_term(&mut acc, sorted, if neg { -lc.clone() } else { lc.clone() });
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    fn columns(
        &self,
        src: &ChainSlice,
        dst: &ChainSlice,
        f: impl Fn(&[u32]) -> (Terms, bool),
    ) -> Result<(SparseMatQ, bool)> {
        let mut cols = Vec::with_capacity(src.dim());
        let mut trusted = true;
        for m in &src.basis {
            let (terms, trunc) = f(m);
            trusted &= !trunc;
            let mut col: SparseVec = Vec::with_capacity(terms.len());
            for (key, c) in terms {
                match dst.position(&key) {
                    Some(r) => col.push((r, c)),
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "term {} of the image of {} is missing from the target slice",
                            self.label(&key),
                            self.label(m)
                        )))
                    }
                }
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
        Ok((SparseMatQ::from_columns(dst.dim(), &cols), trusted))
    }

    /// Boundary matrix from `src` (degree k) to `dst` (degree k-1); the flag is false
    /// when a window-truncated product was used.
    pub fn boundary(&self, src: &ChainSlice, dst: &ChainSlice) -> Result<(SparseMatQ, bool)> {
        self.columns(src, dst, |m| self.boundary_of(m))
    }

    pub fn action_matrix(&self, x: usize, src: &ChainSlice, dst: &ChainSlice) -> Result<SparseMatQ> {
        Ok(self.columns(src, dst, |m| (self.act(x, m), false))?.0)
    }

    fn torus_zero(&self) -> Vec<i64> {
        vec![0; self.spec.lie.n]
    }

    /// g-invariants in degree `k` and the given weight.
    pub fn invariant_slice(&self, k: i64, weight: &[i64], allowed: Option<&[bool]>) -> Result<InvariantSlice> {
        let zero = self.torus_zero();
        let ambient = self.slice_with(k, weight, Some(&zero), allowed);
        let mut stacked = SparseMatQ::zero(0, ambient.dim());
        for &r in &self.spec.lie.raising {
            let t = self.spec.lie.torus[r].clone();
            let target = self.slice_with(k, weight, Some(&t), allowed);
            stacked = stacked.vstack(&self.action_matrix(r, &ambient, &target)?)?;
        }
        let rk = rank_kernel(&stacked);
        Ok(InvariantSlice {
            ambient,
            basis: rk.kernel,
            free_columns: rk.free_columns,
        })
    }

    /// Rank of the boundary restricted to invariants of degree `k`.
    pub fn invariant_boundary_rank(&self, src: &InvariantSlice, dst: &InvariantSlice) -> Result<(usize, bool)> {
        let (d, trusted) = self.boundary(&src.ambient, &dst.ambient)?;
        let cols: Vec<SparseVec> = src.basis.iter().map(|v| d.apply(v)).collect();
        Ok((rank(&SparseMatQ::from_columns(dst.ambient.dim(), &cols)), trusted))
    }

    /// Boundary on invariants in the reduced coordinates of both sides.
    pub fn invariant_boundary(&self, src: &InvariantSlice, dst: &InvariantSlice) -> Result<(SparseMatQ, bool)> {
        let (d, trusted) = self.boundary(&src.ambient, &dst.ambient)?;
        let cols: Vec<SparseVec> = src.basis.iter().map(|v| dst.coordinates(&d.apply(v))).collect();
        Ok((SparseMatQ::from_columns(dst.dim(), &cols), trusted))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub k: i64,
    pub weight: Vec<i64>,
    pub chain_dim: usize,
    pub homology_dim: usize,
    pub trusted: bool,
}

/// Dimension of `H_k` in one weight: relative mode uses the invariant
/// subcomplex, absolute mode sums over all torus weights.
pub fn homology_slice(cx: &CeComplex, k: i64, weight: &[i64], strict: bool) -> Result<SliceReport> {
    let rep = match cx.spec.mode {
        Mode::Relative => {
            let here = cx.invariant_slice(k, weight, None)?;
            let below = cx.invariant_slice(k - 1, weight, None)?;
            let above = cx.invariant_slice(k + 1, weight, None)?;
            let (r_out, t1) = cx.invariant_boundary_rank(&here, &below)?;
            let (r_in, t2) = cx.invariant_boundary_rank(&above, &here)?;
            SliceReport {
                k,
                weight: weight.to_vec(),
                chain_dim: here.dim(),
                homology_dim: here.dim() - r_out - r_in,
                trusted: t1 && t2 && here.ambient.complete,
            }
        }
        Mode::Absolute => {
            let here = cx.slice(k, weight, None);
            let mut tori: Vec<Vec<i64>> = here
                .basis
                .iter()
                .map(|m| {
                    let mut t = vec![0; cx.spec.lie.n];
                    for g in m {
                        for (a, b) in t.iter_mut().zip(&cx.gens[*g as usize].torus) {
                            *a += b;
                        }
                    }
                    t
                })
                .collect();
            tori.sort();
            tori.dedup();
            let mut dim = 0;
            let mut trusted = here.complete;
            for t in &tori {
                let h = cx.slice(k, weight, Some(t));
                let b = cx.slice(k - 1, weight, Some(t));
                let u = cx.slice(k + 1, weight, Some(t));
                let (d_out, t1) = cx.boundary(&h, &b)?;
                let (d_in, t2) = cx.boundary(&u, &h)?;
                trusted &= t1 && t2;
                dim += h.dim() - rank(&d_out) - rank(&d_in);
            }
            SliceReport {
                k,
                weight: weight.to_vec(),
                chain_dim: here.dim(),
                homology_dim: dim,
                trusted,
            }
        }
    };
    if strict && !rep.trusted {
        return Err(Error::Untrusted(format!("slice k={k}, weight {weight:?}")));
    }
    Ok(rep)
}

/// Slice reports for every degree in `ks` at one weight.
pub fn build_complex(
    cx: &CeComplex,
    ks: std::ops::RangeInclusive<i64>,
    weight: &[i64],
    strict: bool,
) -> Result<Vec<SliceReport>> {
    ks.map(|k| homology_slice(cx, k, weight, strict)).collect()
}

/// Checks `∂∂ = 0` on every basis chain of degree `k` (all torus weights).
pub fn check_d_squared(cx: &CeComplex, k: i64, weight: &[i64]) -> Result<bool> {
    let src = cx.slice(k, weight, None);
    for m in &src.basis {
        let (first, _) = cx.boundary_of(m);
        let mut second: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (key, c) in first {
            for (k2, c2) in cx.boundary_of(&key).0 {
                *second.entry(k2).or_insert_with(Rational::zero) += &c * c2;
            }
        }
        if second.values().any(|v| !v.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that every raising operator and every Cartan element commutes with `∂`
/// on degree-`k` chains of the given weight.
pub fn check_action_commutes(cx: &CeComplex, k: i64, weight: &[i64]) -> bool {
    let src = cx.slice(k, weight, None);
    (0..cx.spec.lie.dim()).all(|x| {
        src.basis.iter().all(|m| {
            let mut lhs: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            for (key, c) in cx.boundary_of(m).0 {
                for (k2, c2) in cx.act(x, &key) {
                    *lhs.entry(k2).or_insert_with(Rational::zero) += &c * c2;
                }
            }
            for (key, c) in cx.act(x, m) {
                for (k2, c2) in cx.boundary_of(&key).0 {
                    *lhs.entry(k2).or_insert_with(Rational::zero) -= &c * c2;
                }
            }
            lhs.values().all(|v| v.is_zero())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{crossing_lines, free_skew_algebra, parse_algebra_spec, resolve_quotient};
    use crate::lie::lie_presentation;

    fn sl2() -> LiePresentation {
        lie_presentation("sl", 2).unwrap()
    }

    fn complex(spec: &str, mode: Mode) -> CeComplex {
        CeComplex::new(CeComplexSpec::new(sl2(), parse_algebra_spec(spec).unwrap(), mode)).unwrap()
    }

    #[test]
    fn exterior_algebra_of_sl2() {
        let cx = CeComplex::new(CeComplexSpec::new(
            sl2(),
            free_skew_algebra(vec![], vec![]).unwrap(),
            Mode::Absolute,
        ))
        .unwrap();
        let dims: Vec<(usize, usize)> = (0..=4)
            .map(|k| {
                let r = homology_slice(&cx, k, &[], true).unwrap();
                (r.chain_dim, r.homology_dim)
            })
            .collect();
        assert_eq!(dims, vec![(1, 1), (3, 0), (3, 0), (1, 1), (0, 0)]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let graded = complex("free x; xi:odd:w=1; window 3", Mode::Absolute);
        let dg = CeComplex::new(CeComplexSpec::new(
            sl2(),
            resolve_quotient(2, 4).unwrap(),
            Mode::Absolute,
        ))
        .unwrap();
        for w in 0..=3 {
            for k in 0..=5 {
                assert!(check_d_squared(&graded, k, &[w]).unwrap(), "graded w={w} k={k}");
                assert!(check_d_squared(&dg, k, &[w]).unwrap(), "dg w={w} k={k}");
            }
            for k in 0..=3 {
                assert!(check_action_commutes(&dg, k, &[w]), "dg w={w} k={k}");
            }
        }
    }

    #[test]
    fn polynomial_currents_have_no_positive_weight_homology() {
        let cx = complex("free x; window 3", Mode::Relative);
        for w in 1..=3 {
            for k in 0..=4 {
                assert_eq!(
                    homology_slice(&cx, k, &[w], true).unwrap().homology_dim,
                    0,
                    "w={w} k={k}"
                );
            }
        }
    }

    #[test]
    fn plane_slice_two_two() {
        let cx = complex("free x:w=1,0; y:w=0,1; window 2,2", Mode::Relative);
        let reports = build_complex(&cx, 0..=6, &[2, 2], true).unwrap();
        let chains: Vec<usize> = reports.iter().map(|r| r.chain_dim).collect();
        let homology: Vec<usize> = reports.iter().map(|r| r.homology_dim).collect();
        assert_eq!(chains, vec![0, 0, 3, 3, 1, 0, 0]);
        assert_eq!(homology, vec![0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn relative_and_absolute_agree_on_invariant_part() {
        // H(g[x,y]) = H(g) ⊗ H(g[x,y], g); at weight (1,1) only degree 2 and 5 survive
        let rel = complex("free x:w=1,0; y:w=0,1; window 1,1", Mode::Relative);
        let abs = complex("free x:w=1,0; y:w=0,1; window 1,1", Mode::Absolute);
        let r: Vec<usize> = (0..=5)
            .map(|k| homology_slice(&rel, k, &[1, 1], true).unwrap().homology_dim)
            .collect();
        let a: Vec<usize> = (0..=5)
            .map(|k| homology_slice(&abs, k, &[1, 1], true).unwrap().homology_dim)
            .collect();
        assert_eq!(r, vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(a, vec![0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn relative_needs_an_ideal() {
        let a = crate::algebra::laurent_window(1, 1).unwrap();
        // x * x^-1 = 1 leaves the span of the non-unit monomials
        assert!(matches!(
            CeComplex::new(CeComplexSpec::new(sl2(), a, Mode::Relative)),
            Err(Error::RelativeUnavailable(_))
        ));
        let b = crossing_lines(2).unwrap();
        assert!(CeComplex::new(CeComplexSpec::new(sl2(), b, Mode::Relative)).is_ok());
    }

    #[test]
    fn untrusted_outside_window() {
        let cx = complex("free x; window 2", Mode::Relative);
        assert!(matches!(homology_slice(&cx, 2, &[3], true), Err(Error::Untrusted(_))));
        assert!(!homology_slice(&cx, 2, &[3], false).unwrap().trusted);
    }

    #[test]
    fn normalize_signs() {
        let cx = complex("free x; window 1", Mode::Absolute);
        assert_eq!(cx.normalize(vec![1, 0]), Some((true, vec![0, 1])));
        assert_eq!(cx.normalize(vec![2, 0, 1]), Some((false, vec![0, 1, 2])));
        assert_eq!(cx.normalize(vec![1, 1]), None);
    }
}
