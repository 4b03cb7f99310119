use num_traits::One;
use serde::Serialize;

use super::complex::DeRhamComplex;
use crate::algebra::{free_dga, resolve_quotient, AlgebraSpec, GeneratorSpec, GradedAlgebraPresentation};
use crate::error::{Error, Result};
use crate::exact::{rank, rank_kernel, Rational, SparseMatQ, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HcEntry {
    pub n: i64,
    pub i: i64,
    pub weight: Vec<i64>,
    pub dim: usize,
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HcTable {
    pub algebra: String,
    pub window: Vec<i64>,
    pub entries: Vec<HcEntry>,
}

impl HcTable {
    pub fn get(&self, n: i64, i: i64, weight: &[i64]) -> Option<&HcEntry> {
        self.entries.iter().find(|e| e.n == n && e.i == i && e.weight == weight)
    }

    pub fn dim(&self, n: i64, i: i64, weight: &[i64]) -> usize {
        self.get(n, i, weight).map_or(0, |e| e.dim)
    }

    /// Sum over all listed weights.
    pub fn total(&self, n: i64, i: i64) -> usize {
        self.entries
            .iter()
            .filter(|e| e.n == n && e.i == i)
            .map(|e| e.dim)
            .sum()
    }

    pub fn all_trusted(&self) -> bool {
        self.entries.iter().all(|e| e.trusted)
    }
}

/// Every weight vector `0 <= w <= hi` in lexicographic order.
pub fn weights_up_to(hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for h in hi {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=*h).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn trusted(c: &DeRhamComplex, weight: &[i64]) -> bool {
    weight.len() == c.source_window.len() && weight.iter().zip(&c.source_window).all(|(w, h)| *w >= 0 && w <= h)
}

fn cohomology_dim(c: &DeRhamComplex, i: i64, t: i64, weight: &[i64]) -> usize {
    let prev = c.slice(i, t - 1, weight);
    let here = c.slice(i, t, weight);
    let next = c.slice(i, t + 1, weight);
    if here.is_empty() {
        return 0;
    }
    let r_out = rank(&c.differential(i, &here, &next));
    let r_in = rank(&c.differential(i, &prev, &here));
    here.len() - r_out - r_in
}

/// `dim HC_n^{(i)}` in one weight: cohomology of `ℛ^i` in total degree `2i - n`.
pub fn hc_dim(c: &DeRhamComplex, n: i64, i: i64, weight: &[i64], strict: bool) -> Result<usize> {
    if i > c.form_max {
        return Err(Error::InvalidArgument(format!(
            "complex was built with forms up to degree {}",
            c.form_max
        )));
    }
    if strict && !trusted(c, weight) {
        return Err(Error::Untrusted(format!(
            "weight {weight:?} lies outside the window {:?}",
            c.source_window
        )));
    }
    if i < 0 {
        return Ok(0);
    }
    Ok(cohomology_dim(c, i, 2 * i - n, weight))
}

/// Table of `HC_n^{(i)}` for `0 <= i <= i_max`, `0 <= n <= n_max` and the given weights.
pub fn cyclic_homology(
    c: &DeRhamComplex,
    algebra: &str,
    i_max: i64,
    n_max: i64,
    weights: &[Vec<i64>],
    strict: bool,
) -> Result<HcTable> {
    let mut entries = Vec::new();
    for i in 0..=i_max {
        for n in 0..=n_max {
            for w in weights {
                let t = trusted(c, w);
                let dim = hc_dim(c, n, i, w, strict)?;
                entries.push(HcEntry {
                    n,
                    i,
                    weight: w.clone(),
                    dim,
                    trusted: t,
                });
            }
        }
    }
    Ok(HcTable {
        algebra: algebra.to_string(),
        window: c.source_window.clone(),
        entries,
    })
}

/// Rank of `S : HC_n^{(i)} -> HC_{n-2}^{(i-1)}` in one weight, induced by `ℛ^i -> ℛ^{i-1}`.
pub fn periodicity_s(c: &DeRhamComplex, i: i64, n: i64, weight: &[i64], strict: bool) -> Result<usize> {
    if i < 1 {
        return Err(Error::InvalidArgument("S needs Adams degree i >= 1".into()));
    }
    if strict && !trusted(c, weight) {
        return Err(Error::Untrusted(format!(
            "weight {weight:?} lies outside the window {:?}",
            c.source_window
        )));
    }
    let t = 2 * i - n;
    let src = c.slice(i, t, weight);
    let src_next = c.slice(i, t + 1, weight);
    let cycles = rank_kernel(&c.differential(i, &src, &src_next)).kernel;
    let tgt = c.slice(i - 1, t, weight);
    let tgt_prev = c.slice(i - 1, t - 1, weight);
    let boundaries = c.differential(i - 1, &tgt_prev, &tgt);
    let pos: std::collections::BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(r, k)| (*k, r)).collect();
    let projected: Vec<SparseVec> = cycles
        .iter()
        .map(|z| {
            z.iter()
                .filter_map(|(col, x)| pos.get(&src[*col]).map(|r| (*r, x.clone())))
                .collect::<SparseVec>()
        })
        .map(|mut v| {
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    let mut cols = boundaries.column_vectors();
    let rb = rank(&boundaries);
    cols.extend(projected);
    let both = SparseMatQ::from_columns(tgt.len(), &cols);
    Ok(rank(&both) - rb)
}

/// Free model of an algebra: free algebras are returned as they are,
/// `C[x]/(x^m)` and `C[x,y]/(xy)` are replaced by their Koszul resolutions.
pub fn resolution_for(a: &GradedAlgebraPresentation, window: i64) -> Result<GradedAlgebraPresentation> {
    match a.spec() {
        AlgebraSpec::Free { .. } => Ok(a.clone()),
        AlgebraSpec::Quot { m } => resolve_quotient(*m, window),
        AlgebraSpec::Cross { .. } => {
            let gens = vec![
                GeneratorSpec::even("x", vec![1, 0]),
                GeneratorSpec::even("y", vec![0, 1]),
                GeneratorSpec::odd("xi", vec![1, 1]),
            ];
            let delta = vec![Vec::new(), Vec::new(), vec![(Rational::one(), vec![1, 1, 0])]];
            free_dga(gens, delta, vec![window, window])
        }
        other => Err(Error::NotFree(format!("no resolution available for `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{crossing_lines, free_skew_algebra, parse_algebra_spec};
    use crate::derham::de_rham;

    #[test]
    fn ground_field_table() {
        let c = de_rham(&free_skew_algebra(Vec::new(), Vec::new()).unwrap(), 4).unwrap();
        for i in 0..=4 {
            for n in 0..=9 {
                let expect = usize::from(n == 2 * i);
                assert_eq!(hc_dim(&c, n, i, &[], true).unwrap(), expect, "n={n} i={i}");
            }
        }
        assert_eq!(periodicity_s(&c, 1, 2, &[], true).unwrap(), 1);
    }

    #[test]
    fn polynomial_row_one() {
        let c = de_rham(&parse_algebra_spec("free x; window 5").unwrap(), 2).unwrap();
        assert_eq!(hc_dim(&c, 1, 1, &[0], true).unwrap(), 0);
        assert_eq!(hc_dim(&c, 2, 1, &[0], true).unwrap(), 1);
        for w in 1..=5 {
            for n in 0..=4 {
                assert_eq!(hc_dim(&c, n, 1, &[w], true).unwrap(), 0);
            }
        }
        assert_eq!(periodicity_s(&c, 1, 1, &[1], true).unwrap(), 0);
        assert!(matches!(hc_dim(&c, 2, 1, &[6], true), Err(Error::Untrusted(_))));
    }

    #[test]
    fn crossing_lines_resolution_degree_zero() {
        // HC_0 = A itself; weight (1,0) is x, weight (1,1) is killed by xy = 0
        let r = resolution_for(&crossing_lines(3).unwrap(), 3).unwrap();
        let c = de_rham(&r, 1).unwrap();
        assert_eq!(hc_dim(&c, 0, 0, &[1, 0], true).unwrap(), 1);
        assert_eq!(hc_dim(&c, 0, 0, &[1, 1], true).unwrap(), 0);
    }

    #[test]
    fn weight_enumeration() {
        assert_eq!(weights_up_to(&[1, 2]).len(), 6);
        assert_eq!(weights_up_to(&[]), vec![Vec::<i64>::new()]);
    }
}
