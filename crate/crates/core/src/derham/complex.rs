use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::constructors::{build_free, extend_odd_derivation};
use crate::algebra::{AlgebraSpec, GeneratorSpec, GradedAlgebraPresentation};
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseMatQ, SparseVec};

/// De Rham complex `A[dx_1, ..., dx_N]` of a free DGA, with forms of degree
/// at most `form_max`.
///
/// Internally `dx_i` carries degree `d_i + 1` so that parities and Koszul
/// signs come out right; the form degree is tracked separately and the total
/// degree is `form - (algebra degree)`.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    pub(crate) forms: GradedAlgebraPresentation,
    pub(crate) d: Vec<SparseVec>,
    pub(crate) delta: Vec<SparseVec>,
    pub(crate) form: Vec<i64>,
    pub(crate) total: Vec<i64>,
    pub(crate) weight: Vec<Vec<i64>>,
    pub(crate) source_window: Vec<i64>,
    pub(crate) form_max: i64,
}

impl DeRhamComplex {
    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn label(&self, k: usize) -> &str {
        &self.forms.basis()[k].label
    }

    pub fn form_degree(&self, k: usize) -> i64 {
        self.form[k]
    }

    pub fn total_degree(&self, k: usize) -> i64 {
        self.total[k]
    }

    pub fn weight(&self, k: usize) -> &[i64] {
        &self.weight[k]
    }

    pub fn form_max(&self) -> i64 {
        self.form_max
    }

    pub fn source_window(&self) -> &[i64] {
        &self.source_window
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.forms.index_of(label)
    }

    pub fn d(&self, k: usize) -> &[(usize, Rational)] {
        &self.d[k]
    }

    pub fn delta(&self, k: usize) -> &[(usize, Rational)] {
        &self.delta[k]
    }

    fn apply(map: &[SparseVec], v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in v {
            for (j, x) in &map[*i] {
                *acc.entry(*j).or_insert_with(Rational::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Checks `d^2 = 0`, `δ^2 = 0` and `dδ + δd = 0` on every basis element.
    pub fn check_identities(&self) -> bool {
        (0..self.dim()).all(|k| {
            let e = vec![(k, Rational::one())];
            let dd = Self::apply(&self.d, &Self::apply(&self.d, &e));
            let xx = Self::apply(&self.delta, &Self::apply(&self.delta, &e));
            let a = Self::apply(&self.d, &Self::apply(&self.delta, &e));
            let b = Self::apply(&self.delta, &Self::apply(&self.d, &e));
            let mut anti: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, x) in a.into_iter().chain(b) {
                *anti.entry(j).or_insert_with(Rational::zero) += x;
            }
            dd.is_empty() && xx.is_empty() && anti.values().all(|x| x.is_zero())
        })
    }

    /// Basis of `ℛ^i` in total degree `t` and the given weight, in increasing index order.
    pub fn slice(&self, i: i64, t: i64, weight: &[i64]) -> Vec<usize> {
        (0..self.dim())
            .filter(|k| self.form[*k] <= i && self.total[*k] == t && self.weight[*k] == weight)
            .collect()
    }

    /// Matrix of `d + δ` on `ℛ^i` from `src` to `dst` (columns are sources).
    pub fn differential(&self, i: i64, src: &[usize], dst: &[usize]) -> SparseMatQ {
        let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(r, k)| (*k, r)).collect();
        let cols: Vec<SparseVec> = src
            .iter()
            .map(|k| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (j, x) in self.d[*k].iter().chain(&self.delta[*k]) {
                    if self.form[*j] > i {
                        continue;
                    }
                    let r = *pos
                        .get(j)
                        .expect("d + δ preserves weight and raises total degree by one");
                    *acc.entry(r).or_insert_with(Rational::zero) += x;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatQ::from_columns(dst.len(), &cols)
    }
}

/// Builds the de Rham complex of a free DGA, keeping forms of degree `<= form_max`.
pub fn de_rham(a: &GradedAlgebraPresentation, form_max: i64) -> Result<DeRhamComplex> {
    let free = a
        .free_data()
        .ok_or_else(|| Error::NotFree(format!("`{}` is not a free algebra", a.pretty())))?;
    if form_max < 0 {
        return Err(Error::InvalidArgument("form degree bound must be >= 0".into()));
    }
    let n = free.gens.len();
    let arity = a.weight_arity();
    let mut gens = Vec::with_capacity(2 * n);
    for g in &free.gens {
        let mut w = g.weight.clone();
        w.push(0);
        gens.push(GeneratorSpec::new(&g.name, g.degree, w));
    }
    for g in &free.gens {
        let mut w = g.weight.clone();
        w.push(1);
        gens.push(GeneratorSpec::new(&format!("d{}", g.name), g.degree + 1, w));
    }
    let mut window = a.window().hi.clone();
    window.push(form_max);
    let spec = AlgebraSpec::Free {
        gens: gens.clone(),
        delta: Vec::new(),
        window: window.clone(),
    };
    let forms = build_free(gens.clone(), Vec::new(), window, spec)?;
    let fd = forms.free_data().expect("free by construction");
    let index: BTreeMap<&[u32], usize> = fd.exps.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let gen_index = |g: usize| -> Option<usize> {
        let mut e = vec![0u32; 2 * n];
        e[g] = 1;
        index.get(e.as_slice()).copied()
    };
    // d: x_i -> dx_i, dx_i -> 0
    let d_gens: Vec<SparseVec> = (0..2 * n)
        .map(|g| {
            if g < n {
                gen_index(g + n).map(|k| vec![(k, Rational::one())]).unwrap_or_default()
            } else {
                Vec::new()
            }
        })
        .collect();
    let d = extend_odd_derivation(&forms, &gens, &fd.exps, &d_gens);
    // δ on x_i from A; δ(dx_i) = -d(δ x_i)
    let mut delta_gens: Vec<SparseVec> = vec![Vec::new(); 2 * n];
    for (g, poly) in free.delta.iter().enumerate() {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, e) in poly {
            let mut full = e.clone();
            full.extend(std::iter::repeat_n(0, n));
            if let Some(k) = index.get(full.as_slice()) {
                *acc.entry(*k).or_insert_with(Rational::zero) += c;
            }
        }
        delta_gens[g] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    }
    for g in 0..n {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in &delta_gens[g] {
            for (j, x) in &d[*k] {
                *acc.entry(*j).or_insert_with(Rational::zero) -= c * x;
            }
        }
        delta_gens[g + n] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    }
    let delta = extend_odd_derivation(&forms, &gens, &fd.exps, &delta_gens);
    let mut form = Vec::new();
    let mut total = Vec::new();
    let mut weight = Vec::new();
    for b in forms.basis() {
        let f = b.weight[arity];
        form.push(f);
        total.push(2 * f - b.degree);
        weight.push(b.weight[..arity].to_vec());
    }
    Ok(DeRhamComplex {
        forms,
        d,
        delta,
        form,
        total,
        weight,
        source_window: a.window().hi.clone(),
        form_max,
    })
}

/// The quotient complex `ℛ^i`: basis elements of form degree `<= i`.
#[derive(Clone, Debug)]
pub struct TruncatedForms<'a> {
    pub complex: &'a DeRhamComplex,
    pub i: i64,
}

impl TruncatedForms<'_> {
    pub fn basis(&self) -> Vec<usize> {
        (0..self.complex.dim())
            .filter(|k| self.complex.form[*k] <= self.i)
            .collect()
    }
}

pub fn truncate_forms(c: &DeRhamComplex, i: i64) -> Result<TruncatedForms<'_>> {
    if i < 0 {
        return Err(Error::InvalidArgument("Adams degree must be >= 0".into()));
    }
    if i > c.form_max {
        return Err(Error::InvalidArgument(format!(
            "complex was built with forms up to degree {}",
            c.form_max
        )));
    }
    Ok(TruncatedForms { complex: c, i })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{free_skew_algebra, parse_algebra_spec, quotient_truncated_poly, resolve_quotient};

    #[test]
    fn ground_field() {
        let c = de_rham(&free_skew_algebra(Vec::new(), Vec::new()).unwrap(), 3).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.form_degree(0), 0);
    }

    #[test]
    fn leibniz_on_polynomials() {
        let c = de_rham(&parse_algebra_spec("free x").unwrap(), 2).unwrap();
        let x2 = c.index_of("x^2").unwrap();
        let xdx = c.index_of("x*dx").unwrap();
        assert_eq!(c.d(x2), &[(xdx, Rational::from_integer(2.into()))]);
        assert!(c.index_of("dx^2").is_none());
        assert!(c.check_identities());
    }

    #[test]
    fn odd_generator_has_even_differential() {
        let c = de_rham(&parse_algebra_spec("free x:w=1; xi:odd:w=1; window 6").unwrap(), 4).unwrap();
        for k in 1..=4 {
            let label = if k == 1 { "dxi".to_string() } else { format!("dxi^{k}") };
            assert!(c.index_of(&label).is_some(), "{label}");
        }
        assert!(c.check_identities());
    }

    #[test]
    fn resolution_complex_is_a_complex() {
        for m in 1..=3 {
            let c = de_rham(&resolve_quotient(m, 8).unwrap(), 3).unwrap();
            assert!(c.check_identities());
        }
    }

    #[test]
    fn truncation_levels() {
        let c = de_rham(&parse_algebra_spec("free x").unwrap(), 3).unwrap();
        let r0 = truncate_forms(&c, 0).unwrap();
        assert!(r0.basis().iter().all(|k| c.form_degree(*k) == 0));
        let r1 = truncate_forms(&c, 1).unwrap();
        assert_eq!(r1.basis().len(), c.dim());
        assert!(truncate_forms(&c, 4).is_err());
    }

    #[test]
    fn non_free_input_rejected() {
        assert!(matches!(
            de_rham(&quotient_truncated_poly(2).unwrap(), 1),
            Err(Error::NotFree(_))
        ));
    }
}
