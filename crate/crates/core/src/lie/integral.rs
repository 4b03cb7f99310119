//! Cocycles of `g ⊗ A` built from an invariant polynomial and a functional on forms.
//!
//! For `P = Tr(M^{i+1})` (polarized) and `i <= n <= 2i` the `(n+1)`-cochain is
//!
//! ```text
//! c(ξ_0, ..., ξ_n) = Σ_σ sgn(σ) Λ( P(ξ_σ0, [ξ_σ1, ξ_σ2], ..., [ξ_σ(2b-1), ξ_σ(2b)], dξ_σ(2b+1), ..., dξ_σn) )
//! ```
//!
//! with `b = n - i` brackets and `e = 2i - n` differentials, so that the
//! argument of `Λ` is a scalar `e`-form. Basis elements of `A` are read as
//! Laurent monomials `x^w` in the weight coordinates, which covers polynomial
//! rings, Laurent windows and the crossing lines.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::chains::CeComplex;
use super::cochains::Cochain;
use super::presentation::LiePresentation;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Scalar form: `(exponents, mask of dx_j)` to coefficient.
type Form = BTreeMap<(Vec<i64>, u32), Rational>;
type FormMatrix = Vec<Vec<Form>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormFunctional {
    /// Constant term of a 0-form.
    Evaluation,
    /// Coefficient of `x^{-1} dx` of a 1-form in one variable.
    Residue,
    /// For `α = f dx + g dy`, the constant term of `∂_x g - ∂_y f`: the
    /// `dx∧dy` coefficient of `dα` at the origin.
    CurlAtOrigin,
}

impl FormFunctional {
    fn form_degree(self) -> usize {
        match self {
            FormFunctional::Evaluation => 0,
            FormFunctional::Residue | FormFunctional::CurlAtOrigin => 1,
        }
    }

    fn arity(self) -> Option<usize> {
        match self {
            FormFunctional::Evaluation => None,
            FormFunctional::Residue => Some(1),
            FormFunctional::CurlAtOrigin => Some(2),
        }
    }

    fn apply(self, f: &Form) -> Rational {
        let get = |e: &[i64], mask: u32| f.get(&(e.to_vec(), mask)).cloned().unwrap_or_else(Rational::zero);
        match self {
            FormFunctional::Evaluation => f
                .iter()
                .filter(|((e, m), _)| *m == 0 && e.iter().all(|x| *x == 0))
                .map(|(_, c)| c.clone())
                .sum(),
            FormFunctional::Residue => get(&[-1], 1),
            FormFunctional::CurlAtOrigin => get(&[1, 0], 2) - get(&[0, 1], 1),
        }
    }
}

fn wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::new();
    for ((ea, ma), ca) in a {
        for ((eb, mb), cb) in b {
            if ma & mb != 0 {
                continue;
            }
            let mut swaps = 0;
            for j in 0..32 {
                if mb & (1 << j) != 0 {
                    swaps += (ma >> (j + 1)).count_ones();
                }
            }
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let slot = out.entry((e, ma | mb)).or_insert_with(Rational::zero);
            if swaps % 2 == 1 {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn form_parity(m: &FormMatrix) -> bool {
    m.iter()
        .flatten()
        .flat_map(|f| f.keys())
        .any(|(_, mask)| mask.count_ones() % 2 == 1)
}

fn mat_mul(a: &FormMatrix, b: &FormMatrix) -> FormMatrix {
    let n = a.len();
    let mut out = vec![vec![Form::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Form::new();
            for k in 0..n {
                for (key, c) in wedge(&a[i][k], &b[k][j]) {
                    *acc.entry(key).or_insert_with(Rational::zero) += c;
                }
            }
            acc.retain(|_, c| !c.is_zero());
            out[i][j] = acc;
        }
    }
    out
}

fn trace(m: &FormMatrix) -> Form {
    let mut acc = Form::new();
    for (i, row) in m.iter().enumerate() {
        for (k, c) in &row[i] {
            *acc.entry(k.clone()).or_insert_with(Rational::zero) += c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element passes over the entries to its right
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// The cocycle attached to `Tr(M^{i+1})`, degree data `n` and a functional `Λ`.
#[derive(Clone, Debug)]
pub struct IntegralCocycle {
    pub i: usize,
    pub n: usize,
    pub functional: FormFunctional,
    outer: Vec<(Vec<usize>, bool)>,
    inner: Vec<(Vec<usize>, bool)>,
}

pub fn integral_cocycle(
    lie: &LiePresentation,
    i: usize,
    n: usize,
    functional: FormFunctional,
) -> Result<IntegralCocycle> {
    if i == 0 || n < i || n > 2 * i {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= n <= 2i, got i={i}, n={n}"
        )));
    }
    if !lie.exponents.contains(&i) {
        return Err(Error::InvalidArgument(format!(
            "Tr(M^{}) is not a basic invariant of {}",
            i + 1,
            lie.name()
        )));
    }
    if functional.form_degree() != 2 * i - n {
        return Err(Error::InvalidArgument(format!(
            "the functional eats {}-forms but (i, n) = ({i}, {n}) produces {}-forms",
            functional.form_degree(),
            2 * i - n
        )));
    }
    Ok(IntegralCocycle {
        i,
        n,
        functional,
        outer: permutations(n + 1),
        inner: permutations(i + 1),
    })
}

impl IntegralCocycle {
    fn zero_form_matrix(&self, cx: &CeComplex, g: u32) -> FormMatrix {
        let gen = &cx.gens[g as usize];
        let n = cx.spec.lie.n;
        let mut m = vec![vec![Form::new(); n]; n];
        for (r, c, x) in &cx.spec.lie.matrices[gen.lie] {
            m[*r][*c].insert((gen.weight.clone(), 0), x.clone());
        }
        m
    }

    fn differential(&self, cx: &CeComplex, g: u32) -> FormMatrix {
        let base = self.zero_form_matrix(cx, g);
        base.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|f| {
                        let mut out = Form::new();
                        for ((e, _), c) in f {
                            for j in 0..e.len() {
                                if e[j] != 0 {
                                    let mut e2 = e.clone();
                                    e2[j] -= 1;
                                    out.insert((e2, 1 << j), c.clone() * Rational::from_integer(e[j].into()));
                                }
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect()
    }

    fn polarized(&self, args: &[FormMatrix]) -> Form {
        let parity: Vec<bool> = args.iter().map(form_parity).collect();
        let mut acc = Form::new();
        for (perm, _) in &self.inner {
            // Koszul sign of reordering the arguments
            let mut neg = false;
            for a in 0..perm.len() {
                for b in a + 1..perm.len() {
                    if perm[a] > perm[b] && parity[perm[a]] && parity[perm[b]] {
                        neg = !neg;
                    }
                }
            }
            let mut prod = args[perm[0]].clone();
            for p in &perm[1..] {
                prod = mat_mul(&prod, &args[*p]);
            }
            for (k, c) in trace(&prod) {
                let slot = acc.entry(k).or_insert_with(Rational::zero);
                if neg {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        let scale = Rational::one() / Rational::from_integer((self.inner.len() as i64).into());
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c * &scale))
            .collect()
    }
}

impl Cochain for IntegralCocycle {
    fn degree(&self) -> usize {
        self.n + 1
    }

    fn eval(&self, cx: &CeComplex, mono: &[u32]) -> Rational {
        if mono.len() != self.n + 1 || mono.iter().any(|g| !cx.gens[*g as usize].odd) {
            return Rational::zero();
        }
        if let Some(r) = self.functional.arity() {
            if cx.spec.algebra.weight_arity() != r {
                return Rational::zero();
            }
        }
        // a trace of root vectors vanishes unless their torus weights cancel
        let mut torus = vec![0i64; cx.gens[mono[0] as usize].torus.len()];
        for g in mono {
            for (t, x) in torus.iter_mut().zip(&cx.gens[*g as usize].torus) {
                *t += x;
            }
        }
        if torus.iter().any(|t| *t != 0) {
            return Rational::zero();
        }
        let b = self.n - self.i;
        let mut acc = Rational::zero();
        for (sigma, odd) in &self.outer {
            let xi: Vec<u32> = sigma.iter().map(|s| mono[*s]).collect();
            let mut args = vec![self.zero_form_matrix(cx, xi[0])];
            for k in 0..b {
                let p = self.zero_form_matrix(cx, xi[1 + 2 * k]);
                let q = self.zero_form_matrix(cx, xi[2 + 2 * k]);
                let pq = mat_mul(&p, &q);
                let qp = mat_mul(&q, &p);
                let comm: FormMatrix = pq
                    .into_iter()
                    .zip(qp)
                    .map(|(r1, r2)| {
                        r1.into_iter()
                            .zip(r2)
                            .map(|(mut f, g)| {
                                for (k, c) in g {
                                    *f.entry(k).or_insert_with(Rational::zero) -= c;
                                }
                                f.retain(|_, c| !c.is_zero());
                                f
                            })
                            .collect()
                    })
                    .collect();
                args.push(comm);
            }
            for g in &xi[1 + 2 * b..] {
                args.push(self.differential(cx, *g));
            }
            let v = self.functional.apply(&self.polarized(&args));
            if *odd {
                acc -= v;
            } else {
                acc += v;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{crossing_lines, free_skew_algebra, laurent_window, parse_algebra_spec};
    use crate::lie::{
        cup_product, is_closed, is_coboundary, lie_presentation, nonexact_certificate, CeComplexSpec, Mode,
    };

    fn sl2() -> LiePresentation {
        lie_presentation("sl", 2).unwrap()
    }

    fn complex(a: crate::algebra::GradedAlgebraPresentation, mode: Mode) -> CeComplex {
        CeComplex::new(CeComplexSpec::new(sl2(), a, mode)).unwrap()
    }

    #[test]
    fn admissible_range() {
        assert!(integral_cocycle(&sl2(), 1, 0, FormFunctional::Evaluation).is_err());
        assert!(integral_cocycle(&sl2(), 1, 3, FormFunctional::Evaluation).is_err());
        assert!(integral_cocycle(&sl2(), 2, 3, FormFunctional::Residue).is_err());
        assert!(integral_cocycle(&sl2(), 1, 1, FormFunctional::Evaluation).is_err());
        assert!(integral_cocycle(&sl2(), 1, 2, FormFunctional::Evaluation).is_ok());
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|p| p.1).count(), 3);
        for (p, odd) in perms {
            let inversions = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .filter(|(a, b)| p[*a] > p[*b])
                .count();
            assert_eq!(odd, inversions % 2 == 1);
        }
    }

    #[test]
    fn cartan_cocycle_on_the_ground_field() {
        let pt = complex(free_skew_algebra(vec![], vec![]).unwrap(), Mode::Absolute);
        let c = integral_cocycle(&sl2(), 1, 2, FormFunctional::Evaluation).unwrap();
        let top = pt.slice(3, &[], None);
        assert_eq!(top.dim(), 1);
        // e∧h∧f spans H_3, so a nonzero value means a nonzero class
        assert!(!c.eval(&pt, &top.basis[0]).is_zero());
        assert!(is_closed(&c, &pt, &[]));
    }

    #[test]
    fn plane_cocycle_and_its_square() {
        let plane = parse_algebra_spec("free x:w=1,0; y:w=0,1; window 2,2").unwrap();
        let rel = complex(plane.clone(), Mode::Relative);
        let abs = complex(plane, Mode::Absolute);
        let w = integral_cocycle(&sl2(), 1, 1, FormFunctional::CurlAtOrigin).unwrap();
        for wt in [[0, 1], [1, 0], [1, 1], [2, 1], [2, 2]] {
            assert!(is_closed(&w, &abs, &wt), "{wt:?}");
        }
        assert!(!is_coboundary(&w, &rel, &[1, 1]).unwrap().is_in_image());
        let ww = cup_product(&w, &w);
        assert!(is_closed(&ww, &abs, &[2, 2]));
        assert!(is_coboundary(&ww, &rel, &[2, 2]).unwrap().is_in_image());
    }

    #[test]
    fn crossing_lines_square_vanishes() {
        let cl = crossing_lines(2).unwrap();
        let rel = complex(cl.clone(), Mode::Relative);
        let abs = complex(cl, Mode::Absolute);
        let w = integral_cocycle(&sl2(), 1, 1, FormFunctional::CurlAtOrigin).unwrap();
        assert!(is_closed(&w, &abs, &[1, 1]));
        assert!(!is_coboundary(&w, &rel, &[1, 1]).unwrap().is_in_image());
        let ww = cup_product(&w, &w);
        assert!(is_coboundary(&ww, &rel, &[2, 2]).unwrap().is_in_image());
    }

    #[test]
    fn affine_cocycle_on_laurent_window() {
        let lx = complex(laurent_window(4, 4).unwrap(), Mode::Absolute);
        let r = integral_cocycle(&sl2(), 1, 1, FormFunctional::Residue).unwrap();
        for wt in -2..=2 {
            assert!(is_closed(&r, &lx, &[wt]), "{wt}");
        }
        let within = |d: i64| -> Vec<bool> { lx.gens.iter().map(|g| g.weight[0].abs() <= d).collect() };
        let zero = [0, 0];
        assert!(nonexact_certificate(&r, &lx, &[0], Some(&zero), &within(1), &within(2))
            .unwrap()
            .is_some());
        let rr = cup_product(&r, &r);
        let (slice, z) = nonexact_certificate(&rr, &lx, &[0], Some(&zero), &within(2), &within(4))
            .unwrap()
            .unwrap();
        assert_eq!(slice.k, 4);
        assert!(!z.is_empty());
    }
}
