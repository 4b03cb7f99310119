use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::chains::{CeComplex, ChainSlice, InvariantSlice, Mode};
use crate::error::{Error, Result};
use crate::exact::{rank_kernel, solve_membership, sparse_dot, Membership, Rational, SparseMatQ, SparseVec};

/// A linear functional on chain monomials of a fixed degree.
pub trait Cochain {
    fn degree(&self) -> usize;
    fn eval(&self, cx: &CeComplex, mono: &[u32]) -> Rational;
}

/// Cochain stored by its values on canonical monomials (absent = 0).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CochainClass {
    pub degree: usize,
    pub weight: Vec<i64>,
    pub values: BTreeMap<Vec<u32>, Rational>,
}

impl Cochain for CochainClass {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval(&self, _: &CeComplex, mono: &[u32]) -> Rational {
        self.values.get(mono).cloned().unwrap_or_else(Rational::zero)
    }
}

impl CochainClass {
    /// Tabulates `f` on every basis monomial of `slice`.
    pub fn tabulate(f: &dyn Cochain, cx: &CeComplex, slice: &ChainSlice) -> Self {
        let values = slice
            .basis
            .iter()
            .filter_map(|m| {
                let v = f.eval(cx, m);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        CochainClass {
            degree: f.degree(),
            weight: slice.weight.clone(),
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds the coboundary of `g`, i.e. `g ∘ ∂`, on the monomials of `slice`.
    pub fn add_coboundary(&self, g: &dyn Cochain, cx: &CeComplex, slice: &ChainSlice) -> Self {
        let mut out = self.clone();
        for m in &slice.basis {
            let v = eval_on_terms(g, cx, &cx.boundary_of(m).0);
            if !v.is_zero() {
                let slot = out.values.entry(m.clone()).or_insert_with(Rational::zero);
                *slot += v;
            }
        }
        out.values.retain(|_, v| !v.is_zero());
        out
    }
}

fn eval_on_terms<'a>(
    f: &dyn Cochain,
    cx: &CeComplex,
    terms: impl IntoIterator<Item = (&'a Vec<u32>, &'a Rational)>,
) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in terms {
        let v = f.eval(cx, m);
        if !v.is_zero() {
            acc += v * c;
        }
    }
    acc
}

/// The unit 0-cochain.
#[derive(Clone, Copy, Debug)]
pub struct UnitCochain;

impl Cochain for UnitCochain {
    fn degree(&self) -> usize {
        0
    }

    fn eval(&self, _: &CeComplex, mono: &[u32]) -> Rational {
        if mono.is_empty() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

/// Cup product, evaluated by summing over shuffles with Koszul signs.
pub struct Cup<'a> {
    pub left: &'a dyn Cochain,
    pub right: &'a dyn Cochain,
}

pub fn cup_product<'a>(left: &'a dyn Cochain, right: &'a dyn Cochain) -> Cup<'a> {
    Cup { left, right }
}

impl Cochain for Cup<'_> {
    fn degree(&self) -> usize {
        self.left.degree() + self.right.degree()
    }

    fn eval(&self, cx: &CeComplex, mono: &[u32]) -> Rational {
        let p = self.left.degree();
        if mono.len() != p + self.right.degree() {
            return Rational::zero();
        }
        let odd: Vec<bool> = mono.iter().map(|g| cx.gens[*g as usize].odd).collect();
        let mut acc = Rational::zero();
        // subsets of size p in increasing order
        let mut pick: Vec<usize> = (0..p).collect();
        loop {
            let mut chosen = vec![false; mono.len()];
            for i in &pick {
                chosen[*i] = true;
            }
            let left: Vec<u32> = pick.iter().map(|i| mono[*i]).collect();
            let right: Vec<u32> = (0..mono.len()).filter(|i| !chosen[*i]).map(|i| mono[i]).collect();
            let a = self.left.eval(cx, &left);
            if !a.is_zero() {
                let b = self.right.eval(cx, &right);
                if !b.is_zero() {
                    let mut neg = false;
                    for (j, cj) in chosen.iter().enumerate() {
                        if !*cj && odd[j] {
                            neg ^= pick.iter().filter(|i| **i > j && odd[**i]).count() % 2 == 1;
                        }
                    }
                    let v = a * b;
                    acc += if neg { -v } else { v };
                }
            }
            // next combination
            let mut i = p;
            loop {
                if i == 0 {
                    return acc;
                }
                i -= 1;
                if pick[i] < mono.len() - p + i {
                    pick[i] += 1;
                    for j in i + 1..p {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
            if p == 0 {
                return acc;
            }
        }
    }
}

/// Checks `f ∘ ∂ = 0` on every chain of degree `deg f + 1` in the given
/// weight. Chains whose boundary leaves the algebra's window are skipped,
/// since their boundary is not known exactly.
pub fn is_closed(f: &dyn Cochain, cx: &CeComplex, weight: &[i64]) -> bool {
    let above = cx.slice(f.degree() as i64 + 1, weight, None);
    above.basis.iter().all(|m| {
        let (terms, truncated) = cx.boundary_of(m);
        truncated || eval_on_terms(f, cx, &terms).is_zero()
    })
}

fn reduced_boundary(cx: &CeComplex, src: &InvariantSlice, dst: &InvariantSlice) -> Result<SparseMatQ> {
    let (b, trusted) = cx.invariant_boundary(src, dst)?;
    if !trusted || !src.ambient.complete || !dst.ambient.complete {
        return Err(Error::Untrusted(format!(
            "slice k={}, weight {:?}",
            src.ambient.k, src.ambient.weight
        )));
    }
    Ok(b)
}

/// Decides whether a cochain of the relative complex is a coboundary in the
/// given weight. A witness is a cochain on invariant chains of one degree
/// lower (in reduced coordinates); a certificate is an invariant cycle on
/// which `f` is nonzero.
pub fn is_coboundary(f: &dyn Cochain, cx: &CeComplex, weight: &[i64]) -> Result<Membership> {
    if cx.spec.mode != Mode::Relative {
        return Err(Error::InvalidArgument(
            "coboundary test runs on the relative complex".into(),
        ));
    }
    let k = f.degree() as i64;
    let here = cx.invariant_slice(k, weight, None)?;
    let below = cx.invariant_slice(k - 1, weight, None)?;
    let b = reduced_boundary(cx, &here, &below)?;
    let values: Vec<Rational> = here
        .basis
        .iter()
        .map(|v| eval_on_terms(f, cx, v.iter().map(|(i, c)| (&here.ambient.basis[*i], c))))
        .collect();
    let answer = solve_membership(&b.transpose(), &values)?;
    if let Membership::NotInImage { certificate } = &answer {
        debug_assert!(b.mul_vec(certificate).is_ok_and(|y| y.iter().all(|x| x.is_zero())));
    }
    Ok(answer)
}

/// Decides whether an invariant chain (reduced coordinates of degree `k`) is a boundary.
pub fn is_boundary(cx: &CeComplex, k: i64, weight: &[i64], chain: &[Rational]) -> Result<Membership> {
    let here = cx.invariant_slice(k, weight, None)?;
    let above = cx.invariant_slice(k + 1, weight, None)?;
    if chain.len() != here.dim() {
        return Err(Error::DimensionMismatch {
            expected: here.dim(),
            found: chain.len(),
        });
    }
    let b = reduced_boundary(cx, &above, &here)?;
    solve_membership(&b, chain)
}

/// Searches for an exact cycle `z` with `f(z) ≠ 0`, built from the generators
/// allowed by `source` and with boundaries computed against `target`. Such a
/// cycle proves that `f` is not a coboundary, even when the complex is infinite.
pub fn nonexact_certificate(
    f: &dyn Cochain,
    cx: &CeComplex,
    weight: &[i64],
    torus: Option<&[i64]>,
    source: &[bool],
    target: &[bool],
) -> Result<Option<(ChainSlice, SparseVec)>> {
    let k = f.degree() as i64;
    let src = cx.slice_with(k, weight, torus, Some(source));
    let dst = cx.slice_with(k - 1, weight, torus, Some(target));
    let (d, trusted) = cx.boundary(&src, &dst)?;
    if !trusted {
        return Err(Error::Untrusted("boundary used a truncated product".into()));
    }
    let values: SparseVec = src
        .basis
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            let v = f.eval(cx, m);
            (!v.is_zero()).then_some((i, v))
        })
        .collect();
    let kernel = rank_kernel(&d).kernel;
    Ok(kernel
        .into_iter()
        .find(|z| !sparse_dot(z, &values).is_zero())
        .map(|z| (src, z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_algebra_spec;
    use crate::lie::{integral_cocycle, lie_presentation, CeComplexSpec, FormFunctional};

    fn plane(mode: Mode) -> CeComplex {
        let a = parse_algebra_spec("free x:w=1,0; y:w=0,1; window 2,2").unwrap();
        CeComplex::new(CeComplexSpec::new(lie_presentation("sl", 2).unwrap(), a, mode)).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let cx = plane(Mode::Relative);
        let w = integral_cocycle(&cx.spec.lie, 1, 1, FormFunctional::CurlAtOrigin).unwrap();
        let slice = cx.slice(2, &[1, 1], None);
        let plain = CochainClass::tabulate(&w, &cx, &slice);
        assert!(!plain.is_zero());
        assert_eq!(
            CochainClass::tabulate(&cup_product(&UnitCochain, &w), &cx, &slice),
            plain
        );
        assert_eq!(
            CochainClass::tabulate(&cup_product(&w, &UnitCochain), &cx, &slice),
            plain
        );
    }

    #[test]
    fn square_class_ignores_the_representative() {
        let cx = plane(Mode::Relative);
        let w = integral_cocycle(&cx.spec.lie, 1, 1, FormFunctional::CurlAtOrigin).unwrap();
        let slice = cx.slice(2, &[1, 1], None);
        // perturb ω by the coboundary of a 1-cochain supported on one monomial
        let one = cx.slice(1, &[1, 1], None);
        let g = CochainClass {
            degree: 1,
            weight: vec![1, 1],
            values: [(one.basis[0].clone(), Rational::one())].into(),
        };
        let moved = CochainClass::tabulate(&w, &cx, &slice).add_coboundary(&g, &cx, &slice);
        assert!(is_closed(&moved, &cx, &[1, 1]));
        assert!(!is_coboundary(&moved, &cx, &[1, 1]).unwrap().is_in_image());
        let sq = cup_product(&moved, &moved);
        assert!(is_coboundary(&sq, &cx, &[2, 2]).unwrap().is_in_image());
    }

    #[test]
    fn boundary_test_on_chains() {
        let cx = plane(Mode::Relative);
        let zero = vec![Rational::zero(); 3];
        assert!(is_boundary(&cx, 2, &[2, 2], &zero).unwrap().is_in_image());
        assert!(matches!(
            is_boundary(&cx, 2, &[2, 2], &[]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn absolute_mode_rejected_for_coboundary_test() {
        let cx = plane(Mode::Absolute);
        assert!(is_coboundary(&UnitCochain, &cx, &[0, 0]).is_err());
    }
}
