use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::dsl::AlgebraSpec;
use super::presentation::{
    collect, BasisElem, FreeData, GenPoly, GeneratorSpec, GradedAlgebraPresentation, ModuleSpec, Window,
};
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};

fn monomial_label(gens: &[GeneratorSpec], exps: &[u32]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e > 0)
        .map(|(g, e)| {
            if *e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn enumerate(
    gens: &[GeneratorSpec],
    hi: &[i64],
    k: usize,
    cur: &mut Vec<u32>,
    w: &mut Vec<i64>,
    out: &mut Vec<Vec<u32>>,
) {
    if k == gens.len() {
        out.push(cur.clone());
        return;
    }
    let g = &gens[k];
    let max = if g.is_odd() {
        1
    } else {
        g.weight
            .iter()
            .zip(hi)
            .zip(w.iter())
            .filter(|((gw, _), _)| **gw > 0)
            .map(|((gw, h), cw)| ((h - cw) / gw).max(-1))
            .min()
            .unwrap_or(-1)
    };
    let mut e = 0u32;
    loop {
        if w.iter().zip(hi).any(|(a, b)| a > b) {
            break;
        }
        cur.push(e);
        enumerate(gens, hi, k + 1, cur, w, out);
        cur.pop();
        if i64::from(e) >= max {
            break;
        }
        e += 1;
        for (a, b) in w.iter_mut().zip(&g.weight) {
            *a += b;
        }
    }
    for (a, b) in w.iter_mut().zip(&g.weight) {
        *a -= b * i64::from(e);
    }
}

fn monomial_weight(gens: &[GeneratorSpec], exps: &[u32], arity: usize) -> Vec<i64> {
    let mut w = vec![0; arity];
    for (g, e) in gens.iter().zip(exps) {
        for (a, b) in w.iter_mut().zip(&g.weight) {
            *a += b * i64::from(*e);
        }
    }
    w
}

/// Sign and exponents of `m1 * m2`, or `None` when an odd generator repeats.
pub(crate) fn free_product(gens: &[GeneratorSpec], m1: &[u32], m2: &[u32]) -> Option<(bool, Vec<u32>)> {
    // Count inversions: odd generator a in m1, odd generator b in m2 with b < a.
    let mut negative = false;
    for a in 0..gens.len() {
        if gens[a].is_odd() && m1[a] > 0 && m2[a] > 0 {
            return None;
        }
        if !(gens[a].is_odd() && m1[a] > 0) {
            continue;
        }
        for b in 0..a {
            if gens[b].is_odd() && m2[b] > 0 {
                negative = !negative;
            }
        }
    }
    Some((negative, m1.iter().zip(m2).map(|(a, b)| a + b).collect()))
}

/// Free skew-commutative algebra on `gens`, truncated to weights `<= window`.
pub fn free_skew_algebra(gens: Vec<GeneratorSpec>, window: Vec<i64>) -> Result<GradedAlgebraPresentation> {
    free_dga(gens, Vec::new(), window)
}

/// Free algebra with a differential given on generators (one polynomial per
/// generator, or an empty list for `δ = 0`).
pub fn free_dga(gens: Vec<GeneratorSpec>, delta: Vec<GenPoly>, window: Vec<i64>) -> Result<GradedAlgebraPresentation> {
    let spec = AlgebraSpec::Free {
        gens: gens.clone(),
        delta: delta.clone(),
        window: window.clone(),
    };
    build_free(gens, delta, window, spec)
}

pub(crate) fn build_free(
    gens: Vec<GeneratorSpec>,
    delta: Vec<GenPoly>,
    window: Vec<i64>,
    spec: AlgebraSpec,
) -> Result<GradedAlgebraPresentation> {
    let arity = window.len();
    for (i, g) in gens.iter().enumerate() {
        if g.degree < 0 {
            return Err(Error::InvalidArgument(format!(
                "generator {} has negative degree",
                g.name
            )));
        }
        if g.weight.len() != arity {
            return Err(Error::DimensionMismatch {
                expected: arity,
                found: g.weight.len(),
            });
        }
        if g.weight.iter().any(|w| *w < 0) {
            return Err(Error::InvalidArgument(format!(
                "generator {} has a negative weight",
                g.name
            )));
        }
        if !g.is_odd() && g.weight.iter().all(|w| *w == 0) {
            return Err(Error::InvalidArgument(format!(
                "even generator {} has zero weight; window is infinite",
                g.name
            )));
        }
        if gens[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::InvalidArgument(format!("duplicate generator {}", g.name)));
        }
    }
    if !delta.is_empty() && delta.len() != gens.len() {
        return Err(Error::DimensionMismatch {
            expected: gens.len(),
            found: delta.len(),
        });
    }
    let mut exps = Vec::new();
    enumerate(&gens, &window, 0, &mut Vec::new(), &mut vec![0; arity], &mut exps);
    exps.sort_by_key(|e| {
        let w = monomial_weight(&gens, e, arity);
        (w.iter().sum::<i64>(), w, e.iter().rev().cloned().collect::<Vec<_>>())
    });
    let index: BTreeMap<Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let basis: Vec<BasisElem> = exps
        .iter()
        .map(|e| BasisElem {
            label: monomial_label(&gens, e),
            degree: gens.iter().zip(e).map(|(g, x)| g.degree * i64::from(*x)).sum(),
            weight: monomial_weight(&gens, e, arity),
            boundary: false,
        })
        .collect();
    let unit = index[&vec![0; gens.len()]];
    let win = Window {
        lo: vec![0; arity],
        hi: window,
    };
    let mut pres = GradedAlgebraPresentation::assemble(basis, unit, win, spec, |i, j| {
        match free_product(&gens, &exps[i], &exps[j]) {
            None => (Vec::new(), true),
            Some((neg, e)) => match index.get(&e) {
                Some(k) => (vec![(*k, if neg { -Rational::one() } else { Rational::one() })], true),
                None => (Vec::new(), false),
            },
        }
    });
    if !delta.is_empty() {
        let mut on_gens = Vec::with_capacity(gens.len());
        for (gi, poly) in delta.iter().enumerate() {
            let mut acc = BTreeMap::new();
            for (c, e) in poly {
                if e.len() != gens.len() {
                    return Err(Error::DimensionMismatch {
                        expected: gens.len(),
                        found: e.len(),
                    });
                }
                let deg: i64 = gens.iter().zip(e).map(|(g, x)| g.degree * i64::from(*x)).sum();
                let w = monomial_weight(&gens, e, arity);
                if w != gens[gi].weight || deg != gens[gi].degree - 1 {
                    return Err(Error::InvalidArgument(format!(
                        "differential of {} is not homogeneous (needs degree {} and weight {:?})",
                        gens[gi].name,
                        gens[gi].degree - 1,
                        gens[gi].weight
                    )));
                }
                if gens.iter().zip(e).any(|(g, x)| g.is_odd() && *x > 1) {
                    continue;
                }
                let Some(k) = index.get(e) else { continue };
                let slot = acc.entry(*k).or_insert_with(Rational::zero);
                *slot += c;
            }
            on_gens.push(collect(
                acc.into_iter()
                    .filter(|(_, v): &(usize, Rational)| !v.is_zero())
                    .collect(),
            ));
        }
        let d = extend_odd_derivation(&pres, &gens, &exps, &on_gens);
        pres.delta = Some(d);
    }
    pres.free = Some(FreeData { gens, exps, delta });
    Ok(pres)
}

/// Extends an odd derivation given on generators to every basis monomial of
/// a free algebra, via `D(g m) = D(g) m + (-1)^|g| g D(m)`.
pub(crate) fn extend_odd_derivation(
    pres: &GradedAlgebraPresentation,
    gens: &[GeneratorSpec],
    exps: &[Vec<u32>],
    on_gens: &[SparseVec],
) -> Vec<SparseVec> {
    let index: BTreeMap<&[u32], usize> = exps.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut d: Vec<SparseVec> = vec![Vec::new(); exps.len()];
    // each monomial factors as (first generator) * (smaller monomial)
    let mut order: Vec<usize> = (0..exps.len()).collect();
    order.sort_by_key(|i| exps[*i].iter().sum::<u32>());
    for &m in &order {
        let Some(g) = exps[m].iter().position(|x| *x > 0) else {
            continue;
        };
        let mut rest = exps[m].clone();
        rest[g] -= 1;
        let r = index[rest.as_slice()];
        let mut e = vec![0; gens.len()];
        e[g] = 1;
        let gen_idx = index[e.as_slice()];
        let (t1, _) = pres.mul(&on_gens[g], &[(r, Rational::one())]);
        let (t2, _) = pres.mul(&[(gen_idx, Rational::one())], &d[r]);
        let sign = if gens[g].is_odd() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut acc = BTreeMap::new();
        for (k, v) in t1 {
            *acc.entry(k).or_insert_with(Rational::zero) += v;
        }
        for (k, v) in t2 {
            *acc.entry(k).or_insert_with(Rational::zero) += v * &sign;
        }
        d[m] = collect(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }
    d
}

/// `C[x]/(x^m)` graded by x-degree.
pub fn quotient_truncated_poly(m: i64) -> Result<GradedAlgebraPresentation> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "quotient exponent must be >= 1, got {m}"
        )));
    }
    let basis = (0..m)
        .map(|a| BasisElem {
            label: power_label("x", a),
            degree: 0,
            weight: vec![a],
            boundary: false,
        })
        .collect();
    let win = Window {
        lo: vec![0],
        hi: vec![m - 1],
    };
    Ok(GradedAlgebraPresentation::assemble(
        basis,
        0,
        win,
        AlgebraSpec::Quot { m },
        |i, j| {
            let s = (i + j) as i64;
            if s < m {
                (vec![(i + j, Rational::one())], true)
            } else {
                (Vec::new(), true)
            }
        },
    ))
}

fn power_label(var: &str, a: i64) -> String {
    match a {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{a}"),
    }
}

/// `C[x, y]/(xy)` with bi-grading, truncated at total degree `w`.
pub fn crossing_lines(w: i64) -> Result<GradedAlgebraPresentation> {
    if w < 0 {
        return Err(Error::InvalidArgument("window must be nonnegative".into()));
    }
    // (x-degree, y-degree); at most one is nonzero
    let mut degs = vec![(0i64, 0i64)];
    degs.extend((1..=w).map(|a| (a, 0)));
    degs.extend((1..=w).map(|b| (0, b)));
    let basis = degs
        .iter()
        .map(|&(a, b)| BasisElem {
            label: if b == 0 {
                power_label("x", a)
            } else {
                power_label("y", b)
            },
            degree: 0,
            weight: vec![a, b],
            boundary: false,
        })
        .collect();
    let win = Window {
        lo: vec![0, 0],
        hi: vec![w, w],
    };
    let pos: BTreeMap<(i64, i64), usize> = degs.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    Ok(GradedAlgebraPresentation::assemble(
        basis,
        0,
        win,
        AlgebraSpec::Cross { w },
        |i, j| {
            let (a1, b1) = degs[i];
            let (a2, b2) = degs[j];
            let (a, b) = (a1 + a2, b1 + b2);
            if a > 0 && b > 0 {
                return (Vec::new(), true);
            }
            match pos.get(&(a, b)) {
                Some(k) => (vec![(*k, Rational::one())], true),
                None => (Vec::new(), false),
            }
        },
    ))
}

/// Laurent polynomials `x^a`, `-d_minus <= a <= d_plus`, with truncated products.
pub fn laurent_window(d_minus: i64, d_plus: i64) -> Result<GradedAlgebraPresentation> {
    if d_minus < 0 || d_plus < 0 {
        return Err(Error::InvalidArgument(
            "Laurent window bounds must be nonnegative".into(),
        ));
    }
    let basis = (-d_minus..=d_plus)
        .map(|a| BasisElem {
            label: if a < 0 { format!("x^{a}") } else { power_label("x", a) },
            degree: 0,
            weight: vec![a],
            boundary: false,
        })
        .collect();
    let win = Window {
        lo: vec![-d_minus],
        hi: vec![d_plus],
    };
    let off = d_minus;
    Ok(GradedAlgebraPresentation::assemble(
        basis,
        d_minus as usize,
        win,
        AlgebraSpec::Laurent { d_minus, d_plus },
        |i, j| {
            let s = i as i64 - off + j as i64 - off;
            if (-d_minus..=d_plus).contains(&s) {
                (vec![((s + off) as usize, Rational::one())], true)
            } else {
                (Vec::new(), false)
            }
        },
    ))
}

/// `C[x] + M` with `M = C[x, 1/x]/C[x]` square-zero. Weights are
/// (x-degree, M-count): `x^a` has `(a, 0)` and `x^-b` has `(-b, 1)`.
pub fn square_zero_extension(d_plus: i64, d_minus: i64) -> Result<GradedAlgebraPresentation> {
    if d_minus < 1 {
        return Err(Error::InvalidArgument(format!(
            "pole bound D- must be >= 1, got {d_minus}"
        )));
    }
    if d_plus < 0 {
        return Err(Error::InvalidArgument("D+ must be nonnegative".into()));
    }
    let np = (d_plus + 1) as usize;
    // exponent of x for each basis element
    let mut ex: Vec<i64> = (0..=d_plus).collect();
    ex.extend((1..=d_minus).map(|b| -b));
    let basis: Vec<BasisElem> = ex
        .iter()
        .map(|&a| BasisElem {
            label: if a < 0 { format!("x^{a}") } else { power_label("x", a) },
            degree: 0,
            weight: vec![a, i64::from(a < 0)],
            boundary: false,
        })
        .collect();
    let index_of = |a: i64| if a >= 0 { a as usize } else { np + (-a - 1) as usize };
    let rule = |i: usize, j: usize| {
        let (a, b) = (ex[i], ex[j]);
        if a < 0 && b < 0 {
            return (Vec::new(), true);
        }
        let s = a + b;
        if a >= 0 && b >= 0 {
            if s > d_plus {
                return (Vec::new(), false);
            }
            return (vec![(index_of(s), Rational::one())], true);
        }
        if s < 0 {
            (vec![(index_of(s), Rational::one())], true)
        } else {
            (Vec::new(), true)
        }
    };
    let win = Window {
        lo: vec![-d_minus, 0],
        hi: vec![d_plus, 1],
    };
    let mut pres = GradedAlgebraPresentation::assemble(basis, 0, win, AlgebraSpec::SqZero { d_plus, d_minus }, rule);
    let m_idx: Vec<usize> = (np..ex.len()).collect();
    let mut action = BTreeMap::new();
    for i in 0..ex.len() {
        for (k, &mi) in m_idx.iter().enumerate() {
            let v = pres.product(i, mi);
            if !v.is_empty() {
                let mapped: SparseVec = v.iter().map(|(l, c)| (l - np, c.clone())).collect();
                action.insert((i, k), mapped);
            }
        }
    }
    pres.module = Some(ModuleSpec {
        basis: m_idx
            .iter()
            .map(|&i| (pres.basis[i].label.clone(), pres.basis[i].weight.clone()))
            .collect(),
        action,
        embedding: Some(m_idx),
    });
    Ok(pres)
}

/// Resolution of `C[x]/(x^m)`: `x` even of weight 1, `xi` odd of weight `m`, `δ xi = x^m`.
pub fn resolve_quotient(m: i64, window: i64) -> Result<GradedAlgebraPresentation> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "quotient exponent must be >= 1, got {m}"
        )));
    }
    let gens = vec![GeneratorSpec::even("x", vec![1]), GeneratorSpec::odd("xi", vec![m])];
    let delta = vec![Vec::new(), vec![(Rational::one(), vec![m as u32, 0])]];
    free_dga(gens, delta, vec![window])
}
