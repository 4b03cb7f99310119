use num_traits::One;
use serde::Serialize;

use super::product::{Monomial, PochLen, QProduct};
use super::weyl::WeylElement;
use crate::error::{Error, Result};
use crate::exact::QTSeries;

fn m(q: i64, t: i64, u: i64) -> Monomial {
    Monomial::unit(q, t, u)
}

/// `(tqu⁻²)(tq)(tqu²) / (u⁻²)(q)(qu²)` with all Pochhammers infinite.
pub fn kac_summand() -> QProduct {
    let mut p = QProduct::new();
    for a in [m(1, 1, -2), m(1, 1, 0), m(1, 1, 2)] {
        p = p.times_poch(&a, PochLen::Infinite, 1);
    }
    for a in [m(0, 0, -2), m(1, 0, 0), m(1, 0, 2)] {
        p = p.times_poch(&a, PochLen::Infinite, -1);
    }
    p
}

fn sum_over(terms: impl Iterator<Item = Result<QTSeries>>, n_q: i64, n_t: i64) -> Result<QTSeries> {
    let mut acc = QTSeries::zero(n_q, n_t);
    for s in terms {
        acc = acc.add(&s?);
    }
    Ok(acc)
}

fn check_stable(extra: &QTSeries, what: &str, n_max: i64) -> Result<()> {
    if extra.is_zero() {
        return Ok(());
    }
    let ((q, t), c) = extra.terms().next().expect("nonzero series has a term");
    Err(Error::NotStable(format!(
        "{what}: the terms at |n| = {} still contribute {c} at q^{q} t^{t}",
        n_max + 1
    )))
}

/// Weyl-group sum of the Kac summand over `|n| <= n_max`, both signs.
/// Fails unless adding `|n| = n_max + 1` changes nothing and every
/// coefficient is a Laurent polynomial in `u`.
pub fn kac_euler_series(n_q: i64, n_t: i64, n_max: i64) -> Result<QTSeries> {
    let base = kac_summand();
    let sum = sum_over(
        WeylElement::all_up_to(n_max)
            .into_iter()
            .map(|w| base.weyl(w).expand(n_q, n_t)),
        n_q,
        n_t,
    )?;
    let edge = [n_max + 1, -n_max - 1]
        .into_iter()
        .flat_map(|n| [WeylElement { n, eps: 1 }, WeylElement { n, eps: -1 }]);
    let extra = sum_over(edge.map(|w| base.weyl(w).expand(n_q, n_t)), n_q, n_t)?;
    check_stable(&extra, "Weyl sum", n_max)?;
    sum.assert_polynomial_in_u()?;
    Ok(sum)
}

/// Runs `f(0), f(1), ...` up to `f(limit)` and returns the first result that
/// is not a stability failure, with the cutoff used.
pub fn first_stable<T>(limit: i64, mut f: impl FnMut(i64) -> Result<T>) -> Result<(T, i64)> {
    let mut last = None;
    for n in 0..=limit {
        match f(n) {
            Ok(v) => return Ok((v, n)),
            Err(e @ Error::NotStable(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::NotStable(format!("no cutoff up to {limit}"))))
}

/// Weyl sum at the smallest stable cutoff `<= limit`.
pub fn stable_kac_series(n_q: i64, n_t: i64, limit: i64) -> Result<(QTSeries, i64)> {
    first_stable(limit, |n| kac_euler_series(n_q, n_t, n))
}

/// The `n`-th term of the bilateral sum, prefactor included:
/// `t^{2n} (1 - q^{2n}u²)/(1 - u²) · (t⁻¹u²)_{2n} / (tqu²)_{2n}`.
pub fn bilateral_term(n: i64) -> QProduct {
    let mut p = QProduct::monomial(&m(0, 2 * n, 0));
    for a in [m(1, 1, -2), m(1, 1, 0), m(1, 1, 2)] {
        p = p.times_poch(&a, PochLen::Infinite, 1);
    }
    for a in [m(1, 0, -2), m(1, 0, 0), m(1, 0, 2)] {
        p = p.times_poch(&a, PochLen::Infinite, -1);
    }
    p.times_factor(&m(2 * n, 0, 2), 1)
        .times_factor(&m(0, 0, 2), -1)
        .times_poch(&m(0, -1, 2), PochLen::Finite(2 * n), 1)
        .times_poch(&m(1, 1, 2), PochLen::Finite(2 * n), -1)
}

/// Bilateral sum over `|n| <= n_max`, with the same stability check.
pub fn bilateral_series(n_q: i64, n_t: i64, n_max: i64) -> Result<QTSeries> {
    let sum = sum_over((-n_max..=n_max).map(|n| bilateral_term(n).expand(n_q, n_t)), n_q, n_t)?;
    let extra = sum_over(
        [n_max + 1, -n_max - 1]
            .into_iter()
            .map(|n| bilateral_term(n).expand(n_q, n_t)),
        n_q,
        n_t,
    )?;
    check_stable(&extra, "bilateral sum", n_max)?;
    Ok(sum)
}

/// `1/(1-t) · (qt²)_∞ / (qt)_∞`.
pub fn product_formula(n_q: i64, n_t: i64) -> Result<QTSeries> {
    QProduct::new()
        .times_factor(&m(0, 1, 0), -1)
        .times_poch(&m(1, 2, 0), PochLen::Infinite, 1)
        .times_poch(&m(1, 1, 0), PochLen::Infinite, -1)
        .expand(n_q, n_t)
}

#[derive(Clone, Debug, Serialize)]
pub struct RamanujanReport {
    pub a: String,
    pub b: String,
    pub z: String,
    pub n_q: i64,
    pub n_t: i64,
    pub n_max: i64,
    /// Nonzero coefficients of `lhs - rhs` as `(q, t, coefficient)`.
    pub difference: Vec<(i64, i64, String)>,
    pub passed: bool,
}

/// Left side `Σ_{|k| <= n_max} (a)_k / (b)_k z^k` of the bilateral `₁Ψ₁` sum.
pub fn psi_lhs(a: &Monomial, b: &Monomial, z: &Monomial, n_q: i64, n_t: i64, n_max: i64) -> Result<QTSeries> {
    let term = |k: i64| -> Result<QTSeries> {
        QProduct::monomial(&z.pow(k)?)
            .times_poch(a, PochLen::Finite(k), 1)
            .times_poch(b, PochLen::Finite(k), -1)
            .expand(n_q, n_t)
    };
    let sum = sum_over((-n_max..=n_max).map(term), n_q, n_t)?;
    let extra = sum_over([n_max + 1, -n_max - 1].into_iter().map(term), n_q, n_t)?;
    check_stable(&extra, "1psi1 sum", n_max)?;
    Ok(sum)
}

/// Right side `(q)(b/a)(az)(q/az) / (b)(q/a)(z)(b/az)` of Ramanujan's sum.
pub fn psi_rhs(a: &Monomial, b: &Monomial, z: &Monomial, n_q: i64, n_t: i64) -> Result<QTSeries> {
    let q = m(1, 0, 0);
    let az = a.mul(z);
    let top = [q.clone(), b.div(a)?, az.clone(), q.div(&az)?];
    let bottom = [b.clone(), q.div(a)?, z.clone(), b.div(&az)?];
    let mut p = QProduct::new();
    for x in &top {
        p = p.times_poch(x, PochLen::Infinite, 1);
    }
    for x in &bottom {
        if x.q == 0 && x.t == 0 && x.u == 0 && x.c.is_one() {
            return Err(Error::Degenerate(format!("denominator factor ({x}; q)_∞ vanishes")));
        }
        p = p.times_poch(x, PochLen::Infinite, -1);
    }
    p.expand(n_q, n_t)
}

/// Compares both sides of Ramanujan's `₁Ψ₁` summation exactly.
pub fn ramanujan_check(
    a: &Monomial,
    b: &Monomial,
    z: &Monomial,
    n_q: i64,
    n_t: i64,
    n_max: i64,
) -> Result<RamanujanReport> {
    let rhs = psi_rhs(a, b, z, n_q, n_t)?;
    let lhs = psi_lhs(a, b, z, n_q, n_t, n_max)?;
    let diff = lhs.sub(&rhs);
    let difference: Vec<(i64, i64, String)> = diff
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|((q, t), c)| (q, t, c.to_string()))
        .collect();
    Ok(RamanujanReport {
        a: a.to_string(),
        b: b.to_string(),
        z: z.to_string(),
        n_q,
        n_t,
        n_max,
        passed: difference.is_empty(),
        difference,
    })
}

/// The substitution turning the bilateral sum into a `₁Ψ₁` sum:
/// `a = t⁻¹u²`, `b = tqu²`, `z = t`.
pub fn bilateral_substitution() -> (Monomial, Monomial, Monomial) {
    (m(0, -1, 2), m(1, 1, 2), m(0, 1, 0))
}

/// `b = q` reduces `₁Ψ₁` to the q-binomial theorem; here `a = u²`, `z = t`.
pub fn binomial_substitution() -> (Monomial, Monomial, Monomial) {
    (m(0, 0, 2), m(1, 0, 0), m(0, 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, UFrac};

    fn int(c: i64) -> UFrac {
        UFrac::from(Rational::from_integer(c.into()))
    }

    #[test]
    fn weyl_sum_low_coefficients() {
        let s = kac_euler_series(3, 2, 3).unwrap();
        assert_eq!(s.coeff(0, 0), int(1));
        for q in 1..=3 {
            assert!(s.coeff(q, 0).is_zero());
        }
        assert_eq!(s.coeff(0, 1), int(1));
    }

    #[test]
    fn unstable_cutoff_is_reported() {
        assert!(matches!(kac_euler_series(6, 6, 0), Err(Error::NotStable(_))));
    }

    #[test]
    fn product_formula_linear_term() {
        // t-linear part of (qt²)_∞/((1-t)(qt)_∞) is Σ_k q^k
        let s = product_formula(5, 3).unwrap();
        for q in 0..=5 {
            assert_eq!(s.coeff(q, 1), int(1));
        }
    }

    #[test]
    fn three_forms_agree() {
        let (n_q, n_t) = (4, 4);
        let kac = kac_euler_series(n_q, n_t, 3).unwrap();
        let bil = bilateral_series(n_q, n_t, 5).unwrap();
        let prod = product_formula(n_q, n_t).unwrap();
        assert!(kac.agrees_with(&prod, n_q, n_t));
        assert!(bil.agrees_with(&prod, n_q, n_t));
    }

    #[test]
    fn ramanujan_sum_on_binomial_case() {
        let (a, b, z) = binomial_substitution();
        let r = ramanujan_check(&a, &b, &z, 5, 5, 6).unwrap();
        assert!(r.passed, "{:?}", r.difference);
    }

    #[test]
    fn vanishing_denominator_is_rejected() {
        // b = az makes (b/az)_∞ = (1)_∞ vanish
        let one_t = m(0, 1, 0);
        assert!(matches!(
            psi_rhs(&one_t, &one_t, &Monomial::one(), 3, 3),
            Err(Error::Degenerate(_))
        ));
    }
}
