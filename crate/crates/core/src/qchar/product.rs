use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{QTSeries, Rational, UFrac, ULaurent};

/// `c q^q t^t u^u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub c: Rational,
    pub q: i64,
    pub t: i64,
    pub u: i64,
}

impl Monomial {
    pub fn new(c: Rational, q: i64, t: i64, u: i64) -> Self {
        Monomial { c, q, t, u }
    }

    /// Monomial with coefficient 1.
    pub fn unit(q: i64, t: i64, u: i64) -> Self {
        Monomial {
            c: Rational::one(),
            q,
            t,
            u,
        }
    }

    pub fn one() -> Self {
        Self::unit(0, 0, 0)
    }

    pub fn mul(&self, o: &Monomial) -> Self {
        Monomial {
            c: &self.c * &o.c,
            q: self.q + o.q,
            t: self.t + o.t,
            u: self.u + o.u,
        }
    }

    pub fn div(&self, o: &Monomial) -> Result<Self> {
        if o.c.is_zero() {
            return Err(Error::Degenerate("division by a zero monomial".into()));
        }
        Ok(Monomial {
            c: &self.c / &o.c,
            q: self.q - o.q,
            t: self.t - o.t,
            u: self.u - o.u,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut c = Rational::one();
        for _ in 0..n {
            c *= &self.c;
        }
        Ok(Monomial {
            c,
            q: self.q * n,
            t: self.t * n,
            u: self.u * n,
        })
    }

    /// `a q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        Monomial {
            q: self.q + k,
            ..self.clone()
        }
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.q == 0 && self.t == 0 && self.u == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.c.is_one() || (self.q == 0 && self.t == 0 && self.u == 0) {
            parts.push(self.c.to_string());
        }
        for (name, e) in [("q", self.q), ("t", self.t), ("u", self.u)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Length of a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PochLen {
    Finite(i64),
    Infinite,
}

/// `coef * mono * Π (1 - a)^e * Π (a; q)_∞^e`, kept symbolic until expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QProduct {
    pub coef: Rational,
    pub mono: (i64, i64, i64),
    pub finite: Vec<(Monomial, i64)>,
    pub infinite: Vec<(Monomial, i64)>,
}

impl Default for QProduct {
    fn default() -> Self {
        QProduct {
            coef: Rational::one(),
            mono: (0, 0, 0),
            finite: Vec::new(),
            infinite: Vec::new(),
        }
    }
}

type Poly3 = BTreeMap<(i64, i64, i64), Rational>;

fn poly_mul(a: &Poly3, b: &Poly3, q_max: i64, t_max: i64) -> Poly3 {
    let mut out = Poly3::new();
    for ((qa, ta, ua), ca) in a {
        for ((qb, tb, ub), cb) in b {
            let (q, t) = (qa + qb, ta + tb);
            if q > q_max || t > t_max {
                continue;
            }
            *out.entry((q, t, ua + ub)).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn one_poly() -> Poly3 {
    [((0, 0, 0), Rational::one())].into()
}

impl QProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(m: &Monomial) -> Self {
        QProduct {
            coef: m.c.clone(),
            mono: (m.q, m.t, m.u),
            ..Self::default()
        }
    }

    pub fn times_monomial(mut self, m: &Monomial) -> Self {
        self.coef *= &m.c;
        self.mono = (self.mono.0 + m.q, self.mono.1 + m.t, self.mono.2 + m.u);
        self
    }

    /// Multiplies by `(1 - a)^e`.
    pub fn times_factor(mut self, a: &Monomial, e: i64) -> Self {
        if e != 0 {
            self.finite.push((a.clone(), e));
        }
        self
    }

    /// Multiplies by `(a; q)_n^e`; for `n < 0`, `(a)_n = 1 / (1 - a q^{-1}) ... (1 - a q^n)`.
    pub fn times_poch(mut self, a: &Monomial, n: PochLen, e: i64) -> Self {
        match n {
            PochLen::Infinite => {
                if e != 0 {
                    self.infinite.push((a.clone(), e));
                }
            }
            PochLen::Finite(n) if n >= 0 => {
                for j in 0..n {
                    self = self.times_factor(&a.shift_q(j), e);
                }
            }
            PochLen::Finite(n) => {
                for j in n..0 {
                    self = self.times_factor(&a.shift_q(j), -e);
                }
            }
        }
        self
    }

    pub fn times(mut self, o: &QProduct) -> Self {
        self.coef *= &o.coef;
        self.mono = (self.mono.0 + o.mono.0, self.mono.1 + o.mono.1, self.mono.2 + o.mono.2);
        self.finite.extend(o.finite.iter().cloned());
        self.infinite.extend(o.infinite.iter().cloned());
        self
    }

    /// Substitutes `u ↦ q^{εn} u^{ε}` in every monomial.
    pub fn weyl(&self, w: super::WeylElement) -> Self {
        let m = |a: &Monomial| w.apply_monomial(a);
        let mono = w.apply_monomial(&Monomial::unit(self.mono.0, self.mono.1, self.mono.2));
        QProduct {
            coef: self.coef.clone(),
            mono: (mono.q, mono.t, mono.u),
            finite: self.finite.iter().map(|(a, e)| (m(a), *e)).collect(),
            infinite: self.infinite.iter().map(|(a, e)| (m(a), *e)).collect(),
        }
    }

    /// Expands into a series exact for `q <= n_q`, `t <= n_t`. Factors free of
    /// `q` and `t` are kept exactly as a rational function of `u`.
    pub fn expand(&self, n_q: i64, n_t: i64) -> Result<QTSeries> {
        let mut coef = self.coef.clone();
        let (mut mq, mut mt, mut mu) = self.mono;
        if coef.is_zero() {
            return Ok(QTSeries::zero(n_q, n_t));
        }
        let mut factors: Vec<(Monomial, i64)> = Vec::new();
        let normalize = flip_if_needed;
        for (a, e) in &self.finite {
            if a.is_one() {
                if *e > 0 {
                    return Ok(QTSeries::zero(n_q, n_t));
                }
                return Err(Error::Degenerate(format!("(1 - {a})^{e}")));
            }
            if let Some(f) = normalize(a.clone(), *e, &mut coef, &mut mq, &mut mt, &mut mu)? {
                factors.push(f);
            }
        }
        // merge identical infinite products, then peel off the factors that need flipping
        let mut merged: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (a, e) in &self.infinite {
            *merged.entry(a.clone()).or_default() += e;
        }
        let mut tails: Vec<(Monomial, i64)> = Vec::new();
        for (a, e) in merged.into_iter().filter(|(_, e)| *e != 0) {
            let mut a = a;
            while a.q < 0 || (a.q == 0 && a.t <= 0) {
                if a.is_one() {
                    if e > 0 {
                        return Ok(QTSeries::zero(n_q, n_t));
                    }
                    return Err(Error::Degenerate(format!("({a}; q)_∞^{e}")));
                }
                if let Some(f) = normalize(a.clone(), e, &mut coef, &mut mq, &mut mt, &mut mu)? {
                    factors.push(f);
                }
                a = a.shift_q(1);
            }
            tails.push((a, e));
        }
        let q_budget = n_q - mq;
        for (a, e) in tails {
            let mut a = a;
            while a.q <= q_budget {
                factors.push((a.clone(), e));
                a = a.shift_q(1);
            }
        }
        // u-only factors become an exact rational function
        let mut num = ULaurent::monomial(coef.clone(), mu);
        let mut den = ULaurent::one();
        let mut series_factors = Vec::new();
        for (a, e) in factors {
            if a.q == 0 && a.t == 0 {
                let f = &ULaurent::one() - &ULaurent::monomial(a.c.clone(), a.u);
                let p = f.pow(e.unsigned_abs() as u32);
                if e > 0 {
                    num = &num * &p;
                } else {
                    den = &den * &p;
                }
            } else if a.q <= q_budget {
                series_factors.push((a, e));
            }
        }
        let ufac = UFrac::new(num, den)?;
        // lowest t reachable by each factor's expansion
        let min_t: Vec<i64> = series_factors
            .iter()
            .map(|(a, e)| {
                if a.t >= 0 {
                    0
                } else if *e > 0 {
                    a.t * e
                } else {
                    a.t * (q_budget / a.q) * (-e)
                }
            })
            .collect();
        let t_budget = n_t - mt;
        let mut acc = one_poly();
        let mut below = 0;
        for (i, (a, e)) in series_factors.iter().enumerate() {
            let later: i64 = min_t[i + 1..].iter().sum();
            let t_max = t_budget - later;
            let own_t_max = t_max - below;
            let base: Poly3 = [((0, 0, 0), Rational::one()), ((a.q, a.t, a.u), -a.c.clone())].into();
            let g = if *e > 0 {
                let mut g = one_poly();
                for _ in 0..*e {
                    g = poly_mul(&g, &base, q_budget, i64::MAX);
                }
                g
            } else {
                let mut geo = Poly3::new();
                let mut k = 0i64;
                let mut c = Rational::one();
                while k * a.q <= q_budget && (a.t <= 0 || k * a.t <= own_t_max) {
                    geo.insert((k * a.q, k * a.t, k * a.u), c.clone());
                    c *= &a.c;
                    k += 1;
                }
                // with a negative t-exponent later copies can still lower t, so only q truncates
                let cap = if a.t < 0 { i64::MAX } else { own_t_max };
                let mut g = one_poly();
                for _ in 0..-e {
                    g = poly_mul(&g, &geo, q_budget, cap);
                }
                g
            };
            acc = poly_mul(&acc, &g, q_budget, t_max);
            below += min_t[i];
        }
        let mut grouped: BTreeMap<(i64, i64), ULaurent> = BTreeMap::new();
        for ((q, t, u), c) in acc {
            grouped
                .entry((q + mq, t + mt))
                .or_insert_with(ULaurent::zero)
                .add_term(u, c);
        }
        let q_min = grouped.keys().map(|k| k.0).min().unwrap_or(0).min(0);
        let t_min = grouped.keys().map(|k| k.1).min().unwrap_or(0).min(0);
        let mut out = QTSeries::with_bounds(q_min, n_q, t_min, n_t);
        for ((q, t), l) in grouped {
            out.add_term(q, t, &UFrac::from(l) * &ufac);
        }
        Ok(out)
    }
}

/// Rewrites `(1 - a)^e` as `(-a)^e (1 - 1/a)^e` when `a` has negative q-order
/// (or q-order zero and negative t-order), folding `(-a)^e` into the prefactor.
fn flip_if_needed(
    a: Monomial,
    e: i64,
    coef: &mut Rational,
    mq: &mut i64,
    mt: &mut i64,
    mu: &mut i64,
) -> Result<Option<(Monomial, i64)>> {
    if a.c.is_zero() {
        return Ok(None);
    }
    if a.q < 0 || (a.q == 0 && a.t < 0) {
        let neg = Monomial::new(-a.c.clone(), a.q, a.t, a.u).pow(e)?;
        *coef *= &neg.c;
        *mq += neg.q;
        *mt += neg.t;
        *mu += neg.u;
        return Ok(Some((a.inv()?, e)));
    }
    Ok(Some((a, e)))
}

/// `(a; q)_n` as a truncated series.
pub fn pochhammer(a: &Monomial, n: PochLen, n_q: i64, n_t: i64) -> Result<QTSeries> {
    QProduct::new().times_poch(a, n, 1).expand(n_q, n_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::UFrac;

    fn int(c: i64) -> UFrac {
        UFrac::from(Rational::from_integer(c.into()))
    }

    #[test]
    fn empty_pochhammer_is_one() {
        let s = pochhammer(&Monomial::unit(1, 1, 0), PochLen::Finite(0), 4, 4).unwrap();
        assert_eq!(s, QTSeries::one(4, 4));
    }

    #[test]
    fn pochhammer_of_length_two() {
        // (tq; q)_2 = 1 - tq - tq² + t²q³
        let s = pochhammer(&Monomial::unit(1, 1, 0), PochLen::Finite(2), 4, 4).unwrap();
        let mut want = QTSeries::zero(4, 4);
        for (q, t, c) in [(0, 0, 1), (1, 1, -1), (2, 1, -1), (3, 2, 1)] {
            want.add_term(q, t, int(c));
        }
        assert_eq!(s, want);
    }

    #[test]
    fn negative_length_inverts() {
        // (tq; q)_{-1} = 1/(1 - t)
        let s = pochhammer(&Monomial::unit(1, 1, 0), PochLen::Finite(-1), 3, 3).unwrap();
        let mut want = QTSeries::zero(3, 3);
        for t in 0..=3 {
            want.add_term(0, t, int(1));
        }
        assert_eq!(s, want);
    }

    #[test]
    fn infinite_product_of_q() {
        // Euler: (q; q)_∞ = 1 - q - q² + q⁵ + ...
        let s = pochhammer(&Monomial::unit(1, 0, 0), PochLen::Infinite, 6, 0).unwrap();
        let got: Vec<(i64, String)> = s.terms().map(|((q, _), c)| (q, c.to_string())).collect();
        let want: Vec<(i64, String)> = [(0, 1), (1, -1), (2, -1), (5, 1)]
            .iter()
            .map(|(q, c)| (*q, int(*c).to_string()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn unit_factor_in_denominator_is_degenerate() {
        let p = QProduct::new().times_factor(&Monomial::one(), -1);
        assert!(matches!(p.expand(2, 2), Err(Error::Degenerate(_))));
    }
}
