use std::collections::BTreeMap;
use std::fmt;

use super::{Rational, UFrac, ULaurent};
use crate::error::{Error, Result};

/// Truncated double series in `q` and `t` with `UFrac` coefficients.
///
/// Coefficients are known exactly for `q <= n_q` and `t <= n_t`; nothing is
/// stored below `(q_min, t_min)`. Both lower bounds may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTSeries {
    q_min: i64,
    n_q: i64,
    t_min: i64,
    n_t: i64,
    coeffs: BTreeMap<(i64, i64), UFrac>,
}

impl QTSeries {
    pub fn zero(n_q: i64, n_t: i64) -> Self {
        Self::with_bounds(0, n_q, 0, n_t)
    }

    pub fn with_bounds(q_min: i64, n_q: i64, t_min: i64, n_t: i64) -> Self {
        QTSeries {
            q_min,
            n_q,
            t_min,
            n_t,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n_q: i64, n_t: i64) -> Self {
        Self::monomial(UFrac::one(), 0, 0, n_q, n_t)
    }

    pub fn monomial(c: UFrac, q: i64, t: i64, n_q: i64, n_t: i64) -> Self {
        let mut s = Self::with_bounds(q.min(0), n_q, t.min(0), n_t);
        s.add_term(q, t, c);
        s
    }

    pub fn q_min(&self) -> i64 {
        self.q_min
    }

    pub fn t_min(&self) -> i64 {
        self.t_min
    }

    pub fn n_q(&self) -> i64 {
        self.n_q
    }

    pub fn n_t(&self) -> i64 {
        self.n_t
    }

    /// Adds `c q^q t^t`; terms beyond the truncation orders are discarded.
    pub fn add_term(&mut self, q: i64, t: i64, c: UFrac) {
        if q > self.n_q || t > self.n_t || c.is_zero() {
            return;
        }
        assert!(
            q >= self.q_min && t >= self.t_min,
            "term ({q}, {t}) below series lower bounds"
        );
        match self.coeffs.get_mut(&(q, t)) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.coeffs.remove(&(q, t));
                }
            }
            None => {
                self.coeffs.insert((q, t), c);
            }
        }
    }

    pub fn coeff(&self, q: i64, t: i64) -> UFrac {
        self.coeffs.get(&(q, t)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &UFrac)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops everything beyond the given orders (which may only shrink).
    pub fn truncate(&self, n_q: i64, n_t: i64) -> Self {
        let n_q = n_q.min(self.n_q);
        let n_t = n_t.min(self.n_t);
        QTSeries {
            q_min: self.q_min.min(n_q),
            n_q,
            t_min: self.t_min.min(n_t),
            n_t,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((q, t), _)| *q <= n_q && *t <= n_t)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &UFrac) -> Self {
        let mut out = Self::with_bounds(self.q_min, self.n_q, self.t_min, self.n_t);
        for ((q, t), v) in &self.coeffs {
            out.add_term(*q, *t, v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&UFrac::from(-Rational::from_integer(1.into())))
    }

    pub fn add(&self, o: &QTSeries) -> Self {
        let mut out = Self::with_bounds(
            self.q_min.min(o.q_min),
            self.n_q.min(o.n_q),
            self.t_min.min(o.t_min),
            self.n_t.min(o.n_t),
        );
        for ((q, t), v) in self.coeffs.iter().chain(o.coeffs.iter()) {
            out.add_term(*q, *t, v.clone());
        }
        out
    }

    pub fn sub(&self, o: &QTSeries) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QTSeries) -> Self {
        let n_q = (self.n_q + o.q_min).min(o.n_q + self.q_min);
        let n_t = (self.n_t + o.t_min).min(o.n_t + self.t_min);
        let mut out = Self::with_bounds(self.q_min + o.q_min, n_q, self.t_min + o.t_min, n_t);
        for ((qa, ta), ca) in &self.coeffs {
            for ((qb, tb), cb) in &o.coeffs {
                let (q, t) = (qa + qb, ta + tb);
                if q <= n_q && t <= n_t {
                    out.add_term(q, t, ca * cb);
                }
            }
        }
        out
    }

    /// Inverse of a series whose support lies in the quadrant above its
    /// lowest term `c q^v t^s`, with `c` a nonzero `UFrac`.
    pub fn invert_unit(&self) -> Result<Self> {
        let Some(v) = self.coeffs.keys().map(|k| k.0).min() else {
            return Err(Error::NonUnit("zero series".into()));
        };
        let s = self.coeffs.keys().map(|k| k.1).min().unwrap();
        let lead = self
            .coeffs
            .get(&(v, s))
            .ok_or_else(|| Error::NonUnit(format!("no term at lowest corner (q^{v}, t^{s})")))?;
        let lead_inv = lead.inv()?;
        // a = lead q^v t^s (1 + r)
        let rel_q = self.n_q - v;
        let rel_t = self.n_t - s;
        let mut r = Self::zero(rel_q, rel_t);
        for ((q, t), c) in &self.coeffs {
            if (*q, *t) != (v, s) {
                r.add_term(q - v, t - s, c * &lead_inv);
            }
        }
        let minus_r = r.neg();
        let mut inv = Self::one(rel_q, rel_t);
        let mut power = Self::one(rel_q, rel_t);
        loop {
            power = power.mul(&minus_r);
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power);
        }
        let mut out = Self::with_bounds(-v, rel_q - v, -s, rel_t - s);
        for ((q, t), c) in &inv.coeffs {
            out.add_term(q - v, t - s, c * &lead_inv);
        }
        Ok(out)
    }

    /// True when every coefficient is a Laurent polynomial in `u`.
    pub fn is_polynomial_in_u(&self) -> bool {
        self.coeffs.values().all(|c| c.as_laurent().is_some())
    }

    pub fn assert_polynomial_in_u(&self) -> Result<()> {
        for ((q, t), c) in &self.coeffs {
            if c.as_laurent().is_none() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient of q^{q} t^{t} is not polynomial in u: {c}"
                )));
            }
        }
        Ok(())
    }

    /// Laurent coefficient of `q^q t^t`, if polynomial.
    pub fn laurent_coeff(&self, q: i64, t: i64) -> Option<ULaurent> {
        let c = self.coeff(q, t);
        c.as_laurent().cloned()
    }

    /// Exact equality on the common window `q <= n_q, t <= n_t`.
    pub fn agrees_with(&self, o: &QTSeries, n_q: i64, n_t: i64) -> bool {
        let inside = |k: &(i64, i64)| k.0 <= n_q && k.1 <= n_t;
        let a: Vec<_> = self.coeffs.iter().filter(|(k, _)| inside(k)).collect();
        let b: Vec<_> = o.coeffs.iter().filter(|(k, _)| inside(k)).collect();
        a == b
    }
}

impl fmt::Display for QTSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, ((q, t), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] q^{q} t^{t}")?;
        }
        write!(f, " + O(q^{}, t^{})", self.n_q + 1, self.n_t + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn c(n: i64) -> UFrac {
        UFrac::from(rat(n))
    }

    fn one_minus_tq(n: i64) -> QTSeries {
        let mut s = QTSeries::one(n, n);
        s.add_term(1, 1, c(-1));
        s
    }

    #[test]
    fn geometric_inverse() {
        let n = 6;
        let inv = one_minus_tq(n).invert_unit().unwrap();
        let mut expect = QTSeries::zero(n, n);
        for k in 0..=n {
            expect.add_term(k, k, c(1));
        }
        assert!(inv.agrees_with(&expect, n, n));
        assert!(one_minus_tq(n).mul(&inv).agrees_with(&QTSeries::one(n, n), n, n));
    }

    #[test]
    fn invert_shifted_lowest_term() {
        // q^-1 (2 - q) has inverse (q/2) * sum (q/2)^k
        let mut s = QTSeries::with_bounds(-1, 5, 0, 0);
        s.add_term(-1, 0, c(2));
        s.add_term(0, 0, c(-1));
        let inv = s.invert_unit().unwrap();
        assert_eq!(inv.q_min(), 1);
        assert_eq!(inv.n_q(), 7);
        assert_eq!(inv.coeff(1, 0), UFrac::from(crate::exact::ratio(1, 2)));
        assert_eq!(inv.coeff(3, 0), UFrac::from(crate::exact::ratio(1, 8)));
        assert!(s.mul(&inv).agrees_with(&QTSeries::one(5, 0), 5, 0));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(QTSeries::zero(3, 3).invert_unit().is_err());
        let mut s = QTSeries::zero(3, 3);
        s.add_term(0, 1, c(1));
        s.add_term(1, 0, c(1));
        assert!(s.invert_unit().is_err());
    }

    #[test]
    fn mul_precision_tracks_negative_orders() {
        let a = QTSeries::monomial(c(1), -2, 0, 4, 4);
        let b = QTSeries::one(4, 4);
        let p = a.mul(&b);
        assert_eq!(p.n_q(), 2);
        assert_eq!(p.coeff(-2, 0), c(1));
    }
}
