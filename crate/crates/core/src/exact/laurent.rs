use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Laurent polynomial in one variable `u` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ULaurent {
    terms: BTreeMap<i64, Rational>,
}

impl ULaurent {
    pub fn zero() -> Self {
        ULaurent::default()
    }

    pub fn one() -> Self {
        ULaurent::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        ULaurent::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ULaurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = ULaurent::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ULaurent::zero();
        }
        ULaurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        ULaurent {
            terms: self.terms.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    /// Substitutes `u -> u^k` (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        ULaurent::from_terms(self.terms.iter().map(|(e, x)| (e * k, x.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ULaurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `u = 1`.
    pub fn at_one(&self) -> Rational {
        self.terms.values().cloned().sum()
    }

    /// Dense coefficient vector, lowest degree first; requires no negative exponents.
    fn to_poly(&self) -> Vec<Rational> {
        let Some(top) = self.max_exp() else { return Vec::new() };
        let mut v = vec![Rational::zero(); top as usize + 1];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    fn from_poly(v: &[Rational]) -> Self {
        ULaurent::from_terms(v.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &l;
        }
    }
    x
}

impl Add for &ULaurent {
    type Output = ULaurent;
    fn add(self, o: &ULaurent) -> ULaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ULaurent {
    type Output = ULaurent;
    fn sub(self, o: &ULaurent) -> ULaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &ULaurent {
    type Output = ULaurent;
    fn mul(self, o: &ULaurent) -> ULaurent {
        let mut out = ULaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ULaurent {
    type Output = ULaurent;
    fn neg(self) -> ULaurent {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                _ => write!(f, "{c}*u^{e}")?,
            }
        }
        Ok(())
    }
}

/// Rational function in `u`, kept in a canonical reduced form: the
/// denominator is a monic polynomial with nonzero constant term, coprime to
/// the (Laurent) numerator. Equal functions therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UFrac {
    num: ULaurent,
    den: ULaurent,
}

impl Default for UFrac {
    fn default() -> Self {
        UFrac::zero()
    }
}

impl From<ULaurent> for UFrac {
    fn from(p: ULaurent) -> Self {
        UFrac {
            num: p,
            den: ULaurent::one(),
        }
    }
}

impl From<Rational> for UFrac {
    fn from(c: Rational) -> Self {
        UFrac::from(ULaurent::constant(c))
    }
}

impl UFrac {
    pub fn zero() -> Self {
        UFrac::from(ULaurent::zero())
    }

    pub fn one() -> Self {
        UFrac::from(ULaurent::one())
    }

    pub fn new(num: ULaurent, den: ULaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: ULaurent, den: ULaurent) -> Self {
        if num.is_zero() {
            return UFrac::zero();
        }
        let dshift = den.min_exp().unwrap();
        let den = den.shift(-dshift);
        let num = num.shift(-dshift);
        let nshift = num.min_exp().unwrap();
        let np = num.shift(-nshift).to_poly();
        let dp = den.to_poly();
        let g = poly_gcd(&np, &dp);
        let (nq, _) = poly_divrem(&np, &g);
        let (dq, _) = poly_divrem(&dp, &g);
        let lead = dq.last().unwrap().clone();
        let num = ULaurent::from_poly(&nq).scale(&(Rational::one() / &lead)).shift(nshift);
        let den = ULaurent::from_poly(&dq).scale(&(Rational::one() / &lead));
        UFrac { num, den }
    }

    pub fn numer(&self) -> &ULaurent {
        &self.num
    }

    pub fn denom(&self) -> &ULaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den == ULaurent::one() && self.num == ULaurent::one()
    }

    pub fn as_laurent(&self) -> Option<&ULaurent> {
        (self.den == ULaurent::one()).then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonUnit("zero rational function".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &UFrac) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UFrac {
            num: self.num.scale(c),
            den: if c.is_zero() { ULaurent::one() } else { self.den.clone() },
        }
    }

    /// Substitutes `u -> c * u^k` with `k = ±1`.
    pub fn substitute(&self, c: &Rational, k: i64) -> Result<Self> {
        let sub = |p: &ULaurent| {
            ULaurent::from_terms(p.terms().map(|(e, x)| {
                let f = if e >= 0 {
                    num_traits::pow(c.clone(), e as usize)
                } else {
                    num_traits::pow(c.recip(), (-e) as usize)
                };
                (e * k, x * f)
            }))
        };
        UFrac::new(sub(&self.num), sub(&self.den))
    }

    /// Substitutes `u -> u^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::normalized(self.num.substitute_power(k), self.den.substitute_power(k))
    }
}

impl Add for &UFrac {
    type Output = UFrac;
    fn add(self, o: &UFrac) -> UFrac {
        if self.den == o.den {
            return UFrac::normalized(&self.num + &o.num, self.den.clone());
        }
        UFrac::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &UFrac {
    type Output = UFrac;
    fn sub(self, o: &UFrac) -> UFrac {
        self + &-o
    }
}

impl Mul for &UFrac {
    type Output = UFrac;
    fn mul(self, o: &UFrac) -> UFrac {
        if self.is_zero() || o.is_zero() {
            return UFrac::zero();
        }
        UFrac::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &UFrac {
    type Output = UFrac;
    fn neg(self) -> UFrac {
        UFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for UFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ULaurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn lp(t: &[(i64, i64)]) -> ULaurent {
        ULaurent::from_terms(t.iter().map(|(e, c)| (*e, rat(*c))))
    }

    #[test]
    fn laurent_arithmetic() {
        let a = lp(&[(-1, 1), (1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, lp(&[(-2, 1), (0, 2), (2, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.at_one(), rat(2));
    }

    #[test]
    fn fraction_reduces() {
        // (1 - u^2) / (1 - u) = 1 + u
        let f = UFrac::new(lp(&[(0, 1), (2, -1)]), lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(f, UFrac::from(lp(&[(0, 1), (1, 1)])));
        // u^-1 / u^-3 = u^2
        let g = UFrac::new(lp(&[(-1, 1)]), lp(&[(-3, 1)])).unwrap();
        assert_eq!(g, UFrac::from(lp(&[(2, 1)])));
    }

    #[test]
    fn fraction_canonical() {
        let a = UFrac::new(lp(&[(0, 2)]), lp(&[(0, 2), (1, -2)])).unwrap();
        let b = UFrac::new(lp(&[(0, -1)]), lp(&[(0, -1), (1, 1)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denom().coeff(1), rat(1));
        assert_eq!(a.numer().coeff(0), rat(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = UFrac::new(lp(&[(0, 3), (2, 1)]), lp(&[(0, 1), (1, 5)])).unwrap();
        assert!((&f * &f.inv().unwrap()).is_one());
        assert!(UFrac::zero().inv().is_err());
        assert!(UFrac::new(lp(&[(0, 1)]), ULaurent::zero()).is_err());
    }

    #[test]
    fn substitution() {
        let f = UFrac::from(lp(&[(1, 1)]));
        let g = f.substitute(&ratio(1, 2), -1).unwrap();
        assert_eq!(g, UFrac::from(ULaurent::monomial(ratio(1, 2), -1)));
    }
}
