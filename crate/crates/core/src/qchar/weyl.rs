use serde::Serialize;

use super::product::Monomial;
use crate::error::{Error, Result};
use crate::exact::{QTSeries, UFrac, ULaurent};

/// Element `(n, ε)` of `Z ⋊ Z/2`, acting by `u ↦ (u q^n)^ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    pub n: i64,
    pub eps: i8,
}

impl WeylElement {
    pub fn new(n: i64, eps: i8) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidArgument(format!("sign must be ±1, got {eps}")));
        }
        Ok(WeylElement { n, eps })
    }

    pub fn identity() -> Self {
        WeylElement { n: 0, eps: 1 }
    }

    /// Product with the convention `apply(a, apply(b, s)) = apply(a.compose(b), s)`.
    pub fn compose(self, o: WeylElement) -> Self {
        WeylElement {
            n: self.n + i64::from(self.eps) * o.n,
            eps: self.eps * o.eps,
        }
    }

    pub fn inverse(self) -> Self {
        WeylElement {
            n: -i64::from(self.eps) * self.n,
            eps: self.eps,
        }
    }

    /// `u^e ↦ q^{εne} u^{εe}`.
    pub fn apply_monomial(self, a: &Monomial) -> Monomial {
        let eps = i64::from(self.eps);
        Monomial {
            c: a.c.clone(),
            q: a.q + eps * self.n * a.u,
            t: a.t,
            u: eps * a.u,
        }
    }

    /// All elements with `|n| <= n_max`, translations first.
    pub fn all_up_to(n_max: i64) -> Vec<Self> {
        (-n_max..=n_max)
            .flat_map(|n| [WeylElement { n, eps: 1 }, WeylElement { n, eps: -1 }])
            .collect()
    }
}

/// Applies `w` to a series whose coefficients are Laurent polynomials in `u`
/// with every exponent in `[-u_span, u_span]`. The q-shift of a term can be as
/// large as `|n| u_span`, so the result is exact only up to
/// `s.n_q() - |n| u_span`; asking for more is an error.
pub fn weyl_apply(w: WeylElement, s: &QTSeries, u_span: i64, n_q_out: i64) -> Result<QTSeries> {
    let shift = w.n.abs() * u_span;
    if s.n_q() - shift < n_q_out {
        return Err(Error::HeadroomExhausted {
            needed: n_q_out + shift,
            available: s.n_q(),
        });
    }
    let mut out = QTSeries::with_bounds(s.q_min() - shift, n_q_out, s.t_min(), s.n_t());
    for ((q, t), c) in s.terms() {
        let l = c.as_laurent().ok_or_else(|| {
            Error::InvalidArgument(format!("coefficient of q^{q} t^{t} is not a Laurent polynomial in u"))
        })?;
        for (e, x) in l.terms() {
            if e.abs() > u_span {
                return Err(Error::InvalidArgument(format!(
                    "u-exponent {e} exceeds the declared span {u_span}"
                )));
            }
            let m = w.apply_monomial(&Monomial::new(x.clone(), q, t, e));
            out.add_term(m.q, m.t, UFrac::from(ULaurent::monomial(m.c, m.u)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(terms: &[(i64, i64, i64, i64)], n_q: i64) -> QTSeries {
        let mut s = QTSeries::with_bounds(-20, n_q, 0, 3);
        for (c, q, t, u) in terms {
            s.add_term(*q, *t, UFrac::from(ULaurent::monomial(rat(*c), *u)));
        }
        s
    }

    #[test]
    fn translation_and_flip() {
        let s = poly(&[(1, 0, 0, 2)], 10);
        let out = weyl_apply(WeylElement::new(1, 1).unwrap(), &s, 2, 8).unwrap();
        assert_eq!(out.coeff(2, 0), UFrac::from(ULaurent::monomial(rat(1), 2)));
        let sym = poly(&[(1, 0, 0, 2), (1, 0, 0, -2)], 10);
        let flipped = weyl_apply(WeylElement::new(0, -1).unwrap(), &sym, 2, 10).unwrap();
        assert!(flipped.agrees_with(&sym, 10, 3));
        assert!(weyl_apply(WeylElement::identity(), &s, 2, 10)
            .unwrap()
            .agrees_with(&s, 10, 3));
    }

    #[test]
    fn headroom_is_checked() {
        let s = poly(&[(1, 0, 0, 2)], 4);
        assert!(matches!(
            weyl_apply(WeylElement::new(2, 1).unwrap(), &s, 2, 4),
            Err(Error::HeadroomExhausted {
                needed: 8,
                available: 4
            })
        ));
    }

    #[test]
    fn composition_and_inverse() {
        let a = WeylElement::new(2, -1).unwrap();
        let b = WeylElement::new(-3, 1).unwrap();
        assert_eq!(a.compose(a.inverse()), WeylElement::identity());
        let m = Monomial::unit(1, 0, 2);
        assert_eq!(b.apply_monomial(&a.apply_monomial(&m)), b.compose(a).apply_monomial(&m));
        assert!(WeylElement::new(0, 2).is_err());
    }
}
