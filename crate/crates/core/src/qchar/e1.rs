use serde::Serialize;

use super::product::{Monomial, QProduct};
use crate::error::Result;
use crate::exact::QTSeries;

/// Generators in bidegree `(m, n)`, one per listed energy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorFamily {
    pub bidegree: (i64, i64),
    pub energies: Vec<i64>,
}

impl GeneratorFamily {
    /// A copy of `C[[z]]` (energies `first, first + 1, ...`), cut off past `n_q`.
    pub fn power_series(bidegree: (i64, i64), first: i64, n_q: i64) -> Self {
        GeneratorFamily {
            bidegree,
            energies: (first..=n_q).collect(),
        }
    }
}

/// Character `Σ (-1)^n (-t)^m q^energy` of the free bigraded skew-commutative
/// algebra on the given generators. With `s = (-1)^n (-t)^m q^e`, a generator
/// of even total degree `m + n` contributes `1/(1 - s)` and an odd one `1 + s`;
/// in both cases this is `(1 - t^m q^e)^{∓1}`.
pub fn e1_character(families: &[GeneratorFamily], n_q: i64, n_t: i64) -> Result<QTSeries> {
    let mut p = QProduct::new();
    for f in families {
        let (dm, dn) = f.bidegree;
        let power = if (dm + dn).rem_euclid(2) == 0 { -1 } else { 1 };
        for e in &f.energies {
            p = p.times_factor(&Monomial::unit(*e, dm, 0), power);
        }
    }
    p.expand(n_q, n_t)
}
