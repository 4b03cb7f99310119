use std::collections::BTreeMap;

use serde::Serialize;

use super::presentation::LiePresentation;
use crate::derham::HcTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterEntry {
    pub degree: i64,
    pub weight: Vec<i64>,
    pub dim: usize,
}

/// Graded dimensions of the free graded-commutative algebra generated, for
/// each exponent `m` of `g`, by `HC_n^{(m)}(A)` placed in degree `n + 1`.
/// With `A = C` this puts one generator in degree `2m + 1` per exponent.
///
/// Only degrees `<= max_degree` and weights `<= max_weight` are returned.
pub fn predicted_character(
    lie: &LiePresentation,
    hc: &HcTable,
    max_degree: i64,
    max_weight: &[i64],
) -> Result<Vec<CharacterEntry>> {
    let within = |w: &[i64]| w.len() == max_weight.len() && w.iter().zip(max_weight).all(|(a, b)| *a >= 0 && a <= b);
    let mut gens: Vec<(i64, Vec<i64>, usize)> = Vec::new();
    for &m in &lie.exponents {
        let m = m as i64;
        for n in 0..max_degree {
            if !hc.entries.iter().any(|e| e.n == n && e.i == m) {
                return Err(Error::InvalidArgument(format!(
                    "cyclic homology table lacks HC_{n}^({m})"
                )));
            }
        }
        for e in hc
            .entries
            .iter()
            .filter(|e| e.i == m && e.n < max_degree && e.dim > 0 && within(&e.weight))
        {
            if !e.trusted {
                return Err(Error::Untrusted(format!(
                    "HC_{}^({}) at weight {:?}",
                    e.n, e.i, e.weight
                )));
            }
            gens.push((e.n + 1, e.weight.clone(), e.dim));
        }
    }
    let zero = vec![0; max_weight.len()];
    let mut series: BTreeMap<(i64, Vec<i64>), usize> = BTreeMap::new();
    series.insert((0, zero.clone()), 1);
    for (d, w, mult) in gens {
        if d % 2 == 0 && w == zero {
            return Err(Error::InvalidArgument(format!(
                "even generator of degree {d} and weight 0 gives an infinite series"
            )));
        }
        for _ in 0..mult {
            let mut next: BTreeMap<(i64, Vec<i64>), usize> = BTreeMap::new();
            for ((deg, wt), c) in &series {
                let mut power = 0;
                loop {
                    let nd = deg + power * d;
                    let nw: Vec<i64> = wt.iter().zip(&w).map(|(a, b)| a + power * b).collect();
                    if nd > max_degree || !within(&nw) {
                        break;
                    }
                    *next.entry((nd, nw)).or_default() += c;
                    power += 1;
                    if d % 2 == 1 && power > 1 {
                        break;
                    }
                }
            }
            series = next;
        }
    }
    Ok(series
        .into_iter()
        .map(|((degree, weight), dim)| CharacterEntry { degree, weight, dim })
        .collect())
}
