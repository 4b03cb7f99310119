//! Truncated q-series: Pochhammer products, the affine Weyl action, the
//! Weyl-sum character, its bilateral and product forms, and the character of
//! the free algebra on the generators of the spectral sequence's first page.

mod crosscheck;
mod e1;
mod identities;
mod product;
mod weyl;

pub use crosscheck::{crosscheck_cell, euler_crosscheck, CrosscheckCell, CrosscheckReport};
pub use e1::{e1_character, GeneratorFamily};
pub use identities::{
    bilateral_series, bilateral_substitution, bilateral_term, binomial_substitution, first_stable, kac_euler_series,
    kac_summand, product_formula, psi_lhs, psi_rhs, ramanujan_check, stable_kac_series, RamanujanReport,
};
pub use product::{pochhammer, Monomial, PochLen, QProduct};
pub use weyl::{weyl_apply, WeylElement};
