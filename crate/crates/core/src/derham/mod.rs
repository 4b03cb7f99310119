//! De Rham complexes of free DGAs and their Adams-graded cyclic homology.

mod complex;
mod hc;

pub use complex::{de_rham, truncate_forms, DeRhamComplex, TruncatedForms};
pub use hc::{cyclic_homology, hc_dim, periodicity_s, resolution_for, weights_up_to, HcEntry, HcTable};
