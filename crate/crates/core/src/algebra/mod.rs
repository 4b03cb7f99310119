//! Graded (skew-)commutative algebras and DGAs given by explicit bases and
//! structure constants, truncated to finite weight windows.

pub(crate) mod constructors;
pub mod dsl;
mod presentation;

pub use constructors::{
    crossing_lines, free_dga, free_skew_algebra, laurent_window, quotient_truncated_poly, resolve_quotient,
    square_zero_extension,
};
pub use dsl::{parse_algebra_spec, parse_spec, AlgebraSpec, ParseError};
pub use presentation::{
    check_presentation, BasisElem, FreeData, GenPoly, GeneratorSpec, GradedAlgebraPresentation, ModuleSpec,
    ValidationReport, Violation, Window,
};
