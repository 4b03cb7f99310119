//! Current Lie algebras `g ⊗ A` and their Chevalley–Eilenberg complexes.

mod chains;
mod cochains;
mod integral;
mod predicted;
mod presentation;

pub use chains::{
    build_complex, check_action_commutes, check_d_squared, homology_slice, CeComplex, CeComplexSpec, ChainSlice,
    Coefficients, CurrentGen, Filtration, InvariantSlice, Mode, SliceReport,
};
pub use cochains::{
    cup_product, is_boundary, is_closed, is_coboundary, nonexact_certificate, Cochain, CochainClass, Cup, UnitCochain,
};
pub use integral::{integral_cocycle, FormFunctional, IntegralCocycle};
pub use predicted::{predicted_character, CharacterEntry};
pub use presentation::{lie_presentation, LieKind, LiePresentation, MatEntries};
