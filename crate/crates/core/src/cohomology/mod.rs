//! Cohomology of finite-dimensional Hopf superalgebras via the reduced cobar
//! complex, presented cohomology rings of the elementary families, and the
//! comparison map to homomorphism varieties.

pub mod classes;
pub mod cobar;
pub mod psi;
pub mod restrict;
pub mod sparse;

pub use classes::{
    cohomology_ring, family_cohomology, generator_cocycles, presented_cohomology_ring, CohomClass, FamilyCohomology,
};
pub use cobar::{CobarCohomology, CobarComplex, Cochain};
pub use psi::{naturality_check, psi_map, psi_point_check, psi_point_map, verify_psi_properties, PsiProperties};
pub use restrict::{closed_form_restrictions, restrict_class, restrict_generators};
