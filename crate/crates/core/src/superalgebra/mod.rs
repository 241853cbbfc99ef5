//! Coordinate Hopf superalgebras, group algebras and their duality.

pub mod cache;
pub mod coord;
pub mod group;
pub mod hopf;

pub use coord::{build_coordinate_hopf, coord_shape, CoordFamily, CoordShape};
pub use group::{
    build_gaminus_pair, build_gar_pair, build_group_hopf, build_group_pair, duality_check, DualPair, PPolynomial,
};
pub use hopf::{verify_hopf_axioms, AlgebraMorphism, BasisElem, FinDimHopf, HopfRef, Report};
