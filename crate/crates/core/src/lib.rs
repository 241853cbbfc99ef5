//! Exact computations with multiparameter supergroup schemes over small
//! finite fields: Hopf superalgebras, homomorphism varieties, cobar
//! cohomology and module support sets.

pub mod cohomology;
pub mod error;
pub mod fields;
pub mod homvariety;
pub mod ring;
pub mod superalgebra;
pub mod support;

pub use error::{Error, Result};
pub use fields::{Fe, FieldSpec, Fq, Matrix};
