//! Homomorphism sets Hom(M_r, G), the search oracle, supermatrix tuples and
//! the coordinate rings k[N_r(G)].

pub mod oracle;
pub mod params;
pub mod tuple;
pub mod variety;

pub use oracle::{enumerate_hopf_homs, DEFAULT_BUDGET};
pub use params::{
    classify_homs, comorphism_from_params, compose_endos, endo_matrix, extract_params, frobenius_comorphism,
    frobenius_compose, invert_automorphism, is_automorphism, pushforward_hom, quotient_map, Classification, FamilyTag,
    HomParams, TargetFamily,
};
pub use variety::{coordinate_algebra_nr, enumerate_variety_points, params_from_point, PointSet};
