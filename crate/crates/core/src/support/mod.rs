//! Support sets N₁(G)_M of modules over the height-one families, decided
//! through graded resolutions over P₁ = k[u,v]/(u^p + v²), and their
//! comparison with the cohomological support.

pub mod battery;
pub mod cohom;
pub mod p1;
pub mod sets;

pub use battery::{battery, battery_families, battery_module, battery_names, BatteryModule};
pub use cohom::{
    cohomological_support, cohomological_support_with_budget, compare_supports, compare_supports_with_budget,
    CohomSupport, CompareReport, CompareStatus, KgResolution,
};
pub use p1::{
    id_infinite, resolve_module, resolve_presentation, syzygy_step, GradedP1Module, IdDecision, P1Elem, P1Presentation,
    ResolutionStep, SyzygyConfig,
};
pub use sets::{aut_orbits, group_module, pullback_module, support_set, OrbitReport, SupportReport};
