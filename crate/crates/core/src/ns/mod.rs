//! A discrete Néron-Severi model: zero section, fiber class, fibral blocks
//! and tracked sections, with base change and universal isometries.

mod checks;
mod config;
mod isometry;
mod lattice;
mod pullback;

pub use checks::{fibral_bound, is_effective_class, of_block_form};
pub use config::{FiberOrigin, FiberSpec, SectionData, SurfaceConfig};
pub use isometry::{
    act_isometry, check_torelli_hypotheses, classify_isometry, inversion_matrix, pl_matrix,
    sample_isometry, translation_matrix, Classification, TorelliCheck, UniversalIsometry,
    MAX_REDUCTION_STEPS,
};
pub use lattice::{build_ns, Fiber, MwKey, NSDivisor, NsLattice, Section};
pub use pullback::{pullback_ns, NsPullback};
