//! Exact lattice engine for semistable elliptic surfaces.
//!
//! * [`lattice`]: the fibral lattice `V_n` of an `I_n` fiber, arc roots and
//!   Picard-Lefschetz reflections.
//! * [`weyl`]: words in the affine Weyl group `W_n` with their matrix and
//!   cyclic-permutation realizations.
//! * [`base_change`]: pullback of fibral classes along a ramified base change.
//! * [`lift`]: the lifts `R^e_n : W_n → W_{ne}` and their verification.
//! * [`ns`]: a Néron-Severi model with sections, pullbacks and the canonical
//!   form of universal isometries.
//! * [`cli`]: sweep driver, config loading and rendering used by the binary.
//!
//! All arithmetic is exact `i64`; release builds keep overflow checks on.

pub mod base_change;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod lift;
pub mod matrix;
pub mod ns;
pub mod perm;
pub mod report;
mod rng;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{classify_minus_two, inner_product, reflect, ArcRoot, FibralSpace, FibralVector};
pub use matrix::IntMatrix;
pub use perm::Permutation;
pub use report::{Record, Report, Status};
pub use weyl::{check_presentation, equal_elements, WeylWord};
