//! Computational engine for finite Garside systems of spindle type.
//!
//! The crate builds the simple-element lattice of a presented Garside
//! monoid, computes left Garside normal forms both by table-driven greedy
//! normalization and by a bounded-state streaming pipeline, solves the
//! geodesic word problem for homogeneous systems, decides conjugacy through
//! super summit sets, and measures the work space of the streaming programs
//! empirically. A separate module covers the 3- and 4-strand HNN normal
//! forms and the exponential-growth conjugation experiment.

pub mod conjugacy;
pub mod error;
pub mod geodesic;
pub mod hnn;
pub mod laurent;
pub mod normal;
pub mod oracle;
pub mod streaming;
pub mod system;
pub mod word;

/// Index of a simple element inside a built system: 0 is the identity and
/// the largest id is the Garside element.
pub type SimpleId = usize;

pub use system::{build_system, build_system_with, BuildConfig, GarsideSystem, SystemDef};
pub use word::{AtomId, Letter, Word};
