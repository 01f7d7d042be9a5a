//! Euler classes of surface-group representations into PSL(2,ℝ).
//!
//! The crate is organised bottom-up:
//!
//! - [`moebius`]: canonical PSL(2,ℝ) matrices, trace classification, the
//!   boundary-circle action and one-parameter subgroups.
//! - [`lift`]: elements of the universal cover as lifted circle maps, and
//!   Milnor's algorithm for the Euler class of a [`lift::Representation`].
//! - [`signature`]: exact arithmetic on Fuchsian signatures (`e(Γ)`, 2-adic
//!   data, enumeration for bounded Euler class, genus bounds).
//! - [`homology`]: integer relation matrices, Smith normal form and the
//!   order of the central element, an independent check of [`signature`].
//! - [`realize`]: numerical Fuchsian groups from signatures, with
//!   verification certificates.
//! - [`construct`]: explicit representations of every admissible Euler
//!   class, plus padding, concatenation, flips, deformations and
//!   rational-angle snapping.
//! - [`discreteness`]: the Jørgensen quantity and a bounded word search for
//!   non-discreteness certificates.
//!
//! Numerical thresholds are carried in a [`Tolerances`] record rather than
//! hard-coded at call sites.

pub mod construct;
pub mod discreteness;
mod disk;
mod error;
pub mod homology;
pub mod io;
pub mod lift;
pub mod moebius;
pub mod realize;
pub mod signature;
mod tolerance;

pub use error::{Error, Result};
pub use lift::{LiftedIsometry, Representation};
pub use moebius::{BoundaryAngle, IsometryClass, ProjMatrix};
pub use signature::Signature;
pub use tolerance::Tolerances;

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
