//! Geometry and dynamics of discrete Painlevé equations on the D5 surface,
//! together with the semiclassical orthogonal-polynomial recurrences that
//! realize them.
//!
//! The crate has four layers:
//!
//! - [`lattice`]: exact integer arithmetic on the rank-10 Picard lattice
//!   (intersection form, root systems, reflections, induced maps, basis
//!   changes).
//! - [`weyl`]: the birational representation of the extended affine Weyl
//!   group on parameters and surface point, over exact rationals or
//!   high-precision reals.
//! - [`painleve`]: orbit engines for the standard difference equation and
//!   the recurrence form, the coordinate change between them, and base-point
//!   verification for both surfaces.
//! - [`orthopoly`]: configurable-precision orthogonal-polynomial machinery
//!   for the weight x^alpha (1-x)^beta e^{-sx} on the unit interval: moments,
//!   recurrence coefficients, ladder quantities, and the identity suites
//!   that tie them to the recurrence dynamics.
//!
//! ```
//! use dp5_core::lattice::{anticanonical, intersect, reflect, standard_roots, Basis};
//!
//! let roots = standard_roots();
//! let delta = anticanonical(Basis::FG);
//! // reflecting in a symmetry root fixes the null class
//! let img = reflect(&roots.symmetry_roots[0], &delta).unwrap();
//! assert_eq!(img, delta);
//! assert_eq!(intersect(&delta, &delta).unwrap(), 0);
//! ```

pub mod lattice;
pub mod orthopoly;
pub mod painleve;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod weyl;

pub use report::{CheckItem, VerificationReport};

/// Re-export of the arbitrary-precision arithmetic backend.
pub use rug;
