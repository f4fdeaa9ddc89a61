//! Pointwise curvature algebra for real hypersurfaces in complex space
//! forms: the contact invariant `delta_c2 = tau - inf K(plane through xi)`,
//! the sharp mean-curvature bound it satisfies, the catalog of Hopf model
//! hypersurfaces with their principal curvatures, the structure-equation
//! flow for the non-Hopf family, and exact big-integer certificates for the
//! polynomial eliminations behind the classification.
//!
//! Everything numeric is built on a small self-contained kernel
//! ([`numerics`]); everything symbolic is exact ([`symbolic`]). The
//! [`audit`] module holds the data-parallel sweep/audit drivers used by the
//! CLI and the benchmarks.

pub mod audit;
pub mod contact_frame;
pub mod curvature;
mod error;
pub mod models;
pub mod nonhopf_flow;
pub mod numerics;
pub mod symbolic;
pub mod tol;

pub use error::Error;
