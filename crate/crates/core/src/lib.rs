//! Exact computations with finitely presented representations of the
//! combinatorial categories FI, OI, FI_G and OI_G, truncated at a degree
//! horizon.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactfield`]: prime fields, rationals, dense elimination.
//! - [`category`]: morphisms, composition, the degree-one self-embedding and
//!   the witnesses of the natural map into the shift.
//! - [`module`]: truncated modules, module maps, kernels, quotients and
//!   presentations.
//! - [`shift`]: the shift functor, the kernel and derivative functors, and the
//!   chain of iterated kernels with the singular/regular decomposition.
//! - [`homology`]: free resolutions, Tor against the augmentation, regularity,
//!   Hilbert polynomials and the inequality battery.

pub mod category;
pub mod corpus;
mod error;
pub mod exactfield;
pub mod homology;
pub mod module;
pub mod report;
pub mod shift;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
