//! Homology against the augmentation `C/m`: generators, free resolutions,
//! Tor, regularity, Hilbert polynomials and the inequality battery.

mod hilbert;
mod resolution;
mod tor;
mod verify;
mod zeroth;

pub use zeroth::{gd, m_image, m_span, zeroth_homology, ZerothHomology};
pub use resolution::{resolve, Resolution, ResolutionStep, Style};
pub use tor::{tor_from_resolution, tor_groups, HomologyReport};
pub use hilbert::{fit_dims, hilbert_fit, HilbertFit};
pub use verify::{shift_projective_hypothesis, verify_theorems, Check, Hypothesis, Status, VerifyReport};

#[cfg(test)]
mod tests;
