//! Scalar wave-optics simulation of one or two slits imaged through a thin
//! lens, with optional wire obstructions at the lens plane.
//!
//! Fields are one-dimensional and propagated by direct Huygens–Fresnel
//! quadrature (see [`propagation`]). The [`scenarios`] module assembles the
//! optical train and produces the intensity profiles and metrics; [`oracle`]
//! holds closed-form references used to validate the engine.

pub mod analysis;
pub mod elements;
pub mod error;
pub mod field;
pub mod oracle;
pub mod propagation;
pub mod scenarios;

pub use error::{OpticsError, Result};
pub use field::{IntensityProfile, Mask, SampledField, TransverseGrid, WaveContext};
pub use num_complex::Complex64;
