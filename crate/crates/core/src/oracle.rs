//! Closed-form references for validating the numerical engine.
//!
//! Nothing in the propagation or scenario code depends on this module; it
//! exists for tests and for the acceptance suite.

use std::f64::consts::PI;

use crate::field::WaveContext;

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Far-field double-slit intensity normalized to 1 on axis:
/// `cos²(π d y / (λL)) · sinc²(π w y / (λL))`.
///
/// Valid when `L ≫ d²/λ` and the slits are narrow.
pub fn fraunhofer_double_slit(
    y: f64,
    wavelength: f64,
    distance: f64,
    separation: f64,
    width: f64,
) -> f64 {
    let scale = PI * y / (wavelength * distance);
    let fringe = (separation * scale).cos();
    let envelope = sinc(width * scale);
    fringe * fringe * envelope * envelope
}

/// Paraxial thin-lens phase `−k y² / (2f)`.
pub fn thin_lens_paraxial_phase(y: f64, focal_length: f64, ctx: &WaveContext) -> f64 {
    -ctx.wavenumber() * y * y / (2.0 * focal_length)
}
