//! Sampled scalar fields on a uniform one-dimensional transverse grid.
//!
//! Every type here is an immutable value once constructed. Constructors
//! validate their invariants so downstream code can assume them.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{OpticsError, Result};

/// Wavelength and the derived angular wavenumber `2π/λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext {
    wavelength: f64,
    wavenumber: f64,
}

impl WaveContext {
    pub fn new(wavelength: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "wavelength must be positive and finite, got {wavelength}"
            )));
        }
        Ok(Self {
            wavelength,
            wavenumber: TAU / wavelength,
        })
    }

    /// Wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Angular wavenumber in radians per meter.
    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }
}

/// Uniform sampling of `[center - half_width, center + half_width]`.
///
/// Positions are reconstructed on demand from the three defining numbers, so
/// two grids compare equal exactly when they produce the same positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseGrid {
    center: f64,
    half_width: f64,
    n_samples: usize,
}

impl TransverseGrid {
    pub fn new(center: f64, half_width: f64, n_samples: usize) -> Result<Self> {
        if !center.is_finite() {
            return Err(OpticsError::InvalidArgument(format!(
                "grid center must be finite, got {center}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "grid half_width must be positive, got {half_width}"
            )));
        }
        if n_samples == 0 {
            return Err(OpticsError::InvalidArgument(
                "grid needs at least one sample".into(),
            ));
        }
        Ok(Self {
            center,
            half_width,
            n_samples,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n_samples
    }

    pub fn is_empty(&self) -> bool {
        self.n_samples == 0
    }

    /// Sample pitch. A single-sample grid is treated as one cell spanning the
    /// whole extent, so its pitch is `2 * half_width`.
    pub fn spacing(&self) -> f64 {
        if self.n_samples == 1 {
            2.0 * self.half_width
        } else {
            2.0 * self.half_width / (self.n_samples - 1) as f64
        }
    }

    /// Position of sample `i`.
    ///
    /// The offset from the center is computed from the signed integer
    /// `2i - (n - 1)`, which makes a centered grid exactly antisymmetric:
    /// `position(n - 1 - i) == -position(i)` bit for bit when `center == 0`.
    pub fn position(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_samples);
        if self.n_samples == 1 {
            return self.center;
        }
        let steps = 2 * i as i64 - (self.n_samples as i64 - 1);
        self.center + self.half_width * (steps as f64 / (self.n_samples - 1) as f64)
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.position(i)).collect()
    }

    /// Smallest and largest sample positions.
    pub fn bounds(&self) -> (f64, f64) {
        (self.position(0), self.position(self.n_samples - 1))
    }
}

/// Complex amplitude sampled on a grid at a fixed axial position.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: TransverseGrid,
    amplitudes: Vec<Complex64>,
    axial_position: f64,
}

impl SampledField {
    pub fn new(
        grid: TransverseGrid,
        amplitudes: Vec<Complex64>,
        axial_position: f64,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(OpticsError::InvalidArgument(format!(
                "{} amplitudes for a grid of {} samples",
                amplitudes.len(),
                grid.len()
            )));
        }
        if let Some(i) = amplitudes
            .iter()
            .position(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(OpticsError::InvalidArgument(format!(
                "amplitude {i} is not finite: {}",
                amplitudes[i]
            )));
        }
        if !axial_position.is_finite() {
            return Err(OpticsError::InvalidArgument(format!(
                "axial position must be finite, got {axial_position}"
            )));
        }
        Ok(Self {
            grid,
            amplitudes,
            axial_position,
        })
    }

    pub fn zeros(grid: TransverseGrid, axial_position: f64) -> Self {
        Self {
            grid,
            amplitudes: vec![Complex64::new(0.0, 0.0); grid.len()],
            axial_position,
        }
    }

    pub fn grid(&self) -> &TransverseGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn axial_position(&self) -> f64 {
        self.axial_position
    }

    /// Discrete `Σ |a_i|² Δy`.
    pub fn total_flux(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        self.map_amplitudes(|_, a| a * factor)
    }

    /// Scales the field to unit total flux. A zero field is returned unchanged.
    pub fn normalized(&self) -> Self {
        let flux = self.total_flux();
        if flux > 0.0 {
            self.scaled(Complex64::new(flux.sqrt().recip(), 0.0))
        } else {
            self.clone()
        }
    }

    /// Pointwise transmission through `mask`; grid and axial position are kept.
    pub fn apply_mask(&self, mask: &Mask) -> Result<Self> {
        if mask.grid != self.grid {
            return Err(OpticsError::IncompatibleGrid(format!(
                "mask grid {:?} does not match field grid {:?}",
                mask.grid, self.grid
            )));
        }
        Ok(self.map_amplitudes(|i, a| a * mask.transmission[i]))
    }

    pub(crate) fn map_amplitudes(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            amplitudes: self
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, &a)| f(i, a))
                .collect(),
            axial_position: self.axial_position,
        }
    }
}

/// Real transmission in `[0, 1]` per grid sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    grid: TransverseGrid,
    transmission: Vec<f64>,
}

impl Mask {
    pub fn new(grid: TransverseGrid, transmission: Vec<f64>) -> Result<Self> {
        if transmission.len() != grid.len() {
            return Err(OpticsError::InvalidArgument(format!(
                "{} transmission values for a grid of {} samples",
                transmission.len(),
                grid.len()
            )));
        }
        if let Some(i) = transmission.iter().position(|t| !(0.0..=1.0).contains(t)) {
            return Err(OpticsError::InvalidArgument(format!(
                "transmission {i} = {} lies outside [0, 1]",
                transmission[i]
            )));
        }
        Ok(Self { grid, transmission })
    }

    pub fn ones(grid: TransverseGrid) -> Self {
        Self {
            grid,
            transmission: vec![1.0; grid.len()],
        }
    }

    pub fn zeros(grid: TransverseGrid) -> Self {
        Self {
            grid,
            transmission: vec![0.0; grid.len()],
        }
    }

    pub fn grid(&self) -> &TransverseGrid {
        &self.grid
    }

    pub fn transmission(&self) -> &[f64] {
        &self.transmission
    }

    /// Pointwise `1 - t`.
    pub fn complement(&self) -> Self {
        Self {
            grid: self.grid,
            transmission: self.transmission.iter().map(|t| 1.0 - t).collect(),
        }
    }

    /// Number of samples with non-zero transmission.
    pub fn open_count(&self) -> usize {
        self.transmission.iter().filter(|&&t| t > 0.0).count()
    }
}

/// Non-negative intensity per grid sample.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityProfile {
    grid: TransverseGrid,
    values: Vec<f64>,
}

impl IntensityProfile {
    pub fn new(grid: TransverseGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(OpticsError::InvalidArgument(format!(
                "{} intensity values for a grid of {} samples",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(OpticsError::InvalidArgument(format!(
                "intensity {i} = {} is negative or not finite",
                values[i]
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &TransverseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Discrete `Σ I_i Δy`.
    pub fn flux(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.spacing()
    }

    /// Profile divided by its maximum; an all-zero profile is returned as is.
    pub fn normalized_to_peak(&self) -> Self {
        let peak = self.max();
        if peak > 0.0 {
            Self {
                grid: self.grid,
                values: self.values.iter().map(|v| v / peak).collect(),
            }
        } else {
            self.clone()
        }
    }
}
