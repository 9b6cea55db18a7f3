//! The double-slit optical train and the three experiments run on it.
//!
//! ```text
//!   slits (z = 0) ──u──▶ lens plane (z = u) ──v──▶ image plane (z = u + v)
//!                         wires, then lens phase
//! ```
//!
//! The upper slit sits at `+d/2`, the lower at `−d/2`. Every run starts from a
//! source field of unit total flux over the open slits, so all intensities are
//! relative.

use crate::analysis::{
    find_minima, find_peaks, flux_ratio, intensity, peak_attenuation, visibility, DEFAULT_THRESHOLD,
};
use crate::elements::{
    lens_phase_profile, slit_mask, wire_mask, LensSpec, SlitSpec, WireArraySpec,
};
use crate::error::{OpticsError, Result};
use crate::field::{IntensityProfile, SampledField, TransverseGrid, WaveContext};
use crate::propagation::{propagate, required_samples};

/// Documented defaults for every optional setting.
pub mod defaults {
    pub const WAVELENGTH: f64 = 650e-9;
    pub const SLIT_WIDTH: f64 = 125e-6;
    pub const SLIT_SEPARATION: f64 = 1e-3;
    pub const SOURCE_TO_LENS: f64 = 1.0;
    pub const FOCAL_LENGTH: f64 = 0.5;
    /// Half-width of the lens and image planes.
    pub const PLANE_HALF_WIDTH: f64 = 5e-3;
    pub const OVERSAMPLING: f64 = 8.0;
    pub const SAMPLES_PER_SLIT: usize = 64;
    pub const WIRE_COUNT: usize = 6;
    /// Tuned so that the single-slit image peak loses 10% of its height.
    pub const WIRE_WIDTH: f64 = 57e-6;
}

/// Which slits transmit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlitState {
    #[default]
    Both,
    UpperOnly,
    LowerOnly,
}

impl SlitState {
    pub const ALL: [SlitState; 3] = [SlitState::Both, SlitState::UpperOnly, SlitState::LowerOnly];

    /// Short label used in profile and metric names.
    pub fn label(self) -> &'static str {
        match self {
            SlitState::Both => "both",
            SlitState::UpperOnly => "upper",
            SlitState::LowerOnly => "lower",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitPair {
    pub upper: SlitSpec,
    pub lower: SlitSpec,
}

impl SlitPair {
    /// Two slits of equal width placed symmetrically at `±separation / 2`.
    pub fn symmetric(width: f64, separation: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "slit separation must be positive, got {separation}"
            )));
        }
        Ok(Self {
            upper: SlitSpec::new(0.5 * separation, width)?,
            lower: SlitSpec::new(-0.5 * separation, width)?,
        })
    }

    /// Center-to-center distance.
    pub fn separation(&self) -> f64 {
        self.upper.center() - self.lower.center()
    }

    pub fn open(&self, state: SlitState) -> Vec<SlitSpec> {
        match state {
            SlitState::Both => vec![self.upper, self.lower],
            SlitState::UpperOnly => vec![self.upper],
            SlitState::LowerOnly => vec![self.lower],
        }
    }

    /// Half-width of the smallest centered interval holding both slits.
    fn extent(&self) -> f64 {
        [self.upper, self.lower]
            .iter()
            .map(|s| s.center().abs() + 0.5 * s.width())
            .fold(0.0, f64::max)
    }

    fn min_width(&self) -> f64 {
        self.upper.width().min(self.lower.width())
    }
}

/// Wire obstruction settings. Without explicit centers the wires go on the
/// innermost minima of the both-slit pattern at the lens plane.
#[derive(Debug, Clone, PartialEq)]
pub struct WireLayout {
    pub count: usize,
    pub width: f64,
    pub centers: Option<Vec<f64>>,
}

impl Default for WireLayout {
    fn default() -> Self {
        Self {
            count: defaults::WIRE_COUNT,
            width: defaults::WIRE_WIDTH,
            centers: None,
        }
    }
}

/// Resolved sampling of one plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneGrid {
    pub center: f64,
    pub half_width: f64,
    pub samples: usize,
}

impl PlaneGrid {
    pub fn grid(&self) -> Result<TransverseGrid> {
        TransverseGrid::new(self.center, self.half_width, self.samples)
    }

    fn reach(&self) -> f64 {
        self.center.abs() + self.half_width
    }
}

/// Requested sampling of one plane; unset entries are derived.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlaneRequest {
    pub center: Option<f64>,
    pub half_width: Option<f64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRequest {
    pub source: PlaneRequest,
    pub lens: PlaneRequest,
    pub image: PlaneRequest,
    pub oversampling: f64,
    pub samples_per_slit: usize,
}

impl Default for GridRequest {
    fn default() -> Self {
        let optical = PlaneRequest {
            half_width: Some(defaults::PLANE_HALF_WIDTH),
            ..PlaneRequest::default()
        };
        Self {
            source: PlaneRequest::default(),
            lens: optical,
            image: optical,
            oversampling: defaults::OVERSAMPLING,
            samples_per_slit: defaults::SAMPLES_PER_SLIT,
        }
    }
}

/// Resolved grids for the source, lens and image planes, together with the
/// sampling parameters they were derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPlan {
    pub source: PlaneGrid,
    pub lens: PlaneGrid,
    pub image: PlaneGrid,
    pub oversampling: f64,
    pub samples_per_slit: usize,
}

fn round_up_to_odd(n: usize) -> usize {
    n | 1
}

impl GridPlan {
    /// Fills in unset grid entries.
    ///
    /// * source: centered on the axis, just covering both slits, with at
    ///   least `samples_per_slit` samples across the narrower slit and enough
    ///   to resolve the kernel phase towards the lens plane;
    /// * lens: enough samples to resolve the kernel phase towards the image
    ///   plane (towards itself at distance `u` when there is no lens);
    /// * image: as many samples as the lens plane.
    ///
    /// Derived counts are rounded up to odd so centered grids hold the axis.
    pub fn resolve(
        request: &GridRequest,
        ctx: &WaveContext,
        slits: &SlitPair,
        source_to_lens: f64,
        lens_to_image: Option<f64>,
    ) -> Result<Self> {
        let os = request.oversampling;
        if !(os.is_finite() && os >= 1.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "oversampling must be >= 1, got {os}"
            )));
        }
        if request.samples_per_slit == 0 {
            return Err(OpticsError::InvalidArgument(
                "samples_per_slit must be >= 1".into(),
            ));
        }
        let need = |req: &PlaneRequest, name: &str| {
            req.half_width.ok_or_else(|| {
                OpticsError::InvalidArgument(format!("{name} plane half-width is required"))
            })
        };
        let lens_hw = need(&request.lens, "lens")?;
        let image_hw = need(&request.image, "image")?;

        let mut lens = PlaneGrid {
            center: request.lens.center.unwrap_or(0.0),
            half_width: lens_hw,
            samples: 0,
        };
        let mut image = PlaneGrid {
            center: request.image.center.unwrap_or(0.0),
            half_width: image_hw,
            samples: 0,
        };
        lens.samples = match request.lens.samples {
            Some(n) => n,
            None => {
                let (target, z) = match lens_to_image {
                    Some(v) => (image.reach(), v),
                    None => (lens.reach(), source_to_lens),
                };
                round_up_to_odd(required_samples(lens.reach(), target, z, ctx, os)?)
            }
        };
        image.samples = request.image.samples.unwrap_or(lens.samples);

        let mut source = PlaneGrid {
            center: request.source.center.unwrap_or(0.0),
            half_width: request.source.half_width.unwrap_or_else(|| slits.extent()),
            samples: 0,
        };
        source.samples = match request.source.samples {
            Some(n) => n,
            None => {
                let pitch = slits.min_width() / request.samples_per_slit as f64;
                let by_slit = (2.0 * source.half_width / pitch).ceil() as usize + 1;
                let by_phase =
                    required_samples(source.reach(), lens.reach(), source_to_lens, ctx, os)?;
                round_up_to_odd(by_slit.max(by_phase))
            }
        };

        for plane in [&source, &lens, &image] {
            plane.grid()?;
        }
        Ok(Self {
            source,
            lens,
            image,
            oversampling: os,
            samples_per_slit: request.samples_per_slit,
        })
    }

    /// Returns a copy whose planes use the given explicit sample counts.
    pub fn with_samples(mut self, source: usize, lens: usize, image: usize) -> Self {
        self.source.samples = source;
        self.lens.samples = lens;
        self.image.samples = image;
        self
    }
}

/// Unresolved description of an experiment; `resolve` turns it into an
/// [`ExperimentConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSetup {
    pub wavelength: f64,
    pub slit_width: f64,
    pub slit_separation: f64,
    pub slit_state: SlitState,
    pub source_to_lens: f64,
    pub focal_length: Option<f64>,
    /// Explicit lens-to-image distance; derived from the thin-lens relation
    /// when unset.
    pub lens_to_image: Option<f64>,
    pub wires: Option<WireLayout>,
    pub grids: GridRequest,
}

impl Default for ExperimentSetup {
    fn default() -> Self {
        Self {
            wavelength: defaults::WAVELENGTH,
            slit_width: defaults::SLIT_WIDTH,
            slit_separation: defaults::SLIT_SEPARATION,
            slit_state: SlitState::Both,
            source_to_lens: defaults::SOURCE_TO_LENS,
            focal_length: Some(defaults::FOCAL_LENGTH),
            lens_to_image: None,
            wires: Some(WireLayout::default()),
            grids: GridRequest::default(),
        }
    }
}

impl ExperimentSetup {
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let ctx = WaveContext::new(self.wavelength)?;
        let slits = SlitPair::symmetric(self.slit_width, self.slit_separation)?;
        let u = self.source_to_lens;
        if !(u.is_finite() && u > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "source-to-lens distance must be positive, got {u}"
            )));
        }
        let lens = self.focal_length.map(LensSpec::new).transpose()?;
        let lens_to_image = match (lens, self.lens_to_image) {
            (None, _) => None,
            (Some(_), Some(v)) if !(v.is_finite() && v > 0.0) => {
                return Err(OpticsError::InvalidArgument(format!(
                    "lens-to-image distance must be positive, got {v}"
                )))
            }
            (Some(_), Some(v)) => Some(v),
            (Some(l), None) => Some(image_distance(u, &l)?.distance),
        };
        if let Some(w) = &self.wires {
            if !(w.width.is_finite() && w.width >= 0.0) {
                return Err(OpticsError::InvalidArgument(format!(
                    "wire width must be non-negative, got {}",
                    w.width
                )));
            }
            if let Some(c) = &w.centers {
                WireArraySpec::new(c.clone(), w.width)?;
            }
        }
        let grids = GridPlan::resolve(&self.grids, &ctx, &slits, u, lens_to_image)?;
        Ok(ExperimentConfig {
            ctx,
            slits,
            slit_state: self.slit_state,
            source_to_lens: u,
            lens,
            lens_to_image,
            wires: self.wires.clone(),
            grids,
        })
    }
}

/// Fully resolved optical train.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub ctx: WaveContext,
    pub slits: SlitPair,
    pub slit_state: SlitState,
    pub source_to_lens: f64,
    pub lens: Option<LensSpec>,
    pub lens_to_image: Option<f64>,
    pub wires: Option<WireLayout>,
    pub grids: GridPlan,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentSetup::default()
            .resolve()
            .expect("default setup resolves")
    }
}

impl ExperimentConfig {
    /// Fringe period `λu/d` at the lens plane in the far-field limit.
    pub fn fringe_spacing(&self) -> f64 {
        self.ctx.wavelength() * self.source_to_lens / self.slits.separation()
    }

    fn require_lens(&self) -> Result<(LensSpec, f64)> {
        match (self.lens, self.lens_to_image) {
            (Some(l), Some(v)) => Ok((l, v)),
            _ => Err(OpticsError::Configuration(
                "this scenario needs a lens".into(),
            )),
        }
    }

    /// Unit-flux source over the slits open in `state`.
    pub fn source_field(&self, state: SlitState) -> Result<SampledField> {
        let grid = self.grids.source.grid()?;
        let mask = slit_mask(&grid, &self.slits.open(state));
        let uniform = SampledField::new(
            grid,
            vec![num_complex::Complex64::new(1.0, 0.0); grid.len()],
            0.0,
        )?;
        Ok(uniform.apply_mask(&mask)?.normalized())
    }

    /// Field arriving at the lens plane.
    pub fn lens_plane_field(&self, state: SlitState) -> Result<SampledField> {
        let source = self.source_field(state)?;
        propagate(
            &source,
            &self.grids.lens.grid()?,
            self.source_to_lens,
            &self.ctx,
            None,
        )
    }

    /// Image-plane field for a given lens-plane field, optionally obstructed
    /// by wires just before the lens. The lens phase enters the propagation
    /// exponent.
    pub fn image_plane_field(
        &self,
        at_lens: &SampledField,
        wires: Option<&WireArraySpec>,
    ) -> Result<SampledField> {
        let (lens, v) = self.require_lens()?;
        let grid = *at_lens.grid();
        let blocked = match wires {
            Some(w) => at_lens.apply_mask(&wire_mask(&grid, w))?,
            None => at_lens.clone(),
        };
        let phase = lens_phase_profile(&grid, &lens, &self.ctx);
        propagate(
            &blocked,
            &self.grids.image.grid()?,
            at_lens.axial_position() + v,
            &self.ctx,
            Some(&phase),
        )
    }
}

/// Image distance and lateral magnification of a thin lens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageConjugate {
    pub distance: f64,
    pub magnification: f64,
}

/// Real image of an object a distance `u` before `lens`.
pub fn image_distance(u: f64, lens: &LensSpec) -> Result<ImageConjugate> {
    let f = lens.focal_length();
    if !(u.is_finite() && u > 0.0) {
        return Err(OpticsError::InvalidArgument(format!(
            "object distance must be positive, got {u}"
        )));
    }
    if u == f {
        return Err(OpticsError::NoFiniteImage(f));
    }
    if u < f {
        return Err(OpticsError::VirtualImage { u, f });
    }
    let distance = 1.0 / (1.0 / f - 1.0 / u);
    Ok(ImageConjugate {
        distance,
        magnification: distance / u,
    })
}

/// Named profiles and metrics from one scenario, with the config that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub profiles: Vec<(String, IntensityProfile)>,
    pub metrics: Vec<(String, f64)>,
    pub config: ExperimentConfig,
}

impl ScenarioResult {
    fn new(config: &ExperimentConfig) -> Self {
        Self {
            profiles: Vec::new(),
            metrics: Vec::new(),
            config: config.clone(),
        }
    }

    pub fn profile(&self, name: &str) -> Option<&IntensityProfile> {
        self.profiles
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    fn push_metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.push((name.into(), value));
    }

    fn push_profile(&mut self, name: impl Into<String>, profile: IntensityProfile) {
        self.profiles.push((name.into(), profile));
    }
}

/// Window of one fringe period either side of the axis, clipped to the grid.
fn central_window(grid: &TransverseGrid, period: f64) -> (f64, f64) {
    let (lo, hi) = grid.bounds();
    ((-period).max(lo), period.min(hi))
}

/// Intensity at the lens plane for each slit state.
pub fn scenario_interference(config: &ExperimentConfig) -> Result<ScenarioResult> {
    let mut result = ScenarioResult::new(config);
    let period = config.fringe_spacing();
    result.push_metric("fringe_spacing_expected_m", period);
    for state in SlitState::ALL {
        let profile = intensity(&config.lens_plane_field(state)?);
        let peaks = find_peaks(&profile, DEFAULT_THRESHOLD)?;
        result.push_metric(format!("peak_count_{}", state.label()), peaks.len() as f64);
        if state == SlitState::Both {
            let window = central_window(profile.grid(), period);
            result.push_metric("visibility_both", visibility(&profile, window)?);
            let minima = find_minima(&profile, DEFAULT_THRESHOLD)?;
            result.push_metric("minimum_count_both", minima.len() as f64);
            let central: Vec<f64> = minima
                .into_iter()
                .filter(|y| y.abs() <= 3.0 * period)
                .collect();
            if central.len() >= 2 {
                let measured =
                    (central[central.len() - 1] - central[0]) / (central.len() - 1) as f64;
                result.push_metric("fringe_spacing_measured_m", measured);
            }
        }
        result.push_profile(state.label(), profile);
    }
    Ok(result)
}

/// Intensity at the image plane behind the lens for each slit state.
pub fn scenario_lens_image(config: &ExperimentConfig) -> Result<ScenarioResult> {
    let (lens, v) = config.require_lens()?;
    let mut result = ScenarioResult::new(config);
    let magnification = v / config.source_to_lens;
    let offset = 0.5 * magnification * config.slits.separation();
    result.push_metric("image_distance_m", v);
    result.push_metric("magnification", magnification);
    result.push_metric("focal_length_m", lens.focal_length());
    result.push_metric("expected_peak_offset_m", offset);

    for state in SlitState::ALL {
        let at_lens = config.lens_plane_field(state)?;
        let profile = intensity(&config.image_plane_field(&at_lens, None)?);
        let peaks = find_peaks(&profile, DEFAULT_THRESHOLD)?;
        let label = state.label();
        result.push_metric(format!("peak_count_{label}"), peaks.len() as f64);
        match state {
            SlitState::Both => {
                if peaks.len() == 2 {
                    let (low, high) = (peaks.positions[0], peaks.positions[1]);
                    result.push_metric("peak_low_both_m", low);
                    result.push_metric("peak_high_both_m", high);
                    let error = (low + offset).abs().max((high - offset).abs());
                    result.push_metric("peak_error_frac_both", error / (2.0 * offset));
                }
            }
            SlitState::UpperOnly | SlitState::LowerOnly => {
                if let Some(i) = peaks.tallest() {
                    let pos = peaks.positions[i];
                    result.push_metric(format!("peak_position_{label}_m"), pos);
                    // the image is inverted: the upper slit lands below the axis
                    let inverted = match state {
                        SlitState::UpperOnly => pos < 0.0,
                        _ => pos > 0.0,
                    };
                    result.push_metric(
                        format!("inverted_{label}"),
                        if inverted { 1.0 } else { 0.0 },
                    );
                }
            }
        }
        result.push_profile(label, profile);
    }
    Ok(result)
}

/// Picks the `count` minima closest to the axis, returned in ascending order.
fn innermost(minima: &[f64], count: usize) -> Result<Vec<f64>> {
    if minima.len() < count {
        return Err(OpticsError::Configuration(format!(
            "{count} wires requested but only {} interference minima were found",
            minima.len()
        )));
    }
    let mut by_distance = minima.to_vec();
    by_distance.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    let mut chosen = by_distance[..count].to_vec();
    chosen.sort_by(f64::total_cmp);
    Ok(chosen)
}

/// Wire centers for `config`: explicit ones, or the innermost minima of the
/// both-slit pattern at the lens plane.
pub fn wire_centers(config: &ExperimentConfig, layout: &WireLayout) -> Result<Vec<f64>> {
    match &layout.centers {
        Some(c) => Ok(c.clone()),
        None => {
            let profile = intensity(&config.lens_plane_field(SlitState::Both)?);
            innermost(&find_minima(&profile, DEFAULT_THRESHOLD)?, layout.count)
        }
    }
}

/// Wired vs unwired images, for both slits and for the upper slit alone.
pub fn scenario_wires(config: &ExperimentConfig) -> Result<ScenarioResult> {
    config.require_lens()?;
    let layout = config.wires.clone().ok_or_else(|| {
        OpticsError::Configuration("the wires scenario needs a wire layout".into())
    })?;
    let centers = wire_centers(config, &layout)?;
    let wires = WireArraySpec::new(centers, layout.width)?;

    let mut result = ScenarioResult::new(config);
    result.push_metric("wire_count", wires.centers().len() as f64);
    result.push_metric("wire_width_m", wires.wire_width());
    for (i, c) in wires.centers().iter().enumerate() {
        result.push_metric(format!("wire_center_{i}_m"), *c);
    }

    let mut deficits = Vec::new();
    for (state, metric_label) in [
        (SlitState::Both, "both"),
        (SlitState::UpperOnly, "single_slit"),
    ] {
        let at_lens = config.lens_plane_field(state)?;
        let lens_grid = *at_lens.grid();
        let intercepted = flux_ratio(
            &intensity(&at_lens.apply_mask(&wire_mask(&lens_grid, &wires))?),
            &intensity(&at_lens),
        )?;
        let clear = intensity(&config.image_plane_field(&at_lens, None)?);
        let wired = intensity(&config.image_plane_field(&at_lens, Some(&wires))?);
        let ratio = flux_ratio(&wired, &clear)?;
        let attenuation = peak_attenuation(
            &find_peaks(&wired, DEFAULT_THRESHOLD)?,
            &find_peaks(&clear, DEFAULT_THRESHOLD)?,
        )?;
        result.push_metric(format!("flux_ratio_{metric_label}"), ratio);
        result.push_metric(format!("peak_attenuation_{metric_label}"), attenuation);
        result.push_metric(
            format!("lens_plane_transmission_{metric_label}"),
            intercepted,
        );
        deficits.push(1.0 - ratio);
        result.push_profile(format!("{}_no_wires", state.label()), clear);
        result.push_profile(format!("{}_wires", state.label()), wired);
    }
    if deficits[1] > 0.0 {
        result.push_metric("flux_deficit_ratio", deficits[0] / deficits[1]);
    }
    Ok(result)
}

/// Single-slit image peak attenuation caused by wires of the given width at
/// the configured (or detected) centers.
pub fn single_slit_attenuation(
    config: &ExperimentConfig,
    centers: &[f64],
    width: f64,
) -> Result<f64> {
    let at_lens = config.lens_plane_field(SlitState::UpperOnly)?;
    let clear = intensity(&config.image_plane_field(&at_lens, None)?);
    let wires = WireArraySpec::new(centers.to_vec(), width)?;
    let wired = intensity(&config.image_plane_field(&at_lens, Some(&wires))?);
    peak_attenuation(
        &find_peaks(&wired, DEFAULT_THRESHOLD)?,
        &find_peaks(&clear, DEFAULT_THRESHOLD)?,
    )
}

/// Bisects the wire width in `(0, fringe spacing / 4]` until the single-slit
/// peak attenuation is within `tolerance` of `target`.
///
/// Attenuation grows monotonically with width, in steps of one lens-plane
/// sample per wire edge.
pub fn tune_wire_width(config: &ExperimentConfig, target: f64, tolerance: f64) -> Result<f64> {
    let layout = config.wires.clone().unwrap_or_default();
    let centers = wire_centers(config, &layout)?;
    let at_lens = config.lens_plane_field(SlitState::UpperOnly)?;
    let clear_peaks = find_peaks(
        &intensity(&config.image_plane_field(&at_lens, None)?),
        DEFAULT_THRESHOLD,
    )?;
    let attenuation = |width: f64| -> Result<f64> {
        let wires = WireArraySpec::new(centers.clone(), width)?;
        let wired = intensity(&config.image_plane_field(&at_lens, Some(&wires))?);
        peak_attenuation(&find_peaks(&wired, DEFAULT_THRESHOLD)?, &clear_peaks)
    };

    let (mut lo, mut hi) = (0.0, 0.25 * config.fringe_spacing());
    if attenuation(hi)? < target - tolerance {
        return Err(OpticsError::Configuration(format!(
            "attenuation {target} is out of reach for wires up to {hi} m wide"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let a = attenuation(mid)?;
        if (a - target).abs() <= tolerance {
            return Ok(mid);
        }
        if a < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(OpticsError::Configuration(format!(
        "no wire width in [{lo}, {hi}] m gives attenuation {target} ± {tolerance}"
    )))
}
