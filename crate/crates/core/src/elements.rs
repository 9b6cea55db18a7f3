//! Slit apertures, wire obstructions and the thin lens.

use num_complex::Complex64;

use crate::error::{OpticsError, Result};
use crate::field::{Mask, SampledField, TransverseGrid, WaveContext};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitSpec {
    center: f64,
    width: f64,
}

impl SlitSpec {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !center.is_finite() || !(width.is_finite() && width > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "slit needs a finite center and positive width, got center {center}, width {width}"
            )));
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Boundary samples count as inside.
    pub fn contains(&self, y: f64) -> bool {
        (y - self.center).abs() <= 0.5 * self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensSpec {
    focal_length: f64,
}

impl LensSpec {
    pub fn new(focal_length: f64) -> Result<Self> {
        if !(focal_length.is_finite() && focal_length > 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "focal length must be positive, got {focal_length}"
            )));
        }
        Ok(Self { focal_length })
    }

    pub fn focal_length(&self) -> f64 {
        self.focal_length
    }
}

/// Thin opaque wires at fixed transverse positions.
#[derive(Debug, Clone, PartialEq)]
pub struct WireArraySpec {
    centers: Vec<f64>,
    wire_width: f64,
}

impl WireArraySpec {
    pub fn new(centers: Vec<f64>, wire_width: f64) -> Result<Self> {
        if !(wire_width.is_finite() && wire_width >= 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "wire width must be non-negative, got {wire_width}"
            )));
        }
        if centers.iter().any(|c| !c.is_finite()) {
            return Err(OpticsError::InvalidArgument(
                "wire centers must be finite".into(),
            ));
        }
        for (i, a) in centers.iter().enumerate() {
            for b in &centers[i + 1..] {
                if (a - b).abs() < wire_width {
                    return Err(OpticsError::InvalidArgument(format!(
                        "wires at {a} m and {b} m overlap for width {wire_width} m"
                    )));
                }
            }
        }
        Ok(Self {
            centers,
            wire_width,
        })
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn wire_width(&self) -> f64 {
        self.wire_width
    }
}

/// Transmission 1 inside any slit, 0 elsewhere.
pub fn slit_mask(grid: &TransverseGrid, slits: &[SlitSpec]) -> Mask {
    let t = grid
        .positions()
        .into_iter()
        .map(|y| {
            if slits.iter().any(|s| s.contains(y)) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Mask::new(*grid, t).expect("binary transmission on the grid")
}

/// Transmission 0 on any wire, 1 elsewhere.
///
/// Zero-width wires are treated as absent, whether or not a wire center
/// coincides with a sample.
pub fn wire_mask(grid: &TransverseGrid, wires: &WireArraySpec) -> Mask {
    if wires.wire_width == 0.0 {
        return Mask::ones(*grid);
    }
    let half = 0.5 * wires.wire_width;
    let t = grid
        .positions()
        .into_iter()
        .map(|y| {
            if wires.centers.iter().any(|c| (y - c).abs() <= half) {
                0.0
            } else {
                1.0
            }
        })
        .collect();
    Mask::new(*grid, t).expect("binary transmission on the grid")
}

/// Lens phase `δ(y) = −2k·sqrt(4f² + y²)`, up to an irrelevant constant.
///
/// Paraxially `δ(y) − δ(0) ≈ −k y² / (2f)`, with relative error about
/// `y² / (16 f²)`.
pub fn lens_phase(y: f64, lens: &LensSpec, ctx: &WaveContext) -> f64 {
    let f = lens.focal_length;
    -2.0 * ctx.wavenumber() * (4.0 * f * f + y * y).sqrt()
}

/// Lens phase evaluated on every sample of `grid`.
pub fn lens_phase_profile(grid: &TransverseGrid, lens: &LensSpec, ctx: &WaveContext) -> Vec<f64> {
    grid.positions()
        .into_iter()
        .map(|y| lens_phase(y, lens, ctx))
        .collect()
}

/// Multiplies the field by `exp(iδ(y))`. The lens spans the whole grid.
pub fn apply_lens(field: &SampledField, lens: &LensSpec, ctx: &WaveContext) -> SampledField {
    let grid = *field.grid();
    field.map_amplitudes(|i, a| a * Complex64::cis(lens_phase(grid.position(i), lens, ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::thin_lens_paraxial_phase;
    use crate::propagation::propagate;

    fn ctx() -> WaveContext {
        WaveContext::new(650e-9).unwrap()
    }

    #[test]
    fn slit_wider_than_grid_is_fully_open() {
        let g = TransverseGrid::new(0.0, 1e-3, 101).unwrap();
        let m = slit_mask(&g, &[SlitSpec::new(0.0, 5e-3).unwrap()]);
        assert_eq!(m, Mask::ones(g));
    }

    #[test]
    fn no_slits_blocks_everything() {
        let g = TransverseGrid::new(0.0, 1e-3, 101).unwrap();
        assert_eq!(slit_mask(&g, &[]), Mask::zeros(g));
    }

    #[test]
    fn disjoint_slit_sample_counts() {
        let g = TransverseGrid::new(0.0, 2e-3, 4001).unwrap();
        let w = 250e-6;
        let slits = [
            SlitSpec::new(-1e-3, w).unwrap(),
            SlitSpec::new(1e-3, w).unwrap(),
        ];
        let m = slit_mask(&g, &slits);
        let per_slit = w / g.spacing();
        let open = m.open_count() as f64;
        assert!(
            (open - 2.0 * per_slit).abs() <= 2.0,
            "{open} vs {}",
            2.0 * per_slit
        );
        for s in &slits {
            let single = slit_mask(&g, &[*s]).open_count() as f64;
            assert!((single - per_slit).abs() <= 1.0);
        }
    }

    #[test]
    fn overlapping_slits_form_union() {
        let g = TransverseGrid::new(0.0, 1e-3, 201).unwrap();
        let a = SlitSpec::new(0.0, 4e-4).unwrap();
        let b = SlitSpec::new(2e-4, 4e-4).unwrap();
        let m = slit_mask(&g, &[a, b]);
        for (i, y) in g.positions().into_iter().enumerate() {
            let expected = a.contains(y) || b.contains(y);
            assert_eq!(m.transmission()[i] == 1.0, expected);
        }
    }

    #[test]
    fn slit_boundary_counts_as_inside() {
        let g = TransverseGrid::new(0.0, 1.0, 5).unwrap();
        let m = slit_mask(&g, &[SlitSpec::new(0.0, 1.0).unwrap()]);
        assert_eq!(m.transmission(), &[0.0, 1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_width_wires_block_nothing() {
        let g = TransverseGrid::new(0.0, 1.0, 5).unwrap();
        let w = WireArraySpec::new(vec![0.0, 0.5, 0.3], 0.0).unwrap();
        assert_eq!(wire_mask(&g, &w), Mask::ones(g));
    }

    #[test]
    fn wire_covering_grid_blocks_everything() {
        let g = TransverseGrid::new(0.0, 1e-3, 51).unwrap();
        let w = WireArraySpec::new(vec![0.0], 3e-3).unwrap();
        assert_eq!(wire_mask(&g, &w), Mask::zeros(g));
    }

    #[test]
    fn wires_are_complement_of_slits() {
        let g = TransverseGrid::new(0.0, 5e-3, 2463).unwrap();
        let centers = vec![-1.6e-3, -0.97e-3, -0.33e-3, 0.33e-3, 0.97e-3, 1.6e-3];
        let width = 57e-6;
        let wires = WireArraySpec::new(centers.clone(), width).unwrap();
        let slits: Vec<SlitSpec> = centers
            .iter()
            .map(|&c| SlitSpec::new(c, width).unwrap())
            .collect();
        assert_eq!(wire_mask(&g, &wires), slit_mask(&g, &slits).complement());
    }

    #[test]
    fn overlapping_wires_rejected() {
        assert!(WireArraySpec::new(vec![0.0, 1e-5], 2e-5).is_err());
        assert!(WireArraySpec::new(vec![0.0, 2e-5], 2e-5).is_ok());
        assert!(WireArraySpec::new(vec![0.0], -1.0).is_err());
    }

    #[test]
    fn lens_phase_at_center_and_at_two_root_three_f() {
        let c = ctx();
        let f = 0.5;
        let lens = LensSpec::new(f).unwrap();
        let k = c.wavenumber();
        assert_eq!(lens_phase(0.0, &lens, &c), -4.0 * k * f);
        let y = 2.0 * 3f64.sqrt() * f;
        let rel = (lens_phase(y, &lens, &c) + 8.0 * k * f).abs() / (8.0 * k * f);
        assert!(rel < 1e-15);
    }

    #[test]
    fn lens_phase_is_even_and_maximal_on_axis() {
        let c = ctx();
        let lens = LensSpec::new(0.5).unwrap();
        let d0 = lens_phase(0.0, &lens, &c);
        for y in [1e-6, 3.3e-4, 1e-2, 0.2, 7.0] {
            assert_eq!(lens_phase(y, &lens, &c), lens_phase(-y, &lens, &c));
            assert!(lens_phase(y, &lens, &c) < d0);
        }
    }

    #[test]
    fn lens_phase_paraxial_at_one_centimeter() {
        let c = ctx();
        let lens = LensSpec::new(0.5).unwrap();
        let y = 0.01;
        let exact = lens_phase(y, &lens, &c) - lens_phase(0.0, &lens, &c);
        let paraxial = thin_lens_paraxial_phase(y, 0.5, &c);
        assert!(((exact - paraxial) / paraxial).abs() <= 1e-3);
    }

    #[test]
    fn apply_lens_keeps_flux_and_zero() {
        let c = ctx();
        let lens = LensSpec::new(0.5).unwrap();
        let g = TransverseGrid::new(0.0, 5e-3, 1001).unwrap();
        let z = SampledField::zeros(g, 1.0);
        assert_eq!(apply_lens(&z, &lens, &c), z);
        let f = SampledField::new(
            g,
            (0..1001)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), 0.2))
                .collect(),
            1.0,
        )
        .unwrap();
        let lensed = apply_lens(&f, &lens, &c);
        let rel = (lensed.total_flux() - f.total_flux()).abs() / f.total_flux();
        assert!(rel <= 1e-12);
        for (a, b) in lensed.amplitudes().iter().zip(f.amplitudes()) {
            assert!((a.norm_sqr() - b.norm_sqr()).abs() <= 1e-14 * b.norm_sqr().max(1e-300));
        }
    }

    #[test]
    fn apply_lens_then_propagate_equals_extra_phase() {
        let c = ctx();
        let lens = LensSpec::new(0.5).unwrap();
        let g = TransverseGrid::new(0.0, 5e-3, 801).unwrap();
        let f = SampledField::new(
            g,
            (0..801)
                .map(|i| Complex64::from_polar(1.0 + (i as f64 * 0.05).cos(), i as f64 * 0.011))
                .collect(),
            1.0,
        )
        .unwrap();
        let target = TransverseGrid::new(0.0, 5e-3, 301).unwrap();
        let via_lens = propagate(&apply_lens(&f, &lens, &c), &target, 2.0, &c, None).unwrap();
        let phase = lens_phase_profile(&g, &lens, &c);
        let via_phase = propagate(&f, &target, 2.0, &c, Some(&phase)).unwrap();
        let scale = via_lens
            .amplitudes()
            .iter()
            .map(|a| a.norm())
            .fold(0.0, f64::max);
        for (a, b) in via_lens.amplitudes().iter().zip(via_phase.amplitudes()) {
            assert!((a - b).norm() <= 1e-14 * scale);
        }
    }
}
