//! Direct quadrature of the Huygens–Fresnel superposition integral.
//!
//! For a source field `Ψ₀` sampled at `y'_j` and a target point `y` a
//! distance `z` downstream,
//!
//! ```text
//! Ψ(y) = Σ_j Ψ₀(y'_j) · exp(i(k r_j + φ_j)) / r_j · Δy',   r_j = sqrt(z² + (y − y'_j)²)
//! ```
//!
//! using a midpoint rule on the source grid. `φ_j` is an optional extra
//! phase per source sample (the lens hook). No obliquity factor is applied.
//!
//! Each target point is an independent sum whose inner loop always runs over
//! the source samples in grid order, so the parallel and sequential paths
//! return bit-identical results.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{OpticsError, Result};
use crate::field::{SampledField, TransverseGrid, WaveContext};

/// How the per-target sums are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Target points are distributed over the rayon pool. Falls back to
    /// sequential evaluation when the `parallel` feature is disabled.
    #[default]
    Parallel,
}

/// Distance between a source and a target point separated axially by `z`.
///
/// Returns `(r, r - z)`; the second term is formed as `d²/(r + z)` so that
/// it keeps full relative precision when `d ≪ z`.
#[inline]
pub fn point_distance(z: f64, lateral: f64) -> (f64, f64) {
    let d2 = lateral * lateral;
    let r = (z * z + d2).sqrt();
    (r, d2 / (r + z))
}

/// Propagates `source` to `target_grid` at `target_axial_position`.
pub fn propagate(
    source: &SampledField,
    target_grid: &TransverseGrid,
    target_axial_position: f64,
    ctx: &WaveContext,
    extra_phase: Option<&[f64]>,
) -> Result<SampledField> {
    propagate_with(
        source,
        target_grid,
        target_axial_position,
        ctx,
        extra_phase,
        Execution::default(),
    )
}

/// [`propagate`] with an explicit scheduling choice.
pub fn propagate_with(
    source: &SampledField,
    target_grid: &TransverseGrid,
    target_axial_position: f64,
    ctx: &WaveContext,
    extra_phase: Option<&[f64]>,
    execution: Execution,
) -> Result<SampledField> {
    let z = target_axial_position - source.axial_position();
    if !(z.is_finite() && z > 0.0) {
        return Err(OpticsError::InvalidGeometry(format!(
            "propagation distance must be positive, got {z} m (source at {} m, target at {} m)",
            source.axial_position(),
            target_axial_position
        )));
    }
    if let Some(phase) = extra_phase {
        if phase.len() != source.grid().len() {
            return Err(OpticsError::InvalidArgument(format!(
                "extra phase has {} entries for {} source samples",
                phase.len(),
                source.grid().len()
            )));
        }
        if phase.iter().any(|p| !p.is_finite()) {
            return Err(OpticsError::InvalidArgument(
                "extra phase must be finite".into(),
            ));
        }
    }

    // The extra phase enters the exponent as a unimodular factor on each
    // source sample. Zero samples contribute nothing and are skipped; the
    // remaining ones keep their grid order.
    let grid = source.grid();
    let emitters: Vec<(f64, Complex64)> = source
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
        .map(|(j, &a)| {
            let a = match extra_phase {
                Some(phase) => a * Complex64::cis(phase[j]),
                None => a,
            };
            (grid.position(j), a)
        })
        .collect();

    let k = ctx.wavenumber();
    // exp(ikz) is common to every term; it is applied once per target point
    // together with the quadrature weight.
    let common = Complex64::cis(k * z) * grid.spacing();
    let kernel_sum = |y: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(ys, a) in &emitters {
            let (r, excess) = point_distance(z, y - ys);
            acc += a * Complex64::cis(k * excess) / r;
        }
        acc * common
    };

    let amplitudes = evaluate(target_grid, kernel_sum, execution);
    SampledField::new(*target_grid, amplitudes, target_axial_position)
}

fn evaluate(
    target: &TransverseGrid,
    f: impl Fn(f64) -> Complex64 + Sync,
    execution: Execution,
) -> Vec<Complex64> {
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..target.len())
                .into_par_iter()
                .map(|i| f(target.position(i)))
                .collect()
        }
        _ => (0..target.len()).map(|i| f(target.position(i))).collect(),
    }
}

/// Minimum number of source samples so that the kernel phase `k r` changes by
/// at most `π / oversampling` between adjacent source samples, for every
/// target point.
///
/// Both extents are half-widths about a common axis: the source spans
/// `±aperture_extent`, targets lie within `±target_extent`. The steepest
/// kernel phase gradient along the source is `k D / sqrt(z² + D²)` with
/// `D = aperture_extent + target_extent`.
pub fn required_samples(
    aperture_extent: f64,
    target_extent: f64,
    z: f64,
    ctx: &WaveContext,
    oversampling: f64,
) -> Result<usize> {
    for (name, v) in [
        ("aperture_extent", aperture_extent),
        ("target_extent", target_extent),
        ("z", z),
    ] {
        if !(v.is_finite() && v >= 0.0) || (name != "target_extent" && v == 0.0) {
            return Err(OpticsError::InvalidArgument(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    if !(oversampling.is_finite() && oversampling >= 1.0) {
        return Err(OpticsError::InvalidArgument(format!(
            "oversampling must be >= 1, got {oversampling}"
        )));
    }
    let worst = aperture_extent + target_extent;
    let gradient = ctx.wavenumber() * worst / (z * z + worst * worst).sqrt();
    let max_step = PI / (oversampling * gradient);
    let intervals = (2.0 * aperture_extent / max_step).ceil();
    Ok(intervals as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> WaveContext {
        WaveContext::new(650e-9).unwrap()
    }

    fn max_abs(v: &[Complex64]) -> f64 {
        v.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn pseudo_random_field(grid: TransverseGrid, seed: u64) -> SampledField {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let amps = (0..grid.len())
            .map(|_| Complex64::new(next(), next()))
            .collect();
        SampledField::new(grid, amps, 0.0).unwrap()
    }

    #[test]
    fn zero_source_gives_zero_field() {
        let src = SampledField::zeros(TransverseGrid::new(0.0, 1e-3, 33).unwrap(), 0.0);
        let tgt = TransverseGrid::new(0.0, 5e-3, 57).unwrap();
        let out = propagate(&src, &tgt, 1.0, &ctx(), None).unwrap();
        assert!(out.amplitudes().iter().all(|a| a.norm() == 0.0));
        assert_eq!(out.axial_position(), 1.0);
    }

    #[test]
    fn single_sample_matches_spherical_wavelet() {
        let grid = TransverseGrid::new(0.0, 2e-6, 5).unwrap();
        let a = Complex64::new(0.3, -1.2);
        let mut amps = vec![Complex64::new(0.0, 0.0); 5];
        amps[2] = a;
        let src = SampledField::new(grid, amps, 0.0).unwrap();
        let tgt = TransverseGrid::new(0.0, 5e-3, 41).unwrap();
        let c = ctx();
        let out = propagate(&src, &tgt, 1.0, &c, None).unwrap();
        for (i, psi) in out.amplitudes().iter().enumerate() {
            let y = tgt.position(i);
            let r = (1.0 + y * y).sqrt();
            let expected = a * grid.spacing() * Complex64::cis(c.wavenumber() * r) / r;
            // k·r ≈ 1e7 rad here, so the reference phase alone carries ~2e-9 rad of rounding
            assert!(
                (psi - expected).norm() <= 1e-8 * expected.norm(),
                "{psi} vs {expected}"
            );
        }
    }

    #[test]
    fn superposition_is_linear() {
        let grid = TransverseGrid::new(0.0, 1e-3, 301).unwrap();
        let f1 = pseudo_random_field(grid, 1);
        let f2 = pseudo_random_field(grid, 2);
        let (a, b) = (Complex64::new(0.7, -0.4), Complex64::new(-1.3, 2.1));
        let combo = SampledField::new(
            grid,
            f1.amplitudes()
                .iter()
                .zip(f2.amplitudes())
                .map(|(x, y)| a * x + b * y)
                .collect(),
            0.0,
        )
        .unwrap();
        let tgt = TransverseGrid::new(0.0, 4e-3, 257).unwrap();
        let c = ctx();
        let lhs = propagate(&combo, &tgt, 0.8, &c, None).unwrap();
        let p1 = propagate(&f1, &tgt, 0.8, &c, None).unwrap();
        let p2 = propagate(&f2, &tgt, 0.8, &c, None).unwrap();
        let rhs: Vec<Complex64> = p1
            .amplitudes()
            .iter()
            .zip(p2.amplitudes())
            .map(|(x, y)| a * x + b * y)
            .collect();
        let rel = max_diff(lhs.amplitudes(), &rhs) / max_abs(&rhs);
        assert!(rel <= 1e-12, "linearity residual {rel}");
    }

    #[test]
    fn extra_phase_length_checked() {
        let grid = TransverseGrid::new(0.0, 1e-3, 11).unwrap();
        let src = pseudo_random_field(grid, 3);
        let r = propagate(&src, &grid, 1.0, &ctx(), Some(&[0.0; 10]));
        assert!(matches!(r, Err(OpticsError::InvalidArgument(_))));
    }

    #[test]
    fn non_positive_distance_rejected() {
        let grid = TransverseGrid::new(0.0, 1e-3, 11).unwrap();
        let src = SampledField::zeros(grid, 0.5);
        for z in [0.5, 0.2] {
            assert!(matches!(
                propagate(&src, &grid, z, &ctx(), None),
                Err(OpticsError::InvalidGeometry(_))
            ));
        }
    }

    #[test]
    fn sequential_and_parallel_bitwise_equal() {
        let grid = TransverseGrid::new(0.0, 1e-3, 401).unwrap();
        let src = pseudo_random_field(grid, 9);
        let tgt = TransverseGrid::new(0.0, 5e-3, 999).unwrap();
        let c = ctx();
        let phase: Vec<f64> = grid.positions().iter().map(|y| 3e6 * y * y).collect();
        let s = propagate_with(&src, &tgt, 1.0, &c, Some(&phase), Execution::Sequential).unwrap();
        let p = propagate_with(&src, &tgt, 1.0, &c, Some(&phase), Execution::Parallel).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn required_samples_doubles_with_oversampling() {
        let c = ctx();
        for (a, t, z) in [
            (1.5e-3, 5e-3, 1.0),
            (5e-3, 5e-3, 1.0),
            (1e-4, 1e-2, 0.3),
            (2e-3, 0.0, 2.0),
        ] {
            for s in [1.0, 1.7, 4.0, 8.0] {
                let n1 = required_samples(a, t, z, &c, s).unwrap();
                let n2 = required_samples(a, t, z, &c, 2.0 * s).unwrap();
                // interval count (n - 1) at least doubles, less one for rounding
                #[allow(clippy::int_plus_one)]
                let doubled = n2 - 1 >= 2 * (n1 - 1) - 1;
                assert!(doubled, "{n1} -> {n2}");
            }
        }
    }

    #[test]
    fn required_samples_is_monotone() {
        let c = ctx();
        let mut last = 0;
        for i in 1..50 {
            let n = required_samples(1e-3, i as f64 * 2e-4, 1.0, &c, 8.0).unwrap();
            assert!(n >= last);
            last = n;
        }
        let mut last = 0;
        for i in 1..50 {
            let n = required_samples(i as f64 * 1e-4, 5e-3, 1.0, &c, 8.0).unwrap();
            assert!(n >= last);
            last = n;
        }
    }

    #[test]
    fn required_samples_on_axis_limit() {
        let c = ctx();
        let (a, z, s) = (1.5e-3, 1.0, 8.0);
        let self_term =
            (2.0 * a * s * c.wavenumber() * a / (z * z + a * a).sqrt() / PI).ceil() as usize + 1;
        assert_eq!(required_samples(a, 0.0, z, &c, s).unwrap(), self_term);
        assert_eq!(required_samples(a, 1e-12, z, &c, s).unwrap(), self_term);
    }

    #[test]
    fn required_samples_bounds_phase_step() {
        let c = ctx();
        let (a, t, z, s) = (3e-3, 5e-3, 1.0, 8.0);
        let n = required_samples(a, t, z, &c, s).unwrap();
        let step = 2.0 * a / (n - 1) as f64;
        let k = c.wavenumber();
        // brute force over source/target pairs on a fine lattice
        let mut worst: f64 = 0.0;
        for i in 0..=200 {
            let ys = -a + 2.0 * a * i as f64 / 200.0;
            for yt in [-t, 0.0, t] {
                let r0 = (z * z + (yt - ys).powi(2)).sqrt();
                let r1 = (z * z + (yt - ys - step).powi(2)).sqrt();
                worst = worst.max(k * (r1 - r0).abs());
            }
        }
        assert!(worst <= PI / s * (1.0 + 1e-9), "{worst}");
    }

    #[test]
    fn point_distance_excess_is_accurate() {
        let (r, excess) = point_distance(1.0, 1e-4);
        assert_eq!(r, (1.0f64 + 1e-8).sqrt());
        // sqrt(1 + d²) - 1 = d²/2 - d⁴/8 + ...
        assert!((excess - (5e-9 - 1.25e-17)).abs() < 1e-24);
    }
}
