//! Intensity profiles and the quantities read off them: extrema, fringe
//! visibility, and interception ratios between two runs.

use crate::error::{OpticsError, Result};
use crate::field::{IntensityProfile, SampledField};

/// Default relative depth/height threshold for extremum detection.
pub const DEFAULT_THRESHOLD: f64 = 0.05;

/// Detected peaks, ascending in position.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PeakReport {
    pub positions: Vec<f64>,
    pub heights: Vec<f64>,
}

impl PeakReport {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Index of the tallest peak.
    pub fn tallest(&self) -> Option<usize> {
        self.heights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
    }
}

/// `|Ψ|²` per sample.
pub fn intensity(field: &SampledField) -> IntensityProfile {
    let values = field.amplitudes().iter().map(|a| a.norm_sqr()).collect();
    IntensityProfile::new(*field.grid(), values).expect("squared moduli of finite amplitudes")
}

fn check_threshold(threshold: f64) -> Result<()> {
    if (0.0..1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(OpticsError::InvalidArgument(format!(
            "threshold must lie in [0, 1), got {threshold}"
        )))
    }
}

/// Vertex of the parabola through three equally spaced samples, as an offset
/// in units of the spacing from the middle sample, and the value there.
fn parabolic_vertex(left: f64, mid: f64, right: f64) -> (f64, f64) {
    let curvature = left - 2.0 * mid + right;
    if curvature == 0.0 {
        return (0.0, mid);
    }
    let offset = 0.5 * (left - right) / curvature;
    (offset, mid - 0.25 * (left - right) * offset)
}

/// Interior strict local extrema, refined by a three-point parabola.
fn refined_extrema(
    profile: &IntensityProfile,
    accept: impl Fn(f64, f64, f64) -> bool,
) -> Vec<(f64, f64)> {
    let v = profile.values();
    let grid = profile.grid();
    let dy = grid.spacing();
    v.windows(3)
        .enumerate()
        .filter(|(_, w)| accept(w[0], w[1], w[2]))
        .map(|(i, w)| {
            let (offset, value) = parabolic_vertex(w[0], w[1], w[2]);
            (grid.position(i + 1) + offset * dy, value)
        })
        .collect()
}

/// Positions of samples strictly below both neighbours and below
/// `depth_threshold × max`, refined to sub-sample accuracy.
pub fn find_minima(profile: &IntensityProfile, depth_threshold: f64) -> Result<Vec<f64>> {
    check_threshold(depth_threshold)?;
    let limit = depth_threshold * profile.max();
    Ok(
        refined_extrema(profile, |a, b, c| b < a && b < c && b < limit)
            .into_iter()
            .map(|(y, _)| y)
            .collect(),
    )
}

/// Samples strictly above both neighbours with height at least
/// `prominence_threshold × max`, refined to sub-sample accuracy.
pub fn find_peaks(profile: &IntensityProfile, prominence_threshold: f64) -> Result<PeakReport> {
    check_threshold(prominence_threshold)?;
    let limit = prominence_threshold * profile.max();
    let (positions, heights) = refined_extrema(profile, |a, b, c| b > a && b > c && b >= limit)
        .into_iter()
        .unzip();
    Ok(PeakReport { positions, heights })
}

/// Fringe visibility `(I_max − I_min) / (I_max + I_min)` over the samples in
/// `[window.0, window.1]`.
pub fn visibility(profile: &IntensityProfile, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    let (first, last) = profile.grid().bounds();
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || lo < first || hi > last {
        return Err(OpticsError::InvalidArgument(format!(
            "window [{lo}, {hi}] is not inside the grid [{first}, {last}]"
        )));
    }
    let grid = profile.grid();
    let inside: Vec<f64> = profile
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| (lo..=hi).contains(&grid.position(*i)))
        .map(|(_, &v)| v)
        .collect();
    if inside.len() < 3 {
        return Err(OpticsError::InvalidArgument(format!(
            "window [{lo}, {hi}] holds {} samples, need at least 3",
            inside.len()
        )));
    }
    let max = inside.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = inside.iter().copied().fold(f64::INFINITY, f64::min);
    if max + min == 0.0 {
        return Ok(0.0);
    }
    Ok((max - min) / (max + min))
}

/// Integrated intensity of `test` relative to `baseline`.
pub fn flux_ratio(test: &IntensityProfile, baseline: &IntensityProfile) -> Result<f64> {
    if test.grid() != baseline.grid() {
        return Err(OpticsError::IncompatibleGrid(
            "flux ratio needs profiles on the same grid".into(),
        ));
    }
    let base = baseline.flux();
    if base == 0.0 {
        return Err(OpticsError::UndefinedRatio("baseline flux is zero".into()));
    }
    Ok(test.flux() / base)
}

/// Largest fractional height loss among peaks matched by proximity.
///
/// Each baseline peak is paired with the nearest unused test peak; the pair
/// must lie within half the smallest baseline peak separation.
pub fn peak_attenuation(test: &PeakReport, baseline: &PeakReport) -> Result<f64> {
    if test.len() != baseline.len() {
        return Err(OpticsError::Analysis(format!(
            "cannot match {} test peaks against {} baseline peaks",
            test.len(),
            baseline.len()
        )));
    }
    if baseline.is_empty() {
        return Err(OpticsError::Analysis("no peaks to compare".into()));
    }
    let tolerance = baseline
        .positions
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]))
        .fold(f64::INFINITY, f64::min);

    let mut used = vec![false; test.len()];
    let mut worst: f64 = 0.0;
    for (&pos, &height) in baseline.positions.iter().zip(&baseline.heights) {
        let nearest = test
            .positions
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &p)| (j, (p - pos).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((j, _)) = nearest.filter(|&(_, d)| d <= tolerance) else {
            return Err(OpticsError::Analysis(format!(
                "no test peak within {tolerance} m of baseline peak at {pos} m"
            )));
        };
        used[j] = true;
        let loss = (1.0 - test.heights[j] / height).clamp(0.0, 1.0);
        worst = worst.max(loss);
    }
    Ok(worst)
}
