use hfsim_core::analysis::flux_ratio;
use hfsim_core::elements::{apply_lens, WireArraySpec};
use hfsim_core::propagation::propagate;
use hfsim_core::scenarios::{
    scenario_interference, scenario_lens_image, scenario_wires, wire_centers, ExperimentConfig,
    ExperimentSetup, PlaneRequest, SlitState, WireLayout,
};
use hfsim_core::IntensityProfile;

fn reflected(p: &IntensityProfile) -> Vec<f64> {
    p.values().iter().rev().copied().collect()
}

fn assert_mirror(a: &IntensityProfile, b: &IntensityProfile, tol: f64) {
    let peak = a.max().max(b.max());
    let rms = (a
        .values()
        .iter()
        .zip(reflected(b))
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        / a.values().len() as f64)
        .sqrt();
    assert!(rms <= tol * peak, "mirror rms {rms} vs peak {peak}");
}

#[test]
fn interference_single_slit_runs_are_mirror_images() {
    let r = scenario_interference(&ExperimentConfig::default()).unwrap();
    assert_mirror(
        r.profile("upper").unwrap(),
        r.profile("lower").unwrap(),
        1e-10,
    );
    assert_eq!(r.metric("peak_count_upper"), Some(1.0));
    assert_eq!(r.metric("peak_count_lower"), Some(1.0));
    assert!(r.metric("visibility_both").unwrap() >= 0.9);
    let grid = r.config.grids.lens.grid().unwrap();
    for (_, p) in &r.profiles {
        assert_eq!(p.grid(), &grid);
    }
}

#[test]
fn lens_image_runs_are_mirror_images() {
    let r = scenario_lens_image(&ExperimentConfig::default()).unwrap();
    assert_mirror(
        r.profile("upper").unwrap(),
        r.profile("lower").unwrap(),
        1e-10,
    );
    assert_mirror(
        r.profile("both").unwrap(),
        r.profile("both").unwrap(),
        1e-10,
    );
    assert_eq!(r.metric("inverted_upper"), Some(1.0));
    assert_eq!(r.metric("inverted_lower"), Some(1.0));
    let grid = r.config.grids.image.grid().unwrap();
    for (_, p) in &r.profiles {
        assert_eq!(p.grid(), &grid);
    }
}

#[test]
fn lens_and_extra_phase_routes_agree_through_the_train() {
    let c = ExperimentConfig::default();
    let at_lens = c.lens_plane_field(SlitState::UpperOnly).unwrap();
    let via_phase = c.image_plane_field(&at_lens, None).unwrap();
    let lensed = apply_lens(&at_lens, &c.lens.unwrap(), &c.ctx);
    let via_lens = propagate(
        &lensed,
        &c.grids.image.grid().unwrap(),
        at_lens.axial_position() + c.lens_to_image.unwrap(),
        &c.ctx,
        None,
    )
    .unwrap();
    let scale = via_lens
        .amplitudes()
        .iter()
        .map(|a| a.norm())
        .fold(0.0, f64::max);
    for (a, b) in via_lens.amplitudes().iter().zip(via_phase.amplitudes()) {
        assert!((a - b).norm() <= 1e-14 * scale);
    }
}

#[test]
fn no_transmitting_slit_gives_dark_image() {
    // source plane moved off the slits entirely
    let mut setup = ExperimentSetup::default();
    setup.grids.source = PlaneRequest {
        center: Some(5e-3),
        half_width: Some(1e-3),
        samples: Some(401),
    };
    let c = setup.resolve().unwrap();
    let r = scenario_lens_image(&c).unwrap();
    for (_, p) in &r.profiles {
        assert!(p.values().iter().all(|&v| v == 0.0));
    }
}

#[test]
fn zero_width_wires_leave_images_untouched() {
    let setup = ExperimentSetup {
        wires: Some(WireLayout {
            width: 0.0,
            ..WireLayout::default()
        }),
        ..ExperimentSetup::default()
    };
    let r = scenario_wires(&setup.resolve().unwrap()).unwrap();
    for state in ["both", "upper"] {
        assert_eq!(
            r.profile(&format!("{state}_wires")).unwrap(),
            r.profile(&format!("{state}_no_wires")).unwrap()
        );
    }
    assert_eq!(r.metric("flux_ratio_both"), Some(1.0));
    assert_eq!(r.metric("peak_attenuation_single_slit"), Some(0.0));
}

#[test]
fn detected_wires_sit_on_symmetric_minima() {
    let c = ExperimentConfig::default();
    let centers = wire_centers(&c, &WireLayout::default()).unwrap();
    assert_eq!(centers.len(), 6);
    let p = c.fringe_spacing();
    for (i, y) in centers.iter().enumerate() {
        assert!((y + centers[5 - i]).abs() < 1e-9 * p);
        let m = (y.abs() / p - 0.5).round();
        assert!((y.abs() - (m + 0.5) * p).abs() < 0.02 * p);
    }
}

#[test]
fn too_many_wires_is_a_configuration_error() {
    let setup = ExperimentSetup {
        wires: Some(WireLayout {
            count: 40,
            ..WireLayout::default()
        }),
        ..ExperimentSetup::default()
    };
    let err = scenario_wires(&setup.resolve().unwrap()).unwrap_err();
    assert!(
        matches!(err, hfsim_core::OpticsError::Configuration(_)),
        "{err}"
    );
}

fn interception_deficits(fractions: &[f64]) -> Vec<(f64, f64)> {
    let c = ExperimentConfig::default();
    let centers = wire_centers(&c, &WireLayout::default()).unwrap();
    let both = c.lens_plane_field(SlitState::Both).unwrap();
    let upper = c.lens_plane_field(SlitState::UpperOnly).unwrap();
    let deficit = |at_lens: &hfsim_core::SampledField, wires: &WireArraySpec| {
        let clear = hfsim_core::analysis::intensity(&c.image_plane_field(at_lens, None).unwrap());
        let wired =
            hfsim_core::analysis::intensity(&c.image_plane_field(at_lens, Some(wires)).unwrap());
        1.0 - flux_ratio(&wired, &clear).unwrap()
    };
    fractions
        .iter()
        .map(|f| {
            let wires = WireArraySpec::new(centers.clone(), f * c.fringe_spacing()).unwrap();
            (deficit(&both, &wires), deficit(&upper, &wires))
        })
        .collect()
}

#[test]
fn both_slit_interception_stays_tenfold_smaller() {
    // widths as fractions of the fringe spacing, up to a fifth of it
    for ((db, ds), f) in interception_deficits(&[0.0125, 0.05, 0.1, 0.15, 0.2])
        .into_iter()
        .zip([0.0125, 0.05, 0.1, 0.15, 0.2])
    {
        assert!(db <= 0.1 * ds, "width {f}·p: both {db} single {ds}");
    }
}

#[test]
fn tenfold_margin_is_lost_near_a_quarter_fringe() {
    // Ideal cos² fringes give a deficit ratio of (πw/p)²/6 for wires centred
    // on the zeros, which already exceeds 1/10 at w = p/4. The finite-slit
    // envelope only raises the minima further.
    let x = std::f64::consts::PI * 0.25;
    let ideal = x * x / 6.0;
    assert!(ideal > 0.1);
    let (db, ds) = interception_deficits(&[0.25])[0];
    assert!(
        db / ds >= ideal,
        "ratio {} below ideal limit {ideal}",
        db / ds
    );
}

#[test]
fn image_peak_separation_scales_with_slit_separation() {
    let separation = |d: f64| {
        let setup = ExperimentSetup {
            slit_separation: d,
            ..ExperimentSetup::default()
        };
        let r = scenario_lens_image(&setup.resolve().unwrap()).unwrap();
        assert_eq!(r.metric("peak_count_both"), Some(2.0));
        r.metric("peak_high_both_m").unwrap() - r.metric("peak_low_both_m").unwrap()
    };
    let ratio = separation(2e-3) / separation(1e-3);
    assert!((ratio - 2.0).abs() <= 0.04, "ratio {ratio}");
}

#[test]
fn results_reproduce_from_embedded_config() {
    let r = scenario_wires(&ExperimentConfig::default()).unwrap();
    let again = scenario_wires(&r.config).unwrap();
    assert_eq!(r, again);
}
