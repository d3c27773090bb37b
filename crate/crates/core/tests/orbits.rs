use std::f64::consts::{FRAC_PI_2, PI};

use offcenter::geometry::{boundary_angle_defect, closure_defect, fit_circle};
use offcenter::model::{hamiltonian, OrbitSpec, PhaseState, PotentialParams, Sense};
use offcenter::trajectory::{
    integrate, integrate_at, AnalyticTrajectory, IntegrateOptions, IntegrationFailure,
    TrajectoryError,
};

fn uniform(t_end: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| t_end * k as f64 / n as f64).collect()
}

#[test]
fn integrated_zero_energy_orbits_are_closed_circles() {
    let opts = IntegrateOptions::with_tolerances(1e-11, 1e-13);
    for (radius, offset, n, sense) in [
        (2.0, 1.0, 0.0, Sense::CounterClockwise),
        (1.0, 0.3, 2.1, Sense::Clockwise),
        (3.0, 2.5, -0.8, Sense::CounterClockwise),
        (0.7, 0.0, 0.0, Sense::Clockwise),
    ] {
        let spec = OrbitSpec::new(radius, offset, n, sense).unwrap();
        let exact = AnalyticTrajectory::new(spec, 1.3, 0.8, 0.0).unwrap();
        let params = exact.params();
        let s0 = exact.state(0.0).unwrap();
        let period = exact.period();
        let traj = integrate_at(&params, &s0, &uniform(period, 1024), &opts).unwrap();
        let fit = fit_circle(&traj.positions()).unwrap();
        assert!(
            (fit.radius - radius).abs() < 1e-8 * radius,
            "R = {radius}: {}",
            fit.radius
        );
        assert!((fit.center().norm() - offset).abs() < 1e-8 * radius);
        assert!(fit.rms_residual < 1e-8 * radius);
        assert!(closure_defect(&traj, period).unwrap() < 1e-8 * radius);
        // and it tracks the exact solution in time, not just in shape
        for s in traj.states().step_by(64) {
            let e = exact.state(s.t).unwrap();
            assert!((s.position() - e.position()).norm() < 1e-7 * radius);
        }
    }
}

// negative energy: the orbit precesses instead of closing on a circle
#[test]
fn negative_energy_orbit_is_not_a_circle() {
    let params = PotentialParams::new(1.0, 1.0, 3.0).unwrap();
    let v = hamiltonian(&params, &PhaseState::new(1.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
    let p = (2.0 * (-0.01 - v)).sqrt();
    let s0 = PhaseState::new(1.0, 0.0, 0.0, p, 0.0);
    let traj = integrate_at(
        &params,
        &s0,
        &uniform(100.0, 4000),
        &IntegrateOptions::default(),
    )
    .unwrap();
    let energy = hamiltonian(&params, traj.states().last().unwrap()).unwrap();
    assert!((energy + 0.01).abs() < 1e-9);
    let fit = fit_circle(&traj.positions()).unwrap();
    println!(
        "E = -0.01 orbit: circle fit rms residual {:.3e}, radius {:.3}",
        fit.rms_residual, fit.radius
    );
    assert!(fit.rms_residual > 1e-2 * fit.radius);
}

#[test]
fn disk_orbit_stops_at_the_boundary_with_a_partial_trajectory() {
    let spec = OrbitSpec::new(3f64.sqrt(), 2.0, FRAC_PI_2, Sense::CounterClockwise).unwrap();
    let params = PotentialParams::new(1.0, 1.0, spec.sigma()).unwrap();
    assert!((params.sigma + 1.0).abs() < 1e-15);
    let s0 = spec.state_at(1.0, 1.0, PI, 0.0).unwrap();
    assert!(s0.r2() < 1.0);
    let opts = IntegrateOptions {
        samples: 4096,
        ..IntegrateOptions::default()
    };
    match integrate(&params, &s0, 5.0, &opts) {
        Err(TrajectoryError::Integration {
            kind,
            last,
            partial,
            ..
        }) => {
            println!(
                "disk orbit stop: {kind:?} at 1 - r^2 = {:.3e}, {} samples",
                1.0 - last.r2(),
                partial.len()
            );
            assert!(matches!(
                kind,
                IntegrationFailure::BoundaryProximity | IntegrationFailure::StepUnderflow
            ));
            assert!(1.0 - last.r2() < 1e-5);
            assert!(partial.len() > 10);
            assert!(partial.states().all(|s| s.r2() < 1.0));
            let fit = fit_circle(&partial.positions()).unwrap();
            assert!((fit.radius - 3f64.sqrt()).abs() < 1e-6);
            assert!(boundary_angle_defect(&fit, 1.0).unwrap() < 1e-6);
        }
        other => panic!("expected an integration stop, got {other:?}"),
    }
}
