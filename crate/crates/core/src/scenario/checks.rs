//! The built-in acceptance suite, A1 to A11. Each check returns its own
//! records; a computation error becomes a failing record.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::duality::{
    circle_inversion, great_circle_image, line_orbit_image, maupertuis_gradient, north_chart,
    orbit_sphere_frame, stereographic_project, GreatCircleImage, SpherePoint, Vec3,
};
use crate::geometry::{
    boundary_angle_defect, circle_intersection, closure_defect, equator_crossings, fit_circle,
    CircleIntersection, FittedCircle,
};
use crate::model::{
    central_difference_bracket, hamiltonian, invariant_vector, newton_force_on_orbit,
    poisson_bracket, radial_force, radius_at, zero_energy_invariant_norm, Observable, OrbitSpec,
    PhaseState, PotentialParams, Sense, Vec2,
};
use crate::trajectory::{
    integrate, reparametrize_time, AnalyticTrajectory, IntegrateOptions, Trajectory,
};

use super::report::{CheckRecord, Environment, VerificationReport};
use super::{disk_arc, ScenarioError};

pub const CHECK_IDS: [&str; 11] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

type Records = Result<Vec<CheckRecord>, ScenarioError>;

/// Runs one check. `None` for an unknown id.
pub fn run_check(id: &str, seed: u64) -> Option<Vec<CheckRecord>> {
    let index = CHECK_IDS.iter().position(|c| *c == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let result = match index {
        0 => a1(),
        1 => a2(),
        2 => a3(),
        3 => a4(),
        4 => a5(&mut rng),
        5 => a6(&mut rng),
        6 => a7(&mut rng),
        7 => a8(),
        8 => a9(),
        9 => a10(&mut rng),
        _ => a11(),
    };
    Some(result.unwrap_or_else(|e| vec![CheckRecord::failed(id, format!("error: {e}"), 0.0)]))
}

pub fn run_acceptance(seed: u64) -> VerificationReport {
    let mut env = Environment::new(seed);
    for (k, v) in [
        ("a2_rtol", 1e-10),
        ("a2_atol", 1e-12),
        ("a2_samples", A2_SAMPLES as f64),
        ("a3_rtol", 1e-12),
        ("a3_atol", 1e-14),
        ("a3_samples", A3_SAMPLES as f64),
        ("a4_control_energy", CONTROL_ENERGY),
        ("a4_control_step", CONTROL_STEP),
        ("a5_states", 100.0),
        ("a6_states", 100.0),
        ("a7_great_circles", 200.0),
        ("a8_sphere_intervals", A8_INTERVALS as f64),
        ("a9_arc_samples", 512.0),
        ("a10_cases", 20.0),
        ("a10_arc_samples", 512.0),
        ("a11_nodes", A11_NODES as f64),
    ] {
        env.settings.insert(k.to_string(), v);
    }
    let records = CHECK_IDS
        .iter()
        .flat_map(|id| run_check(id, seed).unwrap())
        .collect();
    VerificationReport::new(env, records)
}

fn reference_orbit() -> (OrbitSpec, PotentialParams) {
    let spec = OrbitSpec::new(2.0, 1.0, 0.0, Sense::CounterClockwise).unwrap();
    (spec, PotentialParams::new(1.0, 1.0, 3.0).unwrap())
}

/// Wraps an angle into `(-pi, pi]`.
fn wrap(a: f64) -> f64 {
    a - TAU * (a / TAU).round()
}

/// Angle of `pos` about the orbit center, measured from the direction `n`.
fn orbit_angle(spec: &OrbitSpec, pos: &Vec2) -> f64 {
    let d = pos - spec.center();
    d.y.atan2(d.x) - spec.n_angle
}

fn a1() -> Records {
    let (spec, params) = reference_orbit();
    let mut dev: f64 = 0.0;
    for k in 0..1000 {
        let theta = TAU * k as f64 / 1000.0;
        let newton = newton_force_on_orbit(&spec, 1.0, theta)?;
        let field = radial_force(&params, radius_at(&spec, theta))?;
        dev = dev.max((newton - field).abs());
    }
    let spot = (newton_force_on_orbit(&spec, 1.0, 0.0)? + 1.0 / 144.0).abs();
    Ok(vec![
        CheckRecord::below(
            "A1",
            "on-orbit force vs radial force, 1000 angles",
            dev,
            1e-12,
        ),
        CheckRecord::below("A1", "force at theta = 0 vs -1/144", spot, 1e-12),
    ])
}

const A2_SAMPLES: usize = 2048;

fn reference_run() -> Result<(OrbitSpec, AnalyticTrajectory, Trajectory), ScenarioError> {
    let (spec, params) = reference_orbit();
    let exact = AnalyticTrajectory::new(spec, 1.0, 1.0, 0.0)?;
    let opts = IntegrateOptions {
        samples: A2_SAMPLES,
        ..IntegrateOptions::with_tolerances(1e-10, 1e-12)
    };
    let traj = integrate(&params, &exact.state(0.0)?, exact.period(), &opts)?;
    Ok((spec, exact, traj))
}

fn a2() -> Records {
    let (spec, exact, traj) = reference_run()?;
    let fit = fit_circle(&traj.positions())?;
    Ok(vec![
        CheckRecord::below(
            "A2",
            "fitted center error",
            (fit.center() - spec.center()).norm(),
            1e-6,
        ),
        CheckRecord::below(
            "A2",
            "fitted radius error",
            (fit.radius - spec.radius).abs(),
            1e-6,
        ),
        CheckRecord::below(
            "A2",
            "closure defect after one period",
            closure_defect(&traj, exact.period())?,
            1e-6,
        ),
    ])
}

const A3_SAMPLES: usize = 4096;

fn a3() -> Records {
    let (spec, params) = reference_orbit();
    let exact = AnalyticTrajectory::new(spec, 1.0, 1.0, 0.0)?;
    let opts = IntegrateOptions {
        samples: A3_SAMPLES,
        ..IntegrateOptions::with_tolerances(1e-12, 1e-14)
    };
    let traj = integrate(&params, &exact.state(0.0)?, exact.period(), &opts)?;
    let mut dev: f64 = 0.0;
    for s in traj.states() {
        let theta = exact.solve_theta(s.t)?;
        dev = dev.max(wrap(orbit_angle(&spec, &s.position()) - theta).abs());
    }
    Ok(vec![CheckRecord::below(
        "A3",
        "orbit angle, integrator vs implicit law",
        dev,
        1e-8,
    )])
}

const CONTROL_ENERGY: f64 = -0.01;
const CONTROL_STEP: f64 = 0.01;

fn a4() -> Records {
    let (_, _, traj) = reference_run()?;
    let first = traj.samples()[0].snapshot;
    let inv0 = first.invariant.expect("spherical regime");
    let q0 = inv0.orientation_ratio();
    let (mut dh, mut dl, mut dq): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for s in traj.samples() {
        let snap = s.snapshot;
        let inv = snap.invariant.expect("spherical regime");
        dh = dh.max((snap.h - first.h).abs());
        dl = dl.max(((snap.lz - first.lz) / first.lz).abs());
        // I_y = 0 on this orbit, so the ratio drift is measured against max(|q0|, 1)
        dq = dq.max((inv.orientation_ratio() - q0).abs() / q0.abs().max(1.0));
    }

    // off the zero-energy shell I(t) moves as {I, H} = -(2/R)(-y, x) H
    let params = PotentialParams::new(1.0, 1.0, 3.0)?;
    let rs = params.sphere_radius()?;
    let p = (2.0 * (CONTROL_ENERGY + 1.0 / 16.0)).sqrt();
    let s0 = PhaseState::new(1.0, 0.0, 0.0, p, 0.0);
    let n = 1000;
    let opts = IntegrateOptions {
        samples: n,
        ..IntegrateOptions::with_tolerances(1e-12, 1e-14)
    };
    let control = integrate(&params, &s0, CONTROL_STEP * n as f64, &opts)?;
    let states: Vec<PhaseState> = control.states().copied().collect();
    let inv = states
        .iter()
        .map(|s| invariant_vector(&params, s))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut dev, mut rate): (f64, f64) = (0.0, 0.0);
    for k in 2..states.len() - 2 {
        let h = (states[k + 1].t - states[k - 1].t) / 2.0;
        let d = |f: fn(&crate::model::InvariantVector) -> f64| {
            (f(&inv[k - 2]) - 8.0 * f(&inv[k - 1]) + 8.0 * f(&inv[k + 1]) - f(&inv[k + 2]))
                / (12.0 * h)
        };
        let (dix, diy) = (d(|i| i.ix), d(|i| i.iy));
        let energy = hamiltonian(&params, &states[k])?;
        let expected = Vec2::new(-states[k].y, states[k].x) * (-2.0 / rs * energy);
        dev = dev.max((Vec2::new(dix, diy) - expected).norm());
        rate = rate.max(Vec2::new(dix, diy).norm());
    }
    Ok(vec![
        CheckRecord::below("A4", "H drift (absolute)", dh, 1e-8),
        CheckRecord::below("A4", "Lz drift (relative)", dl, 1e-8),
        CheckRecord::below("A4", "Iy/Ix drift (relative, floor 1)", dq, 1e-8),
        CheckRecord::below(
            "A4",
            "E = -0.01 control: d(Ix,Iy)/dt vs -(2/R)(-y,x)H",
            dev,
            1e-5,
        ),
        CheckRecord::above("A4", "E = -0.01 control: max |d(Ix,Iy)/dt|", rate, 1e-3),
    ])
}

fn a5(rng: &mut ChaCha8Rng) -> Records {
    let params = PotentialParams::new(1.0, 1.0, 3.0)?;
    let triples = [
        (Observable::Ix, Observable::Iy, Observable::Iz),
        (Observable::Iy, Observable::Iz, Observable::Ix),
        (Observable::Iz, Observable::Ix, Observable::Iy),
    ];
    let (mut closed, mut fd): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let s = PhaseState::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            0.0,
        );
        for (a, b, c) in triples {
            let target = c.value(&params, &s)?;
            closed = closed.max((poisson_bracket(a, b, &params, &s)? - target).abs());
            fd = fd.max((central_difference_bracket(a, b, &params, &s)? - target).abs());
        }
    }
    Ok(vec![
        CheckRecord::below(
            "A5",
            "{I_i, I_i+1} - I_i+2, closed-form partials",
            closed,
            1e-9,
        ),
        CheckRecord::below("A5", "{I_i, I_i+1} - I_i+2, finite differences", fd, 1e-6),
    ])
}

fn a6(rng: &mut ChaCha8Rng) -> Records {
    let mut dev: f64 = 0.0;
    for _ in 0..100 {
        let params = PotentialParams::new(
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..4.0),
        )?;
        let (x, y) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let dir: f64 = rng.random_range(0.0..TAU);
        let p = (2.0 * params.mass * params.alpha).sqrt() / (x * x + y * y + params.sigma);
        let s = PhaseState::new(x, y, p * dir.cos(), p * dir.sin(), 0.0);
        let target = zero_energy_invariant_norm(&params)?;
        dev = dev.max((invariant_vector(&params, &s)?.norm_squared() - target).abs() / target);
    }
    let (spec, params) = reference_orbit();
    let s = spec.state_at(1.0, 1.0, 0.0, 0.0)?;
    let i = invariant_vector(&params, &s)?;
    let spot = [
        ((i.ix * i.ix + i.iy * i.iy) - 1.0 / 24.0).abs() * 24.0,
        (i.iz * i.iz - 1.0 / 8.0).abs() * 8.0,
        (i.norm_squared() - 1.0 / 6.0).abs() * 6.0,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(vec![
        CheckRecord::below(
            "A6",
            "|I|^2 vs m alpha / (2 sigma), 100 zero-energy states",
            dev,
            1e-10,
        ),
        CheckRecord::below("A6", "R=2, l=1: 1/24 + 1/8 = 1/6", spot, 1e-10),
    ])
}

fn a7(rng: &mut ChaCha8Rng) -> Records {
    let rs = 3f64.sqrt();
    let (mut residual, mut antipodal, mut closed_form): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut count = 0;
    while count < 200 {
        let z: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..TAU);
        // near-vertical planes image to lines, the equator to the reference circle itself
        if z.abs() < 1e-3 || z.abs() > 1.0 - 1e-6 {
            continue;
        }
        let w = (1.0 - z * z).sqrt();
        let normal = Vec3::new(w * phi.cos(), w * phi.sin(), z);
        let helper = if normal.x.abs() < 0.9 {
            Vec3::x()
        } else {
            Vec3::y()
        };
        let a = SpherePoint::normalized(normal.cross(&helper))?;
        let b = SpherePoint::normalized(normal.cross(&a.vector()))?;
        let (center, radius, fit) = match great_circle_image(rs, &a, &b)? {
            GreatCircleImage::Circle {
                center,
                radius,
                fit,
            } => (center, radius, fit),
            GreatCircleImage::Line { .. } => continue,
        };
        residual = residual.max(fit.rms_residual);
        antipodal = antipodal.max(equator_crossings(&fit, rs)?.antipodality_defect);
        closed_form = closed_form
            .max(((fit.center() - center).norm() + (fit.radius - radius).abs()) / radius);
        count += 1;
    }

    let (spec, _) = reference_orbit();
    let (a, b) = orbit_sphere_frame(&spec, rs)?;
    let spot = match great_circle_image(rs, &a, &b)? {
        GreatCircleImage::Circle { center, radius, .. } => {
            let c = equator_crossings(&FittedCircle::exact(center, radius), rs)?;
            let (top, bottom) = (Vec2::new(0.0, rs), Vec2::new(0.0, -rs));
            ((c.p1 - top).norm() + (c.p2 - bottom).norm())
                .min((c.p1 - bottom).norm() + (c.p2 - top).norm())
        }
        GreatCircleImage::Line { .. } => f64::NAN,
    };
    Ok(vec![
        CheckRecord::below("A7", "great-circle image fit rms residual", residual, 1e-10),
        CheckRecord::below(
            "A7",
            "equator crossing antipodality defect",
            antipodal,
            1e-9,
        ),
        CheckRecord::below(
            "A7",
            "fitted vs closed-form image circle (relative)",
            closed_form,
            1e-9,
        ),
        CheckRecord::below(
            "A7",
            "R=2, l=1 orbit crossings vs (0, +-sqrt 3)",
            spot,
            1e-14,
        ),
    ])
}

const A8_INTERVALS: usize = 4096;

fn a8() -> Records {
    let (spec, params) = reference_orbit();
    let rs = params.sphere_radius()?;
    let exact = AnalyticTrajectory::new(spec, 1.0, 1.0, 0.0)?;
    let (a, b) = orbit_sphere_frame(&spec, rs)?;
    let ep = crate::duality::sphere_dual_energy(params.alpha, rs);
    let omega = (2.0 * ep / params.mass).sqrt() / rs;
    let sphere_period = TAU / omega;
    let path = (0..=A8_INTERVALS)
        .map(|k| {
            let tp = sphere_period * k as f64 / A8_INTERVALS as f64;
            let s = crate::trajectory::sphere_free_motion(rs, ep, params.mass, &a, &b, tp)?;
            Ok((stereographic_project(rs, &s)?, tp))
        })
        .collect::<Result<Vec<_>, ScenarioError>>()?;
    let planar = reparametrize_time(&params, &path)?;
    let mut dev: f64 = 0.0;
    for (pos, t) in &planar {
        let theta = exact.solve_theta(*t)?;
        dev = dev.max(wrap(orbit_angle(&spec, pos) - theta).abs());
    }
    let period_gap = (planar.last().unwrap().1 - exact.period()).abs();
    Ok(vec![
        CheckRecord::below(
            "A8",
            "sphere motion through projection and time rule vs theta(t)",
            dev,
            1e-8,
        ),
        CheckRecord::below(
            "A8",
            "mapped sphere period vs planar period",
            period_gap,
            1e-8,
        ),
    ])
}

fn a9() -> Records {
    let params = PotentialParams::new(1.0, 1.0, 0.0)?;
    let (r0, d) = (1.0, 0.5);
    let (center, radius) = line_orbit_image(r0, d)?;
    // the far point of the image circle is the inversion of the line's foot
    let start = circle_inversion(r0, &Vec2::new(d, 0.0))?;
    let p = (2.0 * params.mass * params.alpha).sqrt() / start.norm_squared();
    let s0 = PhaseState::new(start.x, start.y, 0.0, p, 0.0);
    // zero-energy law with l = R: R (theta + sin theta) = c t, stop at theta = 2 pi / 3
    let c = (params.alpha / (2.0 * params.mass)).sqrt() / (radius * radius);
    let theta_end = TAU / 3.0;
    let t_end = radius * (theta_end + theta_end.sin()) / c;
    let opts = IntegrateOptions {
        samples: 512,
        ..IntegrateOptions::with_tolerances(1e-12, 1e-14)
    };
    let traj = integrate(&params, &s0, t_end, &opts)?;
    let fit = fit_circle(&traj.positions())?;
    let polar = traj
        .states()
        .map(|s| (s.r2().sqrt() - 2.0 * radius * s.phi().cos()).abs())
        .fold(0.0, f64::max);

    let rs = 1.0;
    let inversion_radius = 2f64.sqrt() * rs;
    let mut scaled: f64 = 0.0;
    let mut errs = [0.0f64; 2];
    for (j, ratio) in [100.0, 1000.0].into_iter().enumerate() {
        for k in 0..6 {
            let pos = Vec2::new((k as f64).cos(), (k as f64).sin()) * (ratio * rs);
            let inv = circle_inversion(inversion_radius, &pos)?;
            let err = (north_chart(rs, &pos) - inv).norm() / inv.norm();
            errs[j] = errs[j].max(err);
            scaled = scaled.max((err * ratio * ratio - 1.0).abs());
        }
    }
    let ratio_gap = (errs[0] / errs[1] / 100.0 - 1.0).abs();
    Ok(vec![
        CheckRecord::below(
            "A9",
            "quartic orbit fitted center vs (R0, 0)",
            (fit.center() - center).norm(),
            1e-6,
        ),
        CheckRecord::below(
            "A9",
            "quartic orbit fitted radius vs R0",
            (fit.radius - radius).abs(),
            1e-6,
        ),
        CheckRecord::below("A9", "quartic orbit |r - 2 R0 cos(phi)|", polar, 1e-6),
        CheckRecord::below(
            "A9",
            "chart vs inversion: rel. error * (r/R)^2 - 1",
            scaled,
            1e-3,
        ),
        CheckRecord::below(
            "A9",
            "chart vs inversion: error ratio r/R = 100 vs 1000, / 100 - 1",
            ratio_gap,
            1e-3,
        ),
    ])
}

fn a10(rng: &mut ChaCha8Rng) -> Records {
    let mut cases = vec![(
        PotentialParams::new(1.0, 1.0, -1.0)?,
        OrbitSpec::new(3f64.sqrt(), 2.0, 0.0, Sense::CounterClockwise)?,
    )];
    while cases.len() < 20 {
        let r_tilde: f64 = rng.random_range(0.5..2.0);
        let radius = r_tilde * rng.random_range(0.3..3.0);
        let offset = (radius * radius + r_tilde * r_tilde).sqrt();
        let sense = if rng.random_bool(0.5) {
            Sense::CounterClockwise
        } else {
            Sense::Clockwise
        };
        let spec = OrbitSpec::new(radius, offset, rng.random_range(0.0..TAU), sense)?;
        let params = PotentialParams::new(
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
            spec.sigma(),
        )?;
        cases.push((params, spec));
    }
    let mut defect: f64 = 0.0;
    for (params, spec) in &cases {
        let arc = disk_arc(params, spec, 512)?;
        let fit = fit_circle(&arc)?;
        defect = defect.max(boundary_angle_defect(&fit, params.disk_radius()?)?);
    }

    let exact = FittedCircle::exact(Vec2::new(2.0, 0.0), 3f64.sqrt());
    let spot = match circle_intersection(Vec2::zeros(), 1.0, exact.center(), exact.radius) {
        CircleIntersection::Two(p, q) => {
            let h = 3f64.sqrt() / 2.0;
            let (up, down) = (Vec2::new(0.5, h), Vec2::new(0.5, -h));
            ((p - up).norm() + (q - down).norm()).min((p - down).norm() + (q - up).norm())
        }
        _ => f64::NAN,
    };
    let spot_angle = boundary_angle_defect(&exact, 1.0)?;
    Ok(vec![
        CheckRecord::below(
            "A10",
            "boundary angle defect of fitted arcs, 20 cases (rad)",
            defect,
            1e-4,
        ),
        CheckRecord::below(
            "A10",
            "exact intersection vs (1/2, +-sqrt(3)/2)",
            spot,
            1e-14,
        ),
        CheckRecord::below(
            "A10",
            "exact circle boundary angle defect (rad)",
            spot_angle,
            1e-12,
        ),
    ])
}

const A11_NODES: usize = 512;

fn a11() -> Records {
    let (spec, params) = reference_orbit();
    let rs = params.sphere_radius()?;
    // equal steps along the great circle are equal steps of the action
    let (a, b) = orbit_sphere_frame(&spec, rs)?;
    let last = (A11_NODES - 1) as f64;
    let path = (0..A11_NODES)
        .map(|k| {
            let u = TAU * k as f64 / last;
            let s = SpherePoint::normalized(a.vector() * u.cos() + b.vector() * u.sin())?;
            Ok(stereographic_project(rs, &s)?)
        })
        .collect::<Result<Vec<Vec2>, ScenarioError>>()?;
    let interior_norm = |path: &[Vec2]| -> Result<f64, ScenarioError> {
        let g = maupertuis_gradient(&params, 0.0, path)?;
        Ok(g[1..g.len() - 1]
            .iter()
            .map(|v| v.norm_squared())
            .sum::<f64>()
            .sqrt())
    };
    let on_orbit = interior_norm(&path)?;
    // bump normal to the orbit, vanishing at both ends
    let bump: Vec<Vec2> = path
        .iter()
        .enumerate()
        .map(|(k, p)| (p - spec.center()).normalize() * (PI * k as f64 / last).sin())
        .collect();
    let bent: Vec<Vec2> = path.iter().zip(&bump).map(|(p, b)| p + b * 0.1).collect();
    let g = maupertuis_gradient(&params, 0.0, &bent)?;
    let directional = g
        .iter()
        .zip(&bump)
        .map(|(g, b)| g.dot(b))
        .sum::<f64>()
        .abs();
    Ok(vec![
        CheckRecord::below(
            "A11",
            "action gradient norm on the orbit, 512 nodes",
            on_orbit,
            1e-4,
        ),
        CheckRecord::above(
            "A11",
            "bent path (amplitude 0.1): |dS| along the bump",
            directional,
            1e-2,
        ),
    ])
}
