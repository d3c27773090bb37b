//! Declarative scenarios: JSON config in, CSV/SVG/JSON files and a
//! verification report out.

pub mod checks;
pub mod csv;
mod report;
pub mod svg;

pub use report::{CheckRecord, Comparison, Environment, VerificationReport};

use std::f64::consts::{PI, TAU};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::duality::{
    great_circle_image, orbit_sphere_frame, sphere_dual_energy, stereographic_project,
    DualityError, GreatCircleImage,
};
use crate::geometry::GeometryError;
use crate::model::{ModelError, OrbitSpec, PhaseState, PotentialParams, Regime, Sense, Vec2};
use crate::trajectory::{
    integrate, integrate_at, reparametrize_time, sphere_free_motion, AnalyticTrajectory,
    IntegrateOptions, Trajectory, TrajectoryError,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("figure error: {0}")]
    Figure(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl ScenarioError {
    /// Process exit status: 2 for usage, config and file-system errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) | ScenarioError::Parse(_) | ScenarioError::Io { .. } => 2,
            _ => 1,
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    #[serde(default = "one")]
    pub alpha: f64,
    pub sigma: f64,
    #[serde(default = "one")]
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseConfig {
    #[default]
    Ccw,
    Cw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitConfig {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "l")]
    pub offset: f64,
    #[serde(default)]
    pub n_angle: f64,
    #[serde(default)]
    pub sense: SenseConfig,
}

impl OrbitConfig {
    pub fn spec(&self) -> Result<OrbitSpec, ModelError> {
        let sense = match self.sense {
            SenseConfig::Ccw => Sense::CounterClockwise,
            SenseConfig::Cw => Sense::Clockwise,
        };
        OrbitSpec::new(self.radius, self.offset, self.n_angle, sense)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
    #[serde(default)]
    pub t: f64,
}

/// Exactly one of the two must be present; checked by [`ScenarioConfig::validate`].
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegrationConfig {
    pub rtol: f64,
    pub atol: f64,
    /// Defaults to one period for an orbit with `l < R`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    pub samples: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            t_end: None,
            samples: 1024,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Simulate,
    Analytic,
    Duality,
    Invariants,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            formats: vec![Format::Csv, Format::Svg, Format::Json],
        }
    }
}

fn default_seed() -> u64 {
    checks::DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub potential: PotentialConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub integration: IntegrationConfig,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Initial condition after validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    Orbit(OrbitSpec),
    State(PhaseState),
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            ScenarioError::Config(m) => ScenarioError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn params(&self) -> Result<PotentialParams, ScenarioError> {
        let p = &self.potential;
        PotentialParams::new(p.alpha, p.mass, p.sigma)
            .map_err(|e| ScenarioError::Config(format!("potential: {e}")))
    }

    /// Checks everything that can be checked without running a task.
    pub fn validate(&self) -> Result<(PotentialParams, Initial), ScenarioError> {
        let cfg = |m: String| ScenarioError::Config(m);
        if self.schema != 1 {
            return Err(cfg(format!(
                "unsupported schema {}, expected 1",
                self.schema
            )));
        }
        let params = self.params()?;
        let initial = match (&self.initial.orbit, &self.initial.state) {
            (Some(o), None) => {
                Initial::Orbit(o.spec().map_err(|e| cfg(format!("initial.orbit: {e}")))?)
            }
            (None, Some(s)) => {
                let state = PhaseState::new(s.x, s.y, s.px, s.py, s.t);
                if !state.is_finite() {
                    return Err(cfg("initial.state: non-finite value".into()));
                }
                params
                    .check_state(&state)
                    .map_err(|e| cfg(format!("initial.state: {e}")))?;
                Initial::State(state)
            }
            (Some(_), Some(_)) => {
                return Err(cfg("initial: give either orbit or state, not both".into()))
            }
            (None, None) => return Err(cfg("initial: one of orbit or state is required".into())),
        };

        let it = &self.integration;
        if !(it.rtol > 0.0 && it.atol > 0.0) {
            return Err(cfg("integration: rtol and atol must be positive".into()));
        }
        if it.samples == 0 {
            return Err(cfg("integration: samples must be positive".into()));
        }
        if self.tasks.is_empty() {
            return Err(cfg("tasks: at least one task is required".into()));
        }
        for (i, t) in self.tasks.iter().enumerate() {
            if self.tasks[..i].contains(t) {
                return Err(cfg(format!("tasks: {t:?} listed twice")));
            }
        }
        let wants = |t: Task| self.tasks.contains(&t);
        let needs_orbit = |task: &str| -> Result<OrbitSpec, ScenarioError> {
            let Initial::Orbit(spec) = initial else {
                return Err(cfg(format!("task {task} requires initial.orbit")));
            };
            spec.check_matches(&params).map_err(|_| {
                cfg(format!(
                    "task {task}: sigma = {} must equal R^2 - l^2 = {}",
                    params.sigma,
                    spec.sigma()
                ))
            })?;
            if spec.regime() != Regime::Spherical {
                return Err(cfg(format!("task {task} requires l < R")));
            }
            Ok(spec)
        };
        if wants(Task::Analytic) {
            needs_orbit("analytic")?;
        }
        if wants(Task::Duality) {
            needs_orbit("duality")?;
        }
        if wants(Task::Simulate) || wants(Task::Invariants) || wants(Task::Analytic) {
            let t0 = match initial {
                Initial::State(s) => s.t,
                Initial::Orbit(_) => 0.0,
            };
            match (it.t_end, initial) {
                (Some(t), _) if !(t > t0) => {
                    return Err(cfg(format!(
                        "integration: t_end = {t} must exceed the initial time {t0}"
                    )))
                }
                (Some(_), _) => {}
                (None, Initial::Orbit(spec)) if spec.regime() == Regime::Spherical => {}
                _ => {
                    return Err(cfg(
                        "integration: t_end is required unless the orbit is closed (l < R)".into(),
                    ))
                }
            }
        }
        if wants(Task::Figures) && !self.output.formats.contains(&Format::Svg) {
            return Err(cfg("task figures requires the svg output format".into()));
        }
        Ok((params, initial))
    }
}

/// Report plus the files written, in write order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutcome {
    pub report: VerificationReport,
    pub files: Vec<PathBuf>,
}

/// Writes `contents` to `path` through a temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ScenarioError> {
    let io = |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

/// Integrated zero-energy arc of a hyperbolic orbit inside the disk, both
/// ways from `theta = pi` to just short of the boundary, `n` samples each.
pub fn disk_arc(
    params: &PotentialParams,
    spec: &OrbitSpec,
    n: usize,
) -> Result<Vec<Vec2>, ScenarioError> {
    spec.check_matches(params)?;
    if spec.regime() != Regime::Hyperbolic || n < 2 {
        return Err(ScenarioError::Config(
            "disk arc needs l > R and at least 2 samples".into(),
        ));
    }
    let (r, l) = (spec.radius, spec.offset);
    let c = spec.rate_constant(params.alpha, params.mass).abs();
    // the arc leaves the disk where R + l cos(theta) = 0
    let theta_b = (-r / l).acos();
    let t_b = (l * theta_b.sin() + r * theta_b - r * PI).abs() / c;
    let times: Vec<f64> = (0..n)
        .map(|k| t_b * (1.0 - 1e-4) * k as f64 / (n - 1) as f64)
        .collect();
    let opts = IntegrateOptions::with_tolerances(1e-12, 1e-14);
    let mut points: Vec<Vec2> = Vec::new();
    for sense in [Sense::CounterClockwise, Sense::Clockwise] {
        let s = OrbitSpec { sense, ..*spec };
        let s0 = s.state_at(params.alpha, params.mass, PI, 0.0)?;
        let traj = match integrate_at(params, &s0, &times, &opts) {
            Ok(t) => t,
            Err(TrajectoryError::Integration { partial, .. }) => *partial,
            Err(e) => return Err(e.into()),
        };
        let skip = usize::from(!points.is_empty());
        points.extend(traj.positions().into_iter().skip(skip));
    }
    Ok(points)
}

fn uniform_times(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            if k == n {
                t1
            } else {
                t0 + (t1 - t0) * k as f64 / n as f64
            }
        })
        .collect()
}

/// Largest `|value - value0| / max(|value0|, 1)` along a trajectory.
fn drift(values: impl Iterator<Item = f64>) -> f64 {
    let mut first = None;
    let mut worst: f64 = 0.0;
    for v in values {
        let v0 = *first.get_or_insert(v);
        worst = worst.max((v - v0).abs() / v0.abs().max(1.0));
    }
    worst
}

/// Runs the configured tasks in a fixed order (simulate, analytic, duality,
/// invariants, figures) and writes the outputs only after every task has
/// finished, so a failing scenario leaves no files behind.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioOutcome, ScenarioError> {
    let (params, initial) = config.validate()?;
    let it = &config.integration;
    let wants = |t: Task| config.tasks.contains(&t);
    let emit = |f: Format| config.output.formats.contains(&f);

    let mut env = Environment::new(config.seed);
    env.settings.insert("rtol".into(), it.rtol);
    env.settings.insert("atol".into(), it.atol);
    env.settings.insert("samples".into(), it.samples as f64);
    let mut records = Vec::new();
    let mut files: Vec<(String, String)> = Vec::new();

    let exact = match initial {
        Initial::Orbit(spec)
            if spec.regime() == Regime::Spherical && spec.check_matches(&params).is_ok() =>
        {
            Some(AnalyticTrajectory::new(
                spec,
                params.alpha,
                params.mass,
                0.0,
            )?)
        }
        _ => None,
    };
    let s0 = match initial {
        Initial::State(s) => s,
        Initial::Orbit(spec) => spec.state_at(params.alpha, params.mass, 0.0, 0.0)?,
    };
    let t_end = match (it.t_end, &exact) {
        (Some(t), _) => t,
        (None, Some(a)) => a.period(),
        (None, None) => f64::NAN,
    };
    env.settings.insert("t_end".into(), t_end);
    let opts = IntegrateOptions {
        rtol: it.rtol,
        atol: it.atol,
        samples: it.samples,
        ..IntegrateOptions::default()
    };

    let mut simulated: Option<Trajectory> = None;
    if wants(Task::Simulate) || wants(Task::Invariants) {
        let traj = match integrate(&params, &s0, t_end, &opts) {
            Ok(t) => t,
            Err(TrajectoryError::Integration {
                kind, t, partial, ..
            }) => {
                records.push(CheckRecord::below(
                    "simulate",
                    format!("time span left unintegrated ({kind:?})"),
                    t_end - t,
                    f64::MIN_POSITIVE,
                ));
                *partial
            }
            Err(e) => return Err(e.into()),
        };
        if emit(Format::Csv) {
            files.push(("trajectory.csv".into(), csv::trajectory_csv(&traj)));
        }
        simulated = Some(traj);
    }

    if wants(Task::Analytic) {
        let exact = exact.as_ref().expect("validated");
        let times = uniform_times(0.0, t_end, it.samples);
        let traj = exact.sample(&times)?;
        let h = traj
            .samples()
            .iter()
            .map(|s| s.snapshot.h.abs())
            .fold(0.0, f64::max);
        records.push(CheckRecord::below(
            "analytic",
            "max |H| on the exact trajectory",
            h,
            1e-12,
        ));
        if let Some(sim) = &simulated {
            let gap = sim
                .states()
                .zip(traj.states())
                .map(|(a, b)| (a.position() - b.position()).norm())
                .fold(0.0, f64::max);
            records.push(CheckRecord::below(
                "analytic",
                "max position gap, integrator vs exact",
                gap,
                1e-6,
            ));
        }
        if emit(Format::Csv) {
            files.push(("analytic.csv".into(), csv::trajectory_csv(&traj)));
        }
    }

    if wants(Task::Duality) {
        let Initial::Orbit(spec) = initial else {
            unreachable!("validated")
        };
        let exact = exact.as_ref().expect("validated");
        let rs = params.sphere_radius()?;
        let (a, b) = orbit_sphere_frame(&spec, rs)?;
        let circle_gap = match great_circle_image(rs, &a, &b)? {
            GreatCircleImage::Circle { center, radius, .. } => {
                (center - spec.center()).norm() + (radius - spec.radius).abs()
            }
            GreatCircleImage::Line { .. } => f64::INFINITY,
        };
        records.push(CheckRecord::below(
            "duality",
            "great-circle image vs orbit circle",
            circle_gap,
            1e-9,
        ));
        let ep = sphere_dual_energy(params.alpha, rs);
        let sphere_period = TAU * rs / (2.0 * ep / params.mass).sqrt();
        let mut rows = Vec::with_capacity(it.samples + 1);
        let mut path = Vec::with_capacity(it.samples + 1);
        for tp in uniform_times(0.0, sphere_period, it.samples) {
            let s = sphere_free_motion(rs, ep, params.mass, &a, &b, tp)?;
            let pos = stereographic_project(rs, &s)?;
            rows.push((tp, [s.sx(), s.sy(), s.sz()], 0.0, pos));
            path.push((pos, tp));
        }
        let planar = reparametrize_time(&params, &path)?;
        let mut dev: f64 = 0.0;
        for (row, (pos, t)) in rows.iter_mut().zip(&planar) {
            row.2 = *t;
            let d = pos - spec.center();
            let angle = d.y.atan2(d.x) - spec.n_angle - exact.solve_theta(*t)?;
            dev = dev.max((angle - TAU * (angle / TAU).round()).abs());
        }
        records.push(CheckRecord::below(
            "duality",
            "sphere motion mapped to the plane vs theta(t)",
            dev,
            1e-8,
        ));
        if emit(Format::Csv) {
            files.push((
                "dual.csv".into(),
                csv::table_csv(
                    ["tp", "sx", "sy", "sz", "t", "x", "y"],
                    rows.iter()
                        .map(|(tp, s, t, p)| [*tp, s[0], s[1], s[2], *t, p.x, p.y]),
                ),
            ));
        }
    }

    if wants(Task::Invariants) {
        let traj = simulated.as_ref().expect("integrated above");
        let samples = traj.samples();
        records.push(CheckRecord::below(
            "invariants",
            "H drift (relative, floor 1)",
            drift(samples.iter().map(|s| s.snapshot.h)),
            1e-8,
        ));
        records.push(CheckRecord::below(
            "invariants",
            "Lz drift (relative, floor 1)",
            drift(samples.iter().map(|s| s.snapshot.lz)),
            1e-8,
        ));
        let h0 = samples[0].snapshot.h;
        if let Some(i0) = samples[0].snapshot.invariant {
            // the planar components are conserved only on the zero-energy shell
            if h0.abs() <= 1e-12 * (params.alpha / (params.sigma * params.sigma)) {
                let target = crate::model::zero_energy_invariant_norm(&params)?;
                records.push(CheckRecord::below(
                    "invariants",
                    "Ix^2 + Iy^2 + Lz^2 vs m alpha / (2 sigma) (relative)",
                    (i0.norm_squared() - target).abs() / target,
                    1e-10,
                ));
                let scale = (i0.ix * i0.ix + i0.iy * i0.iy)
                    .sqrt()
                    .max(f64::MIN_POSITIVE);
                let worst = samples
                    .iter()
                    .filter_map(|s| s.snapshot.invariant)
                    .map(|i| ((i.ix - i0.ix).powi(2) + (i.iy - i0.iy).powi(2)).sqrt() / scale)
                    .fold(0.0, f64::max);
                records.push(CheckRecord::below(
                    "invariants",
                    "(Ix, Iy) drift (relative)",
                    worst,
                    1e-8,
                ));
            }
        }
    }

    if wants(Task::Figures) {
        let n_angle = match initial {
            Initial::Orbit(spec) => spec.n_angle,
            Initial::State(_) => 0.0,
        };
        let spherical = match params.regime() {
            Regime::Spherical => params,
            _ => PotentialParams::new(params.alpha, params.mass, 3.0)?,
        };
        let hyperbolic = match params.regime() {
            Regime::Hyperbolic => params,
            _ => PotentialParams::new(params.alpha, params.mass, -1.0)?,
        };
        let geometry = match initial {
            Initial::Orbit(spec) if spec.regime() == Regime::Spherical => {
                svg::Figure::Geometry { spec, theta: 2.2 }
            }
            _ => svg::geometry_preset(),
        };
        for fig in [
            geometry,
            svg::orbits_preset(&spherical, n_angle)?,
            svg::stereographic_preset(spherical.sphere_radius()?),
            svg::disk_preset(&hyperbolic)?,
        ] {
            files.push((fig.file_name().to_string(), svg::emit_figure(&fig)?));
        }
    }

    let report = VerificationReport::new(env, records);
    if emit(Format::Json) {
        files.push(("report.json".into(), report.to_json()));
    }
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = config.output.directory.join(name);
        write_atomic(&path, &contents)?;
        written.push(path);
    }
    Ok(ScenarioOutcome {
        report,
        files: written,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> String {
        r#"{"schema": 1, "potential": {"sigma": 3}, "initial": {"orbit": {"R": 2, "l": 1}},
            "tasks": ["analytic"], "output": {"directory": "unused"}}"#
            .to_string()
    }

    #[test]
    fn defaults_fill_in() {
        let c = ScenarioConfig::from_json(&minimal()).unwrap();
        assert_eq!(c.potential.alpha, 1.0);
        assert_eq!(c.potential.mass, 1.0);
        assert_eq!(c.integration, IntegrationConfig::default());
        assert_eq!(
            c.output.formats,
            vec![Format::Csv, Format::Svg, Format::Json]
        );
        assert!(c.validate().is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = minimal().replace("\"sigma\": 3", "\"sigma\": 3, \"beta\": 1");
        assert!(matches!(
            ScenarioConfig::from_json(&text),
            Err(ScenarioError::Config(_))
        ));
        let text = minimal().replace("\"tasks\"", "\"extra\": 0, \"tasks\"");
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn validation_errors() {
        let bad = |text: String| {
            let c = ScenarioConfig::from_json(&text).unwrap();
            assert!(
                matches!(c.validate(), Err(ScenarioError::Config(_))),
                "{text}"
            );
        };
        bad(minimal().replace("\"schema\": 1", "\"schema\": 2"));
        bad(minimal().replace("\"sigma\": 3", "\"sigma\": 2"));
        bad(minimal().replace(
            "\"orbit\": {\"R\": 2, \"l\": 1}",
            "\"orbit\": {\"R\": 2, \"l\": 1}, \"state\": {\"x\": 1, \"y\": 0, \"px\": 0, \"py\": 1}",
        ));
        bad(minimal().replace("\"orbit\": {\"R\": 2, \"l\": 1}", ""));
        bad(minimal().replace("[\"analytic\"]", "[]"));
        bad(minimal().replace("[\"analytic\"]", "[\"analytic\", \"analytic\"]"));
        bad(minimal().replace(
            "\"orbit\": {\"R\": 2, \"l\": 1}",
            "\"state\": {\"x\": 1, \"y\": 0, \"px\": 0, \"py\": 1}",
        ));
        bad(minimal().replace(
            "\"potential\": {\"sigma\": 3}",
            "\"potential\": {\"sigma\": 3, \"alpha\": -1}",
        ));
    }

    #[test]
    fn drift_uses_floor() {
        assert_eq!(drift([0.0, 1e-9, -2e-9].into_iter()), 2e-9);
        assert!((drift([4.0, 4.0 + 4e-9].into_iter()) - 1e-9).abs() < 1e-15);
    }

    #[test]
    fn atomic_write_leaves_no_temp_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/file.txt");
        write_atomic(&path, "abc\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "abc\n");
        let names: Vec<_> = fs::read_dir(dir.path().join("sub"))
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names.len(), 1);
    }
}
