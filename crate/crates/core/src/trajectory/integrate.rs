//! Dormand-Prince 5(4) with PI step-size control and the pair's
//! fourth-order continuous extension for output between accepted steps.

use crate::model::{force_vector, ModelError, PhaseState, PotentialParams, Regime, Snapshot};

use super::{IntegrationFailure, IntegratorStats, Sample, Trajectory, TrajectoryError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Number of uniform output intervals for [`integrate`].
    pub samples: usize,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            samples: 1024,
            max_steps: 5_000_000,
        }
    }
}

impl IntegrateOptions {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - 0.75 * BETA;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const BOUNDARY_PROXIMITY: f64 = 1e-9;

type Y = [f64; 4];

fn axpy(y: &Y, terms: &[(f64, &Y)]) -> Y {
    let mut out = *y;
    for (k, v) in terms {
        for i in 0..4 {
            out[i] += k * v[i];
        }
    }
    out
}

struct System<'a> {
    params: &'a PotentialParams,
    evaluations: usize,
}

impl System<'_> {
    fn rhs(&mut self, y: &Y) -> Result<Y, ModelError> {
        self.evaluations += 1;
        let f = force_vector(self.params, y[0], y[1])?;
        let m = self.params.mass;
        Ok([y[2] / m, y[3] / m, f.x, f.y])
    }

    /// Sign of `r^2 + sigma`; only meaningful in the hyperbolic regime.
    fn side(&self, y: &Y) -> bool {
        y[0] * y[0] + y[1] * y[1] + self.params.sigma > 0.0
    }
}

/// Integrates on a uniform grid of `opts.samples` intervals over `[s0.t, t_end]`.
pub fn integrate(
    params: &PotentialParams,
    s0: &PhaseState,
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<Trajectory, TrajectoryError> {
    if !(t_end > s0.t) {
        return Err(TrajectoryError::InvalidInput(format!(
            "t_end = {t_end} must exceed the initial time {}",
            s0.t
        )));
    }
    if opts.samples == 0 {
        return Err(TrajectoryError::InvalidInput(
            "samples must be positive".into(),
        ));
    }
    let n = opts.samples;
    let span = t_end - s0.t;
    let times: Vec<f64> = (0..=n)
        .map(|k| {
            if k == n {
                t_end
            } else {
                s0.t + span * k as f64 / n as f64
            }
        })
        .collect();
    integrate_at(params, s0, &times, opts)
}

/// Integrates from `s0` and reports the state at each of `times`
/// (strictly increasing, none before `s0.t`).
pub fn integrate_at(
    params: &PotentialParams,
    s0: &PhaseState,
    times: &[f64],
    opts: &IntegrateOptions,
) -> Result<Trajectory, TrajectoryError> {
    params.validate()?;
    params.check_state(s0)?;
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(TrajectoryError::InvalidInput(
            "rtol and atol must be positive".into(),
        ));
    }
    if times.is_empty() {
        return Err(TrajectoryError::InvalidInput("no output times".into()));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) || !(times[0] >= s0.t) {
        return Err(TrajectoryError::InvalidInput(
            "output times must be strictly increasing and not before the initial time".into(),
        ));
    }
    let t_end = *times.last().unwrap();
    let hyperbolic = params.regime() == Regime::Hyperbolic;

    let mut sys = System {
        params,
        evaluations: 0,
    };
    let mut stats = IntegratorStats {
        rtol: opts.rtol,
        atol: opts.atol,
        ..Default::default()
    };
    let mut samples: Vec<Sample> = Vec::with_capacity(times.len());
    let mut next_out = 0;

    let push = |samples: &mut Vec<Sample>, state: PhaseState| -> Result<(), TrajectoryError> {
        let snapshot = Snapshot::evaluate(params, &state)?;
        samples.push(Sample { state, snapshot });
        Ok(())
    };

    let mut t = s0.t;
    let mut y = s0.as_array();
    let mut f = sys.rhs(&y)?;
    while next_out < times.len() && times[next_out] == t {
        push(&mut samples, s0.with_time(t))?;
        next_out += 1;
    }

    let span = t_end - t;
    let mut h = initial_step(&mut sys, &y, &f, opts).min(span);
    let mut err_old: f64 = 1e-4;
    let mut rejected_last = false;

    let fail = |kind, t: f64, y: &Y, samples: Vec<Sample>, stats: IntegratorStats| {
        TrajectoryError::Integration {
            kind,
            t,
            last: PhaseState::from_array(*y, t),
            partial: Box::new(Trajectory {
                params: *params,
                samples,
                stats: Some(stats),
            }),
        }
    };

    while next_out < times.len() {
        if stats.accepted_steps + stats.rejected_steps >= opts.max_steps {
            stats.rhs_evaluations = sys.evaluations;
            return Err(fail(IntegrationFailure::MaxSteps, t, &y, samples, stats));
        }
        if h <= 16.0 * f64::EPSILON * t.abs().max(span) {
            stats.rhs_evaluations = sys.evaluations;
            return Err(fail(
                IntegrationFailure::StepUnderflow,
                t,
                &y,
                samples,
                stats,
            ));
        }
        let last_step = t + h >= t_end;
        if last_step {
            h = t_end - t;
        }

        let trial = dp_step(&mut sys, &y, &f, h, hyperbolic);
        let step = match trial {
            Some(v) => v,
            None => {
                // stage hit the pole band or crossed it
                stats.rejected_steps += 1;
                h *= 0.25;
                rejected_last = true;
                continue;
            }
        };
        let err = error_norm(&step.err, &y, &step.y_new, opts);

        if err <= 1.0 {
            stats.accepted_steps += 1;
            let t_new = if last_step { t_end } else { t + h };
            while next_out < times.len() && times[next_out] <= t_new {
                let tau = times[next_out];
                let out = if tau == t_new {
                    step.y_new
                } else {
                    step.interpolate((tau - t) / h)
                };
                push(&mut samples, PhaseState::from_array(out, tau))?;
                next_out += 1;
            }
            t = t_new;
            y = step.y_new;
            f = step.k7;

            if hyperbolic {
                let gap = (y[0] * y[0] + y[1] * y[1] + params.sigma).abs();
                if gap < BOUNDARY_PROXIMITY * params.sigma.abs() {
                    stats.rhs_evaluations = sys.evaluations;
                    return Err(fail(
                        IntegrationFailure::BoundaryProximity,
                        t,
                        &y,
                        samples,
                        stats,
                    ));
                }
            }

            let mut factor = SAFETY * err.max(1e-10).powf(-EXPO) * err_old.powf(BETA);
            factor = factor.clamp(MIN_FACTOR, MAX_FACTOR);
            if rejected_last {
                factor = factor.min(1.0);
            }
            err_old = err.max(1e-4);
            rejected_last = false;
            h *= factor;
        } else {
            stats.rejected_steps += 1;
            h *= (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
            rejected_last = true;
        }
    }

    stats.rhs_evaluations = sys.evaluations;
    Trajectory::new(*params, samples, Some(stats))
}

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

struct Step {
    y_new: Y,
    k7: Y,
    err: Y,
    /// Coefficients of the fourth-order continuous extension.
    cont: [Y; 5],
}

impl Step {
    /// Dense output at fraction `s` of the step.
    fn interpolate(&self, s: f64) -> Y {
        let s1 = 1.0 - s;
        let c = &self.cont;
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = c[0][i] + s * (c[1][i] + s1 * (c[2][i] + s * (c[3][i] + s1 * c[4][i])));
        }
        out
    }
}

/// One Dormand-Prince step (the system is autonomous, so no stage times).
/// `None` when a stage is singular, or, in the hyperbolic regime, lands on
/// the other side of the pole circle.
fn dp_step(sys: &mut System<'_>, y: &Y, k1: &Y, h: f64, hyperbolic: bool) -> Option<Step> {
    let side = sys.side(y);
    let stage = |sys: &mut System<'_>, ys: Y| -> Option<Y> {
        if hyperbolic && sys.side(&ys) != side {
            return None;
        }
        sys.rhs(&ys).ok()
    };
    let k2 = stage(sys, axpy(y, &[(h * A21, k1)]))?;
    let k3 = stage(sys, axpy(y, &[(h * A31, k1), (h * A32, &k2)]))?;
    let k4 = stage(
        sys,
        axpy(y, &[(h * A41, k1), (h * A42, &k2), (h * A43, &k3)]),
    )?;
    let k5 = stage(
        sys,
        axpy(
            y,
            &[
                (h * A51, k1),
                (h * A52, &k2),
                (h * A53, &k3),
                (h * A54, &k4),
            ],
        ),
    )?;
    let k6 = stage(
        sys,
        axpy(
            y,
            &[
                (h * A61, k1),
                (h * A62, &k2),
                (h * A63, &k3),
                (h * A64, &k4),
                (h * A65, &k5),
            ],
        ),
    )?;
    let y_new = axpy(
        y,
        &[
            (h * A71, k1),
            (h * A73, &k3),
            (h * A74, &k4),
            (h * A75, &k5),
            (h * A76, &k6),
        ],
    );
    let k7 = stage(sys, y_new)?;
    let mut err = [0.0; 4];
    let mut cont = [[0.0; 4]; 5];
    for i in 0..4 {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let diff = y_new[i] - y[i];
        let bspl = h * k1[i] - diff;
        cont[0][i] = y[i];
        cont[1][i] = diff;
        cont[2][i] = bspl;
        cont[3][i] = diff - h * k7[i] - bspl;
        cont[4][i] =
            h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
    }
    Some(Step {
        y_new,
        k7,
        err,
        cont,
    })
}

fn error_norm(err: &Y, y: &Y, y_new: &Y, opts: &IntegrateOptions) -> f64 {
    let sum: f64 = (0..4)
        .map(|i| {
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            (err[i] / sc).powi(2)
        })
        .sum();
    (sum / 4.0).sqrt()
}

fn initial_step(sys: &mut System<'_>, y: &Y, f: &Y, opts: &IntegrateOptions) -> f64 {
    let scaled = |v: &Y| -> f64 {
        let s: f64 = (0..4)
            .map(|i| (v[i] / (opts.atol + opts.rtol * y[i].abs())).powi(2))
            .sum();
        (s / 4.0).sqrt()
    };
    let d0 = scaled(y);
    let d1 = scaled(f);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = axpy(y, &[(h0, f)]);
    let d2 = match sys.rhs(&y1) {
        Ok(f1) => {
            let diff = [f1[0] - f[0], f1[1] - f[1], f1[2] - f[2], f1[3] - f[3]];
            scaled(&diff) / h0
        }
        Err(_) => return h0 * 1e-3,
    };
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

impl PhaseState {
    pub(crate) fn with_time(&self, t: f64) -> Self {
        Self { t, ..*self }
    }
}
