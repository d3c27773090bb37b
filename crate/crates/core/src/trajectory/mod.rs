//! Exact zero-energy trajectories and numerical integration of Hamilton's
//! equations.

mod analytic;
mod integrate;
mod sphere;

pub use analytic::AnalyticTrajectory;
pub use integrate::{integrate, integrate_at, IntegrateOptions};
pub use sphere::{reparametrize_time, sphere_free_motion, sphere_state_in_plane};

use thiserror::Error;

use crate::model::{ModelError, PhaseState, PotentialParams, Snapshot, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationFailure {
    StepUnderflow,
    /// Within `1e-9 sigma` of the hyperbolic pole circle.
    BoundaryProximity,
    MaxSteps,
}

#[derive(Debug, Clone, Error)]
pub enum TrajectoryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Duality(#[from] crate::duality::DualityError),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("root solve did not converge: {0}")]
    NonConvergence(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("integration stopped ({kind:?}) at t = {t}")]
    Integration {
        kind: IntegrationFailure,
        t: f64,
        last: PhaseState,
        /// Samples produced before the failure.
        partial: Box<Trajectory>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub state: PhaseState,
    pub snapshot: Snapshot,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntegratorStats {
    pub rtol: f64,
    pub atol: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub rhs_evaluations: usize,
}

/// Time-ordered samples with their conserved-quantity snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    params: PotentialParams,
    samples: Vec<Sample>,
    stats: Option<IntegratorStats>,
}

impl Trajectory {
    pub fn new(
        params: PotentialParams,
        samples: Vec<Sample>,
        stats: Option<IntegratorStats>,
    ) -> Result<Self, TrajectoryError> {
        if let Some(w) = samples.windows(2).find(|w| !(w[1].state.t > w[0].state.t)) {
            return Err(TrajectoryError::InvalidInput(format!(
                "sample times not strictly increasing at t = {}",
                w[1].state.t
            )));
        }
        Ok(Self {
            params,
            samples,
            stats,
        })
    }

    /// Builds a trajectory from bare states, evaluating the snapshots.
    pub fn from_states(
        params: PotentialParams,
        states: &[PhaseState],
    ) -> Result<Self, TrajectoryError> {
        let samples = states
            .iter()
            .map(|s| {
                Ok(Sample {
                    state: *s,
                    snapshot: Snapshot::evaluate(&params, s)?,
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Self::new(params, samples, None)
    }

    pub fn params(&self) -> &PotentialParams {
        &self.params
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn stats(&self) -> Option<&IntegratorStats> {
        self.stats.as_ref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = &PhaseState> + '_ {
        self.samples.iter().map(|s| &s.state)
    }

    pub fn positions(&self) -> Vec<Vec2> {
        self.states().map(|s| s.position()).collect()
    }

    pub fn start_time(&self) -> Option<f64> {
        self.samples.first().map(|s| s.state.t)
    }

    pub fn end_time(&self) -> Option<f64> {
        self.samples.last().map(|s| s.state.t)
    }

    /// Position at `t` by cubic Hermite interpolation between samples, with
    /// the sample velocities `p / m` as end-point slopes.
    pub fn position_at(&self, t: f64) -> Result<Vec2, TrajectoryError> {
        let (t0, t1) = match (self.start_time(), self.end_time()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(TrajectoryError::InvalidInput("empty trajectory".into())),
        };
        if !(t >= t0 && t <= t1) {
            return Err(TrajectoryError::InvalidInput(format!(
                "t = {t} outside sampled span [{t0}, {t1}]"
            )));
        }
        let k = self.samples.partition_point(|s| s.state.t <= t);
        if k == 0 {
            return Ok(self.samples[0].state.position());
        }
        let a = &self.samples[k - 1].state;
        if a.t == t || k == self.samples.len() {
            return Ok(a.position());
        }
        let b = &self.samples[k].state;
        let m = self.params.mass;
        let ya = [a.x, a.y];
        let yb = [b.x, b.y];
        let fa = [a.px / m, a.py / m];
        let fb = [b.px / m, b.py / m];
        let out = hermite(a.t, b.t, &ya, &yb, &fa, &fb, t);
        Ok(Vec2::new(out[0], out[1]))
    }
}

/// Cubic Hermite interpolant on `[ta, tb]`.
pub(crate) fn hermite<const N: usize>(
    ta: f64,
    tb: f64,
    ya: &[f64; N],
    yb: &[f64; N],
    fa: &[f64; N],
    fb: &[f64; N],
    t: f64,
) -> [f64; N] {
    let h = tb - ta;
    let s = (t - ta) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = h00 * ya[i] + h10 * h * fa[i] + h01 * yb[i] + h11 * h * fb[i];
    }
    out
}
