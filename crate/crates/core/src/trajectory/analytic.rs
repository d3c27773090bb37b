use std::f64::consts::TAU;

use crate::model::{OrbitSpec, PhaseState, PotentialParams, Regime, Snapshot};

use super::{Sample, Trajectory, TrajectoryError};

/// Exact zero-energy motion along an off-center circle.
///
/// The orbit angle obeys `l sin(theta) + R theta = c (t - t0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticTrajectory {
    pub spec: OrbitSpec,
    pub alpha: f64,
    pub mass: f64,
    /// Signed rate constant, `c^2 = alpha / (2 m R^4)` and `sign(c) = sense`.
    pub c: f64,
    pub t0: f64,
}

impl AnalyticTrajectory {
    pub fn new(spec: OrbitSpec, alpha: f64, mass: f64, t0: f64) -> Result<Self, TrajectoryError> {
        PotentialParams::new(alpha, mass, spec.sigma())?;
        Ok(Self {
            spec,
            alpha,
            mass,
            c: spec.rate_constant(alpha, mass),
            t0,
        })
    }

    /// The potential this orbit lives in at zero energy.
    pub fn params(&self) -> PotentialParams {
        PotentialParams {
            alpha: self.alpha,
            mass: self.mass,
            sigma: self.spec.sigma(),
        }
    }

    /// Time for `theta` to advance by `2 pi`: `2 pi R / |c|`.
    pub fn period(&self) -> f64 {
        TAU * self.spec.radius / self.c.abs()
    }

    /// Unwrapped orbit angle at time `t`.
    pub fn solve_theta(&self, t: f64) -> Result<f64, TrajectoryError> {
        let (big_r, l) = (self.spec.radius, self.spec.offset);
        if self.spec.regime() != Regime::Spherical {
            return Err(TrajectoryError::Regime(format!(
                "implicit trajectory law needs l < R, got l = {l}, R = {big_r}"
            )));
        }
        let g = self.c * (t - self.t0);
        if g == 0.0 {
            return Ok(0.0);
        }
        if l == 0.0 {
            return Ok(g / big_r);
        }
        let f = |th: f64| l * th.sin() + big_r * th - g;
        let df = |th: f64| big_r + l * th.cos();

        // f is increasing; theta lies between g/(R+l) and g/(R-l)
        let (mut lo, mut hi) = {
            let a = g / (big_r + l);
            let b = g / (big_r - l);
            (a.min(b), a.max(b))
        };
        let mut th = 0.5 * (lo + hi);
        for _ in 0..200 {
            let fv = f(th);
            if fv.abs() <= 1e-13 * big_r * (1.0 + th.abs()) {
                return Ok(th);
            }
            if fv < 0.0 {
                lo = th;
            } else {
                hi = th;
            }
            let newton = th - fv / df(th);
            th = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 4.0 * f64::EPSILON * th.abs().max(1.0) {
                let fv = f(th);
                if fv.abs() <= 1e-13 * big_r * (1.0 + th.abs()) {
                    return Ok(th);
                }
                break;
            }
        }
        Err(TrajectoryError::NonConvergence(format!(
            "theta solve at t = {t} stalled at {th}"
        )))
    }

    /// `d theta / dt = c / (R + l cos(theta))`.
    pub fn theta_dot(&self, theta: f64) -> f64 {
        self.c / (self.spec.radius + self.spec.offset * theta.cos())
    }

    pub fn state(&self, t: f64) -> Result<PhaseState, TrajectoryError> {
        let theta = self.solve_theta(t)?;
        Ok(self.spec.state_at(self.alpha, self.mass, theta, t)?)
    }

    /// Samples the exact solution on `times` into a [`Trajectory`].
    pub fn sample(&self, times: &[f64]) -> Result<Trajectory, TrajectoryError> {
        let params = self.params();
        let samples = times
            .iter()
            .map(|&t| {
                let state = self.state(t)?;
                let snapshot = Snapshot::evaluate(&params, &state)?;
                Ok(Sample { state, snapshot })
            })
            .collect::<Result<Vec<_>, TrajectoryError>>()?;
        Trajectory::new(params, samples, None)
    }
}
