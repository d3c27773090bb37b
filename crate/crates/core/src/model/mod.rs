//! Domain types, the `-alpha / (r^2 + sigma)^2` potential family, Newton's
//! on-orbit force law and the conserved-quantity evaluators.
//!
//! Everything here is a pure function of its inputs.

mod bracket;

pub use bracket::{central_difference_bracket, gradient, poisson_bracket, Observable};

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vec2 = Vector2<f64>;

/// Relative width of the rejected band around `r^2 + sigma = 0`.
pub const SINGULAR_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular evaluation: {0}")]
    Singular(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Sign class of `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `sigma > 0`: orbits enclose the force center, dual to free motion on a sphere.
    Spherical,
    /// `sigma = 0`: the inverse quartic potential.
    Quartic,
    /// `sigma < 0`: the potential has a pole on the circle `r^2 = -sigma`.
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub alpha: f64,
    pub mass: f64,
    pub sigma: f64,
}

impl PotentialParams {
    pub fn new(alpha: f64, mass: f64, sigma: f64) -> Result<Self, ModelError> {
        let p = Self { alpha, mass, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(ModelError::InvalidParameter(format!(
                "alpha must be finite and positive, got {}",
                self.alpha
            )));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(ModelError::InvalidParameter(format!(
                "mass must be finite and positive, got {}",
                self.mass
            )));
        }
        if !self.sigma.is_finite() {
            return Err(ModelError::InvalidParameter(format!(
                "sigma must be finite, got {}",
                self.sigma
            )));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.sigma > 0.0 {
            Regime::Spherical
        } else if self.sigma < 0.0 {
            Regime::Hyperbolic
        } else {
            Regime::Quartic
        }
    }

    /// Radius of the dual sphere, `sqrt(sigma)`. Only defined for `sigma > 0`.
    pub fn sphere_radius(&self) -> Result<f64, ModelError> {
        if self.sigma > 0.0 {
            Ok(self.sigma.sqrt())
        } else {
            Err(ModelError::Domain(format!(
                "sphere radius needs sigma > 0, got {}",
                self.sigma
            )))
        }
    }

    /// Radius of the pole circle, `sqrt(-sigma)`. Only defined for `sigma < 0`.
    pub fn disk_radius(&self) -> Result<f64, ModelError> {
        if self.sigma < 0.0 {
            Ok((-self.sigma).sqrt())
        } else {
            Err(ModelError::Domain(format!(
                "disk radius needs sigma < 0, got {}",
                self.sigma
            )))
        }
    }

    /// `r^2 + sigma`, rejecting the singular band.
    pub(crate) fn shifted_r2(&self, r2: f64) -> Result<f64, ModelError> {
        let s = r2 + self.sigma;
        if s.abs() <= SINGULAR_GUARD * r2.max(self.sigma.abs()) {
            return Err(ModelError::Singular(format!(
                "r^2 + sigma = {s:e} at r^2 = {r2}, sigma = {}",
                self.sigma
            )));
        }
        Ok(s)
    }

    pub fn check_state(&self, s: &PhaseState) -> Result<(), ModelError> {
        if !s.is_finite() {
            return Err(ModelError::InvalidParameter(format!(
                "non-finite state {s:?}"
            )));
        }
        self.shifted_r2(s.r2()).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhaseState {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
    pub t: f64,
}

impl PhaseState {
    pub fn new(x: f64, y: f64, px: f64, py: f64, t: f64) -> Self {
        Self { x, y, px, py, t }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn momentum(&self) -> Vec2 {
        Vec2::new(self.px, self.py)
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Polar angle of the position.
    pub fn phi(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(&self) -> bool {
        [self.x, self.y, self.px, self.py, self.t]
            .iter()
            .all(|v| v.is_finite())
    }

    /// Rotates position and momentum together about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
            px: c * self.px - s * self.py,
            py: s * self.px + c * self.py,
            t: self.t,
        }
    }

    pub(crate) fn as_array(&self) -> [f64; 4] {
        [self.x, self.y, self.px, self.py]
    }

    pub(crate) fn from_array(v: [f64; 4], t: f64) -> Self {
        Self::new(v[0], v[1], v[2], v[3], t)
    }
}

/// Direction of travel along an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    CounterClockwise,
    Clockwise,
}

impl Sense {
    pub fn sign(self) -> f64 {
        match self {
            Sense::CounterClockwise => 1.0,
            Sense::Clockwise => -1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Self, ModelError> {
        match sign {
            1 => Ok(Sense::CounterClockwise),
            -1 => Ok(Sense::Clockwise),
            other => Err(ModelError::InvalidParameter(format!(
                "sense must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// Geometric circle orbit: radius `R`, center displaced by `l` along the
/// direction `n_angle` from the force center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    pub radius: f64,
    pub offset: f64,
    pub n_angle: f64,
    pub sense: Sense,
}

impl OrbitSpec {
    pub fn new(radius: f64, offset: f64, n_angle: f64, sense: Sense) -> Result<Self, ModelError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(ModelError::InvalidParameter(format!(
                "orbit radius must be positive, got {radius}"
            )));
        }
        if !(offset.is_finite() && offset >= 0.0) {
            return Err(ModelError::InvalidParameter(format!(
                "orbit offset must be non-negative, got {offset}"
            )));
        }
        if !n_angle.is_finite() {
            return Err(ModelError::InvalidParameter(
                "n_angle must be finite".into(),
            ));
        }
        Ok(Self {
            radius,
            offset,
            n_angle,
            sense,
        })
    }

    /// The zero-energy orbit of radius `R` sharing `sigma`: `l = sqrt(R^2 - sigma)`.
    pub fn for_sigma(
        sigma: f64,
        offset: f64,
        n_angle: f64,
        sense: Sense,
    ) -> Result<Self, ModelError> {
        let r2 = offset * offset + sigma;
        if r2 <= 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "no orbit with offset {offset} for sigma {sigma}"
            )));
        }
        Self::new(r2.sqrt(), offset, n_angle, sense)
    }

    /// `R^2 - l^2`, the `sigma` of the potential that carries this orbit at zero energy.
    pub fn sigma(&self) -> f64 {
        (self.radius - self.offset) * (self.radius + self.offset)
    }

    pub fn regime(&self) -> Regime {
        if self.offset < self.radius {
            Regime::Spherical
        } else if self.offset > self.radius {
            Regime::Hyperbolic
        } else {
            Regime::Quartic
        }
    }

    pub fn direction(&self) -> Vec2 {
        Vec2::new(self.n_angle.cos(), self.n_angle.sin())
    }

    pub fn center(&self) -> Vec2 {
        self.direction() * self.offset
    }

    /// Point on the orbit at angle `theta` counted from the displacement direction.
    pub fn point_at(&self, theta: f64) -> Vec2 {
        let a = theta + self.n_angle;
        self.center() + Vec2::new(a.cos(), a.sin()) * self.radius
    }

    /// Checks the orbit lies at zero energy in `params` (`sigma = R^2 - l^2`).
    pub fn check_matches(&self, params: &PotentialParams) -> Result<(), ModelError> {
        let scale = self.radius * self.radius;
        if (self.sigma() - params.sigma).abs() > 1e-12 * scale.max(params.sigma.abs()) {
            return Err(ModelError::InvalidParameter(format!(
                "orbit has R^2 - l^2 = {}, potential has sigma = {}",
                self.sigma(),
                params.sigma
            )));
        }
        Ok(())
    }

    /// Rate constant of the implicit trajectory law, `c = ±sqrt(alpha / (2 m)) / R^2`.
    pub fn rate_constant(&self, alpha: f64, mass: f64) -> f64 {
        self.sense.sign() * (alpha / (2.0 * mass)).sqrt() / (self.radius * self.radius)
    }

    /// Zero-energy phase state at orbit angle `theta`, any regime.
    ///
    /// Fails where `R + l cos(theta)` vanishes (the orbit crosses the pole
    /// circle there, or passes through the force center when `l = R`).
    pub fn state_at(
        &self,
        alpha: f64,
        mass: f64,
        theta: f64,
        t: f64,
    ) -> Result<PhaseState, ModelError> {
        let denom = self.radius + self.offset * theta.cos();
        if denom.abs() <= SINGULAR_GUARD * (self.radius + self.offset) {
            return Err(ModelError::Singular(format!(
                "R + l cos(theta) vanishes at theta = {theta}"
            )));
        }
        let theta_dot = self.rate_constant(alpha, mass) / denom;
        let a = theta + self.n_angle;
        let (s, c) = a.sin_cos();
        let pos = self.point_at(theta);
        let speed = mass * self.radius * theta_dot;
        Ok(PhaseState::new(pos.x, pos.y, -speed * s, speed * c, t))
    }
}

/// Distance from the force center to the orbit point at `theta`.
pub fn radius_at(spec: &OrbitSpec, theta: f64) -> f64 {
    let (r, l) = (spec.radius, spec.offset);
    (r * r + l * l + 2.0 * r * l * theta.cos()).max(0.0).sqrt()
}

/// Signed chord through the force center, `2R(R + l cos(theta)) / r(theta)`.
pub fn chord_at(spec: &OrbitSpec, theta: f64) -> Result<f64, ModelError> {
    let r = radius_at(spec, theta);
    if r <= SINGULAR_GUARD * (spec.radius + spec.offset) {
        return Err(ModelError::Singular(format!(
            "orbit passes through the force center at theta = {theta}"
        )));
    }
    Ok(2.0 * spec.radius * (spec.radius + spec.offset * theta.cos()) / r)
}

/// Newton's on-orbit force, `-4 alpha / (r^2 chord^3)`. Negative is attractive.
pub fn newton_force_on_orbit(spec: &OrbitSpec, alpha: f64, theta: f64) -> Result<f64, ModelError> {
    let r = radius_at(spec, theta);
    let chord = chord_at(spec, theta)?;
    Ok(-4.0 * alpha / (r * r * chord.powi(3)))
}

/// `V(r) = -alpha / (r^2 + sigma)^2`.
pub fn potential(params: &PotentialParams, r: f64) -> Result<f64, ModelError> {
    if !(r >= 0.0) {
        return Err(ModelError::Domain(format!(
            "radius must be non-negative, got {r}"
        )));
    }
    let s = params.shifted_r2(r * r)?;
    Ok(-params.alpha / (s * s))
}

/// Signed radial force component `-dV/dr = -4 alpha r / (r^2 + sigma)^3`.
pub fn radial_force(params: &PotentialParams, r: f64) -> Result<f64, ModelError> {
    let s = params.shifted_r2(r * r)?;
    Ok(-4.0 * params.alpha * r / (s * s * s))
}

/// `F = -grad V` at `(x, y)`.
pub fn force_vector(params: &PotentialParams, x: f64, y: f64) -> Result<Vec2, ModelError> {
    let s = params.shifted_r2(x * x + y * y)?;
    let k = -4.0 * params.alpha / (s * s * s);
    Ok(Vec2::new(k * x, k * y))
}

pub fn kinetic_energy(params: &PotentialParams, s: &PhaseState) -> f64 {
    (s.px * s.px + s.py * s.py) / (2.0 * params.mass)
}

pub fn hamiltonian(params: &PotentialParams, s: &PhaseState) -> Result<f64, ModelError> {
    Ok(kinetic_energy(params, s) + potential(params, s.r2().sqrt())?)
}

pub fn angular_momentum(s: &PhaseState) -> f64 {
    s.x * s.py - s.y * s.px
}

/// `Q = r . p`.
pub fn virial_q(s: &PhaseState) -> f64 {
    s.x * s.px + s.y * s.py
}

/// Sphere angular momentum expressed in planar phase-space variables.
/// `(ix, iy)` is the Runge-Lenz analogue; `iz` is `L_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub ix: f64,
    pub iy: f64,
    pub iz: f64,
}

impl InvariantVector {
    pub fn norm_squared(&self) -> f64 {
        self.ix * self.ix + self.iy * self.iy + self.iz * self.iz
    }

    /// `I_y / I_x`, the orientation integral.
    pub fn orientation_ratio(&self) -> f64 {
        self.iy / self.ix
    }
}

pub fn invariant_vector(
    params: &PotentialParams,
    s: &PhaseState,
) -> Result<InvariantVector, ModelError> {
    let rs = params.sphere_radius()?;
    let lz = angular_momentum(s);
    let q = virial_q(s);
    let k = -0.5 / rs;
    Ok(InvariantVector {
        ix: k * (s.x * lz - s.y * q - s.py * params.sigma),
        iy: k * (s.y * lz + s.x * q + s.px * params.sigma),
        iz: lz,
    })
}

/// Value of `I_x^2 + I_y^2 + L_z^2` on the zero-energy shell, `m alpha / (2 sigma)`.
pub fn zero_energy_invariant_norm(params: &PotentialParams) -> Result<f64, ModelError> {
    params.sphere_radius()?;
    Ok(params.mass * params.alpha / (2.0 * params.sigma))
}

/// All six observables at once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub h: f64,
    pub lz: f64,
    pub q: f64,
    /// `None` when `sigma <= 0`.
    pub invariant: Option<InvariantVector>,
}

impl Snapshot {
    pub fn evaluate(params: &PotentialParams, s: &PhaseState) -> Result<Self, ModelError> {
        let invariant = match params.regime() {
            Regime::Spherical => Some(invariant_vector(params, s)?),
            _ => None,
        };
        Ok(Self {
            h: hamiltonian(params, s)?,
            lz: angular_momentum(s),
            q: virial_q(s),
            invariant,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spec21() -> OrbitSpec {
        OrbitSpec::new(2.0, 1.0, 0.0, Sense::CounterClockwise).unwrap()
    }

    fn params3() -> PotentialParams {
        PotentialParams::new(1.0, 1.0, 3.0).unwrap()
    }

    #[test]
    fn radius_and_chord_examples() {
        let s = spec21();
        assert!((radius_at(&s, 0.0) - 3.0).abs() < 1e-15);
        assert!((radius_at(&s, PI) - 1.0).abs() < 1e-15);
        assert!((radius_at(&s, FRAC_PI_2) - 5f64.sqrt()).abs() < 1e-15);
        assert!((chord_at(&s, 0.0).unwrap() - 4.0).abs() < 1e-15);
        assert!((chord_at(&s, PI).unwrap() - 4.0).abs() < 1e-14);
        assert!((chord_at(&s, FRAC_PI_2).unwrap() - 8.0 / 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn chord_singular_through_center() {
        let s = OrbitSpec::new(1.0, 1.0, 0.0, Sense::CounterClockwise).unwrap();
        assert!(matches!(chord_at(&s, PI), Err(ModelError::Singular(_))));
        assert!(matches!(
            newton_force_on_orbit(&s, 1.0, PI),
            Err(ModelError::Singular(_))
        ));
    }

    #[test]
    fn chord_negative_outside_orbit() {
        let s = OrbitSpec::new(3f64.sqrt(), 2.0, 0.0, Sense::CounterClockwise).unwrap();
        assert!(chord_at(&s, PI).unwrap() < 0.0);
    }

    #[test]
    fn newton_force_examples() {
        let f = newton_force_on_orbit(&spec21(), 1.0, 0.0).unwrap();
        assert!((f + 1.0 / 144.0).abs() < 1e-17);
        let centered = OrbitSpec::new(1.0, 0.0, 0.0, Sense::CounterClockwise).unwrap();
        for th in [0.0, 0.3, 2.0, -1.0] {
            assert!((newton_force_on_orbit(&centered, 1.0, th).unwrap() + 0.5).abs() < 1e-15);
        }
        for th in [0.1, 1.0, 2.5] {
            let a = newton_force_on_orbit(&spec21(), 1.0, th).unwrap();
            let b = newton_force_on_orbit(&spec21(), 1.0, -th).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn potential_examples() {
        let quartic = PotentialParams::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(potential(&quartic, 1.0).unwrap(), -1.0);
        assert!((potential(&params3(), 0.0).unwrap() + 1.0 / 9.0).abs() < 1e-16);
        let hyp = PotentialParams::new(1.0, 1.0, -1.0).unwrap();
        assert!(matches!(potential(&hyp, 1.0), Err(ModelError::Singular(_))));
        assert!(matches!(
            potential(&hyp, 1.0 + 1e-14),
            Err(ModelError::Singular(_))
        ));
        assert!(potential(&hyp, 1.0 + 1e-6).is_ok());
        assert!(matches!(
            potential(&quartic, 0.0),
            Err(ModelError::Singular(_))
        ));
    }

    #[test]
    fn params_validation() {
        assert!(PotentialParams::new(0.0, 1.0, 1.0).is_err());
        assert!(PotentialParams::new(1.0, -1.0, 1.0).is_err());
        assert!(PotentialParams::new(1.0, 1.0, f64::NAN).is_err());
        assert_eq!(
            PotentialParams::new(1.0, 1.0, -2.0).unwrap().regime(),
            Regime::Hyperbolic
        );
        assert_eq!(
            PotentialParams::new(1.0, 1.0, 0.0).unwrap().regime(),
            Regime::Quartic
        );
        assert!(OrbitSpec::new(0.0, 1.0, 0.0, Sense::Clockwise).is_err());
        assert!(OrbitSpec::new(1.0, -0.1, 0.0, Sense::Clockwise).is_err());
        assert!(Sense::from_sign(0).is_err());
    }

    #[test]
    fn force_vector_examples() {
        let p = params3();
        assert_eq!(force_vector(&p, 0.0, 0.0).unwrap(), Vec2::zeros());
        let f = force_vector(&p, 3.0, 0.0).unwrap();
        assert!((f.x + 1.0 / 144.0).abs() < 1e-17 && f.y == 0.0);
        let (x, y, a) = (1.3, -0.4, 0.77f64);
        let f = force_vector(&p, x, y).unwrap();
        let (s, c) = a.sin_cos();
        let g = force_vector(&p, c * x - s * y, s * x + c * y).unwrap();
        assert!((g.x - (c * f.x - s * f.y)).abs() < 1e-15);
        assert!((g.y - (s * f.x + c * f.y)).abs() < 1e-15);
    }

    #[test]
    fn force_vector_is_minus_gradient() {
        let p = PotentialParams::new(1.7, 1.0, -0.5).unwrap();
        let (x, y) = (1.1, 0.6);
        let h = 1e-6;
        let v = |x: f64, y: f64| potential(&p, (x * x + y * y).sqrt()).unwrap();
        let gx = -(v(x + h, y) - v(x - h, y)) / (2.0 * h);
        let gy = -(v(x, y + h) - v(x, y - h)) / (2.0 * h);
        let f = force_vector(&p, x, y).unwrap();
        assert!((f.x - gx).abs() < 1e-7 * f.norm());
        assert!((f.y - gy).abs() < 1e-7 * f.norm());
    }

    #[test]
    fn hamiltonian_examples() {
        let rest = PhaseState::default();
        assert!((hamiltonian(&params3(), &rest).unwrap() + 1.0 / 9.0).abs() < 1e-16);
        let s = spec21().state_at(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(hamiltonian(&params3(), &s).unwrap().abs() < 1e-12);
        let moving = PhaseState::new(0.5, 0.2, 0.3, -0.7, 0.0);
        let p = params3();
        assert!(
            (kinetic_energy(&p, &moving) - kinetic_energy(&p, &moving.rotated(1.1))).abs() < 1e-15
        );
    }

    #[test]
    fn angular_momentum_and_q_examples() {
        let py = 1.0 / (6.0 * 2f64.sqrt());
        let s = PhaseState::new(3.0, 0.0, 0.0, py, 0.0);
        assert!((angular_momentum(&s) - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        let radial = PhaseState::new(1.0, 2.0, 0.5, 1.0, 0.0);
        assert_eq!(angular_momentum(&radial), 0.0);
        let m = PhaseState::new(1.0, 2.0, 3.0, -1.0, 0.0);
        let mirrored = PhaseState::new(1.0, -2.0, 3.0, 1.0, 0.0);
        assert_eq!(angular_momentum(&m), -angular_momentum(&mirrored));
        assert_eq!(virial_q(&m), 1.0);
        assert_eq!(virial_q(&PhaseState::new(0.0, 2.0, -3.0, 0.0, 0.0)), 0.0);
        assert!((virial_q(&m) - virial_q(&m.rotated(2.3))).abs() < 1e-14);
    }

    #[test]
    fn invariant_vector_examples() {
        let py = 1.0 / (6.0 * 2f64.sqrt());
        let s = PhaseState::new(3.0, 0.0, 0.0, py, 0.0);
        let i = invariant_vector(&params3(), &s).unwrap();
        assert!((i.ix + 1.0 / (2.0 * 6f64.sqrt())).abs() < 1e-15);
        assert_eq!(i.iy, 0.0);
        assert!((i.iz - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        // I_xy = -(l / sqrt(sigma)) L_z n with l = 1, n = x-hat
        assert!((i.ix + i.iz / 3f64.sqrt()).abs() < 1e-15);
        // 1/24 + 1/8
        assert!((i.norm_squared() - 1.0 / 6.0).abs() < 1e-15);

        let zero = invariant_vector(&params3(), &PhaseState::default()).unwrap();
        assert_eq!(zero.norm_squared(), 0.0);

        for p in [
            PotentialParams::new(1.0, 1.0, 0.0).unwrap(),
            PotentialParams::new(1.0, 1.0, -1.0).unwrap(),
        ] {
            assert!(matches!(
                invariant_vector(&p, &s),
                Err(ModelError::Domain(_))
            ));
        }
    }

    #[test]
    fn state_at_matches_orbit_point() {
        let spec = OrbitSpec::new(2.0, 1.0, 0.4, Sense::Clockwise).unwrap();
        let s = spec.state_at(1.0, 2.0, 1.2, 0.0).unwrap();
        let c = spec.center();
        assert!(((s.position() - c).norm() - 2.0).abs() < 1e-15);
        // momentum tangent to the orbit circle
        assert!((s.position() - c).dot(&s.momentum()).abs() < 1e-15);
        assert!(angular_momentum(&s) < 0.0);
        let quartic = OrbitSpec::new(1.0, 1.0, 0.0, Sense::Clockwise).unwrap();
        assert!(quartic.state_at(1.0, 1.0, PI, 0.0).is_err());
    }
}
