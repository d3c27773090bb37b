//! Bohlin-Arnold-Vassiliev machinery: the Maupertuis-Jacobi action, circle
//! inversion, the stereographic projection pair and the dual coupling.

use nalgebra::Vector3;
use thiserror::Error;

use crate::geometry::{fit_circle, FittedCircle, GeometryError};
use crate::model::{force_vector, potential, ModelError, OrbitSpec, PotentialParams, Vec2};

pub type Vec3 = Vector3<f64>;

/// Great circles passing closer than this (relative to the sphere radius)
/// to the north pole project to lines.
pub const LINE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
}

/// Unit vector on the dual sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Vec3);

impl SpherePoint {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Result<Self, DualityError> {
        let v = Vec3::new(sx, sy, sz);
        if !((v.norm() - 1.0).abs() <= 1e-12) {
            return Err(DualityError::InvalidParameter(format!(
                "sphere point must be a unit vector, |s| = {}",
                v.norm()
            )));
        }
        Ok(Self(v))
    }

    pub fn normalized(v: Vec3) -> Result<Self, DualityError> {
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(DualityError::InvalidParameter(
                "cannot normalize zero vector".into(),
            ));
        }
        Ok(Self(v / n))
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }

    pub fn sx(&self) -> f64 {
        self.0.x
    }

    pub fn sy(&self) -> f64 {
        self.0.y
    }

    pub fn sz(&self) -> f64 {
        self.0.z
    }

    pub fn antipode(&self) -> Self {
        Self(-self.0)
    }
}

/// `S = sum over segments of sqrt(2 m (E - V(midpoint))) |segment|`.
pub fn maupertuis_action(
    params: &PotentialParams,
    energy: f64,
    path: &[Vec2],
) -> Result<f64, DualityError> {
    if path.is_empty() {
        return Err(DualityError::InvalidParameter("empty path".into()));
    }
    for p in path {
        momentum_magnitude(params, energy, p)?;
    }
    path.windows(2)
        .map(|w| {
            Ok(momentum_magnitude(params, energy, &(0.5 * (w[0] + w[1])))? * (w[1] - w[0]).norm())
        })
        .sum()
}

/// Gradient of [`maupertuis_action`] with respect to every node. The end
/// nodes get their gradient too; callers holding the ends fixed ignore it.
pub fn maupertuis_gradient(
    params: &PotentialParams,
    energy: f64,
    path: &[Vec2],
) -> Result<Vec<Vec2>, DualityError> {
    let mut grad = vec![Vec2::zeros(); path.len()];
    for p in path {
        momentum_magnitude(params, energy, p)?;
    }
    for (i, w) in path.windows(2).enumerate() {
        let mid = 0.5 * (w[0] + w[1]);
        let d = w[1] - w[0];
        let len = d.norm();
        let weight = momentum_magnitude(params, energy, &mid)?;
        // grad sqrt(2m(E - V)) = m F / sqrt(2m(E - V))
        let grad_weight = force_vector(params, mid.x, mid.y)? * (params.mass / weight);
        let along = if len > 0.0 {
            d * (weight / len)
        } else {
            Vec2::zeros()
        };
        grad[i] += 0.5 * len * grad_weight - along;
        grad[i + 1] += 0.5 * len * grad_weight + along;
    }
    Ok(grad)
}

fn momentum_magnitude(
    params: &PotentialParams,
    energy: f64,
    p: &Vec2,
) -> Result<f64, DualityError> {
    let v = potential(params, p.norm())?;
    let k = energy - v;
    if k < 0.0 {
        return Err(DualityError::Domain(format!(
            "classically forbidden point ({}, {}): E - V = {k:e}",
            p.x, p.y
        )));
    }
    Ok((2.0 * params.mass * k).sqrt())
}

/// `r -> R0^2 / r` at fixed polar angle.
pub fn circle_inversion(r0: f64, pos: &Vec2) -> Result<Vec2, DualityError> {
    let r2 = pos.norm_squared();
    if r2 == 0.0 {
        return Err(DualityError::Domain(
            "circle inversion of the origin".into(),
        ));
    }
    Ok(pos * (r0 * r0 / r2))
}

/// Radius of the inversion circle, `(alpha / E')^(1/4)`.
pub fn inversion_radius(alpha: f64, ep: f64) -> Result<f64, DualityError> {
    if !(ep > 0.0 && alpha > 0.0) {
        return Err(DualityError::InvalidParameter(format!(
            "need alpha > 0 and E' > 0, got {alpha}, {ep}"
        )));
    }
    Ok((alpha / ep).powf(0.25))
}

/// Image circle of a free straight orbit `x = d` under inversion by `R0`:
/// center `(R0^2 / (2d), 0)` and radius `R0^2 / (2d)`, through the origin.
pub fn line_orbit_image(r0: f64, d: f64) -> Result<(Vec2, f64), DualityError> {
    if !(d > 0.0) {
        return Err(DualityError::InvalidParameter(format!(
            "line offset must be positive, got {d}"
        )));
    }
    let radius = r0 * r0 / (2.0 * d);
    Ok((Vec2::new(radius, 0.0), radius))
}

/// `alpha' = -(E / E') alpha`.
pub fn dual_coupling(energy: f64, ep: f64, alpha: f64) -> Result<f64, DualityError> {
    if !(ep > 0.0) {
        return Err(DualityError::InvalidParameter(format!(
            "dual energy must be positive, got {ep}"
        )));
    }
    if energy > 0.0 {
        return Err(DualityError::InvalidParameter(format!(
            "source energy must be non-positive, got {energy}"
        )));
    }
    if energy == 0.0 {
        return Ok(0.0);
    }
    Ok(-(energy / ep) * alpha)
}

/// Free-motion energy on the sphere of radius `r_sphere` matching the
/// metric factor `2 R^2 / (r^2 + R^2)`: `E' = alpha / (4 R^4)`.
pub fn sphere_dual_energy(alpha: f64, r_sphere: f64) -> f64 {
    alpha / (4.0 * r_sphere.powi(4))
}

/// Inverse stereographic projection onto the unit sphere of directions.
pub fn stereographic_lift(r_sphere: f64, pos: &Vec2) -> SpherePoint {
    let r2 = pos.norm_squared();
    let den = r2 + r_sphere * r_sphere;
    let k = 2.0 * r_sphere / den;
    SpherePoint(Vec3::new(
        k * pos.x,
        k * pos.y,
        (r2 - r_sphere * r_sphere) / den,
    ))
}

/// Projection from the north pole onto the equatorial plane.
pub fn stereographic_project(r_sphere: f64, s: &SpherePoint) -> Result<Vec2, DualityError> {
    let den = 1.0 - s.sz();
    if den <= f64::EPSILON {
        return Err(DualityError::Domain(
            "north pole projects to infinity".into(),
        ));
    }
    Ok(Vec2::new(s.sx(), s.sy()) * (r_sphere / den))
}

/// Lift followed by dropping the sphere point onto the equatorial plane:
/// `R (s_x, s_y)`. Near the north pole this is the local chart in which the
/// lift reduces to circle inversion of radius `sqrt(2) R`.
pub fn north_chart(r_sphere: f64, pos: &Vec2) -> Vec2 {
    let s = stereographic_lift(r_sphere, pos);
    Vec2::new(s.sx(), s.sy()) * r_sphere
}

/// Stereographic image of a great circle.
#[derive(Debug, Clone, PartialEq)]
pub enum GreatCircleImage {
    Circle {
        center: Vec2,
        radius: f64,
        /// Fit to a dense projected sampling of the great circle.
        fit: FittedCircle,
    },
    /// Line through the origin along `direction`.
    Line { direction: Vec2 },
}

pub fn great_circle_image(
    r_sphere: f64,
    a: &SpherePoint,
    b: &SpherePoint,
) -> Result<GreatCircleImage, DualityError> {
    let (va, vb) = (a.vector(), b.vector());
    if va.dot(&vb).abs() > 1e-12 {
        return Err(DualityError::DegenerateFrame(format!(
            "frame vectors not orthogonal, a.b = {:e}",
            va.dot(&vb)
        )));
    }
    let normal = va.cross(&vb);
    if normal.z.abs() < LINE_GUARD {
        let dir = Vec2::new(-normal.y, normal.x);
        let n = dir.norm();
        if n == 0.0 {
            return Err(DualityError::DegenerateFrame("degenerate normal".into()));
        }
        return Ok(GreatCircleImage::Line { direction: dir / n });
    }
    let center = Vec2::new(normal.x, normal.y) * (-r_sphere / normal.z);
    let radius = r_sphere / normal.z.abs();

    // sample away from the north pole, where the image runs off to infinity
    let n = 512;
    let points: Vec<Vec2> = (0..n)
        .filter_map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            let s = SpherePoint::normalized(va * t.cos() + vb * t.sin()).ok()?;
            if s.sz() > 1.0 - 1e-3 {
                return None;
            }
            stereographic_project(r_sphere, &s).ok()
        })
        .collect();
    let fit = fit_circle(&points)?;
    Ok(GreatCircleImage::Circle {
        center,
        radius,
        fit,
    })
}

/// Orthonormal frame `(a, b)` of the great circle whose stereographic image
/// is `spec`: `a` lifts the orbit point at `theta = 0`, and the motion
/// `cos(w t') a + sin(w t') b` runs in the orbit's sense.
pub fn orbit_sphere_frame(
    spec: &OrbitSpec,
    r_sphere: f64,
) -> Result<(SpherePoint, SpherePoint), DualityError> {
    let scale = spec.radius * spec.radius;
    if (spec.sigma() - r_sphere * r_sphere).abs() > 1e-12 * scale {
        return Err(DualityError::InvalidParameter(format!(
            "orbit R^2 - l^2 = {} does not match sphere radius^2 = {}",
            spec.sigma(),
            r_sphere * r_sphere
        )));
    }
    let a = stereographic_lift(r_sphere, &spec.point_at(0.0));
    let quarter = stereographic_lift(
        r_sphere,
        &spec.point_at(spec.sense.sign() * std::f64::consts::FRAC_PI_2),
    );
    let q = quarter.vector();
    let b = SpherePoint::normalized(q - a.vector() * a.vector().dot(&q))?;
    Ok((a, b))
}
