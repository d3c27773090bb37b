//! Circle fitting and the geometric checks built on it.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;
use thiserror::Error;

use crate::model::Vec2;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("need at least 3 points, got {0}")]
    InsufficientPoints(usize),
    #[error("points are collinear")]
    Collinear,
    #[error("circles do not intersect")]
    NoIntersection,
    #[error("circles coincide")]
    Coincident,
    #[error("trajectory spans {span}, need {needed}")]
    InsufficientSpan { span: f64, needed: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FittedCircle {
    pub cx: f64,
    pub cy: f64,
    pub radius: f64,
    /// Root-mean-square orthogonal distance of the data to the circle.
    pub rms_residual: f64,
}

impl FittedCircle {
    /// An exact circle, residual zero.
    pub fn exact(center: Vec2, radius: f64) -> Self {
        Self {
            cx: center.x,
            cy: center.y,
            radius,
            rms_residual: 0.0,
        }
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(self.cx, self.cy)
    }
}

fn rms_distance(points: &[Vec2], c: Vec2, r: f64) -> f64 {
    let ss: f64 = points.iter().map(|p| ((p - c).norm() - r).powi(2)).sum();
    (ss / points.len() as f64).sqrt()
}

/// Pratt algebraic fit, then Gauss-Newton on the geometric distances.
pub fn fit_circle(points: &[Vec2]) -> Result<FittedCircle, GeometryError> {
    if points.len() < 3 {
        return Err(GeometryError::InsufficientPoints(points.len()));
    }
    if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
        return Err(GeometryError::InvalidParameter("non-finite point".into()));
    }
    let (center, radius) = pratt(points)?;
    let (center, radius) = gauss_newton(points, center, radius);
    Ok(FittedCircle {
        cx: center.x,
        cy: center.y,
        radius,
        rms_residual: rms_distance(points, center, radius),
    })
}

/// Pratt fit via Newton iteration on its characteristic polynomial.
fn pratt(points: &[Vec2]) -> Result<(Vec2, f64), GeometryError> {
    let n = points.len() as f64;
    let mean = points.iter().fold(Vec2::zeros(), |acc, p| acc + p) / n;
    let (mut mxx, mut myy, mut mxy, mut mxz, mut myz, mut mzz) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for p in points {
        let (x, y) = (p.x - mean.x, p.y - mean.y);
        let z = x * x + y * y;
        mxx += x * x;
        myy += y * y;
        mxy += x * y;
        mxz += x * z;
        myz += y * z;
        mzz += z * z;
    }
    mxx /= n;
    myy /= n;
    mxy /= n;
    mxz /= n;
    myz /= n;
    mzz /= n;

    let mz = mxx + myy;
    let spread = ((mxx - myy).powi(2) + 4.0 * mxy * mxy).sqrt();
    let lambda_min = 0.5 * (mz - spread);
    let lambda_max = 0.5 * (mz + spread);
    if !(lambda_max > 0.0) || lambda_min <= 1e-20 * lambda_max {
        return Err(GeometryError::Collinear);
    }

    let cov_xy = mxx * myy - mxy * mxy;
    let a2 = 4.0 * cov_xy - 3.0 * mz * mz - mzz;
    let a1 = mzz * mz + 4.0 * cov_xy * mz - mxz * mxz - myz * myz - mz * mz * mz;
    let a0 =
        mxz * mxz * myy + myz * myz * mxx - mzz * cov_xy - 2.0 * mxz * myz * mxy + mz * mz * cov_xy;

    let mut x = 0.0f64;
    let mut y = f64::INFINITY;
    for _ in 0..50 {
        let y_old = y;
        y = a0 + x * (a1 + x * (a2 + 4.0 * x * x));
        if y.abs() > y_old.abs() {
            x = 0.0;
            break;
        }
        let dy = a1 + x * (2.0 * a2 + 16.0 * x * x);
        let x_old = x;
        x = x_old - y / dy;
        if !x.is_finite() || x < 0.0 {
            x = 0.0;
            break;
        }
        if ((x - x_old) / x).abs() < 1e-12 {
            break;
        }
    }
    let det = x * x - x * mz + cov_xy;
    if det == 0.0 {
        return Err(GeometryError::Collinear);
    }
    let c = Vec2::new(
        (mxz * (myy - x) - myz * mxy) / det / 2.0,
        (myz * (mxx - x) - mxz * mxy) / det / 2.0,
    );
    let radius = (c.norm_squared() + mz + 2.0 * x).sqrt();
    if !(radius.is_finite() && radius > 0.0) {
        return Err(GeometryError::Collinear);
    }
    Ok((c + mean, radius))
}

fn gauss_newton(points: &[Vec2], mut center: Vec2, mut radius: f64) -> (Vec2, f64) {
    let mut rms = rms_distance(points, center, radius);
    for _ in 0..10 {
        let mut jtj = Matrix3::<f64>::zeros();
        let mut jtr = Vector3::<f64>::zeros();
        for p in points {
            let d = p - center;
            let dist = d.norm();
            if dist == 0.0 {
                continue;
            }
            let row = Vector3::new(-d.x / dist, -d.y / dist, -1.0);
            let res = dist - radius;
            jtj += row * row.transpose();
            jtr += row * res;
        }
        let step = match jtj.cholesky() {
            Some(ch) => ch.solve(&(-jtr)),
            None => break,
        };
        let c_new = center + Vec2::new(step.x, step.y);
        let r_new = radius + step.z;
        let rms_new = rms_distance(points, c_new, r_new);
        if !(rms_new <= rms) || !(r_new > 0.0) {
            break;
        }
        let small = step.norm() <= 1e-15 * radius.max(center.norm());
        center = c_new;
        radius = r_new;
        rms = rms_new;
        if small {
            break;
        }
    }
    (center, radius)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    Two(Vec2, Vec2),
    /// Discriminant below `1e-14` of the first circle's radius squared.
    Tangent(Vec2),
    None,
    Coincident,
}

/// Closed-form intersection of two circles.
pub fn circle_intersection(c1: Vec2, r1: f64, c2: Vec2, r2: f64) -> CircleIntersection {
    let delta = c2 - c1;
    let d = delta.norm();
    let scale = r1.max(r2);
    if d <= 1e-14 * scale {
        return if (r1 - r2).abs() <= 1e-14 * scale {
            CircleIntersection::Coincident
        } else {
            CircleIntersection::None
        };
    }
    let u = delta / d;
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let tangency = 1e-14 * r1 * r1;
    if h2 < -tangency {
        return CircleIntersection::None;
    }
    let foot = c1 + u * a;
    if h2 <= tangency {
        return CircleIntersection::Tangent(foot);
    }
    let h = h2.sqrt();
    let perp = Vec2::new(-u.y, u.x);
    CircleIntersection::Two(foot + perp * h, foot - perp * h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquatorCrossings {
    pub p1: Vec2,
    pub p2: Vec2,
    /// `|p1 + p2|`, zero iff the crossings are antipodal.
    pub antipodality_defect: f64,
    pub tangent: bool,
}

/// Where `circle` crosses the origin-centered circle of radius `r_ref`.
pub fn equator_crossings(
    circle: &FittedCircle,
    r_ref: f64,
) -> Result<EquatorCrossings, GeometryError> {
    let (p1, p2, tangent) =
        match circle_intersection(Vec2::zeros(), r_ref, circle.center(), circle.radius) {
            CircleIntersection::Two(a, b) => (a, b, false),
            CircleIntersection::Tangent(p) => (p, p, true),
            CircleIntersection::None => return Err(GeometryError::NoIntersection),
            CircleIntersection::Coincident => return Err(GeometryError::Coincident),
        };
    Ok(EquatorCrossings {
        p1,
        p2,
        antipodality_defect: (p1 + p2).norm(),
        tangent,
    })
}

/// `|angle between circle and the origin circle of radius r_tilde - pi/2|`
/// at their intersection.
pub fn boundary_angle_defect(circle: &FittedCircle, r_tilde: f64) -> Result<f64, GeometryError> {
    let points = match circle_intersection(Vec2::zeros(), r_tilde, circle.center(), circle.radius) {
        CircleIntersection::Two(a, b) => vec![a, b],
        CircleIntersection::Tangent(p) => vec![p],
        CircleIntersection::None => return Err(GeometryError::NoIntersection),
        CircleIntersection::Coincident => return Err(GeometryError::Coincident),
    };
    let c = circle.center();
    Ok(points
        .iter()
        .map(|p| {
            let n1 = p / r_tilde;
            let n2 = (p - c) / circle.radius;
            let angle = n1.dot(&n2).clamp(-1.0, 1.0).acos();
            (angle - std::f64::consts::FRAC_PI_2).abs()
        })
        .fold(0.0, f64::max))
}

/// Distance between the position at the first sample and one `period` later.
pub fn closure_defect(traj: &Trajectory, period: f64) -> Result<f64, GeometryError> {
    let start = traj.start_time().ok_or(GeometryError::InsufficientSpan {
        span: 0.0,
        needed: period,
    })?;
    closure_defect_from(traj, start, period)
}

/// Closure defect starting from time `start` within the trajectory.
pub fn closure_defect_from(
    traj: &Trajectory,
    start: f64,
    period: f64,
) -> Result<f64, GeometryError> {
    if !(period > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "period must be positive, got {period}"
        )));
    }
    let (t0, t1) = match (traj.start_time(), traj.end_time()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(GeometryError::InsufficientSpan {
                span: 0.0,
                needed: period,
            })
        }
    };
    // allow the end to fall short by rounding in the sample grid
    let slack = 1e-12 * t1.abs().max(period);
    let mut end = start + period;
    if start < t0 || end > t1 + slack {
        return Err(GeometryError::InsufficientSpan {
            span: t1 - start,
            needed: period,
        });
    }
    end = end.min(t1);
    let a = traj
        .position_at(start)
        .map_err(|e| GeometryError::InvalidParameter(e.to_string()))?;
    let b = traj
        .position_at(end)
        .map_err(|e| GeometryError::InvalidParameter(e.to_string()))?;
    Ok((a - b).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn circle_points(c: Vec2, r: f64, n: usize, from: f64, to: f64) -> Vec<Vec2> {
        (0..n)
            .map(|k| {
                let t = from + (to - from) * k as f64 / n as f64;
                c + Vec2::new(t.cos(), t.sin()) * r
            })
            .collect()
    }

    #[test]
    fn exact_circle_fit() {
        let pts = circle_points(Vec2::new(1.0, 0.0), 2.0, 64, 0.0, TAU);
        let f = fit_circle(&pts).unwrap();
        assert!((f.cx - 1.0).abs() < 1e-13 && f.cy.abs() < 1e-13);
        assert!((f.radius - 2.0).abs() < 1e-13);
        assert!(f.rms_residual < 1e-13);
    }

    #[test]
    fn three_point_circumcircle() {
        let f = fit_circle(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ])
        .unwrap();
        assert!((f.cx - 1.0).abs() < 1e-14 && f.cy.abs() < 1e-14);
        // every point is at distance 1 from (1, 0)
        assert!((f.radius - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fit_errors() {
        let line: Vec<Vec2> = (0..10)
            .map(|k| Vec2::new(k as f64, 2.0 * k as f64 + 1.0))
            .collect();
        assert_eq!(fit_circle(&line), Err(GeometryError::Collinear));
        assert_eq!(
            fit_circle(&[Vec2::zeros(), Vec2::new(1.0, 0.0)]),
            Err(GeometryError::InsufficientPoints(2))
        );
    }

    #[test]
    fn short_noisy_arc_is_refined() {
        // deterministic perturbation on a 40 degree arc
        let mut pts = circle_points(Vec2::new(-3.0, 5.0), 7.0, 200, 0.2, 0.9);
        for (k, p) in pts.iter_mut().enumerate() {
            let e = 1e-4 * ((k as f64) * 1.7).sin();
            let dir = (*p - Vec2::new(-3.0, 5.0)).normalize();
            *p += dir * e;
        }
        let f = fit_circle(&pts).unwrap();
        assert!((f.center() - Vec2::new(-3.0, 5.0)).norm() < 1e-2);
        assert!(f.rms_residual < 1e-4);
    }

    #[test]
    fn equator_crossings_examples() {
        let c = FittedCircle::exact(Vec2::new(1.0, 0.0), 2.0);
        let x = equator_crossings(&c, 3f64.sqrt()).unwrap();
        assert!((x.p1 - Vec2::new(0.0, 3f64.sqrt())).norm() < 1e-15);
        assert!((x.p2 - Vec2::new(0.0, -(3f64.sqrt()))).norm() < 1e-15);
        assert!(x.antipodality_defect < 1e-15);
        let same = FittedCircle::exact(Vec2::zeros(), 1.5);
        assert_eq!(
            equator_crossings(&same, 1.5),
            Err(GeometryError::Coincident)
        );
        let far = FittedCircle::exact(Vec2::new(10.0, 0.0), 1.0);
        assert_eq!(
            equator_crossings(&far, 1.0),
            Err(GeometryError::NoIntersection)
        );
        let touching = FittedCircle::exact(Vec2::new(3.0, 0.0), 2.0);
        assert!(equator_crossings(&touching, 1.0).unwrap().tangent);
    }

    #[test]
    fn rotation_invariance() {
        let c = FittedCircle::exact(Vec2::new(0.7, -0.2), 1.3);
        let d0 = equator_crossings(&c, 1.0).unwrap().antipodality_defect;
        let a0 = boundary_angle_defect(&c, 1.0).unwrap();
        for ang in [0.5, 2.0, -1.1] {
            let (s, co) = f64::sin_cos(ang);
            let rc = FittedCircle::exact(Vec2::new(co * 0.7 + s * 0.2, s * 0.7 - co * 0.2), 1.3);
            assert!((equator_crossings(&rc, 1.0).unwrap().antipodality_defect - d0).abs() < 1e-14);
            assert!((boundary_angle_defect(&rc, 1.0).unwrap() - a0).abs() < 1e-14);
        }
    }

    #[test]
    fn boundary_angle_examples() {
        let c = FittedCircle::exact(Vec2::new(2.0, 0.0), 3f64.sqrt());
        assert!(boundary_angle_defect(&c, 1.0).unwrap() < 1e-15);
        match circle_intersection(Vec2::zeros(), 1.0, c.center(), c.radius) {
            CircleIntersection::Two(a, b) => {
                assert!((a - Vec2::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
                assert!((b - Vec2::new(0.5, -(3f64.sqrt()) / 2.0)).norm() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let disjoint = FittedCircle::exact(Vec2::new(3.0, 0.0), 1.0);
        assert_eq!(
            boundary_angle_defect(&disjoint, 1.0),
            Err(GeometryError::NoIntersection)
        );
        // not orthogonal
        let oblique = FittedCircle::exact(Vec2::new(1.0, 0.0), 1.0);
        assert!((boundary_angle_defect(&oblique, 1.0).unwrap() - PI / 6.0).abs() < 1e-14);
    }
}
