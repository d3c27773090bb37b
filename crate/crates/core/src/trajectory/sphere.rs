//! Free motion on the dual sphere and its pull-back to planar time.

use crate::duality::{sphere_dual_energy, stereographic_project, DualityError, SpherePoint};
use crate::model::{PotentialParams, Vec2};

use super::TrajectoryError;

fn check_frame(a: &SpherePoint, b: &SpherePoint) -> Result<(), DualityError> {
    let dot = a.vector().dot(&b.vector());
    if dot.abs() > 1e-12 {
        return Err(DualityError::DegenerateFrame(format!(
            "frame vectors not orthogonal, a.b = {dot:e}"
        )));
    }
    Ok(())
}

/// Great-circle motion `cos(w t') a + sin(w t') b` at speed `sqrt(2 E' / m)`
/// on a sphere of radius `r_sphere`.
pub fn sphere_free_motion(
    r_sphere: f64,
    ep: f64,
    mass: f64,
    a: &SpherePoint,
    b: &SpherePoint,
    tp: f64,
) -> Result<SpherePoint, DualityError> {
    check_frame(a, b)?;
    if !(ep > 0.0 && r_sphere > 0.0 && mass > 0.0) {
        return Err(DualityError::InvalidParameter(format!(
            "need E' > 0, radius > 0, mass > 0; got E' = {ep}, radius = {r_sphere}, mass = {mass}"
        )));
    }
    let omega = (2.0 * ep / mass).sqrt() / r_sphere;
    let (s, c) = (omega * tp).sin_cos();
    SpherePoint::normalized(a.vector() * c + b.vector() * s)
}

/// Planar position and momentum of the stereographic image of sphere free
/// motion, using the sphere energy `alpha / (4 sigma^2)` and the time rule
/// `dt' / dt = 4 sigma^2 / (r^2 + sigma)^2`.
pub fn sphere_state_in_plane(
    params: &PotentialParams,
    a: &SpherePoint,
    b: &SpherePoint,
    tp: f64,
) -> Result<(Vec2, Vec2), TrajectoryError> {
    let rs = params.sphere_radius()?;
    let ep = sphere_dual_energy(params.alpha, rs);
    let s = sphere_free_motion(rs, ep, params.mass, a, b, tp)?;
    let omega = (2.0 * ep / params.mass).sqrt() / rs;
    let (sn, cs) = (omega * tp).sin_cos();
    let ds = (b.vector() * cs - a.vector() * sn) * omega;
    let v = s.vector();
    let pos = stereographic_project(rs, &s)?;
    let den = 1.0 - v.z;
    let dpos_dtp = Vec2::new(
        rs * (ds.x * den + v.x * ds.z) / (den * den),
        rs * (ds.y * den + v.y * ds.z) / (den * den),
    );
    let shifted = pos.norm_squared() + params.sigma;
    let dtp_dt = 4.0 * params.sigma * params.sigma / (shifted * shifted);
    Ok((pos, dpos_dtp * (dtp_dt * params.mass)))
}

/// Replaces sphere times `t'` on a planar path with physical times `t`,
/// integrating `dt = (r^2 + sigma)^2 / (4 sigma^2) dt'` by cumulative
/// composite Simpson quadrature. The first sample keeps its time.
pub fn reparametrize_time(
    params: &PotentialParams,
    plane_path: &[(Vec2, f64)],
) -> Result<Vec<(Vec2, f64)>, TrajectoryError> {
    params.sphere_radius()?;
    if plane_path.windows(2).any(|w| !(w[1].1 > w[0].1)) {
        return Err(TrajectoryError::InvalidInput(
            "sphere times must be strictly increasing".into(),
        ));
    }
    let sigma = params.sigma;
    let rate: Vec<f64> = plane_path
        .iter()
        .map(|(p, _)| {
            let s = p.norm_squared() + sigma;
            s * s / (4.0 * sigma * sigma)
        })
        .collect();
    let tp: Vec<f64> = plane_path.iter().map(|(_, t)| *t).collect();
    let elapsed = cumulative_simpson(&tp, &rate);
    Ok(plane_path
        .iter()
        .zip(elapsed)
        .map(|((p, _), dt)| (*p, tp[0] + dt))
        .collect())
}

/// Running integral of `f` over possibly non-uniform nodes `x`.
///
/// Even nodes accumulate composite Simpson panels; odd nodes add the
/// quadratic through the panel over its first interval. A trailing odd
/// interval uses the quadratic through the last three nodes.
pub(crate) fn cumulative_simpson(x: &[f64], f: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * (f[0] + f[1]) * (x[1] - x[0]);
        return out;
    }
    // quadratic through (i, i+1, i+2): integrals over [x_i, x_{i+1}] and [x_i, x_{i+2}]
    let first = |i: usize| {
        let (h0, h1) = (x[i + 1] - x[i], x[i + 2] - x[i + 1]);
        h0 * (2.0 * h0 + 3.0 * h1) / (6.0 * (h0 + h1)) * f[i]
            + h0 * (h0 + 3.0 * h1) / (6.0 * h1) * f[i + 1]
            - h0.powi(3) / (6.0 * h1 * (h0 + h1)) * f[i + 2]
    };
    let panel = |i: usize| {
        let (h0, h1) = (x[i + 1] - x[i], x[i + 2] - x[i + 1]);
        (h0 + h1) * (2.0 * h0 - h1) / (6.0 * h0) * f[i]
            + (h0 + h1).powi(3) / (6.0 * h0 * h1) * f[i + 1]
            - (h0 - 2.0 * h1) * (h0 + h1) / (6.0 * h1) * f[i + 2]
    };
    let mut i = 0;
    while i + 2 < n {
        out[i + 1] = out[i] + first(i);
        out[i + 2] = out[i] + panel(i);
        i += 2;
    }
    if i + 1 < n {
        // last interval [x_{n-2}, x_{n-1}] of the quadratic through the last three nodes
        let j = n - 3;
        out[n - 1] = out[n - 2] + (panel(j) - first(j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::stereographic_lift;
    use std::f64::consts::FRAC_PI_2;

    fn frame() -> (SpherePoint, SpherePoint) {
        (
            SpherePoint::new(0.6, 0.0, 0.8).unwrap(),
            SpherePoint::new(0.0, 1.0, 0.0).unwrap(),
        )
    }

    #[test]
    fn free_motion_examples() {
        let (a, b) = frame();
        let (rs, ep, m) = (1.7, 0.3, 2.0f64);
        let omega = (2.0 * ep / m).sqrt() / rs;
        assert_eq!(sphere_free_motion(rs, ep, m, &a, &b, 0.0).unwrap(), a);
        let q = sphere_free_motion(rs, ep, m, &a, &b, FRAC_PI_2 / omega).unwrap();
        assert!((q.vector() - b.vector()).norm() < 1e-15);
        for k in 0..1000 {
            let s = sphere_free_motion(rs, ep, m, &a, &b, 0.037 * k as f64).unwrap();
            assert!((s.vector().norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn free_motion_rejects_bad_frame() {
        let a = SpherePoint::new(1.0, 0.0, 0.0).unwrap();
        let b = SpherePoint::new(0.6, 0.8, 0.0).unwrap();
        assert!(matches!(
            sphere_free_motion(1.0, 1.0, 1.0, &a, &b, 0.0),
            Err(DualityError::DegenerateFrame(_))
        ));
    }

    #[test]
    fn reparametrize_constant_radius_examples() {
        let p = PotentialParams::new(1.0, 1.0, 2.0).unwrap();
        let rs = 2f64.sqrt();
        let ring: Vec<(Vec2, f64)> = (0..11)
            .map(|k| {
                let a = 0.3 * k as f64;
                (Vec2::new(rs * a.cos(), rs * a.sin()), 0.1 * k as f64 + 1.0)
            })
            .collect();
        let out = reparametrize_time(&p, &ring).unwrap();
        for ((_, tp), (_, t)) in ring.iter().zip(&out) {
            assert!((tp - t).abs() < 1e-14);
        }
        let origin: Vec<(Vec2, f64)> = (0..8).map(|k| (Vec2::zeros(), 0.4 * k as f64)).collect();
        let out = reparametrize_time(&p, &origin).unwrap();
        assert!((out[7].1 - 0.25 * 2.8).abs() < 1e-14);
    }

    #[test]
    fn reparametrize_rejects_bad_input() {
        let p = PotentialParams::new(1.0, 1.0, 2.0).unwrap();
        let path = [(Vec2::zeros(), 1.0), (Vec2::zeros(), 1.0)];
        assert!(reparametrize_time(&p, &path).is_err());
        let q = PotentialParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(reparametrize_time(&q, &[(Vec2::zeros(), 0.0)]).is_err());
    }

    #[test]
    fn cumulative_simpson_is_exact_for_quadratics() {
        let x: Vec<f64> = (0..9).map(|k| (k as f64 * 0.25).powf(1.3)).collect();
        let f: Vec<f64> = x.iter().map(|t| t * t).collect();
        let out = cumulative_simpson(&x, &f);
        for (xi, oi) in x.iter().zip(&out) {
            assert!((oi - xi.powi(3) / 3.0).abs() < 1e-13);
        }
        let x: Vec<f64> = (0..8).map(|k| k as f64 * 0.5).collect();
        let f: Vec<f64> = x.iter().map(|t| 3.0 * t * t - t).collect();
        let out = cumulative_simpson(&x, &f);
        for (xi, oi) in x.iter().zip(&out) {
            assert!((oi - (xi.powi(3) - 0.5 * xi * xi)).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_state_lies_on_zero_energy_shell() {
        let p = PotentialParams::new(1.0, 1.0, 3.0).unwrap();
        let rs = 3f64.sqrt();
        let a = stereographic_lift(rs, &Vec2::new(3.0, 0.0));
        let b = SpherePoint::new(0.0, 1.0, 0.0).unwrap();
        for k in 0..50 {
            let (x, mom) = sphere_state_in_plane(&p, &a, &b, 0.7 * k as f64).unwrap();
            let s = crate::model::PhaseState::new(x.x, x.y, mom.x, mom.y, 0.0);
            assert!(crate::model::hamiltonian(&p, &s).unwrap().abs() < 1e-15);
        }
    }
}
