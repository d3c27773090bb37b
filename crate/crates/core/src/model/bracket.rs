//! Canonical Poisson brackets over a closed set of observables.

use std::fmt;

use super::{
    angular_momentum, hamiltonian, invariant_vector, virial_q, ModelError, PhaseState,
    PotentialParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    H,
    Lz,
    Q,
    Ix,
    Iy,
    Iz,
}

impl Observable {
    pub const ALL: [Observable; 6] = [
        Observable::H,
        Observable::Lz,
        Observable::Q,
        Observable::Ix,
        Observable::Iy,
        Observable::Iz,
    ];

    pub fn value(self, params: &PotentialParams, s: &PhaseState) -> Result<f64, ModelError> {
        match self {
            Observable::H => hamiltonian(params, s),
            Observable::Lz => {
                params.check_state(s)?;
                Ok(angular_momentum(s))
            }
            Observable::Q => {
                params.check_state(s)?;
                Ok(virial_q(s))
            }
            Observable::Ix => Ok(invariant_vector(params, s)?.ix),
            Observable::Iy => Ok(invariant_vector(params, s)?.iy),
            Observable::Iz => {
                params.sphere_radius()?;
                Ok(invariant_vector(params, s)?.iz)
            }
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Observable::H => "H",
            Observable::Lz => "Lz",
            Observable::Q => "Q",
            Observable::Ix => "Ix",
            Observable::Iy => "Iy",
            Observable::Iz => "Iz",
        };
        f.write_str(name)
    }
}

fn add(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn scale(k: f64, a: [f64; 4]) -> [f64; 4] {
    a.map(|v| k * v)
}

/// Closed-form phase-space gradient `(d/dx, d/dy, d/dpx, d/dpy)`.
pub fn gradient(
    obs: Observable,
    params: &PotentialParams,
    s: &PhaseState,
) -> Result<[f64; 4], ModelError> {
    params.check_state(s)?;
    let grad_lz = [s.py, -s.px, -s.y, s.x];
    let grad_q = [s.px, s.py, s.x, s.y];
    match obs {
        Observable::H => {
            let sh = params.shifted_r2(s.r2())?;
            // dV/dx = 4 alpha x / (r^2 + sigma)^3
            let k = 4.0 * params.alpha / (sh * sh * sh);
            Ok([k * s.x, k * s.y, s.px / params.mass, s.py / params.mass])
        }
        Observable::Lz => Ok(grad_lz),
        Observable::Q => Ok(grad_q),
        Observable::Ix | Observable::Iy | Observable::Iz => {
            let rs = params.sphere_radius()?;
            let lz = angular_momentum(s);
            let q = virial_q(s);
            let k = -0.5 / rs;
            match obs {
                // Ix = k (x Lz - y Q - sigma py)
                Observable::Ix => {
                    let g = add(
                        add([lz, -q, 0.0, -params.sigma], scale(s.x, grad_lz)),
                        scale(-s.y, grad_q),
                    );
                    Ok(scale(k, g))
                }
                // Iy = k (y Lz + x Q + sigma px)
                Observable::Iy => {
                    let g = add(
                        add([q, lz, params.sigma, 0.0], scale(s.y, grad_lz)),
                        scale(s.x, grad_q),
                    );
                    Ok(scale(k, g))
                }
                _ => Ok(grad_lz),
            }
        }
    }
}

/// `{A, B} = dA/dr . dB/dp - dA/dp . dB/dr`, from closed-form partials.
pub fn poisson_bracket(
    a: Observable,
    b: Observable,
    params: &PotentialParams,
    s: &PhaseState,
) -> Result<f64, ModelError> {
    let ga = gradient(a, params, s)?;
    let gb = gradient(b, params, s)?;
    Ok(ga[0] * gb[2] + ga[1] * gb[3] - ga[2] * gb[0] - ga[3] * gb[1])
}

/// The same bracket from central differences of observable values.
///
/// Verification oracle only: it shares nothing with [`gradient`]. The step
/// is `eps^(1/3)` scaled by each coordinate's magnitude.
pub fn central_difference_bracket(
    a: Observable,
    b: Observable,
    params: &PotentialParams,
    s: &PhaseState,
) -> Result<f64, ModelError> {
    let base = s.as_array();
    let h0 = f64::EPSILON.cbrt();
    let partials = |obs: Observable| -> Result<[f64; 4], ModelError> {
        let mut g = [0.0; 4];
        for (i, gi) in g.iter_mut().enumerate() {
            let h = h0 * base[i].abs().max(1.0);
            let mut plus = base;
            let mut minus = base;
            plus[i] += h;
            minus[i] -= h;
            let fp = obs.value(params, &PhaseState::from_array(plus, s.t))?;
            let fm = obs.value(params, &PhaseState::from_array(minus, s.t))?;
            *gi = (fp - fm) / (plus[i] - minus[i]);
        }
        Ok(g)
    };
    let ga = partials(a)?;
    let gb = partials(b)?;
    Ok(ga[0] * gb[2] + ga[1] * gb[3] - ga[2] * gb[0] - ga[3] * gb[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng) -> PhaseState {
        PhaseState::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            0.0,
        )
    }

    #[test]
    fn closed_form_gradients_match_differences() {
        let p = PotentialParams::new(1.3, 0.7, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_state(&mut rng);
            for obs in Observable::ALL {
                let g = gradient(obs, &p, &s).unwrap();
                let base = s.as_array();
                for i in 0..4 {
                    let h = 1e-6;
                    let mut up = base;
                    let mut dn = base;
                    up[i] += h;
                    dn[i] -= h;
                    let fd = (obs.value(&p, &PhaseState::from_array(up, 0.0)).unwrap()
                        - obs.value(&p, &PhaseState::from_array(dn, 0.0)).unwrap())
                        / (2.0 * h);
                    assert!((fd - g[i]).abs() < 1e-7, "{obs} d{i}: {fd} vs {}", g[i]);
                }
            }
        }
    }

    #[test]
    fn lz_commutes_with_h() {
        let p = PotentialParams::new(1.0, 1.0, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let s = random_state(&mut rng);
            assert!(
                poisson_bracket(Observable::Lz, Observable::H, &p, &s)
                    .unwrap()
                    .abs()
                    < 1e-14
            );
        }
    }

    #[test]
    fn i_xy_bracket_with_h_is_proportional_to_energy() {
        let p = PotentialParams::new(1.0, 1.0, 3.0).unwrap();
        let rs = 3f64.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let s = random_state(&mut rng);
            let h = hamiltonian(&p, &s).unwrap();
            let bx = poisson_bracket(Observable::Ix, Observable::H, &p, &s).unwrap();
            let by = poisson_bracket(Observable::Iy, Observable::H, &p, &s).unwrap();
            assert!((bx + (2.0 / rs) * (-s.y) * h).abs() < 1e-13);
            assert!((by + (2.0 / rs) * s.x * h).abs() < 1e-13);
            let ox = central_difference_bracket(Observable::Ix, Observable::H, &p, &s).unwrap();
            assert!((ox + (2.0 / rs) * (-s.y) * h).abs() < 1e-6);
        }
    }

    #[test]
    fn invariant_brackets_need_positive_sigma() {
        let p = PotentialParams::new(1.0, 1.0, -1.0).unwrap();
        let s = PhaseState::new(0.2, 0.1, 0.3, 0.0, 0.0);
        assert!(matches!(
            poisson_bracket(Observable::Ix, Observable::Iy, &p, &s),
            Err(ModelError::Domain(_))
        ));
        assert!(matches!(
            Observable::Iz.value(&p, &s),
            Err(ModelError::Domain(_))
        ));
        assert!(poisson_bracket(Observable::Lz, Observable::H, &p, &s).is_ok());
    }

    #[test]
    fn bracket_antisymmetric() {
        let p = PotentialParams::new(1.0, 1.0, 3.0).unwrap();
        let s = PhaseState::new(0.4, -1.2, 0.3, 0.9, 0.0);
        for a in Observable::ALL {
            for b in Observable::ALL {
                let ab = poisson_bracket(a, b, &p, &s).unwrap();
                let ba = poisson_bracket(b, a, &p, &s).unwrap();
                assert!((ab + ba).abs() < 1e-15);
            }
        }
    }
}
