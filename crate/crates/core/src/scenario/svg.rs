//! SVG 1.1 figures. World coordinates have the y-axis up and one scale
//! for both axes; numbers are printed with three decimals.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;

use crate::duality::{stereographic_project, SpherePoint};
use crate::geometry::{fit_circle, FittedCircle};
use crate::model::{chord_at, OrbitSpec, PotentialParams, Sense, Vec2};
use crate::trajectory::{AnalyticTrajectory, TrajectoryError};

use super::{disk_arc, ScenarioError};

const WIDTH: f64 = 480.0;
const PAD: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Figure {
    /// One orbit with its center, offset, radius and the chord through the
    /// force center at orbit angle `theta`.
    Geometry { spec: OrbitSpec, theta: f64 },
    /// Orbit circles, the dashed reference circle of radius `sqrt(sigma)`
    /// and the dotted diameter through the orbits' common crossings.
    Orbits {
        orbits: Vec<FittedCircle>,
        reference_radius: f64,
        diameter: (Vec2, Vec2),
    },
    /// Side view of the sphere of radius `r_sphere` over its equatorial
    /// plane, with projection rays from the north pole through sphere
    /// points at the given polar angles.
    Stereographic {
        r_sphere: f64,
        polar_angles: Vec<f64>,
    },
    /// Orbit circles and the dashed boundary of the disk.
    Disk {
        orbits: Vec<FittedCircle>,
        boundary_radius: f64,
    },
}

impl Figure {
    pub fn file_name(&self) -> &'static str {
        match self {
            Figure::Geometry { .. } => "fig1_geometry.svg",
            Figure::Orbits { .. } => "fig2_orbits.svg",
            Figure::Stereographic { .. } => "fig3_stereographic.svg",
            Figure::Disk { .. } => "fig4_disk.svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stroke {
    Solid,
    Dashed,
    Dotted,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Circle {
        c: Vec2,
        r: f64,
        class: &'static str,
        stroke: Stroke,
    },
    Line {
        a: Vec2,
        b: Vec2,
        class: &'static str,
        stroke: Stroke,
    },
    Point {
        p: Vec2,
        class: &'static str,
    },
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn dash(stroke: Stroke) -> &'static str {
    match stroke {
        Stroke::Solid => "",
        Stroke::Dashed => " stroke-dasharray=\"6 4\"",
        Stroke::Dotted => " stroke-dasharray=\"1 3\"",
    }
}

fn render(title: &str, shapes: &[Shape]) -> Result<String, ScenarioError> {
    let (mut lo, mut hi) = (Vec2::repeat(f64::INFINITY), Vec2::repeat(f64::NEG_INFINITY));
    let mut grow = |p: Vec2| {
        lo = lo.inf(&p);
        hi = hi.sup(&p);
    };
    for s in shapes {
        match s {
            Shape::Circle { c, r, .. } => {
                grow(c - Vec2::repeat(*r));
                grow(c + Vec2::repeat(*r));
            }
            Shape::Line { a, b, .. } => {
                grow(*a);
                grow(*b);
            }
            Shape::Point { p, .. } => grow(*p),
        }
    }
    let span = (hi - lo).max();
    if !(span.is_finite() && span > 0.0) {
        return Err(ScenarioError::Figure(format!(
            "{title}: degenerate or non-finite extent"
        )));
    }
    let scale = (WIDTH - 2.0 * PAD) / span;
    let width = (hi.x - lo.x) * scale + 2.0 * PAD;
    let height = (hi.y - lo.y) * scale + 2.0 * PAD;
    let map = |p: &Vec2| ((p.x - lo.x) * scale + PAD, (hi.y - p.y) * scale + PAD);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(width),
        h = num(height)
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for s in shapes {
        match s {
            Shape::Circle {
                c,
                r,
                class,
                stroke,
            } => {
                let (x, y) = map(c);
                writeln!(
                    out,
                    "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"{}/>",
                    num(x),
                    num(y),
                    num(r * scale),
                    dash(*stroke)
                )
                .unwrap();
            }
            Shape::Line {
                a,
                b,
                class,
                stroke,
            } => {
                let (x1, y1) = map(a);
                let (x2, y2) = map(b);
                writeln!(
                    out,
                    "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"{}/>",
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2),
                    dash(*stroke)
                )
                .unwrap();
            }
            Shape::Point { p, class } => {
                let (x, y) = map(p);
                // a cross, so circle and line elements are only the drawn geometry
                writeln!(
                    out,
                    "<path class=\"{class}\" d=\"M {} {} H {} M {} {} V {}\" stroke=\"black\" stroke-width=\"1.5\"/>",
                    num(x - 4.0),
                    num(y),
                    num(x + 4.0),
                    num(x),
                    num(y - 4.0),
                    num(y + 4.0)
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn check_circles(kind: &str, orbits: &[FittedCircle]) -> Result<(), ScenarioError> {
    if orbits.is_empty() {
        return Err(ScenarioError::Figure(format!("{kind}: empty orbit list")));
    }
    if orbits
        .iter()
        .any(|c| !(c.radius > 0.0 && c.cx.is_finite() && c.cy.is_finite()))
    {
        return Err(ScenarioError::Figure(format!(
            "{kind}: invalid orbit circle"
        )));
    }
    Ok(())
}

/// Renders a figure. Identical input gives identical bytes.
pub fn emit_figure(fig: &Figure) -> Result<String, ScenarioError> {
    let mut shapes = Vec::new();
    let origin = Vec2::zeros();
    let title = match fig {
        Figure::Geometry { spec, theta } => {
            let p = spec.point_at(*theta);
            let chord = chord_at(spec, *theta).map_err(|e| ScenarioError::Figure(e.to_string()))?;
            let r = p.norm();
            if r == 0.0 {
                return Err(ScenarioError::Figure("particle at the force center".into()));
            }
            let q = p * ((r - chord) / r);
            shapes.push(Shape::Circle {
                c: spec.center(),
                r: spec.radius,
                class: "orbit",
                stroke: Stroke::Solid,
            });
            shapes.push(Shape::Line {
                a: origin,
                b: spec.center(),
                class: "offset",
                stroke: Stroke::Dashed,
            });
            shapes.push(Shape::Line {
                a: spec.center(),
                b: p,
                class: "radius",
                stroke: Stroke::Solid,
            });
            shapes.push(Shape::Line {
                a: p,
                b: q,
                class: "chord",
                stroke: Stroke::Dotted,
            });
            shapes.push(Shape::Point {
                p: origin,
                class: "force-center",
            });
            shapes.push(Shape::Point {
                p: spec.center(),
                class: "orbit-center",
            });
            shapes.push(Shape::Point {
                p,
                class: "particle",
            });
            "Off-center circular orbit"
        }
        Figure::Orbits {
            orbits,
            reference_radius,
            diameter,
        } => {
            check_circles("orbits figure", orbits)?;
            for c in orbits {
                shapes.push(Shape::Circle {
                    c: c.center(),
                    r: c.radius,
                    class: "orbit",
                    stroke: Stroke::Solid,
                });
            }
            shapes.push(Shape::Circle {
                c: origin,
                r: *reference_radius,
                class: "reference",
                stroke: Stroke::Dashed,
            });
            shapes.push(Shape::Line {
                a: diameter.0,
                b: diameter.1,
                class: "diameter",
                stroke: Stroke::Dotted,
            });
            shapes.push(Shape::Point {
                p: origin,
                class: "force-center",
            });
            "Zero-energy orbits sharing an orientation"
        }
        Figure::Stereographic {
            r_sphere,
            polar_angles,
        } => {
            if polar_angles.is_empty() {
                return Err(ScenarioError::Figure(
                    "stereographic figure: no sphere points".into(),
                ));
            }
            let rs = *r_sphere;
            let north = Vec2::new(0.0, rs);
            shapes.push(Shape::Circle {
                c: origin,
                r: rs,
                class: "sphere",
                stroke: Stroke::Solid,
            });
            let mut rays = Vec::new();
            let mut reach = rs;
            for &psi in polar_angles {
                let s = SpherePoint::new(psi.sin(), 0.0, psi.cos())
                    .map_err(|e| ScenarioError::Figure(e.to_string()))?;
                let x = stereographic_project(rs, &s)
                    .map_err(|e| ScenarioError::Figure(e.to_string()))?
                    .x;
                reach = reach.max(x.abs());
                rays.push((Vec2::new(rs * s.sx(), rs * s.sz()), Vec2::new(x, 0.0)));
            }
            let plane = 1.1 * reach;
            shapes.push(Shape::Line {
                a: Vec2::new(-plane, 0.0),
                b: Vec2::new(plane, 0.0),
                class: "plane",
                stroke: Stroke::Solid,
            });
            shapes.push(Shape::Point {
                p: north,
                class: "north-pole",
            });
            for (on_sphere, image) in rays {
                // below the plane the sphere point lies beyond its image
                let end = if on_sphere.y < 0.0 { on_sphere } else { image };
                shapes.push(Shape::Line {
                    a: north,
                    b: end,
                    class: "ray",
                    stroke: Stroke::Dotted,
                });
                shapes.push(Shape::Point {
                    p: on_sphere,
                    class: "sphere-point",
                });
                shapes.push(Shape::Point {
                    p: image,
                    class: "image-point",
                });
            }
            "Stereographic projection from the north pole"
        }
        Figure::Disk {
            orbits,
            boundary_radius,
        } => {
            check_circles("disk figure", orbits)?;
            for c in orbits {
                shapes.push(Shape::Circle {
                    c: c.center(),
                    r: c.radius,
                    class: "orbit",
                    stroke: Stroke::Solid,
                });
            }
            shapes.push(Shape::Circle {
                c: origin,
                r: *boundary_radius,
                class: "boundary",
                stroke: Stroke::Dashed,
            });
            shapes.push(Shape::Point {
                p: origin,
                class: "force-center",
            });
            "Zero-energy orbits meeting the disk boundary"
        }
    };
    render(title, &shapes)
}

/// Figure 1 preset: `R = 2`, `l = 1`, chord drawn at `theta = 2.2`.
pub fn geometry_preset() -> Figure {
    Figure::Geometry {
        spec: OrbitSpec::new(2.0, 1.0, 0.0, Sense::CounterClockwise).expect("valid preset"),
        theta: 2.2,
    }
}

/// Figure 2 preset: three orbits with `l / sqrt(sigma)` in {0.25, 0.75, 1.5}
/// sharing the direction `n_angle`, each fitted to a sampled analytic period.
pub fn orbits_preset(params: &PotentialParams, n_angle: f64) -> Result<Figure, ScenarioError> {
    let rs = params.sphere_radius().map_err(TrajectoryError::from)?;
    let mut orbits = Vec::new();
    for k in [0.25, 0.75, 1.5] {
        let spec = OrbitSpec::for_sigma(params.sigma, k * rs, n_angle, Sense::CounterClockwise)
            .map_err(TrajectoryError::from)?;
        let traj = AnalyticTrajectory::new(spec, params.alpha, params.mass, 0.0)?;
        let period = traj.period();
        let times: Vec<f64> = (0..256).map(|j| period * j as f64 / 256.0).collect();
        orbits.push(fit_circle(&traj.sample(&times)?.positions())?);
    }
    let perp = Vec2::new(-n_angle.sin(), n_angle.cos()) * rs;
    Ok(Figure::Orbits {
        orbits,
        reference_radius: rs,
        diameter: (-perp, perp),
    })
}

/// Figure 3 preset: sphere points at polar angles 60, 100, 140, 180, 220
/// and 280 degrees.
pub fn stereographic_preset(r_sphere: f64) -> Figure {
    Figure::Stereographic {
        r_sphere,
        polar_angles: [60.0f64, 100.0, 140.0, 180.0, 220.0, 280.0]
            .iter()
            .map(|d| d.to_radians())
            .collect(),
    }
}

/// Figure 4 preset: three orbits with `R / r_tilde` in {0.5, 1, sqrt(3)}
/// and directions a third of a turn apart, each fitted to its integrated
/// arc inside the disk.
pub fn disk_preset(params: &PotentialParams) -> Result<Figure, ScenarioError> {
    let r_tilde = params.disk_radius().map_err(TrajectoryError::from)?;
    let mut orbits = Vec::new();
    for (j, k) in [0.5, 1.0, 3f64.sqrt()].into_iter().enumerate() {
        let radius = k * r_tilde;
        let offset = (radius * radius + r_tilde * r_tilde).sqrt();
        let n = FRAC_PI_2 + TAU * j as f64 / 3.0;
        let spec = OrbitSpec::new(radius, offset, n, Sense::CounterClockwise)
            .map_err(TrajectoryError::from)?;
        let arc = disk_arc(params, &spec, 256)?;
        orbits.push(fit_circle(&arc)?);
    }
    Ok(Figure::Disk {
        orbits,
        boundary_radius: r_tilde,
    })
}
