//! Off-center circular orbits of the potential `V(r) = -alpha / (r^2 + sigma)^2`.
//!
//! * [`model`]: potential family, Newton's on-orbit force, conserved quantities
//!   and Poisson brackets.
//! * [`trajectory`]: exact zero-energy trajectories and an adaptive
//!   Dormand-Prince integrator.
//! * [`duality`]: Maupertuis-Jacobi action, circle inversion and the
//!   stereographic projection pair.
//! * [`geometry`]: circle fitting, equator crossings, right-angle and
//!   closure checks.
//! * [`scenario`]: JSON scenario configs, the acceptance checks, CSV and SVG
//!   output.

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod duality;
pub mod geometry;
pub mod model;
pub mod scenario;
pub mod trajectory;
