//! View-parametric orthogonal projection of a graph surface.
//!
//! A view direction is the unit vector
//! v = (sin θ cos φ, sin θ sin φ, cos θ).
//! The frame rotation G = R_y(π − θ) · R_z(−φ) carries v to (0, 0, −1), and
//! the projection of the surface point (x, y, g(x, y)) onto the screen plane
//! is the first two components of G · (x, y, g)ᵗ:
//!
//! ```text
//! Φ(x, y) = ( g sin θ − x cos θ cos φ − y cos θ sin φ ,  y cos φ − x sin φ )
//! ```
//!
//! Writing P = −cos θ cos φ + g_x sin θ and Q = −cos θ sin φ + g_y sin θ, the
//! partials of Φ have the closed forms
//!
//! ```text
//! Φ_x = (P, −sin φ)      Φ_xx = (g_xx sin θ, 0)
//! Φ_y = (Q,  cos φ)      Φ_xy = (g_xy sin θ, 0)    Φ_yy = (g_yy sin θ, 0)
//! ```
//!
//! Φ, restricted to one frozen coordinate, is a plane curve; regularity with
//! respect to x (resp. y) at a point means Φ_x ≠ 0 (resp. Φ_y ≠ 0), i.e.
//! sin φ ≠ 0 or P ≠ 0 (resp. cos φ ≠ 0 or Q ≠ 0).

use serde::Serialize;

use crate::expr::EvalError;
use crate::linalg::{Mat3, Vec2, Vec3};
use crate::surface::{Jet2, Surface};

/// Default threshold below which a curve-family first derivative is not
/// treated as safely nonzero.
pub const DEFAULT_EPS_REGULAR: f64 = 1e-9;

/// Components at or below this magnitude count as zero to machine precision
/// when classifying regularity.
const NEAR_ZERO: f64 = 4.0 * f64::EPSILON;

/// Viewing direction given by polar angle `theta` (from the +z axis) and
/// azimuth `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViewDirection {
    pub theta: f64,
    pub phi: f64,
}

impl ViewDirection {
    pub fn new(theta: f64, phi: f64) -> ViewDirection {
        ViewDirection { theta, phi }
    }

    /// The unit vector (sin θ cos φ, sin θ sin φ, cos θ).
    pub fn unit_vector(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Rotation about the y axis by `angle`.
fn rot_y(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
}

/// Rotation about the z axis by `angle`.
fn rot_z(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// The frame rotation G = R_y(π − θ) · R_z(−φ), an element of SO(3) mapping
/// the view direction to (0, 0, −1).
pub fn view_rotation(theta: f64, phi: f64) -> Mat3 {
    rot_y(std::f64::consts::PI - theta).mul(&rot_z(-phi))
}

/// Value and partials of the projected map Φ at one point, together with the
/// slope terms P and Q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionJet {
    pub value: Vec2,
    pub dx: Vec2,
    pub dy: Vec2,
    pub dxx: Vec2,
    pub dxy: Vec2,
    pub dyy: Vec2,
    /// P = −cos θ cos φ + g_x sin θ
    pub p: f64,
    /// Q = −cos θ sin φ + g_y sin θ
    pub q: f64,
}

/// Assembles the projection jet from an already-evaluated surface jet at the
/// point `(x, y)`.
pub fn projection_jet_from(j: &Jet2, view: &ViewDirection, x: f64, y: f64) -> ProjectionJet {
    let (st, ct) = view.theta.sin_cos();
    let (sp, cp) = view.phi.sin_cos();
    let p = -ct * cp + j.gx * st;
    let q = -ct * sp + j.gy * st;
    ProjectionJet {
        value: [j.g * st - x * ct * cp - y * ct * sp, y * cp - x * sp],
        dx: [p, -sp],
        dy: [q, cp],
        dxx: [j.gxx * st, 0.0],
        dxy: [j.gxy * st, 0.0],
        dyy: [j.gyy * st, 0.0],
        p,
        q,
    }
}

/// Evaluates the surface jet at `(x, y)` and assembles the projection jet.
pub fn projection_jet(
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
) -> Result<ProjectionJet, EvalError> {
    let j = s.jet2(x, y)?;
    Ok(projection_jet_from(&j, view, x, y))
}

/// Projected screen position of the surface point over `(x, y)` (value only).
pub fn projection_value(
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
) -> Result<Vec2, EvalError> {
    let g = s.eval(x, y)?;
    let (st, ct) = view.theta.sin_cos();
    let (sp, cp) = view.phi.sin_cos();
    Ok([g * st - x * ct * cp - y * ct * sp, y * cp - x * sp])
}

/// Pointwise regularity verdict for one family of projected curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    /// The first derivative is nonzero with margin: max(|a|, |b|) > eps.
    Regular,
    /// Below the margin but not zero to machine precision.
    Marginal,
    /// Both components vanish to machine precision.
    Singular,
}

fn classify(a: f64, b: f64, eps: f64) -> Regularity {
    let m = a.abs().max(b.abs());
    if m > eps {
        Regularity::Regular
    } else if m <= NEAR_ZERO {
        Regularity::Singular
    } else {
        Regularity::Marginal
    }
}

/// Regularity of the x-family at this jet: Φ_x = (P, −sin φ).
pub fn regularity_x(pj: &ProjectionJet, phi: f64, eps: f64) -> Regularity {
    classify(pj.p, phi.sin(), eps)
}

/// Regularity of the y-family at this jet: Φ_y = (Q, cos φ).
pub fn regularity_y(pj: &ProjectionJet, phi: f64, eps: f64) -> Regularity {
    classify(pj.q, phi.cos(), eps)
}
