//! Invariants of one-parameter families of plane curves.
//!
//! A smooth map f : U ⊂ R² → R², (u, v) ↦ f(u, v), is viewed as two families
//! of plane curves: freeze v and move along u (a u-curve), or the other way
//! round. For the family along a parameter a with first/second derivatives
//! f_a, f_aa:
//!
//! * family curvature   κ[f, a] = det(f_a f_aa) / ‖f_a‖³,
//!   where det(a b) = a₁b₂ − a₂b₁ on column vectors;
//! * squared velocity   SV[f, a] = ‖f_a‖²;
//! * its derivative     d/da SV[f, a] = 2 ⟨f_a, f_aa⟩.
//!
//! For the projected surface map Φ these reduce to closed forms in the
//! surface jet and the view angles (the `closed_form_*` functions below):
//!
//! ```text
//! κ[Φ, x] =  g_xx sin φ sin θ / (sin²φ + P²)^{3/2}
//! κ[Φ, y] = −g_yy cos φ sin θ / (cos²φ + Q²)^{3/2}
//! d/dx SV[Φ, x] = 2 g_xx sin θ P
//! d/dy SV[Φ, y] = 2 g_yy sin θ Q
//! ```

use serde::Serialize;

use crate::expr::EvalError;
use crate::linalg::{det2, dot2, norm_sq2, Vec2};
use crate::projection::{
    projection_jet, regularity_x, regularity_y, ProjectionJet, Regularity, ViewDirection,
    DEFAULT_EPS_REGULAR,
};
use crate::surface::{gaussian_curvature, Jet2, Surface};

/// Which parameter the family runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParam {
    U,
    V,
}

/// First and second derivatives of a planar map at one point. The value
/// itself is not stored: none of the invariants depend on it (translations
/// act on the value only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarMapJet {
    pub du: Vec2,
    pub dv: Vec2,
    pub duu: Vec2,
    pub duv: Vec2,
    pub dvv: Vec2,
}

impl From<&ProjectionJet> for PlanarMapJet {
    /// The projected surface map as a planar map, with u = x and v = y.
    fn from(pj: &ProjectionJet) -> PlanarMapJet {
        PlanarMapJet { du: pj.dx, dv: pj.dy, duu: pj.dxx, duv: pj.dxy, dvv: pj.dyy }
    }
}

impl PlanarMapJet {
    fn first(&self, along: FamilyParam) -> Vec2 {
        match along {
            FamilyParam::U => self.du,
            FamilyParam::V => self.dv,
        }
    }

    fn second(&self, along: FamilyParam) -> Vec2 {
        match along {
            FamilyParam::U => self.duu,
            FamilyParam::V => self.dvv,
        }
    }
}

/// The family's first derivative is too small for curvature to be reliable.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("curve family is not regular here: |f_a| = {norm:.3e} <= eps = {eps:.3e}")]
pub struct RegularityError {
    pub norm: f64,
    pub eps: f64,
}

/// Family curvature κ[f, a] = det(f_a f_aa) / ‖f_a‖³ with an explicit
/// regularity threshold on ‖f_a‖.
pub fn family_curvature_with_eps(
    j: &PlanarMapJet,
    along: FamilyParam,
    eps: f64,
) -> Result<f64, RegularityError> {
    let fa = j.first(along);
    let faa = j.second(along);
    let norm_sq = norm_sq2(fa);
    let norm = norm_sq.sqrt();
    if norm <= eps {
        return Err(RegularityError { norm, eps });
    }
    Ok(det2(fa, faa) / (norm_sq * norm))
}

/// [`family_curvature_with_eps`] at the default threshold
/// [`DEFAULT_EPS_REGULAR`].
pub fn family_curvature(j: &PlanarMapJet, along: FamilyParam) -> Result<f64, RegularityError> {
    family_curvature_with_eps(j, along, DEFAULT_EPS_REGULAR)
}

/// Squared velocity SV[f, a] = ‖f_a‖². Total: defined at singular points too.
pub fn squared_velocity(j: &PlanarMapJet, along: FamilyParam) -> f64 {
    norm_sq2(j.first(along))
}

/// d/da SV[f, a] = 2 ⟨f_a, f_aa⟩. Total.
pub fn sv_derivative(j: &PlanarMapJet, along: FamilyParam) -> f64 {
    2.0 * dot2(j.first(along), j.second(along))
}

fn pq(j: &Jet2, theta: f64, phi: f64) -> (f64, f64) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    (-ct * cp + j.gx * st, -ct * sp + j.gy * st)
}

/// Closed form of κ[Φ, y]: −g_yy cos φ sin θ / (cos²φ + Q²)^{3/2}.
/// Fails when the denominator base cos²φ + Q² is at most eps².
pub fn closed_form_kappa_y(j: &Jet2, theta: f64, phi: f64) -> Result<f64, RegularityError> {
    let (_, q) = pq(j, theta, phi);
    let cp = phi.cos();
    let base = cp * cp + q * q;
    let eps = DEFAULT_EPS_REGULAR;
    if base <= eps * eps {
        return Err(RegularityError { norm: base.sqrt(), eps });
    }
    Ok(-j.gyy * cp * theta.sin() / base.powf(1.5))
}

/// Closed form of κ[Φ, x]: g_xx sin φ sin θ / (sin²φ + P²)^{3/2}.
/// Fails when the denominator base sin²φ + P² is at most eps².
pub fn closed_form_kappa_x(j: &Jet2, theta: f64, phi: f64) -> Result<f64, RegularityError> {
    let (p, _) = pq(j, theta, phi);
    let sp = phi.sin();
    let base = sp * sp + p * p;
    let eps = DEFAULT_EPS_REGULAR;
    if base <= eps * eps {
        return Err(RegularityError { norm: base.sqrt(), eps });
    }
    Ok(j.gxx * sp * theta.sin() / base.powf(1.5))
}

/// Closed form of d/dx SV[Φ, x] = 2 g_xx sin θ P. Total.
pub fn closed_form_dsv_dx(j: &Jet2, theta: f64, phi: f64) -> f64 {
    let (p, _) = pq(j, theta, phi);
    2.0 * j.gxx * theta.sin() * p
}

/// Closed form of d/dy SV[Φ, y] = 2 g_yy sin θ Q. Total.
pub fn closed_form_dsv_dy(j: &Jet2, theta: f64, phi: f64) -> f64 {
    let (_, q) = pq(j, theta, phi);
    2.0 * j.gyy * theta.sin() * q
}

/// Everything the analyzer reports about one (surface, view, point)
/// configuration. Curvatures are present only at points where the
/// corresponding family is regular.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantSample {
    pub x: f64,
    pub y: f64,
    pub view: ViewDirection,
    pub p: f64,
    pub q: f64,
    /// Gaussian curvature of the surface at (x, y).
    pub k: f64,
    pub regular_x: Regularity,
    pub regular_y: Regularity,
    pub kappa_x: Option<f64>,
    pub kappa_y: Option<f64>,
    pub dsv_dx: f64,
    pub dsv_dy: f64,
}

/// Evaluates all pointwise invariants of the projected map via the generic
/// jet path. `eps_regular` controls the regularity verdicts (and therefore
/// which curvatures are reported).
pub fn invariant_sample(
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
    eps_regular: f64,
) -> Result<InvariantSample, EvalError> {
    let gjet = s.jet2(x, y)?;
    let pj = projection_jet(s, view, x, y)?;
    let planar = PlanarMapJet::from(&pj);
    let regular_x = regularity_x(&pj, view.phi, eps_regular);
    let regular_y = regularity_y(&pj, view.phi, eps_regular);
    // A regular verdict bounds max(|component|) > eps_regular >= 0, so the
    // curvature denominator is nonzero and `.ok()` only drops the value in
    // the underflow corner where the norm itself rounds to zero.
    let kappa_x = if regular_x == Regularity::Regular {
        family_curvature_with_eps(&planar, FamilyParam::U, 0.0).ok()
    } else {
        None
    };
    let kappa_y = if regular_y == Regularity::Regular {
        family_curvature_with_eps(&planar, FamilyParam::V, 0.0).ok()
    } else {
        None
    };
    Ok(InvariantSample {
        x,
        y,
        view: *view,
        p: pj.p,
        q: pj.q,
        k: gaussian_curvature(&gjet),
        regular_x,
        regular_y,
        kappa_x,
        kappa_y,
        dsv_dx: sv_derivative(&planar, FamilyParam::U),
        dsv_dy: sv_derivative(&planar, FamilyParam::V),
    })
}
