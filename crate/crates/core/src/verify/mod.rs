//! Numerical verification of the product laws tying curve-family invariants
//! of the projected map to the surface jet.
//!
//! Four product identities are checked (names used throughout, with P, Q and
//! the denominator bases as in [`crate::projection`]):
//!
//! ```text
//! kappa_y_dsv_dx : κ[Φ,y] · d/dx SV[Φ,x] = −2 g_xx g_yy P cos φ sin²θ / (cos²φ + Q²)^{3/2}
//! kappa_x_dsv_dy : κ[Φ,x] · d/dy SV[Φ,y] =  2 g_xx g_yy Q sin φ sin²θ / (sin²φ + P²)^{3/2}
//! kappa_product  : κ[Φ,x] · κ[Φ,y] = −g_xx g_yy sin φ cos φ sin²θ / ((sin²φ+P²)(cos²φ+Q²))^{3/2}
//! sv_product     : d/dx SV[Φ,x] · d/dy SV[Φ,y] = 4 g_xx g_yy P Q sin²θ
//! ```
//!
//! The left sides are always evaluated through the generic curve-family
//! operations on a [`ProjectionJet`] (either the closed-form jet or the
//! finite-difference jet of [`fd_projection_jet`]); the right sides come
//! straight from the surface jet and the view angles. Sign corollaries of the
//! same laws, and their specializations at a critical point of g, are checked
//! as product-of-signs identities with an epsilon deadband.

mod suite;

pub use suite::{run_suite, SuiteConfig, VerificationReport};
pub use suite::{FailureRecord, LemmaStats, SignLawStats, TheoremStats, ToleranceConfig};

use serde::Serialize;

use crate::expr::EvalError;
use crate::invariants::{
    family_curvature_with_eps, sv_derivative, FamilyParam, PlanarMapJet,
};
use crate::linalg::Vec2;
use crate::projection::{
    projection_jet_from, projection_value, regularity_x, regularity_y, ProjectionJet,
    Regularity, ViewDirection,
};
use crate::surface::{gaussian_curvature, Jet2, Surface};

/// Default deadband for sign classification and hypothesis margins.
pub const DEFAULT_EPS_SIGN: f64 = 1e-9;

/// Default step for finite-difference jets.
///
/// Second central differences have a roundoff floor of roughly
/// eps_machine · |Φ| / h², which at h = 1e-5 is ~1e-6·|Φ| and would drown the
/// verification tolerances; h = 1e-4 puts the floor near 1e-8·|Φ| while the
/// truncation error stays below 1e-9 for the builtin surfaces.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Half-width of the angle bands excluded when sampling for sign-law checks
/// (around θ ∈ {0, π/2, π} and φ ∈ {0, π/2, π, 3π/2, 2π}).
pub const ANGLE_EXCLUSION_BAND: f64 = 1e-3;

/// Sign of a real number with a deadband: values in [−eps, eps] (and NaN)
/// are indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    Indeterminate,
}

impl Sign {
    pub fn of(value: f64, eps: f64) -> Sign {
        if value > eps {
            Sign::Positive
        } else if value < -eps {
            Sign::Negative
        } else {
            Sign::Indeterminate
        }
    }

    pub fn is_determinate(self) -> bool {
        self != Sign::Indeterminate
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        use Sign::*;
        match (self, other) {
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (Positive, Positive) | (Negative, Negative) => Positive,
            _ => Negative,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Indeterminate => Sign::Indeterminate,
        }
    }
}

/// The four product laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    KappaYDsvDx,
    KappaXDsvDy,
    KappaProduct,
    SvProduct,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [
        TheoremId::KappaYDsvDx,
        TheoremId::KappaXDsvDy,
        TheoremId::KappaProduct,
        TheoremId::SvProduct,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremId::KappaYDsvDx => "kappa_y_dsv_dx",
            TheoremId::KappaXDsvDy => "kappa_x_dsv_dy",
            TheoremId::KappaProduct => "kappa_product",
            TheoremId::SvProduct => "sv_product",
        }
    }
}

/// One residual evaluation of a product law at one configuration.
///
/// When the hypotheses are not met the numeric fields are zero and carry no
/// information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremResidual {
    pub theorem: TheoremId,
    pub hypotheses_met: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    /// abs_residual / max(1, |lhs|, |rhs|).
    pub rel_residual: f64,
}

impl TheoremResidual {
    fn vacuous(theorem: TheoremId) -> TheoremResidual {
        TheoremResidual {
            theorem,
            hypotheses_met: false,
            lhs: 0.0,
            rhs: 0.0,
            abs_residual: 0.0,
            rel_residual: 0.0,
        }
    }
}

/// Whether the regularity hypotheses of a law hold at this jet, with margin
/// `eps` on the first-derivative components.
pub fn theorem_hypotheses_met(
    theorem: TheoremId,
    pj: &ProjectionJet,
    phi: f64,
    eps: f64,
) -> bool {
    let reg_x = || regularity_x(pj, phi, eps) == Regularity::Regular;
    let reg_y = || regularity_y(pj, phi, eps) == Regularity::Regular;
    match theorem {
        TheoremId::KappaYDsvDx => reg_y(),
        TheoremId::KappaXDsvDy => reg_x(),
        TheoremId::KappaProduct => reg_x() && reg_y(),
        TheoremId::SvProduct => true,
    }
}

/// Left side of a law from the generic curve-family operations.
/// Fails only if a required curvature denominator is exactly zero.
pub fn theorem_lhs(theorem: TheoremId, planar: &PlanarMapJet) -> Option<f64> {
    let kappa = |along| family_curvature_with_eps(planar, along, 0.0).ok();
    match theorem {
        TheoremId::KappaYDsvDx => {
            Some(kappa(FamilyParam::V)? * sv_derivative(planar, FamilyParam::U))
        }
        TheoremId::KappaXDsvDy => {
            Some(kappa(FamilyParam::U)? * sv_derivative(planar, FamilyParam::V))
        }
        TheoremId::KappaProduct => Some(kappa(FamilyParam::U)? * kappa(FamilyParam::V)?),
        TheoremId::SvProduct => Some(
            sv_derivative(planar, FamilyParam::U) * sv_derivative(planar, FamilyParam::V),
        ),
    }
}

/// Right side of a law from the surface jet and view angles.
pub fn theorem_rhs(theorem: TheoremId, j: &Jet2, theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let p = -ct * cp + j.gx * st;
    let q = -ct * sp + j.gy * st;
    let gg = j.gxx * j.gyy;
    let st2 = st * st;
    match theorem {
        TheoremId::KappaYDsvDx => {
            -2.0 * gg * p * cp * st2 / (cp * cp + q * q).powf(1.5)
        }
        TheoremId::KappaXDsvDy => {
            2.0 * gg * q * sp * st2 / (sp * sp + p * p).powf(1.5)
        }
        TheoremId::KappaProduct => {
            -gg * sp * cp * st2
                / ((sp * sp + p * p).powf(1.5) * (cp * cp + q * q).powf(1.5))
        }
        TheoremId::SvProduct => 4.0 * gg * p * q * st2,
    }
}

/// Assembles a [`TheoremResidual`] with the left side taken from `lhs_jet`
/// (closed-form or finite-difference) and hypotheses judged on `pj_exact`.
pub fn theorem_residual(
    theorem: TheoremId,
    lhs_jet: &ProjectionJet,
    pj_exact: &ProjectionJet,
    gjet: &Jet2,
    view: &ViewDirection,
    eps: f64,
) -> TheoremResidual {
    if !theorem_hypotheses_met(theorem, pj_exact, view.phi, eps) {
        return TheoremResidual::vacuous(theorem);
    }
    let planar = PlanarMapJet::from(lhs_jet);
    let Some(lhs) = theorem_lhs(theorem, &planar) else {
        return TheoremResidual::vacuous(theorem);
    };
    let rhs = theorem_rhs(theorem, gjet, view.theta, view.phi);
    let abs_residual = (lhs - rhs).abs();
    let scale = 1.0f64.max(lhs.abs()).max(rhs.abs());
    TheoremResidual {
        theorem,
        hypotheses_met: true,
        lhs,
        rhs,
        abs_residual,
        rel_residual: abs_residual / scale,
    }
}

/// Checks one law at a (surface, view, point) configuration via the
/// closed-form jet path.
pub fn check_theorem(
    theorem: TheoremId,
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
) -> Result<TheoremResidual, EvalError> {
    let gjet = s.jet2(x, y)?;
    let pj = projection_jet_from(&gjet, view, x, y);
    Ok(theorem_residual(theorem, &pj, &pj, &gjet, view, DEFAULT_EPS_SIGN))
}

/// Finite-difference jet of the projected map: first partials by central
/// differences, second partials by central second/cross differences of the
/// projection values, and P, Q rebuilt from finite-difference slopes of g.
/// Entirely independent of the symbolic/closed-form derivative path.
pub fn fd_projection_jet(
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
    h: f64,
) -> Result<ProjectionJet, EvalError> {
    let f = |xx: f64, yy: f64| projection_value(s, view, xx, yy);
    let c = f(x, y)?;
    let px = f(x + h, y)?;
    let mx = f(x - h, y)?;
    let py = f(x, y + h)?;
    let my = f(x, y - h)?;
    let pp = f(x + h, y + h)?;
    let pm = f(x + h, y - h)?;
    let mp = f(x - h, y + h)?;
    let mm = f(x - h, y - h)?;

    let d1 = |plus: Vec2, minus: Vec2| -> Vec2 {
        [(plus[0] - minus[0]) / (2.0 * h), (plus[1] - minus[1]) / (2.0 * h)]
    };
    let d2 = |plus: Vec2, minus: Vec2| -> Vec2 {
        [
            (plus[0] - 2.0 * c[0] + minus[0]) / (h * h),
            (plus[1] - 2.0 * c[1] + minus[1]) / (h * h),
        ]
    };
    let dxy = [
        (pp[0] - pm[0] - mp[0] + mm[0]) / (4.0 * h * h),
        (pp[1] - pm[1] - mp[1] + mm[1]) / (4.0 * h * h),
    ];

    let gx_fd = (s.eval(x + h, y)? - s.eval(x - h, y)?) / (2.0 * h);
    let gy_fd = (s.eval(x, y + h)? - s.eval(x, y - h)?) / (2.0 * h);
    let (st, ct) = view.theta.sin_cos();
    let (sp, cp) = view.phi.sin_cos();

    Ok(ProjectionJet {
        value: c,
        dx: d1(px, mx),
        dy: d1(py, my),
        dxx: d2(px, mx),
        dxy,
        dyy: d2(py, my),
        p: -ct * cp + gx_fd * st,
        q: -ct * sp + gy_fd * st,
    })
}

/// Fourth-order finite-difference jet of g itself (five-point stencils),
/// for checking surface jets when the symbolic path is to be bypassed.
pub fn fd_surface_jet_5pt(s: &Surface, x: f64, y: f64, h: f64) -> Result<Jet2, EvalError> {
    let g = |xx: f64, yy: f64| s.eval(xx, yy);
    let d1 = |m2: f64, m1: f64, p1: f64, p2: f64| (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2 = |m2: f64, m1: f64, c: f64, p1: f64, p2: f64| {
        (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h)
    };

    let c = g(x, y)?;
    let gx = d1(g(x - 2.0 * h, y)?, g(x - h, y)?, g(x + h, y)?, g(x + 2.0 * h, y)?);
    let gy = d1(g(x, y - 2.0 * h)?, g(x, y - h)?, g(x, y + h)?, g(x, y + 2.0 * h)?);
    let gxx = d2(
        g(x - 2.0 * h, y)?,
        g(x - h, y)?,
        c,
        g(x + h, y)?,
        g(x + 2.0 * h, y)?,
    );
    let gyy = d2(
        g(x, y - 2.0 * h)?,
        g(x, y - h)?,
        c,
        g(x, y + h)?,
        g(x, y + 2.0 * h)?,
    );
    // mixed partial: five-point x-derivative at each of four y offsets,
    // combined by the five-point y stencil
    let dx_at = |yy: f64| -> Result<f64, EvalError> {
        Ok(d1(g(x - 2.0 * h, yy)?, g(x - h, yy)?, g(x + h, yy)?, g(x + 2.0 * h, yy)?))
    };
    let gxy = d1(
        dx_at(y - 2.0 * h)?,
        dx_at(y - h)?,
        dx_at(y + h)?,
        dx_at(y + 2.0 * h)?,
    );
    Ok(Jet2 { g: c, gx, gy, gxx, gxy, gyy })
}

/// Verdict of one sign-law check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    Agree,
    Disagree,
    /// Hypotheses met but at least one factor is indeterminate at eps.
    Skipped,
    /// Hypotheses (angle conditions or regularity) not met.
    HypothesisNotMet,
}

/// One product-of-signs check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignLawCheck {
    pub law: TheoremId,
    pub lhs: Sign,
    pub rhs: Sign,
    pub verdict: SignVerdict,
}

fn sign_verdict(lhs: Sign, rhs: Sign) -> SignVerdict {
    if !lhs.is_determinate() || !rhs.is_determinate() {
        SignVerdict::Skipped
    } else if lhs == rhs {
        SignVerdict::Agree
    } else {
        SignVerdict::Disagree
    }
}

/// Checks the four sign corollaries at a general configuration:
///
/// ```text
/// sign κ_y · sign d/dx SV = −sign(g_xx g_yy) · sign P · sign cos φ
/// sign κ_x · sign d/dy SV =  sign(g_xx g_yy) · sign Q · sign sin φ
/// sign κ_x · sign κ_y     = −sign(g_xx g_yy) · sign sin 2φ
/// sign dSVx · sign dSVy   =  sign(g_xx g_yy) · sign P · sign Q
/// ```
///
/// Each requires sin θ ≠ 0 plus the regularity needed by its curvatures, all
/// with margin `eps`.
pub fn check_sign_corollaries(
    s: &Surface,
    view: &ViewDirection,
    x: f64,
    y: f64,
    eps: f64,
) -> Result<[SignLawCheck; 4], EvalError> {
    let gjet = s.jet2(x, y)?;
    let pj = projection_jet_from(&gjet, view, x, y);
    Ok(sign_corollaries_from_jets(&gjet, &pj, view, eps))
}

pub fn sign_corollaries_from_jets(
    gjet: &Jet2,
    pj: &ProjectionJet,
    view: &ViewDirection,
    eps: f64,
) -> [SignLawCheck; 4] {
    let planar = PlanarMapJet::from(pj);
    let (sp, cp) = view.phi.sin_cos();
    let st = view.theta.sin();
    let sin_theta_ok = st.abs() > eps;

    let gg = Sign::of(gjet.gxx * gjet.gyy, eps);
    let p = Sign::of(pj.p, eps);
    let q = Sign::of(pj.q, eps);
    let cos_phi = Sign::of(cp, eps);
    let sin_phi = Sign::of(sp, eps);
    let sin_two_phi = Sign::of(2.0 * sp * cp, eps);

    let kappa = |along| {
        family_curvature_with_eps(&planar, along, 0.0)
            .map(|v| Sign::of(v, eps))
            .unwrap_or(Sign::Indeterminate)
    };
    let kappa_x = kappa(FamilyParam::U);
    let kappa_y = kappa(FamilyParam::V);
    let dsv_dx = Sign::of(sv_derivative(&planar, FamilyParam::U), eps);
    let dsv_dy = Sign::of(sv_derivative(&planar, FamilyParam::V), eps);

    let reg_x = regularity_x(pj, view.phi, eps) == Regularity::Regular;
    let reg_y = regularity_y(pj, view.phi, eps) == Regularity::Regular;

    let build = |law: TheoremId, hyp: bool, lhs: Sign, rhs: Sign| SignLawCheck {
        law,
        lhs,
        rhs,
        verdict: if hyp && sin_theta_ok {
            sign_verdict(lhs, rhs)
        } else {
            SignVerdict::HypothesisNotMet
        },
    };

    [
        build(TheoremId::KappaYDsvDx, reg_y, kappa_y * dsv_dx, -(gg * p * cos_phi)),
        build(TheoremId::KappaXDsvDy, reg_x, kappa_x * dsv_dy, gg * q * sin_phi),
        build(
            TheoremId::KappaProduct,
            reg_x && reg_y,
            kappa_x * kappa_y,
            -(gg * sin_two_phi),
        ),
        build(TheoremId::SvProduct, true, dsv_dx * dsv_dy, gg * p * q),
    ]
}

/// The surface's origin fails the critical-point precondition
/// g_x(0) = g_y(0) = g_xy(0) = 0 (within 1e-12), or evaluation failed there.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CriticalPointError {
    #[error("cannot evaluate the surface at the origin: {0}")]
    Eval(#[from] EvalError),
    #[error(
        "origin is not a critical point with vanishing mixed derivative: \
         g_x = {gx:.3e}, g_y = {gy:.3e}, g_xy = {gxy:.3e} (all must be <= 1e-12)"
    )]
    NotCritical { gx: f64, gy: f64, gxy: f64 },
}

/// How far the origin jet may be from exactly critical.
pub const CRITICAL_POINT_TOL: f64 = 1e-12;

/// Returns the origin jet if g_x(0) = g_y(0) = g_xy(0) = 0 within
/// [`CRITICAL_POINT_TOL`].
pub fn critical_origin_jet(s: &Surface) -> Result<Jet2, CriticalPointError> {
    let j = s.jet2(0.0, 0.0)?;
    if j.gx.abs() > CRITICAL_POINT_TOL
        || j.gy.abs() > CRITICAL_POINT_TOL
        || j.gxy.abs() > CRITICAL_POINT_TOL
    {
        return Err(CriticalPointError::NotCritical { gx: j.gx, gy: j.gy, gxy: j.gxy });
    }
    Ok(j)
}

/// Checks the critical-point sign laws at the origin (where
/// g_xx g_yy = K(0), since the first derivatives and the mixed second
/// derivative vanish):
///
/// ```text
/// sign κ_y(0) · sign dSVx(0) =  sign K(0) · sign cos θ   (needs sin 2θ cos φ ≠ 0)
/// sign κ_x(0) · sign dSVy(0) = −sign K(0) · sign cos θ   (needs sin 2θ sin φ ≠ 0)
/// sign κ_x(0) · sign κ_y(0)  = −sign K(0) · sign sin 2φ  (needs sin θ ≠ 0)
/// sign dSVx(0) · sign dSVy(0) = sign K(0) · sign sin 2φ  (needs sin 2θ ≠ 0)
/// ```
pub fn check_critical_props(
    s: &Surface,
    view: &ViewDirection,
    eps: f64,
) -> Result<[SignLawCheck; 4], CriticalPointError> {
    let gjet = critical_origin_jet(s)?;
    let pj = projection_jet_from(&gjet, view, 0.0, 0.0);
    let planar = PlanarMapJet::from(&pj);

    let (st, ct) = view.theta.sin_cos();
    let (sp, cp) = view.phi.sin_cos();
    let sin_two_theta = 2.0 * st * ct;

    let k = Sign::of(gaussian_curvature(&gjet), eps);
    let cos_theta = Sign::of(ct, eps);
    let sin_two_phi = Sign::of(2.0 * sp * cp, eps);

    let kappa = |along| {
        family_curvature_with_eps(&planar, along, 0.0)
            .map(|v| Sign::of(v, eps))
            .unwrap_or(Sign::Indeterminate)
    };
    let kappa_x = kappa(FamilyParam::U);
    let kappa_y = kappa(FamilyParam::V);
    let dsv_dx = Sign::of(sv_derivative(&planar, FamilyParam::U), eps);
    let dsv_dy = Sign::of(sv_derivative(&planar, FamilyParam::V), eps);

    let reg_x = regularity_x(&pj, view.phi, eps) == Regularity::Regular;
    let reg_y = regularity_y(&pj, view.phi, eps) == Regularity::Regular;

    let build = |law: TheoremId, hyp: bool, lhs: Sign, rhs: Sign| SignLawCheck {
        law,
        lhs,
        rhs,
        verdict: if hyp { sign_verdict(lhs, rhs) } else { SignVerdict::HypothesisNotMet },
    };

    Ok([
        build(
            TheoremId::KappaYDsvDx,
            (sin_two_theta * cp).abs() > eps && reg_y,
            kappa_y * dsv_dx,
            k * cos_theta,
        ),
        build(
            TheoremId::KappaXDsvDy,
            (sin_two_theta * sp).abs() > eps && reg_x,
            kappa_x * dsv_dy,
            -(k * cos_theta),
        ),
        build(
            TheoremId::KappaProduct,
            st.abs() > eps && reg_x && reg_y,
            kappa_x * kappa_y,
            -(k * sin_two_phi),
        ),
        build(
            TheoremId::SvProduct,
            sin_two_theta.abs() > eps,
            dsv_dx * dsv_dy,
            k * sin_two_phi,
        ),
    ])
}
