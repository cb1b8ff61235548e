//! Graph surfaces z = g(x, y) and their second-order data.
//!
//! A [`Surface`] is either one of five builtin heights with hard-coded exact
//! jets, or a parsed expression differentiated symbolically. The builtin jets
//! deliberately do not go through the parser, so the two paths can be checked
//! against each other.

use serde::Serialize;

use crate::expr::{self, EvalError, Expr, JetProgram, ParseError};

/// Value and partial derivatives of g up to second order at one point.
/// All entries are finite; construction fails otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2 {
    pub g: f64,
    pub gx: f64,
    pub gy: f64,
    pub gxx: f64,
    pub gxy: f64,
    pub gyy: f64,
}

/// Builtin surfaces with exact hand-written jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// g = sin(x y)
    SinXy,
    /// g = -x^2 - y^2, elliptic paraboloid opening downward; K > 0 everywhere
    Ellip,
    /// g = x^2 - y^2, saddle; K < 0 everywhere
    Hyp,
    /// g = y^2 - x^3; K vanishes on the line x = 0
    Parab,
    /// g = 0, the plane
    Flat,
}

impl Builtin {
    pub const ALL: [Builtin; 5] =
        [Builtin::SinXy, Builtin::Ellip, Builtin::Hyp, Builtin::Parab, Builtin::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::SinXy => "sin_xy",
            Builtin::Ellip => "ellip",
            Builtin::Hyp => "hyp",
            Builtin::Parab => "parab",
            Builtin::Flat => "flat",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.iter().copied().find(|b| b.name() == name)
    }

    /// Expression-language text of the same height, used to cross-check the
    /// hard-coded jets against the parser/differentiation path.
    pub fn formula(self) -> &'static str {
        match self {
            Builtin::SinXy => "sin(x*y)",
            Builtin::Ellip => "-x^2 - y^2",
            Builtin::Hyp => "x^2 - y^2",
            Builtin::Parab => "y^2 - x^3",
            Builtin::Flat => "0",
        }
    }

    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            Builtin::SinXy => (x * y).sin(),
            Builtin::Ellip => -x * x - y * y,
            Builtin::Hyp => x * x - y * y,
            Builtin::Parab => y * y - x * x * x,
            Builtin::Flat => 0.0,
        }
    }

    pub fn jet(self, x: f64, y: f64) -> Jet2 {
        match self {
            Builtin::SinXy => {
                let t = x * y;
                let (s, c) = t.sin_cos();
                Jet2 {
                    g: s,
                    gx: y * c,
                    gy: x * c,
                    gxx: -y * y * s,
                    gxy: c - t * s,
                    gyy: -x * x * s,
                }
            }
            Builtin::Ellip => Jet2 {
                g: -x * x - y * y,
                gx: -2.0 * x,
                gy: -2.0 * y,
                gxx: -2.0,
                gxy: 0.0,
                gyy: -2.0,
            },
            Builtin::Hyp => Jet2 {
                g: x * x - y * y,
                gx: 2.0 * x,
                gy: -2.0 * y,
                gxx: 2.0,
                gxy: 0.0,
                gyy: -2.0,
            },
            Builtin::Parab => Jet2 {
                g: y * y - x * x * x,
                gx: -3.0 * x * x,
                gy: 2.0 * y,
                gxx: -6.0 * x,
                gxy: 0.0,
                gyy: 2.0,
            },
            Builtin::Flat => {
                Jet2 { g: 0.0, gx: 0.0, gy: 0.0, gxx: 0.0, gxy: 0.0, gyy: 0.0 }
            }
        }
    }
}

enum SurfaceImpl {
    Builtin(Builtin),
    Parsed(Box<JetProgram>),
}

/// A graph surface, evaluable to a [`Jet2`] at any point of its domain.
pub struct Surface {
    spec: String,
    imp: SurfaceImpl,
}

impl Surface {
    pub fn builtin(b: Builtin) -> Surface {
        Surface { spec: b.name().to_string(), imp: SurfaceImpl::Builtin(b) }
    }

    /// Builds a surface from expression text (always the parser path, even if
    /// the text coincides with a builtin's formula).
    pub fn from_expr_text(text: &str) -> Result<Surface, ParseError> {
        let e = expr::parse(text)?;
        Ok(Surface::from_expr(text, &e))
    }

    pub fn from_expr(text: &str, e: &Expr) -> Surface {
        Surface {
            spec: text.to_string(),
            imp: SurfaceImpl::Parsed(Box::new(JetProgram::new(e))),
        }
    }

    /// Resolves a CLI-style spec: a builtin name, otherwise expression text.
    pub fn from_spec(spec: &str) -> Result<Surface, ParseError> {
        if let Some(b) = Builtin::from_name(spec.trim()) {
            return Ok(Surface::builtin(b));
        }
        Surface::from_expr_text(spec)
    }

    /// The builtin name or the expression text this surface was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        match &self.imp {
            SurfaceImpl::Builtin(b) => Some(*b),
            SurfaceImpl::Parsed(_) => None,
        }
    }

    /// Height value only (cheaper than a full jet; used by projection values,
    /// finite differencing and rendering).
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, EvalError> {
        match &self.imp {
            SurfaceImpl::Builtin(b) => Ok(b.eval(x, y)),
            SurfaceImpl::Parsed(p) => expr::eval(&p.g, x, y),
        }
    }

    /// Second-order jet of g at `(x, y)`. Builtins never fail; parsed
    /// surfaces propagate evaluation domain errors.
    pub fn jet2(&self, x: f64, y: f64) -> Result<Jet2, EvalError> {
        match &self.imp {
            SurfaceImpl::Builtin(b) => Ok(b.jet(x, y)),
            SurfaceImpl::Parsed(p) => p.eval(x, y),
        }
    }
}

impl Clone for Surface {
    fn clone(&self) -> Surface {
        match &self.imp {
            SurfaceImpl::Builtin(b) => Surface::builtin(*b),
            SurfaceImpl::Parsed(p) => Surface {
                spec: self.spec.clone(),
                imp: SurfaceImpl::Parsed(p.clone()),
            },
        }
    }
}

impl std::fmt::Debug for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Surface({})", self.spec)
    }
}

/// Gaussian curvature of the graph of g from a second-order jet:
/// K = (gxx gyy - gxy^2) / (1 + gx^2 + gy^2)^2.
pub fn gaussian_curvature(j: &Jet2) -> f64 {
    let denom = 1.0 + j.gx * j.gx + j.gy * j.gy;
    (j.gxx * j.gyy - j.gxy * j.gxy) / (denom * denom)
}

/// Absolute residual of the identity
/// gxx gyy = K (1 + gx^2 + gy^2)^2 + gxy^2,
/// which ties the product of pure second derivatives to the Gaussian
/// curvature. Zero up to roundoff for every jet.
pub fn gauss_identity_residual(j: &Jet2) -> f64 {
    let denom = 1.0 + j.gx * j.gx + j.gy * j.gy;
    let reconstructed = gaussian_curvature(j) * denom * denom + j.gxy * j.gxy;
    (j.gxx * j.gyy - reconstructed).abs()
}

/// Outcome of one implication clause of [`gauss_sign_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseOutcome {
    /// The clause's hypothesis is determinately false at this point.
    NotApplicable,
    Holds,
    Violated,
}

/// Point check of the two sign implications linking K and gxx·gyy:
/// if K >= 0 then sign K = sign(gxx gyy), and if gxx gyy <= 0 then K <= 0.
/// Comparisons use `eps_sign` slack; raw values are returned alongside the
/// verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussSignCheck {
    pub k: f64,
    /// gxx * gyy
    pub product: f64,
    pub k_nonneg_clause: ClauseOutcome,
    pub product_nonpos_clause: ClauseOutcome,
}

impl GaussSignCheck {
    pub fn holds(&self) -> bool {
        self.k_nonneg_clause != ClauseOutcome::Violated
            && self.product_nonpos_clause != ClauseOutcome::Violated
    }
}

pub fn gauss_sign_check(j: &Jet2, eps_sign: f64) -> GaussSignCheck {
    let k = gaussian_curvature(j);
    let product = j.gxx * j.gyy;
    let denom = 1.0 + j.gx * j.gx + j.gy * j.gy;
    let d2 = denom * denom;

    // Clause 1: K >= 0 implies sign K = sign(gxx gyy). With slack: a
    // determinately positive K forces a determinately positive product
    // (product >= K * d2 >= K in exact arithmetic); a borderline K only
    // forces product >= -eps * d2 (since product = K*d2 + gxy^2).
    let k_nonneg_clause = if k < -eps_sign {
        ClauseOutcome::NotApplicable
    } else if k > eps_sign {
        if product > eps_sign {
            ClauseOutcome::Holds
        } else {
            ClauseOutcome::Violated
        }
    } else if product >= -4.0 * eps_sign * d2.max(1.0) {
        ClauseOutcome::Holds
    } else {
        ClauseOutcome::Violated
    };

    // Clause 2: gxx gyy <= 0 implies K <= 0. With slack: product <= eps
    // forces K = (product - gxy^2)/d2 <= eps/d2 <= eps.
    let product_nonpos_clause = if product > eps_sign {
        ClauseOutcome::NotApplicable
    } else if k <= eps_sign {
        ClauseOutcome::Holds
    } else {
        ClauseOutcome::Violated
    };

    GaussSignCheck { k, product, k_nonneg_clause, product_nonpos_clause }
}
