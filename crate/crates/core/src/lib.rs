//! Curve-family invariants of orthogonally projected graph surfaces.
//!
//! Given a surface z = g(x, y) and a view direction
//! v = (sin θ cos φ, sin θ sin φ, cos θ), the map
//!
//! ```text
//! Φ(x, y) = (g(x,y) sin θ − x cos θ cos φ − y cos θ sin φ,
//!            y cos φ − x sin φ)
//! ```
//!
//! is the orthogonal projection of the graph onto the plane normal to v,
//! expressed in coordinates aligned with the view. Freezing one of x, y turns
//! Φ into a one-parameter family of plane curves; this crate computes the
//! classical invariants of those families (curvature, squared velocity and
//! its parameter derivative), verifies the product laws linking them to the
//! Hessian of g, and renders the projected families as SVG.
//!
//! Modules:
//!
//! - [`expr`]: tiny expression language for surfaces, with exact symbolic
//!   differentiation,
//! - [`surface`]: builtin and parsed surfaces with order-2 jets and Gaussian
//!   curvature,
//! - [`projection`]: the view rotation and the closed-form jet of Φ,
//! - [`invariants`]: curve-family invariants, generic and closed-form,
//! - [`verify`]: residual and sign-law verification, randomized suite,
//!   finite-difference oracles,
//! - [`render`]: curve-family sampling and deterministic SVG output.
//!
//! # Example
//!
//! ```
//! use curvefam::{Surface, ViewDirection, invariant_sample};
//! use std::f64::consts::PI;
//!
//! let s = Surface::from_spec("sin(x*y)").unwrap();
//! let view = ViewDirection::new(3.0 * PI / 4.0, 0.0);
//! let sample = invariant_sample(&s, &view, 0.3, -0.2, 1e-9).unwrap();
//! println!("kappa_y = {:?}, dSV/dx = {}", sample.kappa_y, sample.dsv_dx);
//! ```

pub mod expr;
pub mod invariants;
pub mod linalg;
pub mod projection;
pub mod render;
pub mod surface;
pub mod verify;

pub use expr::{differentiate, eval_jet2, parse, EvalError, Expr, ParseError};
pub use invariants::{
    family_curvature, invariant_sample, squared_velocity, sv_derivative, FamilyParam,
    InvariantSample, PlanarMapJet,
};
pub use linalg::{Mat3, Vec2, Vec3};
pub use projection::{
    projection_jet, projection_value, view_rotation, ProjectionJet, Regularity, ViewDirection,
    DEFAULT_EPS_REGULAR,
};
pub use render::{
    render_svg, sample_family, CurveFamilyDrawing, DomainBox, FamilySelect, FamilyTag,
};
pub use surface::{gaussian_curvature, Builtin, Jet2, Surface};
pub use verify::{
    check_critical_props, check_sign_corollaries, check_theorem, fd_projection_jet, run_suite,
    Sign, SignLawCheck, SignVerdict, SuiteConfig, TheoremId, TheoremResidual,
    VerificationReport,
};
