//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use curvefam::expr::{BinOp, Expr, Var};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Asserts |a − b| ≤ tol with a readable message.
pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(
        (a - b).abs() <= tol,
        "{what}: {a} vs {b} differ by {:e} (tol {:e})",
        (a - b).abs(),
        tol
    );
}

/// Fourth-order five-point first derivative of `f` at `t`.
pub fn d1_5pt(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

/// Fourth-order five-point second derivative of `f` at `t`.
pub fn d2_5pt(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2.0 * h))
        / (12.0 * h * h)
}

/// Tolerance for comparing a value against its finite-difference estimate:
/// an absolute floor plus a relative part.
pub fn fd_tolerance(a: f64, b: f64) -> f64 {
    1e-7 + 1e-5 * a.abs().max(b.abs())
}

/// Builds c · x^px · y^py as an expression tree.
pub fn monomial(c: f64, px: u32, py: u32) -> Expr {
    let mut e = Expr::Num(c);
    if px > 0 {
        e = Expr::bin(BinOp::Mul, e, Expr::pow(Expr::Var(Var::X), px as i32));
    }
    if py > 0 {
        e = Expr::bin(BinOp::Mul, e, Expr::pow(Expr::Var(Var::Y), py as i32));
    }
    e
}

/// Random small polynomial: 1–3 monomials, coefficients in [−0.4, 0.4],
/// powers up to 3 in each variable. Kept small in magnitude so the
/// finite-difference comparison floor of 1e-7 is meaningful.
pub fn random_polynomial(rng: &mut ChaCha8Rng) -> Expr {
    let terms = rng.random_range(1..=3);
    let mut e: Option<Expr> = None;
    for _ in 0..terms {
        let c = rng.random_range(-0.4..0.4);
        let px = rng.random_range(0..=3);
        let py = rng.random_range(0..=3);
        let m = monomial(c, px, py);
        e = Some(match e {
            None => m,
            Some(prev) => Expr::bin(BinOp::Add, prev, m),
        });
    }
    e.expect("at least one term")
}
