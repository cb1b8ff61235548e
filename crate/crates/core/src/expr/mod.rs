//! Expression language for surface heights g(x, y).
//!
//! The language is deliberately small: constants, the variables `x` and `y`,
//! the unary functions `sin`, `cos`, `exp`, `sqrt`, negation, the four
//! arithmetic operators, and powers with a constant integer exponent.
//! Expressions are parsed by [`parse`], differentiated symbolically by
//! [`differentiate`], and evaluated by [`eval`] / [`eval_jet2`].
//!
//! No algebraic simplification is performed beyond constant folding of
//! literal subtrees; correctness of derivatives is checked by value, not by
//! tree shape.

mod parse;

pub use parse::{parse, ParseError};

use crate::surface::Jet2;

/// Variable of a two-argument expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Unary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
}

/// Binary arithmetic operators. Powers are a separate [`Expr::Pow`] node
/// because the exponent is restricted to a constant integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Abstract syntax tree of an expression in `x` and `y`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Un(UnOp, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// Evaluation failure, reporting the sub-expression that produced it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero in `{node}`")]
    DivisionByZero { node: String },
    #[error("square root of negative value in `{node}`")]
    SqrtOfNegative { node: String },
    #[error("non-finite result in `{node}`")]
    NonFinite { node: String },
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    /// Builds a unary node, folding literal operands when the result is a
    /// finite number. Domain errors (e.g. `sqrt(-1)`) are left unfolded so
    /// evaluation reports them against the offending node.
    pub fn un(op: UnOp, a: Expr) -> Expr {
        if let Expr::Num(v) = a {
            let folded = match op {
                UnOp::Neg => -v,
                UnOp::Sin => v.sin(),
                UnOp::Cos => v.cos(),
                UnOp::Exp => v.exp(),
                UnOp::Sqrt => v.sqrt(),
            };
            if folded.is_finite() {
                return Expr::Num(folded);
            }
            return Expr::Un(op, Box::new(Expr::Num(v)));
        }
        Expr::Un(op, Box::new(a))
    }

    /// Builds a binary node, folding when both operands are literals and the
    /// result is finite (so `1/0` stays a tree and fails at evaluation).
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        if let (Expr::Num(u), Expr::Num(v)) = (&a, &b) {
            let folded = match op {
                BinOp::Add => u + v,
                BinOp::Sub => u - v,
                BinOp::Mul => u * v,
                BinOp::Div => u / v,
            };
            if folded.is_finite() {
                return Expr::Num(folded);
            }
        }
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, exponent: i32) -> Expr {
        if let Expr::Num(v) = &base {
            let folded = v.powi(exponent);
            if folded.is_finite() {
                return Expr::Num(folded);
            }
        }
        Expr::Pow(Box::new(base), exponent)
    }

    fn add(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Add, a, b)
    }

    fn sub(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Sub, a, b)
    }

    fn mul(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Mul, a, b)
    }

    fn div(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Div, a, b)
    }
}

/// Symbolic partial derivative with respect to `var`.
///
/// Derivative trees are built with the folding constructors, so literal
/// subtrees collapse, but no other simplification is applied.
pub fn differentiate(e: &Expr, var: Var) -> Expr {
    match e {
        Expr::Num(_) => Expr::Num(0.0),
        Expr::Var(v) => Expr::Num(if *v == var { 1.0 } else { 0.0 }),
        Expr::Un(op, a) => {
            let da = differentiate(a, var);
            match op {
                UnOp::Neg => Expr::un(UnOp::Neg, da),
                UnOp::Sin => Expr::mul(Expr::un(UnOp::Cos, (**a).clone()), da),
                UnOp::Cos => {
                    Expr::un(UnOp::Neg, Expr::mul(Expr::un(UnOp::Sin, (**a).clone()), da))
                }
                UnOp::Exp => Expr::mul(Expr::un(UnOp::Exp, (**a).clone()), da),
                UnOp::Sqrt => Expr::div(
                    da,
                    Expr::mul(Expr::Num(2.0), Expr::un(UnOp::Sqrt, (**a).clone())),
                ),
            }
        }
        Expr::Bin(op, a, b) => {
            let da = differentiate(a, var);
            let db = differentiate(b, var);
            match op {
                BinOp::Add => Expr::add(da, db),
                BinOp::Sub => Expr::sub(da, db),
                BinOp::Mul => Expr::add(
                    Expr::mul(da, (**b).clone()),
                    Expr::mul((**a).clone(), db),
                ),
                BinOp::Div => Expr::div(
                    Expr::sub(
                        Expr::mul(da, (**b).clone()),
                        Expr::mul((**a).clone(), db),
                    ),
                    Expr::pow((**b).clone(), 2),
                ),
            }
        }
        Expr::Pow(a, n) => {
            if *n == 0 {
                return Expr::Num(0.0);
            }
            let da = differentiate(a, var);
            Expr::mul(
                Expr::mul(Expr::Num(*n as f64), Expr::pow((**a).clone(), n - 1)),
                da,
            )
        }
    }
}

/// Evaluates `e` at `(x, y)`.
///
/// Fails on division by an exact zero, square root of a negative value, or a
/// non-finite intermediate (overflow); the error names the offending
/// sub-expression.
pub fn eval(e: &Expr, x: f64, y: f64) -> Result<f64, EvalError> {
    let value = match e {
        Expr::Num(v) => *v,
        Expr::Var(Var::X) => x,
        Expr::Var(Var::Y) => y,
        Expr::Un(op, a) => {
            let va = eval(a, x, y)?;
            match op {
                UnOp::Neg => -va,
                UnOp::Sin => va.sin(),
                UnOp::Cos => va.cos(),
                UnOp::Exp => va.exp(),
                UnOp::Sqrt => {
                    if va < 0.0 {
                        return Err(EvalError::SqrtOfNegative { node: e.to_string() });
                    }
                    va.sqrt()
                }
            }
        }
        Expr::Bin(op, a, b) => {
            let va = eval(a, x, y)?;
            let vb = eval(b, x, y)?;
            match op {
                BinOp::Add => va + vb,
                BinOp::Sub => va - vb,
                BinOp::Mul => va * vb,
                BinOp::Div => {
                    if vb == 0.0 {
                        return Err(EvalError::DivisionByZero { node: e.to_string() });
                    }
                    va / vb
                }
            }
        }
        Expr::Pow(a, n) => eval(a, x, y)?.powi(*n),
    };
    if !value.is_finite() {
        return Err(EvalError::NonFinite { node: e.to_string() });
    }
    Ok(value)
}

/// An expression together with its five partial-derivative trees, computed
/// once so repeated jet evaluations do not re-differentiate.
///
/// The mixed partial is differentiated in the order d/dy(d/dx g); equality
/// with the opposite order is a tested property, not an assumption of the
/// construction.
#[derive(Debug, Clone)]
pub struct JetProgram {
    pub g: Expr,
    pub gx: Expr,
    pub gy: Expr,
    pub gxx: Expr,
    pub gxy: Expr,
    pub gyy: Expr,
}

impl JetProgram {
    pub fn new(e: &Expr) -> JetProgram {
        let gx = differentiate(e, Var::X);
        let gy = differentiate(e, Var::Y);
        let gxx = differentiate(&gx, Var::X);
        let gxy = differentiate(&gx, Var::Y);
        let gyy = differentiate(&gy, Var::Y);
        JetProgram { g: e.clone(), gx, gy, gxx, gxy, gyy }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Jet2, EvalError> {
        Ok(Jet2 {
            g: eval(&self.g, x, y)?,
            gx: eval(&self.gx, x, y)?,
            gy: eval(&self.gy, x, y)?,
            gxx: eval(&self.gxx, x, y)?,
            gxy: eval(&self.gxy, x, y)?,
            gyy: eval(&self.gyy, x, y)?,
        })
    }
}

/// Value and first/second partial derivatives of `e` at `(x, y)`.
///
/// The second derivatives are evaluated from the twice-differentiated trees,
/// i.e. exactly the same code path as calling [`differentiate`] twice and
/// then [`eval`].
pub fn eval_jet2(e: &Expr, x: f64, y: f64) -> Result<Jet2, EvalError> {
    JetProgram::new(e).eval(x, y)
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_expr(self, f, 0)
    }
}

/// Precedence levels for printing: 1 additive, 2 multiplicative, 3 unary
/// minus, 4 power. A child is parenthesised when its level is below the
/// context's requirement.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Num(v) if *v < 0.0 => 3,
        Expr::Num(_) | Expr::Var(_) => 5,
        Expr::Un(UnOp::Neg, _) => 3,
        Expr::Un(..) => 5,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Pow(..) => 4,
    }
}

fn write_child(
    e: &Expr,
    f: &mut std::fmt::Formatter<'_>,
    min_level: u8,
) -> std::fmt::Result {
    if precedence(e) < min_level {
        write!(f, "(")?;
        write_expr(e, f, 0)?;
        write!(f, ")")
    } else {
        write_expr(e, f, 0)
    }
}

fn write_expr(e: &Expr, f: &mut std::fmt::Formatter<'_>, _level: u8) -> std::fmt::Result {
    match e {
        Expr::Num(v) => write!(f, "{v}"),
        Expr::Var(Var::X) => write!(f, "x"),
        Expr::Var(Var::Y) => write!(f, "y"),
        Expr::Un(UnOp::Neg, a) => {
            write!(f, "-")?;
            write_child(a, f, 3)
        }
        Expr::Un(op, a) => {
            let name = match op {
                UnOp::Sin => "sin",
                UnOp::Cos => "cos",
                UnOp::Exp => "exp",
                UnOp::Sqrt => "sqrt",
                UnOp::Neg => unreachable!(),
            };
            write!(f, "{name}(")?;
            write_expr(a, f, 0)?;
            write!(f, ")")
        }
        Expr::Bin(op, a, b) => {
            let (sym, level, rhs_level) = match op {
                BinOp::Add => (" + ", 1, 1),
                BinOp::Sub => (" - ", 1, 2),
                BinOp::Mul => (" * ", 2, 2),
                BinOp::Div => (" / ", 2, 3),
            };
            write_child(a, f, level)?;
            write!(f, "{sym}")?;
            write_child(b, f, rhs_level)
        }
        Expr::Pow(a, n) => {
            write_child(a, f, 5)?;
            write!(f, "^{n}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::Var(Var::X)
    }

    fn y() -> Expr {
        Expr::Var(Var::Y)
    }

    #[test]
    fn differentiate_square_difference() {
        // d/dx (x^2 - y^2) evaluates to 2x
        let e = parse("x^2 - y^2").unwrap();
        let dx = differentiate(&e, Var::X);
        for &(px, py) in &[(0.0, 0.0), (1.5, -2.0), (-0.3, 0.7)] {
            let got = eval(&dx, px, py).unwrap();
            assert!((got - 2.0 * px).abs() < 1e-12, "at ({px},{py}) got {got}");
        }
    }

    #[test]
    fn differentiate_cubic_vanishes_at_origin() {
        let e = parse("y^2 - x^3").unwrap();
        let dy = differentiate(&e, Var::Y);
        assert_eq!(eval(&dy, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn differentiate_sin_product_matches_closed_form_and_fd() {
        // d/dx sin(x y) = y cos(x y); at (1, pi) this is -pi
        let e = parse("sin(x*y)").unwrap();
        let dx = differentiate(&e, Var::X);
        let got = eval(&dx, 1.0, std::f64::consts::PI).unwrap();
        assert!((got - (-std::f64::consts::PI)).abs() < 1e-8, "got {got}");

        // independent central difference, step 1e-5
        let h = 1e-5;
        let fd = (eval(&e, 1.0 + h, std::f64::consts::PI).unwrap()
            - eval(&e, 1.0 - h, std::f64::consts::PI).unwrap())
            / (2.0 * h);
        assert!((got - fd).abs() < 1e-8, "symbolic {got} vs fd {fd}");
    }

    #[test]
    fn eval_jet2_of_square_difference_is_exact() {
        let e = parse("x^2 - y^2").unwrap();
        let j = eval_jet2(&e, 0.0, 0.0).unwrap();
        assert_eq!((j.g, j.gx, j.gy), (0.0, 0.0, 0.0));
        assert_eq!((j.gxx, j.gxy, j.gyy), (2.0, 0.0, -2.0));
    }

    #[test]
    fn eval_jet2_of_sine_product_at_origin() {
        let e = parse("sin(x*y)").unwrap();
        let j = eval_jet2(&e, 0.0, 0.0).unwrap();
        assert_eq!(j.g, 0.0);
        assert_eq!(j.gx, 0.0);
        assert_eq!(j.gy, 0.0);
        assert_eq!(j.gxx, 0.0);
        assert!((j.gxy - 1.0).abs() < 1e-15);
        assert_eq!(j.gyy, 0.0);
    }

    #[test]
    fn eval_jet2_reports_division_by_zero_with_node() {
        let e = parse("1/x").unwrap();
        let err = eval_jet2(&e, 0.0, 0.0).unwrap_err();
        match err {
            EvalError::DivisionByZero { node } => assert_eq!(node, "1 / x"),
            other => panic!("expected division by zero, got {other:?}"),
        }
    }

    #[test]
    fn eval_reports_sqrt_of_negative_with_node() {
        let e = parse("sqrt(x - 2)").unwrap();
        let err = eval(&e, 0.0, 0.0).unwrap_err();
        match err {
            EvalError::SqrtOfNegative { node } => assert_eq!(node, "sqrt(x - 2)"),
            other => panic!("expected sqrt error, got {other:?}"),
        }
    }

    #[test]
    fn eval_reports_overflow_as_non_finite() {
        let e = parse("exp(x^2)").unwrap();
        let err = eval(&e, 100.0, 0.0).unwrap_err();
        assert!(matches!(err, EvalError::NonFinite { .. }), "got {err:?}");
    }

    #[test]
    fn second_derivative_entry_is_bit_identical_to_double_differentiate() {
        let e = parse("sin(x*y) + x^3 - y^2/(1 + x^2)").unwrap();
        let gxx_tree = differentiate(&differentiate(&e, Var::X), Var::X);
        for &(px, py) in &[(0.3, 0.7), (-0.9, 0.2), (1.0, -1.0)] {
            let direct = eval(&gxx_tree, px, py).unwrap();
            let jet = eval_jet2(&e, px, py).unwrap();
            assert_eq!(direct.to_bits(), jet.gxx.to_bits());
        }
    }

    #[test]
    fn constant_folding_collapses_literal_subtrees() {
        let e = Expr::bin(BinOp::Add, Expr::Num(1.0), Expr::Num(2.0));
        assert_eq!(e, Expr::Num(3.0));
        let kept = Expr::bin(BinOp::Div, Expr::Num(1.0), Expr::Num(0.0));
        assert!(matches!(kept, Expr::Bin(BinOp::Div, ..)));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for src in [
            "sin(x*y)",
            "-x^2 - y^2",
            "x^2 - y^2",
            "y^2 - x^3",
            "1/(1 + x^2) - sqrt(y + 2)",
            "exp(-x) * cos(x + y)^3",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            let reparsed = parse(&printed)
                .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
            for &(px, py) in &[(0.25, -0.5), (0.9, 0.4)] {
                let a = eval(&e, px, py).unwrap();
                let b = eval(&reparsed, px, py).unwrap();
                assert_eq!(a.to_bits(), b.to_bits(), "`{src}` vs `{printed}`");
            }
        }
    }

    #[test]
    fn derivative_of_quotient_matches_hand_formula() {
        // d/dy (y^2 / (1 + x^2)) = 2y / (1 + x^2)
        let e = Expr::bin(
            BinOp::Div,
            Expr::pow(y(), 2),
            Expr::bin(BinOp::Add, Expr::Num(1.0), Expr::pow(x(), 2)),
        );
        let dy = differentiate(&e, Var::Y);
        let got = eval(&dy, 2.0, 3.0).unwrap();
        assert!((got - 6.0 / 5.0).abs() < 1e-14);
    }
}
