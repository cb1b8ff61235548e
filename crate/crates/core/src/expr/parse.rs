//! Hand-written recursive-descent parser for the expression language.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//! func   := 'sin' | 'cos' | 'exp' | 'sqrt'
//! ```
//!
//! Exponents are constant integers (an optional `-` followed by digits).
//! Errors carry the 1-based byte position of the character where parsing
//! stopped, with position `len + 1` for unexpected end of input.

use super::{BinOp, Expr, UnOp, Var};

/// Syntax error with a 1-based byte position and an expected-token message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset_0based: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset: offset_0based + 1, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num { value: f64, text: String },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num { text, .. } => format!("number `{text}`"),
            Token::Ident(name) => format!("`{name}`"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            b'/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &input[start..i];
                let value = text.parse::<f64>().map_err(|_| {
                    ParseError::new(start, format!("invalid number literal `{text}`"))
                })?;
                tokens.push((Token::Num { value, text: text.to_string() }, start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(input[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::new(
                    i,
                    format!("unexpected character `{}`", input[i..].chars().next().unwrap()),
                ));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn current_offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.input_len, |(_, o)| *o)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("found {}", t.describe()),
            None => "found end of input".to_string(),
        };
        ParseError::new(self.current_offset(), format!("expected {expected}, {found}"))
    }

    fn expect(&mut self, token: Token, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::bin(BinOp::Add, lhs, rhs);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::bin(BinOp::Sub, lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    lhs = Expr::bin(BinOp::Mul, lhs, rhs);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    lhs = Expr::bin(BinOp::Div, lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let inner = self.parse_factor()?;
            return Ok(Expr::un(UnOp::Neg, inner));
        }
        let atom = self.parse_atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let exponent = self.parse_integer_exponent()?;
            return Ok(Expr::pow(atom, exponent));
        }
        Ok(atom)
    }

    fn parse_integer_exponent(&mut self) -> Result<i32, ParseError> {
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let offset = self.current_offset();
        match self.advance() {
            Some(Token::Num { text, .. }) => {
                let n = text.parse::<i32>().map_err(|_| {
                    ParseError::new(
                        offset,
                        format!("exponent must be a constant integer, found `{text}`"),
                    )
                })?;
                Ok(if negative { -n } else { n })
            }
            Some(other) => Err(ParseError::new(
                offset,
                format!(
                    "expected integer exponent after '^', found {}",
                    other.describe()
                ),
            )),
            None => Err(ParseError::new(
                self.input_len,
                "expected integer exponent after '^', found end of input".to_string(),
            )),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.current_offset();
        match self.advance() {
            Some(Token::Num { value, .. }) => Ok(Expr::Num(value)),
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var(Var::X)),
                "y" => Ok(Expr::Var(Var::Y)),
                "sin" | "cos" | "exp" | "sqrt" => {
                    let op = match name.as_str() {
                        "sin" => UnOp::Sin,
                        "cos" => UnOp::Cos,
                        "exp" => UnOp::Exp,
                        _ => UnOp::Sqrt,
                    };
                    self.expect(Token::LParen, &format!("'(' after `{name}`"))?;
                    let arg = self.parse_expr()?;
                    self.expect(Token::RParen, "')' to close function argument")?;
                    Ok(Expr::un(op, arg))
                }
                _ => Err(ParseError::new(
                    offset,
                    format!(
                        "unknown identifier `{name}` (expected x, y, sin, cos, exp or sqrt)"
                    ),
                )),
            },
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "')' to close parenthesised expression")?;
                Ok(inner)
            }
            Some(other) => Err(ParseError::new(
                offset,
                format!("expected a number, variable, function or '(', found {}", other.describe()),
            )),
            None => Err(ParseError::new(
                self.input_len,
                "expected a number, variable, function or '(', found end of input".to_string(),
            )),
        }
    }
}

/// Parses `input` into an [`Expr`].
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens, pos: 0, input_len: input.len() };
    let expr = parser.parse_expr()?;
    if parser.peek().is_some() {
        return Err(parser.error_here("end of input"));
    }
    Ok(expr)
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
    fn parses_sine_of_product() {
        let e = parse("sin(x*y)").unwrap();
        assert_eq!(
            e,
            Expr::Un(
                UnOp::Sin,
                Box::new(Expr::Bin(BinOp::Mul, Box::new(x()), Box::new(y())))
            )
        );
    }

    #[test]
    fn parses_negated_square_difference() {
        // unary minus binds the whole power: -x^2 is -(x^2)
        let e = parse("-x^2 - y^2").unwrap();
        assert_eq!(
            e,
            Expr::Bin(
                BinOp::Sub,
                Box::new(Expr::Un(UnOp::Neg, Box::new(Expr::Pow(Box::new(x()), 2)))),
                Box::new(Expr::Pow(Box::new(y()), 2)),
            )
        );
    }

    #[test]
    fn rejects_parenthesis_as_exponent_with_position() {
        let err = parse("x^(2").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("integer exponent"), "{}", err.message);
    }

    #[test]
    fn reports_end_of_input_one_past_the_end() {
        let err = parse("x + ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.message.contains("end of input"), "{}", err.message);
    }

    #[test]
    fn reports_trailing_input() {
        let err = parse("x 3").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("end of input"), "{}", err.message);
    }

    #[test]
    fn reports_unknown_identifier() {
        let err = parse("tan(x)").unwrap_err();
        assert_eq!(err.offset, 1);
        assert!(err.message.contains("unknown identifier `tan`"), "{}", err.message);
    }

    #[test]
    fn reports_unbalanced_parenthesis() {
        let err = parse("sin(x").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.message.contains("')'"), "{}", err.message);
    }

    #[test]
    fn negative_and_fractional_exponents() {
        let e = parse("x^-2").unwrap();
        assert_eq!(e, Expr::Pow(Box::new(x()), -2));
        let err = parse("x^2.5").unwrap_err();
        assert!(err.message.contains("constant integer"), "{}", err.message);
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("1 - 2*x").unwrap();
        assert_eq!(
            e,
            Expr::Bin(
                BinOp::Sub,
                Box::new(Expr::Num(1.0)),
                Box::new(Expr::Bin(BinOp::Mul, Box::new(Expr::Num(2.0)), Box::new(x()))),
            )
        );
        let chain = parse("x/y/2").unwrap();
        assert_eq!(
            chain,
            Expr::Bin(
                BinOp::Div,
                Box::new(Expr::Bin(BinOp::Div, Box::new(x()), Box::new(y()))),
                Box::new(Expr::Num(2.0)),
            )
        );
    }

    #[test]
    fn parenthesised_base_of_power() {
        let e = parse("(x + y)^2").unwrap();
        assert_eq!(
            e,
            Expr::Pow(
                Box::new(Expr::Bin(BinOp::Add, Box::new(x()), Box::new(y()))),
                2
            )
        );
    }

    #[test]
    fn scientific_notation_literals() {
        let e = parse("2.5e-1 * x").unwrap();
        let v = crate::expr::eval(&e, 4.0, 0.0).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn literal_subtrees_fold_at_parse_time() {
        assert_eq!(parse("1 + 2*3").unwrap(), Expr::Num(7.0));
        // division by a literal zero must survive folding so evaluation
        // reports the domain error
        assert!(matches!(parse("1/0").unwrap(), Expr::Bin(BinOp::Div, ..)));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse("x^2-y^2").unwrap();
        let b = parse("  x ^ 2 -\ty ^ 2 ").unwrap();
        assert_eq!(a, b);
    }
}
