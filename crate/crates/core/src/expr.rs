//! Parser and canonical printer for rational-function expressions.
//!
//! Grammar (whitespace ignored, no implicit multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := 'x' | 'w' | uint | '(' expr ')'
//! ```
//!
//! Equations additionally accept the symbol `y` (or `Y`); see [`parse_equation`].

use thiserror::Error;

use crate::gf::FieldSpec;
use crate::poly::{Polynomial, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("`w` at position {pos} is not available over the prime field F_{q}")]
    NoGenerator { pos: usize, q: u32 },
    #[error("`y` at position {pos} is only allowed in equations")]
    UnexpectedY { pos: usize },
    #[error("division by an expression involving y at position {pos}")]
    DivisionByY { pos: usize },
    #[error("exponent at position {pos} is too large")]
    ExponentTooLarge { pos: usize },
}

/// Parsed expression tree. `Neg` is unary minus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Int(u64),
    X,
    Y,
    W,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>, usize),
    Pow(Box<ExprAst>, u64),
    Neg(Box<ExprAst>),
    Group(Box<ExprAst>),
}

const MAX_EXPONENT: u64 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_y: bool,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let k = self.uint()?.ok_or(ExprError::Syntax { pos: at, msg: "expected exponent".into() })?;
            if k > MAX_EXPONENT {
                return Err(ExprError::ExponentTooLarge { pos: at });
            }
            if self.peek() == Some(b'^') {
                return self.err("chained exponents need parentheses");
            }
            return Ok(ExprAst::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<ExprAst, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn uint(&mut self) -> Result<Option<u64>, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().map(Some).map_err(|_| ExprError::Syntax { pos: start, msg: "integer literal too large".into() })
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'x') => {
                self.pos += 1;
                Ok(ExprAst::X)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(ExprAst::W)
            }
            Some(b'y') | Some(b'Y') => {
                if !self.allow_y {
                    return Err(ExprError::UnexpectedY { pos: self.pos });
                }
                self.pos += 1;
                Ok(ExprAst::Y)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(ExprAst::Group(Box::new(inner)))
            }
            Some(c) if c.is_ascii_digit() => Ok(ExprAst::Int(self.uint()?.expect("digit present"))),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }
}

fn parse_ast(text: &str, allow_y: bool) -> Result<ExprAst, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, allow_y };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

/// Parses into an expression tree without lowering.
pub fn parse_ast_only(text: &str) -> Result<ExprAst, ExprError> {
    parse_ast(text, false)
}

/// Polynomial in y with coefficients in F_q(x), ascending.
type YPoly = Vec<RationalFunction>;

fn ytrim(mut v: YPoly) -> YPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn yadd(a: &YPoly, b: &YPoly, field: &FieldSpec, sub: bool) -> YPoly {
    let n = a.len().max(b.len());
    let zero = RationalFunction::zero(field);
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            if sub {
                x.sub(y)
            } else {
                x.add(y)
            }
        })
        .collect();
    ytrim(v)
}

fn ymul(a: &YPoly, b: &YPoly, field: &FieldSpec) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![RationalFunction::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = v[i + j].add(&x.mul(y));
        }
    }
    ytrim(v)
}

fn lower(ast: &ExprAst, field: &FieldSpec) -> Result<YPoly, ExprError> {
    let c = |r: RationalFunction| ytrim(vec![r]);
    Ok(match ast {
        ExprAst::Int(n) => c(RationalFunction::constant(&field.from_int((*n % field.p() as u64) as i64))),
        ExprAst::X => c(RationalFunction::x(field)),
        ExprAst::Y => vec![RationalFunction::zero(field), RationalFunction::one(field)],
        ExprAst::W => c(RationalFunction::constant(&field.generator())),
        ExprAst::Add(a, b) => yadd(&lower(a, field)?, &lower(b, field)?, field, false),
        ExprAst::Sub(a, b) => yadd(&lower(a, field)?, &lower(b, field)?, field, true),
        ExprAst::Neg(a) => yadd(&Vec::new(), &lower(a, field)?, field, true),
        ExprAst::Mul(a, b) => ymul(&lower(a, field)?, &lower(b, field)?, field),
        ExprAst::Div(a, b, pos) => {
            let num = lower(a, field)?;
            let den = lower(b, field)?;
            if den.len() > 1 {
                return Err(ExprError::DivisionByY { pos: *pos });
            }
            let d = den.first().ok_or(ExprError::DivisionByZero { pos: *pos })?;
            let inv = d.inv().map_err(|_| ExprError::DivisionByZero { pos: *pos })?;
            num.iter().map(|t| t.mul(&inv)).collect()
        }
        ExprAst::Pow(a, k) => {
            let base = lower(a, field)?;
            if base.len() <= 1 {
                let r = base.first().cloned().unwrap_or_else(|| RationalFunction::zero(field));
                c(r.pow(*k as i64).expect("nonnegative exponent"))
            } else {
                let mut acc = c(RationalFunction::one(field));
                for _ in 0..*k {
                    acc = ymul(&acc, &base, field);
                }
                acc
            }
        }
        ExprAst::Group(a) => lower(a, field)?,
    })
}

/// Rejects `w` over prime fields and returns the position of the first offending use.
fn check_w(text: &str, ast: &ExprAst, field: &FieldSpec) -> Result<(), ExprError> {
    fn has_w(a: &ExprAst) -> bool {
        match a {
            ExprAst::W => true,
            ExprAst::Int(_) | ExprAst::X | ExprAst::Y => false,
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b, _) => {
                has_w(a) || has_w(b)
            }
            ExprAst::Pow(a, _) | ExprAst::Neg(a) | ExprAst::Group(a) => has_w(a),
        }
    }
    if field.is_prime_field() && has_w(ast) {
        let pos = text.find('w').unwrap_or(0);
        return Err(ExprError::NoGenerator { pos, q: field.q() });
    }
    Ok(())
}

/// Parses an expression in `x` (and `w`) into a reduced rational function.
pub fn parse_expr(text: &str, field: &FieldSpec) -> Result<RationalFunction, ExprError> {
    let ast = parse_ast(text, false)?;
    check_w(text, &ast, field)?;
    let v = lower(&ast, field)?;
    Ok(v.into_iter().next().unwrap_or_else(|| RationalFunction::zero(field)))
}

/// Parses an equation `P(y, x)` (an optional `= 0` suffix is accepted) into
/// its coefficients in y, ascending.
pub fn parse_equation(text: &str, field: &FieldSpec) -> Result<Vec<RationalFunction>, ExprError> {
    let body = match text.rfind('=') {
        Some(i) if text[i + 1..].trim() == "0" => &text[..i],
        _ => text,
    };
    let ast = parse_ast(body, true)?;
    check_w(body, &ast, field)?;
    lower(&ast, field)
}

/// Canonical text of a rational function; `parse_expr` inverts it.
pub fn format_canonical(f: &RationalFunction) -> String {
    f.to_string()
}

/// Canonical text of a polynomial.
pub fn format_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

/// Value equality of two expressions over `field`.
pub fn exprs_equal(a: &str, b: &str, field: &FieldSpec) -> Result<bool, ExprError> {
    Ok(parse_expr(a, field)? == parse_expr(b, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn scaled_cubic() {
        let f3 = f(3);
        let v = parse_expr("2*(x^3+2*x+2)", &f3).unwrap();
        assert_eq!(v.to_string(), "2*x^3 + x + 1");
        assert_eq!(v, parse_expr("2 * x^3 + x + 1", &f3).unwrap());
    }

    #[test]
    fn common_denominator() {
        let f2 = f(2);
        assert_eq!(format_canonical(&parse_expr("1/x + 1/(x+1)", &f2).unwrap()), "1/(x^2 + x)");
        assert_eq!(format_canonical(&parse_expr("x^0", &f2).unwrap()), "1");
        assert_eq!(format_canonical(&parse_expr("x - x", &f2).unwrap()), "0");
    }

    #[test]
    fn equality_checks() {
        let f3 = f(3);
        assert!(exprs_equal("(x+1)^2/x", "(x^2+2*x+1)/x", &f3).unwrap());
        assert!(!exprs_equal("x", "x+1", &f3).unwrap());
        let f8 = FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert!(exprs_equal("w^3", "w+1", &f8).unwrap());
    }

    #[test]
    fn unary_minus() {
        let f3 = f(3);
        assert_eq!(parse_expr("-x", &f3).unwrap(), parse_expr("2*x", &f3).unwrap());
        assert_eq!(parse_expr("-(x+1)^2", &f3).unwrap().to_string(), "2*x^2 + x + 2");
    }

    #[test]
    fn errors() {
        let f3 = f(3);
        assert!(matches!(parse_expr("2x", &f3), Err(ExprError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("x+", &f3), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("(x", &f3), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("1/(x-x)", &f3), Err(ExprError::DivisionByZero { .. })));
        assert!(matches!(parse_expr("1/3", &f3), Err(ExprError::DivisionByZero { .. })));
        assert!(matches!(parse_expr("w+1", &f3), Err(ExprError::NoGenerator { pos: 0, q: 3 })));
        assert!(matches!(parse_expr("x*y", &f3), Err(ExprError::UnexpectedY { .. })));
        assert!(matches!(parse_expr("x^2^3", &f3), Err(ExprError::Syntax { .. })));
        assert!(parse_expr("x^99999", &f3).is_err());
    }

    #[test]
    fn equations() {
        let f2 = f(2);
        let eq = parse_equation("y^4 + y^3 + (x^3 + x)*y^2 + x^4*y + x^8 = 0", &f2).unwrap();
        let s: Vec<String> = eq.iter().map(|c| c.to_string()).collect();
        assert_eq!(s, ["x^8", "x^4", "x^3 + x", "1", "1"]);
        assert!(matches!(parse_equation("1/y", &f2), Err(ExprError::DivisionByY { .. })));
    }

    #[test]
    fn extension_field_rendering_round_trips() {
        let f16 = f(16);
        let v = parse_expr("w^7/x + w/(x+w^14)", &f16).unwrap();
        let s = format_canonical(&v);
        assert_eq!(parse_expr(&s, &f16).unwrap(), v);
    }
}
