//! Polynomial expressions: a recursive-descent parser and a canonical printer.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | atom ('^' uint)?
//! atom   := uint | 'i' | varname | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `2x` is an error. Division is only
//! allowed by a nonzero constant, which is how rational literals such as
//! `3/2` and data such as `x^2/4` are written. `i` is the imaginary unit and
//! is rejected unless the field is `Qi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("parse error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("imaginary unit `i` at {pos} is not allowed over field Q")]
    ImaginaryUnit { pos: usize },
    #[error("division at {pos} needs a nonzero constant divisor")]
    BadDivisor { pos: usize },
    #[error("invalid variable list: {0}")]
    InvalidVars(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((start, Token::Int(text[start..pos].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                out.push((start, Token::Ident(text[start..pos].to_string())));
                continue;
            }
            other => {
                return Err(ParseError::Syntax { pos, msg: format!("unexpected character `{other}`") });
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Const(Scalar),
    Var(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    /// Division by a constant subexpression; `pos` is the `/` offset.
    Div {
        num: Box<ExprAst>,
        den: Box<ExprAst>,
        pos: usize,
    },
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    lhs = ExprAst::Div { num: Box::new(lhs), den: Box::new(self.factor()?), pos };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                return Ok(ExprAst::Neg(Box::new(self.factor()?)));
            }
            Some(Token::Plus) => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(&n)
                        .map_err(|_| ParseError::Syntax { pos, msg: format!("exponent {n} too large") })?;
                    return Ok(ExprAst::Pow(Box::new(base), e));
                }
                _ => return Err(ParseError::Syntax { pos, msg: "expected a non-negative integer exponent".into() }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Int(n)) => Ok(ExprAst::Const(Scalar::from_rational(self.field, BigRational::from_integer(n)))),
            Some(Token::Ident(name)) => {
                if name == "i" {
                    return match self.field {
                        Field::Qi => Ok(ExprAst::Const(Scalar::i())),
                        Field::Q => Err(ParseError::ImaginaryUnit { pos }),
                    };
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(idx) => Ok(ExprAst::Var(idx)),
                    None => Err(ParseError::UnknownVariable { name, pos }),
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: self.tokens.get(self.at - 1).map_or(self.end, |t| t.0),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(other) => Err(ParseError::Syntax { pos, msg: format!("unexpected token {other:?}") }),
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` into an expression tree over the given variables and field.
pub fn parse_ast(text: &str, vars: &[String], field: Field) -> Result<ExprAst, ParseError> {
    validate_var_names(vars)?;
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { tokens, at: 0, end: text.len(), vars, field };
    let ast = p.expr()?;
    if p.at < p.tokens.len() {
        let pos = p.pos();
        let msg = match p.peek() {
            Some(Token::Ident(_)) | Some(Token::Int(_)) | Some(Token::LParen) => {
                "implicit multiplication is not allowed; use `*`".to_string()
            }
            other => format!("unexpected token {:?}", other.expect("in range")),
        };
        return Err(ParseError::Syntax { pos, msg });
    }
    Ok(ast)
}

impl ExprAst {
    /// Evaluates the tree into a canonical polynomial.
    pub fn lower(&self, arity: usize, field: Field) -> Result<Poly, ParseError> {
        Ok(match self {
            ExprAst::Const(c) => Poly::constant(arity, c.clone()),
            ExprAst::Var(i) => Poly::var(arity, field, *i).map_err(|e| ParseError::InvalidVars(e.to_string()))?,
            ExprAst::Add(a, b) => &a.lower(arity, field)? + &b.lower(arity, field)?,
            ExprAst::Sub(a, b) => &a.lower(arity, field)? - &b.lower(arity, field)?,
            ExprAst::Mul(a, b) => &a.lower(arity, field)? * &b.lower(arity, field)?,
            ExprAst::Neg(a) => -&a.lower(arity, field)?,
            ExprAst::Pow(a, e) => a.lower(arity, field)?.pow(*e),
            ExprAst::Div { num, den, pos } => {
                let d = den.lower(arity, field)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(ParseError::BadDivisor { pos: *pos });
                }
                let inv = d.constant_term().inv().expect("nonzero");
                num.lower(arity, field)?.checked_scale(&inv).expect("same field")
            }
        })
    }
}

/// Parses a polynomial over the ordered variable list `vars` (which fixes the arity).
pub fn parse_polynomial(text: &str, vars: &[String], field: Field) -> Result<Poly, ParseError> {
    parse_ast(text, vars, field)?.lower(vars.len(), field)
}

/// Checks that a variable list is nonempty, has unique identifier names and
/// does not use the reserved name `i`.
pub fn validate_var_names(vars: &[String]) -> Result<(), ParseError> {
    if vars.is_empty() {
        return Err(ParseError::InvalidVars("at least one variable is required".into()));
    }
    for (k, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::InvalidVars(format!("`{v}` is not an identifier")));
        }
        if v == "i" {
            return Err(ParseError::InvalidVars("`i` is reserved for the imaginary unit".into()));
        }
        if vars[..k].contains(v) {
            return Err(ParseError::InvalidVars(format!("duplicate variable `{v}`")));
        }
    }
    Ok(())
}

/// `x, y, z` for up to three variables, `x1 .. xd` beyond.
pub fn default_var_names(arity: usize) -> Vec<String> {
    if arity <= 3 {
        ["x", "y", "z"][..arity].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=arity).map(|k| format!("x{k}")).collect()
    }
}

/// `x^2*y` style product, `None` for the constant monomial.
pub fn format_monomial(m: &Monomial, names: &[String]) -> Option<String> {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

fn fmt_abs(r: &BigRational) -> String {
    let a = r.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn fmt_signed(r: &BigRational) -> String {
    if r.is_negative() {
        format!("-{}", fmt_abs(r))
    } else {
        fmt_abs(r)
    }
}

/// Returns `(negative, magnitude text)` for one term.
fn format_term(c: &Scalar, mono: Option<String>) -> (bool, String) {
    let attach = |coeff: String, unit: bool| match (&mono, unit) {
        (Some(m), true) => m.clone(),
        (Some(m), false) => format!("{coeff}*{m}"),
        (None, _) => coeff,
    };
    let re = c.re();
    let im = c.im().cloned().unwrap_or_else(BigRational::zero);
    if im.is_zero() {
        let a = re.abs();
        return (re.is_negative(), attach(fmt_abs(re), a == BigRational::from_integer(1.into())));
    }
    if re.is_zero() {
        let unit = if im.abs() == BigRational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}*i", fmt_abs(&im))
        };
        return (im.is_negative(), attach(unit, false));
    }
    let im_part =
        if im.abs() == BigRational::from_integer(1.into()) { "i".to_string() } else { format!("{}*i", fmt_abs(&im)) };
    let sign = if im.is_negative() { "-" } else { "+" };
    (false, attach(format!("({} {sign} {im_part})", fmt_signed(re)), false))
}

/// Canonical text: terms by descending total degree, within a degree in basis
/// order (`x^2`, `x*y`, `y^2`). `parse_polynomial` inverts it exactly.
pub fn format_polynomial(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.0.degree()));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let (neg, body) = format_term(c, format_monomial(m, names));
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn circle() {
        let xy = names(&["x", "y"]);
        let p = parse_polynomial("x^2 + y^2 - 1", &xy, Field::Q).unwrap();
        let want = Poly::from_int_terms(2, Field::Q, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]).unwrap();
        assert_eq!(p, want);
        assert_eq!(format_polynomial(&p, &xy), "x^2 + y^2 - 1");
    }

    #[test]
    fn rational_coefficient() {
        let xyz = names(&["x", "y", "z"]);
        let p = parse_polynomial("3/2*x^2*y - z + 1", &xyz, Field::Q).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Monomial::new(vec![2, 1, 0])), Some(&Scalar::ratio(Field::Q, 3, 2)));
        assert_eq!(format_polynomial(&p, &xyz), "3/2*x^2*y - z + 1");
    }

    #[test]
    fn imaginary_unit_gated_by_field() {
        let xy = names(&["x", "y"]);
        assert_eq!(parse_polynomial("x^2 + i*y", &xy, Field::Q).unwrap_err(), ParseError::ImaginaryUnit { pos: 6 });
        let p = parse_polynomial("x^2 + i*y", &xy, Field::Qi).unwrap();
        assert_eq!(format_polynomial(&p, &xy), "x^2 + i*y");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(format_polynomial(&Poly::zero(2, Field::Q), &names(&["x", "y"])), "0");
    }

    #[test]
    fn division_and_unary_minus() {
        let xy = names(&["x", "y"]);
        let p = parse_polynomial("x^2/4+y^2-1", &xy, Field::Q).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0])), Some(&Scalar::ratio(Field::Q, 1, 4)));
        let q = parse_polynomial("-x^2 - -y", &xy, Field::Q).unwrap();
        assert_eq!(format_polynomial(&q, &xy), "-x^2 + y");
        assert_eq!(parse_polynomial("x/y", &xy, Field::Q).unwrap_err(), ParseError::BadDivisor { pos: 1 });
        assert_eq!(parse_polynomial("x/(1-1)", &xy, Field::Q).unwrap_err(), ParseError::BadDivisor { pos: 1 });
    }

    #[test]
    fn errors_report_positions() {
        let xy = names(&["x", "y"]);
        assert!(matches!(parse_polynomial("2x", &xy, Field::Q), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("x + w", &xy, Field::Q), Err(ParseError::UnknownVariable { pos: 4, .. })));
        assert!(matches!(parse_polynomial("(x + y", &xy, Field::Q), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^y", &xy, Field::Q), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x $ y", &xy, Field::Q), Err(ParseError::Syntax { pos: 2, .. })));
        assert_eq!(parse_polynomial("   ", &xy, Field::Q).unwrap_err(), ParseError::Empty);
    }

    #[test]
    fn var_list_validation() {
        assert!(validate_var_names(&[]).is_err());
        assert!(validate_var_names(&names(&["x", "x"])).is_err());
        assert!(validate_var_names(&names(&["i"])).is_err());
        assert!(validate_var_names(&names(&["1x"])).is_err());
        assert!(validate_var_names(&names(&["x_1", "y2"])).is_ok());
    }

    #[test]
    fn gaussian_coefficients_print_and_parse() {
        let xyz = names(&["x", "y", "z"]);
        let p = parse_polynomial("(z - x - i*y)^2", &xyz, Field::Qi).unwrap();
        let text = format_polynomial(&p, &xyz);
        assert_eq!(text, "x^2 + 2*i*x*y - y^2 - 2*x*z - 2*i*y*z + z^2");
        assert_eq!(parse_polynomial(&text, &xyz, Field::Qi).unwrap(), p);
        let q = parse_polynomial("(1/2 - 3*i)*x - (2 + i)", &xyz, Field::Qi).unwrap();
        let text = format_polynomial(&q, &xyz);
        assert_eq!(text, "(1/2 - 3*i)*x + (-2 - i)");
        assert_eq!(parse_polynomial(&text, &xyz, Field::Qi).unwrap(), q);
    }
}
