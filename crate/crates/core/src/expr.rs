//! Right-hand side expressions: parser, printer and interval evaluator.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! rhs    := expr (';' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := number | 'x' | 'y' DIGITS | call | '(' expr ')'
//! call   := ('abs' | 'scbrt') '(' expr ')' | ('min' | 'max') '(' expr ',' expr ')'
//! number := DIGITS ('.' DIGITS)? (('e' | 'E') ('+' | '-')? DIGITS)?
//! ```
//!
//! `y` alone is accepted as `y1` when the dimension is 1.

use std::fmt;

use thiserror::Error;

use crate::interval::{IBox, Interval, Precision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {}: {message}", .position + 1)]
    Syntax { position: usize, message: String },
    #[error("dimension error at column {}: y{index} exceeds dimension {dim}", .position + 1)]
    Dimension {
        position: usize,
        index: usize,
        dim: usize,
    },
    #[error("expected {expected} component(s) separated by ';', found {found}")]
    ComponentCount { expected: usize, found: usize },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Dimension { position, .. } => {
                Some(*position)
            }
            ParseError::ComponentCount { .. } => None,
        }
    }

    /// The offending source line with a caret under the error column.
    pub fn annotate(&self, source: &str) -> String {
        match self.position() {
            Some(p) => format!("{self}\n  {source}\n  {}^", " ".repeat(p)),
            None => self.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// A literal with its source text and enclosure.
    Const { text: String, value: Interval },
    X,
    /// `y_{j+1}`, zero-based.
    Y(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Scbrt(Box<Expr>),
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const {
            text: crate::interval::round::exact_decimal(v.abs()),
            value: Interval::point(v.abs()),
        }
        .negate_if(v < 0.0)
    }

    fn negate_if(self, neg: bool) -> Expr {
        if neg {
            Expr::Neg(Box::new(self))
        } else {
            self
        }
    }

    /// Interval evaluation; `args[0]` is x, `args[j]` is y_j.
    pub fn eval(&self, args: &[Interval], prec: Precision) -> Interval {
        let r = match self {
            Expr::Const { value, .. } => *value,
            Expr::X => args[0],
            Expr::Y(j) => args[j + 1],
            Expr::Add(a, b) => a.eval(args, prec) + b.eval(args, prec),
            Expr::Sub(a, b) => a.eval(args, prec) - b.eval(args, prec),
            Expr::Mul(a, b) => {
                // x*x style squares get the tight even-power enclosure
                if a == b {
                    a.eval(args, prec).sqr()
                } else {
                    a.eval(args, prec) * b.eval(args, prec)
                }
            }
            Expr::Neg(a) => -a.eval(args, prec),
            Expr::Abs(a) => a.eval(args, prec).abs(),
            Expr::Min(a, b) => a.eval(args, prec).min(b.eval(args, prec)),
            Expr::Max(a, b) => a.eval(args, prec).max(b.eval(args, prec)),
            Expr::Scbrt(a) => a.eval(args, prec).scbrt(),
        };
        r.coarsen(prec)
    }

    /// Value and partial derivative with respect to `args[var]`, both as
    /// enclosures over the box. Kinks of `abs`, `min` and `max` contribute the
    /// hull of the one-sided derivatives. `None` when the derivative is
    /// unbounded on the box (`scbrt` of an argument containing 0 that
    /// depends on the variable).
    pub fn deriv(&self, args: &[Interval], var: usize, prec: Precision) -> Option<(Interval, Interval)> {
        let (v, d) = match self {
            Expr::Const { value, .. } => (*value, Interval::ZERO),
            Expr::X => (args[0], if var == 0 { Interval::ONE } else { Interval::ZERO }),
            Expr::Y(j) => (args[j + 1], if var == j + 1 { Interval::ONE } else { Interval::ZERO }),
            Expr::Add(a, b) => {
                let ((av, ad), (bv, bd)) = (a.deriv(args, var, prec)?, b.deriv(args, var, prec)?);
                (av + bv, ad + bd)
            }
            Expr::Sub(a, b) => {
                let ((av, ad), (bv, bd)) = (a.deriv(args, var, prec)?, b.deriv(args, var, prec)?);
                (av - bv, ad - bd)
            }
            Expr::Mul(a, b) => {
                let ((av, ad), (bv, bd)) = (a.deriv(args, var, prec)?, b.deriv(args, var, prec)?);
                (av * bv, ad * bv + av * bd)
            }
            Expr::Neg(a) => {
                let (av, ad) = a.deriv(args, var, prec)?;
                (-av, -ad)
            }
            Expr::Abs(a) => {
                let (av, ad) = a.deriv(args, var, prec)?;
                let d = if av.lo() > 0.0 {
                    ad
                } else if av.hi() < 0.0 {
                    -ad
                } else {
                    ad.hull(-ad)
                };
                (av.abs(), d)
            }
            Expr::Min(a, b) | Expr::Max(a, b) => {
                let ((av, ad), (bv, bd)) = (a.deriv(args, var, prec)?, b.deriv(args, var, prec)?);
                let is_min = matches!(self, Expr::Min(..));
                let (first, second) = if is_min { (av, bv) } else { (bv, av) };
                let d = if first.hi() < second.lo() {
                    if is_min { ad } else { bd }
                } else if second.hi() < first.lo() {
                    if is_min { bd } else { ad }
                } else {
                    ad.hull(bd)
                };
                (if is_min { av.min(bv) } else { av.max(bv) }, d)
            }
            Expr::Scbrt(a) => {
                let (av, ad) = a.deriv(args, var, prec)?;
                let c = av.scbrt();
                if ad == Interval::ZERO {
                    (c, Interval::ZERO)
                } else if av.contains(0.0) || av.mig() < 1e-300 {
                    return None;
                } else {
                    // d/dt cbrt(t) = 1 / (3 cbrt(t)^2)
                    let den = c.sqr() * Interval::point(3.0);
                    let inv = Interval::new(
                        crate::interval::round::div_down(1.0, den.hi()),
                        crate::interval::round::div_up(1.0, den.lo()),
                    );
                    (c, inv * ad)
                }
            }
        };
        Some((v.coarsen(prec), d.coarsen(prec)))
    }

    /// Pointwise evaluation in plain f64 (no rounding control); for oracles.
    pub fn eval_f64(&self, args: &[f64]) -> f64 {
        match self {
            Expr::Const { value, .. } => value.mid(),
            Expr::X => args[0],
            Expr::Y(j) => args[j + 1],
            Expr::Add(a, b) => a.eval_f64(args) + b.eval_f64(args),
            Expr::Sub(a, b) => a.eval_f64(args) - b.eval_f64(args),
            Expr::Mul(a, b) => a.eval_f64(args) * b.eval_f64(args),
            Expr::Neg(a) => -a.eval_f64(args),
            Expr::Abs(a) => a.eval_f64(args).abs(),
            Expr::Min(a, b) => a.eval_f64(args).min(b.eval_f64(args)),
            Expr::Max(a, b) => a.eval_f64(args).max(b.eval_f64(args)),
            Expr::Scbrt(a) => a.eval_f64(args).cbrt(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            _ => 4,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const { text, .. } => f.write_str(text),
            Expr::X => f.write_str("x"),
            Expr::Y(j) => write!(f, "y{}", j + 1),
            Expr::Add(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(" + ")?;
                b.write_child(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(" - ")?;
                b.write_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_child(f, 2)?;
                f.write_str("*")?;
                b.write_child(f, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_child(f, 3)
            }
            Expr::Abs(a) => write!(f, "abs({a})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
            Expr::Scbrt(a) => write!(f, "scbrt({a})"),
        }
    }
}

/// A right-hand side `f: R x R^n -> R^n` given componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsDef {
    dim: usize,
    components: Vec<Expr>,
}

impl RhsDef {
    pub fn new(components: Vec<Expr>) -> RhsDef {
        assert!(!components.is_empty());
        RhsDef {
            dim: components.len(),
            components,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// Enclosure of `f` over the box `(x, y_1, ..., y_n)`.
    pub fn eval_box(&self, b: &IBox, prec: Precision) -> IBox {
        assert_eq!(b.dim(), self.dim + 1, "argument box must have length n+1");
        IBox::new(
            self.components
                .iter()
                .map(|e| e.eval(b.components(), prec))
                .collect(),
        )
    }
}

impl RhsDef {
    /// Bound on the max-norm operator norm of `∂f/∂y` over the box, `None`
    /// when some partial derivative is unbounded there.
    pub fn lipschitz_y(&self, b: &IBox, prec: Precision) -> Option<f64> {
        let mut worst = 0.0f64;
        for e in &self.components {
            let mut row = 0.0;
            for var in 1..=self.dim {
                let (_, d) = e.deriv(b.components(), var, prec)?;
                row = crate::interval::round::add_up(row, d.mag());
            }
            worst = worst.max(row);
        }
        Some(worst)
    }
}

impl fmt::Display for RhsDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses `text` as an `n`-component right-hand side.
pub fn parse(text: &str, n: usize) -> Result<RhsDef, ParseError> {
    assert!(n >= 1, "dimension must be at least 1");
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        dim: n,
        len: text.len(),
    };
    let mut components = vec![p.expr()?];
    while p.eat(&Tok::Semi) {
        components.push(p.expr()?);
    }
    if let Some(t) = p.peek() {
        return Err(ParseError::Syntax {
            position: t.pos,
            message: format!("unexpected {}", t.tok.describe()),
        });
    }
    if components.len() != n {
        return Err(ParseError::ComponentCount {
            expected: n,
            found: components.len(),
        });
    }
    Ok(RhsDef::new(components))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    Semi,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number '{s}'"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'.' {
                    j += 1;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lit = &text[i..j];
                if !lit.bytes().any(|b| b.is_ascii_digit()) {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "malformed number".into(),
                    });
                }
                i = j;
                out.push(Token {
                    tok: Tok::Num(lit.to_string()),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let id = &text[i..j];
                i = j;
                out.push(Token {
                    tok: Tok::Ident(id.to_string()),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("invalid character '{ch}'"),
                });
            }
        };
        i += 1;
        out.push(Token { tok, pos: start });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek().map(|x| &x.tok) == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.len)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", t.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.tok.describe(),
            None => "end of input".into(),
        };
        ParseError::Syntax {
            position: self.here(),
            message: format!("{what}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("expected an operand"));
        };
        match tok.tok {
            Tok::Num(text) => {
                self.pos += 1;
                let value = Interval::from_decimal(&text).ok_or(ParseError::Syntax {
                    position: tok.pos,
                    message: format!("number '{text}' out of range"),
                })?;
                Ok(Expr::Const { text, value })
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                self.ident(&name, tok.pos)
            }
            _ => Err(self.unexpected("expected an operand")),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        match name {
            "x" => return Ok(Expr::X),
            "y" if self.dim == 1 => return Ok(Expr::Y(0)),
            "abs" | "scbrt" => {
                self.expect(Tok::LParen)?;
                let a = Box::new(self.expr()?);
                self.expect(Tok::RParen)?;
                return Ok(if name == "abs" {
                    Expr::Abs(a)
                } else {
                    Expr::Scbrt(a)
                });
            }
            "min" | "max" => {
                self.expect(Tok::LParen)?;
                let a = Box::new(self.expr()?);
                self.expect(Tok::Comma)?;
                let b = Box::new(self.expr()?);
                self.expect(Tok::RParen)?;
                return Ok(if name == "min" {
                    Expr::Min(a, b)
                } else {
                    Expr::Max(a, b)
                });
            }
            _ => {}
        }
        if let Some(digits) = name.strip_prefix('y') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let index: usize = digits.parse().map_err(|_| ParseError::Syntax {
                    position: pos,
                    message: format!("bad variable index in '{name}'"),
                })?;
                if index == 0 {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "variables are numbered from y1".into(),
                    });
                }
                if index > self.dim {
                    return Err(ParseError::Dimension {
                        position: pos,
                        index,
                        dim: self.dim,
                    });
                }
                return Ok(Expr::Y(index - 1));
            }
        }
        Err(ParseError::Syntax {
            position: pos,
            message: format!("unknown identifier '{name}'"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(t: &str) -> RhsDef {
        parse(t, 1).unwrap()
    }

    fn pt(x: f64, y: f64) -> IBox {
        IBox::point(&[x, y])
    }

    #[test]
    fn parses_amplifier() {
        let r = p1("9*x*(1-x)*scbrt(y1)");
        let expected = Expr::Mul(
            Box::new(Expr::Mul(
                Box::new(Expr::Mul(Box::new(Expr::constant(9.0)), Box::new(Expr::X))),
                Box::new(Expr::Sub(Box::new(Expr::constant(1.0)), Box::new(Expr::X))),
            )),
            Box::new(Expr::Scbrt(Box::new(Expr::Y(0)))),
        );
        assert_eq!(r.components()[0], expected);
    }

    #[test]
    fn zero_rhs_in_three_dimensions() {
        let r = parse("0;0;0", 3).unwrap();
        assert_eq!(r.dim(), 3);
        let out = r.eval_box(&IBox::point(&[1.0, 2.0, 3.0, 4.0]), Precision::MAX);
        assert!(out.iter().all(|c| *c == Interval::ZERO));
    }

    #[test]
    fn rejects_invalid_token() {
        let err = parse("y2 + @", 2).unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                position: 5,
                message: "invalid character '@'".into()
            }
        );
        assert!(err.annotate("y2 + @").ends_with("     ^"));
    }

    #[test]
    fn rejects_out_of_range_variable() {
        assert!(matches!(
            parse("y1 + y3", 2),
            Err(ParseError::Dimension { position: 5, index: 3, dim: 2 })
        ));
    }

    #[test]
    fn rejects_unknown_identifier_and_arity() {
        assert!(matches!(parse("sin(x)", 1), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse("min(x)", 1), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse("abs(x, y1)", 1), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse("x +", 1), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse("x; x", 1), Err(ParseError::ComponentCount { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let r = p1("1 - 2 - 3*x");
        assert_eq!(r.to_string(), "1 - 2 - 3*x");
        let v = r.eval_box(&pt(2.0, 0.0), Precision::MAX);
        assert_eq!(v[0], Interval::point(-7.0));
        let r = p1("1 - (2 - 3)");
        assert_eq!(r.to_string(), "1 - (2 - 3)");
        assert_eq!(r.eval_box(&pt(0.0, 0.0), Precision::MAX)[0], Interval::point(2.0));
    }

    #[test]
    fn amplifier_evaluations() {
        let s = p1("9*x*(1-x)*scbrt(y1)");
        let v = s.eval_box(&pt(0.5, 1.0), Precision::MAX);
        assert_eq!(v[0], Interval::point(2.25));
        let zero = IBox::new(vec![Interval::new(0.0, 1.0), Interval::ZERO]);
        assert_eq!(s.eval_box(&zero, Precision::MAX)[0], Interval::ZERO);
        // the grid maximum of 9x(1-x)y^{1/3} on [0,1]^2 is 2.25 at (1/2, 1)
        let mut grid_max = 0.0f64;
        for i in 0..=100 {
            for j in 0..=100 {
                let (x, y) = (i as f64 / 100.0, j as f64 / 100.0);
                grid_max = grid_max.max(9.0 * x * (1.0 - x) * y.cbrt());
            }
        }
        assert_eq!(grid_max, 2.25);
        let full = IBox::new(vec![Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)]);
        let enc = s.eval_box(&full, Precision::MAX)[0];
        assert!(enc.lo() <= 0.0 && enc.hi() >= grid_max);
    }

    #[test]
    fn bare_y_only_in_one_dimension() {
        assert_eq!(p1("y").components()[0], Expr::Y(0));
        assert!(parse("y; y1", 2).is_err());
    }

    #[test]
    fn derivative_enclosures() {
        let f = parse("9*x*(1-x)*scbrt(y1)", 1).unwrap();
        let at = |x: f64, y: f64| IBox::new(vec![Interval::point(x), Interval::new(y, y + 1e-9)]);
        assert_eq!(f.lipschitz_y(&at(0.5, -1e-10), Precision::MAX), None);
        // 9/4 · (1/3) · 8^{-2/3} = 3/16
        let l = f.lipschitz_y(&at(0.5, 8.0), Precision::MAX).unwrap();
        assert!((l - 0.1875).abs() < 1e-6, "{l}");
        let g = parse("abs(y1) + min(y1, 2*y2); y1*y2", 2).unwrap();
        let b = IBox::new(vec![Interval::ZERO, Interval::new(-1.0, 1.0), Interval::new(3.0, 4.0)]);
        // row 1: |±1| + 1 = 2 on y1, 0 on y2; row 2: |y2| + |y1| <= 5
        assert_eq!(g.lipschitz_y(&b, Precision::MAX), Some(5.0));
        let h = parse("x*scbrt(x) + y1", 1).unwrap();
        let b = IBox::new(vec![Interval::new(-1.0, 1.0), Interval::ZERO]);
        assert_eq!(h.lipschitz_y(&b, Precision::MAX), Some(1.0));
    }
}
