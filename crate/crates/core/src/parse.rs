//! Recursive-descent parser shared by every element syntax.
//!
//! The grammar is ordinary infix arithmetic over integer literals and
//! single-letter symbols:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := integer | symbol | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Which symbols exist and what the operators mean is decided by the target
//! type through [`Operand`].

use num_rational::Rational64;
use thiserror::Error;

use crate::algebra::CElem;
use crate::dpoly::HPoly;
use crate::gf::{FieldCtx, FqElem};
use crate::kfield::{KCtx, KElem};
use crate::oracle::{Exponent, FuncElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// A value type the parser can build.
pub(crate) trait Operand: Sized + Clone {
    type Ctx;
    fn int(ctx: &Self::Ctx, n: i64) -> Self;
    fn symbol(ctx: &Self::Ctx, name: &str) -> Option<Self>;
    fn add(self, rhs: Self) -> Result<Self, String>;
    fn sub(self, rhs: Self) -> Result<Self, String>;
    fn mul(self, rhs: Self) -> Result<Self, String>;
    fn div(self, rhs: Self) -> Result<Self, String>;
    fn neg(self) -> Self;
    fn pow(self, e: Rational64) -> Result<Self, String>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

struct Lexer;

impl Lexer {
    fn run(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|p| p.1).collect();
                let n = text
                    .parse::<i64>()
                    .map_err(|_| ParseError { pos, msg: format!("integer literal {text} out of range") })?;
                out.push((pos, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
            } else if "+-*/^()".contains(c) {
                out.push((pos, Tok::Op(c)));
                i += 1;
            } else {
                return Err(ParseError { pos, msg: format!("unexpected character {c:?}") });
            }
        }
        Ok(out)
    }
}

struct Parser<'a, T: Operand> {
    ctx: &'a T::Ctx,
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl<'a, T: Operand> Parser<'a, T> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.i) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn err<R>(&self, msg: impl Into<String>) -> Result<R, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn lift<R>(pos: usize, r: Result<R, String>) -> Result<R, ParseError> {
        r.map_err(|msg| ParseError { pos, msg })
    }

    fn expect_op(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_op() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.term()?;
            acc = Self::lift(pos, if op == '+' { acc.add(rhs) } else { acc.sub(rhs) })?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.unary()?;
            acc = Self::lift(pos, if op == '*' { acc.mul(rhs) } else { acc.div(rhs) })?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<T, ParseError> {
        if self.peek_op() == Some('-') {
            self.i += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<T, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            let pos = self.pos();
            self.i += 1;
            let e = self.exponent()?;
            return Self::lift(pos, base.pow(e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek_op() == Some('-') {
            self.i += 1;
            true
        } else {
            false
        };
        match self.toks.get(self.i) {
            Some((_, Tok::Int(n))) => {
                self.i += 1;
                Ok(if neg { -n } else { *n })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<Rational64, ParseError> {
        if self.peek_op() != Some('(') {
            return Ok(Rational64::from_integer(self.signed_int()?));
        }
        self.i += 1;
        let a = self.signed_int()?;
        let mut b = 1;
        if self.peek_op() == Some('/') {
            self.i += 1;
            let pos = self.pos();
            b = self.signed_int()?;
            if b <= 0 {
                return Err(ParseError { pos, msg: "exponent denominator must be positive".into() });
            }
        }
        self.expect_op(')')?;
        Ok(Rational64::new(a, b))
    }

    fn atom(&mut self) -> Result<T, ParseError> {
        let pos = self.pos();
        match self.toks.get(self.i).cloned() {
            Some((_, Tok::Int(n))) => {
                self.i += 1;
                Ok(T::int(self.ctx, n))
            }
            Some((_, Tok::Ident(name))) => {
                self.i += 1;
                T::symbol(self.ctx, &name).ok_or(ParseError { pos, msg: format!("unknown symbol {name:?}") })
            }
            Some((_, Tok::Op('('))) => {
                self.i += 1;
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Some(_) => self.err("expected a number, symbol or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_with<T: Operand>(ctx: &T::Ctx, s: &str) -> Result<T, ParseError> {
    let toks = Lexer::run(s)?;
    let mut p = Parser::<T> { ctx, toks, i: 0, end: s.len() };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.i < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

/// Integer exponent or an error message.
pub(crate) fn integer_exponent(e: Rational64) -> Result<i64, String> {
    if e.is_integer() {
        Ok(*e.numer())
    } else {
        Err(format!("fractional exponent {e} is not allowed here"))
    }
}

pub(crate) fn natural_exponent(e: Rational64) -> Result<u32, String> {
    let n = integer_exponent(e)?;
    u32::try_from(n).map_err(|_| format!("exponent {n} must be a non-negative integer"))
}

impl Operand for FqElem {
    type Ctx = FieldCtx;

    fn int(ctx: &FieldCtx, n: i64) -> Self {
        ctx.from_int(n)
    }

    fn symbol(ctx: &FieldCtx, name: &str) -> Option<Self> {
        (name == "w").then(|| ctx.w())
    }

    fn add(self, rhs: Self) -> Result<Self, String> {
        Ok(self + rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self, String> {
        Ok(self - rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self, String> {
        Ok(self * rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        let inv = rhs.inv().ok_or("division by zero")?;
        Ok(self * inv)
    }

    fn neg(self) -> Self {
        -self
    }

    fn pow(self, e: Rational64) -> Result<Self, String> {
        let n = integer_exponent(e)?;
        let base = if n < 0 { self.inv().ok_or("negative power of zero")? } else { self };
        Ok(FqElem::pow(&base, n.unsigned_abs()))
    }
}

fn k_symbol(ctx: &KCtx, name: &str) -> Option<KElem> {
    match name {
        "w" => Some(ctx.constant(&ctx.field().w())),
        "x" => Some(ctx.x()),
        _ => None,
    }
}

fn k_pow(base: &KElem, e: Rational64) -> Result<KElem, String> {
    if base.is_zero() && *e.numer() < 0 {
        return Err("negative power of zero".into());
    }
    base.pow_rational(e)
        .ok_or_else(|| format!("exponent denominator {} is not a power of q = {}", e.denom(), base.ctx().q()))
}

impl Operand for KElem {
    type Ctx = KCtx;

    fn int(ctx: &KCtx, n: i64) -> Self {
        ctx.from_int(n)
    }

    fn symbol(ctx: &KCtx, name: &str) -> Option<Self> {
        k_symbol(ctx, name)
    }

    fn add(self, rhs: Self) -> Result<Self, String> {
        Ok(self + rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self, String> {
        Ok(self - rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self, String> {
        Ok(self * rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        self.checked_div(&rhs).map_err(|e| e.to_string())
    }

    fn neg(self) -> Self {
        -self
    }

    fn pow(self, e: Rational64) -> Result<Self, String> {
        k_pow(&self, e)
    }
}

impl Operand for HPoly {
    type Ctx = KCtx;

    fn int(ctx: &KCtx, n: i64) -> Self {
        HPoly::constant(ctx.from_int(n))
    }

    fn symbol(ctx: &KCtx, name: &str) -> Option<Self> {
        if name == "H" {
            return Some(HPoly::h(ctx));
        }
        k_symbol(ctx, name).map(HPoly::constant)
    }

    fn add(self, rhs: Self) -> Result<Self, String> {
        Ok(self + rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self, String> {
        Ok(self - rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self, String> {
        Ok(self * rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        let c = rhs.as_scalar().ok_or("can only divide by a scalar")?;
        let inv = c.inv().ok_or("division by zero")?;
        Ok(self.scale(&inv))
    }

    fn neg(self) -> Self {
        -self
    }

    fn pow(self, e: Rational64) -> Result<Self, String> {
        if let Some(c) = self.as_scalar() {
            return k_pow(&c, e).map(HPoly::constant);
        }
        Ok(HPoly::pow(&self, natural_exponent(e)?))
    }
}

impl Operand for CElem {
    type Ctx = KCtx;

    fn int(ctx: &KCtx, n: i64) -> Self {
        CElem::scalar(ctx.from_int(n))
    }

    fn symbol(ctx: &KCtx, name: &str) -> Option<Self> {
        match name {
            "X" => Some(CElem::x_gen(ctx)),
            "Y" => Some(CElem::y_gen(ctx)),
            "H" => Some(CElem::h(ctx)),
            _ => k_symbol(ctx, name).map(CElem::scalar),
        }
    }

    fn add(self, rhs: Self) -> Result<Self, String> {
        Ok(self + rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self, String> {
        Ok(self - rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self, String> {
        Ok(self * rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        let c = rhs.as_scalar().ok_or("can only divide by a scalar")?;
        let inv = c.inv().ok_or("division by zero")?;
        Ok(self * CElem::scalar(inv))
    }

    fn neg(self) -> Self {
        -self
    }

    fn pow(self, e: Rational64) -> Result<Self, String> {
        if let Some(c) = self.as_scalar() {
            return k_pow(&c, e).map(CElem::scalar);
        }
        Ok(CElem::pow(&self, natural_exponent(e)?))
    }
}

pub fn parse_fq(ctx: &FieldCtx, s: &str) -> Result<FqElem, ParseError> {
    parse_with(ctx, s)
}

pub fn parse_k(ctx: &KCtx, s: &str) -> Result<KElem, ParseError> {
    parse_with(ctx, s)
}

pub fn parse_h(ctx: &KCtx, s: &str) -> Result<HPoly, ParseError> {
    parse_with(ctx, s)
}

/// Parses graded (`(H + x)*X^2`) or monomial (`x*X^2*Y`) algebra syntax.
pub fn parse_c(ctx: &KCtx, s: &str) -> Result<CElem, ParseError> {
    parse_with(ctx, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_field_syntax() {
        let f = FieldCtx::new(3, 2).unwrap();
        let a = parse_fq(&f, "2*w + 1").unwrap();
        assert_eq!(a.to_string(), "2*w + 1");
        assert_eq!(parse_fq(&f, "w^9").unwrap(), f.w());
        assert_eq!(parse_fq(&f, "w^-1 * w").unwrap(), f.one());
        assert_eq!(parse_fq(&f, "-1").unwrap(), f.from_int(2));
    }

    #[test]
    fn ground_field_syntax() {
        let k = KCtx::new(2, 1, 2).unwrap();
        assert_eq!(parse_k(&k, "x^(1/2) * x^(1/2)").unwrap(), k.x());
        assert_eq!(parse_k(&k, "x - x^(1/2)").unwrap(), k.lambda1());
        assert_eq!(parse_k(&k, "1/x").unwrap(), k.x_pow(-1, 0));
        assert_eq!(parse_k(&k, "(x+1)^(1/4)").unwrap().sigma_pow(2), k.x() + k.one());
    }

    #[test]
    fn errors_carry_positions() {
        let k = KCtx::new(2, 1, 2).unwrap();
        let e = parse_k(&k, "x + y").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_k(&k, "x^(1/3)").unwrap_err();
        assert_eq!(e.pos, 1);
        assert!(parse_k(&k, "").is_err());
        assert!(parse_k(&k, "(x").is_err());
        assert!(parse_k(&k, "x $").is_err());
        assert!(parse_k(&k, "1/0").is_err());
    }

    #[test]
    fn round_trips_printed_forms() {
        let k = KCtx::new(3, 1, 2).unwrap();
        for s in ["x + 2*x^(1/3)", "(w + 1)*x^(5/9) + w", "1/(x + 2)", "(x^2 + 1)/(x + w)", "1/x"] {
            let v = parse_k(&k, s).unwrap();
            assert_eq!(parse_k(&k, &v.to_string()).unwrap(), v, "{s} printed as {v}");
        }
    }

    #[test]
    fn h_polynomials() {
        let k = KCtx::new(2, 1, 2).unwrap();
        let d = parse_h(&k, "H^2 + x*H + 1").unwrap();
        assert_eq!(d.degree(), Some(2));
        assert_eq!(parse_h(&k, &d.to_string()).unwrap(), d);
        assert!(parse_h(&k, "1/H").is_err());
        assert!(parse_h(&k, "H^(1/2)").is_err());
    }

    #[test]
    fn algebra_syntax() {
        let k = KCtx::new(2, 1, 2).unwrap();
        assert_eq!(parse_c(&k, "Y*X").unwrap(), CElem::h(&k));
        let u = parse_c(&k, "(H + x)*X^2 + Y^3 + x^(1/2)").unwrap();
        assert_eq!(parse_c(&k, &u.to_string()).unwrap(), u);
        assert_eq!(parse_c(&k, "X/x").unwrap(), CElem::x_gen(&k) * CElem::scalar(k.x_pow(-1, 0)));
        assert!(parse_c(&k, "X/Y").is_err());
        assert!(parse_c(&k, "X^(1/2)").is_err());
    }
}

/// `e·r` as an exponent, if the denominator is a power of `q`.
fn scale_exponent(e: Exponent, r: Rational64, q: u64) -> Result<Exponent, String> {
    let v = Rational64::new(e.num(), (q as i64).pow(e.level())) * r;
    let mut level = 0;
    let mut d = *v.denom();
    while d % q as i64 == 0 {
        d /= q as i64;
        level += 1;
    }
    if d != 1 {
        return Err(format!("exponent denominator {} is not a power of q = {q}", v.denom()));
    }
    Ok(Exponent::new(*v.numer(), level, q))
}

impl Operand for FuncElem {
    type Ctx = KCtx;

    fn int(ctx: &KCtx, n: i64) -> Self {
        FuncElem::constant(ctx.from_int(n))
    }

    fn symbol(ctx: &KCtx, name: &str) -> Option<Self> {
        if name == "t" {
            return Some(FuncElem::t(ctx));
        }
        k_symbol(ctx, name).map(FuncElem::constant)
    }

    fn add(self, rhs: Self) -> Result<Self, String> {
        Ok(FuncElem::add(&self, &rhs))
    }

    fn sub(self, rhs: Self) -> Result<Self, String> {
        Ok(FuncElem::sub(&self, &rhs))
    }

    fn mul(self, rhs: Self) -> Result<Self, String> {
        Ok(FuncElem::mul(&self, &rhs))
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        match rhs.as_monomial() {
            Some((c, e)) if e.is_zero() => Ok(self.scale(&c.inv().ok_or("division by zero")?)),
            _ => Err("can only divide by a scalar".into()),
        }
    }

    fn neg(self) -> Self {
        let m = -self.ctx().one();
        self.scale(&m)
    }

    fn pow(self, e: Rational64) -> Result<Self, String> {
        let q = self.ctx().q();
        if let Some((c, ex)) = self.as_monomial() {
            return Ok(FuncElem::monomial(k_pow(&c, e)?, scale_exponent(ex, e, q)?));
        }
        let n = natural_exponent(e)?;
        let mut out = FuncElem::constant(self.ctx().one());
        for _ in 0..n {
            out = FuncElem::mul(&out, &self);
        }
        Ok(out)
    }
}

pub fn parse_f(ctx: &KCtx, s: &str) -> Result<FuncElem, ParseError> {
    parse_with(ctx, s)
}
