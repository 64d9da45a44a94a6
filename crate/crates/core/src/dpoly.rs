//! The commutative ring `D = K[H]` with the twisted automorphism
//! `σ(H) = H − λ_1`, `σ(λ) = λ^q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::kfield::{KCtx, KElem, KError};

/// A polynomial in `H` with coefficients in `K`, lowest degree first.
#[derive(Clone)]
pub struct HPoly {
    ctx: KCtx,
    coeffs: Vec<KElem>,
}

impl HPoly {
    pub fn zero(ctx: &KCtx) -> Self {
        HPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &KCtx) -> Self {
        Self::constant(ctx.one())
    }

    /// The generator `H`.
    pub fn h(ctx: &KCtx) -> Self {
        HPoly { ctx: ctx.clone(), coeffs: vec![ctx.zero(), ctx.one()] }
    }

    pub fn constant(c: KElem) -> Self {
        let ctx = c.ctx().clone();
        Self::from_coeffs(&ctx, vec![c])
    }

    /// `H − λ`.
    pub fn linear(lambda: &KElem) -> Self {
        let ctx = lambda.ctx().clone();
        Self::from_coeffs(&ctx, vec![-lambda, ctx.one()])
    }

    /// Builds from coefficients, lowest degree first.
    pub fn from_coeffs(ctx: &KCtx, mut coeffs: Vec<KElem>) -> Self {
        assert!(coeffs.iter().all(|c| c.ctx() == ctx), "coefficient from a different ground field");
        while coeffs.last().is_some_and(KElem::is_zero) {
            coeffs.pop();
        }
        HPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    /// Coefficient of `H^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> KElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(KElem::is_one)
    }

    /// The scalar, when the polynomial has degree at most 0.
    pub fn as_scalar(&self) -> Option<KElem> {
        match self.coeffs.len() {
            0 => Some(self.ctx.zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> KElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ctx.zero())
    }

    fn check(&self, other: &HPoly) -> Result<(), KError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(KError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &HPoly) -> Result<HPoly, KError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::from_coeffs(&self.ctx, coeffs))
    }

    pub fn try_sub(&self, other: &HPoly) -> Result<HPoly, KError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Ok(Self::from_coeffs(&self.ctx, coeffs))
    }

    pub fn try_mul(&self, other: &HPoly) -> Result<HPoly, KError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::from_coeffs(&self.ctx, out))
    }

    pub fn scale(&self, c: &KElem) -> HPoly {
        Self::from_coeffs(&self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> HPoly {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    pub fn map_coeffs(&self, f: impl Fn(&KElem) -> KElem) -> HPoly {
        Self::from_coeffs(&self.ctx, self.coeffs.iter().map(f).collect())
    }

    /// Evaluates at `H = λ` (Horner).
    pub fn eval(&self, lambda: &KElem) -> KElem {
        self.coeffs.iter().rev().fold(self.ctx.zero(), |acc, c| &(&acc * lambda) + c)
    }

    /// `d(H + c)`.
    pub fn shift_arg(&self, c: &KElem) -> HPoly {
        let lin = HPoly::from_coeffs(&self.ctx, vec![c.clone(), self.ctx.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ctx), |acc, a| &(&acc * &lin) + &HPoly::constant(a.clone()))
    }

    /// One forward step: `λ ↦ λ^q` on coefficients, then `H ↦ H − λ_1`.
    pub fn sigma(&self) -> HPoly {
        let twisted = self.map_coeffs(KElem::sigma);
        twisted.shift_arg(&-self.ctx.lambda1())
    }

    /// One backward step: `λ ↦ λ^(1/q)` on coefficients, then `H ↦ H + λ_1^(1/q)`.
    pub fn sigma_inv(&self) -> HPoly {
        let twisted = self.map_coeffs(KElem::sigma_inv);
        twisted.shift_arg(&self.ctx.lambda1().sigma_inv())
    }

    /// `σ^e(d)`, iterating the single steps.
    pub fn sigma_d(&self, e: i64) -> HPoly {
        if e >= 0 {
            (0..e).fold(self.clone(), |acc, _| acc.sigma())
        } else {
            (0..-e).fold(self.clone(), |acc, _| acc.sigma_inv())
        }
    }

    pub fn parse(ctx: &KCtx, s: &str) -> Result<HPoly, crate::parse::ParseError> {
        crate::parse::parse_h(ctx, s)
    }
}

/// The root of `σ^e(H − λ)`, i.e. the `λ'` with `σ^e(H − λ) = H − λ'`.
///
/// Computed by iterating `λ ↦ λ^q + λ_1` forwards and
/// `λ ↦ λ^(1/q) − λ_1^(1/q)` backwards.
pub fn shift_root(lambda: &KElem, e: i64) -> KElem {
    let ctx = lambda.ctx();
    if e >= 0 {
        let l1 = ctx.lambda1();
        (0..e).fold(lambda.clone(), |acc, _| &acc.sigma() + &l1)
    } else {
        let r = ctx.lambda1().sigma_inv();
        (0..-e).fold(lambda.clone(), |acc, _| &acc.sigma_inv() - &r)
    }
}

/// Wraps a printed coefficient in parentheses when it is a sum or fraction.
pub(crate) fn paren_if_compound(s: String) -> String {
    if s.contains(' ') || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

impl PartialEq for HPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx == other.ctx
    }
}
impl Eq for HPoly {}

impl std::hash::Hash for HPoly {
    fn hash<S: std::hash::Hasher>(&self, state: &mut S) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match i {
                0 => {
                    write!(f, "{c}")?;
                    continue;
                }
                1 => "H".to_string(),
                _ => format!("H^{i}"),
            };
            if c.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{mono}", paren_if_compound(c.to_string()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

macro_rules! h_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&HPoly> for &HPoly {
            type Output = HPoly;
            fn $method(self, rhs: &HPoly) -> HPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<HPoly> for HPoly {
            type Output = HPoly;
            fn $method(self, rhs: HPoly) -> HPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HPoly> for HPoly {
            type Output = HPoly;
            fn $method(self, rhs: &HPoly) -> HPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<HPoly> for &HPoly {
            type Output = HPoly;
            fn $method(self, rhs: HPoly) -> HPoly {
                self.$method(&rhs)
            }
        }
    };
}

h_binop!(Add, add, try_add);
h_binop!(Sub, sub, try_sub);
h_binop!(Mul, mul, try_mul);

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        -&self
    }
}
