//! The perfect closure of `F_{p^k}(x)` with the Frobenius `σ: λ ↦ λ^q`.
//!
//! An element is a reduced rational function in `t = x^(1/q^m)` for some
//! level `m`. The representation is canonical: gcd-free numerator and
//! denominator, monic denominator, and the smallest possible level. Equal
//! field elements therefore have identical representations and `==` is
//! structural.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::Rational64;
use thiserror::Error;

use crate::gf::{fq_term_count, write_fq, FieldCtx, FieldError, FqElem, Raw};
use crate::sparse::SPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KError {
    #[error("Field: {0}")]
    Field(#[from] FieldError),
    #[error("InvalidNu: nu must be a positive divisor of k (nu = {nu}, k = {k})")]
    InvalidNu { nu: u32, k: u32 },
    #[error("ContextMismatch: elements belong to different ground fields")]
    ContextMismatch,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("ZeroValuation: the valuation of 0 is undefined")]
    ZeroValuation,
}

struct KInner {
    field: FieldCtx,
    nu: u32,
    q: u64,
}

/// Ground-field context: the coefficient field `F_{p^k}` and `q = p^ν`.
#[derive(Clone)]
pub struct KCtx(Arc<KInner>);

impl PartialEq for KCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.nu == other.0.nu)
    }
}
impl Eq for KCtx {}

impl fmt::Debug for KCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(p={}, nu={}, k={})", self.p(), self.0.nu, self.0.field.k())
    }
}

impl KCtx {
    /// The ground field with coefficients in `F_{p^k}` and `q = p^nu`.
    ///
    /// `nu` must divide `k` so that `F_q` sits inside the coefficient field.
    pub fn new(p: u64, nu: u32, k: u32) -> Result<Self, KError> {
        let field = FieldCtx::new(p, k)?;
        Self::with_field(field, nu)
    }

    pub fn with_field(field: FieldCtx, nu: u32) -> Result<Self, KError> {
        let k = field.k();
        if nu == 0 || k % nu != 0 {
            return Err(KError::InvalidNu { nu, k });
        }
        let q = field.p().pow(nu);
        Ok(KCtx(Arc::new(KInner { field, nu, q })))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.0.field
    }

    pub fn p(&self) -> u64 {
        self.0.field.p()
    }

    pub fn nu(&self) -> u32 {
        self.0.nu
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `q^m` as an exponent scale; panics on overflow.
    pub(crate) fn q_pow(&self, m: u32) -> u64 {
        self.0.q.checked_pow(m).expect("level too deep for u64 exponents")
    }

    pub fn zero(&self) -> KElem {
        KElem::raw_new(self, 0, SPoly::zero(), SPoly::one())
    }

    pub fn one(&self) -> KElem {
        self.constant_raw(1)
    }

    pub fn from_int(&self, n: i64) -> KElem {
        self.constant_raw(self.field().raw_from_int(n))
    }

    pub fn constant(&self, c: &FqElem) -> KElem {
        assert!(c.ctx() == self.field(), "constant from a different finite field");
        self.constant_raw(c.raw())
    }

    pub(crate) fn constant_raw(&self, c: Raw) -> KElem {
        KElem::raw_new(self, 0, SPoly::constant(c), SPoly::one())
    }

    /// The transcendental `x`.
    pub fn x(&self) -> KElem {
        KElem::raw_new(self, 0, SPoly::monomial(1, 1), SPoly::one())
    }

    /// `x^(num / q^level)` for any integer `num`.
    pub fn x_pow(&self, num: i64, level: u32) -> KElem {
        let mono = SPoly::monomial(num.unsigned_abs(), 1);
        if num >= 0 {
            KElem::canonical(self, level, mono, SPoly::one())
        } else {
            KElem::canonical(self, level, SPoly::one(), mono)
        }
    }

    /// `λ_1 = x − x^(1/q)`, the commutator `YX − XY`.
    pub fn lambda1(&self) -> KElem {
        let f = self.field();
        let q = self.q();
        let num = SPoly { terms: vec![(1, f.raw_neg(1)), (q, 1)] };
        KElem::raw_new(self, 1, num, SPoly::one())
    }

    /// `[1] = x^q − x`, equal to `λ_1^q`.
    pub fn bracket1(&self) -> KElem {
        self.lambda1().sigma()
    }

    pub fn parse(&self, s: &str) -> Result<KElem, crate::parse::ParseError> {
        crate::parse::parse_k(self, s)
    }
}

/// An element of the perfect closure of `F_{p^k}(x)`.
#[derive(Clone)]
pub struct KElem {
    ctx: KCtx,
    level: u32,
    num: SPoly,
    den: SPoly,
}

/// `|λ| = base^exponent` with `base = q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbsValue {
    pub base: u64,
    pub exponent: Rational64,
}

impl KElem {
    fn raw_new(ctx: &KCtx, level: u32, num: SPoly, den: SPoly) -> Self {
        KElem { ctx: ctx.clone(), level, num, den }
    }

    /// Reduces `num/den` at `level` to canonical form.
    pub(crate) fn canonical(ctx: &KCtx, level: u32, num: SPoly, den: SPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() || den.is_one() {
            return Self::reduced(ctx, level, num, den);
        }
        let f = ctx.field();
        let g = num.gcd(&den, f);
        let (n, d) = if g.is_one() { (num, den) } else { (num.exact_div(&g, f), den.exact_div(&g, f)) };
        Self::reduced(ctx, level, n, d)
    }

    /// Canonical form of a fraction already known to be in lowest terms.
    fn reduced(ctx: &KCtx, mut level: u32, num: SPoly, den: SPoly) -> Self {
        if num.is_zero() {
            return ctx.zero();
        }
        let f = ctx.field();
        let (mut num, mut den) = {
            let (n, d) = (num, den);
            let lc = d.lc();
            if lc == 1 {
                (n, d)
            } else {
                let inv = f.raw_inv(lc);
                (n.scale(inv, f), d.scale(inv, f))
            }
        };
        let q = ctx.q();
        while level > 0 && num.exponents_divisible_by(q) && den.exponents_divisible_by(q) {
            num = num.divide_exponents(q);
            den = den.divide_exponents(q);
            level -= 1;
        }
        Self::raw_new(ctx, level, num, den)
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    /// The level `m`: the element is a rational function in `x^(1/q^m)`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.level == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the element is a polynomial in `t` (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator terms as `(exponent of t, coefficient)`, ascending.
    pub fn num_terms(&self) -> Vec<(u64, FqElem)> {
        self.terms_of(&self.num)
    }

    /// Denominator terms as `(exponent of t, coefficient)`, ascending.
    pub fn den_terms(&self) -> Vec<(u64, FqElem)> {
        self.terms_of(&self.den)
    }

    fn terms_of(&self, p: &SPoly) -> Vec<(u64, FqElem)> {
        let f = self.ctx.field();
        p.terms.iter().map(|&(e, c)| (e, f.wrap(c))).collect()
    }

    /// Total number of stored terms, a rough size measure.
    pub fn size(&self) -> usize {
        self.num.terms.len() + self.den.terms.len()
    }

    pub fn try_add(&self, other: &KElem) -> Result<KElem, KError> {
        self.same_ctx(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn try_sub(&self, other: &KElem) -> Result<KElem, KError> {
        self.same_ctx(other)?;
        Ok(self.add_impl(other, true))
    }

    pub fn try_mul(&self, other: &KElem) -> Result<KElem, KError> {
        self.same_ctx(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn checked_div(&self, other: &KElem) -> Result<KElem, KError> {
        self.same_ctx(other)?;
        let inv = other.inv().ok_or(KError::DivisionByZero)?;
        Ok(self.mul_impl(&inv))
    }

    fn same_ctx(&self, other: &KElem) -> Result<(), KError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(KError::ContextMismatch)
        }
    }

    fn lifted(&self, level: u32) -> (SPoly, SPoly) {
        if level == self.level {
            return (self.num.clone(), self.den.clone());
        }
        let s = self.ctx.q_pow(level - self.level);
        (self.num.scale_exponents(s), self.den.scale_exponents(s))
    }

    fn add_impl(&self, other: &KElem, negate: bool) -> KElem {
        let f = self.ctx.field();
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let level = self.level.max(other.level);
        let (a, b) = self.lifted(level);
        let (mut c, d) = other.lifted(level);
        if negate {
            c = c.neg(f);
        }
        if b == d {
            return Self::canonical(&self.ctx, level, a.add(&c, f), b);
        }
        // With g = gcd(b, d), only g can share factors with the new numerator.
        let g = b.gcd(&d, f);
        let (b1, d1) = (b.exact_div(&g, f), d.exact_div(&g, f));
        let num = a.mul(&d1, f).add(&c.mul(&b1, f), f);
        if num.is_zero() {
            return self.ctx.zero();
        }
        let h = num.gcd(&g, f);
        let (num, g) = if h.is_one() { (num, g) } else { (num.exact_div(&h, f), g.exact_div(&h, f)) };
        Self::reduced(&self.ctx, level, num, b1.mul(&d1, f).mul(&g, f))
    }

    fn mul_impl(&self, other: &KElem) -> KElem {
        if self.is_zero() || other.is_zero() {
            return self.ctx.zero();
        }
        let f = self.ctx.field();
        let level = self.level.max(other.level);
        let (a, b) = self.lifted(level);
        let (c, d) = other.lifted(level);
        if b.is_one() && d.is_one() {
            return Self::canonical(&self.ctx, level, a.mul(&c, f), b);
        }
        // Cross-cancel first to keep the gcd step small.
        let g1 = a.gcd(&d, f);
        let g2 = c.gcd(&b, f);
        let (a, d) = (a.exact_div(&g1, f), d.exact_div(&g1, f));
        let (c, b) = (c.exact_div(&g2, f), b.exact_div(&g2, f));
        Self::reduced(&self.ctx, level, a.mul(&c, f), b.mul(&d, f))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<KElem> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canonical(&self.ctx, self.level, self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents invert. Panics on `0^e`, `e < 0`.
    pub fn pow(&self, e: i64) -> KElem {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let f = self.ctx.field();
        let e = e.unsigned_abs();
        Self::canonical(&self.ctx, base.level, base.num.pow(e, f), base.den.pow(e, f))
    }

    /// Rational power `self^(a/b)` where `b` is a power of `q`.
    pub fn pow_rational(&self, e: Rational64) -> Option<KElem> {
        let (a, b) = (*e.numer(), *e.denom());
        let j = log_q(self.ctx.q(), b as u64)?;
        if a < 0 && self.is_zero() {
            return None;
        }
        Some(self.sigma_pow(-(j as i64)).pow(a))
    }

    /// `σ(λ) = λ^q`.
    pub fn sigma(&self) -> KElem {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.ctx.field();
        let nu = self.ctx.nu() as i64;
        let num = self.num.frob_coeffs(nu, f);
        let den = self.den.frob_coeffs(nu, f);
        if self.level > 0 {
            // t^q is the generator one level down; exponents are unchanged.
            Self::canonical(&self.ctx, self.level - 1, num, den)
        } else {
            let q = self.ctx.q();
            Self::raw_new(&self.ctx, 0, num.scale_exponents(q), den.scale_exponents(q))
        }
    }

    /// `σ^{-1}(λ) = λ^(1/q)`.
    pub fn sigma_inv(&self) -> KElem {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.ctx.field();
        let nu = -(self.ctx.nu() as i64);
        let num = self.num.frob_coeffs(nu, f);
        let den = self.den.frob_coeffs(nu, f);
        Self::canonical(&self.ctx, self.level + 1, num, den)
    }

    /// `σ^e(λ)` for any integer `e`.
    pub fn sigma_pow(&self, e: i64) -> KElem {
        if e >= 0 {
            (0..e).fold(self.clone(), |acc, _| acc.sigma())
        } else {
            (0..-e).fold(self.clone(), |acc, _| acc.sigma_inv())
        }
    }

    /// The x-adic valuation, a rational with a power-of-`q` denominator.
    pub fn valuation(&self) -> Result<Rational64, KError> {
        if self.is_zero() {
            return Err(KError::ZeroValuation);
        }
        let v = self.num.ord() as i64 - self.den.ord() as i64;
        let scale = i64::try_from(self.ctx.q_pow(self.level)).expect("level too deep");
        Ok(Rational64::new(v, scale))
    }

    /// `|λ| = q^(-v)`.
    pub fn abs_value(&self) -> Result<AbsValue, KError> {
        Ok(AbsValue { base: self.ctx.q(), exponent: -self.valuation()? })
    }

    /// The finite-field element, when `λ` is constant.
    pub fn as_constant(&self) -> Option<FqElem> {
        if self.level == 0 && self.den.is_one() && self.num.is_constant() {
            Some(self.ctx.field().wrap(self.num.constant_term()))
        } else {
            None
        }
    }

    /// The substitution `x ↦ γx + δ` for `γ, δ ∈ F_q`.
    ///
    /// At level `m` this sends `t ↦ γ^(1/q^m) t + δ^(1/q^m)`, and elements of
    /// `F_q` are fixed by the `q`-power map, so the roots are `γ` and `δ`.
    pub(crate) fn substitute_affine(&self, gamma: Raw, delta: Raw) -> KElem {
        let f = self.ctx.field();
        let num = self.num.substitute_linear(gamma, delta, f);
        let den = self.den.substitute_linear(gamma, delta, f);
        Self::canonical(&self.ctx, self.level, num, den)
    }

    fn write_poly(&self, out: &mut impl fmt::Write, p: &SPoly) -> fmt::Result {
        let f = self.ctx.field();
        let scale = self.ctx.q_pow(self.level) as i64;
        let mut first = true;
        for &(e, c) in p.terms.iter().rev() {
            if !first {
                out.write_str(" + ")?;
            }
            first = false;
            let r = Rational64::new(e as i64, scale);
            if e == 0 {
                write_fq(out, f, c)?;
                continue;
            }
            if c != 1 {
                if fq_term_count(f, c) > 1 {
                    out.write_char('(')?;
                    write_fq(out, f, c)?;
                    out.write_str(")*")?;
                } else {
                    write_fq(out, f, c)?;
                    out.write_char('*')?;
                }
            }
            write_x_power(out, r)?;
        }
        if first {
            out.write_char('0')?;
        }
        Ok(())
    }

    fn poly_is_atomic(&self, p: &SPoly) -> bool {
        match p.terms.as_slice() {
            [(0, c)] => fq_term_count(self.ctx.field(), *c) <= 1,
            [(_, c)] => *c == 1,
            _ => false,
        }
    }
}

pub(crate) fn write_x_power(out: &mut impl fmt::Write, r: Rational64) -> fmt::Result {
    if r == Rational64::from_integer(1) {
        out.write_char('x')
    } else if r.is_integer() {
        write!(out, "x^{}", r.numer())
    } else {
        write!(out, "x^({}/{})", r.numer(), r.denom())
    }
}

/// `j` with `q^j = b`.
pub(crate) fn log_q(q: u64, b: u64) -> Option<u32> {
    let mut j = 0;
    let mut acc = 1u64;
    while acc < b {
        acc = acc.checked_mul(q)?;
        j += 1;
    }
    (acc == b).then_some(j)
}

impl PartialEq for KElem {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.num == other.num && self.den == other.den && self.ctx == other.ctx
    }
}
impl Eq for KElem {}

impl Hash for KElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.write_poly(f, &self.num);
        }
        if self.poly_is_atomic(&self.num) {
            self.write_poly(f, &self.num)?;
        } else {
            f.write_char('(')?;
            self.write_poly(f, &self.num)?;
            f.write_char(')')?;
        }
        f.write_char('/')?;
        if self.poly_is_atomic(&self.den) && self.den.terms[0].0 > 0 {
            self.write_poly(f, &self.den)
        } else {
            f.write_char('(')?;
            self.write_poly(f, &self.den)?;
            f.write_char(')')
        }
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KElem({self})")
    }
}

use std::fmt::Write as _;

macro_rules! k_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&KElem> for &KElem {
            type Output = KElem;
            fn $method(self, rhs: &KElem) -> KElem {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<KElem> for KElem {
            type Output = KElem;
            fn $method(self, rhs: KElem) -> KElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&KElem> for KElem {
            type Output = KElem;
            fn $method(self, rhs: &KElem) -> KElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<KElem> for &KElem {
            type Output = KElem;
            fn $method(self, rhs: KElem) -> KElem {
                self.$method(&rhs)
            }
        }
    };
}

k_binop!(Add, add, try_add);
k_binop!(Sub, sub, try_sub);
k_binop!(Mul, mul, try_mul);
k_binop!(Div, div, checked_div);

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        let f = self.ctx.field();
        KElem::raw_new(&self.ctx, self.level, self.num.neg(f), self.den.clone())
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> KCtx {
        KCtx::new(2, 1, 2).unwrap()
    }

    #[test]
    fn rejects_nu_not_dividing_k() {
        assert_eq!(KCtx::new(2, 2, 3).unwrap_err(), KError::InvalidNu { nu: 2, k: 3 });
        assert!(KCtx::new(4, 1, 1).is_err());
    }

    #[test]
    fn half_powers_multiply_down_a_level() {
        let k = k2();
        let h = k.x_pow(1, 1);
        assert_eq!(h.level(), 1);
        let x = &h * &h;
        assert_eq!(x, k.x());
        assert_eq!(x.level(), 0);
    }

    #[test]
    fn characteristic_two_cancellation() {
        let k = k2();
        let a = k.x() + k.x_pow(1, 1);
        assert!((&a + &a).is_zero());
        assert_eq!(&k.x() + &k.zero(), k.x());
    }

    #[test]
    fn sigma_examples() {
        let k = k2();
        assert_eq!(k.x_pow(1, 1).sigma(), k.x());
        let r = k.x().sigma_inv();
        assert_eq!(r, k.x_pow(1, 1));
        assert_eq!(r.level(), 1);
        let l1 = k.lambda1();
        assert_eq!(l1.sigma(), k.x_pow(2, 0) + k.x());
    }

    #[test]
    fn lambda1_definition() {
        let k = KCtx::new(3, 1, 1).unwrap();
        let l1 = k.lambda1();
        assert_eq!(l1, k.x() - k.x_pow(1, 1));
        assert_eq!(l1.pow(3), k.x_pow(3, 0) - k.x());
        assert_eq!(k.bracket1(), l1.pow(3));
    }

    #[test]
    fn valuation_examples() {
        let k = k2();
        assert_eq!(k.x().valuation().unwrap(), Rational64::from_integer(1));
        assert_eq!(k.one().valuation().unwrap(), Rational64::from_integer(0));
        let v = (k.x_pow(3, 1) + k.x_pow(2, 0)).valuation().unwrap();
        assert_eq!(v, Rational64::new(3, 2));
        assert_eq!(k.zero().valuation(), Err(KError::ZeroValuation));
        let a = k.x().abs_value().unwrap();
        assert_eq!((a.base, a.exponent), (2, Rational64::from_integer(-1)));
    }

    #[test]
    fn as_constant_examples() {
        let k = k2();
        let w = k.field().w();
        assert_eq!(k.constant(&w).as_constant(), Some(w));
        assert_eq!(k.x().as_constant(), None);
        let y = k.x() + k.one();
        assert_eq!((&y / &y).as_constant(), Some(k.field().one()));
    }

    #[test]
    fn division_reduces() {
        let k = KCtx::new(3, 1, 1).unwrap();
        let x = k.x();
        let num = &x * &x - k.one();
        let den = &x - k.one();
        assert_eq!(&num / &den, &x + k.one());
        assert_eq!(k.one().checked_div(&k.zero()), Err(KError::DivisionByZero));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = k2().x();
        let b = KCtx::new(3, 1, 1).unwrap().x();
        assert_eq!(a.try_add(&b), Err(KError::ContextMismatch));
    }

    #[test]
    fn display_forms() {
        let k = k2();
        assert_eq!(k.lambda1().to_string(), "x + x^(1/2)");
        assert_eq!(k.x().inv().unwrap().to_string(), "1/x");
        let w = k.constant(&k.field().w());
        assert_eq!((&w * &k.x_pow(3, 2)).to_string(), "w*x^(3/4)");
        let w1 = k.constant(&(k.field().w() + k.field().one()));
        assert_eq!((&w1 * &k.x()).to_string(), "(w + 1)*x");
        assert_eq!((k.one() / (k.x() + k.one())).to_string(), "1/(x + 1)");
    }

    #[test]
    fn rational_powers() {
        let k = KCtx::new(3, 1, 1).unwrap();
        let a = k.x() + k.one();
        let r = a.pow_rational(Rational64::new(2, 3)).unwrap();
        assert_eq!(r.pow(3), a.pow(2));
        assert!(a.pow_rational(Rational64::new(1, 2)).is_none());
    }

    #[test]
    fn affine_substitution() {
        let k = KCtx::new(3, 1, 1).unwrap();
        let f = k.field();
        let (g, d) = (f.raw_from_int(2), f.raw_from_int(1));
        let y = k.x_pow(1, 1);
        // (2x + 1)^(1/3) = 2 x^(1/3) + 1 in characteristic 3
        let img = y.substitute_affine(g, d);
        assert_eq!(img, k.from_int(2) * &y + k.one());
        assert_eq!(img.pow(3), k.from_int(2) * k.x() + k.one());
    }
}
