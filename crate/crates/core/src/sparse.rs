//! Sparse univariate polynomials over `F_{p^k}` with `u64` exponents.
//!
//! Elements of the perfect closure routinely carry exponents like `t^(2^20)`,
//! so a dense representation is out of the question.

use crate::gf::{FieldCtx, Raw};

/// Terms sorted by ascending exponent, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct SPoly {
    pub(crate) terms: Vec<(u64, Raw)>,
}

/// Largest dividend degree handled by dense long division.
const DENSE_LIMIT: u64 = 1 << 18;

fn checked_exp(a: u64, b: u64) -> u64 {
    a.checked_add(b).expect("exponent overflow in perfect-closure arithmetic")
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        SPoly { terms: vec![(0, 1)] }
    }

    pub fn constant(c: Raw) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            SPoly { terms: vec![(0, c)] }
        }
    }

    pub fn monomial(e: u64, c: Raw) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            SPoly { terms: vec![(e, c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().is_none_or(|t| t.0 == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Degree; panics on zero.
    pub fn degree(&self) -> u64 {
        self.terms.last().expect("degree of zero polynomial").0
    }

    /// Lowest exponent; panics on zero.
    pub fn ord(&self) -> u64 {
        self.terms.first().expect("order of zero polynomial").0
    }

    pub fn lc(&self) -> Raw {
        self.terms.last().map_or(0, |t| t.1)
    }

    pub fn constant_term(&self) -> Raw {
        match self.terms.first() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    fn from_unsorted(ctx: &FieldCtx, mut terms: Vec<(u64, Raw)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u64, Raw)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = ctx.raw_add(last.1, c),
                _ => out.push((e, c)),
            }
            if out.last().is_some_and(|t| t.1 == 0) {
                out.pop();
            }
        }
        SPoly { terms: out }
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else if a[i].0 > b[j].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let c = ctx.raw_add(a[i].1, b[j].1);
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SPoly { terms: out }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Self {
        SPoly { terms: self.terms.iter().map(|&(e, c)| (e, ctx.raw_neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self, ctx: &FieldCtx) -> Self {
        self.add(&other.neg(ctx), ctx)
    }

    pub fn scale(&self, c: Raw, ctx: &FieldCtx) -> Self {
        if c == 0 {
            return Self::zero();
        }
        SPoly { terms: self.terms.iter().map(|&(e, a)| (e, ctx.raw_mul(a, c))).collect() }
    }

    pub fn mul(&self, other: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            let (e, c) = other.terms[0];
            return SPoly {
                terms: self.terms.iter().map(|&(a, b)| (checked_exp(a, e), ctx.raw_mul(b, c))).collect(),
            };
        }
        if self.is_monomial() {
            return other.mul(self, ctx);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                terms.push((checked_exp(e1, e2), ctx.raw_mul(c1, c2)));
            }
        }
        Self::from_unsorted(ctx, terms)
    }

    pub fn pow(&self, mut e: u64, ctx: &FieldCtx) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx);
            }
        }
        result
    }

    /// Applies `c -> c^(p^e)` to every coefficient.
    pub fn frob_coeffs(&self, e: i64, ctx: &FieldCtx) -> Self {
        SPoly { terms: self.terms.iter().map(|&(x, c)| (x, ctx.raw_frob(c, e))).collect() }
    }

    pub fn scale_exponents(&self, factor: u64) -> Self {
        SPoly {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e.checked_mul(factor).expect("exponent overflow in perfect-closure arithmetic"), c))
                .collect(),
        }
    }

    pub fn exponents_divisible_by(&self, q: u64) -> bool {
        self.terms.iter().all(|t| t.0 % q == 0)
    }

    pub fn divide_exponents(&self, q: u64) -> Self {
        debug_assert!(self.exponents_divisible_by(q));
        SPoly { terms: self.terms.iter().map(|&(e, c)| (e / q, c)).collect() }
    }

    /// Divides by `t^j`; all exponents must be at least `j`.
    pub fn shift_down(&self, j: u64) -> Self {
        SPoly { terms: self.terms.iter().map(|&(e, c)| (e - j, c)).collect() }
    }

    /// Long division. Quotient may be dense in the degree gap.
    pub fn div_rem(&self, b: &Self, ctx: &FieldCtx) -> (Self, Self) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if !self.is_zero() && self.degree() <= DENSE_LIMIT {
            return self.div_rem_dense(b, ctx);
        }
        let db = b.degree();
        let inv_lc = ctx.raw_inv(b.lc());
        let mut r = self.clone();
        let mut q_terms = Vec::new();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let c = ctx.raw_mul(r.lc(), inv_lc);
            q_terms.push((shift, c));
            r = r.sub(&SPoly::monomial(shift, c).mul(b, ctx), ctx);
        }
        q_terms.reverse();
        (SPoly { terms: q_terms }, r)
    }

    /// Long division on a dense copy of the dividend, touching only the
    /// divisor's terms at each step.
    fn div_rem_dense(&self, b: &Self, ctx: &FieldCtx) -> (Self, Self) {
        let da = self.degree() as usize;
        let db = b.degree() as usize;
        if da < db {
            return (Self::zero(), self.clone());
        }
        let mut r = vec![0 as Raw; da + 1];
        for &(e, c) in &self.terms {
            r[e as usize] = c;
        }
        let inv_lc = ctx.raw_inv(b.lc());
        let lower = &b.terms[..b.terms.len() - 1];
        let mut q_terms = Vec::new();
        for i in (db..=da).rev() {
            if r[i] == 0 {
                continue;
            }
            let c = ctx.raw_mul(r[i], inv_lc);
            let shift = i - db;
            q_terms.push((shift as u64, c));
            r[i] = 0;
            for &(e, bc) in lower {
                let j = shift + e as usize;
                r[j] = ctx.raw_sub(r[j], ctx.raw_mul(c, bc));
            }
        }
        q_terms.reverse();
        let rem = r[..db].iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e as u64, c)).collect();
        (SPoly { terms: q_terms }, SPoly { terms: rem })
    }

    /// Remainder modulo `b`. Large sparse dividends are reduced term by term
    /// with `t^e mod b` computed by repeated squaring.
    pub fn rem(&self, b: &Self, ctx: &FieldCtx) -> Self {
        assert!(!b.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.degree() < b.degree() {
            return self.clone();
        }
        if b.is_monomial() {
            let j = b.degree();
            return SPoly { terms: self.terms.iter().copied().filter(|t| t.0 < j).collect() };
        }
        let db = b.degree();
        let gap = self.degree() - db;
        if gap <= 64 + 4 * self.terms.len() as u64 * db.max(1) {
            return self.div_rem(b, ctx).1;
        }
        let mut acc = SPoly::zero();
        for &(e, c) in &self.terms {
            let t_e = SPoly::monomial(1, 1).pow_mod(e, b, ctx);
            acc = acc.add(&t_e.scale(c, ctx), ctx);
        }
        acc
    }

    fn pow_mod(&self, mut e: u64, m: &Self, ctx: &FieldCtx) -> Self {
        let mut result = SPoly::one().div_rem(m, ctx).1;
        let mut base = self.div_rem(m, ctx).1;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, ctx).div_rem(m, ctx).1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx).div_rem(m, ctx).1;
            }
        }
        result
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(ctx.raw_inv(self.lc()), ctx)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() {
            return other.monic(ctx);
        }
        if other.is_zero() {
            return self.monic(ctx);
        }
        if self.is_monomial() || other.is_monomial() {
            // gcd with a monomial is the common power of t.
            let (mono, rest) = if self.is_monomial() { (self, other) } else { (other, self) };
            return SPoly::monomial(mono.degree().min(rest.ord()), 1);
        }
        let (mut x, mut y) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        while !y.is_zero() {
            let r = x.rem(&y, ctx);
            x = y;
            y = r;
        }
        x.monic(ctx)
    }

    /// Exact division; panics if `b` does not divide `self`.
    pub fn exact_div(&self, b: &Self, ctx: &FieldCtx) -> Self {
        if b.is_one() {
            return self.clone();
        }
        if b.is_monomial() {
            let (j, c) = b.terms[0];
            return self.shift_down(j).scale(ctx.raw_inv(c), ctx);
        }
        let (q, r) = self.div_rem(b, ctx);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// `Σ c (a t + b)^e`, expanding each power along its base-`p` digits.
    pub fn substitute_linear(&self, a: Raw, b: Raw, ctx: &FieldCtx) -> Self {
        let p = ctx.p();
        let mut acc = SPoly::zero();
        for &(e, c) in &self.terms {
            let mut term = SPoly::constant(c);
            let mut rest = e;
            let mut place = 1u64; // p^j
            let mut j = 0i64;
            while rest > 0 {
                let digit = rest % p;
                if digit > 0 {
                    // (a^(p^j) t^(p^j) + b^(p^j))^digit
                    let factor = SPoly::from_unsorted(
                        ctx,
                        vec![(place, ctx.raw_frob(a, j)), (0, ctx.raw_frob(b, j))],
                    );
                    term = term.mul(&factor.pow(digit, ctx), ctx);
                }
                rest /= p;
                place = place.saturating_mul(p);
                j += 1;
            }
            acc = acc.add(&term, ctx);
        }
        acc
    }
}
