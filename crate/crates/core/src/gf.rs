//! Finite fields `F_{p^k}` built on the lexicographically least monic
//! irreducible modulus.
//!
//! Elements are stored internally as Zech-logarithm handles: `0` is the zero
//! element and `r >= 1` stands for `g^(r-1)` where `g` is the smallest
//! primitive element (by integer code). The public [`FqElem`] wraps such a
//! handle together with its [`FieldCtx`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Largest field order the table-driven representation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, k: u32 },
}

pub(crate) type Raw = u32;

struct FieldInner {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i]` = integer code of `g^i`.
    exp: Vec<u32>,
    /// `log[code]` for nonzero codes.
    log: Vec<u32>,
    /// `zech[i]` = raw handle of `1 + g^i`.
    zech: Vec<Raw>,
}

/// Shared handle to a finite field `F_{p^k}`.
///
/// Two contexts with equal `(p, k)` are interchangeable: the modulus and the
/// primitive element are chosen canonically.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low degree first, used only while building a field.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lc = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = (r[r.len() - 1] as u64 * inv_lc as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let s = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - s) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&result, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut result = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Ben-Or irreducibility test for a monic polynomial of degree `k`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        let x = vec![0u32, 1];
        let mut xp = x.clone();
        for _ in 1..=k / 2 {
            xp = pow_mod(&xp, p as u64, f, p);
            let diff = sub(&xp, &x, p);
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

fn code_to_digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

fn digits_to_code(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn add_codes(a: u32, b: u32, p: u32, k: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..k {
        let d = (a % p + b % p) % p;
        out += d * place;
        place = place.wrapping_mul(p);
        a /= p;
        b /= p;
    }
    out
}

impl FieldCtx {
    /// Builds `F_{p^k}` using the lexicographically least monic irreducible
    /// modulus (coefficients compared from the constant term upwards).
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(k).filter(|&n| n <= MAX_FIELD_ORDER as u128);
        let order = order.ok_or(FieldError::TooLarge { p, k })? as u32;
        let p32 = p as u32;
        let modulus = Self::canonical_modulus(p32, k);

        // Smallest primitive element by code.
        let m = order - 1;
        let factors = prime_factors(m as u64);
        let mut g_code = 1u32;
        if m > 1 {
            g_code = (1..order)
                .find(|&c| {
                    let g = code_to_digits(c, p32, k);
                    factors.iter().all(|&r| {
                        let e = fp_poly::pow_mod(&g, m as u64 / r, &modulus, p32);
                        e != [1]
                    })
                })
                .expect("multiplicative group of a finite field is cyclic");
        }
        let g = {
            let mut d = code_to_digits(g_code, p32, k);
            fp_poly::trim(&mut d);
            d
        };

        let mut exp = Vec::with_capacity(m as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![1u32];
        for i in 0..m {
            let mut digits = cur.clone();
            digits.resize(k as usize, 0);
            let code = digits_to_code(&digits, p32);
            exp.push(code);
            log[code as usize] = i;
            cur = fp_poly::mul_mod(&cur, &g, &modulus, p32);
        }
        let zech = (0..m)
            .map(|i| {
                let s = add_codes(1, exp[i as usize], p32, k);
                if s == 0 {
                    0
                } else {
                    1 + log[s as usize]
                }
            })
            .collect();
        Ok(FieldCtx(Arc::new(FieldInner { p: p32, k, order, modulus, exp, log, zech })))
    }

    fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
        let count = (p as u64).pow(k);
        for idx in 0..count {
            // c_0 is the most significant digit of idx, so increasing idx walks
            // the coefficient tuples in lexicographic order.
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut rest = idx;
            for i in (0..k as usize).rev() {
                coeffs[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs[k as usize] = 1;
            if fp_poly::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u64 {
        self.0.order as u64
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FqElem {
        self.wrap(1)
    }

    /// The class of the generator symbol `w` (the residue of `t`).
    pub fn w(&self) -> FqElem {
        let mut d = vec![0u32, 1];
        let r = fp_poly::rem(&d, &self.0.modulus, self.0.p);
        d = r;
        d.resize(self.0.k as usize, 0);
        self.from_coeffs(&d)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        self.wrap(self.raw_from_int(n))
    }

    /// Element with the given `F_p` coefficients (constant term first).
    /// Coefficients beyond degree `k-1` are reduced by the modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        let p = self.0.p;
        let mut d: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        fp_poly::trim(&mut d);
        let mut r = if d.len() > self.0.k as usize {
            fp_poly::rem(&d, &self.0.modulus, p)
        } else {
            d
        };
        r.resize(self.0.k as usize, 0);
        self.wrap(self.raw_from_code(digits_to_code(&r, p)))
    }

    /// Element with integer code `Σ c_i p^i`.
    pub fn from_code(&self, code: u32) -> FqElem {
        assert!(code < self.0.order, "code {code} out of range for {self:?}");
        self.wrap(self.raw_from_code(code))
    }

    /// All `p^k` elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.order).map(move |c| self.from_code(c))
    }

    pub(crate) fn wrap(&self, raw: Raw) -> FqElem {
        FqElem { ctx: self.clone(), raw }
    }

    #[inline]
    fn m(&self) -> u32 {
        self.0.order - 1
    }

    pub(crate) fn raw_from_code(&self, code: u32) -> Raw {
        if code == 0 {
            0
        } else {
            1 + self.0.log[code as usize]
        }
    }

    pub(crate) fn raw_to_code(&self, a: Raw) -> u32 {
        if a == 0 {
            0
        } else {
            self.0.exp[(a - 1) as usize]
        }
    }

    pub(crate) fn raw_from_int(&self, n: i64) -> Raw {
        let r = n.rem_euclid(self.0.p as i64) as u32;
        self.raw_from_code(r)
    }

    #[inline]
    pub(crate) fn raw_add(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let m = self.m();
        let (la, lb) = (a - 1, b - 1);
        let d = if lb >= la { lb - la } else { lb + m - la };
        let z = self.0.zech[d as usize];
        if z == 0 {
            0
        } else {
            1 + ((la as u64 + (z - 1) as u64) % m as u64) as u32
        }
    }

    #[inline]
    pub(crate) fn raw_neg(&self, a: Raw) -> Raw {
        if a == 0 || self.0.p == 2 {
            return a;
        }
        let m = self.m();
        1 + ((a - 1 + m / 2) % m)
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: Raw, b: Raw) -> Raw {
        self.raw_add(a, self.raw_neg(b))
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.m() as u64;
        1 + (((a - 1) as u64 + (b - 1) as u64) % m) as u32
    }

    /// Inverse of a nonzero handle.
    #[inline]
    pub(crate) fn raw_inv(&self, a: Raw) -> Raw {
        debug_assert!(a != 0);
        let m = self.m();
        1 + (m - (a - 1)) % m
    }

    pub(crate) fn raw_pow(&self, a: Raw, e: u64) -> Raw {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = self.m() as u64;
        1 + (((a - 1) as u64 * (e % m)) % m) as u32
    }

    /// `a^(p^e)`, negative `e` meaning the inverse Frobenius.
    pub(crate) fn raw_frob(&self, a: Raw, e: i64) -> Raw {
        if a <= 1 {
            return a;
        }
        let k = self.0.k as i64;
        let e = e.rem_euclid(k) as u32;
        let m = self.m() as u64;
        let mut l = (a - 1) as u64;
        for _ in 0..e {
            l = l * self.0.p as u64 % m;
        }
        1 + l as u32
    }

    /// Parses the `w`-polynomial syntax, e.g. `w^2 + 2*w + 1`.
    pub fn parse(&self, s: &str) -> Result<FqElem, crate::parse::ParseError> {
        crate::parse::parse_fq(self, s)
    }
}

/// An element of a finite field together with its context.
#[derive(Clone)]
pub struct FqElem {
    ctx: FieldCtx,
    raw: Raw,
}

impl FqElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub(crate) fn raw(&self) -> Raw {
        self.raw
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    /// Integer code `Σ c_i p^i`.
    pub fn code(&self) -> u32 {
        self.ctx.raw_to_code(self.raw)
    }

    /// `F_p` coefficients in the power basis of `w`, constant term first.
    pub fn coeffs(&self) -> Vec<u32> {
        code_to_digits(self.code(), self.ctx.0.p, self.ctx.0.k)
    }

    pub fn inv(&self) -> Option<FqElem> {
        (self.raw != 0).then(|| self.ctx.wrap(self.ctx.raw_inv(self.raw)))
    }

    pub fn pow(&self, e: u64) -> FqElem {
        self.ctx.wrap(self.ctx.raw_pow(self.raw, e))
    }

    /// `a^(p^e)`; for negative `e` the unique `b` with `b^(p^-e) = a`.
    pub fn frobenius_pow(&self, e: i64) -> FqElem {
        self.ctx.wrap(self.ctx.raw_frob(self.raw, e))
    }

    /// Least `n >= 1` with `a^(q^n) = a` where `q = p^nu`.
    pub fn degree_over_q(&self, nu: u32) -> u32 {
        assert!(nu >= 1, "nu must be positive");
        let mut cur = self.clone();
        for n in 1.. {
            cur = cur.frobenius_pow(nu as i64);
            if cur.raw == self.raw {
                return n;
            }
        }
        unreachable!()
    }

    /// Whether `a^q = a`, i.e. `a` lies in the subfield `F_q`.
    pub fn in_fq(&self, nu: u32) -> bool {
        self.frobenius_pow(nu as i64).raw == self.raw
    }

    fn check(&self, other: &FqElem) {
        assert!(self.ctx == other.ctx, "finite field context mismatch: {:?} vs {:?}", self.ctx, other.ctx);
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.ctx == other.ctx
    }
}
impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw.hash(state);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coefficient vector, constant term first.
impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

macro_rules! fq_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FqElem> for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.check(rhs);
                let f: fn(&FieldCtx, Raw, Raw) -> Raw = $body;
                self.ctx.wrap(f(&self.ctx, self.raw, rhs.raw))
            }
        }
        impl $trait<FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                (&self).$method(rhs)
            }
        }
    };
}

fq_binop!(Add, add, |c, a, b| c.raw_add(a, b));
fq_binop!(Sub, sub, |c, a, b| c.raw_sub(a, b));
fq_binop!(Mul, mul, |c, a, b| c.raw_mul(a, b));
fq_binop!(Div, div, |c, a, b| {
    assert!(b != 0, "division by zero in finite field");
    c.raw_mul(a, c.raw_inv(b))
});

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        self.ctx.wrap(self.ctx.raw_neg(self.raw))
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

/// Writes the element as a polynomial in `w`, highest degree first.
pub(crate) fn write_fq(f: &mut impl fmt::Write, ctx: &FieldCtx, raw: Raw) -> fmt::Result {
    let digits = code_to_digits(ctx.raw_to_code(raw), ctx.0.p, ctx.0.k);
    let mut first = true;
    for (i, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (i, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("w")?,
            (1, c) => write!(f, "{c}*w")?,
            (i, 1) => write!(f, "w^{i}")?,
            (i, c) => write!(f, "{c}*w^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Number of nonzero terms the printed form has.
pub(crate) fn fq_term_count(ctx: &FieldCtx, raw: Raw) -> usize {
    code_to_digits(ctx.raw_to_code(raw), ctx.0.p, ctx.0.k)
        .iter()
        .filter(|&&d| d != 0)
        .count()
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fq(f, &self.ctx, self.raw)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent irreducibility check: no monic factor of degree <= k/2.
    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            for idx in 0..(p as u64).pow(d as u32) {
                let mut g = code_to_digits(idx as u32, p, d as u32);
                g.push(1);
                if fp_poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldCtx::new(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(FieldCtx::new(2, 40), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn prime_field_has_linear_modulus() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
        let els: Vec<u32> = f.elements().map(|e| e.code()).collect();
        assert_eq!(els, vec![0, 1]);
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        // Enumerate all monic quadratics over F_2 and keep the irreducible ones.
        let irreducible: Vec<Vec<u32>> = (0..4u32)
            .map(|i| vec![i & 1, (i >> 1) & 1, 1])
            .filter(|f| brute_irreducible(f, 2))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn canonical_modulus_is_least_irreducible() {
        for (p, k) in [(2u32, 3u32), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let ctx = FieldCtx::new(p as u64, k).unwrap();
            let m = ctx.modulus().to_vec();
            assert!(brute_irreducible(&m, p));
            // Every lexicographically smaller monic candidate is reducible.
            for idx in 0..(p as u64).pow(k) {
                let mut c = vec![0u32; k as usize + 1];
                let mut rest = idx;
                for i in (0..k as usize).rev() {
                    c[i] = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                c[k as usize] = 1;
                if c == m {
                    break;
                }
                assert!(!brute_irreducible(&c, p), "{c:?} precedes {m:?}");
            }
        }
    }

    #[test]
    fn f9_elements_satisfy_a9_eq_a() {
        let f = FieldCtx::new(3, 2).unwrap();
        let els: Vec<FqElem> = f.elements().collect();
        assert_eq!(els.len(), 9);
        for a in &els {
            assert_eq!(a.pow(9), *a);
        }
        let mut codes: Vec<u32> = els.iter().map(|e| e.code()).collect();
        codes.dedup();
        assert_eq!(codes.len(), 9);
    }

    #[test]
    fn frobenius_on_f4() {
        let f = FieldCtx::new(2, 2).unwrap();
        let w = f.w();
        // w^2 = w + 1 modulo t^2 + t + 1
        assert_eq!(w.frobenius_pow(1), &w + &f.one());
        assert_eq!(f.one().frobenius_pow(5), f.one());
        assert_eq!(f.one().frobenius_pow(-3), f.one());
    }

    #[test]
    fn inverse_frobenius_round_trip_f8() {
        let f = FieldCtx::new(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(a.frobenius_pow(1).frobenius_pow(-1), a);
            assert_eq!(a.frobenius_pow(-2).frobenius_pow(2), a);
        }
    }

    #[test]
    fn degree_over_q_examples() {
        let f = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f.one().degree_over_q(1), 1);
        assert_eq!(f.zero().degree_over_q(1), 1);
        assert_eq!(f.w().degree_over_q(1), 2);
        assert_eq!(f.w().degree_over_q(2), 1);
    }

    #[test]
    fn subfield_membership_matches_degree() {
        // p^k <= 16: a in F_{q^m} iff degree_over_q(a) divides m.
        for (p, k) in [(2u64, 4u32), (2, 2), (3, 2), (2, 3)] {
            let f = FieldCtx::new(p, k).unwrap();
            for nu in 1..=k {
                if k % nu != 0 {
                    continue;
                }
                for a in f.elements() {
                    let d = a.degree_over_q(nu);
                    for m in 1..=k / nu {
                        let in_sub = a.frobenius_pow((nu * m) as i64) == a;
                        assert_eq!(in_sub, m % d == 0, "{a} nu={nu} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (13, 1)] {
            let f = FieldCtx::new(p, k).unwrap();
            let els: Vec<FqElem> = f.elements().collect();
            for a in &els {
                assert_eq!(a + &f.zero(), *a);
                assert_eq!(a * &f.one(), *a);
                assert!((a + &(-a)).is_zero());
                if let Some(inv) = a.inv() {
                    assert!((a * &inv).is_one());
                }
                for b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &els {
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                    }
                }
            }
        }
    }

    #[test]
    fn addition_agrees_with_coefficientwise_sum() {
        let f = FieldCtx::new(3, 3).unwrap();
        for a in f.elements().step_by(3) {
            for b in f.elements().step_by(5) {
                let want: Vec<u32> = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!((&a + &b).coeffs(), want);
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let f = FieldCtx::new(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!((&a + &b).frobenius_pow(1), a.frobenius_pow(1) + b.frobenius_pow(1));
                assert_eq!((&a * &b).frobenius_pow(1), a.frobenius_pow(1) * b.frobenius_pow(1));
            }
            // order divides k
            assert_eq!(a.frobenius_pow(2), a);
        }
    }

    #[test]
    fn display_is_highest_degree_first() {
        let f = FieldCtx::new(3, 2).unwrap();
        let e = f.from_coeffs(&[1, 2]);
        assert_eq!(e.to_string(), "2*w + 1");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(FieldCtx::new(2, 2).unwrap().w().to_string(), "w");
    }
}
