//! Operator model of the algebra on finite sums `Σ c_e t^e`, `e ∈ Z[1/q]`.
//!
//! `X` raises to the `q`-th power, `Δu(t) = u(xt) − x·u(t)`, and `Y` is the
//! termwise `q`-th root of `Δ`. Agreement on random monomials is evidence of
//! equality, not proof; disagreement is proof of inequality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::CElem;
use crate::dpoly::paren_if_compound;
use crate::kfield::{KCtx, KElem};
use crate::par::Exec;
use crate::random::Sampler;

/// An exponent `num / q^level` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: i64,
    level: u32,
    q: u64,
}

impl Exponent {
    pub fn new(num: i64, level: u32, q: u64) -> Self {
        let (mut num, mut level) = (num, level);
        while level > 0 && num % q as i64 == 0 {
            num /= q as i64;
            level -= 1;
        }
        Exponent { num, level, q }
    }

    pub fn integer(n: i64, q: u64) -> Self {
        Exponent { num: n, level: 0, q }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `q·e`.
    pub fn times_q(self) -> Self {
        if self.level > 0 {
            Exponent { level: self.level - 1, ..self }
        } else {
            Exponent { num: self.num * self.q as i64, ..self }
        }
    }

    /// `e/q`.
    pub fn over_q(self) -> Self {
        Self::new(self.num, self.level + 1, self.q)
    }

    pub fn add(self, other: Exponent) -> Self {
        let level = self.level.max(other.level);
        let scale = |e: Exponent| e.num * (e.q as i64).pow(level - e.level);
        Self::new(scale(self) + scale(other), level, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.num as i128 * (self.q as i128).pow(other.level);
        let b = other.num as i128 * (other.q as i128).pow(self.level);
        a.cmp(&b)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.level, self.num) {
            (0, n) if n >= 0 => write!(f, "{n}"),
            (0, n) => write!(f, "({n})"),
            (l, n) => write!(f, "({n}/{})", self.q.pow(l)),
        }
    }
}

/// A finite sum `Σ c_e t^e` with coefficients in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncElem {
    ctx: KCtx,
    terms: BTreeMap<Exponent, KElem>,
}

impl FuncElem {
    pub fn zero(ctx: &KCtx) -> Self {
        FuncElem { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: KElem) -> Self {
        let q = c.ctx().q();
        Self::monomial(c, Exponent::integer(0, q))
    }

    /// `t`.
    pub fn t(ctx: &KCtx) -> Self {
        Self::monomial(ctx.one(), Exponent::integer(1, ctx.q()))
    }

    pub fn monomial(c: KElem, e: Exponent) -> Self {
        let mut f = Self::zero(c.ctx());
        f.add_term(e, c);
        f
    }

    fn add_term(&mut self, e: Exponent, c: KElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    fn map_terms(&self, f: impl Fn(Exponent, &KElem) -> (Exponent, KElem)) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (&e, c) in &self.terms {
            let (e2, c2) = f(e, c);
            out.add_term(e2, c2);
        }
        out
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &KElem)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &FuncElem) -> FuncElem {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FuncElem) -> FuncElem {
        self.add(&other.scale(&-self.ctx.one()))
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &KElem) -> FuncElem {
        self.map_terms(|e, a| (e, c * a))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &FuncElem) -> FuncElem {
        let mut out = Self::zero(&self.ctx);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    /// The sole `(c, e)` of a one-term sum.
    pub fn as_monomial(&self) -> Option<(KElem, Exponent)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((&e, c)), None) => Some((c.clone(), e)),
            _ => None,
        }
    }

    pub fn parse(ctx: &KCtx, s: &str) -> Result<FuncElem, crate::parse::ParseError> {
        crate::parse::parse_f(ctx, s)
    }
}

impl fmt::Display for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let power = match (e.level, e.num) {
                (0, 0) => None,
                (0, 1) => Some("t".to_string()),
                _ => Some(format!("t^{e}")),
            };
            match power {
                None => write!(f, "{c}")?,
                Some(t) if c.is_one() => f.write_str(&t)?,
                Some(t) => write!(f, "{}*{t}", paren_if_compound(c.to_string()))?,
            }
        }
        Ok(())
    }
}

/// `f ↦ f^q`.
pub fn op_x(f: &FuncElem) -> FuncElem {
    f.map_terms(|e, c| (e.times_q(), c.sigma()))
}

/// `Δu(t) = u(xt) − x·u(t)`.
pub fn op_delta(f: &FuncElem) -> FuncElem {
    let ctx = f.ctx().clone();
    f.map_terms(|e, c| (e, c * (ctx.x_pow(e.num, e.level) - ctx.x())))
}

/// Termwise `q`-th root of `Δ`.
pub fn op_y(f: &FuncElem) -> FuncElem {
    op_delta(f).map_terms(|e, c| (e.over_q(), c.sigma_inv()))
}

/// Action of `u = Σ λ_ij X^i Y^j`.
pub fn apply_algebra(u: &CElem, f: &FuncElem) -> FuncElem {
    let mut y_pows = vec![f.clone()];
    let mut out = FuncElem::zero(f.ctx());
    for m in u.to_monomials() {
        while y_pows.len() <= m.j as usize {
            let next = op_y(y_pows.last().expect("nonempty"));
            y_pows.push(next);
        }
        let mut g = y_pows[m.j as usize].clone();
        for _ in 0..m.i {
            g = op_x(&g);
        }
        out = out.add(&g.scale(&m.coeff));
    }
    out
}

/// A random monomial `c·t^e` with `|e| ≤ 4` and `e ∈ q^{-2}Z`.
pub fn random_monomial(ctx: &KCtx, rng: &mut ChaCha8Rng) -> FuncElem {
    let q = ctx.q();
    let level = rng.gen_range(0..=2u32);
    let bound = 4 * q.pow(level) as i64;
    let e = Exponent::new(rng.gen_range(-bound..=bound), level, q);
    let mut s = Sampler::new(ctx, rng.gen());
    FuncElem::monomial(s.nonzero_kelem(), e)
}

/// Result of comparing two elements on random monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub trials: usize,
    /// Index of the first separating trial, if any.
    pub separated_at: Option<usize>,
}

impl OracleVerdict {
    pub fn consistent(&self) -> bool {
        self.separated_at.is_none()
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.separated_at {
            None => write!(f, "consistent ({} trials)", self.trials),
            Some(i) => write!(f, "distinct (separated at trial {})", i + 1),
        }
    }
}

/// Applies `u` and `w` to `trials` seeded random monomials.
pub fn oracle_check(u: &CElem, w: &CElem, trials: usize, seed: u64, exec: Exec) -> OracleVerdict {
    let ctx = u.ctx().clone();
    let agree = exec.map_range(trials, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
        let f = random_monomial(&ctx, &mut rng);
        apply_algebra(u, &f) == apply_algebra(w, &f)
    });
    OracleVerdict { trials, separated_at: agree.iter().position(|ok| !ok) }
}

pub fn oracle_equal(u: &CElem, w: &CElem, trials: usize, seed: u64) -> bool {
    oracle_check(u, w, trials, seed, Exec::default()).consistent()
}
