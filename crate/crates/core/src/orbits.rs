//! σ-orbits of the maximal ideals `(H − λ)` of `D = K[H]`.
//!
//! `σ(H − λ) = H − (λ^q + λ_1)`, so writing `λ = −x^(1/q) + μ` the action is
//! `μ ↦ μ^q`. Finite orbits are exactly those with `μ` a constant of
//! `F_{q^n}`; the single degenerate orbit is the one through `(H)`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dpoly::shift_root;
use crate::gf::{prime_factors, FqElem};
use crate::kfield::{KCtx, KElem};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("NotCyclic: {0} does not lie in a finite orbit")]
    NotCyclic(String),
    #[error("AmbientTooSmall: F_(q^{n}) needs nu*n = {needed} to divide k = {k}")]
    AmbientTooSmall { n: u32, needed: u64, k: u32 },
    #[error("ZeroLength: orbit length must be positive")]
    ZeroLength,
}

/// Which half of the degenerate orbit an ideal lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `σ^i((H))` with `i ≤ 0`.
    Minus,
    /// `σ^i((H))` with `i ≥ 1`.
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitClass {
    Cyclic { n: u32, mu: FqElem },
    LinearDegenerate { index: i64, side: Side },
    LinearNonDegenerate,
}

impl OrbitClass {
    pub fn to_json(&self) -> Value {
        match self {
            OrbitClass::Cyclic { n, mu } => json!({"variant": "Cyclic", "n": n, "mu": mu.to_string()}),
            OrbitClass::LinearDegenerate { index, side } => {
                json!({"variant": "LinearDegenerate", "index": index, "side": side.to_string()})
            }
            OrbitClass::LinearNonDegenerate => json!({"variant": "LinearNonDegenerate"}),
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::Cyclic { n, mu } => write!(f, "Cyclic n={n} mu={mu}"),
            OrbitClass::LinearDegenerate { index, side } => write!(f, "LinearDegenerate index={index} side={side}"),
            OrbitClass::LinearNonDegenerate => f.write_str("LinearNonDegenerate"),
        }
    }
}

/// `λ + x^(1/q)`.
pub fn mu_of(lambda: &KElem) -> KElem {
    lambda + &lambda.ctx().x_pow(1, 1)
}

/// Classifies the orbit of `(H − λ)`.
pub fn classify(lambda: &KElem) -> OrbitClass {
    let ctx = lambda.ctx();
    let mu = mu_of(lambda);
    if let Some(c) = mu.as_constant() {
        return OrbitClass::Cyclic { n: c.degree_over_q(ctx.nu()), mu: c };
    }
    // On the degenerate orbit μ = x^(q^(i−1)), so the valuation pins down i.
    match degenerate_index(ctx, mu.valuation().expect("non-constant element is nonzero")) {
        Some(i) if shift_root(&ctx.zero(), i) == *lambda => OrbitClass::LinearDegenerate {
            index: i,
            side: if i <= 0 { Side::Minus } else { Side::Plus },
        },
        _ => OrbitClass::LinearNonDegenerate,
    }
}

/// The `i` with `q^(i−1) = v`, if any.
fn degenerate_index(ctx: &KCtx, v: Rational64) -> Option<i64> {
    let q = ctx.q() as i64;
    let power_of_q = |mut n: i64| -> Option<i64> {
        let mut j = 0;
        while n > 1 {
            if n % q != 0 {
                return None;
            }
            n /= q;
            j += 1;
        }
        (n == 1).then_some(j)
    };
    if *v.denom() == 1 {
        power_of_q(*v.numer()).map(|j| j + 1)
    } else if *v.numer() == 1 {
        power_of_q(*v.denom()).map(|j| 1 - j)
    } else {
        None
    }
}

/// A finite orbit, identified by the least `μ` (coefficient order) in
/// the `q`-Frobenius orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrbit {
    n: u32,
    key: FqElem,
}

impl CyclicOrbit {
    /// The orbit of `−x^(1/q) + μ`.
    pub fn from_mu(mu: &FqElem, nu: u32) -> Self {
        let n = mu.degree_over_q(nu);
        let key = (0..n)
            .map(|j| mu.frobenius_pow((j * nu) as i64))
            .min()
            .expect("orbit is nonempty");
        CyclicOrbit { n, key }
    }

    pub fn from_lambda(lambda: &KElem) -> Result<Self, OrbitError> {
        match classify(lambda) {
            OrbitClass::Cyclic { mu, .. } => Ok(Self::from_mu(&mu, lambda.ctx().nu())),
            _ => Err(OrbitError::NotCyclic(lambda.to_string())),
        }
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn key(&self) -> &FqElem {
        &self.key
    }

    /// `−x^(1/q) + key`.
    pub fn representative(&self, ctx: &KCtx) -> KElem {
        ctx.constant(&self.key) - ctx.x_pow(1, 1)
    }

    /// All `n` roots `λ` with `(H − λ)` in the orbit, starting at the key.
    pub fn elements(&self, ctx: &KCtx) -> Vec<KElem> {
        let lambda = self.representative(ctx);
        (0..self.n as i64).map(|j| shift_root(&lambda, j)).collect()
    }
}

impl PartialOrd for CyclicOrbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicOrbit {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.key).cmp(&(other.n, &other.key))
    }
}

impl fmt::Display for CyclicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O[n={}, mu={}]", self.n, self.key)
    }
}

/// `[λ, σ·λ, …]` for a cyclic `λ`, closing after `n` steps.
pub fn orbit_elements(lambda: &KElem) -> Result<Vec<KElem>, OrbitError> {
    let n = match classify(lambda) {
        OrbitClass::Cyclic { n, .. } => n,
        _ => return Err(OrbitError::NotCyclic(lambda.to_string())),
    };
    Ok((0..n as i64).map(|j| shift_root(lambda, j)).collect())
}

pub fn mobius(n: u64) -> i64 {
    let ps = prime_factors(n);
    let squarefree = ps.iter().fold(1u64, |acc, p| acc * p) == n;
    match (squarefree, ps.len() % 2) {
        (false, _) => 0,
        (true, 0) => 1,
        (true, _) => -1,
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `o_n = (1/n) Σ_{d|n} μ(d) q^(n/d)`, the number of orbits of length `n`.
pub fn count_orbits(q: u64, n: u32) -> Result<u64, OrbitError> {
    if n == 0 {
        return Err(OrbitError::ZeroLength);
    }
    let n = n as u64;
    let sum: i128 = divisors(n)
        .into_iter()
        .map(|d| mobius(d) as i128 * (q as i128).pow((n / d) as u32))
        .sum();
    debug_assert_eq!(sum % n as i128, 0);
    Ok((sum / n as i128) as u64)
}

/// `φ(q^n − 1) / n`, the alternative closed form, as an exact rational.
pub fn phi_form(q: u64, n: u32) -> Rational64 {
    let m = q.pow(n) - 1;
    let phi = prime_factors(m).iter().fold(m, |acc, p| acc / p * (p - 1));
    Rational64::new(phi as i64, n as i64)
}

fn check_ambient(ctx: &KCtx, n: u32) -> Result<(), OrbitError> {
    if n == 0 {
        return Err(OrbitError::ZeroLength);
    }
    let needed = ctx.nu() as u64 * n as u64;
    if ctx.field().k() as u64 % needed != 0 {
        return Err(OrbitError::AmbientTooSmall { n, needed, k: ctx.field().k() });
    }
    Ok(())
}

/// Counts elements of exact `q`-degree `n` in the coefficient field and
/// divides by `n`.
pub fn brute_count_orbits(ctx: &KCtx, n: u32, exec: Exec) -> Result<u64, OrbitError> {
    check_ambient(ctx, n)?;
    let f = ctx.field();
    let nu = ctx.nu();
    let hits = exec.count_range(f.order() as usize, |c| f.from_code(c as u32).degree_over_q(nu) == n);
    Ok(hits as u64 / n as u64)
}

/// All orbits of length `n`, sorted by key.
pub fn list_orbits(ctx: &KCtx, n: u32, exec: Exec) -> Result<Vec<CyclicOrbit>, OrbitError> {
    check_ambient(ctx, n)?;
    let f = ctx.field();
    let nu = ctx.nu();
    let codes = exec.filter_range(f.order() as usize, |c| {
        let mu = f.from_code(c as u32);
        mu.degree_over_q(nu) == n && CyclicOrbit::from_mu(&mu, nu).key == mu
    });
    let mut out: Vec<CyclicOrbit> = codes
        .into_iter()
        .map(|c| CyclicOrbit::from_mu(&f.from_code(c as u32), nu))
        .collect();
    out.sort();
    Ok(out)
}
