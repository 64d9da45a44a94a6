//! Central elements `α_O`, ideals as exponent vectors over finite orbits,
//! and factorization of central polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::CElem;
use crate::dpoly::HPoly;
use crate::gf::FqElem;
use crate::kfield::{KCtx, KElem};
use crate::orbits::{count_orbits, CyclicOrbit, OrbitError};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("{0}")]
    Orbit(#[from] OrbitError),
    #[error("NotCentral: {0}")]
    NotCentral(String),
    #[error("ContextMismatch: ideals over different ground fields")]
    ContextMismatch,
    #[error("ZeroPolynomial: 0 has no factorization")]
    ZeroPolynomial,
    #[error("AmbientTooSmall: a factor of degree {degree} has no roots in the coefficient field; enlarge k")]
    AmbientTooSmall { degree: usize },
}

/// `α_O = ∏_{i<n} σ^i(H − λ)` for the orbit of a cyclic `λ`.
pub fn alpha(lambda: &KElem) -> Result<HPoly, IdealError> {
    let orbit = CyclicOrbit::from_lambda(lambda)?;
    let base = HPoly::linear(lambda);
    let mut cur = base.clone();
    let mut acc = base;
    for _ in 1..orbit.len() {
        cur = cur.sigma();
        acc = &acc * &cur;
    }
    Ok(acc)
}

pub fn alpha_of(orbit: &CyclicOrbit, ctx: &KCtx) -> HPoly {
    alpha(&orbit.representative(ctx)).expect("orbit representatives are cyclic")
}

fn product_of(ctx: &KCtx, exps: &BTreeMap<CyclicOrbit, u32>) -> HPoly {
    exps.iter()
        .fold(HPoly::one(ctx), |acc, (o, &e)| acc * alpha_of(o, ctx).pow(e))
}

fn write_exponents(f: &mut fmt::Formatter<'_>, exps: &BTreeMap<CyclicOrbit, u32>) -> fmt::Result {
    let mut first = true;
    for (o, e) in exps {
        if !first {
            f.write_str(" * ")?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{o}")?;
        } else {
            write!(f, "{o}^{e}")?;
        }
    }
    Ok(())
}

fn exponents_json(exps: &BTreeMap<CyclicOrbit, u32>) -> Value {
    Value::Array(
        exps.iter()
            .map(|(o, e)| json!({"orbit_key": o.key().to_string(), "n": o.len(), "exponent": e}))
            .collect(),
    )
}

/// A two-sided ideal `∏ m_O^{n(O)}`; the empty product is `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ctx: KCtx,
    exponents: BTreeMap<CyclicOrbit, u32>,
}

impl Ideal {
    pub fn unit(ctx: &KCtx) -> Self {
        Ideal { ctx: ctx.clone(), exponents: BTreeMap::new() }
    }

    /// `m_O = Cα_O`.
    pub fn maximal(ctx: &KCtx, orbit: CyclicOrbit) -> Self {
        Ideal { ctx: ctx.clone(), exponents: BTreeMap::from([(orbit, 1)]) }
    }

    pub fn from_exponents(ctx: &KCtx, exps: impl IntoIterator<Item = (CyclicOrbit, u32)>) -> Self {
        let mut out = Self::unit(ctx);
        for (o, e) in exps {
            if e > 0 {
                *out.exponents.entry(o).or_insert(0) += e;
            }
        }
        out
    }

    pub fn exponents(&self) -> &BTreeMap<CyclicOrbit, u32> {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        if self.ctx != other.ctx {
            return Err(IdealError::ContextMismatch);
        }
        let mut out = self.clone();
        for (o, e) in &other.exponents {
            *out.exponents.entry(o.clone()).or_insert(0) += e;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Ideal {
        if e == 0 {
            return Self::unit(&self.ctx);
        }
        Ideal { ctx: self.ctx.clone(), exponents: self.exponents.iter().map(|(o, n)| (o.clone(), n * e)).collect() }
    }

    /// `I ∩ D` as its monic generator `∏ α_O^{n(O)}`.
    pub fn contract(&self) -> HPoly {
        product_of(&self.ctx, &self.exponents)
    }

    /// The central generator embedded in `C`.
    pub fn generator(&self) -> CElem {
        CElem::from_hpoly(self.contract())
    }

    pub fn to_json(&self) -> Value {
        json!({"factors": exponents_json(&self.exponents)})
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("C");
        }
        write_exponents(f, &self.exponents)
    }
}

/// A central element `γ ∏ α_O^{n(O)}` with `γ ∈ F_q^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentreElem {
    pub gamma: FqElem,
    pub exponents: BTreeMap<CyclicOrbit, u32>,
}

impl CentreElem {
    pub fn to_hpoly(&self, ctx: &KCtx) -> HPoly {
        product_of(ctx, &self.exponents).scale(&ctx.constant(&self.gamma))
    }

    pub fn ideal(&self, ctx: &KCtx) -> Ideal {
        Ideal::from_exponents(ctx, self.exponents.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({"gamma": self.gamma.to_string(), "factors": exponents_json(&self.exponents)})
    }
}

impl fmt::Display for CentreElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gamma)?;
        if !self.exponents.is_empty() {
            f.write_str(" * ")?;
            write_exponents(f, &self.exponents)?;
        }
        Ok(())
    }
}

/// Dense polynomial over the coefficient field, lowest degree first.
fn eval_fq(poly: &[FqElem], x: &FqElem) -> FqElem {
    poly.iter().rev().fold(x.ctx().zero(), |acc, c| acc * x + c)
}

/// Divides by `(M − r)`; `None` if `r` is not a root.
fn deflate(poly: &[FqElem], r: &FqElem) -> Option<Vec<FqElem>> {
    let n = poly.len();
    let mut out = vec![r.ctx().zero(); n - 1];
    let mut carry = r.ctx().zero();
    for i in (1..n).rev() {
        carry = &poly[i] + &(&carry * r);
        out[i - 1] = carry.clone();
    }
    (&poly[0] + &(&carry * r)).is_zero().then_some(out)
}

/// Factors a central polynomial as `γ ∏ α_O^{n(O)}`.
///
/// Substituting `H = M − x^(1/q)` turns a central polynomial into one with
/// `F_q` coefficients, whose roots are found by exhaustive search over the
/// coefficient field.
pub fn factor_central(d: &HPoly, exec: Exec) -> Result<CentreElem, IdealError> {
    if d.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    let ctx = d.ctx();
    let nu = ctx.nu();
    let g = d.shift_arg(&-ctx.x_pow(1, 1));
    let mut coeffs = Vec::with_capacity(g.coeffs().len());
    for (i, c) in g.coeffs().iter().enumerate() {
        match c.as_constant() {
            Some(a) if a.in_fq(nu) => coeffs.push(a),
            _ => {
                return Err(IdealError::NotCentral(format!(
                    "coefficient of M^{i} after H = M - x^(1/q) is {c}, which is not in F_q"
                )))
            }
        }
    }
    let gamma = coeffs.last().expect("nonzero").clone();
    let inv = gamma.inv().expect("leading coefficient is nonzero");
    let mut rest: Vec<FqElem> = coeffs.iter().map(|c| c * &inv).collect();

    let f = ctx.field();
    let roots: Vec<FqElem> = exec
        .filter_range(f.order() as usize, |c| eval_fq(&rest, &f.from_code(c as u32)).is_zero())
        .into_iter()
        .map(|c| f.from_code(c as u32))
        .collect();
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for r in &roots {
        while rest.len() > 1 {
            match deflate(&rest, r) {
                Some(next) => {
                    rest = next;
                    *mult.entry(r.code()).or_insert(0) += 1;
                }
                None => break,
            }
        }
    }
    if rest.len() > 1 {
        return Err(IdealError::AmbientTooSmall { degree: rest.len() - 1 });
    }

    let mut exponents = BTreeMap::new();
    for (&code, &m) in &mult {
        let r = f.from_code(code);
        let orbit = CyclicOrbit::from_mu(&r, nu);
        for j in 0..orbit.len() {
            let img = r.frobenius_pow((j * nu) as i64);
            if mult.get(&img.code()) != Some(&m) {
                return Err(IdealError::NotCentral(format!(
                    "root {r} has multiplicity {m} but its conjugate {img} does not"
                )));
            }
        }
        exponents.insert(orbit, m);
    }
    Ok(CentreElem { gamma, exponents })
}

/// Structural constants of `C/Cα_O ≅ M_n(K[t, t^{-1}; σ^n])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorRingInvariants {
    pub matrix_degree: u32,
    pub centre_order: u64,
    pub kdim: u32,
    pub gldim: u32,
    pub is_domain: bool,
}

pub fn factor_ring_invariants(orbit: &CyclicOrbit, ctx: &KCtx) -> FactorRingInvariants {
    let n = orbit.len();
    FactorRingInvariants {
        matrix_degree: n,
        centre_order: ctx.q().pow(n),
        kdim: 1,
        gldim: 1,
        is_domain: n == 1,
    }
}

/// `min |Z(C/m_O)|` over maximal ideals, which recovers `q = p^ν`.
pub fn ring_invariant(ctx: &KCtx) -> u64 {
    let q = ctx.q();
    let n = (1..)
        .find(|&n| count_orbits(q, n).is_ok_and(|c| c > 0))
        .expect("fixed orbits exist");
    q.pow(n)
}
