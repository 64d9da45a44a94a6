//! Automorphisms `τ_{α,γ,δ}`: `X ↦ αX`, `Y ↦ γσ^{-1}(α^{-1})Y`, scalars via
//! the substitution `ω: x ↦ γx + δ`.

use std::fmt;

use thiserror::Error;

use crate::algebra::CElem;
use crate::dpoly::HPoly;
use crate::gf::FqElem;
use crate::kfield::{KCtx, KElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutoError {
    #[error("ZeroAlpha: alpha must be nonzero")]
    ZeroAlpha,
    #[error("GammaNotInFq: gamma = {0} must be a nonzero element of F_q")]
    GammaNotInFq(String),
    #[error("DeltaNotInFq: delta = {0} must lie in F_q")]
    DeltaNotInFq(String),
}

/// Images of the generators plus a scalar substitution `x ↦ γx + δ`.
///
/// Nothing forces such a map to respect the defining relations; that is what
/// [`check_homomorphism`] tests.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub x_image: CElem,
    pub y_image: CElem,
    pub gamma: FqElem,
    pub delta: FqElem,
}

impl GeneratorMap {
    pub fn scalar(&self, c: &KElem) -> KElem {
        c.substitute_affine(self.gamma.raw(), self.delta.raw())
    }

    /// Extends to `Σ d_n(H) v_n` multiplicatively, with `H ↦ image(Y)·image(X)`.
    pub fn apply(&self, u: &CElem) -> CElem {
        let ctx = u.ctx();
        let h_img = &self.y_image * &self.x_image;
        let mut h_pows = vec![CElem::one(ctx)];
        let mut out = CElem::zero(ctx);
        for (n, d) in u.terms() {
            let deg = d.degree().unwrap_or(0);
            while h_pows.len() <= deg {
                let next = h_pows.last().unwrap() * &h_img;
                h_pows.push(next);
            }
            let mut poly = CElem::zero(ctx);
            for (k, c) in d.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    poly = poly + h_pows[k].clone().scale(&self.scalar(c));
                }
            }
            let v = if n >= 0 { self.x_image.pow(n as u32) } else { self.y_image.pow((-n) as u32) };
            out = out + poly * v;
        }
        out
    }
}

/// An automorphism `τ_{α,γ,δ}` of the Carlitz algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzAuto {
    alpha: KElem,
    gamma: FqElem,
    delta: FqElem,
}

impl CarlitzAuto {
    pub fn new(alpha: KElem, gamma: FqElem, delta: FqElem) -> Result<Self, AutoError> {
        let nu = alpha.ctx().nu();
        if alpha.is_zero() {
            return Err(AutoError::ZeroAlpha);
        }
        if gamma.is_zero() || !gamma.in_fq(nu) {
            return Err(AutoError::GammaNotInFq(gamma.to_string()));
        }
        if !delta.in_fq(nu) {
            return Err(AutoError::DeltaNotInFq(delta.to_string()));
        }
        Ok(CarlitzAuto { alpha, gamma, delta })
    }

    pub fn identity(ctx: &KCtx) -> Self {
        Self::k_linear(ctx.one()).expect("1 is nonzero")
    }

    /// The `K`-automorphism `τ_α` (`γ = 1`, `δ = 0`).
    pub fn k_linear(alpha: KElem) -> Result<Self, AutoError> {
        let f = alpha.ctx().field().clone();
        Self::new(alpha, f.one(), f.zero())
    }

    pub fn alpha(&self) -> &KElem {
        &self.alpha
    }

    pub fn gamma(&self) -> &FqElem {
        &self.gamma
    }

    pub fn delta(&self) -> &FqElem {
        &self.delta
    }

    pub fn is_k_linear(&self) -> bool {
        self.gamma.is_one() && self.delta.is_zero()
    }

    /// `ω(λ)` for `ω: x ↦ γx + δ`.
    pub fn omega(&self, c: &KElem) -> KElem {
        c.substitute_affine(self.gamma.raw(), self.delta.raw())
    }

    pub fn as_map(&self) -> GeneratorMap {
        let ctx = self.alpha.ctx();
        let y_coeff = ctx.constant(&self.gamma) * self.alpha.inv().expect("alpha is nonzero").sigma_inv();
        GeneratorMap {
            x_image: CElem::term(HPoly::constant(self.alpha.clone()), 1),
            y_image: CElem::term(HPoly::constant(y_coeff), -1),
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
        }
    }

    pub fn apply(&self, u: &CElem) -> CElem {
        self.as_map().apply(u)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CarlitzAuto) -> CarlitzAuto {
        CarlitzAuto {
            alpha: self.omega(&other.alpha) * &self.alpha,
            gamma: &self.gamma * &other.gamma,
            delta: &(&other.gamma * &self.delta) + &other.delta,
        }
    }

    pub fn invert(&self) -> CarlitzAuto {
        let g = self.gamma.inv().expect("gamma is nonzero");
        let d = -(&g * &self.delta);
        let shell = CarlitzAuto { alpha: self.alpha.ctx().one(), gamma: g, delta: d };
        let alpha = shell.omega(&self.alpha.inv().expect("alpha is nonzero"));
        CarlitzAuto { alpha, ..shell }
    }
}

impl fmt::Display for CarlitzAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau[alpha={}, gamma={}, delta={}]", self.alpha, self.gamma, self.delta)
    }
}

/// Checks additivity and multiplicativity on consecutive sample pairs and
/// the defining relations on the generator images.
pub fn check_homomorphism(map: &GeneratorMap, samples: &[CElem]) -> bool {
    let Some(first) = samples.first() else {
        return relations_hold(map, None);
    };
    let ctx = first.ctx();
    let pairs_ok = samples.windows(2).all(|w| {
        let (u, v) = (&w[0], &w[1]);
        map.apply(&(u * v)) == map.apply(u) * map.apply(v) && map.apply(&(u + v)) == map.apply(u) + map.apply(v)
    });
    pairs_ok && relations_hold(map, Some(ctx))
}

fn relations_hold(map: &GeneratorMap, ctx: Option<&KCtx>) -> bool {
    let ctx = ctx.unwrap_or_else(|| map.x_image.ctx());
    let (tx, ty) = (&map.x_image, &map.y_image);
    let lam = |c: &KElem| CElem::scalar(map.scalar(c));
    if ty * tx - tx * ty != lam(&ctx.lambda1()) {
        return false;
    }
    let w = ctx.constant(&ctx.field().w());
    let probes = [ctx.x(), ctx.x_pow(1, 1), ctx.lambda1(), &w * &ctx.x() + ctx.one()];
    probes.iter().all(|c| {
        tx * lam(c) == lam(&c.sigma()) * tx && ty * lam(c) == lam(&c.sigma_inv()) * ty
    })
}
