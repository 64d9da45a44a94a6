//! Seeded generators for random test elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::CElem;
use crate::dpoly::HPoly;
use crate::gf::FqElem;
use crate::kfield::{KCtx, KElem};

/// Deterministic source of random field, polynomial and algebra elements.
pub struct Sampler {
    ctx: KCtx,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(ctx: &KCtx, seed: u64) -> Self {
        Sampler { ctx: ctx.clone(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform element of the coefficient field `F_{p^k}`.
    pub fn fq(&mut self) -> FqElem {
        let f = self.ctx.field();
        let order = u32::try_from(f.order()).unwrap_or(u32::MAX);
        f.from_code(self.rng.gen_range(0..order))
    }

    pub fn nonzero_fq(&mut self) -> FqElem {
        loop {
            let c = self.fq();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Uniform element of the subfield `F_q`.
    pub fn fq_small(&mut self) -> FqElem {
        let nu = self.ctx.nu();
        loop {
            let c = self.fq();
            if c.in_fq(nu) {
                return c;
            }
        }
    }

    /// A short sum of monomials `c·x^{a/q^l}`, sometimes over `x + c`.
    pub fn kelem(&mut self) -> KElem {
        let n_terms = self.rng.gen_range(1..=3);
        let mut out = self.ctx.zero();
        for _ in 0..n_terms {
            let c = self.nonzero_fq();
            let c = self.ctx.constant(&c);
            let level = self.rng.gen_range(0..=1);
            let num = self.rng.gen_range(0..=3);
            out = out + c * self.ctx.x_pow(num, level);
        }
        if self.rng.gen_ratio(1, 4) {
            let shift = self.fq();
            let shift = self.ctx.constant(&shift);
            out = out / (self.ctx.x() + shift);
        }
        out
    }

    pub fn nonzero_kelem(&mut self) -> KElem {
        loop {
            let c = self.kelem();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn hpoly(&mut self, max_degree: usize) -> HPoly {
        let coeffs = (0..=max_degree)
            .map(|_| if self.rng.gen_bool(0.5) { self.kelem() } else { self.ctx.zero() })
            .collect();
        HPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// Random element with support in `[-span, span]` and `H`-degree at most
    /// `max_degree`.
    pub fn celem(&mut self, span: i64, max_degree: usize) -> CElem {
        let terms: Vec<(i64, HPoly)> = (-span..=span)
            .filter_map(|n| self.rng.gen_bool(0.4).then(|| (n, self.hpoly(max_degree))))
            .collect();
        CElem::from_terms(&self.ctx, terms)
    }

    pub fn nonzero_celem(&mut self, span: i64, max_degree: usize) -> CElem {
        loop {
            let u = self.celem(span, max_degree);
            if !u.is_zero() {
                return u;
            }
        }
    }
}
