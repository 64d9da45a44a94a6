//! Carlitz-algebra elements in graded normal form `Σ d_n(H) v_n`, where
//! `v_n = X^n` for `n > 0`, `v_n = Y^{-n}` for `n < 0` and `v_0 = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::dpoly::{paren_if_compound, HPoly};
use crate::kfield::{KCtx, KElem, KError};

/// Root of `σ^i(H)`: `σ^i(H) = H − degenerate_root(i)`.
///
/// Equal to `−x^(1/q) + x^(q^(i−1))` for every integer `i`; the unit tests
/// check this against the iterated shift.
pub(crate) fn degenerate_root(ctx: &KCtx, i: i64) -> KElem {
    let tail = if i >= 1 {
        let e = ctx.q_pow(u32::try_from(i - 1).expect("shift too large"));
        ctx.x_pow(i64::try_from(e).expect("shift too large"), 0)
    } else {
        ctx.x_pow(1, u32::try_from(1 - i).expect("shift too large"))
    };
    tail - ctx.x_pow(1, 1)
}

/// `σ^i(H)` as a polynomial.
pub(crate) fn sigma_h(ctx: &KCtx, i: i64) -> HPoly {
    HPoly::linear(&degenerate_root(ctx, i))
}

/// The structure constant `(n, m)` in `v_n v_m = (n, m) v_{n+m}`.
pub fn structure_constant(ctx: &KCtx, n: i64, m: i64) -> HPoly {
    let range = if n > 0 && m < 0 {
        (n + m + 1).max(1)..=n
    } else if n < 0 && m > 0 {
        (n + 1)..=(n + m).min(0)
    } else {
        return HPoly::one(ctx);
    };
    range.fold(HPoly::one(ctx), |acc, i| acc * sigma_h(ctx, i))
}

/// An element of the Carlitz algebra.
#[derive(Clone)]
pub struct CElem {
    ctx: KCtx,
    terms: BTreeMap<i64, HPoly>,
}

/// One term `coeff · X^i Y^j` of the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub coeff: KElem,
}

impl CElem {
    pub fn zero(ctx: &KCtx) -> Self {
        CElem { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &KCtx) -> Self {
        Self::from_hpoly(HPoly::one(ctx))
    }

    pub fn scalar(c: KElem) -> Self {
        Self::from_hpoly(HPoly::constant(c))
    }

    pub fn from_hpoly(d: HPoly) -> Self {
        Self::term(d, 0)
    }

    /// `d(H) · v_n`.
    pub fn term(d: HPoly, n: i64) -> Self {
        let mut out = Self::zero(d.ctx());
        if !d.is_zero() {
            out.terms.insert(n, d);
        }
        out
    }

    pub fn v(ctx: &KCtx, n: i64) -> Self {
        Self::term(HPoly::one(ctx), n)
    }

    pub fn x_gen(ctx: &KCtx) -> Self {
        Self::v(ctx, 1)
    }

    pub fn y_gen(ctx: &KCtx) -> Self {
        Self::v(ctx, -1)
    }

    pub fn h(ctx: &KCtx) -> Self {
        Self::from_hpoly(HPoly::h(ctx))
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms(ctx: &KCtx, terms: impl IntoIterator<Item = (i64, HPoly)>) -> Self {
        let mut out = Self::zero(ctx);
        for (n, d) in terms {
            out.add_term(n, &d);
        }
        out
    }

    fn add_term(&mut self, n: i64, d: &HPoly) {
        assert!(d.ctx() == &self.ctx, "coefficient from a different ground field");
        if d.is_zero() {
            return;
        }
        let sum = match self.terms.get(&n) {
            Some(old) => old + d,
            None => d.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, sum);
        }
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Graded components in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &HPoly)> {
        self.terms.iter().map(|(&n, d)| (n, d))
    }

    /// Coefficient of `v_n` (zero when absent).
    pub fn component(&self, n: i64) -> HPoly {
        self.terms.get(&n).cloned().unwrap_or_else(|| HPoly::zero(&self.ctx))
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Largest H-degree among the components.
    pub fn h_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(HPoly::degree).max()
    }

    /// The scalar, when the element lies in `K`.
    pub fn as_scalar(&self) -> Option<KElem> {
        match self.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => self.terms.get(&0).and_then(HPoly::as_scalar),
            _ => None,
        }
    }

    fn check(&self, other: &CElem) -> Result<(), KError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(KError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &CElem) -> Result<CElem, KError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&n, d) in &other.terms {
            out.add_term(n, d);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CElem) -> Result<CElem, KError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CElem) -> Result<CElem, KError> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (&n, d) in &self.terms {
            for (&m, e) in &other.terms {
                let twisted = e.sigma_d(n);
                let c = structure_constant(&self.ctx, n, m);
                out.add_term(n + m, &(d * &twisted * c));
            }
        }
        Ok(out)
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &KElem) -> CElem {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(&n, d)| (n, d.scale(c))))
    }

    pub fn pow(&self, e: u32) -> CElem {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// `uw − wu`.
    pub fn commutator(&self, other: &CElem) -> CElem {
        &(self * other) - &(other * self)
    }

    /// Whether the element commutes with `X`, `Y` and the scalar `x`.
    pub fn is_central(&self) -> bool {
        let ctx = &self.ctx;
        [Self::x_gen(ctx), Self::y_gen(ctx), Self::scalar(ctx.x())]
            .iter()
            .all(|g| self.commutator(g).is_zero())
    }

    /// The algebra element `X^i Y^j`.
    pub fn monomial(ctx: &KCtx, i: u32, j: u32) -> CElem {
        &Self::v(ctx, i as i64) * &Self::v(ctx, -(j as i64))
    }

    /// Expansion `Σ λ_ij X^i Y^j`, sorted by `(i, j)`.
    pub fn to_monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for (&n, d) in &self.terms {
            let mut rest = d.clone();
            while let Some(k) = rest.degree() {
                let i = k as i64 + n.max(0);
                let j = k as i64 + (-n).max(0);
                let c = rest.leading_coeff();
                let basis = Self::monomial(&self.ctx, i as u32, j as u32).component(n);
                debug_assert!(basis.degree() == Some(k) && basis.is_monic());
                rest = &rest - &basis.scale(&c);
                out.push(Monomial { i: i as u32, j: j as u32, coeff: c });
            }
        }
        out.sort_by_key(|m| (m.i, m.j));
        out
    }

    pub fn from_monomials(ctx: &KCtx, monos: &[Monomial]) -> CElem {
        monos.iter().fold(Self::zero(ctx), |acc, m| &acc + &Self::monomial(ctx, m.i, m.j).scale(&m.coeff))
    }

    /// `[[degree, [coeff_0, coeff_1, ...]], ...]` with printed coefficients.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(n, d)| json!([n, d.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()]))
                .collect(),
        )
    }

    pub fn parse(ctx: &KCtx, s: &str) -> Result<CElem, crate::parse::ParseError> {
        crate::parse::parse_c(ctx, s)
    }
}

impl PartialEq for CElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ctx == other.ctx
    }
}
impl Eq for CElem {}

impl fmt::Display for CElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&n, d) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let gen = match n {
                0 => {
                    write!(f, "{d}")?;
                    continue;
                }
                1 => "X".to_string(),
                -1 => "Y".to_string(),
                n if n > 0 => format!("X^{n}"),
                n => format!("Y^{}", -n),
            };
            if d.is_one() {
                f.write_str(&gen)?;
            } else {
                write!(f, "{}*{gen}", paren_if_compound(d.to_string()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CElem({self})")
    }
}

macro_rules! c_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CElem> for &CElem {
            type Output = CElem;
            fn $method(self, rhs: &CElem) -> CElem {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CElem> for CElem {
            type Output = CElem;
            fn $method(self, rhs: CElem) -> CElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CElem> for CElem {
            type Output = CElem;
            fn $method(self, rhs: &CElem) -> CElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<CElem> for &CElem {
            type Output = CElem;
            fn $method(self, rhs: CElem) -> CElem {
                self.$method(&rhs)
            }
        }
    };
}

c_binop!(Add, add, try_add);
c_binop!(Sub, sub, try_sub);
c_binop!(Mul, mul, try_mul);

impl Neg for &CElem {
    type Output = CElem;
    fn neg(self) -> CElem {
        CElem { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(&n, d)| (n, -d)).collect() }
    }
}

impl Neg for CElem {
    type Output = CElem;
    fn neg(self) -> CElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::shift_root;

    fn ctx() -> KCtx {
        KCtx::new(2, 1, 2).unwrap()
    }

    #[test]
    fn degenerate_root_matches_iteration() {
        for k in [ctx(), KCtx::new(3, 1, 1).unwrap()] {
            for i in -6..=6 {
                assert_eq!(degenerate_root(&k, i), shift_root(&k.zero(), i), "i={i}");
                assert_eq!(sigma_h(&k, i), HPoly::h(&k).sigma_d(i), "i={i}");
            }
        }
    }

    #[test]
    fn defining_relations() {
        let k = ctx();
        let (x, y, h) = (CElem::x_gen(&k), CElem::y_gen(&k), CElem::h(&k));
        assert_eq!(&y * &x, h);
        assert_eq!(&x * &y, &h - &CElem::scalar(k.lambda1()));
        assert_eq!(y.commutator(&x), CElem::scalar(k.lambda1()));
        let r = CElem::scalar(k.x_pow(1, 1));
        assert_eq!(&x * &r, CElem::scalar(k.x()) * &x);
    }

    #[test]
    fn ad_h_on_x() {
        let k = KCtx::new(3, 1, 1).unwrap();
        let x = CElem::x_gen(&k);
        let e1 = k.x() - k.x_pow(1, 1);
        assert_eq!(CElem::h(&k).commutator(&x), x.scale(&e1));
        let h2 = CElem::h(&k).pow(2);
        assert!(CElem::h(&k).commutator(&h2).is_zero());
    }

    #[test]
    fn centrality_examples() {
        let k = ctx();
        assert!(CElem::one(&k).is_central());
        assert!(!CElem::h(&k).is_central());
        let z = CElem::h(&k) + CElem::scalar(k.x_pow(1, 1));
        assert!(z.is_central());
    }

    #[test]
    fn monomial_examples() {
        let k = ctx();
        let h = CElem::h(&k).to_monomials();
        assert_eq!(
            h,
            vec![
                Monomial { i: 0, j: 0, coeff: k.lambda1() },
                Monomial { i: 1, j: 1, coeff: k.one() },
            ]
        );
        let x2 = CElem::v(&k, 2).to_monomials();
        assert_eq!(x2, vec![Monomial { i: 2, j: 0, coeff: k.one() }]);
        let u = CElem::term(HPoly::h(&k).pow(2), -2) + CElem::term(HPoly::constant(k.x()), 3);
        assert_eq!(CElem::from_monomials(&k, &u.to_monomials()), u);
    }

    #[test]
    fn display() {
        let k = ctx();
        let u = CElem::term(HPoly::h(&k) + HPoly::constant(k.x()), 2) + CElem::y_gen(&k) + CElem::h(&k);
        assert_eq!(u.to_string(), "Y + H + (H + x)*X^2");
    }
}
