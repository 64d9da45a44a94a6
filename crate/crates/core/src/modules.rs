//! Truncated simple weight modules.
//!
//! Linear modules are quotients `C/C(H − λ)` (or the degenerate halves
//! `L_−`, `L_+`) with basis `b_g = v_g·1̄`. The weight of `b_g` is the root of
//! `σ^g(H − λ)`, and a graded term acts by
//!
//! ```text
//! d(H) v_j · (c b_g) = σ^j(c) · (d·(j, g))(w_{g+j}) · b_{g+j}
//! ```
//!
//! with `(j, g)` the algebra structure constant. Cyclic modules come from the
//! degree-one skew Laurent quotients and are `n`-dimensional.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{structure_constant, CElem};
use crate::dpoly::{shift_root, HPoly};
use crate::kfield::{KCtx, KElem};
use crate::orbits::{classify, OrbitClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("ClassificationMismatch: {lambda} is {found}, expected {expected}")]
    ClassificationMismatch { lambda: String, expected: &'static str, found: String },
    #[error("ZeroParameter: the cyclic parameter c must be nonzero")]
    ZeroParameter,
    #[error("TruncationOverflow: result has a nonzero component at index {index}, outside the window")]
    TruncationOverflow { index: i64 },
    #[error("IndexOutOfRange: basis index {index} is not in the module window")]
    IndexOutOfRange { index: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `L_− = C/(CH + CX)`, basis `Ȳ^i`, `i ≥ 0`.
    MinusDeg,
    /// `L_+ = C/(Cσ(H) + CY)`, basis `X̄^i`, `i ≥ 0`.
    PlusDeg,
    /// `C/C(H − λ)` for a non-degenerate linear orbit, basis indexed by `Z`.
    LinearNonDeg { lambda: KElem },
    /// `n`-dimensional module over a cyclic orbit with `X^n m_0 = c m_0`.
    Cyclic { lambda: KElem, n: u32, c: KElem },
}

impl ModuleKind {
    fn name(&self) -> &'static str {
        match self {
            ModuleKind::MinusDeg => "MinusDeg",
            ModuleKind::PlusDeg => "PlusDeg",
            ModuleKind::LinearNonDeg { .. } => "LinearNonDeg",
            ModuleKind::Cyclic { .. } => "Cyclic",
        }
    }
}

/// A finitely supported vector `Σ c_i e_i` in module coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModVec {
    coeffs: BTreeMap<i64, KElem>,
}

impl ModVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(ctx: &KCtx, i: i64) -> Self {
        Self::single(i, ctx.one())
    }

    pub fn single(i: i64, c: KElem) -> Self {
        let mut v = Self::zero();
        v.add_at(i, c);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, KElem)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in pairs {
            v.add_at(i, c);
        }
        v
    }

    pub fn add_at(&mut self, i: i64, c: KElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&i) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(i, sum);
        }
    }

    pub fn get(&self, i: i64) -> Option<&KElem> {
        self.coeffs.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &KElem)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn scale(&self, c: &KElem) -> ModVec {
        Self::from_pairs(self.coeffs.iter().map(|(&i, a)| (i, c * a)))
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_at(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_at(i, -c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, c) in &self.coeffs {
            m.insert(i.to_string(), Value::String(c.to_string()));
        }
        Value::Object(m)
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        f.write_str("}")
    }
}

/// Outcome of [`WeightModule::check_relations`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    ctx: KCtx,
    kind: ModuleKind,
    window: u32,
    /// `λ` with `H·b_0 = λ b_0`.
    base: KElem,
    /// Weights by graded position, precomputed over the window.
    weights: BTreeMap<i64, KElem>,
}

impl WeightModule {
    /// Builds a module; `window` is ignored for cyclic kinds.
    pub fn new(ctx: &KCtx, kind: ModuleKind, window: u32) -> Result<Self, ModuleError> {
        let mismatch = |lambda: &KElem, expected, found: OrbitClass| ModuleError::ClassificationMismatch {
            lambda: lambda.to_string(),
            expected,
            found: found.to_string(),
        };
        let base = match &kind {
            ModuleKind::MinusDeg => ctx.zero(),
            ModuleKind::PlusDeg => ctx.lambda1(),
            ModuleKind::LinearNonDeg { lambda } => match classify(lambda) {
                OrbitClass::LinearNonDegenerate => lambda.clone(),
                other => return Err(mismatch(lambda, "LinearNonDegenerate", other)),
            },
            ModuleKind::Cyclic { lambda, n, c } => {
                if c.is_zero() {
                    return Err(ModuleError::ZeroParameter);
                }
                match classify(lambda) {
                    OrbitClass::Cyclic { n: m, .. } if m == *n => lambda.clone(),
                    other => return Err(mismatch(lambda, "Cyclic with the given length", other)),
                }
            }
        };
        let mut m = WeightModule { ctx: ctx.clone(), kind, window, base, weights: BTreeMap::new() };
        let (lo, hi) = m.graded_window();
        let mut w = m.base.clone();
        m.weights.insert(0, w.clone());
        for g in 1..=hi {
            w = shift_root(&w, 1);
            m.weights.insert(g, w.clone());
        }
        let mut w = m.base.clone();
        for g in (lo..0).rev() {
            w = shift_root(&w, -1);
            m.weights.insert(g, w.clone());
        }
        Ok(m)
    }

    pub fn minus(ctx: &KCtx, window: u32) -> Self {
        Self::new(ctx, ModuleKind::MinusDeg, window).expect("always valid")
    }

    pub fn plus(ctx: &KCtx, window: u32) -> Self {
        Self::new(ctx, ModuleKind::PlusDeg, window).expect("always valid")
    }

    pub fn linear(lambda: &KElem, window: u32) -> Result<Self, ModuleError> {
        Self::new(lambda.ctx(), ModuleKind::LinearNonDeg { lambda: lambda.clone() }, window)
    }

    pub fn cyclic(lambda: &KElem, c: &KElem) -> Result<Self, ModuleError> {
        let n = match classify(lambda) {
            OrbitClass::Cyclic { n, .. } => n,
            other => {
                return Err(ModuleError::ClassificationMismatch {
                    lambda: lambda.to_string(),
                    expected: "Cyclic",
                    found: other.to_string(),
                })
            }
        };
        Self::new(lambda.ctx(), ModuleKind::Cyclic { lambda: lambda.clone(), n, c: c.clone() }, 0)
    }

    /// A copy whose weight at `index` is replaced; used as a negative control.
    pub fn with_weight_override(mut self, index: i64, value: KElem) -> Self {
        let g = self.to_graded(index);
        self.weights.insert(g, value);
        self
    }

    pub fn ctx(&self) -> &KCtx {
        &self.ctx
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.kind, ModuleKind::Cyclic { .. })
    }

    fn cyclic_len(&self) -> Option<i64> {
        match &self.kind {
            ModuleKind::Cyclic { n, .. } => Some(*n as i64),
            _ => None,
        }
    }

    /// Graded range `[lo, hi]` materialized by the window.
    fn graded_window(&self) -> (i64, i64) {
        let n = self.window as i64;
        match &self.kind {
            ModuleKind::MinusDeg => (-n, 0),
            ModuleKind::PlusDeg => (0, n),
            ModuleKind::LinearNonDeg { .. } => (-n, n),
            ModuleKind::Cyclic { n, .. } => (0, *n as i64 - 1),
        }
    }

    fn to_graded(&self, index: i64) -> i64 {
        match self.kind {
            ModuleKind::MinusDeg => -index,
            _ => index,
        }
    }

    fn from_graded(&self, g: i64) -> i64 {
        self.to_graded(g)
    }

    fn in_support(&self, g: i64) -> bool {
        match self.kind {
            ModuleKind::MinusDeg => g <= 0,
            ModuleKind::PlusDeg => g >= 0,
            _ => true,
        }
    }

    fn in_window(&self, g: i64) -> bool {
        let (lo, hi) = self.graded_window();
        (lo..=hi).contains(&g)
    }

    /// Basis indices in module coordinates, ascending.
    pub fn indices(&self) -> Vec<i64> {
        let (lo, hi) = self.graded_window();
        let mut v: Vec<i64> = (lo..=hi).map(|g| self.from_graded(g)).collect();
        v.sort();
        v
    }

    pub fn dim(&self) -> usize {
        self.indices().len()
    }

    fn weight_graded(&self, g: i64) -> KElem {
        let g = match self.cyclic_len() {
            Some(n) => g.rem_euclid(n),
            None => g,
        };
        self.weights.get(&g).cloned().unwrap_or_else(|| shift_root(&self.base, g))
    }

    /// Eigenvalue of `H` on the basis vector `index` (any index in the
    /// module's support, not only the window).
    pub fn weight(&self, index: i64) -> KElem {
        self.weight_graded(self.to_graded(index))
    }

    fn check_vec(&self, v: &ModVec) -> Result<(), ModuleError> {
        for (i, _) in v.iter() {
            if !self.in_window(self.to_graded(i)) {
                return Err(ModuleError::IndexOutOfRange { index: i });
            }
        }
        Ok(())
    }

    /// Coefficient `κ` with `d v_j · b_g = κ b_{g+j}` on a linear module;
    /// zero when the target leaves the module's support.
    fn linear_coeff(&self, d: &HPoly, j: i64, g: i64) -> KElem {
        let t = g + j;
        if !self.in_support(t) {
            return self.ctx.zero();
        }
        (d * structure_constant(&self.ctx, j, g)).eval(&self.weight_graded(t))
    }

    /// One application of `X` (`up`) or `Y` to a cyclic-module vector.
    fn cyclic_step(&self, v: &ModVec, up: bool) -> ModVec {
        let ModuleKind::Cyclic { n, c, .. } = &self.kind else { unreachable!() };
        let n = *n as i64;
        let mut out = ModVec::zero();
        for (i, a) in v.iter() {
            if up {
                let (t, k) = if i == n - 1 { (0, c.clone()) } else { (i + 1, self.ctx.one()) };
                out.add_at(t, a.sigma() * k);
            } else {
                let k = if i == 0 {
                    self.weight_graded(n - 1) * c.inv().expect("c is nonzero").sigma_inv()
                } else {
                    self.weight_graded(i - 1)
                };
                let t = (i - 1).rem_euclid(n);
                out.add_at(t, a.sigma_inv() * k);
            }
        }
        out
    }

    /// Acts by `u` on `v`.
    pub fn act(&self, u: &CElem, v: &ModVec) -> Result<ModVec, ModuleError> {
        assert!(u.ctx() == &self.ctx, "element from a different ground field");
        self.check_vec(v)?;
        let mut out = ModVec::zero();
        for (j, d) in u.terms() {
            if self.is_cyclic() {
                let mut w = v.clone();
                for _ in 0..j.unsigned_abs() {
                    w = self.cyclic_step(&w, j > 0);
                }
                for (i, a) in w.iter() {
                    out.add_at(i, a * &d.eval(&self.weight_graded(i)));
                }
                continue;
            }
            for (i, a) in v.iter() {
                let g = self.to_graded(i);
                let k = self.linear_coeff(d, j, g);
                if k.is_zero() {
                    continue;
                }
                if !self.in_window(g + j) {
                    return Err(ModuleError::TruncationOverflow { index: self.from_graded(g + j) });
                }
                out.add_at(self.from_graded(g + j), a.sigma_pow(j) * k);
            }
        }
        Ok(out)
    }

    /// Checks the defining relations on every basis vector at least two steps
    /// inside the window, composing single actions of `X` and `Y`.
    pub fn check_relations(&self) -> RelationReport {
        let ctx = &self.ctx;
        let (x, y, h) = (CElem::x_gen(ctx), CElem::y_gen(ctx), CElem::h(ctx));
        let sigma_h = CElem::from_hpoly(HPoly::h(ctx).sigma());
        let l1 = ctx.lambda1();
        let w = ctx.constant(&ctx.field().w());
        let probes = [ctx.x(), ctx.x_pow(1, 1) + &w, ctx.one() / (ctx.x() + ctx.one())];
        let (lo, hi) = self.graded_window();
        let margin = if self.is_cyclic() { 0 } else { 2 };
        let mut report = RelationReport::default();
        let fail = |report: &mut RelationReport, what: String| report.failures.push(what);
        for g in (lo + margin)..=(hi - margin) {
            if !self.in_support(g) {
                continue;
            }
            let i = self.from_graded(g);
            let v = ModVec::basis(ctx, i);
            let seq = |a: &CElem, b: &CElem, v: &ModVec| -> Result<ModVec, ModuleError> {
                self.act(a, &self.act(b, v)?)
            };
            let outcome = (|| -> Result<Vec<(String, bool)>, ModuleError> {
                let yx = seq(&y, &x, &v)?;
                let xy = seq(&x, &y, &v)?;
                let hv = self.act(&h, &v)?;
                let mut checks = vec![
                    ("YX = H".to_string(), yx == hv),
                    ("XY = sigma(H)".to_string(), xy == self.act(&sigma_h, &v)?),
                    ("YX - XY = lambda_1".to_string(), yx.sub(&xy) == v.scale(&l1)),
                ];
                for c in &probes {
                    let cv = v.scale(c);
                    let lhs = self.act(&x, &cv)?;
                    checks.push((format!("X({c} v) = {c}^q X v"), lhs == self.act(&x, &v)?.scale(&c.sigma())));
                    let lhs = self.act(&y, &cv)?;
                    checks.push((format!("Y({c} v) = {c}^(1/q) Y v"), lhs == self.act(&y, &v)?.scale(&c.sigma_inv())));
                }
                Ok(checks)
            })();
            match outcome {
                Ok(checks) => {
                    for (name, ok) in checks {
                        report.checked += 1;
                        if !ok {
                            fail(&mut report, format!("index {i}: {name}"));
                        }
                    }
                }
                Err(e) => fail(&mut report, format!("index {i}: {e}")),
            }
        }
        report
    }

    fn graded_coeffs(&self, d: &HPoly, j: i64) -> impl Fn(i64) -> bool + '_ {
        let d = d.clone();
        move |g: i64| {
            if self.is_cyclic() {
                let u = CElem::term(d.clone(), j);
                let i = g;
                !self.act(&u, &ModVec::basis(&self.ctx, i)).expect("cyclic actions never overflow").is_zero()
            } else {
                !self.linear_coeff(&d, j, g).is_zero()
            }
        }
    }

    /// Number of window basis vectors killed by `d(H) v_j`.
    pub fn kernel_dim_graded(&self, d: &HPoly, j: i64) -> usize {
        let alive = self.graded_coeffs(d, j);
        let (lo, hi) = self.graded_window();
        (lo..=hi).filter(|&g| !alive(g)).count()
    }

    /// Number of window basis vectors not hit by `d(H) v_j`, allowing
    /// sources outside the window.
    pub fn cokernel_dim_graded(&self, d: &HPoly, j: i64) -> usize {
        let alive = self.graded_coeffs(d, j);
        let (lo, hi) = self.graded_window();
        match self.cyclic_len() {
            Some(n) => (lo..=hi).filter(|&t| !alive((t - j).rem_euclid(n))).count(),
            None => (lo..=hi).filter(|&t| !(self.in_support(t - j) && alive(t - j))).count(),
        }
    }

    /// Whether `α` acts as zero on every basis vector.
    pub fn annihilator_check(&self, alpha: &HPoly) -> bool {
        let a = CElem::from_hpoly(alpha.clone());
        self.indices()
            .into_iter()
            .all(|i| self.act(&a, &ModVec::basis(&self.ctx, i)).is_ok_and(|v| v.is_zero()))
    }
}

impl fmt::Display for WeightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::Cyclic { lambda, n, c } => write!(f, "Cyclic[lambda={lambda}, n={n}, c={c}]"),
            ModuleKind::LinearNonDeg { lambda } => write!(f, "LinearNonDeg[lambda={lambda}, window={}]", self.window),
            k => write!(f, "{}[window={}]", k.name(), self.window),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> KCtx {
        KCtx::new(2, 1, 6).unwrap()
    }

    #[test]
    fn minus_module_basics() {
        let k = k2();
        let m = WeightModule::minus(&k, 8);
        let (x, y) = (CElem::x_gen(&k), CElem::y_gen(&k));
        assert!(m.act(&x, &ModVec::basis(&k, 0)).unwrap().is_zero());
        for i in 0..8 {
            assert_eq!(m.act(&y, &ModVec::basis(&k, i)).unwrap(), ModVec::basis(&k, i + 1));
        }
        let expected = ModVec::single(0, k.x() + k.x_pow(1, 1));
        assert_eq!(m.act(&x, &ModVec::basis(&k, 1)).unwrap(), expected);
        assert_eq!(m.weight(0), k.zero());
        assert_eq!(m.weight(1), k.x_pow(1, 1) + k.x_pow(1, 2));
        assert_eq!(
            m.act(&y, &ModVec::basis(&k, 8)),
            Err(ModuleError::TruncationOverflow { index: 9 })
        );
        assert_eq!(m.act(&y, &ModVec::basis(&k, 9)), Err(ModuleError::IndexOutOfRange { index: 9 }));
    }

    #[test]
    fn plus_module_weight() {
        let k = k2();
        let m = WeightModule::plus(&k, 4);
        assert_eq!(m.weight(0), k.lambda1());
        assert_eq!(m.weight(1), k.lambda1() + k.lambda1().sigma());
        assert!(m.act(&CElem::y_gen(&k), &ModVec::basis(&k, 0)).unwrap().is_zero());
    }

    #[test]
    fn cyclic_fixed_point_module() {
        let k = k2();
        let m = WeightModule::cyclic(&k.x_pow(1, 1), &k.one()).unwrap();
        let v = ModVec::basis(&k, 0);
        assert_eq!(m.act(&CElem::h(&k), &v).unwrap(), ModVec::single(0, k.x_pow(1, 1)));
        assert_eq!(m.act(&CElem::x_gen(&k), &v).unwrap(), v);
        let xy = CElem::x_gen(&k) * CElem::y_gen(&k);
        assert_eq!(m.act(&xy, &v).unwrap(), ModVec::single(0, k.x()));
    }

    #[test]
    fn relations_hold_and_corruption_is_caught() {
        let k = k2();
        assert!(WeightModule::minus(&k, 8).check_relations().passed());
        assert!(WeightModule::plus(&k, 8).check_relations().passed());
        assert!(WeightModule::linear(&k.x(), 6).unwrap().check_relations().passed());
        let w = k.constant(&k.field().w());
        let cyc = WeightModule::cyclic(&(k.x_pow(1, 1) + &w), &(k.x() + k.one())).unwrap();
        assert_eq!(cyc.dim(), 6);
        assert!(cyc.check_relations().passed());
        let bad = WeightModule::minus(&k, 8).with_weight_override(3, k.x());
        assert!(!bad.check_relations().passed());
    }

    #[test]
    fn construction_errors() {
        let k = k2();
        assert!(matches!(WeightModule::linear(&k.zero(), 4), Err(ModuleError::ClassificationMismatch { .. })));
        assert!(matches!(WeightModule::cyclic(&k.x(), &k.one()), Err(ModuleError::ClassificationMismatch { .. })));
        assert_eq!(WeightModule::cyclic(&k.x_pow(1, 1), &k.zero()).unwrap_err(), ModuleError::ZeroParameter);
    }

    #[test]
    fn graded_kernels_on_minus() {
        let k = k2();
        let m = WeightModule::minus(&k, 16);
        let one = HPoly::one(&k);
        assert_eq!(m.kernel_dim_graded(&HPoly::h(&k), 0), 1);
        assert_eq!(m.kernel_dim_graded(&one, -1), 0);
        assert_eq!(m.cokernel_dim_graded(&one, -1), 1);
        assert_eq!(m.kernel_dim_graded(&one, 1), 1);
        assert_eq!(m.cokernel_dim_graded(&one, 1), 0);
    }
}
