//! Properties of the coefficient field and of `K`.

use carlitz_core::{FieldCtx, KCtx, KElem, Sampler};
use num_rational::Rational64;
use proptest::prelude::*;

/// Every `(p, k)` with `p^k ≤ 16`.
const SMALL_FIELDS: [(u64, u32); 10] =
    [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)];

#[test]
fn field_axioms_exhaustive() {
    for (p, k) in SMALL_FIELDS {
        let f = FieldCtx::new(p, k).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len() as u64, f.order());
        for a in &all {
            assert_eq!(a + &f.zero(), *a);
            assert_eq!(a * &f.one(), *a);
            assert!((a + &-a).is_zero());
            if !a.is_zero() {
                assert!((a * &a.inv().unwrap()).is_one());
            }
            for b in &all {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &all {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }
}

#[test]
fn frobenius_is_an_automorphism_of_order_dividing_k() {
    for (p, k) in SMALL_FIELDS {
        let f = FieldCtx::new(p, k).unwrap();
        let all: Vec<_> = f.elements().collect();
        let mut images: Vec<_> = all.iter().map(|a| a.frobenius_pow(1)).collect();
        for a in &all {
            assert_eq!(a.frobenius_pow(k as i64), *a);
            assert_eq!(a.frobenius_pow(1), a.pow(p));
            for b in &all {
                assert_eq!((a + b).frobenius_pow(1), &a.frobenius_pow(1) + &b.frobenius_pow(1));
                assert_eq!((a * b).frobenius_pow(1), &a.frobenius_pow(1) * &b.frobenius_pow(1));
            }
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), all.len(), "Frobenius is not injective on F_{p}^{k}");
    }
}

#[test]
fn subfield_membership_matches_degree() {
    for (p, k) in SMALL_FIELDS {
        let f = FieldCtx::new(p, k).unwrap();
        for nu in (1..=k).filter(|nu| k % nu == 0) {
            let q = p.pow(nu);
            for a in f.elements() {
                let d = a.degree_over_q(nu);
                for m in 1..=k / nu {
                    let member = a.pow(q.pow(m)) == a;
                    assert_eq!(member, m % d == 0, "p={p} k={k} nu={nu} a={a} m={m}");
                }
            }
        }
    }
}

fn k_ctx(p: u64) -> KCtx {
    KCtx::new(p, 1, 2).unwrap()
}

fn pair(seed: u64, p: u64) -> (KElem, KElem, KElem) {
    let mut s = Sampler::new(&k_ctx(p), seed);
    (s.kelem(), s.kelem(), s.nonzero_kelem())
}

/// The stored level cannot be lowered: some exponent is not a multiple of `q`.
fn level_is_minimal(a: &KElem) -> bool {
    let q = a.ctx().q();
    a.level() == 0
        || a.num_terms().iter().chain(a.den_terms().iter()).any(|(e, _)| e % q != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_an_automorphism(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let (a, b, _) = pair(seed, p);
        prop_assert_eq!(a.sigma().sigma_inv(), a.clone());
        prop_assert_eq!(a.sigma_inv().sigma(), a.clone());
        prop_assert_eq!((&a + &b).sigma(), a.sigma() + b.sigma());
        prop_assert_eq!((&a * &b).sigma(), a.sigma() * b.sigma());
        prop_assert_eq!((&a * &b).sigma_inv(), a.sigma_inv() * b.sigma_inv());
        prop_assert_eq!(a.sigma_pow(3), a.sigma().sigma().sigma());
    }

    #[test]
    fn canonical_forms_agree_across_paths(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let (a, b, c) = pair(seed, p);
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!(&a - &a, a.ctx().zero());
        let via_sigma = (a.sigma_inv() * b.sigma_inv()).sigma();
        prop_assert_eq!(via_sigma, &a * &b);
        for v in [&a + &b, &a * &c, &a / &c, a.sigma_inv(), c.sigma_pow(-2), &b - &a] {
            prop_assert!(level_is_minimal(&v), "non-minimal level in {}", v);
        }
    }

    #[test]
    fn valuation_is_a_valuation(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let (a, b, c) = pair(seed, p);
        let vc = c.valuation().unwrap();
        if !a.is_zero() {
            let va = a.valuation().unwrap();
            prop_assert_eq!((&a * &c).valuation().unwrap(), va + vc);
            prop_assert_eq!(a.sigma().valuation().unwrap(), va * Rational64::from_integer(p as i64));
            let s = &a + &c;
            if !s.is_zero() {
                let vs = s.valuation().unwrap();
                prop_assert!(vs >= va.min(vc));
                if va != vc {
                    prop_assert_eq!(vs, va.min(vc));
                }
            }
        }
        if !b.is_zero() {
            prop_assert_eq!((&b / &c).valuation().unwrap(), b.valuation().unwrap() - vc);
        }
    }

    #[test]
    fn display_round_trips(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let (a, _, c) = pair(seed, p);
        for v in [a, c.sigma_inv()] {
            prop_assert_eq!(v.ctx().parse(&v.to_string()).unwrap(), v);
        }
    }
}
