//! Properties of `D = K[H]`, the algebra, orbits and ideals.

use std::collections::BTreeSet;

use carlitz_core::algebra::Monomial;
use carlitz_core::ideals::alpha_of;
use carlitz_core::orbits::{brute_count_orbits, list_orbits};
use carlitz_core::{
    classify, count_orbits, shift_root, CElem, Exec, HPoly, Ideal, KCtx, OrbitClass, Sampler, Side,
};
use proptest::prelude::*;
use rand::Rng;

fn k2() -> KCtx {
    KCtx::new(2, 1, 6).unwrap()
}

fn ctx_for(p: u64) -> KCtx {
    KCtx::new(p, 1, 2).unwrap()
}

#[test]
fn closed_form_of_iterated_roots() {
    for p in [2u64, 3] {
        let k = ctx_for(p);
        let q = k.q() as i64;
        for n in 0..=6u32 {
            let closed = k.x_pow(q.pow(n), 0) - k.x_pow(1, 1);
            assert_eq!(shift_root(&k.zero(), n as i64 + 1), closed);
        }
    }
}

#[test]
fn ad_h_eigenvalues_are_distinct() {
    let k = k2();
    let h = CElem::h(&k);
    let mut seen = BTreeSet::new();
    for i in -6..=6i64 {
        let u = CElem::term(HPoly::h(&k) + HPoly::constant(k.x()), i);
        let e = shift_root(&k.zero(), i);
        assert_eq!(h.commutator(&u), u.scale(&e), "degree {i}");
        assert!(seen.insert(e.to_string()), "eigenvalue repeats at degree {i}");
    }
}

#[test]
fn orbit_counts_match_enumeration() {
    for (p, nu) in [(2u64, 1u32), (3, 1), (2, 2)] {
        for n in 1..=4u32 {
            let k = KCtx::new(p, nu, nu * n).unwrap();
            let q = k.q();
            let formula = count_orbits(q, n).unwrap();
            assert_eq!(brute_count_orbits(&k, n, Exec::Sequential).unwrap(), formula, "q={q} n={n}");
            assert_eq!(brute_count_orbits(&k, n, Exec::Parallel).unwrap(), formula);
        }
    }
}

#[test]
fn orbit_counts_are_positive_and_bounded() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=8u32 {
            let o = count_orbits(q, n).unwrap();
            assert!(o > 0);
            if q > 2 {
                // o ≥ q^n(1 − 1/(q−1))/n, cleared of denominators.
                let lhs = (o * n as u64) as u128 * (q - 1) as u128;
                assert!(lhs >= q.pow(n) as u128 * (q - 2) as u128, "q={q} n={n}");
            }
        }
    }
}

#[test]
fn degenerate_orbit_is_unique_and_indexed() {
    for p in [2u64, 3] {
        let k = ctx_for(p);
        for i in -4..=4i64 {
            let side = if i <= 0 { Side::Minus } else { Side::Plus };
            assert_eq!(classify(&shift_root(&k.zero(), i)), OrbitClass::LinearDegenerate { index: i, side });
        }
    }
}

#[test]
fn alpha_is_central_and_vanishes_on_its_orbit() {
    for p in [2u64, 3] {
        let k = KCtx::new(p, 1, 6).unwrap();
        let orbits: Vec<_> = (1..=3).flat_map(|n| list_orbits(&k, n, Exec::default()).unwrap()).collect();
        for o in &orbits {
            let a = alpha_of(o, &k);
            assert_eq!(a.sigma(), a);
            assert!(CElem::from_hpoly(a.clone()).is_central());
            for lam in o.elements(&k) {
                assert!(a.eval(&lam).is_zero());
            }
            for o2 in orbits.iter().filter(|o2| *o2 != o) {
                assert!(!a.eval(&o2.representative(&k)).is_zero(), "{o} vanishes on {o2}");
            }
        }
    }
}

#[test]
fn ideal_product_is_commutative_and_associative() {
    let k = k2();
    let orbits: Vec<_> = (1..=3).flat_map(|n| list_orbits(&k, n, Exec::default()).unwrap()).collect();
    let ideals: Vec<Ideal> = (0..orbits.len())
        .map(|i| {
            Ideal::from_exponents(&k, orbits.iter().enumerate().map(|(j, o)| (o.clone(), ((i + j) % 3) as u32)))
        })
        .collect();
    for a in &ideals {
        for b in &ideals {
            assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
            for c in &ideals {
                assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_on_d_is_multiplicative(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let k = ctx_for(p);
        let mut s = Sampler::new(&k, seed);
        let (d, e) = (s.hpoly(3), s.hpoly(3));
        prop_assert_eq!((&d * &e).sigma(), d.sigma() * e.sigma());
        prop_assert_eq!((&d + &e).sigma(), d.sigma() + e.sigma());
        prop_assert_eq!(d.sigma().sigma_inv(), d.clone());
        prop_assert_eq!(d.sigma_d(-2).sigma_d(2), d);
    }

    #[test]
    fn shift_root_is_a_group_action(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let k = ctx_for(2 + (seed % 2));
        let lam = Sampler::new(&k, seed).kelem();
        prop_assert_eq!(shift_root(&shift_root(&lam, a), b), shift_root(&lam, a + b));
        prop_assert_eq!(HPoly::linear(&lam).sigma_d(a), HPoly::linear(&shift_root(&lam, a)));
    }

    #[test]
    fn classify_is_sigma_stable(seed in any::<u64>(), e in -3i64..=3) {
        let k = k2();
        let mut s = Sampler::new(&k, seed);
        let lam = match seed % 3 {
            0 => k.constant(&s.fq()) - k.x_pow(1, 1),
            1 => shift_root(&k.zero(), (seed % 7) as i64 - 3),
            _ => s.kelem(),
        };
        let shifted = classify(&shift_root(&lam, e));
        match classify(&lam) {
            OrbitClass::Cyclic { n, .. } => {
                let same = matches!(shifted, OrbitClass::Cyclic { n: m, .. } if m == n);
                prop_assert!(same);
            }
            OrbitClass::LinearDegenerate { index, .. } => {
                let moved = matches!(shifted, OrbitClass::LinearDegenerate { index: j, .. } if j == index + e);
                prop_assert!(moved);
            }
            OrbitClass::LinearNonDegenerate => prop_assert_eq!(shifted, OrbitClass::LinearNonDegenerate),
        }
    }

    #[test]
    fn products_respect_grading_and_have_no_zero_divisors(seed in any::<u64>()) {
        let k = k2();
        let mut s = Sampler::new(&k, seed);
        let (u, v) = (s.nonzero_celem(2, 2), s.nonzero_celem(2, 2));
        let uv = &u * &v;
        prop_assert!(!uv.is_zero());
        let sums: BTreeSet<i64> = u.support().iter().flat_map(|a| v.support().into_iter().map(move |b| a + b)).collect();
        for n in uv.support() {
            prop_assert!(sums.contains(&n));
        }
        let (lo, hi) = (u.support()[0] + v.support()[0], u.support().last().unwrap() + v.support().last().unwrap());
        prop_assert!(uv.support().contains(&lo) && uv.support().contains(&hi));
    }

    #[test]
    fn monomial_forms_round_trip(seed in any::<u64>()) {
        let k = k2();
        let mut s = Sampler::new(&k, seed);
        let u = s.celem(3, 3);
        prop_assert_eq!(CElem::from_monomials(&k, &u.to_monomials()), u);
        let mut monos = Vec::new();
        for i in 0..4u32 {
            for j in 0..4u32 {
                if s.rng().gen_bool(0.3) {
                    monos.push(Monomial { i, j, coeff: s.nonzero_kelem() });
                }
            }
        }
        prop_assert_eq!(CElem::from_monomials(&k, &monos).to_monomials(), monos);
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let k = k2();
        let u = Sampler::new(&k, seed).celem(2, 2);
        prop_assert_eq!(CElem::parse(&k, &u.to_string()).unwrap(), u);
    }
}
