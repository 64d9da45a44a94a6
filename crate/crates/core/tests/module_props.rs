//! Properties of weight modules, automorphisms and the operator oracle.

use std::collections::BTreeSet;

use carlitz_core::ideals::alpha_of;
use carlitz_core::modules::ModuleKind;
use carlitz_core::oracle::{op_delta, op_x, op_y, random_monomial};
use carlitz_core::orbits::list_orbits;
use carlitz_core::{
    apply_algebra, check_homomorphism, CElem, CarlitzAuto, Exec, FuncElem, HPoly, KCtx, ModVec, Sampler,
    WeightModule,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(p: u64) -> KCtx {
    KCtx::new(p, 1, 6).unwrap()
}

fn cyclic_modules(k: &KCtx) -> Vec<(carlitz_core::CyclicOrbit, WeightModule)> {
    (1..=3)
        .flat_map(|n| list_orbits(k, n, Exec::default()).unwrap())
        .map(|o| {
            let m = WeightModule::cyclic(&o.representative(k), &(k.x() + k.one())).unwrap();
            (o, m)
        })
        .collect()
}

#[test]
fn relations_hold_for_every_kind() {
    for p in [2u64, 3] {
        let k = ctx(p);
        let mut modules = vec![
            WeightModule::minus(&k, 16),
            WeightModule::plus(&k, 16),
            WeightModule::linear(&k.x(), 16).unwrap(),
            WeightModule::linear(&(k.x() * k.x() + k.one()), 8).unwrap(),
        ];
        modules.extend(cyclic_modules(&k).into_iter().map(|(_, m)| m));
        for m in modules {
            let r = m.check_relations();
            assert!(r.passed(), "{m}: {:?}", r.failures);
            assert!(r.checked > 0);
        }
    }
}

#[test]
fn degenerate_weights_match_telescoping() {
    for p in [2u64, 3] {
        let k = ctx(p);
        let q = k.q() as i64;
        let minus = WeightModule::minus(&k, 8);
        let plus = WeightModule::plus(&k, 8);
        for i in 0..=6u32 {
            // Backward and forward telescoping sums of twists of λ_1.
            assert_eq!(minus.weight(i as i64), k.x_pow(1, i + 1) - k.x_pow(1, 1));
            assert_eq!(plus.weight(i as i64), k.x_pow(q.pow(i), 0) - k.x_pow(1, 1));
        }
    }
}

#[test]
fn graded_kernels_are_window_stable() {
    for p in [2u64, 3] {
        let k = ctx(p);
        let elems = [
            (HPoly::one(&k), 1),
            (HPoly::one(&k), -1),
            (HPoly::h(&k), 0),
            (HPoly::h(&k), 1),
            (HPoly::h(&k) * HPoly::h(&k), -2),
        ];
        for kind in [ModuleKind::MinusDeg, ModuleKind::PlusDeg, ModuleKind::LinearNonDeg { lambda: k.x() }] {
            let a = WeightModule::new(&k, kind.clone(), 16).unwrap();
            let b = WeightModule::new(&k, kind, 24).unwrap();
            for (d, j) in &elems {
                assert_eq!(a.kernel_dim_graded(d, *j), b.kernel_dim_graded(d, *j), "{a} d={d} j={j}");
                assert_eq!(a.cokernel_dim_graded(d, *j), b.cokernel_dim_graded(d, *j), "{a} d={d} j={j}");
            }
        }
        let plus = WeightModule::plus(&k, 16);
        let one = HPoly::one(&k);
        assert_eq!(plus.kernel_dim_graded(&one, -1), 1);
        assert_eq!(plus.cokernel_dim_graded(&one, 1), 1);
    }
}

#[test]
fn cyclic_modules_are_simple_and_annihilated() {
    let k = ctx(2);
    let mods = cyclic_modules(&k);
    let x = CElem::x_gen(&k);
    for (o, m) in &mods {
        let n = o.len() as usize;
        assert_eq!(m.dim(), n);
        let weights: BTreeSet<String> = m.indices().iter().map(|&i| m.weight(i).to_string()).collect();
        assert_eq!(weights.len(), n);
        assert!(m.annihilator_check(&alpha_of(o, &k)));
        // X sends each basis line to a nonzero multiple of the next one, so a
        // proper nonempty X-stable set of basis lines cannot exist.
        let targets: Vec<i64> = m
            .indices()
            .iter()
            .map(|&i| {
                let img = m.act(&x, &ModVec::basis(&k, i)).unwrap();
                let support: Vec<i64> = img.iter().map(|(j, _)| j).collect();
                assert_eq!(support.len(), 1);
                support[0]
            })
            .collect();
        for mask in 1u32..(1 << n) - 1 {
            let in_set = |i: i64| mask >> i & 1 == 1;
            let stable = (0..n as i64).filter(|&i| in_set(i)).all(|i| in_set(targets[i as usize]));
            assert!(!stable, "{m} has an X-stable subset {mask:b}");
        }
    }
}

#[test]
fn perturbed_weights_break_relations() {
    let k = ctx(2);
    let bad = WeightModule::plus(&k, 10).with_weight_override(4, k.x());
    assert!(!bad.check_relations().passed());
    let bad = WeightModule::linear(&k.x(), 10).unwrap().with_weight_override(-3, k.one());
    assert!(!bad.check_relations().passed());
}

fn random_auto(s: &mut Sampler) -> CarlitzAuto {
    let alpha = s.nonzero_kelem();
    let gamma = loop {
        let g = s.fq_small();
        if !g.is_zero() {
            break g;
        }
    };
    let delta = s.fq_small();
    CarlitzAuto::new(alpha, gamma, delta).unwrap()
}

#[test]
fn automorphisms_on_a_fixed_sample() {
    let k = KCtx::new(3, 1, 2).unwrap();
    let mut s = Sampler::new(&k, 11);
    let sample: Vec<CElem> = (0..100).map(|_| s.celem(1, 1)).collect();
    for _ in 0..3 {
        let t = random_auto(&mut s);
        assert!(check_homomorphism(&t.as_map(), &sample), "{t}");
    }
}

#[test]
fn automorphisms_preserve_the_centre() {
    let k = ctx(2);
    let mut s = Sampler::new(&k, 5);
    for o in (1..=2).flat_map(|n| list_orbits(&k, n, Exec::default()).unwrap()) {
        let z = CElem::from_hpoly(alpha_of(&o, &k));
        let t = random_auto(&mut s);
        assert!(t.apply(&z).is_central());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn alpha_to_tau_is_injective_and_multiplicative(seed in any::<u64>()) {
        let k = KCtx::new(3, 1, 2).unwrap();
        let mut s = Sampler::new(&k, seed);
        let (a, b) = (s.nonzero_kelem(), s.nonzero_kelem());
        let (ta, tb) = (CarlitzAuto::k_linear(a.clone()).unwrap(), CarlitzAuto::k_linear(b.clone()).unwrap());
        let x = CElem::x_gen(&k);
        prop_assert_eq!(ta.apply(&x), CElem::term(HPoly::constant(a.clone()), 1));
        prop_assert_eq!(ta.compose(&tb).alpha().clone(), &a * &b);
        prop_assert_eq!(ta.apply(&x) == tb.apply(&x), a == b);
    }

    #[test]
    fn oracle_operators_are_semilinear(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let k = KCtx::new(p, 1, 2).unwrap();
        let mut s = Sampler::new(&k, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_monomial(&k, &mut rng), random_monomial(&k, &mut rng));
        let lam = s.kelem();
        let c = k.constant(&s.fq_small());
        prop_assert_eq!(op_x(&f.scale(&lam)), op_x(&f).scale(&lam.sigma()));
        prop_assert_eq!(op_y(&f.scale(&lam)), op_y(&f).scale(&lam.sigma_inv()));
        prop_assert_eq!(op_x(&f.add(&g)), op_x(&f).add(&op_x(&g)));
        prop_assert_eq!(op_y(&f.add(&g)), op_y(&f).add(&op_y(&g)));
        prop_assert_eq!(op_x(&f.scale(&c)), op_x(&f).scale(&c));
        prop_assert_eq!(op_y(&f.scale(&c)), op_y(&f).scale(&c));
        let yx = op_y(&op_x(&f)).sub(&op_x(&op_y(&f)));
        prop_assert_eq!(yx, f.scale(&k.lambda1()));
        prop_assert_eq!(op_x(&op_y(&f)), op_delta(&f));
    }

    #[test]
    fn module_action_is_a_representation(seed in any::<u64>()) {
        let k = ctx(2);
        let mut s = Sampler::new(&k, seed);
        let (u, w) = (s.celem(1, 1), s.celem(1, 1));
        let m = WeightModule::linear(&(k.x() + k.one()), 12).unwrap();
        let v = ModVec::from_pairs([(0, s.kelem()), (1, s.kelem()), (-2, s.kelem())]);
        let lhs = m.act(&(&u * &w), &v).unwrap();
        let rhs = m.act(&u, &m.act(&w, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn function_parser_accepts_monomial_syntax() {
    let k = ctx(2);
    let f = FuncElem::parse(&k, "x * t^(3/4) + w*t^(-2) + 1").unwrap();
    assert_eq!(f.terms().count(), 3);
    assert!(FuncElem::parse(&k, "t^(1/3)").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_is_a_representation(seed in any::<u64>()) {
        let k = ctx(2);
        let mut s = Sampler::new(&k, seed);
        let (u, w) = (s.celem(1, 1), s.celem(1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_monomial(&k, &mut rng).add(&random_monomial(&k, &mut rng));
        prop_assert_eq!(apply_algebra(&(&u * &w), &f), apply_algebra(&u, &apply_algebra(&w, &f)));
        prop_assert_eq!(apply_algebra(&(&u + &w), &f), apply_algebra(&u, &f).add(&apply_algebra(&w, &f)));
    }
}
