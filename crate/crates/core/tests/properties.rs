use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yangian_core::block::{brute_force_support, representation_type, support_box};
use yangian_core::linalg::Matrix;
use yangian_core::module::{
    build_window_module, central_character_check, random_planted_params, verify_defining_relations,
    ModuleParams, Window, WindowModule,
};
use yangian_core::poly::{q, Scalar};
use yangian_core::quiver::{
    classified_type_b, identify_class, is_indecomposable_probe, module_to_quiver_rep, ClassLabel,
    QuiverRep, Verdict,
};

/// Parameters with up to three planted integral offsets.
fn planted(seed: u64, p: usize) -> ModuleParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=3usize.min(2 * p));
    let mut js: Vec<usize> = (0..2 * p).collect();
    js.shuffle(&mut rng);
    let offsets: Vec<(usize, usize, i64)> = js[..n]
        .iter()
        .map(|&j| (j, rng.gen_range(0..p), rng.gen_range(-3..=3)))
        .collect();
    random_planted_params(&mut rng, p, &offsets)
}

fn scramble(rep: &QuiverRep, rng: &mut ChaCha8Rng) -> QuiverRep {
    let g: Vec<Matrix> = rep
        .dims
        .iter()
        .map(|&d| loop {
            let rows = (0..d)
                .map(|_| {
                    (0..d)
                        .map(|_| Scalar::from(rng.gen_range(-2i64..=2)))
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows_shaped(d, d, rows).unwrap();
            if m.inverse().is_some() {
                break m;
            }
        })
        .collect();
    rep.conjugate(&g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn support_contains_origin_and_factorizes(seed in any::<u64>(), p in 1usize..=3) {
        let params = planted(seed, p);
        let window = Window::cube(p, 4);
        let support = brute_force_support(&params, &window);
        prop_assert!(support.contains(&vec![0; p]));
        let axes: Vec<BTreeSet<i64>> = (0..p).map(|i| support.iter().map(|k| k[i]).collect()).collect();
        let product = window
            .points()
            .into_iter()
            .filter(|k| k.iter().zip(&axes).all(|(x, a)| a.contains(x)))
            .collect::<BTreeSet<_>>();
        prop_assert_eq!(&product, &support);
        prop_assert_eq!(support_box(&params).unwrap().clip(&window), support);
    }

    #[test]
    fn rep_type_is_permutation_invariant(seed in any::<u64>(), p in 1usize..=3) {
        let params = planted(seed, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut beta = params.beta.clone();
        let mut gamma = params.gamma.clone();
        beta.shuffle(&mut rng);
        gamma.shuffle(&mut rng);
        let permuted = ModuleParams::new(beta, gamma).unwrap();
        prop_assert_eq!(
            representation_type(&params).unwrap().rep_type,
            representation_type(&permuted).unwrap().rep_type
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn planted_modules_satisfy_relations(seed in any::<u64>(), p in 1usize..=2) {
        let params = planted(seed, p);
        let module = build_window_module(&params, &Window::cube(p, 3)).unwrap();
        prop_assert!(verify_defining_relations(&module, 2).unwrap().is_ok());
        prop_assert!(central_character_check(&module, 2).unwrap().is_ok());
        let text = serde_json::to_string(&module.to_json()).unwrap();
        let back = WindowModule::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, module);
    }

    #[test]
    fn scrambled_sums_are_detected(seed in any::<u64>()) {
        let pool = classified_type_b(3, 2, &[q(1, 1), q(-3, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = pool[rng.gen_range(0..pool.len())].construct().unwrap();
        let b = pool[rng.gen_range(0..pool.len())].construct().unwrap();
        let sum = scramble(&a.direct_sum(&b), &mut rng);
        let verdict = is_indecomposable_probe(&sum, 8, seed);
        prop_assert!(matches!(verdict, Verdict::Decomposable(..)), "{:?}", verdict);
    }

    #[test]
    fn identification_ignores_basis(seed in any::<u64>()) {
        let pool = classified_type_b(4, 3, &[q(2, 1), q(5, 7)]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let label: ClassLabel = pool[rng.gen_range(0..pool.len())].clone();
        let rep = scramble(&label.construct().unwrap(), &mut rng);
        prop_assert_eq!(identify_class(&rep, 8, seed).unwrap(), label);
    }
}

#[test]
fn finite_blocks_give_one_dimension_per_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..6 {
        let (a, b) = (rng.gen_range(-2..=0), rng.gen_range(1..=2));
        let params = random_planted_params(&mut rng, 1, &[(0, 0, a), (1, 0, b)]);
        let module = build_window_module(&params, &Window::cube(1, 4)).unwrap();
        let rep = module_to_quiver_rep(&module).unwrap();
        assert_eq!(rep.total_dim(), 3, "{params:?}");
        assert!(rep.verify_relations().is_ok());
    }
}
