use proptest::prelude::*;
use runrank::oracle::gen_instance;
use runrank::{
    AnyIndex, BcgprIndex, EliasFanoBitVector, NaiveSequence, RankSelect, RunLengthString,
    StructureKind,
};

fn instance() -> impl Strategy<Value = (Vec<u32>, u32)> {
    (1usize..400, prop::sample::select(vec![1u32, 2, 3, 5, 40]), any::<u64>()).prop_flat_map(
        |(n, sigma, seed)| {
            let max_runs = if sigma == 1 { 1 } else { n };
            (1..=max_runs).prop_map(move |runs| (gen_instance(n, sigma, runs, seed).unwrap(), sigma))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_plain_scan((s, sigma) in instance(), tau in prop::sample::select(vec![1u32, 2, 4, 16, 32])) {
        let naive = NaiveSequence::new(s.clone(), sigma).unwrap();
        let rls = RunLengthString::new(&s, sigma, tau).unwrap();
        let base = BcgprIndex::new(&s, sigma, tau).unwrap();
        for (i, &sym) in s.iter().enumerate() {
            prop_assert_eq!(rls.access(i).unwrap(), sym);
            prop_assert_eq!(base.access(i).unwrap(), sym);
            let mut total = 0;
            for c in 0..sigma {
                let want = naive.rank(c, i).unwrap();
                prop_assert_eq!(rls.rank(c, i).unwrap(), want);
                prop_assert_eq!(base.rank(c, i).unwrap(), want);
                total += want;
            }
            prop_assert_eq!(total, i + 1);
        }
        for c in 0..sigma {
            let occ = naive.rank(c, s.len() - 1).unwrap() as i64;
            for j in -1..=occ + 1 {
                let pos = rls.select(c, j).unwrap();
                prop_assert_eq!(pos, naive.select(c, j).unwrap());
                prop_assert_eq!(base.select(c, j).unwrap(), pos);
                if (1..=occ).contains(&j) {
                    prop_assert_eq!(rls.access(pos as usize).unwrap(), c);
                    prop_assert_eq!(rls.rank(c, pos as usize).unwrap() as i64, j);
                }
            }
        }
    }

    #[test]
    fn prefix_sums_agree_with_run_lengths((s, sigma) in instance(), tau in 1u32..40) {
        let rls = RunLengthString::new(&s, sigma, tau).unwrap();
        let mut total = 0;
        for i in 0..rls.runs() {
            prop_assert_eq!(rls.prefix_sum(i), total);
            total += rls.run_length(i);
        }
        prop_assert_eq!(rls.prefix_sum(rls.runs()), s.len());
    }

    #[test]
    fn elias_fano_ignores_tau(n in 1usize..5000, density in 0.0f64..1.0, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ones: Vec<usize> = (0..n).filter(|_| rng.random_bool(density)).collect();
        prop_assume!(!ones.is_empty());
        let reference = EliasFanoBitVector::new(&ones, n, 1).unwrap();
        for tau in [4u32, 16, 32] {
            let ef = EliasFanoBitVector::new(&ones, n, tau).unwrap();
            for i in -1..n as i64 {
                prop_assert_eq!(ef.rank1(i), reference.rank1(i));
            }
            for j in 0..=ones.len() as i64 + 1 {
                prop_assert_eq!(ef.select1(j), reference.select1(j));
            }
        }
    }
}

#[test]
fn baseline_is_larger_on_long_runs() {
    for (k, &(n, sigma, runs)) in [(20_000, 4, 1000), (50_000, 64, 2000), (100_000, 300, 5000), (16_000, 4, 1000)]
        .iter()
        .enumerate()
    {
        let s = gen_instance(n, sigma, runs, k as u64).unwrap();
        for tau in [1, 4, 16, 32] {
            let rls = AnyIndex::build(StructureKind::Rlrs, &s, sigma, tau).unwrap();
            let base = AnyIndex::build(StructureKind::Bcgpr, &s, sigma, tau).unwrap();
            assert!(
                base.encode().len() > rls.encode().len(),
                "n={n} sigma={sigma} runs={runs} tau={tau}"
            );
        }
    }
}
