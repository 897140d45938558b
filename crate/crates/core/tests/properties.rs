//! Randomized invariants over width-2 posets. Each property draws posets
//! from the library's own generator (a two-chain skeleton plus random
//! forcings), so shrinking reduces to a seed and a size.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_entropy::entropy::{entropy_bruteforce, km_decompose};
use poset_entropy::generate::{canonical_key, random_width2};
use poset_entropy::intervals::{canonical_intervals, interval_order_of};
use poset_entropy::io;
use poset_entropy::linext::{count_downsets, count_width2};
use poset_entropy::poset::Poset;
use poset_entropy::sortsim::{greedy_sort, random_extension};

fn draw(n: usize, seed: u64) -> Poset {
    random_width2(n, 1, seed).unwrap().pop().unwrap()
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(n in 0usize..=12, seed in any::<u64>()) {
        let p = draw(n, seed);
        let q = io::parse(&io::serialize(&p)).unwrap();
        prop_assert_eq!(p.ids(), q.ids());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(p.lt(u, v), q.lt(u, v));
            }
        }
    }

    #[test]
    fn canonical_key_ignores_labels(n in 1usize..=7, seed in any::<u64>(), shuffle in any::<u64>()) {
        let p = draw(n, seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let mut rels = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if p.lt(u, v) {
                    rels.push((perm[u], perm[v]));
                }
            }
        }
        let relabeled = Poset::from_cover_indices(ids, &rels).unwrap();
        prop_assert_eq!(canonical_key(&p), canonical_key(&relabeled));
    }

    #[test]
    fn width_agrees_with_bruteforce(n in 0usize..=12, seed in any::<u64>()) {
        let p = draw(n, seed);
        prop_assert_eq!(p.width(), p.width_bruteforce());
    }

    #[test]
    fn two_chain_counter_matches_downset_counter(n in 0usize..=12, seed in any::<u64>()) {
        let p = draw(n, seed);
        let chains = p.chain_cover_2().unwrap();
        prop_assert_eq!(count_width2(&p, &chains).unwrap(), count_downsets(&p).unwrap());
    }

    #[test]
    fn extension_count_telescopes(n in 2usize..=10, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let p = draw(n, seed);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !p.comparable(u, v))
            .collect();
        prop_assume!(!pairs.is_empty());
        let (u, v) = pairs[pick.index(pairs.len())];
        let e = count_downsets(&p).unwrap();
        let e_uv = count_downsets(&p.add_relation(u, v).unwrap()).unwrap();
        let e_vu = count_downsets(&p.add_relation(v, u).unwrap()).unwrap();
        prop_assert_eq!(e, e_uv + e_vu);
    }

    #[test]
    fn interval_order_extends_the_input(n in 1usize..=12, seed in any::<u64>()) {
        let p = draw(n, seed);
        let km = km_decompose(&p, &p.chain_cover_2().unwrap()).unwrap();
        let rep = canonical_intervals(&p, &km);
        let io_order = interval_order_of(&rep);
        for u in 0..n {
            for v in 0..n {
                if p.lt(u, v) {
                    prop_assert!(io_order.lt(u, v), "{} < {} lost by the representation", p.id(u), p.id(v));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_matches_frank_wolfe(n in 1usize..=8, seed in any::<u64>()) {
        let p = draw(n, seed);
        let km = km_decompose(&p, &p.chain_cover_2().unwrap()).unwrap();
        let fw = entropy_bruteforce(&p.incomparability_graph().adj).unwrap();
        let err = (km.entropy.to_f64() - fw.value).abs();
        prop_assert!(err <= fw.gap + 1e-9, "KM {} vs FW {} (gap {})", km.entropy.to_f64(), fw.value, fw.gap);
    }

    #[test]
    fn greedy_sort_stays_within_budget(n in 1usize..=9, seed in any::<u64>(), hidden_seed in any::<u64>()) {
        let p = draw(n, seed);
        let hidden = random_extension(&p, &mut ChaCha8Rng::seed_from_u64(hidden_seed));
        // greedy_sort re-verifies the telescoping count after every query
        // and errors on any mismatch, so the unwrap is part of the test.
        let t = greedy_sort(&p, &hidden).unwrap();
        prop_assert!(t.within_budget(), "{} queries over budget {}", t.query_count(), t.budget2);
        prop_assert_eq!(&t.final_order, &hidden);
    }
}
