mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use saddles::dominance::DominanceMode;
use saddles::equilibrium::{game_value, is_nash, MixedStrategyPair};
use saddles::fixtures::{a1, a2, a3};
use saddles::saddle::{enumerate_saddles, find_saddle, is_gsp, iterated_elimination};
use saddles::{ActionProduct, Rational};

use common::*;

#[test]
fn enumeration_matches_brute_force_on_random_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let (n, m) = (rand::Rng::random_range(&mut rng, 1..=4), rand::Rng::random_range(&mut rng, 1..=4));
        let a = random_matrix(&mut rng, n, m, 2);
        let g = game_of(&a);
        for mode in DominanceMode::ALL {
            let ours: std::collections::BTreeSet<Product> =
                enumerate_saddles(&g, mode).unwrap().iter().map(product_of).collect();
            assert_eq!(ours, saddles(&a, mode), "{mode} on {g}");
        }
    }
}

#[test]
fn gsp_test_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let a = random_matrix(&mut rng, 3, 4, 1);
        let g = game_of(&a);
        for r in subsets(3) {
            for c in subsets(4) {
                let p = ActionProduct::new(r.clone(), c.clone()).unwrap();
                for mode in DominanceMode::ALL {
                    assert_eq!(is_gsp(&g, &p, mode).unwrap(), common::is_gsp(&a, &r, &c, mode));
                }
            }
        }
    }
}

#[test]
fn fixture_saddles_match_brute_force() {
    for g in [a1(), a2(), a3()] {
        let a = matrix(&g);
        for mode in DominanceMode::ALL {
            let ours: std::collections::BTreeSet<Product> =
                enumerate_saddles(&g, mode).unwrap().iter().map(product_of).collect();
            assert_eq!(ours, saddles(&a, mode));
            let found = product_of(&find_saddle(&g, mode).unwrap());
            assert!(ours.contains(&found));
        }
    }
}

#[test]
fn value_matches_support_enumeration() {
    assert_eq!(support_value(&matrix(&a1())), Rational::new(4.into(), 3.into()));
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let (n, m) = (rand::Rng::random_range(&mut rng, 1..=4), rand::Rng::random_range(&mut rng, 1..=4));
        let a = random_matrix(&mut rng, n, m, 3);
        let g = game_of(&a);
        let (x, y, v) = support_equilibrium(&a);
        assert_eq!(game_value(&g), v, "{g}");
        let pair = MixedStrategyPair { row_strategy: x, col_strategy: y, value: v };
        assert!(is_nash(&g, &pair).unwrap());
    }
}

#[test]
fn elimination_result_is_a_gsp() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let a = random_matrix(&mut rng, 4, 4, 2);
        let g = game_of(&a);
        for mode in [DominanceMode::Weak, DominanceMode::Strict] {
            let p = product_of(&iterated_elimination(&g, mode));
            assert!(common::is_gsp(&a, &p.0, &p.1, mode));
        }
    }
}
