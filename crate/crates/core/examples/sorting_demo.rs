//! Sorting under partial information: complete a hidden linear order with
//! pairwise comparisons, always querying a pair that splits the remaining
//! extension count as evenly as possible. The query count stays within
//! ceil(2 log2 e) thanks to the factor-2 entropy bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use poset_entropy::error::Result;
use poset_entropy::generate::{enumerate_width2, path, random_width2};
use poset_entropy::sortsim::{greedy_sort, random_extension};

fn main() -> Result<()> {
    // Walk one transcript in full.
    let p = path(6);
    let hidden = vec![1, 0, 2, 3, 5, 4];
    let t = greedy_sort(&p, &hidden)?;
    println!("path(6), e = {} extensions, budget ceil(2 log2 e) = {}", t.e_sequence[0], t.budget2);
    for (i, &(u, v, ans)) in t.queries.iter().enumerate() {
        let (lo, hi) = if ans { (u, v) } else { (v, u) };
        println!(
            "  query {}: {} vs {} -> {} < {}, extensions left: {}",
            i + 1,
            p.ids()[u],
            p.ids()[v],
            p.ids()[lo],
            p.ids()[hi],
            t.e_sequence[i + 1]
        );
    }
    println!(
        "sorted in {} of {} allowed queries: {}\n",
        t.query_count(),
        t.budget2,
        t.final_order.iter().map(|&v| p.ids()[v].as_str()).collect::<Vec<_>>().join(" < ")
    );

    // Exhaustive check on six elements with a random hidden order each.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut max_used = 0;
    let mut posets = 0;
    for p in enumerate_width2(6)? {
        let hidden = random_extension(&p, &mut rng);
        let t = greedy_sort(&p, &hidden)?;
        assert!(t.within_budget());
        max_used = max_used.max(t.query_count());
        posets += 1;
    }
    println!("all {posets} width-2 posets on 6 elements sorted within budget (max {max_used} queries)");

    // Larger random posets, still within both the plain and refined budgets.
    for p in random_width2(12, 10, 99)? {
        let hidden = random_extension(&p, &mut rng);
        let t = greedy_sort(&p, &hidden)?;
        assert!(t.within_budget());
        println!(
            "n = 12 sample: {} queries, budget {}, refined budget {}",
            t.query_count(),
            t.budget2,
            t.refined_budget
        );
    }
    Ok(())
}
