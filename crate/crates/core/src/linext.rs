//! Exact linear extension counting.
//!
//! Three independent routes: a lattice walk over two-chain prefixes, a
//! dynamic program over down-sets, and a factorial brute force. They share
//! no code past the poset itself, so they can cross-check each other.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{ChainPair, Poset};

/// Largest ground set accepted by [`count_downsets`]; the table holds up to
/// 2^n counters.
pub const DOWNSET_LIMIT: usize = 20;

/// Largest ground set accepted by [`count_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 9;

/// Counts linear extensions of a width-2 poset by walking the
/// (|A|+1) x (|B|+1) lattice of consumed-prefix states. A step consumes the
/// next element of one chain once its whole down-set has been consumed.
pub fn count_width2(p: &Poset, chains: &ChainPair) -> Result<BigUint> {
    validate_cover(p, chains)?;
    let (a, b) = (&chains.a, &chains.b);
    let prefix_masks = |xs: &[usize]| -> Vec<u64> {
        let mut out = vec![0u64];
        for &v in xs {
            out.push(out.last().unwrap() | 1 << v);
        }
        out
    };
    let am = prefix_masks(a);
    let bm = prefix_masks(b);
    let mut f = vec![vec![BigUint::zero(); b.len() + 1]; a.len() + 1];
    f[0][0] = BigUint::one();
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            let cur = f[i][j].clone();
            if cur.is_zero() {
                continue;
            }
            let consumed = am[i] | bm[j];
            if i < a.len() && p.down_mask(a[i]) & !consumed == 0 {
                f[i + 1][j] += &cur;
            }
            if j < b.len() && p.down_mask(b[j]) & !consumed == 0 {
                f[i][j + 1] += &cur;
            }
        }
    }
    Ok(f[a.len()][b.len()].clone())
}

fn validate_cover(p: &Poset, chains: &ChainPair) -> Result<()> {
    let mut seen = 0u64;
    for &v in chains.a.iter().chain(&chains.b) {
        if v >= p.n() || seen >> v & 1 == 1 {
            return Err(Error::InvalidCover(format!("element {v} repeated or out of range")));
        }
        seen |= 1 << v;
    }
    if seen != p.full_mask() {
        return Err(Error::InvalidCover("chains do not cover the ground set".into()));
    }
    if !p.is_chain(&chains.a) || !p.is_chain(&chains.b) {
        return Err(Error::InvalidCover("a listed sequence is not an ascending chain".into()));
    }
    Ok(())
}

/// Counts linear extensions by dynamic programming over down-sets: a
/// down-set reaches each successor by appending one of its minimal
/// complements. Works for any width, ground set capped at
/// [`DOWNSET_LIMIT`].
pub fn count_downsets(p: &Poset) -> Result<BigUint> {
    let n = p.n();
    if n > DOWNSET_LIMIT {
        return Err(Error::TooLarge(format!("{n} elements exceeds down-set cap {DOWNSET_LIMIT}")));
    }
    let mut cur: HashMap<u64, BigUint> = HashMap::from([(0u64, BigUint::one())]);
    for _ in 0..n {
        let mut next: HashMap<u64, BigUint> = HashMap::with_capacity(cur.len() * 2);
        for (s, count) in &cur {
            for v in 0..n {
                if s >> v & 1 == 0 && p.down_mask(v) & !s == 0 {
                    *next.entry(s | 1 << v).or_default() += count;
                }
            }
        }
        cur = next;
    }
    Ok(cur.remove(&p.full_mask()).unwrap_or_else(BigUint::one))
}

/// Counts linear extensions by filtering all n! permutations. Ground set
/// capped at [`BRUTEFORCE_LIMIT`].
pub fn count_bruteforce(p: &Poset) -> Result<BigUint> {
    let n = p.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge(format!("{n} elements exceeds brute-force cap {BRUTEFORCE_LIMIT}")));
    }
    let mut count = 0u64;
    for perm in (0..n).permutations(n) {
        let mut placed = 0u64;
        if perm.iter().all(|&v| {
            let ok = p.down_mask(v) & !placed == 0;
            placed |= 1 << v;
            ok
        }) {
            count += 1;
        }
    }
    Ok(BigUint::from(count.max(u64::from(n == 0))))
}

/// Materializes every linear extension, each as the element sequence.
/// Errors out once more than `cap` extensions exist.
pub fn enumerate_extensions(p: &Poset, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn walk(
        p: &Poset,
        placed: u64,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if prefix.len() == p.n() {
            if out.len() == cap {
                return Err(Error::TooLarge(format!("more than {cap} extensions")));
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for v in 0..p.n() {
            if placed >> v & 1 == 0 && p.down_mask(v) & !placed == 0 {
                prefix.push(v);
                walk(p, placed | 1 << v, prefix, out, cap)?;
                prefix.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(p, 0, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// Fibonacci numbers with F(1) = F(2) = 1. Posets whose incomparability
/// graph is a path on n vertices have exactly F(n+1) linear extensions.
pub fn fibonacci(k: u64) -> BigUint {
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_path() -> Poset {
        Poset::from_covers(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
        )
        .unwrap()
    }

    /// Poset with incomparability path v1-...-vn: vi < vj iff j - i >= 2.
    fn path(n: usize) -> Poset {
        let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut covers = Vec::new();
        for i in 0..n {
            for d in [2usize, 3] {
                if i + d < n {
                    covers.push((i, i + d));
                }
            }
        }
        Poset::from_cover_indices(ids, &covers).unwrap()
    }

    fn all_three(p: &Poset) -> BigUint {
        let w2 = count_width2(p, &p.chain_cover_2().unwrap()).unwrap();
        let ds = count_downsets(p).unwrap();
        let bf = count_bruteforce(p).unwrap();
        assert_eq!(w2, ds);
        assert_eq!(ds, bf);
        w2
    }

    #[test]
    fn six_path_has_thirteen() {
        assert_eq!(all_three(&six_path()), BigUint::from(13u32));
    }

    #[test]
    fn chains_and_antichains() {
        let chain = Poset::from_covers(
            &["c1", "c2", "c3", "c4", "c5"],
            &(1..5).map(|i| (format!("c{i}"), format!("c{}", i + 1))).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(all_three(&chain), BigUint::one());

        let two = Poset::from_covers(&["x", "y"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(all_three(&two), BigUint::from(2u32));

        let anti4 = Poset::from_covers(&["p", "q", "r", "s"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(count_downsets(&anti4).unwrap(), BigUint::from(24u32));
        assert_eq!(count_bruteforce(&anti4).unwrap(), BigUint::from(24u32));

        let empty = Poset::from_covers(&[] as &[&str], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(all_three(&empty), BigUint::one());
    }

    #[test]
    fn two_disjoint_two_chains_have_six() {
        let p = Poset::from_covers(&["t1", "t2", "u1", "u2"], &[("t1", "t2"), ("u1", "u2")])
            .unwrap();
        assert_eq!(all_three(&p), BigUint::from(6u32));
    }

    #[test]
    fn star_with_three_leaves_has_four() {
        // Center s incomparable to the chain l1 < l2 < l3.
        let p = Poset::from_covers(&["s", "l1", "l2", "l3"], &[("l1", "l2"), ("l2", "l3")])
            .unwrap();
        assert_eq!(all_three(&p), BigUint::from(4u32));
    }

    #[test]
    fn path_family_matches_fibonacci() {
        for n in 3..=9 {
            assert_eq!(all_three(&path(n)), fibonacci(n as u64 + 1), "n = {n}");
        }
        for n in 10..=20 {
            let p = path(n);
            let w2 = count_width2(&p, &p.chain_cover_2().unwrap()).unwrap();
            assert_eq!(w2, fibonacci(n as u64 + 1), "n = {n}");
            assert_eq!(count_downsets(&p).unwrap(), w2, "n = {n}");
        }
        assert_eq!(fibonacci(6), BigUint::from(8u32), "path on 5 vertices");
    }

    #[test]
    fn product_rule_over_ordinal_sum() {
        let sum = Poset::from_covers(
            &["u", "v", "y", "z"],
            &[("u", "y"), ("u", "z"), ("v", "y"), ("v", "z")],
        )
        .unwrap();
        let total = all_three(&sum);
        let product: BigUint = sum
            .ordinal_sum_split()
            .iter()
            .map(|part| count_downsets(part).unwrap())
            .product();
        assert_eq!(total, product);
        assert_eq!(total, BigUint::from(4u32));
    }

    #[test]
    fn adding_a_relation_never_increases_the_count() {
        let p = six_path();
        let base = count_downsets(&p).unwrap();
        for u in 0..p.n() {
            for v in 0..p.n() {
                if u != v && !p.comparable(u, v) {
                    let q = p.add_relation(u, v).unwrap();
                    assert!(count_downsets(&q).unwrap() <= base);
                }
            }
        }
    }

    #[test]
    fn invalid_covers_are_rejected() {
        let p = six_path();
        let good = p.chain_cover_2().unwrap();
        let missing = ChainPair { a: good.a.clone(), b: good.b[..2].to_vec() };
        assert!(count_width2(&p, &missing).is_err());
        let swapped = ChainPair { a: vec![1, 0, 2], b: good.b.clone() };
        assert!(count_width2(&p, &swapped).is_err());
    }

    #[test]
    fn size_caps_are_enforced() {
        let p = path(21);
        assert!(count_downsets(&p).is_err());
        assert!(count_bruteforce(&path(10)).is_err());
    }
}
