//! Corpus generators and the exhaustive width-2 enumerator.
//!
//! Isomorphism dedup rests on a small fact: in a width-2 poset, elements
//! sharing the (|down-set|, |up-set|) profile are incomparable, so profile
//! classes have at most two members and the canonical form only has to
//! minimize over per-class swaps.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest ground set the exhaustive enumerator accepts.
pub const ENUMERATE_LIMIT: usize = 9;

/// Largest ground set the labeled-relation oracle accepts.
pub const ORACLE_LIMIT: usize = 6;

/// Deterministic corpus description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSpec {
    ExhaustiveWidth2 { n: usize },
    RandomWidth2 { n: usize, count: usize, seed: u64 },
    Path { n: usize },
    Star { n: usize },
    TwoAntichainSum { k: usize },
    Epoch { psi: usize, omega: usize },
    Table1Case { case: u8, param: usize },
}

pub fn generate(spec: &CorpusSpec) -> Result<Vec<Poset>> {
    match *spec {
        CorpusSpec::ExhaustiveWidth2 { n } => enumerate_width2(n),
        CorpusSpec::RandomWidth2 { n, count, seed } => random_width2(n, count, seed),
        CorpusSpec::Path { n } => Ok(vec![path(n)]),
        CorpusSpec::Star { n } => star(n).map(|p| vec![p]),
        CorpusSpec::TwoAntichainSum { k } => Ok(vec![two_antichain_sum(k)]),
        CorpusSpec::Epoch { psi, omega } => epoch_poset(psi, omega).map(|p| vec![p]),
        CorpusSpec::Table1Case { case, param } => table1_case(case, param).map(|p| vec![p]),
    }
}

impl CorpusSpec {
    /// Parses `kind(args)` with comma-separated integer arguments:
    /// `exhaustive-width2(6)`, `random-width2(10,50)`, `path(8)`, `star(5)`,
    /// `two-antichain-sum(3)`, `epoch(5,3)`, `table1-case(4,6)`. The seed
    /// only matters for the random kind.
    pub fn parse(s: &str, seed: u64) -> Result<CorpusSpec> {
        let s = s.trim();
        let bad = |msg: &str| Error::Precondition(format!("corpus spec `{s}`: {msg}"));
        let open = s.find('(').ok_or_else(|| bad("expected kind(args)"))?;
        if !s.ends_with(')') {
            return Err(bad("expected closing parenthesis"));
        }
        let args: Vec<usize> = s[open + 1..s.len() - 1]
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("arguments must be nonnegative integers"))?;
        match (&s[..open], args.as_slice()) {
            ("exhaustive-width2", &[n]) => Ok(CorpusSpec::ExhaustiveWidth2 { n }),
            ("random-width2", &[n, count]) => Ok(CorpusSpec::RandomWidth2 { n, count, seed }),
            ("path", &[n]) => Ok(CorpusSpec::Path { n }),
            ("star", &[n]) => Ok(CorpusSpec::Star { n }),
            ("two-antichain-sum", &[k]) => Ok(CorpusSpec::TwoAntichainSum { k }),
            ("epoch", &[psi, omega]) => Ok(CorpusSpec::Epoch { psi, omega }),
            ("table1-case", &[case, param]) if case <= 6 => {
                Ok(CorpusSpec::Table1Case { case: case as u8, param })
            }
            _ => Err(bad("unknown kind or wrong argument count")),
        }
    }

    /// Stable name for file output and sweep ids.
    pub fn stem(&self) -> String {
        match *self {
            CorpusSpec::ExhaustiveWidth2 { n } => format!("exhaustive-width2-{n}"),
            CorpusSpec::RandomWidth2 { n, count, seed } => {
                format!("random-width2-{n}-{count}-s{seed}")
            }
            CorpusSpec::Path { n } => format!("path-{n}"),
            CorpusSpec::Star { n } => format!("star-{n}"),
            CorpusSpec::TwoAntichainSum { k } => format!("two-antichain-sum-{k}"),
            CorpusSpec::Epoch { psi, omega } => format!("epoch-{psi}-{omega}"),
            CorpusSpec::Table1Case { case, param } => format!("table1-case-{case}-{param}"),
        }
    }
}

/// The poset on v1..vn with vi < vj exactly when j - i >= 2; its
/// incomparability graph is the n-vertex path.
pub fn path(n: usize) -> Poset {
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for d in [2, 3] {
            if i + d < n {
                covers.push((i, i + d));
            }
        }
    }
    Poset::from_cover_indices(ids, &covers).expect("path relations are acyclic")
}

/// A chain of n-1 leaves plus a center incomparable to all of them; the
/// incomparability graph is the star K_{1,n-1}.
pub fn star(n: usize) -> Result<Poset> {
    if n < 3 {
        return Err(Error::Precondition(format!("star needs n >= 3, got {n}")));
    }
    let mut ids = vec!["c".to_string()];
    ids.extend((1..n).map(|i| format!("l{i}")));
    let covers: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    Poset::from_cover_indices(ids, &covers)
}

/// Ordinal sum of k two-element antichains.
pub fn two_antichain_sum(k: usize) -> Poset {
    let mut ids = Vec::new();
    let mut covers = Vec::new();
    for i in 0..k {
        ids.push(format!("a{}", i + 1));
        ids.push(format!("b{}", i + 1));
        if i > 0 {
            for lower in [2 * i - 2, 2 * i - 1] {
                covers.push((lower, 2 * i));
                covers.push((lower, 2 * i + 1));
            }
        }
    }
    Poset::from_cover_indices(ids, &covers).expect("layered relations are acyclic")
}

/// Side-by-side single-epoch interval order: psi intervals of length 1/psi
/// against omega intervals of length 1/omega, both starting at 0.
pub fn epoch_poset(psi: usize, omega: usize) -> Result<Poset> {
    if psi == 0 || omega == 0 || num_integer::gcd(psi, omega) != 1 {
        return Err(Error::Precondition(format!(
            "epoch sides must be positive and coprime, got ({psi}, {omega})"
        )));
    }
    let mut ids: Vec<String> = (1..=psi).map(|i| format!("a{i}")).collect();
    ids.extend((1..=omega).map(|j| format!("b{j}")));
    let mut rel = Vec::new();
    for i in 0..psi {
        for j in i + 1..psi {
            rel.push((i, j));
        }
    }
    for i in 0..omega {
        for j in i + 1..omega {
            rel.push((psi + i, psi + j));
        }
    }
    // a_{i+1} ends at (i+1)/psi, b_{j+1} starts at j/omega.
    for i in 0..psi {
        for j in 0..omega {
            if (i + 1) * omega <= j * psi {
                rel.push((i, psi + j));
            }
            if (j + 1) * psi <= i * omega {
                rel.push((psi + j, i));
            }
        }
    }
    Poset::from_cover_indices(ids, &rel)
}

/// The four multi-epoch shapes of the pendant-family catalog: a star or an
/// odd-path epoch with one or two pendant two-element epochs, joined by
/// phantom incomparabilities.
///
/// Cases 3 and 4 take the leaf count (psi >= 2), cases 5 and 6 the smaller
/// side of the big epoch (omega >= 2).
pub fn table1_case(case: u8, param: usize) -> Result<Poset> {
    match case {
        3 | 4 => {
            let psi = param;
            if psi < 2 {
                return Err(Error::Precondition("cases 3 and 4 need psi >= 2".into()));
            }
            let mut ids = vec!["t".to_string(), "b".to_string(), "c".to_string()];
            ids.extend((1..=psi).map(|i| format!("l{i}")));
            let (t, b, c, l) = (0, 1, 2, 3);
            let mut rel = vec![(t, c)];
            for k in 0..psi {
                rel.push((t, l + k));
                rel.push((b, l + k));
                if k > 0 {
                    rel.push((l + k - 1, l + k));
                }
            }
            if case == 4 {
                let (t2, b2) = (l + psi, l + psi + 1);
                ids.push("t2".to_string());
                ids.push("b2".to_string());
                rel.push((c, t2));
                for k in 0..psi {
                    rel.push((l + k, t2));
                    rel.push((l + k, b2));
                }
                for x in [t, b] {
                    rel.push((x, t2));
                    rel.push((x, b2));
                }
            }
            Poset::from_cover_indices(ids, &rel)
        }
        5 | 6 => {
            let s = param;
            if s < 2 {
                return Err(Error::Precondition("cases 5 and 6 need omega >= 2".into()));
            }
            // Pendant pair {t, u}, then an epoch with s+1 short against s
            // long intervals; u reaches across into the first long one.
            let epoch = epoch_poset(s + 1, s)?;
            let mut ids = vec!["t".to_string(), "u".to_string()];
            ids.extend(epoch.ids().iter().cloned());
            let (t, u) = (0, 1);
            let y = |j: usize| 2 + s + 1 + j; // b1..b_s after a1..a_{s+1}
            let mut rel = Vec::new();
            for p in 0..epoch.n() {
                for q in 0..epoch.n() {
                    if epoch.lt(p, q) {
                        rel.push((2 + p, 2 + q));
                    }
                }
            }
            for p in 0..epoch.n() {
                rel.push((t, 2 + p));
                if 2 + p != y(0) {
                    rel.push((u, 2 + p));
                }
            }
            if case == 6 {
                let (v, w) = (2 + epoch.n(), 2 + epoch.n() + 1);
                ids.push("v".to_string());
                ids.push("w".to_string());
                for p in [t, u] {
                    rel.push((p, v));
                    rel.push((p, w));
                }
                for p in 0..epoch.n() {
                    rel.push((2 + p, v));
                    if 2 + p != y(s - 1) {
                        rel.push((2 + p, w));
                    }
                }
            }
            Poset::from_cover_indices(ids, &rel)
        }
        _ => Err(Error::Precondition(format!("no table case {case}"))),
    }
}

/// Deterministic random width-2 posets: two chains of random sizes plus
/// random cross relations inserted with transitive closure.
pub fn random_width2(n: usize, count: usize, seed: u64) -> Result<Vec<Poset>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = rng.gen_range(0..=n);
        let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let mut covers = Vec::new();
        for i in 0..n.saturating_sub(1) {
            if i + 1 != a {
                covers.push((i, i + 1));
            }
        }
        let mut p = Poset::from_cover_indices(ids, &covers)?;
        let attempts = if n < 2 { 0 } else { rng.gen_range(0..2 * n) };
        for _ in 0..attempts {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                if let Ok(q) = p.add_relation(u, v) {
                    p = q;
                }
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Every isomorphism class of width-<=2 posets on n elements, exactly once.
/// Grows posets one maximal element at a time and dedups by canonical form.
pub fn enumerate_width2(n: usize) -> Result<Vec<Poset>> {
    if n > ENUMERATE_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration capped at {ENUMERATE_LIMIT} elements, got {n}"
        )));
    }
    let empty = Poset::from_cover_indices(Vec::new(), &[])?;
    let mut current = vec![empty];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &current {
            for mask in 0u64..1 << k {
                if !down_closed(p, mask) {
                    continue;
                }
                let q = extend_with_maximal(p, mask, k)?;
                if q.width() > 2 {
                    continue;
                }
                if seen.insert(canonical_key(&q)) {
                    next.push(q);
                }
            }
        }
        current = next;
    }
    Ok(current)
}

fn down_closed(p: &Poset, mask: u64) -> bool {
    (0..p.n()).all(|v| mask >> v & 1 == 0 || p.down_mask(v) & !mask == 0)
}

fn extend_with_maximal(p: &Poset, mask: u64, k: usize) -> Result<Poset> {
    let mut ids: Vec<String> = p.ids().to_vec();
    ids.push(format!("e{}", k + 1));
    let mut rel = Vec::new();
    for u in 0..k {
        for v in 0..k {
            if p.lt(u, v) {
                rel.push((u, v));
            }
        }
        if mask >> u & 1 == 1 {
            rel.push((u, k));
        }
    }
    Poset::from_cover_indices(ids, &rel)
}

/// Isomorphism-canonical encoding of the order relation. Elements group by
/// (|down-set|, |up-set|); any isomorphism permutes within groups, and each
/// group has at most two members when the width is at most 2.
pub fn canonical_key(p: &Poset) -> u128 {
    let n = p.n();
    assert!(n <= ENUMERATE_LIMIT && p.width() <= 2);
    let mut profiles: Vec<(u32, u32, usize)> = (0..n)
        .map(|v| (p.down_mask(v).count_ones(), p.up_mask(v).count_ones(), v))
        .collect();
    profiles.sort();
    let pairs: Vec<usize> = (0..n.saturating_sub(1))
        .filter(|&i| {
            (profiles[i].0, profiles[i].1) == (profiles[i + 1].0, profiles[i + 1].1)
        })
        .collect();
    debug_assert!(pairs.windows(2).all(|w| w[1] > w[0] + 1), "profile groups have size <= 2");
    let mut best = u128::MAX;
    for swaps in 0u32..1 << pairs.len() {
        let mut order: Vec<usize> = profiles.iter().map(|&(_, _, v)| v).collect();
        for (bit, &i) in pairs.iter().enumerate() {
            if swaps >> bit & 1 == 1 {
                order.swap(i, i + 1);
            }
        }
        let mut key = 0u128;
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate() {
                if p.lt(u, v) {
                    key |= 1 << (i * n + j);
                }
            }
        }
        best = best.min(key);
    }
    best
}

/// Independent class count: enumerates all transitive relations on a
/// naturally labeled ground set, filters width, quotients by isomorphism.
pub fn count_classes_oracle(n: usize) -> Result<usize> {
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge(format!(
            "labeled-relation oracle capped at {ORACLE_LIMIT} elements, got {n}"
        )));
    }
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut classes = HashSet::new();
    'outer: for bits in 0u32..1 << slots.len() {
        let rel = |i: usize, j: usize| -> bool {
            slots.iter().position(|&s| s == (i, j)).map(|k| bits >> k & 1 == 1).unwrap_or(false)
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if rel(i, j) && rel(j, k) && !rel(i, k) {
                        continue 'outer;
                    }
                }
            }
        }
        let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let covers: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|&(k, _)| bits >> k & 1 == 1).map(|(_, &s)| s).collect();
        let p = Poset::from_cover_indices(ids, &covers)?;
        if p.width() <= 2 {
            classes.insert(canonical_key(&p));
        }
    }
    Ok(classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linext::{count_bruteforce, count_downsets, count_width2, fibonacci};

    #[test]
    fn path_matches_the_worked_example() {
        let p = path(6);
        let six_path = Poset::from_covers(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
        )
        .unwrap();
        assert_eq!(canonical_key(&p), canonical_key(&six_path));
        assert_eq!(count_downsets(&p).unwrap(), 13u32.into());
    }

    #[test]
    fn star_is_a_star() {
        let p = star(4).unwrap();
        let g = p.incomparability_graph();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 3, "center meets every leaf");
        assert_eq!(count_downsets(&p).unwrap(), 4u32.into());
        assert!(star(2).is_err());
    }

    #[test]
    fn antichain_sum_counts_powers_of_two() {
        let p = two_antichain_sum(3);
        assert_eq!(p.n(), 6);
        assert_eq!(p.kappa2(), 3);
        assert_eq!(count_downsets(&p).unwrap(), 8u32.into());
    }

    #[test]
    fn small_epochs() {
        let p = epoch_poset(3, 2).unwrap();
        assert_eq!(p.n(), 5);
        let g = p.incomparability_graph();
        assert_eq!(g.edge_count(), 4);
        let mut degrees: Vec<usize> = (0..5).map(|v| g.degree(v)).collect();
        degrees.sort();
        assert_eq!(degrees, [1, 1, 2, 2, 2], "five-vertex path");
        assert_eq!(canonical_key(&p), canonical_key(&path(5)));
        assert!(epoch_poset(4, 2).is_err(), "sides must be coprime");
        // Next odd path: (4, 3) gives the seven-vertex path.
        assert_eq!(canonical_key(&epoch_poset(4, 3).unwrap()), canonical_key(&path(7)));
    }

    #[test]
    fn table_cases_have_the_advertised_extension_counts() {
        // Frozen counts, cross-checked by independent counters; the first
        // two match the table's 2*psi+3 and 4*psi+8, the last two are the
        // true counts of the drawn posets.
        for (case, param, expect) in [(3u8, 2usize, 7u64), (4, 2, 16), (5, 2, 19), (6, 2, 45)] {
            let p = table1_case(case, param).unwrap();
            let chains = p.chain_cover_2().unwrap();
            let e = count_width2(&p, &chains).unwrap();
            assert_eq!(count_downsets(&p).unwrap(), e, "case {case}");
            if p.n() <= 9 {
                assert_eq!(count_bruteforce(&p).unwrap(), e, "case {case}");
            }
            assert_eq!(e, expect.into(), "case {case} param {param}");
        }
        assert_eq!(fibonacci(8), 21u32.into(), "the table would predict 21 for case 5");
    }

    #[test]
    fn exhaustive_counts_match_the_labeled_oracle() {
        let expect = [1, 1, 2, 4];
        for n in 0..=3 {
            assert_eq!(enumerate_width2(n).unwrap().len(), expect[n]);
        }
        for n in 0..=6 {
            assert_eq!(
                enumerate_width2(n).unwrap().len(),
                count_classes_oracle(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_width_bounded() {
        let all = enumerate_width2(7).unwrap();
        let mut keys = HashSet::new();
        for p in &all {
            assert!(p.width() <= 2);
            assert!(keys.insert(canonical_key(p)));
        }
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a = random_width2(10, 5, 42).unwrap();
        let b = random_width2(10, 5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.width() <= 2));
        assert_ne!(a, random_width2(10, 5, 43).unwrap());
    }

    #[test]
    fn spec_strings_parse() {
        let cases = [
            ("exhaustive-width2(6)", CorpusSpec::ExhaustiveWidth2 { n: 6 }),
            ("random-width2(10, 50)", CorpusSpec::RandomWidth2 { n: 10, count: 50, seed: 7 }),
            ("path(8)", CorpusSpec::Path { n: 8 }),
            ("star(5)", CorpusSpec::Star { n: 5 }),
            ("two-antichain-sum(3)", CorpusSpec::TwoAntichainSum { k: 3 }),
            ("epoch(5,3)", CorpusSpec::Epoch { psi: 5, omega: 3 }),
            ("table1-case(4,6)", CorpusSpec::Table1Case { case: 4, param: 6 }),
        ];
        for (text, want) in cases {
            assert_eq!(CorpusSpec::parse(text, 7).unwrap(), want, "{text}");
        }
        for bad in ["path", "path(x)", "orbit(3)", "epoch(5)", "table1-case(9,2)"] {
            assert!(matches!(CorpusSpec::parse(bad, 0), Err(Error::Precondition(_))), "{bad}");
        }
    }
}
