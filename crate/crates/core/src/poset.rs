//! Finite posets over opaque string ids, their incomparability graphs,
//! two-chain covers, and ordinal sum decompositions.
//!
//! Relations live in per-element `u64` bitmasks and are transitively closed
//! at construction, which caps the ground set at [`MAX_N`] elements. All
//! types are immutable after construction and cheap to clone.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Ground-set cap imposed by the `u64` bitmask representation.
pub const MAX_N: usize = 64;

/// A finite strict partial order.
///
/// `below[v]` / `above[v]` hold the full transitive closure, so every
/// comparability query is a single mask probe. Internal indices follow the
/// declaration order of the ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    ids: Vec<String>,
    below: Vec<u64>,
    above: Vec<u64>,
}

/// A partition of the ground set into two chains, each listed in increasing
/// order. Exists exactly when the width is at most 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPair {
    /// First chain, ascending. Holds the lexicographically least id of every
    /// incomparability component, plus all isolated vertices.
    pub a: Vec<usize>,
    /// Second chain, ascending.
    pub b: Vec<usize>,
}

/// The graph on the ground set whose edges are the incomparable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompGraph {
    /// Adjacency masks, indexed like the source poset.
    pub adj: Vec<u64>,
    /// Connected components, each sorted ascending, ordered by least vertex.
    pub components: Vec<Vec<usize>>,
    /// Component index of every vertex.
    pub component_of: Vec<usize>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Poset {
    /// Builds a poset from declared elements and generating relations,
    /// closing transitively. The generators need not be reduced.
    pub fn from_covers<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut pairs = Vec::with_capacity(covers.len());
        for (u, v) in covers {
            let find = |id: &str| {
                ids.iter()
                    .position(|x| x == id)
                    .ok_or_else(|| Error::UnknownElement(id.to_owned()))
            };
            pairs.push((find(u.as_ref())?, find(v.as_ref())?));
        }
        Self::from_cover_indices(ids, &pairs)
    }

    /// Index-based constructor used by generators and parsers.
    pub fn from_cover_indices(ids: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        if n > MAX_N {
            return Err(Error::TooLarge(format!("{n} elements exceeds cap {MAX_N}")));
        }
        for (i, id) in ids.iter().enumerate() {
            if !valid_id(id) {
                return Err(Error::InvalidId(id.clone()));
            }
            if ids[..i].contains(id) {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        let edges: BTreeSet<(usize, usize)> = covers.iter().copied().collect();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::UnknownElement(format!("index {}", u.max(v))));
            }
            succ[u].push(v);
            indeg[v] += 1;
        }
        // Kahn's algorithm: closure masks accumulate along a topological order.
        let mut below = vec![0u64; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0usize;
        while let Some(u) = queue.pop() {
            seen += 1;
            for &v in &succ[u] {
                below[v] |= below[u] | (1 << u);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        if seen < n {
            let v = (0..n).find(|&v| indeg[v] > 0).expect("unprocessed vertex");
            return Err(Error::Cycle(ids[v].clone()));
        }
        let mut above = vec![0u64; n];
        for v in 0..n {
            let mut m = below[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                above[u] |= 1 << v;
                m &= m - 1;
            }
        }
        Ok(Poset { ids, below, above })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Mask with one bit per element.
    pub fn full_mask(&self) -> u64 {
        if self.n() == MAX_N {
            !0
        } else {
            (1u64 << self.n()) - 1
        }
    }

    /// True when `u < v` in the strict order.
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.below[v] >> u & 1 == 1
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) || self.lt(v, u)
    }

    /// Strict down-set of `v` as a mask.
    pub fn down_mask(&self, v: usize) -> u64 {
        self.below[v]
    }

    /// Strict up-set of `v` as a mask.
    pub fn up_mask(&self, v: usize) -> u64 {
        self.above[v]
    }

    /// Covering pairs (the transitive reduction), ascending by index pair.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n() {
            let mut m = self.below[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.above[u] & self.below[v] == 0 {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Width as the size of a largest antichain, via Dilworth: n minus a
    /// maximum matching of the comparability relation.
    pub fn width(&self) -> usize {
        let n = self.n();
        let mut mate = vec![usize::MAX; n];
        let mut matched = 0;
        for u in 0..n {
            let mut visited = 0u64;
            if self.kuhn_augment(u, &mut visited, &mut mate) {
                matched += 1;
            }
        }
        n - matched
    }

    fn kuhn_augment(&self, u: usize, visited: &mut u64, mate: &mut [usize]) -> bool {
        let mut m = self.above[u] & !*visited;
        *visited |= self.above[u];
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if mate[v] == usize::MAX || self.kuhn_augment(mate[v], visited, mate) {
                mate[v] = u;
                return true;
            }
        }
        false
    }

    /// Width by exhaustive maximum-antichain search. Independent of the
    /// matching route; intended for cross-checks on small ground sets.
    pub fn width_bruteforce(&self) -> usize {
        fn mis(comp: &[u64], cand: u64) -> usize {
            if cand == 0 {
                return 0;
            }
            let v = cand.trailing_zeros() as usize;
            let rest = cand & !(1 << v);
            let with_v = 1 + mis(comp, rest & !comp[v]);
            with_v.max(mis(comp, rest))
        }
        let comp: Vec<u64> = (0..self.n()).map(|v| self.below[v] | self.above[v]).collect();
        mis(&comp, self.full_mask())
    }

    pub fn incomparability_graph(&self) -> IncompGraph {
        let n = self.n();
        let full = self.full_mask();
        let adj: Vec<u64> = (0..n)
            .map(|v| full & !(self.below[v] | self.above[v] | 1 << v))
            .collect();
        let mut component_of = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            component_of[start] = c;
            while let Some(v) = stack.pop() {
                members.push(v);
                let mut m = adj[v];
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if component_of[w] == usize::MAX {
                        component_of[w] = c;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        IncompGraph { adj, components, component_of }
    }

    /// Partitions the ground set into two chains, or fails when the width
    /// exceeds 2. Deterministic: within each incomparability component the
    /// vertex with the lexicographically least id lands in chain A, and
    /// isolated vertices all land in chain A.
    pub fn chain_cover_2(&self) -> Result<ChainPair> {
        let g = self.incomparability_graph();
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for comp in &g.components {
            let root = *comp
                .iter()
                .min_by(|&&x, &&y| self.ids[x].cmp(&self.ids[y]))
                .expect("nonempty component");
            color[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let mut m = g.adj[v];
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return Err(Error::WidthExceeded { width: self.width(), bound: 2 });
                    }
                }
            }
        }
        let chain = |side: u8| -> Vec<usize> {
            let mut xs: Vec<usize> = (0..n).filter(|&v| color[v] == side).collect();
            xs.sort_by_key(|&v| (self.below[v].count_ones(), v));
            xs
        };
        Ok(ChainPair { a: chain(0), b: chain(1) })
    }

    /// Number of incomparability components with exactly two vertices.
    pub fn kappa2(&self) -> usize {
        self.incomparability_graph()
            .components
            .iter()
            .filter(|c| c.len() == 2)
            .count()
    }

    /// Splits into maximal ordinal summands. Summands are exactly the
    /// incomparability components, which are totally ordered against each
    /// other; their concatenation reconstructs the poset.
    pub fn ordinal_sum_split(&self) -> Vec<Poset> {
        let g = self.incomparability_graph();
        let mut comps = g.components;
        comps.sort_by(|c, d| {
            if self.lt(c[0], d[0]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        comps.iter().map(|c| self.restrict(c)).collect()
    }

    /// Induced subposet on the given ascending index list.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let ids = keep.iter().map(|&v| self.ids[v].clone()).collect();
        let compress = |mask: u64| -> u64 {
            keep.iter()
                .enumerate()
                .filter(|&(_, &v)| mask >> v & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        };
        let below = keep.iter().map(|&v| compress(self.below[v])).collect();
        let above = keep.iter().map(|&v| compress(self.above[v])).collect();
        Poset { ids, below, above }
    }

    /// Extends the order by `u < v` and recloses. Fails when `v <= u`
    /// already holds. Adding an existing relation is a no-op.
    pub fn add_relation(&self, u: usize, v: usize) -> Result<Poset> {
        if u == v || self.lt(v, u) {
            return Err(Error::Cycle(self.ids[u].clone()));
        }
        if self.lt(u, v) {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        let lower = self.below[u] | 1 << u;
        let upper = self.above[v] | 1 << v;
        let mut m = upper;
        while m != 0 {
            let y = m.trailing_zeros() as usize;
            m &= m - 1;
            out.below[y] |= lower;
        }
        let mut m = lower;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            out.above[x] |= upper;
        }
        Ok(out)
    }

    /// One deterministic linear extension: repeatedly take the least-index
    /// minimal element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.n();
        let mut taken = 0u64;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .find(|&v| taken >> v & 1 == 0 && self.below[v] & !taken == 0)
                .expect("acyclic order has a minimal element");
            taken |= 1 << v;
            out.push(v);
        }
        out
    }

    /// True when the listed elements form a chain in the listed order.
    pub fn is_chain(&self, xs: &[usize]) -> bool {
        xs.windows(2).all(|w| self.lt(w[0], w[1]))
    }
}

impl IncompGraph {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Edges as ascending index pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            let mut m = self.adj[u] >> (u + 1) << (u + 1);
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Six elements on two chains a<b<c and d<e<f with cross relations
    /// a<e, b<f, d<c; the incomparability graph is the path a-d-b-e-c-f.
    pub fn six_path() -> Poset {
        Poset::from_covers(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
        )
        .unwrap()
    }

    /// Interval-order extension of `six_path`: adds d<b and e<c, leaving
    /// three disjoint incomparability edges a-d, b-e, c-f.
    pub fn six_path_closure() -> Poset {
        Poset::from_covers(
            &["a", "b", "c", "d", "e", "f"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("d", "e"),
                ("e", "f"),
                ("a", "e"),
                ("d", "b"),
                ("b", "f"),
                ("e", "c"),
            ],
        )
        .unwrap()
    }

    fn names<'a>(p: &'a Poset, xs: &[usize]) -> Vec<&'a str> {
        xs.iter().map(|&v| p.id(v)).collect()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(
            Poset::from_covers(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            Poset::from_covers(&["a", "a"], &[] as &[(&str, &str)]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::from_covers(&["a b"], &[] as &[(&str, &str)]),
            Err(Error::InvalidId(_))
        ));
    }

    #[test]
    fn closure_and_covers() {
        let p = six_path();
        assert_eq!(p.n(), 6);
        let (a, c, d, f) = (0, 2, 3, 5);
        assert!(p.lt(a, c), "chain closure");
        assert!(p.lt(a, f), "cross closure through e");
        assert!(p.lt(d, f) && !p.lt(f, d));
        let covers = p.covers();
        assert_eq!(covers.len(), 7);
        assert!(covers.contains(&(d, c)));
        assert!(!covers.contains(&(a, c)), "implied pair is not a cover");
    }

    #[test]
    fn singleton_and_empty() {
        let p = Poset::from_covers(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.width(), 1);
        let e = Poset::from_covers(&[] as &[&str], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(e.n(), 0);
        assert_eq!(e.width(), 0);
    }

    #[test]
    fn incomparability_path() {
        let p = six_path();
        let g = p.incomparability_graph();
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 5);
        let idx = |s: &str| p.index_of(s).unwrap();
        let path = ["a", "d", "b", "e", "c", "f"];
        for w in path.windows(2) {
            let (u, v) = (idx(w[0]), idx(w[1]));
            assert!(g.adj[u] >> v & 1 == 1, "{}-{} must be an edge", w[0], w[1]);
        }
        assert_eq!(g.degree(idx("a")), 1);
        assert_eq!(g.degree(idx("d")), 2);
    }

    #[test]
    fn incomparability_extremes() {
        let two = Poset::from_covers(&["x", "y"], &[] as &[(&str, &str)]).unwrap();
        let g = two.incomparability_graph();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.components.len(), 1);

        let chain = Poset::from_covers(
            &["c1", "c2", "c3", "c4", "c5"],
            &[("c1", "c2"), ("c2", "c3"), ("c3", "c4"), ("c4", "c5")],
        )
        .unwrap();
        let g = chain.incomparability_graph();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components.len(), 5);
    }

    #[test]
    fn width_both_routes() {
        let chain = Poset::from_covers(
            &["c1", "c2", "c3", "c4", "c5", "c6", "c7"],
            &(1..7).map(|i| (format!("c{i}"), format!("c{}", i + 1))).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(chain.width(), 1);
        let anti = Poset::from_covers(&["p", "q", "r", "s"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(anti.width(), 4);
        for p in [&chain, &anti, &six_path(), &six_path_closure()] {
            assert_eq!(p.width(), p.width_bruteforce());
        }
        assert_eq!(six_path().width(), 2);
    }

    #[test]
    fn chain_cover_is_deterministic() {
        let p = six_path();
        let cover = p.chain_cover_2().unwrap();
        assert_eq!(names(&p, &cover.a), ["a", "b", "c"]);
        assert_eq!(names(&p, &cover.b), ["d", "e", "f"]);
        assert!(p.is_chain(&cover.a));
        assert!(p.is_chain(&cover.b));

        let chain = Poset::from_covers(&["u", "v"], &[("u", "v")]).unwrap();
        let cover = chain.chain_cover_2().unwrap();
        assert_eq!(cover.a.len(), 2);
        assert!(cover.b.is_empty());

        let anti3 = Poset::from_covers(&["x", "y", "z"], &[] as &[(&str, &str)]).unwrap();
        assert!(matches!(
            anti3.chain_cover_2(),
            Err(Error::WidthExceeded { width: 3, bound: 2 })
        ));
    }

    #[test]
    fn kappa2_counts_two_element_components() {
        assert_eq!(six_path().kappa2(), 0);
        assert_eq!(six_path_closure().kappa2(), 3);
        let chain = Poset::from_covers(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(chain.kappa2(), 0);
        // Ordinal sum of two 2-antichains: w < both y, z for w in {u, v}.
        let sum = Poset::from_covers(
            &["u", "v", "y", "z"],
            &[("u", "y"), ("u", "z"), ("v", "y"), ("v", "z")],
        )
        .unwrap();
        assert_eq!(sum.kappa2(), 2);
    }

    #[test]
    fn ordinal_sum_split_orders_summands() {
        assert_eq!(six_path().ordinal_sum_split().len(), 1);

        let chain = Poset::from_covers(&["m", "l", "k"], &[("k", "l"), ("l", "m")]).unwrap();
        let parts = chain.ordinal_sum_split();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].ids(), ["k"]);
        assert_eq!(parts[2].ids(), ["m"]);

        let sum = Poset::from_covers(
            &["u", "v", "y", "z"],
            &[("u", "y"), ("u", "z"), ("v", "y"), ("v", "z")],
        )
        .unwrap();
        let parts = sum.ordinal_sum_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].ids(), ["u", "v"]);
        assert_eq!(parts[1].ids(), ["y", "z"]);
        let k2: usize = parts.iter().map(Poset::kappa2).sum();
        assert_eq!(k2, sum.kappa2(), "kappa2 adds over summands");
    }

    #[test]
    fn add_relation_recloses() {
        let p = six_path();
        let idx = |s: &str| p.index_of(s).unwrap();
        let q = p
            .add_relation(idx("d"), idx("b"))
            .unwrap()
            .add_relation(idx("e"), idx("c"))
            .unwrap();
        assert_eq!(q, six_path_closure());
        assert!(p.add_relation(idx("c"), idx("a")).is_err(), "would close a cycle");
        assert_eq!(p.add_relation(idx("a"), idx("c")).unwrap(), p, "already related");
    }

    #[test]
    fn linear_extension_is_consistent() {
        let p = six_path();
        let ext = p.linear_extension();
        let mut pos = vec![0; p.n()];
        for (k, &v) in ext.iter().enumerate() {
            pos[v] = k;
        }
        for u in 0..p.n() {
            for v in 0..p.n() {
                if p.lt(u, v) {
                    assert!(pos[u] < pos[v]);
                }
            }
        }
    }
}
