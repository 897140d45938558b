//! Graph entropy of bipartite incomparability graphs.
//!
//! The Körner-Marton route peels ratio-maximal pairs (A_i, B_i) off the
//! bipartite graph and sums exact binary-entropy terms. A Frank-Wolfe
//! minimizer over the explicitly enumerated stable set polytope serves as
//! an independent numeric oracle.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
#[cfg(test)]
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{binary_entropy, ExactReal};
use crate::poset::{ChainPair, Poset};

/// One decomposition pair: a ratio-maximal subset of one chain together
/// with its exact neighborhood in the other. Either side may be empty for
/// isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmPair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl KmPair {
    /// Ratio |A_i|/|B_i| as a (numerator, denominator) pair; (1, 0) stands
    /// for the infinite ratio of an isolated chain-A vertex.
    pub fn ratio(&self) -> (usize, usize) {
        if self.b.is_empty() {
            (1, 0)
        } else {
            (self.a.len(), self.b.len())
        }
    }
}

/// Result of the full decomposition.
#[derive(Clone, Debug)]
pub struct KmDecomposition {
    /// Pairs in production order; ratios are non-increasing.
    pub pairs: Vec<KmPair>,
    /// The entropy minimizer over the stable set polytope of the
    /// incomparability graph: x_v = |A_i|/(|A_i|+|B_i|) for v in A_i and
    /// |B_i|/(|A_i|+|B_i|) for v in B_i. Satisfies x_u + x_v <= 1 on every
    /// incomparability edge and 0 < x_v <= 1.
    pub x_star: Vec<BigRational>,
    /// H(Gbar) = sum_i ((|A_i|+|B_i|)/n) h(|A_i|/(|A_i|+|B_i|)), exact.
    pub entropy: ExactReal,
}

impl KmDecomposition {
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn ratios(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(KmPair::ratio).collect()
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn mask_of(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |acc, &v| acc | 1 << v)
}

/// Inclusion-minimal subset of `side_a` maximizing |A'|/|N(A')| in the
/// bipartite graph induced on `side_a | side_b`, together with its exact
/// neighborhood.
///
/// Isolated vertices of `side_a` have infinite ratio; the least-index one
/// is returned alone. Otherwise Dinkelbach iteration drives a max-weight
/// closure min-cut: at the optimal ratio the maximizers form a lattice, the
/// minimal nonempty ones are pairwise disjoint, and the one containing the
/// least vertex index is returned.
pub fn max_ratio_subset(adj: &[u64], side_a: u64, side_b: u64) -> Result<(u64, u64)> {
    let scope = side_a | side_b;
    for v in bits(scope) {
        let same = if side_a >> v & 1 == 1 { side_a } else { side_b };
        if adj[v] & same & scope != 0 {
            return Err(Error::NotBipartite);
        }
    }
    let nb = |set: u64| -> u64 { bits(set).fold(0, |acc, v| acc | (adj[v] & side_b)) };
    if side_a == 0 {
        return Ok((0, 0));
    }
    if let Some(a) = bits(side_a).find(|&a| adj[a] & side_b == 0) {
        return Ok((1 << a, 0));
    }

    // Dinkelbach: lambda = num/den climbs until no subset beats it.
    let (mut num, mut den) = (side_a.count_ones() as u64, nb(side_a).count_ones() as u64);
    loop {
        let cand = min_closure(adj, side_a, side_b, num, den, None);
        if cand == 0 {
            break;
        }
        let (a, b) = (cand.count_ones() as u64, nb(cand).count_ones() as u64);
        debug_assert!(a * den > num * b, "Dinkelbach ratio must strictly increase");
        num = a;
        den = b;
    }

    // Minimal nonempty maximizers at the optimal ratio: force each vertex
    // in turn and keep the inclusion-minimal results.
    let mut minimal: Vec<u64> = Vec::new();
    for a in bits(side_a) {
        let set = min_closure(adj, side_a, side_b, num, den, Some(a));
        let value = den as i128 * set.count_ones() as i128
            - num as i128 * nb(set).count_ones() as i128;
        if value == 0 && !minimal.iter().any(|&other| other & !set == 0) {
            minimal.retain(|&other| set & !other != 0);
            minimal.push(set);
        }
    }
    let best = *minimal
        .iter()
        .min_by_key(|&&set| set.trailing_zeros())
        .expect("the optimal ratio is attained");
    Ok((best, nb(best)))
}

/// Minimal max-weight closure for the scaled objective den·|A'| − num·|N(A')|:
/// source->a capacity den (infinite when forced), b->sink capacity num,
/// a->b infinite on edges. The residual vertices reachable from the source
/// form the lattice-minimal optimal closure.
fn min_closure(adj: &[u64], side_a: u64, side_b: u64, num: u64, den: u64, force: Option<usize>) -> u64 {
    const INF: u64 = u64::MAX / 4;
    let n = adj.len();
    let mut flow = Dinic::new(n + 2);
    let (s, t) = (n, n + 1);
    for a in bits(side_a) {
        flow.add(s, a, if force == Some(a) { INF } else { den });
    }
    for b in bits(side_b) {
        flow.add(b, t, num);
    }
    for a in bits(side_a) {
        for b in bits(adj[a] & side_b) {
            flow.add(a, b, INF);
        }
    }
    flow.maxflow(s, t);
    let reach = flow.residual_reachable(s);
    bits(side_a).filter(|&a| reach[a]).fold(0, |acc, a| acc | 1 << a)
}

/// Dinic max-flow on a tiny graph; capacities fit in u64.
struct Dinic {
    to: Vec<usize>,
    cap: Vec<u64>,
    head: Vec<Vec<usize>>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic { to: Vec::new(), cap: Vec::new(), head: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: usize, v: usize, c: u64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn maxflow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut iter = vec![0usize; self.head.len()];
            loop {
                let pushed = self.push(s, t, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: u64, level: &[usize], iter: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while iter[u] < self.head[u].len() {
            let e = self.head[u][iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.push(v, t, limit.min(self.cap[e]), level, iter);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Brute-force max-ratio reference: scans every nonempty subset of
/// `side_a` and applies the same least-index tie rule among the
/// inclusion-minimal maximizers. Cross-check oracle for
/// [`max_ratio_subset`]; |side_a| capped at 16.
pub fn max_ratio_subset_bruteforce(adj: &[u64], side_a: u64, side_b: u64) -> Result<(u64, u64)> {
    let avs: Vec<usize> = bits(side_a).collect();
    if avs.len() > 16 {
        return Err(Error::TooLarge(format!("{} chain-A vertices exceeds brute-force cap 16", avs.len())));
    }
    if avs.is_empty() {
        return Ok((0, 0));
    }
    let nb = |set: u64| -> u64 { bits(set).fold(0, |acc, v| acc | (adj[v] & side_b)) };
    // Ratios compared as fractions: a/b vs a'/b' by cross-multiplication;
    // empty neighborhoods give the infinite ratio.
    let mut best: Vec<u64> = Vec::new();
    let mut bn = 0u64;
    let mut bd = 1u64;
    for choice in 1u64..1 << avs.len() {
        let set = bits(choice).fold(0u64, |acc, i| acc | 1 << avs[i]);
        let a = set.count_ones() as u64;
        let b = nb(set).count_ones() as u64;
        match (a * bd).cmp(&(bn * b)) {
            std::cmp::Ordering::Greater => {
                best = vec![set];
                bn = a;
                bd = b;
            }
            std::cmp::Ordering::Equal => best.push(set),
            std::cmp::Ordering::Less => {}
        }
    }
    let minimal: Vec<u64> = best
        .iter()
        .copied()
        .filter(|&s| !best.iter().any(|&o| o != s && o & !s == 0))
        .collect();
    let pick = *minimal
        .iter()
        .min_by_key(|&&s| s.trailing_zeros())
        .expect("nonempty candidate list");
    Ok((pick, nb(pick)))
}

/// Runs the full decomposition on the incomparability graph of `p` with the
/// given two-chain cover.
///
/// Isolated chain-A vertices are emitted first as ({a}, {}) pairs in
/// element-id order; then ratio-maximal pairs are peeled until chain A is
/// exhausted; leftover chain-B vertices trail as ({}, {b}) pairs in
/// element-id order.
pub fn km_decompose(p: &Poset, chains: &ChainPair) -> Result<KmDecomposition> {
    let g = p.incomparability_graph();
    let mut side_a = mask_of(&chains.a);
    let mut side_b = mask_of(&chains.b);
    if side_a & side_b != 0
        || side_a | side_b != p.full_mask()
        || !p.is_chain(&chains.a)
        || !p.is_chain(&chains.b)
    {
        return Err(Error::InvalidCover("not a two-chain cover".into()));
    }
    let mut pairs: Vec<KmPair> = Vec::new();
    while side_a != 0 {
        let iso = bits(side_a)
            .filter(|&a| g.adj[a] & side_b == 0)
            .min_by(|&x, &y| p.id(x).cmp(p.id(y)));
        if let Some(a) = iso {
            pairs.push(KmPair { a: vec![a], b: Vec::new() });
            side_a &= !(1 << a);
            continue;
        }
        let (aset, bset) = max_ratio_subset(&g.adj, side_a, side_b)?;
        pairs.push(KmPair { a: bits(aset).collect(), b: bits(bset).collect() });
        side_a &= !aset;
        side_b &= !bset;
    }
    let mut leftovers: Vec<usize> = bits(side_b).collect();
    leftovers.sort_by(|&x, &y| p.id(x).cmp(p.id(y)));
    pairs.extend(leftovers.into_iter().map(|b| KmPair { a: Vec::new(), b: vec![b] }));

    let mut x_star = vec![BigRational::zero(); p.n()];
    let mut entropy = ExactReal::zero();
    for pair in &pairs {
        let (na, nb) = (pair.a.len(), pair.b.len());
        let total = BigRational::from_integer(((na + nb) as i64).into());
        let frac = |k: usize| BigRational::from_integer((k as i64).into()) / &total;
        for &v in &pair.a {
            x_star[v] = frac(na);
        }
        for &v in &pair.b {
            x_star[v] = frac(nb);
        }
        if na > 0 && nb > 0 {
            let weight = &total / BigRational::from_integer((p.n() as i64).into());
            entropy = entropy.add(&binary_entropy(&frac(na))?.scale(&weight));
        }
    }
    for w in pairs.windows(2) {
        let ((a0, b0), (a1, b1)) = (w[0].ratio(), w[1].ratio());
        debug_assert!(a0 * b1 >= a1 * b0, "ratios must be non-increasing");
    }
    Ok(KmDecomposition { pairs, x_star, entropy })
}

/// H(incomparability graph) and H(comparability graph) of a width-2 poset.
/// The first comes from the decomposition, the second from the perfect-graph
/// identity H(G) + H(Gbar) = log n.
pub fn complement_entropy_check(p: &Poset) -> Result<(ExactReal, ExactReal)> {
    let chains = p.chain_cover_2()?;
    let km = km_decompose(p, &chains)?;
    if p.n() == 0 {
        return Ok((ExactReal::zero(), ExactReal::zero()));
    }
    let log_n = ExactReal::log2_uint(&BigUint::from(p.n()));
    let comp = log_n.sub(&km.entropy);
    Ok((km.entropy, comp))
}

/// Entropy of a disjoint union of graphs: the size-weighted mean of the
/// component entropies.
pub fn entropy_disjoint_union(parts: &[(usize, ExactReal)]) -> ExactReal {
    let total: usize = parts.iter().map(|(size, _)| size).sum();
    if total == 0 {
        return ExactReal::zero();
    }
    let mut acc = ExactReal::zero();
    for (size, h) in parts {
        acc = acc.add(&h.scale(&BigRational::from_integer((*size as i64).into())));
    }
    acc.scale(&BigRational::new(1.into(), (total as i64).into()))
}

/// Frank-Wolfe estimate of H(G): numeric value in bits, the optimizing
/// point, and the final duality gap (an upper bound on the suboptimality).
#[derive(Clone, Debug)]
pub struct FwEstimate {
    pub value: f64,
    pub point: Vec<f64>,
    pub gap: f64,
    pub iterations: usize,
}

/// Vertex cap for [`entropy_bruteforce`]; stable sets are enumerated.
pub const FW_LIMIT: usize = 12;

/// Minimizes −(1/n)·Σ log₂ x_v over the stable set polytope by away-step
/// Frank-Wolfe with exact line search, starting from the barycenter of all
/// stable-set vertices. Away steps restore linear convergence here, where
/// the optimum sits on the boundary; the plain 2/(t+2) schedule stalls far
/// above the 1e-12 gap target.
pub fn entropy_bruteforce(adj: &[u64]) -> Result<FwEstimate> {
    let n = adj.len();
    if n > FW_LIMIT {
        return Err(Error::TooLarge(format!("{n} vertices exceeds Frank-Wolfe cap {FW_LIMIT}")));
    }
    if n == 0 {
        return Ok(FwEstimate { value: 0.0, point: Vec::new(), gap: 0.0, iterations: 0 });
    }
    let full = if n == 64 { !0u64 } else { (1 << n) - 1 };
    let stable: Vec<u64> = (0..=full)
        .filter(|&s| bits(s).all(|v| adj[v] & s == 0))
        .collect();
    // Only maximal stable sets can win the linear minimization: the
    // gradient of the objective is strictly negative coordinate-wise.
    let maximal: Vec<u64> = stable
        .iter()
        .copied()
        .filter(|&s| bits(full & !s).all(|v| adj[v] & s != 0))
        .collect();

    let nf = n as f64;
    let objective = |x: &[f64]| -> f64 { -x.iter().map(|&v| v.log2()).sum::<f64>() / nf };
    let dot = |g: &[f64], s: u64| -> f64 { bits(s).map(|v| g[v]).sum() };

    // Active set: convex weights over stable-set vertices.
    let mut active: Vec<(u64, f64)> = stable.iter().map(|&s| (s, 1.0 / stable.len() as f64)).collect();
    let point = |active: &[(u64, f64)]| -> Vec<f64> {
        let mut x = vec![0.0; n];
        for &(s, w) in active {
            for v in bits(s) {
                x[v] += w;
            }
        }
        x
    };

    let mut x = point(&active);
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    const MAX_ITER: usize = 200_000;
    const TARGET: f64 = 1e-12;
    while iterations < MAX_ITER {
        iterations += 1;
        let ln2 = std::f64::consts::LN_2;
        let grad: Vec<f64> = x.iter().map(|&v| -1.0 / (nf * ln2 * v)).collect();
        let fw = *maximal
            .iter()
            .min_by(|&&s, &&t| dot(&grad, s).total_cmp(&dot(&grad, t)))
            .expect("nonempty vertex list");
        let gx = grad.iter().zip(&x).map(|(g, v)| g * v).sum::<f64>();
        gap = gx - dot(&grad, fw);
        if gap <= TARGET {
            break;
        }
        let (away_idx, _) = active
            .iter()
            .enumerate()
            .max_by(|(_, (s, _)), (_, (t, _))| dot(&grad, *s).total_cmp(&dot(&grad, *t)))
            .expect("active set never empties");
        let away_set = active[away_idx].0;
        let away_gain = dot(&grad, away_set) - gx;

        // Direction d and maximal step; exact line search on the segment.
        let fw_step = gap >= away_gain;
        let (d, gamma_max): (Vec<f64>, f64) = if fw_step {
            let mut d = x.iter().map(|v| -v).collect::<Vec<_>>();
            for v in bits(fw) {
                d[v] += 1.0;
            }
            (d, 1.0)
        } else {
            let w = active[away_idx].1;
            let mut d = x.clone();
            for v in bits(away_set) {
                d[v] -= 1.0;
            }
            (d, w / (1.0 - w))
        };
        let gamma = line_search(&x, &d, gamma_max);
        if gamma <= 0.0 {
            break;
        }
        // Weight bookkeeping keeps the convex representation in sync.
        if fw_step {
            for (_, w) in active.iter_mut() {
                *w *= 1.0 - gamma;
            }
            match active.iter_mut().find(|(s, _)| *s == fw) {
                Some((_, w)) => *w += gamma,
                None => active.push((fw, gamma)),
            }
        } else {
            let full_drop = gamma >= gamma_max;
            for (_, w) in active.iter_mut() {
                *w *= 1.0 + gamma;
            }
            if full_drop {
                active[away_idx].1 = 0.0;
            } else {
                // A partial away step keeps strictly positive weight
                // exactly; floor it so rounding cannot delete the set and
                // zero out a coordinate it alone covers.
                active[away_idx].1 = (active[away_idx].1 - gamma).max(1e-300);
            }
        }
        active.retain(|&(_, w)| w > 0.0);
        let next = point(&active);
        if next.iter().any(|&v| v < 1e-300) {
            break;
        }
        x = next;
    }
    Ok(FwEstimate { value: objective(&x), point: x, gap, iterations })
}

/// Minimizes the objective along x + γ·d for γ in [0, γ_max]. The
/// derivative is monotone, so bisection is exact to machine precision.
fn line_search(x: &[f64], d: &[f64], gamma_max: f64) -> f64 {
    // Any γ that pushes a coordinate to 0 or below leaves the domain,
    // where the objective is +infinity. Reporting +infinity (rather than
    // the raw sum, whose sign rounding can flip) steers the bisection
    // back inside.
    let deriv = |gamma: f64| -> f64 {
        let mut sum = 0.0;
        for (&xv, &dv) in x.iter().zip(d) {
            let nv = xv + gamma * dv;
            if nv <= 0.0 {
                return f64::INFINITY;
            }
            sum -= dv / nv;
        }
        sum
    };
    if deriv(0.0) >= 0.0 {
        return 0.0;
    }
    if deriv(gamma_max) <= 0.0 {
        return gamma_max;
    }
    let (mut lo, mut hi) = (0.0f64, gamma_max);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // lo is the largest point proven in-domain with negative derivative.
    lo
}
