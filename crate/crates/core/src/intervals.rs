//! Canonical interval representations, breakpoints, epochs, phantom edges,
//! and the connected extension Q.
//!
//! All coordinates are exact rationals; breakpoints come from exact endpoint
//! comparisons, never a floating tolerance.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::entropy::{KmDecomposition, KmPair};
use crate::error::{Error, Result};
use crate::poset::Poset;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Where an interval representation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepSource {
    /// The unique entropy-optimal representation spanning (0, 1).
    Canonical,
    /// The gap-shifted representation of the extension Q, spanning (0, 2)
    /// when there is more than one epoch.
    QRep,
}

/// Open intervals for every element, indexed like the source poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRep {
    pub ids: Vec<String>,
    pub intervals: Vec<(BigRational, BigRational)>,
    /// Elements drawn on the chain-A track.
    pub side_a: u64,
    pub span: BigRational,
    pub source: RepSource,
    /// Decomposition pair index of each placed block, left to right.
    pub block_order: Vec<usize>,
}

impl IntervalRep {
    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn length(&self, v: usize) -> BigRational {
        &self.intervals[v].1 - &self.intervals[v].0
    }
}

/// Elements strictly between two consecutive breakpoints, split by chain.
/// Both lists run left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epoch {
    pub psi: Vec<usize>,
    pub omega: Vec<usize>,
}

impl Epoch {
    pub fn sizes(&self) -> (usize, usize) {
        (self.psi.len(), self.omega.len())
    }

    pub fn elements(&self) -> Vec<usize> {
        self.psi.iter().chain(&self.omega).copied().collect()
    }
}

/// Breakpoints and the epochs they separate.
#[derive(Clone, Debug)]
pub struct EpochStructure {
    /// 0 = b_0 < b_1 < ... < b_l = span; no interval crosses any b_i.
    pub breakpoints: Vec<BigRational>,
    pub epochs: Vec<Epoch>,
    /// Decomposition pair index of each block in placement order.
    pub sigma_order: Vec<usize>,
}

impl EpochStructure {
    pub fn ell(&self) -> usize {
        self.epochs.len()
    }
}

/// One re-added incomparability between consecutive epochs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhantomEdge {
    pub u: usize,
    pub v: usize,
    /// Zero-based indices of the epochs u and v belong to.
    pub between: (usize, usize),
    pub orientation: PhantomOrientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhantomOrientation {
    /// u is the last chain-A element of its epoch, v the first chain-B
    /// element of the next.
    PsiToOmega,
    /// u is the last chain-B element of its epoch, v the first chain-A
    /// element of the next.
    OmegaToPsi,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhantomEdgeSet {
    pub edges: Vec<PhantomEdge>,
}

/// Places every decomposition block on the line in poset order. Block
/// widths are (|A_i|+|B_i|)/n; inside a block each chain part splits the
/// width evenly, realizing the entropy-optimal lengths.
pub fn canonical_intervals(p: &Poset, km: &KmDecomposition) -> IntervalRep {
    let n = p.n();
    let mut order: Vec<usize> = (0..km.pairs.len()).collect();
    order.sort_by(|&i, &j| block_cmp(p, &km.pairs[i], &km.pairs[j]));

    let mut intervals = vec![(BigRational::zero(), BigRational::zero()); n];
    let mut side_a = 0u64;
    let mut cursor = BigRational::zero();
    for &bi in &order {
        let pair = &km.pairs[bi];
        let width = rat((pair.a.len() + pair.b.len()) as i64, n as i64);
        for (part, is_a) in [(&pair.a, true), (&pair.b, false)] {
            if part.is_empty() {
                continue;
            }
            let mut elems = part.clone();
            elems.sort_by_key(|&v| p.down_mask(v).count_ones());
            let step = &width / BigRational::from_integer(BigInt::from(elems.len() as i64));
            for (k, &v) in elems.iter().enumerate() {
                let lo = &cursor + &step * BigRational::from_integer(BigInt::from(k as i64));
                intervals[v] = (lo.clone(), lo + &step);
                if is_a {
                    side_a |= 1 << v;
                }
            }
        }
        cursor += width;
    }
    let rep = IntervalRep {
        ids: p.ids().to_vec(),
        intervals,
        side_a,
        span: BigRational::from_integer(1.into()),
        source: RepSource::Canonical,
        block_order: order,
    };
    debug_assert!(extends(p, &rep), "interval order must extend the poset");
    rep
}

/// Blocks are totally ordered in the poset; the first comparable cross pair
/// decides.
fn block_cmp(p: &Poset, x: &KmPair, y: &KmPair) -> std::cmp::Ordering {
    for &u in x.a.iter().chain(&x.b) {
        for &v in y.a.iter().chain(&y.b) {
            if p.lt(u, v) {
                return std::cmp::Ordering::Less;
            }
            if p.lt(v, u) {
                return std::cmp::Ordering::Greater;
            }
        }
    }
    unreachable!("distinct blocks always have a comparable cross pair")
}

fn extends(p: &Poset, rep: &IntervalRep) -> bool {
    (0..p.n()).all(|u| {
        (0..p.n()).all(|v| !p.lt(u, v) || rep.intervals[u].1 <= rep.intervals[v].0)
    })
}

/// All coordinates no interval strictly crosses, and the element groups
/// between consecutive ones.
pub fn breakpoints_and_epochs(rep: &IntervalRep) -> EpochStructure {
    let mut candidates: BTreeSet<BigRational> =
        [BigRational::zero(), rep.span.clone()].into_iter().collect();
    for (lo, hi) in &rep.intervals {
        candidates.insert(lo.clone());
        candidates.insert(hi.clone());
    }
    let breakpoints: Vec<BigRational> = candidates
        .into_iter()
        .filter(|t| rep.intervals.iter().all(|(lo, hi)| hi <= t || lo >= t))
        .collect();
    let mut epochs = vec![Epoch { psi: Vec::new(), omega: Vec::new() }; breakpoints.len() - 1];
    for v in 0..rep.n() {
        let (lo, _) = &rep.intervals[v];
        let k = breakpoints.partition_point(|b| b <= lo) - 1;
        if rep.side_a >> v & 1 == 1 {
            epochs[k].psi.push(v);
        } else {
            epochs[k].omega.push(v);
        }
    }
    for epoch in &mut epochs {
        epoch.psi.sort_by(|&x, &y| rep.intervals[x].0.cmp(&rep.intervals[y].0));
        epoch.omega.sort_by(|&x, &y| rep.intervals[x].0.cmp(&rep.intervals[y].0));
        let (psi, omega) = epoch.sizes();
        debug_assert!(
            psi == 0 || omega == 0 || num_integer::gcd(psi, omega) == 1,
            "two-part epochs have coprime sizes"
        );
    }
    EpochStructure { breakpoints, epochs, sigma_order: rep.block_order.clone() }
}

/// Selects one incomparability of the source poset between each pair of
/// consecutive epochs: last chain-A element into the next epoch's first
/// chain-B element, or the mirror. When both qualify (only in all-singleton
/// epochs) the first orientation wins.
pub fn phantom_edges(p: &Poset, es: &EpochStructure) -> Result<PhantomEdgeSet> {
    if !p.incomparability_graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let mut edges = Vec::new();
    for i in 0..es.ell().saturating_sub(1) {
        let (cur, next) = (&es.epochs[i], &es.epochs[i + 1]);
        let qualifying = |u: Option<&usize>, v: Option<&usize>| -> Option<(usize, usize)> {
            match (u, v) {
                (Some(&u), Some(&v)) if !p.comparable(u, v) => Some((u, v)),
                _ => None,
            }
        };
        let psi_to_omega = qualifying(cur.psi.last(), next.omega.first());
        let omega_to_psi = qualifying(cur.omega.last(), next.psi.first());
        let (edge, orientation) = match (psi_to_omega, omega_to_psi) {
            (Some(e), _) => (e, PhantomOrientation::PsiToOmega),
            (None, Some(e)) => (e, PhantomOrientation::OmegaToPsi),
            (None, None) => {
                return Err(Error::Precondition(format!(
                    "no incomparability bridges epochs {i} and {}",
                    i + 1
                )))
            }
        };
        edges.push(PhantomEdge { u: edge.0, v: edge.1, between: (i, i + 1), orientation });
    }
    Ok(PhantomEdgeSet { edges })
}

/// Builds the connected extension Q: epochs shift right by k/q (q = number
/// of interior breakpoints), opening a gap of 1/q at every breakpoint, and
/// each phantom edge's endpoints stretch across their gap. The stretched
/// intervals overlap exactly on the gap, so the resulting interval order
/// drops precisely the phantom incomparabilities from I(P)'s comparabilities.
pub fn build_q(p: &Poset, rep: &IntervalRep, phantoms: &PhantomEdgeSet) -> (Poset, IntervalRep) {
    debug_assert!(phantoms.edges.iter().all(|e| !p.comparable(e.u, e.v)));
    let es = breakpoints_and_epochs(rep);
    let ell = es.ell();
    if ell <= 1 {
        let mut out = rep.clone();
        out.source = RepSource::QRep;
        return (interval_order_of(&out), out);
    }
    let q = rat((ell - 1) as i64, 1);
    let gap = q.recip();
    let mut epoch_of = vec![0usize; rep.n()];
    for (k, epoch) in es.epochs.iter().enumerate() {
        for v in epoch.elements() {
            epoch_of[v] = k;
        }
    }
    let mut intervals: Vec<(BigRational, BigRational)> = rep
        .intervals
        .iter()
        .enumerate()
        .map(|(v, (lo, hi))| {
            let shift = rat(epoch_of[v] as i64, 1) * &gap;
            (lo + &shift, hi + &shift)
        })
        .collect();
    for edge in &phantoms.edges {
        intervals[edge.u].1 += &gap;
        intervals[edge.v].0 -= &gap;
    }
    let out = IntervalRep {
        ids: rep.ids.clone(),
        intervals,
        side_a: rep.side_a,
        span: rat(2, 1),
        source: RepSource::QRep,
        block_order: rep.block_order.clone(),
    };
    (interval_order_of(&out), out)
}

/// The interval order of a representation: u < v iff I(u) ends no later
/// than I(v) starts.
pub fn interval_order_of(rep: &IntervalRep) -> Poset {
    let mut relations = Vec::new();
    for u in 0..rep.n() {
        for v in 0..rep.n() {
            if u != v && rep.intervals[u].1 <= rep.intervals[v].0 {
                relations.push((u, v));
            }
        }
    }
    Poset::from_cover_indices(rep.ids.clone(), &relations)
        .expect("interval containment relations are acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::km_decompose;
    use crate::exact::ExactReal;
    use crate::linext::count_downsets;

    fn six_path() -> Poset {
        Poset::from_covers(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
        )
        .unwrap()
    }

    fn canonical(p: &Poset) -> IntervalRep {
        let chains = p.chain_cover_2().unwrap();
        let km = km_decompose(p, &chains).unwrap();
        canonical_intervals(p, &km)
    }

    #[test]
    fn six_path_intervals_sit_at_thirds() {
        let p = six_path();
        let rep = canonical(&p);
        let expect = [
            ("a", 0, 1),
            ("d", 0, 1),
            ("b", 1, 2),
            ("e", 1, 2),
            ("c", 2, 3),
            ("f", 2, 3),
        ];
        for (id, lo3, hi3) in expect {
            let v = p.index_of(id).unwrap();
            assert_eq!(rep.intervals[v], (rat(lo3, 3), rat(hi3, 3)), "{id}");
        }
    }

    #[test]
    fn small_family_intervals() {
        let anti = Poset::from_covers(&["x", "y"], &[] as &[(&str, &str)]).unwrap();
        let rep = canonical(&anti);
        assert_eq!(rep.intervals[0], (rat(0, 1), rat(1, 1)));
        assert_eq!(rep.intervals[1], (rat(0, 1), rat(1, 1)));

        let two_chains =
            Poset::from_covers(&["t1", "t2", "u1", "u2"], &[("t1", "t2"), ("u1", "u2")]).unwrap();
        let rep = canonical(&two_chains);
        for (id, lo2, hi2) in [("t1", 0, 1), ("t2", 1, 2), ("u1", 0, 1), ("u2", 1, 2)] {
            let v = two_chains.index_of(id).unwrap();
            assert_eq!(rep.intervals[v], (rat(lo2, 2), rat(hi2, 2)), "{id}");
        }
    }

    #[test]
    fn chains_tile_the_unit_interval() {
        for p in [six_path(), Poset::from_covers(&["s", "l1", "l2", "l3"], &[("l1", "l2"), ("l2", "l3")]).unwrap()] {
            let rep = canonical(&p);
            for side in [true, false] {
                let total: BigRational = (0..p.n())
                    .filter(|&v| (rep.side_a >> v & 1 == 1) == side)
                    .map(|v| rep.length(v))
                    .sum();
                assert_eq!(total, rat(1, 1));
            }
        }
    }

    #[test]
    fn lengths_certify_the_entropy_optimum() {
        // -(1/n) sum log x_v = log n - H for the canonical lengths.
        let p = six_path();
        let rep = canonical(&p);
        let mut cost = ExactReal::zero();
        for v in 0..p.n() {
            cost = cost.sub(&ExactReal::log2(&rep.length(v)).unwrap());
        }
        cost = cost.scale(&rat(1, p.n() as i64));
        assert!(cost.eq_symbolic(&ExactReal::log3()), "cost is log 3 = log 6 - 1");
    }

    #[test]
    fn six_path_breakpoints_and_epochs() {
        let p = six_path();
        let es = breakpoints_and_epochs(&canonical(&p));
        assert_eq!(es.breakpoints, vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]);
        assert_eq!(es.ell(), 3);
        let named: Vec<(Vec<&str>, Vec<&str>)> = es
            .epochs
            .iter()
            .map(|e| {
                (
                    e.psi.iter().map(|&v| p.id(v)).collect(),
                    e.omega.iter().map(|&v| p.id(v)).collect(),
                )
            })
            .collect();
        assert_eq!(
            named,
            vec![
                (vec!["a"], vec!["d"]),
                (vec!["b"], vec!["e"]),
                (vec!["c"], vec!["f"]),
            ]
        );
    }

    #[test]
    fn coprime_block_has_no_interior_breakpoint() {
        // Single block with parts 3 and 2: side-by-side thirds and halves.
        let p = Poset::from_covers(
            &["a1", "a2", "a3", "b1", "b2"],
            &[("a1", "a2"), ("a2", "a3"), ("b1", "b2"), ("a1", "b2"), ("b1", "a3")],
        )
        .unwrap();
        let rep = canonical(&p);
        let idx = |s: &str| p.index_of(s).unwrap();
        assert_eq!(rep.intervals[idx("a2")], (rat(1, 3), rat(2, 3)));
        assert_eq!(rep.intervals[idx("b2")], (rat(1, 2), rat(1, 1)));
        let es = breakpoints_and_epochs(&rep);
        assert_eq!(es.breakpoints, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(es.epochs[0].sizes(), (3, 2));
    }

    #[test]
    fn chain_of_three_gives_singleton_epochs() {
        let p = Poset::from_covers(&["c1", "c2", "c3"], &[("c1", "c2"), ("c2", "c3")]).unwrap();
        let es = breakpoints_and_epochs(&canonical(&p));
        assert_eq!(es.breakpoints, vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]);
        let sizes: Vec<(usize, usize)> = es.epochs.iter().map(Epoch::sizes).collect();
        assert_eq!(sizes, vec![(1, 0), (1, 0), (1, 0)]);
    }

    #[test]
    fn six_path_phantoms() {
        let p = six_path();
        let es = breakpoints_and_epochs(&canonical(&p));
        let phantoms = phantom_edges(&p, &es).unwrap();
        let named: Vec<(&str, &str, PhantomOrientation)> = phantoms
            .edges
            .iter()
            .map(|e| (p.id(e.u), p.id(e.v), e.orientation))
            .collect();
        assert_eq!(
            named,
            vec![
                ("d", "b", PhantomOrientation::OmegaToPsi),
                ("e", "c", PhantomOrientation::OmegaToPsi),
            ]
        );
        // Each phantom is an incomparability of P vanished in I(P).
        let q_rep = build_q(&p, &canonical(&p), &phantoms);
        let ip = interval_order_of(&canonical(&p));
        for e in &phantoms.edges {
            assert!(!p.comparable(e.u, e.v));
            assert!(ip.comparable(e.u, e.v));
        }
        drop(q_rep);
    }

    #[test]
    fn disconnected_incomparability_is_rejected() {
        let p = Poset::from_covers(&["x", "y"], &[("x", "y")]).unwrap();
        let es = breakpoints_and_epochs(&canonical(&p));
        assert!(matches!(phantom_edges(&p, &es), Err(Error::Disconnected)));
    }

    #[test]
    fn q_restores_the_six_path() {
        let p = six_path();
        let rep = canonical(&p);
        let phantoms = phantom_edges(&p, &breakpoints_and_epochs(&rep)).unwrap();
        let (q, q_rep) = build_q(&p, &rep, &phantoms);
        assert_eq!(q, p, "the path is its own extension");
        assert_eq!(q_rep.span, rat(2, 1));
        assert_eq!(q_rep.source, RepSource::QRep);
        // Gap construction: d stretches right, b stretches left across 1/2.
        let idx = |s: &str| p.index_of(s).unwrap();
        assert_eq!(q_rep.intervals[idx("d")], (rat(0, 1), rat(5, 6)));
        assert_eq!(q_rep.intervals[idx("b")], (rat(1, 3), rat(7, 6)));
    }

    #[test]
    fn q_of_two_disjoint_chains_is_the_four_path() {
        let p = Poset::from_covers(&["t1", "t2", "u1", "u2"], &[("t1", "t2"), ("u1", "u2")])
            .unwrap();
        let rep = canonical(&p);
        let es = breakpoints_and_epochs(&rep);
        assert_eq!(es.ell(), 2);
        let phantoms = phantom_edges(&p, &es).unwrap();
        assert_eq!(phantoms.edges.len(), 1);
        assert_eq!(phantoms.edges[0].orientation, PhantomOrientation::PsiToOmega);
        let (q, q_rep) = build_q(&p, &rep, &phantoms);
        let g = q.incomparability_graph();
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 3, "path on four vertices");
        assert_eq!(g.degree(p.index_of("t1").unwrap()), 2);
        // Q is a strict extension: fewer linear extensions, same entropy.
        assert_eq!(count_downsets(&q).unwrap(), 5u32.into());
        assert_eq!(count_downsets(&p).unwrap(), 6u32.into());
        let h_p = km_decompose(&p, &p.chain_cover_2().unwrap()).unwrap().entropy;
        let h_q = km_decompose(&q, &q.chain_cover_2().unwrap()).unwrap().entropy;
        assert!(h_p.eq_symbolic(&h_q));
        assert_eq!(q_rep.span, rat(2, 1));
    }

    #[test]
    fn single_epoch_q_is_the_interval_order() {
        let anti = Poset::from_covers(&["x", "y"], &[] as &[(&str, &str)]).unwrap();
        let rep = canonical(&anti);
        let (q, q_rep) = build_q(&anti, &rep, &PhantomEdgeSet::default());
        assert_eq!(q, anti);
        assert_eq!(q_rep.intervals, rep.intervals);
    }

    #[test]
    fn extension_chain_holds() {
        // P is a suborder of Q, Q of I(P).
        let p = six_path();
        let rep = canonical(&p);
        let phantoms = phantom_edges(&p, &breakpoints_and_epochs(&rep)).unwrap();
        let (q, _) = build_q(&p, &rep, &phantoms);
        let ip = interval_order_of(&rep);
        for u in 0..p.n() {
            for v in 0..p.n() {
                if p.lt(u, v) {
                    assert!(q.lt(u, v));
                }
                if q.lt(u, v) {
                    assert!(ip.lt(u, v));
                }
            }
        }
        assert_eq!(ip, six_path().add_relation(3, 1).unwrap().add_relation(4, 2).unwrap());
    }

    #[test]
    fn interval_order_extremes() {
        let rep = IntervalRep {
            ids: vec!["x".into(), "y".into(), "z".into()],
            intervals: vec![
                (rat(0, 1), rat(1, 1)),
                (rat(0, 1), rat(1, 1)),
                (rat(0, 1), rat(1, 1)),
            ],
            side_a: 0b111,
            span: rat(1, 1),
            source: RepSource::Canonical,
            block_order: Vec::new(),
        };
        assert_eq!(interval_order_of(&rep).width(), 3, "identical intervals: antichain");
        let rep = IntervalRep {
            intervals: vec![
                (rat(0, 1), rat(1, 1)),
                (rat(1, 1), rat(2, 1)),
                (rat(2, 1), rat(3, 1)),
            ],
            span: rat(3, 1),
            ..rep
        };
        assert_eq!(interval_order_of(&rep).width(), 1, "disjoint intervals: chain");
    }
}
