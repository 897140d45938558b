//! End-to-end tour on the six-element poset whose incomparability graph is
//! a path: exact entropy, extension count, the canonical interval packing,
//! and the phantom-edge extension. Every printed claim is asserted.

use num_rational::BigRational;
use poset_entropy::entropy::km_decompose;
use poset_entropy::error::Result;
use poset_entropy::exact::ExactReal;
use poset_entropy::intervals::{
    breakpoints_and_epochs, build_q, canonical_intervals, interval_order_of, phantom_edges,
};
use poset_entropy::linext::count_width2;
use poset_entropy::poset::Poset;

fn main() -> Result<()> {
    // Two chains a<b<c and d<e<f, glued so that incomparability forms the
    // path a-d-b-e-c-f.
    let p = Poset::from_covers(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("d", "c"), ("b", "f")],
    )?;
    println!("elements: {:?}", p.ids());
    println!("width: {}", p.width());
    println!("kappa2 (elements outside 2-element incomparability components): {}", p.kappa2());

    let chains = p.chain_cover_2()?;
    let km = km_decompose(&p, &chains)?;
    println!("\nchain A: {:?}", chains.a.iter().map(|&v| &p.ids()[v]).collect::<Vec<_>>());
    println!("chain B: {:?}", chains.b.iter().map(|&v| &p.ids()[v]).collect::<Vec<_>>());
    for pair in &km.pairs {
        let (a, b) = pair.ratio();
        println!("balanced pair with ratio {a}:{b}");
    }
    // Every pair is 1:1, so each x* is 1/2 and the entropy is exactly one bit.
    assert!(km.entropy.eq_symbolic(&ExactReal::one()));
    println!("entropy H = {} (exactly one bit)", km.entropy);

    let e = count_width2(&p, &chains)?;
    assert_eq!(e, 13u32.into());
    println!("\nlinear extensions e(P) = {e}");
    println!("n*H = 6 and 2*log2(13) = {:.6}: the factor-2 bound holds with room", 2.0 * 13f64.log2());

    let rep = canonical_intervals(&p, &km);
    println!("\ncanonical intervals (all lengths 1/3):");
    for v in 0..rep.n() {
        let (lo, hi) = &rep.intervals[v];
        assert_eq!(rep.length(v), BigRational::new(1.into(), 3.into()));
        println!("  {}: [{lo}, {hi}]", rep.ids[v]);
    }

    let es = breakpoints_and_epochs(&rep);
    println!("\n{} epochs with breakpoints {:?}", es.ell(), es.breakpoints.iter().map(|b| b.to_string()).collect::<Vec<_>>());

    // Two incomparabilities of P vanish in the interval order: d-b and e-c.
    let phantoms = phantom_edges(&p, &es)?;
    let io = interval_order_of(&rep);
    for edge in &phantoms.edges {
        let (u, v) = (&p.ids()[edge.u], &p.ids()[edge.v]);
        assert!(!p.comparable(edge.u, edge.v) && io.comparable(edge.u, edge.v));
        println!("phantom edge {u}-{v} between epochs {:?}", edge.between);
    }
    assert_eq!(phantoms.edges.len(), 2);

    // Stretching each phantom pair across an epoch gap restores exactly
    // those incomparabilities, so the extension is P itself.
    let (q, qrep) = build_q(&p, &rep, &phantoms);
    assert_eq!(q, p);
    assert_eq!(interval_order_of(&qrep), p);
    println!("\nphantom-stretched extension equals the input poset: P is its own Q");
    Ok(())
}
