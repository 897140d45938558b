//! Render interval packings to SVG. Each element draws as a box of width
//! equal to its interval length and height 1/(n * length), so all boxes
//! have area exactly 1/n. Solid segments join overlapping intervals;
//! dashed segments mark incomparabilities the packing does not realize.

use std::fs;

use poset_entropy::entropy::km_decompose;
use poset_entropy::error::Result;
use poset_entropy::generate::{epoch_poset, path};
use poset_entropy::intervals::{
    breakpoints_and_epochs, build_q, canonical_intervals, phantom_edges,
};
use poset_entropy::render::render_packing;

fn main() -> Result<()> {
    let out = std::env::temp_dir().join("poset-entropy-packings");
    fs::create_dir_all(&out)?;

    for (name, p) in [("path-6", path(6)), ("epoch-5-3", epoch_poset(5, 3)?)] {
        let chains = p.chain_cover_2()?;
        let km = km_decompose(&p, &chains)?;
        let rep = canonical_intervals(&p, &km);

        let file = out.join(format!("{name}.svg"));
        fs::write(&file, render_packing(&p, &rep, &[])?)?;
        println!("wrote {}", file.display());

        // The stretched representation restores one phantom incomparability
        // per epoch gap; those edges draw dashed.
        let es = breakpoints_and_epochs(&rep);
        let phantoms = phantom_edges(&p, &es)?;
        if !phantoms.edges.is_empty() {
            let (q, qrep) = build_q(&p, &rep, &phantoms);
            let pairs: Vec<(usize, usize)> =
                phantoms.edges.iter().map(|e| (e.u, e.v)).collect();
            let file = out.join(format!("{name}-extension.svg"));
            fs::write(&file, render_packing(&q, &qrep, &pairs)?)?;
            println!("wrote {}", file.display());
        }
    }
    Ok(())
}
