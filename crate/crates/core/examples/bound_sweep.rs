//! Sweep every width-2 poset on up to seven elements and certify the
//! entropy-versus-extension-count inequalities on each: the factor-2 bound
//! and its refinement with the kappa2 correction term. Also tallies where
//! the factor-2 bound is exactly tight.

use poset_entropy::bounds::check_bounds;
use poset_entropy::error::Result;
use poset_entropy::generate::enumerate_width2;

fn main() -> Result<()> {
    for n in 1..=7 {
        let posets = enumerate_width2(n)?;
        let mut worst2 = f64::INFINITY;
        let mut worst3 = f64::INFINITY;
        let mut tight = 0usize;
        for p in &posets {
            let r = check_bounds(p)?;
            // Certified lower bounds on the slacks; nonnegative means proven.
            assert!(r.slack1_lower >= 0.0, "entropy must dominate log e");
            assert!(r.slack2 >= 0.0, "factor-2 bound violated");
            assert!(r.slack3 >= 0.0, "refined bound violated");
            worst2 = worst2.min(r.slack2);
            worst3 = worst3.min(r.slack3);
            tight += r.tight as usize;

            // Tightness in the factor-2 bound happens exactly when the
            // incomparability graph is a partial matching.
            let g = p.incomparability_graph();
            let matching = (0..p.n()).all(|v| g.degree(v) <= 1);
            assert_eq!(r.tight, matching);
        }
        println!(
            "n = {n}: {:4} posets, min slack2 = {worst2:.6}, min slack3 = {worst3:.6}, {tight} tight",
            posets.len()
        );
    }
    println!("\nall bounds certified nonnegative; tight cases are exactly the partial matchings");
    Ok(())
}
