//! SVG rendering of interval representations as area-1/n box packings.
//!
//! Each element becomes a rectangle over its interval with height
//! 1/(n * length), so every box has area exactly 1/n; the check is exact
//! rational arithmetic, not pixels. Chain-A boxes grow upward, chain-B
//! boxes downward. Incomparabilities realized by overlapping intervals
//! draw solid; phantom edges and incomparabilities of the source poset
//! that the representation does not realize draw dashed.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rat_to_f64;
use crate::intervals::{interval_order_of, IntervalRep};
use crate::poset::Poset;

const SCALE: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Twelve significant digits, enough to reconstruct the rationals in play.
fn fmt(x: f64) -> String {
    let s = format!("{:.11e}", x);
    // SVG has no exponent literals; normalize through f64 parse.
    let v: f64 = s.parse().expect("roundtrip");
    format!("{v}")
}

fn px(x: &BigRational) -> String {
    fmt(rat_to_f64(x) * SCALE + MARGIN)
}

/// Renders the packing. `phantom_pairs` lists edges to force dashed, on
/// top of the incomparabilities of `p` that the intervals fail to realize.
pub fn render_packing(
    p: &Poset,
    rep: &IntervalRep,
    phantom_pairs: &[(usize, usize)],
) -> Result<String> {
    let n = rep.n();
    if n == 0 || n != p.n() {
        return Err(Error::Precondition("representation and poset sizes differ".into()));
    }
    let n_rat = BigRational::from_integer((n as u64).into());
    let heights: Vec<BigRational> = (0..n)
        .map(|v| {
            let len = rep.length(v);
            let h = BigRational::one() / (&n_rat * &len);
            assert!(&len * &h * &n_rat == BigRational::one(), "box area must be exactly 1/n");
            h
        })
        .collect();
    let max_h = rat_to_f64(heights.iter().max().expect("nonempty"));
    let width = rat_to_f64(&rep.span) * SCALE + 2.0 * MARGIN;
    let height = 2.0 * max_h * SCALE + 2.0 * MARGIN;
    let baseline = max_h * SCALE + MARGIN;

    let io = interval_order_of(rep);
    let mut solid = Vec::new();
    let mut dashed: Vec<(usize, usize)> = phantom_pairs.to_vec();
    for u in 0..n {
        for v in u + 1..n {
            let in_io = !io.comparable(u, v);
            let forced = phantom_pairs.contains(&(u, v)) || phantom_pairs.contains(&(v, u));
            if in_io && !forced {
                solid.push((u, v));
            } else if !in_io && !p.comparable(u, v) && !forced {
                dashed.push((u, v));
            }
        }
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" font-family=\"monospace\" font-size=\"13\">\n",
        fmt(width),
        fmt(height)
    ));
    svg.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{b}\" x2=\"{}\" y2=\"{b}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n",
        fmt(MARGIN),
        fmt(width - MARGIN),
        b = fmt(baseline)
    ));
    let center = |v: usize| -> (f64, f64) {
        let (lo, hi) = &rep.intervals[v];
        let x = (rat_to_f64(lo) + rat_to_f64(hi)) / 2.0 * SCALE + MARGIN;
        let h = rat_to_f64(&heights[v]) * SCALE;
        let up = rep.side_a >> v & 1 == 1;
        (x, if up { baseline - h / 2.0 } else { baseline + h / 2.0 })
    };
    for v in 0..n {
        let (lo, _) = &rep.intervals[v];
        let h = rat_to_f64(&heights[v]) * SCALE;
        let up = rep.side_a >> v & 1 == 1;
        let y = if up { baseline - h } else { baseline };
        let fill = if up { "#b3cde3" } else { "#ccebc5" };
        svg.push_str(&format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"#333\" stroke-width=\"0.8\" fill-opacity=\"0.7\"/>\n",
            px(lo),
            fmt(y),
            fmt(rat_to_f64(&rep.length(v)) * SCALE),
            fmt(h),
        ));
        let (cx, cy) = center(v);
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>\n",
            fmt(cx),
            fmt(cy),
            rep.ids[v]
        ));
    }
    for (style, pairs) in [("", &solid), (" stroke-dasharray=\"6 4\"", &dashed)] {
        for &(u, v) in pairs {
            let (x1, y1) = center(u);
            let (x2, y2) = center(v);
            svg.push_str(&format!(
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#e41a1c\" stroke-width=\"1.2\"{style}/>\n",
                fmt(x1),
                fmt(y1),
                fmt(x2),
                fmt(y2)
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::km_decompose;
    use crate::generate::path;
    use crate::intervals::{breakpoints_and_epochs, build_q, canonical_intervals, phantom_edges};

    #[test]
    fn worked_example_packing() {
        let p = path(6);
        let chains = p.chain_cover_2().unwrap();
        let km = km_decompose(&p, &chains).unwrap();
        let rep = canonical_intervals(&p, &km);
        let svg = render_packing(&p, &rep, &[]).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), 6);
        // Three realized incomparabilities, two vanished ones.
        assert_eq!(svg.matches("<line").count(), 1 + 3 + 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
    }

    #[test]
    fn extension_packing_draws_phantoms_dashed() {
        let p = path(6);
        let chains = p.chain_cover_2().unwrap();
        let km = km_decompose(&p, &chains).unwrap();
        let rep = canonical_intervals(&p, &km);
        let es = breakpoints_and_epochs(&rep);
        let phantoms = phantom_edges(&p, &es).unwrap();
        let (q, qrep) = build_q(&p, &rep, &phantoms);
        let pairs: Vec<(usize, usize)> =
            phantoms.edges.iter().map(|e| (e.u, e.v)).collect();
        let svg = render_packing(&q, &qrep, &pairs).unwrap();
        assert_eq!(svg.matches("stroke-dasharray").count(), 2, "both phantoms dashed");
        assert_eq!(svg.matches("<rect").count(), 6);
    }
}
