//! GL certificates survive ℓ1, ℓ∞ and C(K, E) sums.

use normgeo::builtin::{diamond, hexagon, square};
use normgeo::certify;
use normgeo::sums;

fn main() -> normgeo::Result<()> {
    let spaces = [
        sums::l1_sum(&[hexagon(), diamond(2)])?,
        sums::linf_sum(&[hexagon(), square(2)])?,
        sums::ck_power(&hexagon(), 2)?,
    ];
    for s in &spaces {
        let c = certify::strong_gl_certify(s)?;
        println!(
            "{:<28} dim {} |V| {:>2} |F| {:>2}  {:?} (M = {})",
            s.label(),
            s.dim(),
            s.vertices().len(),
            s.facets().len(),
            c.verdict,
            c.bound.unwrap()
        );
    }
    Ok(())
}
