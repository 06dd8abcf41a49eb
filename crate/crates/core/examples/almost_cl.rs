//! Almost-CL checks: every vertex lies in `conv(F ∪ -F)` for every facet `F`.
//! ℓ1ⁿ and ℓ∞ⁿ pass; the hexagon does not, and the certificate says where.

use normgeo::builtin::{diamond, hexagon, square};
use normgeo::certify;

fn main() -> normgeo::Result<()> {
    for s in [diamond(2), diamond(3), square(2), square(3), hexagon()] {
        let c = certify::almost_cl_check(&s)?;
        print!("{:<12} {:?}", s.label(), c.verdict);
        if !c.is_certified() {
            let w = &c.witnesses[0];
            let (f, v) = (w.facet.unwrap(), w.vertex.unwrap());
            print!(
                "  facet {} misses vertex {} by {}",
                s.facets()[f],
                s.vertices()[v],
                w.value
            );
        } else {
            let gl = certify::strong_gl_certify(&s)?;
            print!("  strong GL bound {}", gl.bound.unwrap());
        }
        println!();
    }
    Ok(())
}
