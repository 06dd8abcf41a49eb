//! Absolutely convex hulls of slices: how far the ball is from
//! `conv(S ∪ -S)` for each slice depth.

use normgeo::builtin::{diamond, hexagon, octagon, square};
use normgeo::certify;

fn main() -> normgeo::Result<()> {
    for s in [diamond(2), square(2), hexagon(), octagon()] {
        print!("{:<10}", s.label());
        for eps in certify::default_eps_grid() {
            let c = certify::lush_check_eps(&s, &eps)?;
            print!(
                "  eps {eps}: {} {:<12}",
                c.bound.unwrap(),
                format!("{:?}", c.verdict)
            );
        }
        println!();
    }
    Ok(())
}
