//! Sampled upper estimate of the numerical index, with exact verification of
//! the witness operator.
//!
//!     cargo run --release --example numerical_index -- 2000 7

use normgeo::builtin;
use normgeo::numindex::{self, IndexSearch};

fn main() -> normgeo::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().map_or(2000, |s| s.parse().expect("samples"));
    let seed = args.next().map_or(7, |s| s.parse().expect("seed"));

    for name in ["hexagon", "square(2)", "diamond(2)", "octagon"] {
        let s = builtin::by_name(name)?;
        let est = IndexSearch::new(samples, seed).run(&s)?;
        let t = &est.witness;
        println!(
            "{name:<10} n(E) <= {:<5} v(T) = {}, ‖T‖ = {}, T = {t}",
            est.lower_empirical,
            numindex::num_radius(&s, t)?,
            numindex::op_norm(&s, t)?
        );
    }
    Ok(())
}
