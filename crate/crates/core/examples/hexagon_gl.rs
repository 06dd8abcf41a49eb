//! Strong GL certificate for the hexagonal norm `max{|η|, |ξ| + |η|/2}`,
//! followed by the slice version at each default depth.
//!
//!     cargo run --example hexagon_gl

use normgeo::builtin::hexagon;
use normgeo::certify;

fn main() -> normgeo::Result<()> {
    let hex = hexagon();
    let cert = certify::strong_gl_certify(&hex)?;
    println!("{}", cert.to_json());

    // The worst cell: which facet and vertex reach the bound.
    let w = cert
        .witnesses
        .iter()
        .max_by(|a, b| a.value.cmp(&b.value))
        .unwrap();
    let (f, v) = (w.facet.unwrap(), w.vertex.unwrap());
    println!(
        "f = {}, y = {}, value {}",
        hex.facets()[f],
        hex.vertices()[v],
        w.value
    );

    for eps in certify::default_eps_grid() {
        let c = certify::gl_certify_eps(&hex, &eps)?;
        println!("eps {eps:>5}: M = {:<6} {:?}", c.bound.unwrap(), c.verdict);
    }
    Ok(())
}
