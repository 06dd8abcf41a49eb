//! Linear symmetries of the hexagon, the exact Mazur-Ulam inequality on
//! sampled triples, and the homogeneous extension of the sphere map.

use normgeo::builtin::{hexagon, square};
use normgeo::isomlab::{self, SphereIsometry};
use normgeo::Vector;

fn main() -> normgeo::Result<()> {
    let hex = hexagon();
    let group = isomlab::symmetry_group(&hex)?;
    println!(
        "hexagon: {} symmetries, group: {}",
        group.len(),
        isomlab::is_group(&group)
    );

    for (i, m) in group.iter().enumerate() {
        let t = SphereIsometry::restriction_of_symmetry(&hex, m)?;
        let mup = isomlab::check_mup_inequality(&t, 500, i as u64)?;
        let lin = isomlab::linearity_check(&t, 500, i as u64)?;
        let x = Vector::from_ratios(&[(3, 2), (-2, 5)]);
        println!(
            "{:>2} {m}  equal {}/{}  violations {}  T~({x}) = {}",
            i,
            mup.equalities,
            mup.trials,
            mup.violations.len() + lin.violations.len(),
            isomlab::extend_homogeneous(&t, &x)?
        );
    }

    // A vertex bijection that is not an isometry is refused on admission.
    let sq = square(2);
    match SphereIsometry::vertex_map(&sq, &sq, vec![1, 0, 2, 3]) {
        Ok(_) => println!("square swap admitted"),
        Err(e) => println!("square swap refused: {e}"),
    }
    Ok(())
}
