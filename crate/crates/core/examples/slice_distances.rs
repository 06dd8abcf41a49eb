//! Exact slice, face and absolutely convex hull distances, next to the
//! floating-point grid oracle.

use normgeo::builtin::hexagon;
use normgeo::lp::{self, Formulation};
use normgeo::oracle;
use normgeo::rational::ratio;
use normgeo::{Functional, Vector};

fn main() -> normgeo::Result<()> {
    let hex = hexagon();
    let y = Vector::from_ints(&[1, 0]);
    let f = Functional::from_ints(&[0, 1]);
    let res = oracle::DEFAULT_RESOLUTION;

    for k in [2, 4, 8] {
        let eps = ratio(1, k);
        let facet = lp::dist_to_slice_with(&hex, &y, &f, &eps, Formulation::Facet)?;
        let vertex = lp::dist_to_slice_with(&hex, &y, &f, &eps, Formulation::Vertex)?;
        let grid = oracle::grid_dist_to_slice(&hex, &y, &f, &eps, res)?;
        println!("slice eps={eps:<4} facet LP {facet}  vertex LP {vertex}  grid {grid:.5}");
        let aco = lp::dist_to_aco_slice(&hex, &y, &f, &eps)?;
        let grid = oracle::grid_dist_to_aco_slice(&hex, &y, &f, &eps, res)?;
        println!("  aco          LP {aco}  grid {grid:.5}");
    }
    println!("face  LP {}", lp::dist_to_face(&hex, &y, &f)?);

    let report = oracle::run_oracle(100, 17, res)?;
    println!(
        "100 random planar instances: max deviation {:.2e} (bound {:.1e})",
        report.max_deviation, report.bound
    );
    Ok(())
}
