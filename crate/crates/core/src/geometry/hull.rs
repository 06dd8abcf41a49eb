//! Conversion between the vertex and facet descriptions of a unit ball.
//!
//! Facets are written as functionals `f` with `f(x) <= 1`, which requires the
//! origin to be an interior point. Under that normalisation the facet list of
//! a ball is the vertex list of its polar, so one routine serves both ways.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Functional, Vector};
use crate::lp::simplex::{self, LinearProgram, Relation};
use crate::rational::Rational;

pub const MAX_HULL_DIM: usize = 3;

/// Minimal facet list of `conv(vertices)`, in lexicographic order.
pub fn vrep_to_hrep(vertices: &[Vector]) -> Result<Vec<Functional>> {
    let normals = polar_vertices(vertices)?;
    Ok(normals.into_iter().map(|v| v.as_functional()).collect())
}

/// Vertex list of `{x : f(x) <= 1 for all f in facets}`, in lexicographic order.
pub fn hrep_to_vrep(facets: &[Functional]) -> Result<Vec<Vector>> {
    let points: Vec<Vector> = facets.iter().map(Functional::as_vector).collect();
    polar_vertices(&points).map_err(|e| match e {
        Error::Degenerate(msg) => Error::Degenerate(format!("facet system is unbounded: {msg}")),
        e => e,
    })
}

/// Normals `a` of the facets `a·x = 1` of `conv(points)`.
fn polar_vertices(points: &[Vector]) -> Result<Vec<Vector>> {
    let Some(first) = points.first() else {
        return Err(Error::Degenerate("empty point list".into()));
    };
    let n = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    if n == 0 {
        return Err(Error::Degenerate("zero-dimensional space".into()));
    }
    if n > MAX_HULL_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let rows: Vec<&[Rational]> = points.iter().map(|p| p.coords()).collect();
    if linalg::rank(&rows) < n {
        return Err(Error::Degenerate(format!(
            "points do not span dimension {n}"
        )));
    }
    if !origin_is_interior(points)? {
        return Err(Error::Degenerate("origin is not an interior point".into()));
    }
    let mut normals = match n {
        1 => segment_normals(points),
        2 => polygon_normals(points),
        _ => support_plane_normals(points),
    };
    normals.sort();
    normals.dedup();
    Ok(normals)
}

/// The origin is interior iff it is a strictly positive combination of all points
/// (given they span the space). Scaled so every weight is at least one.
pub(crate) fn origin_is_interior(points: &[Vector]) -> Result<bool> {
    let n = points[0].dim();
    let m = points.len();
    let mut lp = LinearProgram::minimize(vec![Rational::zero(); m]);
    for k in 0..n {
        lp.constrain(
            points.iter().map(|p| p[k].clone()).collect(),
            Relation::Eq,
            Rational::zero(),
        );
    }
    for j in 0..m {
        lp.bound(j, Some(Rational::one()), None);
    }
    Ok(simplex::solve(&lp)?.is_optimal())
}

fn segment_normals(points: &[Vector]) -> Vec<Vector> {
    let hi = points.iter().map(|p| &p[0]).max().expect("nonempty");
    let lo = points.iter().map(|p| &p[0]).min().expect("nonempty");
    vec![Vector::new(vec![hi.recip()]), Vector::new(vec![lo.recip()])]
}

fn cross(o: &Vector, a: &Vector, b: &Vector) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Strict convex hull in counter-clockwise order (monotone-chain sweep).
pub(crate) fn polygon_hull(points: &[Vector]) -> Vec<Vector> {
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_normals(points: &[Vector]) -> Vec<Vector> {
    let hull = polygon_hull(points);
    (0..hull.len())
        .map(|i| {
            let a = &hull[i];
            let b = &hull[(i + 1) % hull.len()];
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            Vector::new(vec![(&b[1] - &a[1]) / &det, (&a[0] - &b[0]) / &det])
        })
        .collect()
}

/// Exhaustive facet search in 3-D: every plane `a·x = 1` through three points
/// that has all points on its closed inner side.
pub(crate) fn support_plane_normals(points: &[Vector]) -> Vec<Vector> {
    let n = points[0].dim();
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort();
    pts.dedup();
    let ones = vec![Rational::one(); n];
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let system: Vec<Vec<Rational>> = idx.iter().map(|&i| pts[i].coords().to_vec()).collect();
        if let Some(a) = linalg::solve(&system, &ones) {
            let a = Vector::new(a);
            if pts.iter().all(|p| a.dot(p.coords()) <= Rational::one()) {
                out.push(a);
            }
        }
        if !next_combination(&mut idx, pts.len()) {
            break;
        }
    }
    out
}

/// Advances `idx` to the next increasing k-subset of `0..m`.
pub(crate) fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(xs: &[(i64, i64, i64, i64)]) -> Vec<Vector> {
        xs.iter()
            .map(|&(a, b, c, d)| Vector::from_ratios(&[(a, b), (c, d)]))
            .collect()
    }

    fn fs(xs: &[(i64, i64, i64, i64)]) -> Vec<Functional> {
        let mut v: Vec<Functional> = vs(xs).iter().map(Vector::as_functional).collect();
        v.sort();
        v
    }

    fn hexagon_vertices() -> Vec<Vector> {
        vs(&[
            (1, 1, 0, 1),
            (-1, 1, 0, 1),
            (1, 2, 1, 1),
            (-1, 2, 1, 1),
            (1, 2, -1, 1),
            (-1, 2, -1, 1),
        ])
    }

    #[test]
    fn hexagon_facets() {
        let expected = fs(&[
            (0, 1, 1, 1),
            (0, 1, -1, 1),
            (1, 1, 1, 2),
            (1, 1, -1, 2),
            (-1, 1, 1, 2),
            (-1, 1, -1, 2),
        ]);
        assert_eq!(vrep_to_hrep(&hexagon_vertices()).unwrap(), expected);
    }

    #[test]
    fn square_and_diamond_are_polar() {
        let square = vs(&[(1, 1, 1, 1), (1, 1, -1, 1), (-1, 1, 1, 1), (-1, 1, -1, 1)]);
        let diamond = vs(&[(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, -1, 1)]);
        let square_facets: Vec<Functional> = {
            let mut d: Vec<Functional> = diamond.iter().map(Vector::as_functional).collect();
            d.sort();
            d
        };
        assert_eq!(vrep_to_hrep(&square).unwrap(), square_facets);
        let mut sorted_square = square.clone();
        sorted_square.sort();
        assert_eq!(hrep_to_vrep(&square_facets).unwrap(), sorted_square);
        let diamond_facets: Vec<Functional> =
            sorted_square.iter().map(Vector::as_functional).collect();
        assert_eq!(vrep_to_hrep(&diamond).unwrap(), diamond_facets);
    }

    #[test]
    fn hexagon_round_trip() {
        let facets = vrep_to_hrep(&hexagon_vertices()).unwrap();
        let mut v = hexagon_vertices();
        v.sort();
        assert_eq!(hrep_to_vrep(&facets).unwrap(), v);
    }

    #[test]
    fn interior_and_collinear_points_are_dropped() {
        let mut pts = hexagon_vertices();
        pts.push(Vector::from_ratios(&[(1, 4), (1, 3)]));
        pts.push(Vector::from_ratios(&[(0, 1), (1, 1)]));
        pts.push(Vector::from_ratios(&[(3, 4), (1, 2)]));
        assert_eq!(vrep_to_hrep(&pts).unwrap().len(), 6);
    }

    #[test]
    fn single_facet_pair_is_degenerate() {
        let f = fs(&[(1, 1, 0, 1), (-1, 1, 0, 1)]);
        assert!(matches!(hrep_to_vrep(&f), Err(Error::Degenerate(_))));
    }

    #[test]
    fn origin_outside_is_degenerate() {
        let pts = vs(&[(1, 1, 1, 1), (1, 1, -1, 1), (-1, 1, 1, 1)]);
        assert!(matches!(vrep_to_hrep(&pts), Err(Error::Degenerate(_))));
    }

    #[test]
    fn dimension_four_is_unsupported() {
        let pts: Vec<Vector> = (0..4)
            .flat_map(|i| {
                let mut e = vec![0; 4];
                e[i] = 1;
                let p = Vector::from_ints(&e);
                [-&p, p]
            })
            .collect();
        assert!(matches!(
            vrep_to_hrep(&pts),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn cube_and_octahedron_in_3d() {
        let mut cube = Vec::new();
        for s in 0..8 {
            let c: Vec<i64> = (0..3)
                .map(|k| if s >> k & 1 == 1 { 1 } else { -1 })
                .collect();
            cube.push(Vector::from_ints(&c));
        }
        let facets = vrep_to_hrep(&cube).unwrap();
        assert_eq!(facets.len(), 6);
        assert_eq!(hrep_to_vrep(&facets).unwrap(), {
            cube.sort();
            cube
        });
        let octa: Vec<Vector> = facets.iter().map(Functional::as_vector).collect();
        assert_eq!(vrep_to_hrep(&octa).unwrap().len(), 8);
    }

    #[test]
    fn sweep_agrees_with_exhaustive_search_in_2d() {
        let mut octagon = vs(&[(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, -1, 1)]);
        octagon.extend(vs(&[
            (2, 3, 2, 3),
            (2, 3, -2, 3),
            (-2, 3, 2, 3),
            (-2, 3, -2, 3),
        ]));
        for pts in [hexagon_vertices(), octagon] {
            let mut a = polygon_normals(&pts);
            let mut b = support_plane_normals(&pts);
            a.sort();
            b.sort();
            b.dedup();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
