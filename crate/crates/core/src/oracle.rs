//! Brute-force distance oracles for planar spaces.
//!
//! These recompute the LP distances by a route that shares nothing with the
//! exact code: the target set is clipped as a floating-point polygon, points
//! are laid out on its boundary, and the nearest one is taken. For convex
//! targets the nearest point to an outside `y` lies on the boundary, so the
//! oracle overestimates by at most half the grid spacing in the norm. Slice
//! queries from inside the ball only need the cut chord, whose norm length is
//! at most 2, so there the spacing is at most `2 / resolution`.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builtin;
use crate::error::{Error, Result};
use crate::geometry::{self, PolySpace};
use crate::linalg::{Functional, Vector};
use crate::lp;
use crate::rational::{self, Rational};

pub const DEFAULT_RESOLUTION: usize = 10_000;
const TOL: f64 = 1e-12;

type P = [f64; 2];

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("finite rational")
}

fn point(v: &Vector) -> P {
    [to_f64(&v[0]), to_f64(&v[1])]
}

/// A planar norm evaluated in floating point.
struct PlaneNorm {
    facets: Vec<P>,
}

impl PlaneNorm {
    fn new(space: &PolySpace) -> Self {
        Self {
            facets: space
                .facets()
                .iter()
                .map(|f| [to_f64(&f[0]), to_f64(&f[1])])
                .collect(),
        }
    }

    fn norm(&self, x: P) -> f64 {
        self.facets
            .iter()
            .map(|g| g[0] * x[0] + g[1] * x[1])
            .fold(0.0, f64::max)
    }
}

fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(o: P, a: P, b: P) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull, collinear points dropped.
fn hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < TOL && (a[1] - b[1]).abs() < TOL);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= TOL {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= TOL {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Keeps the part of a ccw polygon where `g(x) >= level`.
fn clip(poly: &[P], g: P, level: f64) -> Vec<P> {
    let val = |p: P| g[0] * p[0] + g[1] * p[1] - level;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (va, vb) = (val(a), val(b));
        if va >= -TOL {
            out.push(a);
        }
        if (va < -TOL && vb > TOL) || (va > TOL && vb < -TOL) {
            let t = va / (va - vb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

fn inside(poly: &[P], y: P) -> bool {
    match poly.len() {
        0 => false,
        1 => (poly[0][0] - y[0]).abs() < TOL && (poly[0][1] - y[1]).abs() < TOL,
        _ => (0..poly.len()).all(|i| cross(poly[i], poly[(i + 1) % poly.len()], y) >= -TOL),
    }
}

/// Nearest of `resolution` boundary points. Points go to each edge in
/// proportion to its norm length, edge endpoints included.
fn boundary_distance(norm: &PlaneNorm, poly: &[P], y: P, resolution: usize) -> f64 {
    let edges: Vec<(P, P)> = match poly.len() {
        0 => return f64::INFINITY,
        1 => vec![(poly[0], poly[0])],
        2 => vec![(poly[0], poly[1])],
        m => (0..m).map(|i| (poly[i], poly[(i + 1) % m])).collect(),
    };
    let lengths: Vec<f64> = edges.iter().map(|&(a, b)| norm.norm(sub(b, a))).collect();
    let total: f64 = lengths.iter().sum();
    let mut best = f64::INFINITY;
    for (&(a, b), &len) in edges.iter().zip(&lengths) {
        let k = if total > 0.0 {
            ((resolution as f64) * len / total).ceil().max(1.0) as usize
        } else {
            1
        };
        for s in 0..=k {
            let t = s as f64 / k as f64;
            let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            best = best.min(norm.norm(sub(y, p)));
        }
    }
    best
}

fn distance_to_polygon(norm: &PlaneNorm, poly: &[P], y: P, resolution: usize) -> f64 {
    if poly.len() >= 3 && inside(poly, y) {
        0.0
    } else {
        boundary_distance(norm, poly, y, resolution)
    }
}

fn planar(space: &PolySpace) -> Result<(PlaneNorm, Vec<P>)> {
    if space.dim() != 2 {
        return Err(Error::UnsupportedDimension(space.dim()));
    }
    let ball = hull(space.vertices().iter().map(point).collect());
    Ok((PlaneNorm::new(space), ball))
}

fn slice_polygon(ball: &[P], f: &Functional, eps: &Rational) -> Vec<P> {
    let g = [to_f64(&f[0]), to_f64(&f[1])];
    hull(clip(ball, g, 1.0 - to_f64(eps)))
}

/// Grid estimate of the distance from `y` to `{z in B : f(z) >= 1 - eps}`.
pub fn grid_dist_to_slice(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
    resolution: usize,
) -> Result<f64> {
    let (norm, ball) = planar(space)?;
    let poly = slice_polygon(&ball, f, eps);
    let y = point(y);
    if !inside(&ball, y) || inside(&poly, y) {
        return Ok(distance_to_polygon(&norm, &poly, y, resolution));
    }
    // For y in B below the cut, the segment from y to any slice point crosses
    // the chord {f = 1 - eps} inside B, so the nearest slice point is on it.
    let g = [to_f64(&f[0]), to_f64(&f[1])];
    let level = 1.0 - to_f64(eps);
    let chord: Vec<P> = poly
        .iter()
        .copied()
        .filter(|p| (g[0] * p[0] + g[1] * p[1] - level).abs() < 1e-9)
        .collect();
    Ok(boundary_distance(&norm, &hull(chord), y, resolution))
}

/// Grid estimate of the distance from `y` to the face `{z in B : f(z) = 1}`.
pub fn grid_dist_to_face(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    resolution: usize,
) -> Result<f64> {
    let (norm, ball) = planar(space)?;
    let g = [to_f64(&f[0]), to_f64(&f[1])];
    let on_face: Vec<P> = ball
        .iter()
        .copied()
        .filter(|p| (g[0] * p[0] + g[1] * p[1] - 1.0).abs() < 1e-9)
        .collect();
    Ok(boundary_distance(
        &norm,
        &hull(on_face),
        point(y),
        resolution,
    ))
}

/// Grid estimate of the distance from `y` to `conv(S ∪ -S)`.
pub fn grid_dist_to_aco_slice(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
    resolution: usize,
) -> Result<f64> {
    let (norm, ball) = planar(space)?;
    let s = slice_polygon(&ball, f, eps);
    let both: Vec<P> = s.iter().flat_map(|p| [*p, [-p[0], -p[1]]]).collect();
    Ok(distance_to_polygon(
        &norm,
        &hull(both),
        point(y),
        resolution,
    ))
}

/// One slice-distance query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleInstance {
    pub space_label: String,
    #[serde(skip)]
    pub space: PolySpace,
    pub y: Vector,
    pub f: Functional,
    #[serde(with = "rational::serde_str")]
    pub eps: Rational,
}

fn random_space<R: Rng>(rng: &mut R, index: usize) -> PolySpace {
    match index % 5 {
        0 => [
            builtin::hexagon(),
            builtin::square(2),
            builtin::diamond(2),
            builtin::octagon(),
        ][rng.gen_range(0..4)]
        .clone(),
        _ => loop {
            // Points in the upper half plane plus one on the positive axis
            // always span, and their negatives close up a symmetric ball.
            let mut pts = vec![Vector::from_ints(&[rng.gen_range(1..=4), 0])];
            for _ in 0..rng.gen_range(1..=3) {
                pts.push(Vector::from_ints(&[
                    rng.gen_range(-4..=4),
                    rng.gen_range(1..=4),
                ]));
            }
            let neg: Vec<Vector> = pts.iter().map(|p| -p).collect();
            pts.extend(neg);
            if let Ok(s) = PolySpace::from_vertices(format!("random_{index}"), pts) {
                break s;
            }
        },
    }
}

fn random_ball_point<R: Rng>(space: &PolySpace, rng: &mut R) -> Vector {
    let weights: Vec<i64> = loop {
        let w: Vec<i64> = space
            .vertices()
            .iter()
            .map(|_| rng.gen_range(0..=5))
            .collect();
        if w.iter().any(|&x| x > 0) {
            break w;
        }
    };
    let total: i64 = weights.iter().sum();
    // Half of the points are pushed out to the sphere.
    let radial = rng.gen_bool(0.5);
    let p = space
        .vertices()
        .iter()
        .zip(&weights)
        .fold(Vector::zeros(space.dim()), |acc, (v, &w)| {
            &acc + &v.scale(&rational::ratio(w, total))
        });
    let n = geometry::norm(space, &p).expect("dimension matches");
    if radial && n > rational::zero() {
        p.scale(&n.recip())
    } else {
        p
    }
}

fn random_functional<R: Rng>(space: &PolySpace, rng: &mut R) -> Functional {
    if rng.gen_bool(0.5) {
        return space.facets()[rng.gen_range(0..space.facets().len())].clone();
    }
    loop {
        let g = Functional::from_ints(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        if !g.is_zero() {
            let d = geometry::dual_norm(space, &g).expect("dimension matches");
            break g.scale(&d.recip());
        }
    }
}

/// Seeded planar instances: a fifth built-in balls, the rest random
/// symmetric polygons; `y` in the ball, `f` of dual norm one.
pub fn random_instances(count: usize, seed: u64) -> Vec<OracleInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let space = random_space(&mut rng, i);
            let y = random_ball_point(&space, &mut rng);
            let f = random_functional(&space, &mut rng);
            let eps = rational::ratio(rng.gen_range(1..=15), 16);
            OracleInstance {
                space_label: space.label().to_string(),
                space,
                y,
                f,
                eps,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleComparison {
    pub instance: OracleInstance,
    #[serde(with = "rational::serde_str")]
    pub lp: Rational,
    pub grid: f64,
    /// `|grid - lp|`
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub resolution: usize,
    pub seed: u64,
    pub bound: f64,
    pub max_deviation: f64,
    /// Instances where the grid value fell below the LP value by more than
    /// rounding; the grid can only overestimate.
    pub undershoots: usize,
    pub comparisons: Vec<OracleComparison>,
}

impl OracleReport {
    pub fn within_bound(&self) -> bool {
        self.max_deviation <= self.bound && self.undershoots == 0
    }
}

/// LP slice distance against the grid oracle on each instance.
pub fn compare_slice_distances(
    instances: Vec<OracleInstance>,
    resolution: usize,
    seed: u64,
) -> Result<OracleReport> {
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let mut comparisons = Vec::with_capacity(instances.len());
    let mut undershoots = 0;
    let mut max_deviation: f64 = 0.0;
    for inst in instances {
        let lp = lp::dist_to_slice(&inst.space, &inst.y, &inst.f, &inst.eps)?;
        let grid = grid_dist_to_slice(&inst.space, &inst.y, &inst.f, &inst.eps, resolution)?;
        let lp_f = to_f64(&lp);
        if grid < lp_f - 1e-9 {
            undershoots += 1;
        }
        let deviation = (grid - lp_f).abs();
        max_deviation = max_deviation.max(deviation);
        comparisons.push(OracleComparison {
            instance: inst,
            lp,
            grid,
            deviation,
        });
    }
    Ok(OracleReport {
        resolution,
        seed,
        bound: 2.0 / resolution as f64,
        max_deviation,
        undershoots,
        comparisons,
    })
}

/// [`random_instances`] followed by [`compare_slice_distances`].
pub fn run_oracle(count: usize, seed: u64, resolution: usize) -> Result<OracleReport> {
    compare_slice_distances(random_instances(count, seed), resolution, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::hexagon;

    #[test]
    fn hexagon_slice_example() {
        let d = grid_dist_to_slice(
            &hexagon(),
            &Vector::from_ints(&[1, 0]),
            &Functional::from_ints(&[0, 1]),
            &rational::ratio(1, 2),
            DEFAULT_RESOLUTION,
        )
        .unwrap();
        assert!((d - 0.5).abs() < 2e-4, "{d}");
    }

    #[test]
    fn hexagon_face_examples() {
        let hex = hexagon();
        let f = Functional::from_ints(&[0, 1]);
        let d =
            grid_dist_to_face(&hex, &Vector::from_ints(&[1, 0]), &f, DEFAULT_RESOLUTION).unwrap();
        assert!((d - 1.0).abs() < 2e-4, "{d}");
        let g = Functional::from_ratios(&[(1, 1), (1, 2)]);
        let d =
            grid_dist_to_face(&hex, &Vector::from_ints(&[-1, 0]), &g, DEFAULT_RESOLUTION).unwrap();
        assert!((d - 2.0).abs() < 2e-4, "{d}");
    }

    #[test]
    fn points_inside_are_at_zero() {
        let d = grid_dist_to_aco_slice(
            &hexagon(),
            &Vector::from_ints(&[0, 0]),
            &Functional::from_ints(&[0, 1]),
            &rational::ratio(1, 4),
            100,
        )
        .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn instances_are_seeded_and_valid() {
        let a = random_instances(20, 5);
        assert_eq!(a, random_instances(20, 5));
        for inst in &a {
            assert!(geometry::validate(&inst.space).is_certified());
            assert!(geometry::norm(&inst.space, &inst.y).unwrap() <= rational::one());
            assert_eq!(
                geometry::dual_norm(&inst.space, &inst.f).unwrap(),
                rational::one()
            );
        }
    }

    #[test]
    fn small_run_agrees() {
        let r = run_oracle(10, 1, 2000).unwrap();
        assert!(r.within_bound(), "{} > {}", r.max_deviation, r.bound);
    }

    #[test]
    fn chord_shortcut_agrees_with_full_boundary() {
        for inst in random_instances(40, 8) {
            let (norm, ball) = planar(&inst.space).unwrap();
            let poly = slice_polygon(&ball, &inst.f, &inst.eps);
            let full = distance_to_polygon(&norm, &poly, point(&inst.y), 40_000);
            let chord =
                grid_dist_to_slice(&inst.space, &inst.y, &inst.f, &inst.eps, 10_000).unwrap();
            assert!((full - chord).abs() < 3e-4, "{full} vs {chord}");
        }
    }

    #[test]
    fn three_dimensional_spaces_are_refused() {
        let s = crate::builtin::square(3);
        let r = grid_dist_to_slice(
            &s,
            &Vector::zeros(3),
            &s.facets()[0],
            &rational::ratio(1, 2),
            10,
        );
        assert!(matches!(r, Err(Error::UnsupportedDimension(3))));
    }
}
