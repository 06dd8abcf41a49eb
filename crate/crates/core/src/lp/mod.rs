//! Exact linear programming and the distance queries built on it.
//!
//! Every distance is in the space's own norm and is the optimum of a single
//! LP. Two equivalent formulations exist: the facet form measures `y - z`
//! against every facet functional (rows grow with the facet count), the
//! vertex form writes `y - z` as a nonnegative combination of vertices and
//! minimises the total weight (columns grow with the vertex count).
//! [`Formulation::Auto`] picks the smaller tableau; both give the same value.
//!
//! Slices are closed: `S(f, eps) = {z in B : f(z) >= 1 - eps}`. The distance
//! to the open slice is the same number.

pub mod simplex;

use num_traits::{One, Signed, Zero};

pub use simplex::{
    solve, Constraint, LinearProgram, LpResult, LpStatus, Relation, Sense, VarBounds,
};

use crate::error::{Error, Result};
use crate::geometry::{self, PolySpace};
use crate::linalg::{Functional, Vector};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Formulation {
    #[default]
    Auto,
    Facet,
    Vertex,
}

impl Formulation {
    fn resolve(self, space: &PolySpace, extra_rows: usize) -> Formulation {
        match self {
            Formulation::Auto => {
                let n = space.dim();
                let (nf, nv) = (space.facets().len(), space.vertices().len());
                let facet_cost = (2 * nf + extra_rows) * (4 * n + 2 * nf + extra_rows);
                let vertex_cost = (n + extra_rows) * (2 * nv + n + extra_rows);
                if vertex_cost <= facet_cost {
                    Formulation::Vertex
                } else {
                    Formulation::Facet
                }
            }
            f => f,
        }
    }
}

fn optimum(lp: &LinearProgram) -> Result<Rational> {
    let res = solve(lp)?;
    match res.status {
        LpStatus::Optimal => Ok(res.value.expect("optimal value")),
        s => Err(Error::InvalidInput(format!("distance program is {s:?}"))),
    }
}

fn check_slice_args(space: &PolySpace, y: &Vector, f: &Functional, eps: &Rational) -> Result<()> {
    space.check_dim(y.dim())?;
    space.check_dim(f.dim())?;
    let d = geometry::dual_norm_unchecked(space, f);
    if !d.is_one() {
        return Err(Error::InvalidInput(format!(
            "functional {f} has dual norm {d}, not 1"
        )));
    }
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::InvalidInput(format!(
            "eps = {eps} is outside (0, 1)"
        )));
    }
    Ok(())
}

/// Minkowski gauge of `x` from the vertex list alone.
pub fn gauge(space: &PolySpace, x: &Vector) -> Result<Rational> {
    space.check_dim(x.dim())?;
    let nv = space.vertices().len();
    let mut lp = LinearProgram::minimize(vec![Rational::one(); nv]);
    for k in 0..space.dim() {
        lp.constrain(
            space.vertices().iter().map(|v| v[k].clone()).collect(),
            Relation::Eq,
            x[k].clone(),
        );
    }
    for j in 0..nv {
        lp.nonnegative(j);
    }
    optimum(&lp)
}

/// Where the nearest point `z` is allowed to lie.
enum Target<'a> {
    /// `z in B`, `f(z) >= level` (or `= level` when `exact`).
    Cut {
        f: &'a Functional,
        level: Rational,
        exact: bool,
    },
    /// `z in conv(points)`.
    Hull(&'a [Vector]),
}

fn distance(
    space: &PolySpace,
    y: &Vector,
    target: Target<'_>,
    form: Formulation,
) -> Result<Rational> {
    let n = space.dim();
    let facets = space.facets();
    let verts = space.vertices();
    match (target, form.resolve(space, 2)) {
        (Target::Cut { f, level, exact }, Formulation::Facet) => {
            // vars: z (n, free), t >= 0.
            let mut c = vec![Rational::zero(); n + 1];
            c[n] = Rational::one();
            let mut lp = LinearProgram::minimize(c);
            for g in facets {
                let mut row = g.coords().to_vec();
                row.push(Rational::zero());
                lp.constrain(row, Relation::Le, Rational::one());
            }
            let mut row = f.coords().to_vec();
            row.push(Rational::zero());
            lp.constrain(row, if exact { Relation::Eq } else { Relation::Ge }, level);
            for g in facets {
                let mut row: Vec<Rational> = g.coords().iter().map(|a| -a).collect();
                row.push(-Rational::one());
                lp.constrain(row, Relation::Le, -g.apply(y));
            }
            lp.nonnegative(n);
            optimum(&lp)
        }
        (Target::Cut { f, level, exact }, _) => {
            // vars: nu over candidate points, mu over all vertices, all >= 0.
            let pts: Vec<&Vector> = if exact && level.is_one() {
                match space.facet_index(f) {
                    Some(i) => space.incidence()[i].iter().map(|&k| &verts[k]).collect(),
                    None => verts.iter().collect(),
                }
            } else {
                verts.iter().collect()
            };
            let (np, nv) = (pts.len(), verts.len());
            let mut c = vec![Rational::zero(); np];
            c.extend(std::iter::repeat_n(Rational::one(), nv));
            let mut lp = LinearProgram::minimize(c);
            let mut row = vec![Rational::one(); np];
            row.resize(np + nv, Rational::zero());
            lp.constrain(
                row,
                if exact { Relation::Eq } else { Relation::Le },
                Rational::one(),
            );
            let mut row: Vec<Rational> = pts.iter().map(|p| f.apply(p)).collect();
            row.resize(np + nv, Rational::zero());
            lp.constrain(row, if exact { Relation::Eq } else { Relation::Ge }, level);
            for k in 0..n {
                let mut row: Vec<Rational> = pts.iter().map(|p| p[k].clone()).collect();
                row.extend(verts.iter().map(|v| v[k].clone()));
                lp.constrain(row, Relation::Eq, y[k].clone());
            }
            for j in 0..np + nv {
                lp.nonnegative(j);
            }
            optimum(&lp)
        }
        (Target::Hull(points), Formulation::Facet) => {
            // vars: lambda over points (>= 0), t >= 0; z = sum lambda p.
            let np = points.len();
            let mut c = vec![Rational::zero(); np + 1];
            c[np] = Rational::one();
            let mut lp = LinearProgram::minimize(c);
            let mut row = vec![Rational::one(); np];
            row.push(Rational::zero());
            lp.constrain(row, Relation::Eq, Rational::one());
            for g in facets {
                let mut row: Vec<Rational> = points.iter().map(|p| -g.apply(p)).collect();
                row.push(-Rational::one());
                lp.constrain(row, Relation::Le, -g.apply(y));
            }
            for j in 0..=np {
                lp.nonnegative(j);
            }
            optimum(&lp)
        }
        (Target::Hull(points), _) => {
            let (np, nv) = (points.len(), verts.len());
            let mut c = vec![Rational::zero(); np];
            c.extend(std::iter::repeat_n(Rational::one(), nv));
            let mut lp = LinearProgram::minimize(c);
            let mut row = vec![Rational::one(); np];
            row.resize(np + nv, Rational::zero());
            lp.constrain(row, Relation::Eq, Rational::one());
            for k in 0..n {
                let mut row: Vec<Rational> = points.iter().map(|p| p[k].clone()).collect();
                row.extend(verts.iter().map(|v| v[k].clone()));
                lp.constrain(row, Relation::Eq, y[k].clone());
            }
            for j in 0..np + nv {
                lp.nonnegative(j);
            }
            optimum(&lp)
        }
    }
}

/// Distance from `y` to the closed slice `{z in B : f(z) >= 1 - eps}`.
pub fn dist_to_slice(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
) -> Result<Rational> {
    dist_to_slice_with(space, y, f, eps, Formulation::Auto)
}

pub fn dist_to_slice_with(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
    form: Formulation,
) -> Result<Rational> {
    check_slice_args(space, y, f, eps)?;
    let level = Rational::one() - eps;
    distance(
        space,
        y,
        Target::Cut {
            f,
            level,
            exact: false,
        },
        form,
    )
}

/// Distance from `y` to the facet `{z in B : f(z) = 1}`; `f` must be a facet functional.
pub fn dist_to_face(space: &PolySpace, y: &Vector, f: &Functional) -> Result<Rational> {
    dist_to_face_with(space, y, f, Formulation::Auto)
}

pub fn dist_to_face_with(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    form: Formulation,
) -> Result<Rational> {
    space.check_dim(y.dim())?;
    space.check_dim(f.dim())?;
    if space.facet_index(f).is_none() {
        return Err(Error::InvalidInput(format!(
            "{f} is not a facet functional"
        )));
    }
    distance(
        space,
        y,
        Target::Cut {
            f,
            level: Rational::one(),
            exact: true,
        },
        form,
    )
}

/// Distance from `y` to `conv(points)`.
pub fn dist_to_hull(space: &PolySpace, y: &Vector, points: &[Vector]) -> Result<Rational> {
    dist_to_hull_with(space, y, points, Formulation::Auto)
}

pub fn dist_to_hull_with(
    space: &PolySpace,
    y: &Vector,
    points: &[Vector],
    form: Formulation,
) -> Result<Rational> {
    space.check_dim(y.dim())?;
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != space.dim()) {
        space.check_dim(p.dim())?;
    }
    distance(space, y, Target::Hull(points), form)
}

/// Distance from `y` to `conv(S ∪ -S)` for the closed slice `S = S(f, eps)`.
///
/// Points of the hull are `p - q` with `p in lambda·S` and `q in (1 - lambda)·S`.
pub fn dist_to_aco_slice(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
) -> Result<Rational> {
    dist_to_aco_slice_with(space, y, f, eps, Formulation::Auto)
}

pub fn dist_to_aco_slice_with(
    space: &PolySpace,
    y: &Vector,
    f: &Functional,
    eps: &Rational,
    form: Formulation,
) -> Result<Rational> {
    check_slice_args(space, y, f, eps)?;
    let n = space.dim();
    let level = Rational::one() - eps;
    let facets = space.facets();
    let verts = space.vertices();
    let zero = Rational::zero;
    match form.resolve(space, 4) {
        Formulation::Facet => {
            // vars: p (n), q (n), lambda, t.
            let m = 2 * n + 2;
            let (lam, t) = (2 * n, 2 * n + 1);
            let mut c = vec![zero(); m];
            c[t] = Rational::one();
            let mut lp = LinearProgram::minimize(c);
            let block = |g: &Functional, at: usize, extra: &[(usize, Rational)]| {
                let mut row = vec![zero(); m];
                for (k, a) in g.coords().iter().enumerate() {
                    row[at + k] = a.clone();
                }
                for (j, a) in extra {
                    row[*j] = a.clone();
                }
                row
            };
            for g in facets {
                lp.constrain(
                    block(g, 0, &[(lam, -Rational::one())]),
                    Relation::Le,
                    zero(),
                );
                lp.constrain(
                    block(g, n, &[(lam, Rational::one())]),
                    Relation::Le,
                    Rational::one(),
                );
            }
            lp.constrain(block(f, 0, &[(lam, -level.clone())]), Relation::Ge, zero());
            lp.constrain(
                block(f, n, &[(lam, level.clone())]),
                Relation::Ge,
                level.clone(),
            );
            for g in facets {
                // g(y - p + q) <= t
                let mut row = vec![zero(); m];
                for (k, a) in g.coords().iter().enumerate() {
                    row[k] = -a;
                    row[n + k] = a.clone();
                }
                row[t] = -Rational::one();
                lp.constrain(row, Relation::Le, -g.apply(y));
            }
            lp.bound(lam, Some(zero()), Some(Rational::one()));
            lp.nonnegative(t);
            optimum(&lp)
        }
        _ => {
            // vars: nu (nv), nu' (nv), lambda, mu (nv).
            let nv = verts.len();
            let m = 3 * nv + 1;
            let lam = 2 * nv;
            let mut c = vec![zero(); m];
            for x in c.iter_mut().skip(lam + 1) {
                *x = Rational::one();
            }
            let mut lp = LinearProgram::minimize(c);
            let mut row = vec![zero(); m];
            row[..nv].fill(Rational::one());
            row[lam] = -Rational::one();
            lp.constrain(row, Relation::Le, zero());
            let mut row = vec![zero(); m];
            row[nv..2 * nv].fill(Rational::one());
            row[lam] = Rational::one();
            lp.constrain(row, Relation::Le, Rational::one());
            let fv: Vec<Rational> = verts.iter().map(|v| f.apply(v)).collect();
            let mut row = vec![zero(); m];
            row[..nv].clone_from_slice(&fv);
            row[lam] = -level.clone();
            lp.constrain(row, Relation::Ge, zero());
            let mut row = vec![zero(); m];
            row[nv..2 * nv].clone_from_slice(&fv);
            row[lam] = level.clone();
            lp.constrain(row, Relation::Ge, level.clone());
            for k in 0..n {
                let mut row = vec![zero(); m];
                for (i, v) in verts.iter().enumerate() {
                    row[i] = v[k].clone();
                    row[nv + i] = -&v[k];
                    row[lam + 1 + i] = v[k].clone();
                }
                lp.constrain(row, Relation::Eq, y[k].clone());
            }
            for j in 0..m {
                lp.nonnegative(j);
            }
            lp.bound(lam, Some(zero()), Some(Rational::one()));
            optimum(&lp)
        }
    }
}
