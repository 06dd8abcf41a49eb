//! Sphere isometries of polyhedral spaces.
//!
//! The guaranteed surjective isometries are the linear symmetries of the
//! unit ball. A second representation, the vertex map, describes a sphere
//! self-map by a vertex bijection extended linearly on each facet cone; it
//! is admitted only after checking that it stays on the sphere and preserves
//! distances, which lets candidate maps be rejected before anything else is
//! measured.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, PolySpace};
use crate::linalg::{self, OperatorMatrix, Vector};
use crate::rational::{self, Rational};

pub const MAX_GROUP_VERTICES: usize = 24;
const ADMISSION_SAMPLES: usize = 200;

/// Linear maps permuting the ball vertices, in lexicographic order.
pub fn symmetry_group(space: &PolySpace) -> Result<Vec<OperatorMatrix>> {
    let verts = space.vertices();
    if verts.len() > MAX_GROUP_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertices",
            count: verts.len(),
            limit: MAX_GROUP_VERTICES,
        });
    }
    let n = space.dim();
    let rows: Vec<&[Rational]> = verts.iter().map(|v| v.coords()).collect();
    let basis: Vec<&Vector> = linalg::independent_subset(&rows)
        .into_iter()
        .map(|i| &verts[i])
        .collect();
    if basis.len() < n {
        return Err(Error::Degenerate("vertices do not span".into()));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; verts.len()];
    images(space, &basis, &mut chosen, &mut used, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn images(
    space: &PolySpace,
    basis: &[&Vector],
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<OperatorMatrix>,
) {
    let verts = space.vertices();
    if chosen.len() == basis.len() {
        let targets: Vec<&Vector> = chosen.iter().map(|&i| &verts[i]).collect();
        let Some(m) = linalg::linear_map_through(basis, &targets) else {
            return;
        };
        if is_ball_symmetry(space, &m) {
            out.push(m);
        }
        return;
    }
    for i in 0..verts.len() {
        if !used[i] {
            used[i] = true;
            chosen.push(i);
            images(space, basis, chosen, used, out);
            chosen.pop();
            used[i] = false;
        }
    }
}

/// `m` is invertible, permutes the vertices and permutes the facets.
pub fn is_ball_symmetry(space: &PolySpace, m: &OperatorMatrix) -> bool {
    if m.dim() != space.dim() {
        return false;
    }
    let Some(inv) = m.inverse() else {
        return false;
    };
    space
        .vertices()
        .iter()
        .all(|v| space.vertex_index(&m.apply(v)).is_some())
        && space
            .facets()
            .iter()
            .all(|f| space.facet_index(&inv.pull_back(f)).is_some())
}

/// Closure under products and inverses, with `±Id` present.
pub fn is_group(elems: &[OperatorMatrix]) -> bool {
    let Some(first) = elems.first() else {
        return false;
    };
    let n = first.dim();
    let mut sorted = elems.to_vec();
    sorted.sort();
    let has = |m: &OperatorMatrix| sorted.binary_search(m).is_ok();
    let id = OperatorMatrix::identity(n);
    if !has(&id) || !has(&id.scale(&-Rational::one())) {
        return false;
    }
    elems
        .iter()
        .all(|a| a.inverse().is_some_and(|inv| has(&inv)) && elems.iter().all(|b| has(&a.mul(b))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsometryKind {
    Linear,
    VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SphereMap {
    Linear(OperatorMatrix),
    VertexMap {
        permutation: Vec<usize>,
        /// Linear map on the cone of each domain facet.
        facet_maps: Vec<OperatorMatrix>,
    },
}

/// An admitted map `S_E -> S_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereIsometry {
    domain: PolySpace,
    codomain: PolySpace,
    map: SphereMap,
}

impl SphereIsometry {
    /// Restriction of a linear map carrying the domain ball onto the codomain ball.
    pub fn linear(domain: &PolySpace, codomain: &PolySpace, m: OperatorMatrix) -> Result<Self> {
        domain.check_dim(m.dim())?;
        codomain.check_dim(m.dim())?;
        if domain.vertices().len() != codomain.vertices().len() || m.inverse().is_none() {
            return Err(Error::NotAnIsometry(
                "matrix does not map ball onto ball".into(),
            ));
        }
        let onto = domain
            .vertices()
            .iter()
            .all(|v| codomain.vertex_index(&m.apply(v)).is_some());
        if !onto {
            return Err(Error::NotAnIsometry(
                "a vertex image is not a codomain vertex".into(),
            ));
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map: SphereMap::Linear(m),
        })
    }

    /// Vertex `i` of the domain goes to vertex `permutation[i]` of the codomain,
    /// extended linearly on each facet. Admission checks, in order: bijection,
    /// a consistent linear map on every facet, facet images inside one codomain
    /// facet, vertex-pair distances, and sampled sphere-pair distances.
    pub fn vertex_map(
        domain: &PolySpace,
        codomain: &PolySpace,
        permutation: Vec<usize>,
    ) -> Result<Self> {
        domain.check_dim(codomain.dim())?;
        let nv = domain.vertices().len();
        if permutation.len() != nv || codomain.vertices().len() != nv {
            return Err(Error::NotAnIsometry("vertex counts differ".into()));
        }
        let mut seen = vec![false; nv];
        for &p in &permutation {
            if p >= nv || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotAnIsometry("vertex map is not a bijection".into()));
            }
        }
        let dv = domain.vertices();
        let cv = codomain.vertices();
        let mut facet_maps = Vec::with_capacity(domain.facets().len());
        for (j, inc) in domain.incidence().iter().enumerate() {
            let src: Vec<&Vector> = inc.iter().map(|&i| &dv[i]).collect();
            let dst: Vec<&Vector> = inc.iter().map(|&i| &cv[permutation[i]]).collect();
            let Some(m) = linalg::linear_map_through(&src, &dst) else {
                return Err(Error::NotAnIsometry(format!(
                    "facet {j} has no affine extension"
                )));
            };
            let lands_on_facet = codomain
                .facets()
                .iter()
                .any(|g| dst.iter().all(|w| g.apply(w).is_one()));
            if !lands_on_facet {
                return Err(Error::NotAnIsometry(format!(
                    "facet {j} is not mapped into a codomain facet"
                )));
            }
            facet_maps.push(m);
        }
        for a in 0..nv {
            for b in a + 1..nv {
                let d0 = geometry::norm_unchecked(domain, &(&dv[a] - &dv[b]));
                let d1 = geometry::norm_unchecked(
                    codomain,
                    &(&cv[permutation[a]] - &cv[permutation[b]]),
                );
                if d0 != d1 {
                    return Err(Error::NotAnIsometry(format!(
                        "distance between vertices {a} and {b} changes from {d0} to {d1}"
                    )));
                }
            }
        }
        let t = Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map: SphereMap::VertexMap {
                permutation,
                facet_maps,
            },
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..ADMISSION_SAMPLES {
            let x = sample_sphere_point(domain, &mut rng);
            let y = sample_sphere_point(domain, &mut rng);
            let d0 = geometry::norm_unchecked(domain, &(&x - &y));
            let d1 = geometry::norm_unchecked(codomain, &(&t.apply(&x)? - &t.apply(&y)?));
            if d0 != d1 {
                return Err(Error::NotAnIsometry(format!(
                    "distance between sphere points {x} and {y} changes from {d0} to {d1}"
                )));
            }
        }
        Ok(t)
    }

    /// The vertex-map form of a ball symmetry: only the induced vertex
    /// permutation is kept, the facet maps are re-derived from it.
    pub fn restriction_of_symmetry(space: &PolySpace, m: &OperatorMatrix) -> Result<Self> {
        let perm = space
            .vertices()
            .iter()
            .map(|v| {
                space
                    .vertex_index(&m.apply(v))
                    .ok_or_else(|| Error::NotAnIsometry("matrix is not a ball symmetry".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::vertex_map(space, space, perm)
    }

    pub fn kind(&self) -> IsometryKind {
        match self.map {
            SphereMap::Linear(_) => IsometryKind::Linear,
            SphereMap::VertexMap { .. } => IsometryKind::VertexMap,
        }
    }

    pub fn matrix(&self) -> Option<&OperatorMatrix> {
        match &self.map {
            SphereMap::Linear(m) => Some(m),
            SphereMap::VertexMap { .. } => None,
        }
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        match &self.map {
            SphereMap::Linear(_) => None,
            SphereMap::VertexMap { permutation, .. } => Some(permutation),
        }
    }

    pub fn domain(&self) -> &PolySpace {
        &self.domain
    }

    pub fn codomain(&self) -> &PolySpace {
        &self.codomain
    }

    /// `T(x)` for a unit vector `x`.
    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        let nx = geometry::norm(&self.domain, x)?;
        if !nx.is_one() {
            return Err(Error::InvalidInput(format!("{x} has norm {nx}, not 1")));
        }
        Ok(self.apply_cone(x))
    }

    /// The positively homogeneous map agreeing with `T` on the sphere.
    fn apply_cone(&self, x: &Vector) -> Vector {
        match &self.map {
            SphereMap::Linear(m) => m.apply(x),
            SphereMap::VertexMap { facet_maps, .. } => {
                facet_maps[self.domain.norming_facet(x)].apply(x)
            }
        }
    }
}

/// Uniform facet, then random rational convex weights of its vertices.
/// The result has norm exactly 1.
pub fn sample_sphere_point<R: Rng>(space: &PolySpace, rng: &mut R) -> Vector {
    let j = rng.gen_range(0..space.facets().len());
    let inc = &space.incidence()[j];
    let weights: Vec<i64> = loop {
        let w: Vec<i64> = inc.iter().map(|_| rng.gen_range(0..=8)).collect();
        if w.iter().any(|&x| x > 0) {
            break w;
        }
    };
    let total: i64 = weights.iter().sum();
    inc.iter()
        .zip(&weights)
        .fold(Vector::zeros(space.dim()), |acc, (&i, &w)| {
            &acc + &space.vertices()[i].scale(&rational::ratio(w, total))
        })
}

fn sample_vector<R: Rng>(dim: usize, rng: &mut R) -> Vector {
    Vector::new(
        (0..dim)
            .map(|_| rational::ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6)))
            .collect(),
    )
}

/// `λ` values cycled through by the Mazur-Ulam check.
pub fn default_lambda_grid() -> Vec<Rational> {
    [(0, 1), (1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (4, 1)]
        .iter()
        .map(|&(p, q)| rational::ratio(p, q))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MupViolation {
    pub x: Vector,
    pub y: Vector,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
    /// `‖T(x) - λ T(y)‖`
    #[serde(with = "rational::serde_str")]
    pub image_distance: Rational,
    /// `‖x - λ y‖`
    #[serde(with = "rational::serde_str")]
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MupReport {
    pub trials: usize,
    pub seed: u64,
    pub equalities: usize,
    /// Trials with `‖T(x) - λ T(y)‖ > ‖x - λ y‖`.
    pub strict: usize,
    pub violations: Vec<MupViolation>,
}

impl MupReport {
    pub fn all_equal(&self) -> bool {
        self.equalities == self.trials
    }
}

/// Samples `(x, y, λ)` and checks `‖T(x) - λ T(y)‖ >= ‖x - λ y‖` exactly.
pub fn check_mup_inequality(t: &SphereIsometry, trials: usize, seed: u64) -> Result<MupReport> {
    check_mup_inequality_with(t, trials, seed, &default_lambda_grid())
}

pub fn check_mup_inequality_with(
    t: &SphereIsometry,
    trials: usize,
    seed: u64,
    lambdas: &[Rational],
) -> Result<MupReport> {
    if trials == 0 || lambdas.is_empty() {
        return Err(Error::InvalidInput(
            "need at least one trial and one lambda".into(),
        ));
    }
    if lambdas.iter().any(|l| *l < Rational::zero()) {
        return Err(Error::InvalidInput("lambda must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MupReport {
        trials,
        seed,
        equalities: 0,
        strict: 0,
        violations: Vec::new(),
    };
    for i in 0..trials {
        let x = sample_sphere_point(&t.domain, &mut rng);
        let y = sample_sphere_point(&t.domain, &mut rng);
        let lambda = &lambdas[i % lambdas.len()];
        let image = &t.apply(&x)? - &t.apply(&y)?.scale(lambda);
        let image_distance = geometry::norm_unchecked(&t.codomain, &image);
        let distance = geometry::norm_unchecked(&t.domain, &(&x - &y.scale(lambda)));
        match image_distance.cmp(&distance) {
            std::cmp::Ordering::Equal => report.equalities += 1,
            std::cmp::Ordering::Greater => report.strict += 1,
            std::cmp::Ordering::Less => report.violations.push(MupViolation {
                x,
                y,
                lambda: lambda.clone(),
                image_distance,
                distance,
            }),
        }
    }
    Ok(report)
}

/// `‖x‖ T(x / ‖x‖)`, and `0` at the origin.
pub fn extend_homogeneous(t: &SphereIsometry, x: &Vector) -> Result<Vector> {
    let nx = geometry::norm(&t.domain, x)?;
    if nx.is_zero() {
        return Ok(Vector::zeros(t.codomain.dim()));
    }
    let unit = x.scale(&nx.recip());
    Ok(t.apply(&unit)?.scale(&nx))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityViolation {
    pub x: Vector,
    pub y: Vector,
    /// `T̃(x + y)`
    pub of_sum: Vector,
    /// `T̃(x) + T̃(y)`
    pub sum_of: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    pub trials: usize,
    pub seed: u64,
    pub violations: Vec<LinearityViolation>,
}

/// Samples pairs and checks additivity of the homogeneous extension exactly.
pub fn linearity_check(t: &SphereIsometry, trials: usize, seed: u64) -> Result<LinearityReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let x = sample_vector(t.domain.dim(), &mut rng);
        let y = sample_vector(t.domain.dim(), &mut rng);
        let of_sum = extend_homogeneous(t, &(&x + &y))?;
        let sum_of = &extend_homogeneous(t, &x)? + &extend_homogeneous(t, &y)?;
        if of_sum != sum_of {
            violations.push(LinearityViolation {
                x,
                y,
                of_sum,
                sum_of,
            });
        }
    }
    Ok(LinearityReport {
        trials,
        seed,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{hexagon, octagon, square};

    #[test]
    fn square_has_dihedral_group() {
        let g = symmetry_group(&square(2)).unwrap();
        assert_eq!(g.len(), 8);
        assert!(is_group(&g));
    }

    #[test]
    fn hexagon_group_contains_rotation_of_order_six() {
        let hex = hexagon();
        let g = symmetry_group(&hex).unwrap();
        assert_eq!(g.len(), 12);
        assert!(is_group(&g));
        // (1,0) -> (1/2,1) -> (-1/2,1) -> (-1,0)
        let rot = OperatorMatrix::from_rows(vec![
            vec![rational::ratio(1, 2), rational::ratio(-3, 4)],
            vec![rational::int(1), rational::ratio(1, 2)],
        ])
        .unwrap();
        assert!(g.contains(&rot));
    }

    #[test]
    fn group_contains_plus_minus_identity() {
        for s in [hexagon(), square(3), octagon()] {
            let g = symmetry_group(&s).unwrap();
            let id = OperatorMatrix::identity(s.dim());
            assert!(g.contains(&id) && g.contains(&id.scale(&-Rational::one())));
        }
    }

    #[test]
    fn large_vertex_sets_are_refused() {
        let big = crate::sums::linf_sum(&[hexagon(), hexagon()]).unwrap();
        assert!(matches!(symmetry_group(&big), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn lambda_zero_reduces_to_unit_norms() {
        let hex = hexagon();
        let t = SphereIsometry::linear(&hex, &hex, OperatorMatrix::identity(2)).unwrap();
        let r = check_mup_inequality_with(&t, 20, 1, &[Rational::zero()]).unwrap();
        assert!(r.all_equal());
    }

    #[test]
    fn composed_symmetry_passes() {
        let hex = hexagon();
        let g = symmetry_group(&hex).unwrap();
        let m = g[3].mul(&g[7]);
        let t = SphereIsometry::linear(&hex, &hex, m).unwrap();
        let r = check_mup_inequality(&t, 1000, 11).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.all_equal());
    }

    #[test]
    fn extension_is_zero_at_origin_and_t_on_sphere() {
        let hex = hexagon();
        let g = symmetry_group(&hex).unwrap();
        let t = SphereIsometry::restriction_of_symmetry(&hex, &g[5]).unwrap();
        assert_eq!(
            extend_homogeneous(&t, &Vector::zeros(2)).unwrap(),
            Vector::zeros(2)
        );
        let x = Vector::from_ratios(&[(3, 4), (1, 2)]);
        assert_eq!(extend_homogeneous(&t, &x).unwrap(), t.apply(&x).unwrap());
        assert_eq!(t.apply(&x).unwrap(), g[5].apply(&x));
    }

    #[test]
    fn adjacent_vertex_swap_is_refused() {
        let sq = square(2);
        let a = sq.vertex_index(&Vector::from_ints(&[1, 1])).unwrap();
        let b = sq.vertex_index(&Vector::from_ints(&[1, -1])).unwrap();
        let mut perm: Vec<usize> = (0..4).collect();
        perm.swap(a, b);
        let err = SphereIsometry::vertex_map(&sq, &sq, perm).unwrap_err();
        assert!(matches!(err, Error::NotAnIsometry(_)), "{err}");
    }

    #[test]
    fn non_bijection_is_refused() {
        let sq = square(2);
        assert!(SphereIsometry::vertex_map(&sq, &sq, vec![0, 0, 1, 2]).is_err());
        assert!(SphereIsometry::vertex_map(&sq, &sq, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn off_sphere_point_is_rejected_by_apply() {
        let hex = hexagon();
        let t = SphereIsometry::linear(&hex, &hex, OperatorMatrix::identity(2)).unwrap();
        assert!(t.apply(&Vector::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn non_symmetry_matrix_is_refused() {
        let hex = hexagon();
        let m = OperatorMatrix::from_int_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(SphereIsometry::linear(&hex, &hex, m).is_err());
    }
}
