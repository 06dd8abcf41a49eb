//! Polyhedral normed spaces.
//!
//! A [`PolySpace`] carries both descriptions of its unit ball: the vertex
//! list and the facet functionals `f` with `B = {x : f(x) <= 1}`. The norm
//! is the largest facet value and the dual norm the largest vertex value.

pub mod hull;
pub mod io;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{Certificate, Condition, Verdict, Witness};
use crate::error::{Error, Result};
use crate::linalg::{self, Functional, Vector};
use crate::lp;
use crate::rational::{self, Rational};

pub use hull::{hrep_to_vrep, vrep_to_hrep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpace {
    label: String,
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Functional>,
    incidence: Vec<Vec<usize>>,
}

impl PolySpace {
    /// Assembles a space without validating it. Vertices and facets are
    /// sorted and deduplicated; incidence is recomputed.
    pub fn from_reps_unchecked(
        label: impl Into<String>,
        dim: usize,
        mut vertices: Vec<Vector>,
        mut facets: Vec<Functional>,
    ) -> Self {
        vertices.sort();
        vertices.dedup();
        facets.sort();
        facets.dedup();
        let incidence = facets
            .iter()
            .map(|f| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| f.dim() == v.dim() && f.apply(v).is_one())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Self {
            label: label.into(),
            dim,
            vertices,
            facets,
            incidence,
        }
    }

    /// Both representations supplied; validated before returning.
    pub fn from_reps(
        label: impl Into<String>,
        vertices: Vec<Vector>,
        facets: Vec<Functional>,
    ) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vector::dim);
        Self::from_reps_unchecked(label, dim, vertices, facets).validated()
    }

    /// Facets derived from the vertex list (dimension <= 3).
    pub fn from_vertices(label: impl Into<String>, vertices: Vec<Vector>) -> Result<Self> {
        let facets = vrep_to_hrep(&vertices)?;
        let vertices = hrep_to_vrep(&facets)?;
        Self::from_reps(label, vertices, facets)
    }

    /// Vertices derived from the facet list (dimension <= 3).
    pub fn from_facets(label: impl Into<String>, facets: Vec<Functional>) -> Result<Self> {
        let vertices = hrep_to_vrep(&facets)?;
        let facets = vrep_to_hrep(&vertices)?;
        Self::from_reps(label, vertices, facets)
    }

    fn validated(self) -> Result<Self> {
        let cert = validate(&self);
        if cert.verdict == Verdict::Certified {
            Ok(self)
        } else {
            Err(Error::Invalid(Box::new(cert)))
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Functional] {
        &self.facets
    }

    /// Vertex indices on each facet, parallel to [`facets`](Self::facets).
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn facet_index(&self, f: &Functional) -> Option<usize> {
        self.facets.binary_search(f).ok()
    }

    pub fn vertex_index(&self, v: &Vector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Index of `-facets[i]`.
    pub fn opposite_facet(&self, i: usize) -> Option<usize> {
        self.facet_index(&-&self.facets[i])
    }

    pub fn opposite_vertex(&self, i: usize) -> Option<usize> {
        self.vertex_index(&-&self.vertices[i])
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// Same ball, vertex and facet lists exchanged.
    pub fn dual(&self) -> PolySpace {
        PolySpace::from_reps_unchecked(
            format!("dual({})", self.label),
            self.dim,
            self.facets.iter().map(Functional::as_vector).collect(),
            self.vertices.iter().map(Vector::as_functional).collect(),
        )
    }

    /// First facet attaining the norm of `x`.
    pub fn norming_facet(&self, x: &Vector) -> usize {
        let mut best = 0;
        let mut best_val = self.facets[0].apply(x);
        for (i, f) in self.facets.iter().enumerate().skip(1) {
            let v = f.apply(x);
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        best
    }
}

/// `max_f f(x)` over the facet functionals.
pub fn norm(space: &PolySpace, x: &Vector) -> Result<Rational> {
    space.check_dim(x.dim())?;
    Ok(norm_unchecked(space, x))
}

pub(crate) fn norm_unchecked(space: &PolySpace, x: &Vector) -> Rational {
    space
        .facets
        .iter()
        .map(|f| f.apply(x))
        .max()
        .unwrap_or_else(Rational::zero)
        .max(Rational::zero())
}

/// `max_v |f(v)|` over the ball vertices.
pub fn dual_norm(space: &PolySpace, f: &Functional) -> Result<Rational> {
    space.check_dim(f.dim())?;
    Ok(dual_norm_unchecked(space, f))
}

pub(crate) fn dual_norm_unchecked(space: &PolySpace, f: &Functional) -> Rational {
    space
        .vertices
        .iter()
        .map(|v| f.apply(v).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

fn fail(space: &PolySpace, what: &str, witnesses: Vec<Witness>) -> Certificate {
    Certificate {
        condition: Condition::Valid,
        verdict: Verdict::Failed,
        bound: None,
        eps: None,
        witnesses,
        space_label: space.label.clone(),
        note: Some(what.to_string()),
    }
}

fn witness(facet: Option<usize>, vertex: Option<usize>, value: Rational) -> Witness {
    Witness {
        facet,
        vertex,
        value,
    }
}

const CONSISTENCY_SAMPLES: usize = 24;

/// Checks every structural invariant of a space and reports the first violation.
///
/// Witness indices refer to the sorted vertex and facet lists.
pub fn validate(space: &PolySpace) -> Certificate {
    const NONE: Option<usize> = None;
    let n = space.dim;
    if n == 0 || space.vertices.is_empty() || space.facets.is_empty() {
        return fail(space, "dimension: empty space", vec![]);
    }
    if let Some(i) = space.vertices.iter().position(|v| v.dim() != n) {
        return fail(
            space,
            "dimension: vertex length",
            vec![witness(
                NONE,
                Some(i),
                rational::int(space.vertices[i].dim() as i64),
            )],
        );
    }
    if let Some(i) = space.facets.iter().position(|f| f.dim() != n) {
        return fail(
            space,
            "dimension: facet length",
            vec![witness(
                Some(i),
                NONE,
                rational::int(space.facets[i].dim() as i64),
            )],
        );
    }
    for (i, v) in space.vertices.iter().enumerate() {
        let (j, val) = space
            .facets
            .iter()
            .enumerate()
            .map(|(j, f)| (j, f.apply(v)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty");
        if !val.is_one() {
            return fail(
                space,
                "vertex-on-sphere",
                vec![witness(Some(j), Some(i), val)],
            );
        }
    }
    for (j, f) in space.facets.iter().enumerate() {
        let d = dual_norm_unchecked(space, f);
        if !d.is_one() {
            return fail(space, "unit-facet", vec![witness(Some(j), NONE, d)]);
        }
    }
    if let Some(i) = (0..space.vertices.len()).find(|&i| space.opposite_vertex(i).is_none()) {
        return fail(
            space,
            "symmetry: missing -v",
            vec![witness(NONE, Some(i), Rational::zero())],
        );
    }
    if let Some(j) = (0..space.facets.len()).find(|&j| space.opposite_facet(j).is_none()) {
        return fail(
            space,
            "symmetry: missing -f",
            vec![witness(Some(j), NONE, Rational::zero())],
        );
    }
    let vrows: Vec<&[Rational]> = space.vertices.iter().map(|v| v.coords()).collect();
    let r = linalg::rank(&vrows);
    if r < n {
        return fail(
            space,
            "fullness: vertices do not span",
            vec![witness(NONE, NONE, rational::int(r as i64))],
        );
    }
    for i in 0..space.vertices.len() {
        let normals: Vec<&[Rational]> = space
            .incidence
            .iter()
            .enumerate()
            .filter(|(_, inc)| inc.contains(&i))
            .map(|(j, _)| space.facets[j].coords())
            .collect();
        let r = linalg::rank(&normals);
        if r < n {
            return fail(
                space,
                "minimality: vertex is not extreme",
                vec![witness(NONE, Some(i), rational::int(r as i64))],
            );
        }
    }
    for (j, inc) in space.incidence.iter().enumerate() {
        let pts: Vec<&[Rational]> = inc.iter().map(|&i| space.vertices[i].coords()).collect();
        let r = linalg::rank(&pts);
        if r < n {
            return fail(
                space,
                "minimality: facet is dominated",
                vec![witness(Some(j), NONE, rational::int(r as i64))],
            );
        }
    }
    if n <= hull::MAX_HULL_DIM {
        match vrep_to_hrep(&space.vertices) {
            Ok(facets) if facets == space.facets => {}
            Ok(_) => {
                return fail(
                    space,
                    "consistency: facet list differs from hull of vertices",
                    vec![],
                )
            }
            Err(e) => return fail(space, &format!("consistency: {e}"), vec![]),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..CONSISTENCY_SAMPLES {
        let x = Vector::new(
            (0..n)
                .map(|_| rational::ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4)))
                .collect(),
        );
        let h = norm_unchecked(space, &x);
        match lp::gauge(space, &x) {
            Ok(g) if g == h => {}
            Ok(g) => {
                return fail(
                    space,
                    "consistency: gauge differs from facet norm",
                    vec![witness(NONE, NONE, g - h)],
                )
            }
            Err(e) => return fail(space, &format!("consistency: {e}"), vec![]),
        }
    }
    Certificate {
        condition: Condition::Valid,
        verdict: Verdict::Certified,
        bound: None,
        eps: None,
        witnesses: vec![],
        space_label: space.label.clone(),
        note: None,
    }
}
