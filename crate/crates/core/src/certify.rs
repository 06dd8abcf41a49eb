//! Finite certificates for slice conditions on polyhedral spaces.
//!
//! Every certifier evaluates a table indexed by (facet functional, ball
//! vertex). The facet functionals are the extreme points of the dual ball and
//! the distance sums are convex in the point, so maximising over vertices
//! bounds the value over the whole ball. A search that does not meet its
//! threshold only says that this functional family fails; such results are
//! reported as [`Verdict::Inconclusive`], never as a refutation.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PolySpace;
use crate::lp;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "AlmostCL")]
    AlmostCl,
    #[serde(rename = "StrongGL")]
    StrongGl,
    #[serde(rename = "GLatEps")]
    GlAtEps,
    #[serde(rename = "LushAtEps")]
    LushAtEps,
    Valid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub facet: Option<usize>,
    pub vertex: Option<usize>,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub condition: Condition,
    pub verdict: Verdict,
    #[serde(with = "rational::serde_str::option")]
    pub bound: Option<Rational>,
    #[serde(with = "rational::serde_str::option")]
    pub eps: Option<Rational>,
    pub witnesses: Vec<Witness>,
    pub space_label: String,
    pub note: Option<String>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Default grid of slice depths.
pub fn default_eps_grid() -> Vec<Rational> {
    [2, 4, 8, 16]
        .iter()
        .map(|&d| rational::ratio(1, d))
        .collect()
}

const VERTEX_SEARCH_NOTE: &str = "search: facet functionals x ball vertices (closed slices)";

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_positive() && *eps < Rational::one() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "eps = {eps} is outside (0, 1)"
        )))
    }
}

/// Value of one (facet, vertex) cell for `condition`.
pub fn cell_value(
    space: &PolySpace,
    condition: Condition,
    eps: Option<&Rational>,
    facet: usize,
    vertex: usize,
) -> Result<Rational> {
    let f = &space.facets()[facet];
    let y = &space.vertices()[vertex];
    let need_eps = || eps.ok_or_else(|| Error::InvalidInput("condition needs eps".into()));
    match condition {
        Condition::AlmostCl => {
            let mut pts: Vec<_> = space.incidence()[facet]
                .iter()
                .map(|&i| space.vertices()[i].clone())
                .collect();
            let neg: Vec<_> = pts.iter().map(|p| -p).collect();
            pts.extend(neg);
            lp::dist_to_hull(space, y, &pts)
        }
        Condition::StrongGl => {
            Ok(lp::dist_to_face(space, y, f)? + lp::dist_to_face(space, y, &-f)?)
        }
        Condition::GlAtEps => {
            let eps = need_eps()?;
            Ok(lp::dist_to_slice(space, y, f, eps)? + lp::dist_to_slice(space, y, &-f, eps)?)
        }
        Condition::LushAtEps => lp::dist_to_aco_slice(space, y, f, need_eps()?),
        Condition::Valid => Err(Error::InvalidInput("validation has no cell table".into())),
    }
}

/// Recomputes a witness value from scratch.
pub fn replay(space: &PolySpace, cert: &Certificate, w: &Witness) -> Result<Rational> {
    let (Some(f), Some(v)) = (w.facet, w.vertex) else {
        return Err(Error::InvalidInput("witness lacks a cell".into()));
    };
    cell_value(space, cert.condition, cert.eps.as_ref(), f, v)
}

/// Full (facet × vertex) table, row-major by facet.
fn table(
    space: &PolySpace,
    condition: Condition,
    eps: Option<&Rational>,
) -> Result<Vec<Vec<Rational>>> {
    let nv = space.vertices().len();
    let cells: Vec<(usize, usize)> = (0..space.facets().len())
        .flat_map(|f| (0..nv).map(move |v| (f, v)))
        .collect();
    let values: Vec<Rational> = cells
        .par_iter()
        .map(|&(f, v)| cell_value(space, condition, eps, f, v))
        .collect::<Result<_>>()?;
    Ok(values.chunks(nv).map(<[Rational]>::to_vec).collect())
}

/// Worst vertex per facet, first index on ties.
fn row_maxima(table: &[Vec<Rational>]) -> Vec<Witness> {
    table
        .iter()
        .enumerate()
        .map(|(f, row)| {
            let (v, value) =
                row.iter().enumerate().fold(
                    (0, &row[0]),
                    |best, (i, x)| {
                        if x > best.1 {
                            (i, x)
                        } else {
                            best
                        }
                    },
                );
            Witness {
                facet: Some(f),
                vertex: Some(v),
                value: value.clone(),
            }
        })
        .collect()
}

fn overall_max(witnesses: &[Witness]) -> Rational {
    witnesses
        .iter()
        .map(|w| &w.value)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero)
}

/// For every facet `F`, every ball vertex lies in `conv(F ∪ -F)`.
pub fn almost_cl_check(space: &PolySpace) -> Result<Certificate> {
    let t = table(space, Condition::AlmostCl, None)?;
    let first_bad = t.iter().enumerate().find_map(|(f, row)| {
        row.iter().position(|x| !x.is_zero()).map(|v| Witness {
            facet: Some(f),
            vertex: Some(v),
            value: row[v].clone(),
        })
    });
    let maxima = row_maxima(&t);
    let bound = overall_max(&maxima);
    let (verdict, witnesses) = match first_bad {
        Some(w) => (Verdict::Failed, vec![w]),
        None => (Verdict::Certified, maxima),
    };
    Ok(Certificate {
        condition: Condition::AlmostCl,
        verdict,
        bound: Some(bound),
        eps: None,
        witnesses,
        space_label: space.label().to_string(),
        note: Some("value: distance from vertex to conv(F ∪ -F)".into()),
    })
}

/// Slices shrunk to facets: `max_{f,y} dist(y, F_f) + dist(y, F_{-f}) <= 2`.
///
/// Passing implies the slice condition for every `eps > 0`, since each facet
/// lies inside every slice of its functional.
pub fn strong_gl_certify(space: &PolySpace) -> Result<Certificate> {
    let maxima = row_maxima(&table(space, Condition::StrongGl, None)?);
    let bound = overall_max(&maxima);
    let verdict = if bound <= rational::int(2) {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        condition: Condition::StrongGl,
        verdict,
        bound: Some(bound),
        eps: None,
        witnesses: maxima,
        space_label: space.label().to_string(),
        note: Some(VERTEX_SEARCH_NOTE.into()),
    })
}

/// `max_{f,y} dist(y, S(f,eps)) + dist(y, -S(f,eps)) < 2 + eps`, strictly.
pub fn gl_certify_eps(space: &PolySpace, eps: &Rational) -> Result<Certificate> {
    check_eps(eps)?;
    let maxima = row_maxima(&table(space, Condition::GlAtEps, Some(eps))?);
    let bound = overall_max(&maxima);
    let verdict = if bound < rational::int(2) + eps {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        condition: Condition::GlAtEps,
        verdict,
        bound: Some(bound),
        eps: Some(eps.clone()),
        witnesses: maxima,
        space_label: space.label().to_string(),
        note: Some(VERTEX_SEARCH_NOTE.into()),
    })
}

/// `max_{f,y} dist(y, aco S(f,eps)) < eps`, strictly.
pub fn lush_check_eps(space: &PolySpace, eps: &Rational) -> Result<Certificate> {
    check_eps(eps)?;
    let maxima = row_maxima(&table(space, Condition::LushAtEps, Some(eps))?);
    let bound = overall_max(&maxima);
    let verdict = if bound < *eps {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        condition: Condition::LushAtEps,
        verdict,
        bound: Some(bound),
        eps: Some(eps.clone()),
        witnesses: maxima,
        space_label: space.label().to_string(),
        note: Some(VERTEX_SEARCH_NOTE.into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{diamond, hexagon, square};
    use crate::linalg::{Functional, Vector};
    use crate::rational::{int, ratio};

    #[test]
    fn almost_cl_on_small_spaces() {
        assert!(almost_cl_check(&diamond(2)).unwrap().is_certified());
        assert!(almost_cl_check(&square(2)).unwrap().is_certified());
        let hex = hexagon();
        let cert = almost_cl_check(&hex).unwrap();
        assert_eq!(cert.verdict, Verdict::Failed);
        assert!(cert.witnesses[0].value.is_positive());
    }

    #[test]
    fn hexagon_edge_misses_opposite_vertex() {
        let hex = hexagon();
        let f = hex
            .facet_index(&Functional::from_ratios(&[(1, 1), (1, 2)]))
            .unwrap();
        let v = hex
            .vertex_index(&Vector::from_ratios(&[(-1, 2), (1, 1)]))
            .unwrap();
        assert!(cell_value(&hex, Condition::AlmostCl, None, f, v)
            .unwrap()
            .is_positive());
    }

    #[test]
    fn strong_gl_bounds_are_two() {
        for s in [hexagon(), square(2), diamond(2)] {
            let c = strong_gl_certify(&s).unwrap();
            assert!(c.is_certified(), "{}", s.label());
            assert_eq!(c.bound, Some(int(2)));
        }
    }

    #[test]
    fn hexagon_top_facet_attains_two_at_one_zero() {
        let hex = hexagon();
        let f = hex.facet_index(&Functional::from_ints(&[0, 1])).unwrap();
        let y = hex.vertex_index(&Vector::from_ints(&[1, 0])).unwrap();
        assert_eq!(
            cell_value(&hex, Condition::StrongGl, None, f, y).unwrap(),
            int(2)
        );
    }

    #[test]
    fn gl_eps_certifies_on_strong_spaces() {
        assert!(gl_certify_eps(&hexagon(), &ratio(1, 2))
            .unwrap()
            .is_certified());
        assert!(gl_certify_eps(&square(2), &ratio(1, 4))
            .unwrap()
            .is_certified());
    }

    #[test]
    fn lush_on_cl_examples() {
        assert!(lush_check_eps(&diamond(2), &ratio(1, 2))
            .unwrap()
            .is_certified());
        assert!(lush_check_eps(&square(2), &ratio(1, 2))
            .unwrap()
            .is_certified());
    }

    #[test]
    fn eps_range_is_enforced() {
        assert!(gl_certify_eps(&hexagon(), &int(0)).is_err());
        assert!(lush_check_eps(&hexagon(), &int(1)).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let c = strong_gl_certify(&hexagon()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["condition"], "StrongGL");
        assert_eq!(v["verdict"], "certified");
        assert_eq!(v["bound"], "2");
        assert!(v["eps"].is_null());
        assert_eq!(v["space_label"], "hexagon");
        assert!(v["witnesses"][0]["value"].is_string());
        let back: Certificate = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn witnesses_replay() {
        let hex = hexagon();
        for c in [
            strong_gl_certify(&hex).unwrap(),
            gl_certify_eps(&hex, &ratio(1, 8)).unwrap(),
            lush_check_eps(&hex, &ratio(1, 8)).unwrap(),
        ] {
            for w in &c.witnesses {
                assert_eq!(replay(&hex, &c, w).unwrap(), w.value);
            }
        }
    }
}
