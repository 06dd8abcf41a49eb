//! Operator norm, numerical radius and a sampled estimate of the numerical index.
//!
//! Both the operator norm and the numerical radius are exact on polyhedral
//! spaces. `‖T‖` is a maximum of a convex function over the ball, so it is
//! attained at a vertex. For `v(T)` the norming pairs `(x, x*)` with
//! `x*(x) = 1` form faces in each variable, so a vertex `x` together with a
//! facet functional `x*` attains the supremum.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, PolySpace};
use crate::linalg::OperatorMatrix;
use crate::rational::{self, Rational};

fn check(space: &PolySpace, t: &OperatorMatrix) -> Result<()> {
    space.check_dim(t.dim())
}

/// `max_v ‖T v‖` over the ball vertices.
pub fn op_norm(space: &PolySpace, t: &OperatorMatrix) -> Result<Rational> {
    check(space, t)?;
    Ok(space
        .vertices()
        .iter()
        .map(|v| geometry::norm_unchecked(space, &t.apply(v)))
        .max()
        .unwrap_or_else(Rational::zero))
}

/// `max |f(T x)|` over vertex/facet pairs with `f(x) = 1`.
pub fn num_radius(space: &PolySpace, t: &OperatorMatrix) -> Result<Rational> {
    check(space, t)?;
    let images: Vec<_> = space.vertices().iter().map(|v| t.apply(v)).collect();
    let mut best = Rational::zero();
    for (f, inc) in space.facets().iter().zip(space.incidence()) {
        for &i in inc {
            let val = f.apply(&images[i]).abs();
            if val > best {
                best = val;
            }
        }
    }
    Ok(best)
}

/// `v(T) / ‖T‖`, or `None` for the zero operator.
pub fn index_ratio(space: &PolySpace, t: &OperatorMatrix) -> Result<Option<Rational>> {
    let n = op_norm(space, t)?;
    if n.is_zero() {
        return Ok(None);
    }
    Ok(Some(num_radius(space, t)? / n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexEstimate {
    /// Smallest ratio found; an upper bound on the numerical index.
    #[serde(with = "rational::serde_str")]
    pub lower_empirical: Rational,
    pub witness: OperatorMatrix,
    /// Smallest ratio among the random samples alone, before descent.
    #[serde(with = "rational::serde_str")]
    pub sampled_min: Rational,
    pub samples: usize,
    pub seed: u64,
}

/// Random sampling followed by coordinate descent from the best sample.
#[derive(Clone, Debug)]
pub struct IndexSearch {
    pub samples: usize,
    pub seed: u64,
    /// Entries are drawn uniformly from `{-k..k} / d`.
    pub entry_range: i64,
    pub entry_denom: i64,
    /// Extra operators evaluated alongside the samples.
    pub candidates: Vec<OperatorMatrix>,
    pub max_descent_rounds: usize,
    /// Descent stops once the step falls below `1 / min_step_denom`.
    pub min_step_denom: i64,
}

impl IndexSearch {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            entry_range: 2,
            entry_denom: 2,
            candidates: Vec::new(),
            max_descent_rounds: 200,
            min_step_denom: 64,
        }
    }

    pub fn with_candidates(mut self, candidates: Vec<OperatorMatrix>) -> Self {
        self.candidates = candidates;
        self
    }

    /// The sampled operators, in draw order. Zero draws are redrawn.
    pub fn draw(&self, dim: usize) -> Vec<OperatorMatrix> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let k = self.entry_range;
        (0..self.samples)
            .map(|_| loop {
                let rows = (0..dim)
                    .map(|_| {
                        (0..dim)
                            .map(|_| rational::ratio(rng.gen_range(-k..=k), self.entry_denom))
                            .collect()
                    })
                    .collect();
                let t = OperatorMatrix::from_rows(rows).expect("square");
                if !t.is_zero() {
                    break t;
                }
            })
            .collect()
    }

    pub fn run(&self, space: &PolySpace) -> Result<IndexEstimate> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be at least 1".into()));
        }
        if self.entry_range < 1 || self.entry_denom < 1 {
            return Err(Error::InvalidInput(
                "entry range and denominator must be positive".into(),
            ));
        }
        for c in &self.candidates {
            check(space, c)?;
        }
        let mut pool = self.draw(space.dim());
        pool.extend(self.candidates.iter().filter(|c| !c.is_zero()).cloned());
        let ratios: Vec<Rational> = pool
            .par_iter()
            .map(|t| index_ratio(space, t).map(|r| r.expect("nonzero operator")))
            .collect::<Result<_>>()?;
        let (best_idx, best) =
            ratios.iter().enumerate().fold(
                (0, &ratios[0]),
                |acc, (i, r)| if r < acc.1 { (i, r) } else { acc },
            );
        let sampled_min = best.clone();
        let (witness, lower) = self.descend(space, pool[best_idx].clone(), best.clone())?;
        Ok(IndexEstimate {
            lower_empirical: lower,
            witness,
            sampled_min,
            samples: self.samples,
            seed: self.seed,
        })
    }

    fn descend(
        &self,
        space: &PolySpace,
        mut t: OperatorMatrix,
        mut best: Rational,
    ) -> Result<(OperatorMatrix, Rational)> {
        let n = t.dim();
        let scale = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| t.get(i, j).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let mut step = scale / rational::int(2);
        let floor = rational::ratio(1, self.min_step_denom) * &step;
        for _ in 0..self.max_descent_rounds {
            if step < floor || step.is_zero() {
                break;
            }
            let mut improved = false;
            for i in 0..n {
                for j in 0..n {
                    for delta in [step.clone(), -step.clone()] {
                        let mut cand = t.clone();
                        cand.set(i, j, t.get(i, j) + &delta);
                        if let Some(r) = index_ratio(space, &cand)? {
                            if r < best {
                                best = r;
                                t = cand;
                                improved = true;
                            }
                        }
                    }
                }
            }
            if !improved {
                step /= rational::int(2);
            }
        }
        Ok((t, best))
    }
}

/// [`IndexSearch`] with default sampling parameters.
pub fn index_search(space: &PolySpace, samples: usize, seed: u64) -> Result<IndexEstimate> {
    IndexSearch::new(samples, seed).run(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{diamond, hexagon, square};
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> OperatorMatrix {
        OperatorMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn identity_has_norm_and_radius_one() {
        for s in [hexagon(), square(2), diamond(3)] {
            let id = OperatorMatrix::identity(s.dim());
            assert_eq!(op_norm(&s, &id).unwrap(), int(1));
            assert_eq!(num_radius(&s, &id).unwrap(), int(1));
        }
    }

    #[test]
    fn small_operator_values() {
        assert_eq!(
            op_norm(&hexagon(), &m(&[&[1, 0], &[0, 0]])).unwrap(),
            int(1)
        );
        assert_eq!(
            op_norm(&square(2), &m(&[&[0, 1], &[1, 0]])).unwrap(),
            int(1)
        );
        assert_eq!(
            num_radius(&diamond(2), &m(&[&[0, 1], &[0, 0]])).unwrap(),
            int(1)
        );
    }

    #[test]
    fn hexagon_has_a_half_ratio_operator() {
        let t = m(&[&[-1, -1], &[0, 1]]);
        assert_eq!(index_ratio(&hexagon(), &t).unwrap(), Some(ratio(1, 2)));
    }

    #[test]
    fn multiples_of_identity_have_ratio_one() {
        let hex = hexagon();
        for k in [ratio(1, 3), int(-2), int(5)] {
            let t = OperatorMatrix::scalar(2, &k);
            assert_eq!(index_ratio(&hex, &t).unwrap(), Some(int(1)));
        }
        assert_eq!(index_ratio(&hex, &OperatorMatrix::zeros(2)).unwrap(), None);
    }

    #[test]
    fn mismatched_operator_is_rejected() {
        assert!(op_norm(&hexagon(), &OperatorMatrix::identity(3)).is_err());
        assert!(num_radius(&hexagon(), &OperatorMatrix::identity(1)).is_err());
    }

    #[test]
    fn search_is_seed_deterministic() {
        let hex = hexagon();
        let a = index_search(&hex, 50, 3).unwrap();
        let b = index_search(&hex, 50, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            index_ratio(&hex, &a.witness).unwrap(),
            Some(a.lower_empirical.clone())
        );
        assert!(a.lower_empirical <= a.sampled_min);
    }

    #[test]
    fn zero_samples_is_an_error() {
        assert!(index_search(&hexagon(), 0, 1).is_err());
    }
}
