//! Dense exact linear algebra over [`Rational`].

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A point of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(#[serde(with = "rational::serde_str::vec")] pub Vec<Rational>);

/// A linear functional, paired with a [`Vector`] by the dot product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(#[serde(with = "rational::serde_str::vec")] pub Vec<Rational>);

macro_rules! coord_type {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: Vec<Rational>) -> Self {
                Self(coords)
            }

            pub fn from_ints(xs: &[i64]) -> Self {
                Self(xs.iter().map(|&x| rational::int(x)).collect())
            }

            /// Builds from `(numerator, denominator)` pairs.
            pub fn from_ratios(xs: &[(i64, i64)]) -> Self {
                Self(xs.iter().map(|&(p, q)| rational::ratio(p, q)).collect())
            }

            pub fn zeros(n: usize) -> Self {
                Self(vec![Rational::zero(); n])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[Rational] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, k: &Rational) -> Self {
                Self(self.0.iter().map(|x| x * k).collect())
            }

            pub fn dot(&self, other: &[Rational]) -> Rational {
                debug_assert_eq!(self.0.len(), other.len());
                self.0
                    .iter()
                    .zip(other)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            }

            /// Zero-pads into a block `offset..offset + self.dim()` of a `total`-dim vector.
            pub fn embed(&self, offset: usize, total: usize) -> Self {
                let mut out = vec![Rational::zero(); total];
                out[offset..offset + self.0.len()].clone_from_slice(&self.0);
                Self(out)
            }

            pub fn concat(parts: &[&Self]) -> Self {
                Self(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
            }
        }

        impl Index<usize> for $t {
            type Output = Rational;
            fn index(&self, i: usize) -> &Rational {
                &self.0[i]
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.iter().map(|x| -x).collect())
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    };
}

coord_type!(Vector);
coord_type!(Functional);

impl Functional {
    pub fn apply(&self, x: &Vector) -> Rational {
        self.dot(&x.0)
    }

    /// The same coordinates read as a point (polarity swaps the two roles).
    pub fn as_vector(&self) -> Vector {
        Vector(self.0.clone())
    }
}

impl Vector {
    pub fn as_functional(&self) -> Functional {
        Functional(self.0.clone())
    }
}

/// A square matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorMatrix {
    rows: Vec<Vector>,
}

impl OperatorMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.into_iter().map(Vector).collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, k: &Rational) -> Self {
        let rows = (0..n)
            .map(|i| {
                Vector(
                    (0..n)
                        .map(|j| if i == j { k.clone() } else { Rational::zero() })
                        .collect(),
                )
            })
            .collect();
        Self { rows }
    }

    pub fn zeros(n: usize) -> Self {
        Self::scalar(n, &Rational::zero())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i].0[j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.rows[i].0[j] = value;
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vector::is_zero)
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        Vector(self.rows.iter().map(|r| r.dot(&x.0)).collect())
    }

    /// The pullback `f ∘ self`.
    pub fn pull_back(&self, f: &Functional) -> Functional {
        let n = self.dim();
        Functional(
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &f.0[i] * self.get(i, j)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                Vector(
                    (0..n)
                        .map(|j| {
                            (0..n).fold(Rational::zero(), |acc, k| {
                                acc + self.get(i, k) * rhs.get(k, j)
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        OperatorMatrix { rows }
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> OperatorMatrix {
        OperatorMatrix {
            rows: self.rows.iter().map(|r| r.scale(k)).collect(),
        }
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let n = self.dim();
        OperatorMatrix {
            rows: (0..n)
                .map(|j| Vector((0..n).map(|i| self.get(i, j).clone()).collect()))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<OperatorMatrix> {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.0.clone();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        if reduce(&mut a, n) < n {
            return None;
        }
        let rows = a.into_iter().map(|r| Vector(r[n..].to_vec())).collect();
        Some(OperatorMatrix { rows })
    }

    /// Block-diagonal embedding into a `total`-dim space at `offset`, zero elsewhere.
    pub fn embed(&self, offset: usize, total: usize) -> OperatorMatrix {
        let mut out = OperatorMatrix::zeros(total);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.set(offset + i, offset + j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Row-major entries as strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.0.iter().map(rational::format).collect())
            .collect()
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination on the first `cols` columns, in place.
/// Returns the rank; pivot rows end up first and normalised to 1.
fn reduce(a: &mut [Vec<Rational>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &k * p;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Rank of a list of equal-length rows.
pub fn rank(rows: &[&[Rational]]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.len();
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    reduce(&mut a, cols)
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    if reduce(&mut m, n) < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Greedily picks indices of linearly independent rows, in order.
pub fn independent_subset(rows: &[&[Rational]]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<&[Rational]> = chosen.iter().map(|&j| rows[j]).collect();
        trial.push(rows[i]);
        if rank(&trial) == trial.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// The linear map sending each `sources[i]` to `targets[i]`, if one exists.
///
/// `sources` must span the space; every pair is checked, not only a basis.
pub fn linear_map_through(sources: &[&Vector], targets: &[&Vector]) -> Option<OperatorMatrix> {
    let n = sources.first()?.dim();
    let src_rows: Vec<&[Rational]> = sources.iter().map(|v| v.coords()).collect();
    let basis = independent_subset(&src_rows);
    if basis.len() < n {
        return None;
    }
    // Solve M B = W row by row: each row m_i satisfies B^T m_i = (W row i).
    let bt: Vec<Vec<Rational>> = basis.iter().map(|&k| sources[k].0.clone()).collect();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let rhs: Vec<Rational> = basis.iter().map(|&k| targets[k].0[i].clone()).collect();
        rows.push(solve(&bt, &rhs)?);
    }
    let m = OperatorMatrix::from_rows(rows).ok()?;
    sources
        .iter()
        .zip(targets)
        .all(|(s, t)| &m.apply(s) == *t)
        .then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn inverse_round_trips() {
        let m = OperatorMatrix::from_rows(vec![vec![int(2), int(1)], vec![ratio(1, 2), int(3)]])
            .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), OperatorMatrix::identity(2));
        assert!(OperatorMatrix::from_int_rows(&[&[1, 2], &[2, 4]])
            .unwrap()
            .inverse()
            .is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        let a = [int(1), int(0), int(1)];
        let b = [int(0), int(1), int(1)];
        let c = [int(1), int(1), int(2)];
        assert_eq!(rank(&[&a, &b, &c]), 2);
        assert_eq!(independent_subset(&[&a, &c, &b]), vec![0, 1]);
    }

    #[test]
    fn linear_map_through_checks_every_pair() {
        let e1 = Vector::from_ints(&[1, 0]);
        let e2 = Vector::from_ints(&[0, 1]);
        let s = Vector::from_ints(&[1, 1]);
        let swap = linear_map_through(&[&e1, &e2, &s], &[&e2, &e1, &s]).unwrap();
        assert_eq!(
            swap.apply(&Vector::from_ints(&[3, 5])),
            Vector::from_ints(&[5, 3])
        );
        assert!(linear_map_through(&[&e1, &e2, &s], &[&e2, &e1, &e1]).is_none());
    }

    #[test]
    fn pull_back_matches_composition() {
        let m = OperatorMatrix::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let f = Functional::from_ints(&[5, -1]);
        let x = Vector::from_ints(&[2, 7]);
        assert_eq!(m.pull_back(&f).apply(&x), f.apply(&m.apply(&x)));
    }
}
