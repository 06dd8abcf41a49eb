//! Finite ℓ1- and ℓ∞-sums of polyhedral spaces, and `C(K, E)` for finite `K`.
//!
//! With finitely many summands the c0-sum and the ℓ∞-sum are the same space;
//! ℓ∞-sums carry that in their label.

use crate::error::{Error, Result};
use crate::geometry::PolySpace;
use crate::linalg::{Functional, Vector};

/// Cap on generated vertex or facet lists.
pub const DEFAULT_SIZE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumKind {
    L1,
    Linf,
}

#[derive(Clone, Debug)]
pub struct SumSpec {
    pub kind: SumKind,
    pub parts: Vec<PolySpace>,
    pub cap: usize,
}

impl SumSpec {
    pub fn new(kind: SumKind, parts: Vec<PolySpace>) -> Self {
        Self {
            kind,
            parts,
            cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(PolySpace::dim).sum()
    }

    pub fn build(&self) -> Result<PolySpace> {
        if self.parts.is_empty() {
            return Err(Error::InvalidInput("a sum needs at least one part".into()));
        }
        let names: Vec<&str> = self.parts.iter().map(PolySpace::label).collect();
        let label = match self.kind {
            SumKind::L1 => format!("l1({})", names.join(", ")),
            SumKind::Linf => format!("linf[=c0]({})", names.join(", ")),
        };
        let total = self.total_dim();
        let offsets: Vec<usize> = self
            .parts
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.dim();
                Some(o)
            })
            .collect();
        let padded_vertices = || -> Vec<Vector> {
            self.parts
                .iter()
                .zip(&offsets)
                .flat_map(|(p, &o)| p.vertices().iter().map(move |v| v.embed(o, total)))
                .collect()
        };
        let padded_facets = || -> Vec<Functional> {
            self.parts
                .iter()
                .zip(&offsets)
                .flat_map(|(p, &o)| p.facets().iter().map(move |f| f.embed(o, total)))
                .collect()
        };
        let (vertices, facets) = match self.kind {
            SumKind::Linf => {
                let lists: Vec<&[Vector]> = self.parts.iter().map(PolySpace::vertices).collect();
                (product(&lists, self.cap, "vertices")?, padded_facets())
            }
            SumKind::L1 => {
                let lists: Vec<&[Functional]> = self.parts.iter().map(PolySpace::facets).collect();
                (padded_vertices(), product(&lists, self.cap, "facets")?)
            }
        };
        PolySpace::from_reps(label, vertices, facets)
    }
}

/// All concatenations of one element from each list.
fn product<T>(lists: &[&[T]], cap: usize, what: &'static str) -> Result<Vec<T>>
where
    T: Clone + Concat,
{
    let count = lists
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    if count > cap {
        return Err(Error::SizeLimit {
            what,
            count,
            limit: cap,
        });
    }
    let mut out: Vec<Vec<&T>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(|parts| T::concat(&parts)).collect())
}

trait Concat: Sized {
    fn concat(parts: &[&Self]) -> Self;
}

impl Concat for Vector {
    fn concat(parts: &[&Self]) -> Self {
        Vector::concat(parts)
    }
}

impl Concat for Functional {
    fn concat(parts: &[&Self]) -> Self {
        Functional::concat(parts)
    }
}

/// Unit ball is the product of the part balls; the norm is the max of part norms.
pub fn linf_sum(parts: &[PolySpace]) -> Result<PolySpace> {
    SumSpec::new(SumKind::Linf, parts.to_vec()).build()
}

/// Unit ball is the hull of the embedded part balls; the norm is the sum of part norms.
pub fn l1_sum(parts: &[PolySpace]) -> Result<PolySpace> {
    SumSpec::new(SumKind::L1, parts.to_vec()).build()
}

/// `C(K, E)` for a discrete `K` with `k` points, i.e. the k-fold ℓ∞-sum of `E`.
pub fn ck_power(e: &PolySpace, k: usize) -> Result<PolySpace> {
    if k == 0 {
        return Err(Error::InvalidInput("|K| must be at least 1".into()));
    }
    let label = format!("C(K,{}) |K|={k}", e.label());
    if k == 1 {
        return Ok(e.clone().with_label(label));
    }
    Ok(linf_sum(&vec![e.clone(); k])?.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{diamond, hexagon, segment, square};
    use crate::geometry::norm;
    use crate::rational::{int, ratio};

    #[test]
    fn square_is_linf_of_segments() {
        let s = linf_sum(&[segment(), segment()]).unwrap();
        assert_eq!(s.vertices(), square(2).vertices());
        assert_eq!(s.facets(), square(2).facets());
    }

    #[test]
    fn diamond_is_l1_of_segments() {
        let d = l1_sum(&[segment(), segment()]).unwrap();
        assert_eq!(d.vertices(), diamond(2).vertices());
        assert_eq!(d.facets(), diamond(2).facets());
    }

    #[test]
    fn hexagon_segment_counts() {
        let linf = linf_sum(&[hexagon(), segment()]).unwrap();
        assert_eq!(
            (linf.dim(), linf.vertices().len(), linf.facets().len()),
            (3, 12, 8)
        );
        let l1 = l1_sum(&[hexagon(), segment()]).unwrap();
        assert_eq!(
            (l1.dim(), l1.vertices().len(), l1.facets().len()),
            (3, 8, 12)
        );
    }

    #[test]
    fn norms_of_sums() {
        let linf = linf_sum(&[hexagon(), segment()]).unwrap();
        let x = Vector::from_ratios(&[(1, 1), (0, 1), (1, 2)]);
        assert_eq!(norm(&linf, &x).unwrap(), int(1));
        let l1 = l1_sum(&[hexagon(), segment()]).unwrap();
        let x = Vector::from_ints(&[1, 0, 1]);
        assert_eq!(norm(&l1, &x).unwrap(), int(2));
        let x = Vector::from_ratios(&[(1, 2), (1, 1), (-1, 4)]);
        assert_eq!(norm(&l1, &x).unwrap(), ratio(5, 4));
    }

    #[test]
    fn ck_power_counts() {
        let e = hexagon();
        let one = ck_power(&e, 1).unwrap();
        assert_eq!(one.vertices(), e.vertices());
        assert_eq!(one.facets(), e.facets());
        let three = ck_power(&e, 3).unwrap();
        assert_eq!(
            (three.dim(), three.vertices().len(), three.facets().len()),
            (6, 216, 18)
        );
        assert!(ck_power(&e, 0).is_err());
    }

    #[test]
    fn cap_fails_loudly() {
        let err = SumSpec::new(SumKind::L1, vec![hexagon(), hexagon()])
            .with_cap(35)
            .build();
        assert!(matches!(err, Err(Error::SizeLimit { count: 36, .. })));
    }

    #[test]
    fn l1_facets_are_linf_vertices_of_duals() {
        let (a, b) = (hexagon(), diamond(2));
        let l1 = l1_sum(&[a.clone(), b.clone()]).unwrap();
        let linf_dual = linf_sum(&[a.dual(), b.dual()]).unwrap();
        let as_vectors: Vec<Vector> = l1.facets().iter().map(Functional::as_vector).collect();
        assert_eq!(as_vectors, linf_dual.vertices());
    }
}
