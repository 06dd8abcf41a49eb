//! Named spaces shipped with the crate.

use crate::error::{Error, Result};
use crate::geometry::PolySpace;
use crate::linalg::{Functional, Vector};
use crate::sums::{l1_sum, linf_sum};

pub const MAX_BUILTIN_CUBE_DIM: usize = 4;

/// The 1-dimensional space with ball `[-1, 1]`.
pub fn segment() -> PolySpace {
    PolySpace::from_reps(
        "segment",
        vec![Vector::from_ints(&[1]), Vector::from_ints(&[-1])],
        vec![Functional::from_ints(&[1]), Functional::from_ints(&[-1])],
    )
    .expect("segment is valid")
}

/// ℓ∞ⁿ.
pub fn square(n: usize) -> PolySpace {
    if n == 1 {
        return segment().with_label("square(1)");
    }
    linf_sum(&vec![segment(); n])
        .expect("cube is valid")
        .with_label(format!("square({n})"))
}

/// ℓ1ⁿ.
pub fn diamond(n: usize) -> PolySpace {
    if n == 1 {
        return segment().with_label("diamond(1)");
    }
    l1_sum(&vec![segment(); n])
        .expect("cross-polytope is valid")
        .with_label(format!("diamond({n})"))
}

/// `‖(ξ, η)‖ = max{|η|, |ξ| + |η|/2}`.
pub fn hexagon() -> PolySpace {
    let vertices = [(1, 1, 0, 1), (1, 2, 1, 1), (-1, 2, 1, 1)]
        .iter()
        .flat_map(|&(a, b, c, d)| {
            let v = Vector::from_ratios(&[(a, b), (c, d)]);
            [-&v, v]
        })
        .collect();
    let facets = [(0, 1, 1, 1), (1, 1, 1, 2), (-1, 1, 1, 2)]
        .iter()
        .flat_map(|&(a, b, c, d)| {
            let f = Functional::from_ratios(&[(a, b), (c, d)]);
            [-&f, f]
        })
        .collect();
    PolySpace::from_reps("hexagon", vertices, facets).expect("hexagon is valid")
}

/// A rational octagon: `conv{(±1,0), (0,±1), (±2/3,±2/3)}`.
pub fn octagon() -> PolySpace {
    let mut vertices = Vec::new();
    for s in [-1, 1] {
        vertices.push(Vector::from_ints(&[s, 0]));
        vertices.push(Vector::from_ints(&[0, s]));
        for t in [-1, 1] {
            vertices.push(Vector::from_ratios(&[(2 * s, 3), (2 * t, 3)]));
        }
    }
    PolySpace::from_vertices("octagon", vertices).expect("octagon is valid")
}

/// `max{sup_k |ξ_k|, |ξ_1| + |ξ_2|/2}` on `k` coordinates: hexagon ⊕∞ (k - 2) segments.
pub fn hex_linf(k: usize) -> Result<PolySpace> {
    if k < 2 {
        return Err(Error::InvalidInput("hex_linf needs k >= 2".into()));
    }
    let label = format!("hex_linf_{k}");
    if k == 2 {
        return Ok(hexagon().with_label(label));
    }
    let mut parts = vec![hexagon()];
    parts.extend(std::iter::repeat_n(segment(), k - 2));
    Ok(linf_sum(&parts)?.with_label(label))
}

pub fn builtin_names() -> Vec<String> {
    let mut names = vec!["segment".to_string()];
    for n in 2..=MAX_BUILTIN_CUBE_DIM {
        names.push(format!("square({n})"));
    }
    for n in 2..=MAX_BUILTIN_CUBE_DIM {
        names.push(format!("diamond({n})"));
    }
    names.extend(["hexagon", "octagon", "hex_linf_3", "hex_linf_4"].map(String::from));
    names
}

pub fn builtin_spaces() -> Vec<PolySpace> {
    builtin_names()
        .iter()
        .map(|n| by_name(n).expect("listed builtin exists"))
        .collect()
}

/// Looks up `segment`, `square(n)`, `diamond(n)`, `hexagon`, `octagon` or `hex_linf_k`.
pub fn by_name(name: &str) -> Result<PolySpace> {
    let unknown = || Error::InvalidInput(format!("unknown builtin space {name:?}"));
    let arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
    };
    match name {
        "segment" => Ok(segment()),
        "hexagon" => Ok(hexagon()),
        "octagon" => Ok(octagon()),
        _ => {
            if let Some(n) = arg("square(") {
                (1..=MAX_BUILTIN_CUBE_DIM)
                    .contains(&n)
                    .then(|| square(n))
                    .ok_or_else(unknown)
            } else if let Some(n) = arg("diamond(") {
                (1..=MAX_BUILTIN_CUBE_DIM)
                    .contains(&n)
                    .then(|| diamond(n))
                    .ok_or_else(unknown)
            } else if let Some(k) = name.strip_prefix("hex_linf_").and_then(|k| k.parse().ok()) {
                hex_linf(k)
            } else {
                Err(unknown())
            }
        }
    }
}
