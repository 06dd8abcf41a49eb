//! Exact computations on finite-dimensional polyhedral normed spaces.
//!
//! A space is stored as its unit ball with both representations: the ball
//! vertices and the facet functionals `f` with `B = {x : f(x) <= 1}`. All
//! arithmetic is exact over the rationals.
//!
//! ```
//! use normgeo::{builtin, certify};
//!
//! let hex = builtin::hexagon();
//! let cert = certify::strong_gl_certify(&hex).unwrap();
//! assert!(cert.is_certified());
//! assert_eq!(cert.bound, Some(normgeo::rational::int(2)));
//! ```

pub mod builtin;
pub mod certify;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod isomlab;
pub mod linalg;
pub mod lp;
pub mod numindex;
pub mod oracle;
pub mod rational;
pub mod sums;

pub use certify::{Certificate, Condition, Verdict, Witness};
pub use error::{Error, Result};
pub use geometry::PolySpace;
pub use linalg::{Functional, OperatorMatrix, Vector};
pub use rational::Rational;
