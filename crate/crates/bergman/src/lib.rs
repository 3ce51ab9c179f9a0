//! Numerical toolkit for interpolating sequences in weighted Bergman spaces
//! `B_alpha^p` on the unit ball of C^n.
//!
//! The crate is organized around the objects of that theory:
//!
//! * [`geometry`] — ball automorphisms, the invariant (pseudo-hyperbolic)
//!   distance, hyperbolic balls, Carleson windows and Korányi balls.
//! * [`quadrature`] — deterministic, seedable integration over the ball and
//!   sphere with respect to the normalized measures `dm`, `dsigma` and the
//!   invariant measure `dtau`.
//! * [`expr`] / [`spaces`] — symbolic analytic functions (kernel powers,
//!   affine factors, sums, products), space parameters `(n, p, alpha)`,
//!   weighted norms, the weighted composition isometry and inclusion
//!   witnesses.
//! * [`seqlab`] — sequence generation (maximal separated nets) and
//!   diagnostics: separation, the `K(a, p, q)` functionals, Carleson window
//!   and beta tests, symmetric-matrix halving partitions.
//! * [`solver`] — the constructive interpolation machinery: restriction,
//!   approximate extensions, Neumann/direct inversion, dual families,
//!   parameter transfer, point augmentation and perturbation stability.
//! * [`density`] — unit-disk upper uniform density and the derived
//!   interpolation verdict.

pub mod cplx;
pub mod density;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod grid;
pub mod quadrature;
pub mod rng;
pub mod seqlab;
pub mod solver;
pub mod spaces;
pub mod stats;

pub use error::Error;
pub use expr::Expr;
pub use geometry::{herm_inner, inv_distance, Automorphism, Point};
pub use quadrature::{Estimate, Method, QuadratureSpec};
pub use seqlab::{KReport, PointSeq};
pub use solver::{ExtensionParams, SolveMethod, SolveReport};
pub use spaces::{SpaceClass, SpaceParams, ValueSeq};

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
