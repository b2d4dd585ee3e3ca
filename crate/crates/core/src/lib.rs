//! Computer-assisted proof that no homogeneous convex polyhedron with 5 or 6
//! vertices has exactly one unstable equilibrium.
//!
//! If such a polyhedron existed, its unstable vertex `v` would be the root of
//! a spanning tree of its graph in which every other vertex `i` is shadowed
//! by its parent `p`: `(r_i - r_p)ᵀ r_i <= 0` with the center of mass at the
//! origin. Pinning `r_v = (1, 0, 0)` and adding the condition that some
//! tetrahedron of the decomposition from `v` has a nonpositive first-coordinate
//! sum yields, per case, a small system of quadratic inequalities. Each one
//! is shown to be infeasible by nonnegative rational weights `y` for which
//! `Σ y_i Q̂_i` is positive definite.
//!
//! The crate is organized along that pipeline:
//!
//! - [`graph`]: catalog of maximal planar graphs and their vertex orbits
//! - [`cases`]: rooted spanning trees, tetrahedral decompositions, case list
//! - [`system`]: the quadratic systems and their augmented matrices
//! - [`sdp`]: floating-point certificate search and rounding
//! - [`verify`]: exact checking of rational certificates
//! - [`pipeline`]: batch runs, certificate files, audit, and reports
//!
//! [`verify`] depends only on [`system`] and [`exact`]; nothing the solver
//! computes is trusted beyond the weights it proposes.

pub mod cases;
pub mod error;
pub mod exact;
pub mod graph;
pub mod pipeline;
pub mod sdp;
pub mod system;
pub mod verify;

pub use error::{Error, Result};
