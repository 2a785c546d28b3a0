//! Exact operator calculus on Hilbert schemes of points on C².
//!
//! Everything is computed over exact multivariate rational functions in
//! the equivariant parameters t1, t2, the mass m, the Jack parameter θ,
//! and the character variables z1, z2:
//!
//! - [`algebra`]: rationals, sparse Laurent polynomials, rational
//!   functions, truncated q-series.
//! - [`partitions`]: diagrams, arms and legs, dominance, enumeration.
//! - [`symfunc`]: power-sum symmetric functions, the Jack inner product
//!   and Jack polynomials, the operator E = 1 + e_1 + e_2 + … and its
//!   adjoint, and the two sides of the Pieri-type evaluation.
//! - [`geometry`]: ideal-sheaf and Ext-bundle characters, Euler classes,
//!   tangent weights, and the adjoint-matter partition function.
//! - [`vertex`]: the Fock-space dictionary, the vertex operator, its
//!   z-graded matrix elements, and the operator trace.

pub mod algebra;
pub mod geometry;
pub mod partitions;
pub mod symfunc;
pub mod vertex;
