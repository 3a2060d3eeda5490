//! Exact rational linear algebra.
//!
//! Dense matrices over arbitrary-precision rationals with Gaussian
//! elimination, kernels, cokernels (with recorded projection + section),
//! Kronecker products, and general linear solving. On top of that sit
//! [`Algebra`] (finite-dimensional unital associative algebras given by
//! structure constants) and [`Bimodule`] (spaces with families of commuting
//! unital actions), with relative tensor products computed as coequalizers.
//!
//! Everything is exact: there is no rounding anywhere, and every equality
//! is literal entrywise equality.

mod algebra;
mod bimodule;
mod mat;

pub use algebra::Algebra;
pub use bimodule::{coequalize, relative_tensor, Bimodule};
pub use mat::{action_at, apply_at, perm_tensor, rat, rat_int, Mat, Rat, SolveOutcome};
