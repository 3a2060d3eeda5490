//! Combinatorial (1+1)-dimensional cobordisms with corners, a word calculus
//! for their handle decompositions, and an exact TQFT evaluator.
//!
//! The crate is organised in four layers:
//!
//! - [`linalg`]: dense exact linear algebra over the rationals, plus algebras,
//!   bimodules and relative tensor products via coequalizers.
//! - [`manifold1d`]: the combinatorial model of signed point configurations,
//!   collared 1-cobordisms in canonical form, framed spheres and surgery.
//! - [`cerf`]: handle-decomposition words, the five rewrite rules relating
//!   them, and a bounded bidirectional equivalence search.
//! - [`tqft`] and [`derive`]: the evaluator into bimodules over a user
//!   algebra, the hypothesis checkers (handle cancellation, involution
//!   invariance, naturality), and the derivation of higher handles from
//!   lower ones.
//!
//! All arithmetic is exact; every equality the crate asserts is literal
//! matrix equality over `Q`.

pub mod cerf;
pub mod derive;
pub mod error;
pub mod linalg;
pub mod manifold1d;
pub mod par;
pub mod tqft;

pub use error::Error;
