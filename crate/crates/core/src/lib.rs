//! Exact-arithmetic workbench for set-theoretic solutions of the Yang-Baxter
//! equation coming from skew braces.
//!
//! The crate is layered bottom-up:
//!
//! - [`finite`]: Cayley tables, group validation and exhaustive enumeration.
//! - [`brace`]: skew braces, the maps `sigma`/`tau` and the braid check.
//! - [`algebra`]: the `n^2`-dimensional algebra spanned by `h_a w_g`, its
//!   coproducts, antipodes, the twist `F` and the universal `R^F`.
//! - [`matrix`]: the fundamental representation and combinatorial matrices.
//! - [`yangian`]: rational-function matrices, RTT identities and the
//!   symbolic coproduct/antipode of the `gl_n` Yangian generators.
//! - [`io`]: JSON interchange and verification reports.
//!
//! Every equality the crate decides is exact; there are no tolerances.

pub mod algebra;
pub mod brace;
pub mod finite;
pub mod io;
pub mod limits;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod yangian;

pub use brace::{SkewBrace, YbMap};
pub use finite::{BinaryTable, GroupTable};
pub use limits::{LimitExceeded, Limits};
pub use rational::Rational;
pub use report::{Check, CheckStatus, PropertyReport, Verdict, Witness};
