//! Exact symbolic computation for the quantum Schrödinger algebra U_q(s).
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`]: the coefficient field Q(t, z, w) with q = t², quantum integers.
//! * [`pbw`]: free words in E, F, K^{±1}, X, Y, Z and rewriting to PBW normal form.
//! * [`wmod`]: depth-graded weight modules, relation checks, singular vectors,
//!   submodules and intertwiner solving.
//! * [`verma`]: Verma modules Δ(λ, ż), the modules B_ż and B̃_ż, simple quotients.
//! * [`central`]: the Casimir elements, highest-weight eigenvalues and blocks.
//! * [`tensorfun`]: comultiplications, tensor realizations and Hom comparisons.
//! * [`fdim`]: finite-dimensional U_q(sl₂)-modules and the quiver functors.

pub mod central;
pub mod error;
pub mod exec;
pub mod fdim;
pub mod linalg;
pub mod pbw;
pub mod scalars;
pub mod tensorfun;
pub mod verma;
pub mod wmod;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use scalars::{qint, Rational, Scalar, Weight};
