//! Exact computer algebra for the tautological Hopf algebras of 0-cycles in
//! d-folds.
//!
//! The crate is layered bottom-up:
//!
//! * [`series`]: exact rationals and truncated multivariate power series with
//!   `exp`, `log`, rational powers and the MacMahon function.
//! * [`combinatorics`]: partitions, vector splittings, the monomial/elementary
//!   symmetric-function transition and Chern-number input.
//! * [`hopf`]: the separated algebra `Q[q_{n,m}]` and the non-separated algebra
//!   `Q[q_λ]` with product, coproduct, counit, antipode, the primitive basis,
//!   gradings, the separated to non-separated morphism and vertical classes.
//! * [`theory`]: enumerative theories as multiplicative or primitive linear
//!   functionals, with the built-in families and `exp`/`log` between them.
//! * [`genfun`]: generating-function identities built on top of all of the above.
//! * [`wire`]: the JSON interchange formats.

pub mod combinatorics;
pub mod error;
pub mod genfun;
pub mod hopf;
pub mod rational;
pub mod series;
pub mod theory;
pub mod wire;

pub use error::{Error, Result};
pub use rational::Rational;
