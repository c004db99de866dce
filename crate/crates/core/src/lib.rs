//! Exact arithmetic for the Carlitz cyclotomic tower over `F_q(t)`.
//!
//! The crate computes Stickelberger series and their character
//! specializations, power sums and special values of the Goss zeta function,
//! `ν`-adic `L`-series, and zeta numerators of the curves `F(Λ_P)`, together
//! with verifiers for the identities linking them.
//!
//! Layout, bottom up:
//! - [`field`], [`poly`]: `F_q` and `A = F_q[t]`, places, enumeration.
//! - [`carlitz`], [`group`]: Carlitz module, torsion, `(A/P^{n+1})^×`, splitting data.
//! - [`padic`], [`witt`], [`character`], [`group_ring`]: coefficient rings and characters.
//! - [`infty`], [`nu_adic`]: the completions at `∞` and at a finite prime.
//! - [`check`]: verdicts shared by the verifiers.
//! - [`theta`]: Stickelberger series.
//! - [`zeta`]: power sums, `Z(X, j)`, Goss zeta, `ν`-adic `L`-series, interpolation checks.
//! - [`curve`]: zeta numerators by two routes, class numbers and the Fitting check.

pub mod cache;
pub mod carlitz;
pub mod check;
pub mod character;
pub mod curve;
pub mod error;
pub mod field;
pub mod group;
pub mod group_ring;
pub mod infty;
pub mod nu_adic;
pub mod numth;
pub mod padic;
pub mod poly;
pub mod theta;
pub mod witt;
pub mod zeta;

pub use error::{Error, ErrorKind, Result};
pub use field::{Fe, Fq};
pub use poly::{Place, Poly};
