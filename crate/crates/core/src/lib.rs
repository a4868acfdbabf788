//! Exact computation of Hecke-operator traces on level-one cusp forms.
//!
//! The crate has two independent routes to the same numbers and a layer of
//! Galois-theoretic consistency checks on top:
//!
//! - [`tfengine`] assembles the geometric side: an identity term, an
//!   elliptic term weighted by Hurwitz class numbers ([`classnum`]) and
//!   discrete-series character values ([`chars`]), and a hyperbolic
//!   correction. The result is the exact trace of `T_m` on the weight-`k`
//!   level-one cusp space.
//! - [`oracle`] computes the same traces spectrally from q-expansions of
//!   Delta and the Eisenstein series, via exact Hecke matrices on a
//!   monomial basis.
//! - [`orbital`] evaluates archimedean orbital integrals of the weight-`k`
//!   test functions as finite-dimensional characters, over the rationals
//!   and over real quadratic fields.
//! - [`galois`] verifies that everything in sight is algebraic and
//!   conjugation-equivariant: trace rationality, orbital-integral
//!   equivariance under weight swap, and the conjugation orbits of Hecke
//!   eigensystems.
//!
//! All arithmetic in the trusted path is exact ([`exact`]): big rationals
//! and elements of real quadratic fields. No floating point anywhere.

pub mod chars;
pub mod classnum;
pub mod exact;
pub mod galois;
pub mod oracle;
pub mod orbital;
pub mod tfengine;

pub use exact::{QuadElem, Rational};
pub use tfengine::{TraceBreakdown, TraceEngine};
