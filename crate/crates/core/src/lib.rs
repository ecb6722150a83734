//! Exact-arithmetic toolkit for flower polynomials of coin-graph wheels.
//!
//! * [`ratpoly`]: sparse multivariate polynomials over the rationals.
//! * [`mixedring`]: the ring with `y_i² = 1 − x_i²`, the cosine/sine sum
//!   expansions and the sign automorphisms acting on them.
//! * [`flowerpoly`]: the flower polynomials `P_n` and `C_n`, built three ways
//!   and cross-checked.
//! * [`soddy`]: rational three-petal flowers and Descartes quadruples.
//! * [`pythag`]: primitive solutions of `x² + βy² = z²`.
//! * [`geometry`]: validating, laying out and drawing concrete flowers.

pub mod error;
pub mod flowerpoly;
pub mod geometry;
pub mod mixedring;
pub mod par;
pub mod pythag;
pub mod rational;
pub mod ratpoly;
pub mod soddy;

pub use error::{Error, Result};
pub use mixedring::{MixedElement, SignVector};
pub use par::Exec;
pub use rational::Rational;
pub use ratpoly::{Monomial, SparsePoly};
