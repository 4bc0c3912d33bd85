//! Exact root-system algebra for the spectral difference equations of the
//! Heckman-Opdam hypergeometric function and of the class-one Whittaker
//! function.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! Pieri identities is done in exact rational arithmetic; floating point is
//! confined to [`rankone`] and [`whittaker`], which use `libm` for the
//! elementary and gamma functions.
//!
//! Module map:
//!
//! - [`rootsys`]: realized root systems, Weyl group actions, dominance,
//!   orbits, stabilizers and small weights.
//! - [`weylalg`]: the group algebra of the weight lattice ([`ExpPoly`]) and
//!   the exact action of the hypergeometric operator.
//! - [`jacobi`]: Jacobi polynomials by the eigenvalue recursion, with the
//!   closed leading-coefficient formula as an independent check.
//! - [`diffeq`]: coefficients of the reduced difference equation and exact
//!   verification through the Pieri formula.
//! - [`nonreduced`]: the same for the nonreduced system `BC_n`.
//! - [`rankone`]: Gauss hypergeometric evaluation and the rank-one
//!   difference equation / three-term recurrence.
//! - [`whittaker`]: confluent (Toda) coefficients, the strong-coupling limits
//!   and a rank-one Whittaker ODE oracle.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod diffeq;
pub mod error;
pub mod jacobi;
mod linalg;
pub mod nonreduced;
pub mod rankone;
pub mod rational;
pub mod rootsys;
pub mod weylalg;
pub mod whittaker;

pub use error::{Error, Result};
pub use rational::Q;
pub use rootsys::{Family, Multiplicities, RootDatum, Weight, WeylWord};
pub use weylalg::ExpPoly;
