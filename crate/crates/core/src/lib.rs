//! Exact computation of the asymptotic Morse-number invariants of free chain
//! complexes over `Z[Z^m]`.
//!
//! A complex is given by boundary matrices of integer Laurent polynomials.
//! From it we compute the fraction-field Betti numbers `B_p`, the counts
//! `Q_p` of non-numerically-prime reduced Fitting ideals, the predicted growth
//! rate `B + 2Q` of Morse numbers of cyclic covers, and the gcd ladders of the
//! Fitting ideals. The `oracle` module checks these predictions against exact
//! Morse numbers of truncated and covering complexes over `Z`, computed with
//! Smith normal forms.

pub mod cli;
pub mod complex;
pub mod error;
pub mod invariants;
pub mod matrix;
pub mod novikov;
pub mod oracle;
pub mod ring;
pub mod ser;

pub use error::{Error, ParseError, Result};
