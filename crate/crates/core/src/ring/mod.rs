//! Exact arithmetic in the group ring `Z[Z^m]` of integer Laurent polynomials.

mod classify;
mod gcd;
mod parse;
mod poly;
mod xi;

pub use classify::{
    classify, coefficients_in, is_monic, is_special, is_xi_monic, is_xi_special, prime_witness,
    ElementClass,
};
pub use gcd::{coprime, gcd, gcd_all};
pub use parse::{parse_int_list, parse_poly};
pub use poly::{ExponentVector, LaurentPoly};
pub use xi::{
    apply_basis_change, lattice_det, split_along_xi, unimodular_inverse, CohomologyClass,
    LatticeMatrix,
};
