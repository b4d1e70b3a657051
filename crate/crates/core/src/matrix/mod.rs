//! Dense matrices over `Z[Z^m]` and over `Z`.

mod int_matrix;
mod poly_matrix;
mod snf;

pub use int_matrix::IntMatrix;
pub use poly_matrix::{
    determinant, for_each_minor, minor_family_content, rank_ff, Combinations, Minor, PolyMatrix,
};
pub use snf::{determinantal_divisors, minor_gcd, snf, Snf};
