//! Exact algebra: finite abelian groups, integer matrices and their normal
//! forms, quotient groups of lattices, and finite fields.

mod field;
mod group;
mod matrix;
mod quotient;
mod snf;

pub use field::{is_prime, prime_power, FieldElement, FiniteField};
pub use group::{AbelianGroup, GroupElement, MAX_GROUP_ORDER};
pub use matrix::{IntegerMatrix, RationalMatrix};
pub use quotient::{quotient_group, GroupHom};
pub use snf::{smith_normal_form, SmithForm};
