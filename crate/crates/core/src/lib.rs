//! Difference sets, B_h sequences and their lattice codes in `A_n`.
//!
//! A planar difference set of size `n + 1` is the same object as a linear
//! 1-perfect code in `A_n` under half the `l1` distance, and B_h sets of size
//! `n + 1` are linear codes in `Z^n` whose error shapes are
//! `S_n(r+, r-)` with `r+ + r- = h`. This crate builds both sides of that
//! correspondence with exact arithmetic and checks them against each other.

pub mod algebra;
pub mod channel;
pub mod codes;
pub mod error;
pub mod geometry;
pub mod limits;
pub mod schema;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
