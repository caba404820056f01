//! Ranked posets, their total orders, exhaustive Macaulay verification, and
//! graded quotient rings with exact linear algebra.

pub mod constructions;
pub mod error;
pub mod export;
pub mod field;
pub mod hilbert;
pub mod linalg;
pub mod order;
pub mod par;
pub mod poset;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
