//! Exact arithmetic for tight contact structures on lens spaces, their
//! fillings and covers, and planar open books.

pub mod artin;
pub mod covers;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod limits;
pub mod mcg;
pub mod milnor;
pub mod numbers;
pub mod serde_int;
pub mod tight;

pub use error::{Error, Result};
pub use limits::Limits;
