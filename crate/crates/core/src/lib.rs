//! Constructive recognition of the Suzuki groups Sz(q), q = 2^(2m+1), in
//! their natural 4-dimensional representation over GF(q).
//!
//! The crate decides whether a set of 4x4 matrices generates Sz(q) (either
//! the standard copy or a conjugate of it), finds a conjugating matrix into
//! the standard copy, and writes elements as straight-line programs in the
//! given generators.

pub mod error;
pub mod experiments;
pub mod field;
pub mod genfile;
pub mod lasvegas;
pub mod linalg;
pub mod membership;
pub mod random;
pub mod recog;
pub mod selftest;
pub mod slp;
pub mod szstd;

pub use error::{Error, Result};
pub use field::{Field, Gf};
pub use linalg::{Mat4, ProjPoint};
pub use slp::{Slp, Word};
