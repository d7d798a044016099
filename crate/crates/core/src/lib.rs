//! Exact algebra over ℚ, finite fields, their finite extensions and rational
//! function fields over finite fields, plus the finite-scale machinery built on
//! top: Sylvester resultants and Jacobians, splitting-detector ideals, atom
//! calculus for definable sets, and brute-force laboratories over small fields.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod fflab;
pub mod field;
pub mod morphisms;
pub mod poly;
pub mod setalg;
pub mod splitdetect;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement};
pub use poly::{MultiPoly, PolyMap};
