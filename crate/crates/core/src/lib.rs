//! Exact arithmetic for the torsion-finiteness sieve: totient decompositions
//! of the inertia action, orders of `GL_n` over finite fields, explicit
//! Chebotarev-type bounds, Weil-number forcing arguments, and the quadratic
//! unit family used for infinitude.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod decomp;
mod error;
pub mod gl_orders;
pub mod quadfam;
pub mod report;
pub mod residues;
pub mod weil;

pub use error::{Error, Result};
