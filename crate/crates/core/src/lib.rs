//! Exact evaluation, poset-based determinantal representations and
//! Hessian-rank lower bounds for the permanent, the hyperoctahedral permanent
//! and the multipermanent.

pub mod algebra;
pub mod certify;
pub mod cli;
pub mod error;
pub mod families;
pub mod io;
pub mod poset;

pub use error::{Error, Result};
