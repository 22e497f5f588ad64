//! Exact rational scalars, dense matrices, affine forms and the linear
//! algebra used by every certificate.

pub mod affine;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use affine::{eval_affine_matrix, AffineForm, AffineMatrix, Assignment, VarId};
pub use linalg::{build_off_diagonal, det, pushforward_hessian, rank};
pub use matrix::RatMatrix;
pub use poly::{symbolic_det, Polynomial};
pub use rational::{parse_rational, Rational};
