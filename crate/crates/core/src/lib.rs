//! Numerical verification of sharp operator-preserving inequalities between
//! complex polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: dense complex polynomials (Horner evaluation, derivative,
//!   conjugate-reciprocal transform, argument scaling).
//! * [`bnop`]: the three-term `B_n` operator family with its validity
//!   certificate.
//! * [`circle`]: maximum/minimum modulus on circles, root finding and
//!   disk zero-location predicates.
//! * [`ineq`]: one evaluator per inequality, each returning signed slacks.
//! * [`harness`]: seeded random case generation, suite execution and
//!   JSON/CSV reports.

pub mod bnop;
pub mod circle;
mod error;
pub mod harness;
pub mod ineq;
pub mod poly;

pub use bnop::BnOperator;
pub use circle::{CircleExtremum, ExtremumKind};
pub use error::{Error, Result};
pub use harness::{ParamMode, SuiteConfig, SuiteReport};
pub use ineq::{Case, CaseParams, Evaluator, SlackResult, StatementId};
pub use poly::ComplexPoly;

pub use num_complex::Complex64 as C64;
