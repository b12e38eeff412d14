//! Correctional power-series solver for systems of Caputo fractional
//! differential equations
//!
//! ```text
//! D^α y(t) = f(t, y(t)),   0 < α ≤ 1,   y(t₀) = y₀
//! ```
//!
//! where `f` is polynomial in the state and in `(t − t₀)^α`. The solution is
//! sought as a fractional polynomial `Σ cᵢ (t − t₀)^{iα}`; coefficients are
//! fixed one at a time by forcing the defect `D^α P − f(t, P)` and its
//! sequential Caputo derivatives to vanish at `t₀`.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below are what the CLI uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod conformable;
mod error;
pub mod field;
pub mod fracpoly;
pub mod metrics;
pub mod models;
pub mod rk4;
mod scalar;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use conformable::DiscrepancyReport;
pub use field::{Monomial, PolynomialVectorField};
pub use fracpoly::{FractionalPolynomial, PowerTerm};
pub use metrics::{ErrorRow, ErrorTable};
pub use models::ModelSpec;
pub use rk4::Trajectory;
pub use solver::{AcpsProblem, AcpsSolution};

pub type FracPoly64 = FractionalPolynomial<f64>;
pub type FracPoly32 = FractionalPolynomial<f32>;
pub type VectorField64 = PolynomialVectorField<f64>;
pub type VectorField32 = PolynomialVectorField<f32>;
pub type Problem64 = AcpsProblem<f64>;
pub type Problem32 = AcpsProblem<f32>;
pub type Solution64 = AcpsSolution<f64>;
pub type Solution32 = AcpsSolution<f32>;
pub type Trajectory64 = Trajectory<f64>;
pub type ErrorTable64 = ErrorTable<f64>;
pub type ModelSpec64 = ModelSpec<f64>;
