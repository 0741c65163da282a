//! Numerical ranges, radii and spectra of matrices over semi-Hilbertian spaces.
//!
//! A positive semidefinite operator `A` induces the semi-inner product
//! `<x, y>_A = <Ax, y>` on `C^n`. This crate builds the associated geometry
//! ([`PsdContext`]), the reduced operator on the range of `A^{1/2}`
//! ([`reduction::TildeOperator`]), the `A`-spectral machinery
//! ([`spectra`]), and the geometry engine for the `A`-`q`-numerical range
//! `W_{q,A}(T)` together with its radius `w_{q,A}(T)` ([`qrange`]).
//! Closed-form results (elliptic disks for `A`-self-adjoint matrices,
//! radius bounds for `A`-nilpotent operators) live in [`analytic`], and
//! [`report`] collects the pass/fail records produced by the verification
//! checks.

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod matrix;
pub mod qrange;
pub mod reduction;
pub mod report;
pub mod semihilbert;
pub mod spectra;

pub use error::Error;
pub use matrix::{CMatrix, CVector};
pub use qrange::{QValue, RangeEstimate, SampleConfig};
pub use semihilbert::{ClassificationReport, PsdContext, ToleranceConfig};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
