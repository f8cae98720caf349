//! Hardy spaces of Dirichlet series on the infinite polytorus.
//!
//! Dirichlet polynomials `sum a_n n^{-s}` are lifted to power series on
//! `l2 ∩ D^N` through `n = p^alpha`. On that side the crate computes `H_p`
//! norms by quadrature on the polytorus, recovers coefficients by discrete
//! Cauchy integrals, checks growth, Lipschitz and tail bounds, and runs
//! finite-family versions of Montel-type extraction with explicit
//! certificates.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar.

// `!(x > 0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bohr;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod io;
pub mod montel;
pub mod polytorus;
pub mod scalar;
pub mod series;

pub use bohr::{factorize_to_index, index_to_integer, MultiIndex, PrimeBasis};
pub use error::{Error, Result};
pub use scalar::Real;

pub type DirichletF64 = series::DirichletPolynomial<f64>;
pub type MonomialF64 = series::MonomialExpansion<f64>;
pub type HpIndexF64 = series::HpIndex<f64>;
pub type PointF64 = polytorus::PointInPolydisc<f64>;
pub type NormEstimateF64 = polytorus::NormEstimate<f64>;
pub type BoundReportF64 = bounds::BoundReport<f64>;
pub type CompactBoxF64 = montel::CompactBox<f64>;
pub type EpsNetF64 = montel::EpsNet<f64>;
pub type ExtractionReportF64 = montel::ExtractionReport<f64>;

pub type DirichletF32 = series::DirichletPolynomial<f32>;
pub type MonomialF32 = series::MonomialExpansion<f32>;
pub type PointF32 = polytorus::PointInPolydisc<f32>;
pub type CompactBoxF32 = montel::CompactBox<f32>;
