use num_complex::Complex;

use crate::bounds::BoundReport;
use crate::polytorus::evaluate_coords;
use crate::scalar::Real;
use crate::series::{DirichletPolynomial, MonomialExpansion};

/// A function on `l2 ∩ D^N`, evaluated at the finitely many stored
/// coordinates of a point (the rest are zero).
pub trait Holomorphic<T: Real>: Sync {
    fn eval(&self, z: &[Complex<T>]) -> Complex<T>;
}

impl<T: Real> Holomorphic<T> for MonomialExpansion<T> {
    fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        evaluate_coords(self, z)
    }
}

impl<T: Real, F> Holomorphic<T> for F
where
    F: Fn(&[Complex<T>]) -> Complex<T> + Sync,
{
    fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        self(z)
    }
}

/// What a refinement stage looked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// Index into the dense point list.
    DensePoint(usize),
    /// Dirichlet coefficient index `n`.
    Coefficient(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageCertificate<T> {
    pub stage: usize,
    pub probe: Probe,
    pub tolerance: T,
    /// Largest pairwise gap among the kept values.
    pub diameter: T,
    /// Cluster centre, the stage's candidate limit value.
    pub representative: Complex<T>,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LimitCandidate<T: Real> {
    Monomial(MonomialExpansion<T>),
    Dirichlet(DirichletPolynomial<T>),
}

/// Quantities specific to the translated Dirichlet extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletCertificate<T> {
    pub eps: T,
    pub eta: T,
    /// Uniform norm bound `M` of the family.
    pub norm_bound: T,
    /// Cut `l0` after which every translated tail is below `eta`.
    pub tail_cut: u64,
    /// Largest exact translated tail beyond `l0` across the family.
    pub tail_max: T,
    /// Per-coefficient gap `eta / (l0 L)`.
    pub gap_threshold: T,
    /// Largest pairwise translated distance on the certified tail.
    pub translated_max: T,
    /// Largest pairwise untranslated distance on the same tail.
    pub untranslated_max: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionReport<T: Real> {
    /// Strictly increasing indices into the input family.
    pub selected_indices: Vec<usize>,
    pub stages: Vec<StageCertificate<T>>,
    /// Stage at which no cluster of two or more members remained.
    pub exhausted_at: Option<usize>,
    /// Achieved Cauchy modulus on the certified tail.
    pub cauchy_modulus: T,
    /// Whether the modulus met the requested target, once certified.
    pub certified: Option<bool>,
    pub limit: Option<LimitCandidate<T>>,
    /// Norm bound `M + 1/2` the limit candidate was checked against.
    pub limit_norm_bound: Option<T>,
    pub limit_check: Option<BoundReport<T>>,
    pub dirichlet: Option<DirichletCertificate<T>>,
}

impl<T: Real> ExtractionReport<T> {
    pub(crate) fn from_stages(
        selected_indices: Vec<usize>,
        stages: Vec<StageCertificate<T>>,
        exhausted_at: Option<usize>,
    ) -> Self {
        let cauchy_modulus = stages.last().map_or(T::zero(), |s| s.diameter);
        Self {
            selected_indices,
            stages,
            exhausted_at,
            cauchy_modulus,
            certified: None,
            limit: None,
            limit_norm_bound: None,
            limit_check: None,
            dirichlet: None,
        }
    }
}
