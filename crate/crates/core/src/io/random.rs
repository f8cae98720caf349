use std::str::FromStr;

use num_complex::Complex;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bohr::factorize_to_index;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::DirichletPolynomial;

/// Distribution of each generated coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientLaw {
    /// Uniform on the closed unit disc.
    UnitDisc,
    /// Real and imaginary parts uniform on `[-1, 1)`.
    UnitSquare,
    /// Real and imaginary parts standard normal.
    Gaussian,
}

impl CoefficientLaw {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientLaw::UnitDisc => "unit-disc",
            CoefficientLaw::UnitSquare => "unit-square",
            CoefficientLaw::Gaussian => "gaussian",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> Complex<f64> {
        match self {
            CoefficientLaw::UnitDisc => {
                let r = rng.random::<f64>().sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                Complex::from_polar(r, theta)
            }
            CoefficientLaw::UnitSquare => Complex::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ),
            CoefficientLaw::Gaussian => Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
        }
    }
}

impl FromStr for CoefficientLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit-disc" => Ok(CoefficientLaw::UnitDisc),
            "unit-square" => Ok(CoefficientLaw::UnitSquare),
            "gaussian" => Ok(CoefficientLaw::Gaussian),
            _ => Err(Error::domain(format!(
                "unknown coefficient law {s:?}; use unit-disc, unit-square or gaussian"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    /// Exact number of nonzero terms.
    pub terms: usize,
    /// Indices are drawn from `1..=max_n`.
    pub max_n: u64,
    pub law: CoefficientLaw,
    /// Only indices built from the first this-many primes, when set.
    pub max_primes: Option<usize>,
}

/// Indices `n <= max_n` whose prime factors are among the first `max_primes`
/// primes (all of them when `None`).
pub fn admissible_indices(max_n: u64, max_primes: Option<usize>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let alpha = factorize_to_index(n)?;
        if max_primes.is_none_or(|m| alpha.max_position() as usize <= m) {
            out.push(n);
        }
    }
    Ok(out)
}

/// Seeded random Dirichlet polynomial with exactly `spec.terms` terms at
/// distinct indices drawn uniformly from the admissible ones.
pub fn gen_random<T: Real>(spec: &RandomSpec, seed: u64) -> Result<DirichletPolynomial<T>> {
    if spec.terms == 0 || spec.max_n == 0 {
        return Err(Error::domain("term count and max n must be at least 1"));
    }
    let pool = admissible_indices(spec.max_n, spec.max_primes)?;
    if spec.terms > pool.len() {
        return Err(Error::domain(format!(
            "{} terms requested but only {} admissible indices up to {}",
            spec.terms,
            pool.len(),
            spec.max_n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = sample(&mut rng, pool.len(), spec.terms);
    let mut terms = Vec::with_capacity(spec.terms);
    for k in chosen.iter() {
        let mut a = spec.law.sample(&mut rng);
        let mut c = Complex::new(T::lit(a.re), T::lit(a.im));
        while c.re == T::zero() && c.im == T::zero() {
            a = spec.law.sample(&mut rng);
            c = Complex::new(T::lit(a.re), T::lit(a.im));
        }
        terms.push((pool[k], c));
    }
    DirichletPolynomial::from_terms(terms)
}
