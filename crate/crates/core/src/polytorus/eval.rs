use num_complex::Complex;

use crate::bohr::PrimeBasis;
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, pairwise_sum_complex, Real};
use crate::series::{DirichletPolynomial, MonomialExpansion};

/// Finitely supported point of `l2 ∩ D^N`: every coordinate has modulus < 1.
/// Coordinates past the stored ones are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PointInPolydisc<T: Real> {
    coords: Vec<Complex<T>>,
}

impl<T: Real> PointInPolydisc<T> {
    pub fn new(coords: Vec<Complex<T>>) -> Result<Self> {
        for (j, z) in coords.iter().enumerate() {
            if !(z.norm() < T::one()) {
                return Err(Error::domain(format!(
                    "coordinate {} has modulus {} >= 1",
                    j + 1,
                    z.norm()
                )));
            }
        }
        Ok(Self { coords })
    }

    pub fn origin() -> Self {
        Self { coords: Vec::new() }
    }

    pub fn coords(&self) -> &[Complex<T>] {
        &self.coords
    }

    /// Coordinate at 1-based `pos`; zero outside the stored range.
    pub fn coord(&self, pos: usize) -> Complex<T> {
        pos.checked_sub(1)
            .and_then(|i| self.coords.get(i))
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn norm2(&self) -> T {
        let sq: Vec<T> = self.coords.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum(&sq).sqrt()
    }

    pub fn norm_inf(&self) -> T {
        self.coords.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `l2` distance to another point.
    pub fn distance(&self, other: &Self) -> T {
        let len = self.coords.len().max(other.coords.len());
        let sq: Vec<T> = (1..=len)
            .map(|p| (self.coord(p) - other.coord(p)).norm_sqr())
            .collect();
        pairwise_sum(&sq).sqrt()
    }
}

/// `sum c_alpha z^alpha` at arbitrary coordinates (missing ones are zero).
/// No modulus check, so torus points are allowed.
pub fn evaluate_coords<T: Real>(f: &MonomialExpansion<T>, coords: &[Complex<T>]) -> Complex<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let terms: Vec<Complex<T>> = f
        .iter()
        .map(|(alpha, c)| {
            alpha.entries().iter().fold(c, |acc, &(pos, exp)| {
                let z = coords.get(pos as usize - 1).copied().unwrap_or(zero);
                acc * z.powu(exp)
            })
        })
        .collect();
    pairwise_sum_complex(&terms)
}

/// Value of a monomial expansion at a point of the polydisc.
pub fn evaluate<T: Real>(f: &MonomialExpansion<T>, z: &PointInPolydisc<T>) -> Complex<T> {
    evaluate_coords(f, z.coords())
}

/// `sum a_n n^{-it}` on the imaginary axis.
pub fn evaluate_dirichlet_line<T: Real>(d: &DirichletPolynomial<T>, t: T) -> Complex<T> {
    let terms: Vec<Complex<T>> = d
        .iter()
        .map(|(n, a)| {
            let (s, c) = (t * T::from_u64_lossy(n).ln()).sin_cos();
            a * Complex::new(c, -s)
        })
        .collect();
    pairwise_sum_complex(&terms)
}

/// Torus point `(p_k^{-it})_{k <= m}` of the Kronecker flow.
pub fn kronecker_point<T: Real>(t: T, m: usize) -> Result<Vec<Complex<T>>> {
    Ok(PrimeBasis::first(m)?
        .primes()
        .iter()
        .map(|&p| {
            let (s, c) = (t * T::from_u64_lossy(p).ln()).sin_cos();
            Complex::new(c, -s)
        })
        .collect())
}
