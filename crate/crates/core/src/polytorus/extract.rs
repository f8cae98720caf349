use num_complex::Complex;

use crate::bohr::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::MonomialExpansion;

/// Sampling grid for [`extract_coefficients`]: `points` roots of unity per
/// circle, scaled by `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionGrid<T> {
    pub points: usize,
    pub radius: T,
}

impl<T: Real> ExtractionGrid<T> {
    /// Smallest alias-free grid on the unit torus for per-variable degree `d`.
    pub fn for_degree(d: u32) -> Self {
        Self {
            points: d as usize + 1,
            radius: T::one(),
        }
    }
}

/// Coefficients `c_alpha` of `f` for every `alpha` with all `alpha_k <= degree`
/// in the first `dims` variables, by the discrete Cauchy integral
///
/// `c_alpha = N^{-m} r^{-|alpha|} sum_{w in grid} f(r w) w^{-alpha}`.
///
/// Exact up to rounding when `f` is a polynomial of per-variable degree
/// `< N` and `r = 1`. `f` receives the `dims` coordinates of the sample point.
pub fn extract_coefficients<T, F>(
    f: F,
    dims: usize,
    degree: u32,
    grid: ExtractionGrid<T>,
) -> Result<MonomialExpansion<T>>
where
    T: Real,
    F: Fn(&[Complex<T>]) -> Complex<T>,
{
    let n = grid.points;
    let d = degree as usize;
    if n <= d {
        return Err(Error::domain(format!(
            "{n} grid points per circle alias degree {d}; need at least {}",
            d + 1
        )));
    }
    if !(grid.radius > T::zero() && grid.radius <= T::one()) {
        return Err(Error::domain(format!(
            "sampling radius must lie in (0, 1], got {}",
            grid.radius
        )));
    }
    let total = n
        .checked_pow(dims as u32)
        .ok_or_else(|| Error::Resource(format!("{n}^{dims} sample grid overflows")))?;

    let tau = T::TAU();
    let roots: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let (s, c) = (tau * T::from_count(k) / T::from_count(n)).sin_cos();
            Complex::new(c, s)
        })
        .collect();

    // Samples in row-major order with axis 0 varying fastest.
    let mut point = vec![Complex::new(T::zero(), T::zero()); dims];
    let mut data: Vec<Complex<T>> = (0..total)
        .map(|idx| {
            let mut rest = idx;
            for z in point.iter_mut() {
                *z = roots[rest % n] * grid.radius;
                rest /= n;
            }
            f(&point)
        })
        .collect();

    // One plain DFT per axis, keeping frequencies 0..=d.
    let mut shape = vec![n; dims];
    let inv_n = T::one() / T::from_count(n);
    for axis in 0..dims {
        let stride: usize = shape[..axis].iter().product();
        let outer: usize = shape[axis + 1..].iter().product();
        let mut next = Vec::with_capacity(stride * (d + 1) * outer);
        for o in 0..outer {
            for a in 0..=d {
                for s in 0..stride {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for j in 0..n {
                        let v = data[s + stride * (j + n * o)];
                        acc += v * roots[(n - (a * j) % n) % n];
                    }
                    next.push(acc * inv_n);
                }
            }
        }
        shape[axis] = d + 1;
        data = next;
    }

    let inv_r = T::one() / grid.radius;
    let mut terms = Vec::with_capacity(data.len());
    let mut exps = vec![0u32; dims];
    for (idx, &value) in data.iter().enumerate() {
        let mut rest = idx;
        for e in exps.iter_mut() {
            *e = (rest % (d + 1)) as u32;
            rest /= d + 1;
        }
        let order: u32 = exps.iter().sum();
        terms.push((MultiIndex::from_dense(&exps), value * inv_r.powi(order as i32)));
    }
    MonomialExpansion::from_terms(terms)
}
