//! Dirichlet polynomials, monomial expansions, and the Bohr lift between them.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Sub;

use num_complex::Complex;

use crate::bohr::{factorize_to_index, index_to_integer, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Real};

/// Integrability exponent `1 <= p < inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HpIndex<T>(T);

impl<T: Real> HpIndex<T> {
    pub fn new(p: T) -> Result<Self> {
        if !p.is_finite() || p < T::one() {
            return Err(Error::domain(format!("Hardy exponent must satisfy 1 <= p < inf, got {p}")));
        }
        Ok(Self(p))
    }

    pub fn two() -> Self {
        Self(T::lit(2.0))
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == T::lit(2.0)
    }
}

/// Finite Dirichlet series `sum a_n n^{-s}`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPolynomial<T: Real> {
    terms: BTreeMap<u64, Complex<T>>,
}

impl<T: Real> Default for DirichletPolynomial<T> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Real> DirichletPolynomial<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects `(n, a_n)` pairs. Repeated `n` are summed and zero
    /// coefficients dropped; `n = 0` is rejected.
    pub fn from_terms<I: IntoIterator<Item = (u64, Complex<T>)>>(terms: I) -> Result<Self> {
        let mut map: BTreeMap<u64, Complex<T>> = BTreeMap::new();
        for (n, a) in terms {
            if n == 0 {
                return Err(Error::domain("Dirichlet indices start at n = 1"));
            }
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::domain(format!("non-finite coefficient at n = {n}")));
            }
            *map.entry(n).or_insert_with(|| Complex::new(T::zero(), T::zero())) += a;
        }
        map.retain(|_, a| !is_zero(a));
        Ok(Self { terms: map })
    }

    /// The single term `n^{-s}`.
    pub fn monomial(n: u64) -> Result<Self> {
        Self::from_terms([(n, Complex::new(T::one(), T::zero()))])
    }

    pub fn terms(&self) -> &BTreeMap<u64, Complex<T>> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex<T>)> + '_ {
        self.terms.iter().map(|(&n, &a)| (n, a))
    }

    pub fn coefficient(&self, n: u64) -> Complex<T> {
        self.terms
            .get(&n)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `n` with `a_n != 0`, or 0 for the zero polynomial.
    pub fn support_bound(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Vertical shift `s -> s + eps`: `a_n -> a_n n^{-eps}`.
    pub fn translate(&self, eps: T) -> Result<Self> {
        if !(eps >= T::zero()) || !eps.is_finite() {
            return Err(Error::domain(format!("translation needs eps >= 0, got {eps}")));
        }
        if eps == T::zero() {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (&n, &a) in &self.terms {
            let scaled = a * translation_weight(n, eps);
            if !is_zero(&scaled) {
                terms.insert(n, scaled);
            }
        }
        Ok(Self { terms })
    }

    /// Keeps exactly the terms with `n <= x`.
    pub fn truncate(&self, x: T) -> Result<Self> {
        if !(x >= T::one()) {
            return Err(Error::domain(format!("truncation point must satisfy x >= 1, got {x}")));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(&n, _)| T::from_u64_lossy(n) <= x)
            .map(|(&n, &a)| (n, a))
            .collect();
        Ok(Self { terms })
    }

    /// Keeps the terms with `n > l`.
    pub fn tail_after(&self, l: u64) -> Self {
        Self {
            terms: self.terms.range(l.saturating_add(1)..).map(|(&n, &a)| (n, a)).collect(),
        }
    }

    /// Exact `H_2` norm `(sum |a_n|^2)^{1/2}` (monomials are orthonormal).
    pub fn h2_norm_exact(&self) -> T {
        let squares: Vec<T> = self.terms.values().map(|a| a.norm_sqr()).collect();
        pairwise_sum(&squares).sqrt()
    }

    /// `H_2` norm of `translate(eps) - truncate(l)`:
    /// `(sum_{n > l} |a_n|^2 n^{-2 eps})^{1/2}`.
    pub fn tail_h2_norm(&self, l: u64, eps: T) -> Result<T> {
        if l == 0 {
            return Err(Error::domain("tail cut l must be at least 1"));
        }
        Ok(self.tail_after(l).translate(eps)?.h2_norm_exact())
    }

    pub fn h2_distance(&self, other: &Self) -> T {
        (self - other).h2_norm_exact()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&n, &a)| (n, a * c))
            .filter(|(_, a)| !is_zero(a))
            .collect();
        Self { terms }
    }

    /// Bohr lift: the monomial expansion with `c_alpha = a_n` for `n = p^alpha`.
    pub fn lift(&self) -> Result<MonomialExpansion<T>> {
        bohr_lift(self)
    }
}

impl<T: Real> Sub for &DirichletPolynomial<T> {
    type Output = DirichletPolynomial<T>;

    fn sub(self, rhs: Self) -> DirichletPolynomial<T> {
        let mut terms = self.terms.clone();
        for (&n, &b) in &rhs.terms {
            *terms.entry(n).or_insert_with(|| Complex::new(T::zero(), T::zero())) -= b;
        }
        terms.retain(|_, a| !is_zero(a));
        DirichletPolynomial { terms }
    }
}

/// `n^{-eps}` evaluated as `exp(-eps ln n)`.
pub fn translation_weight<T: Real>(n: u64, eps: T) -> T {
    (-eps * T::from_u64_lossy(n).ln()).exp()
}

/// Finite power series `sum c_alpha z^alpha` in the variables `z_1, z_2, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialExpansion<T: Real> {
    terms: BTreeMap<MultiIndex, Complex<T>>,
}

impl<T: Real> Default for MonomialExpansion<T> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Real> MonomialExpansion<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects `(alpha, c_alpha)` pairs; repeats are summed, zeros dropped.
    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Complex<T>)>>(terms: I) -> Result<Self> {
        let mut map: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        for (alpha, c) in terms {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::domain(format!("non-finite coefficient at {alpha}")));
            }
            *map.entry(alpha).or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
        }
        map.retain(|_, c| !is_zero(c));
        Ok(Self { terms: map })
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::from_terms([(MultiIndex::zero(), c)]).expect("finite constant")
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Complex<T>> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, Complex<T>)> + '_ {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex<T> {
        self.terms
            .get(alpha)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Positions of the variables carrying a nonzero exponent, increasing.
    pub fn active_positions(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self
            .terms
            .keys()
            .flat_map(|a| a.entries().iter().map(|&(p, _)| p))
            .collect();
        set.into_iter().collect()
    }

    pub fn active_vars(&self) -> usize {
        self.active_positions().len()
    }

    /// Largest exponent of any single variable.
    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|a| a.entries().iter().map(|&(_, e)| e))
            .max()
            .unwrap_or(0)
    }

    /// Largest total degree `|alpha|`.
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    /// `(sum |c_alpha|^2)^{1/2}`, the `H_2` norm on the polytorus.
    pub fn h2_norm_exact(&self) -> T {
        let squares: Vec<T> = self.terms.values().map(|c| c.norm_sqr()).collect();
        pairwise_sum(&squares).sqrt()
    }

    /// `z -> f(r z)`: `c_alpha -> c_alpha r^{|alpha|}`.
    pub fn dilate(&self, r: T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, &c)| (a.clone(), c * r.powi(a.order() as i32)))
            .filter(|(_, c)| !is_zero(c))
            .collect();
        Self { terms }
    }

    /// Drops coefficients with modulus `<= tol`.
    pub fn prune(&self, tol: T) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(a, &c)| (a.clone(), c))
            .collect();
        Self { terms }
    }

    /// Inverse Bohr lift back to a Dirichlet polynomial.
    pub fn to_dirichlet(&self) -> Result<DirichletPolynomial<T>> {
        bohr_drop(self)
    }
}

impl<T: Real> Sub for &MonomialExpansion<T> {
    type Output = MonomialExpansion<T>;

    fn sub(self, rhs: Self) -> MonomialExpansion<T> {
        let mut terms = self.terms.clone();
        for (a, &b) in &rhs.terms {
            *terms
                .entry(a.clone())
                .or_insert_with(|| Complex::new(T::zero(), T::zero())) -= b;
        }
        terms.retain(|_, c| !is_zero(c));
        MonomialExpansion { terms }
    }
}

/// `c_{alpha(n)} = a_n` for every term.
pub fn bohr_lift<T: Real>(d: &DirichletPolynomial<T>) -> Result<MonomialExpansion<T>> {
    let mut terms = BTreeMap::new();
    for (n, a) in d.iter() {
        terms.insert(factorize_to_index(n)?, a);
    }
    Ok(MonomialExpansion { terms })
}

/// `a_{p^alpha} = c_alpha`; fails when some `p^alpha` overflows `u64`.
pub fn bohr_drop<T: Real>(f: &MonomialExpansion<T>) -> Result<DirichletPolynomial<T>> {
    let mut terms = BTreeMap::new();
    for (alpha, c) in f.iter() {
        terms.insert(index_to_integer(alpha)?, c);
    }
    Ok(DirichletPolynomial { terms })
}

fn is_zero<T: Real>(c: &Complex<T>) -> bool {
    c.re == T::zero() && c.im == T::zero()
}
