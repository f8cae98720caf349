use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polytorus::PointInPolydisc;
use crate::scalar::Real;

/// Default cap on the number of centres of an [`EpsNet`].
pub const DEFAULT_NET_CAP: u64 = 100_000_000;

/// Closed polydisc `{|z_j| <= rho_j, j <= m} x {0}` with every `rho_j < 1`,
/// a compact subset of `l2 ∩ D^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactBox<T: Real> {
    radii: Vec<T>,
}

impl<T: Real> CompactBox<T> {
    pub fn new(radii: Vec<T>) -> Result<Self> {
        for (j, &rho) in radii.iter().enumerate() {
            if !(rho >= T::zero() && rho < T::one()) {
                return Err(Error::domain(format!(
                    "box radius {} at coordinate {} is outside [0, 1)",
                    rho,
                    j + 1
                )));
            }
        }
        Ok(Self { radii })
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn dims(&self) -> usize {
        self.radii.len()
    }

    /// Distance from the box to the complement of `l2 ∩ D^N`: `1 - max rho_j`.
    pub fn box_distance(&self) -> T {
        T::one() - self.radii.iter().copied().fold(T::zero(), T::max)
    }

    /// `(sum rho_j^2)^{1/2}`, the largest norm of a point of the box.
    pub fn outer_radius(&self) -> T {
        self.radii.iter().map(|&r| r * r).fold(T::zero(), |a, b| a + b).sqrt()
    }

    pub fn diameter(&self) -> T {
        self.outer_radius() + self.outer_radius()
    }

    pub fn contains(&self, z: &PointInPolydisc<T>) -> bool {
        z.coords().iter().enumerate().all(|(j, c)| match self.radii.get(j) {
            Some(&rho) => c.norm() <= rho,
            None => c.re == T::zero() && c.im == T::zero(),
        })
    }

    /// Point drawn uniformly from each coordinate disc independently.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PointInPolydisc<T> {
        let coords = self
            .radii
            .iter()
            .map(|&rho| {
                let r = rho * T::lit(rng.random::<f64>()).sqrt();
                let theta = T::TAU() * T::lit(rng.random::<f64>());
                clip(Complex::from_polar(r, theta), rho)
            })
            .collect();
        PointInPolydisc::new(coords).expect("box radii are < 1")
    }
}

pub fn box_distance<T: Real>(k: &CompactBox<T>) -> T {
    k.box_distance()
}

/// Scales `c` onto the disc of radius `rho` if it lies outside.
fn clip<T: Real>(c: Complex<T>, rho: T) -> Complex<T> {
    let norm = c.norm();
    if norm <= rho {
        return c;
    }
    let mut out = c * (rho / norm);
    while out.norm() > rho {
        out *= T::one() - T::epsilon() ;
    }
    out
}

/// Square lattice of spacing `h` in one complex coordinate, restricted to
/// the points within `h / sqrt 2` of the disc `|w| <= rho` and clipped onto
/// the disc. Every point of the disc is within `h / sqrt 2` of a centre.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscLattice<T> {
    pub radius: T,
    pub spacing: T,
    half: i64,
    count: u64,
}

impl<T: Real> DiscLattice<T> {
    fn origin() -> Self {
        Self {
            radius: T::zero(),
            spacing: T::one(),
            half: 0,
            count: 1,
        }
    }

    fn new(radius: T, spacing: T) -> Self {
        if radius == T::zero() {
            return Self::origin();
        }
        let half = (radius / spacing).ceil().to_i64().expect("lattice extent") + 1;
        let mut lattice = Self {
            radius,
            spacing,
            half,
            count: 0,
        };
        lattice.count = (-half..=half).map(|a| lattice.row(a).count() as u64).sum();
        lattice
    }

    fn upper_count(radius: T, spacing: T) -> u64 {
        if radius == T::zero() {
            return 1;
        }
        let side = 2 * ((radius / spacing).ceil().to_u64().unwrap_or(u64::MAX / 4) + 1) + 1;
        side.saturating_mul(side)
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn row(&self, a: i64) -> impl Iterator<Item = Complex<T>> + '_ {
        let reach = self.radius + self.spacing * T::FRAC_1_SQRT_2();
        let re = self.spacing * T::from_i64(a).expect("lattice index");
        (-self.half..=self.half).filter_map(move |b| {
            let u = Complex::new(re, self.spacing * T::from_i64(b).expect("lattice index"));
            (u.norm() <= reach).then(|| clip(u, self.radius))
        })
    }

    fn rows(&self) -> std::ops::RangeInclusive<i64> {
        -self.half..=self.half
    }

    pub fn points(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.rows().flat_map(move |a| self.row(a))
    }
}

/// Finite set of centres whose `eps`-balls cover a [`CompactBox`], stored as
/// the product of one [`DiscLattice`] per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsNet<T: Real> {
    pub parent: CompactBox<T>,
    pub radius: T,
    factors: Vec<DiscLattice<T>>,
    len: u64,
}

impl<T: Real> EpsNet<T> {
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn factors(&self) -> &[DiscLattice<T>] {
        &self.factors
    }

    /// Materializes every centre.
    pub fn centers(&self) -> Vec<PointInPolydisc<T>> {
        let mut out = Vec::with_capacity(self.len as usize);
        let mut coords = vec![Complex::new(T::zero(), T::zero()); self.factors.len()];
        visit_product(&self.factors, 0, &mut coords, &mut |c| {
            out.push(PointInPolydisc::new(c.to_vec()).expect("centres lie in the box"));
        });
        out
    }

    /// `max_c f(c)` over all centres, in parallel over the rows of the first
    /// coordinate. The result does not depend on scheduling.
    pub fn max_over_centers<F>(&self, f: F) -> T
    where
        F: Fn(&[Complex<T>]) -> T + Sync,
    {
        let dims = self.factors.len();
        if dims == 0 {
            return f(&[]);
        }
        let first = &self.factors[0];
        let rows: Vec<i64> = first.rows().collect();
        rows.par_iter()
            .map(|&a| {
                let mut best = T::neg_infinity();
                let mut coords = vec![Complex::new(T::zero(), T::zero()); dims];
                for c0 in first.row(a) {
                    coords[0] = c0;
                    visit_product(&self.factors, 1, &mut coords, &mut |c| {
                        best = best.max(f(c));
                    });
                }
                best
            })
            .reduce(T::neg_infinity, T::max)
    }
}

fn visit_product<T: Real>(
    factors: &[DiscLattice<T>],
    depth: usize,
    coords: &mut Vec<Complex<T>>,
    visit: &mut dyn FnMut(&[Complex<T>]),
) {
    if depth == factors.len() {
        visit(coords);
        return;
    }
    for c in factors[depth].points() {
        coords[depth] = c;
        visit_product(factors, depth + 1, coords, visit);
    }
}

/// `eps`-net of `k`: per-coordinate square lattices of spacing
/// `eps / sqrt(2m)` clipped to the coordinate discs, so every point of `k` is
/// within `eps / 2` of a centre. Fails with a resource error when the net
/// would exceed `cap` centres.
pub fn build_eps_net<T: Real>(k: &CompactBox<T>, eps: T, cap: u64) -> Result<EpsNet<T>> {
    if !(eps > T::zero()) || !eps.is_finite() {
        return Err(Error::domain(format!("net radius must be positive, got {eps}")));
    }
    let dims = k.dims();
    if eps >= k.outer_radius() {
        return Ok(EpsNet {
            parent: k.clone(),
            radius: eps,
            factors: vec![DiscLattice::origin(); dims],
            len: 1,
        });
    }
    let spacing = eps / T::from_count(2 * dims).sqrt();
    let too_big = || {
        Error::Resource(format!(
            "eps-net of radius {eps} on a {dims}-dimensional box exceeds {cap} centres"
        ))
    };
    // A disc keeps more than a quarter of its bounding lattice square.
    if k
        .radii()
        .iter()
        .any(|&rho| DiscLattice::upper_count(rho, spacing) / 4 > cap)
    {
        return Err(too_big());
    }
    let factors: Vec<DiscLattice<T>> = k
        .radii()
        .iter()
        .map(|&rho| DiscLattice::new(rho, spacing))
        .collect();
    let len = factors
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.len()))
        .ok_or_else(too_big)?;
    if len > cap {
        return Err(too_big());
    }
    Ok(EpsNet {
        parent: k.clone(),
        radius: eps,
        factors,
        len,
    })
}
