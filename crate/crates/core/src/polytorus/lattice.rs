//! Rank-1 lattice rules on the unit cube `[0, 1)^m` (pulled back to the torus
//! by `x -> exp(2 pi i x)`).

use crate::scalar::Real;

const MAX_KOROBOV_CANDIDATES: u64 = 64;

/// Rank-1 lattice `{ frac(i g / n) : i = 0..n }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeRule {
    pub points: u64,
    pub generator: Vec<u64>,
}

impl LatticeRule {
    pub fn korobov(points: u64, dims: usize) -> Self {
        Self {
            points,
            generator: korobov_generator(points, dims),
        }
    }

    /// Coordinate `k` of the `i`-th point, shifted by `shift` modulo 1.
    pub fn coordinate<T: Real>(&self, i: u64, k: usize, shift: T) -> T {
        let base = (u128::from(i) * u128::from(self.generator[k]) % u128::from(self.points)) as f64
            / self.points as f64;
        let x = T::lit(base) + shift;
        x - x.floor()
    }
}

fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

/// Worst-case squared error of the lattice in the weighted Korobov space of
/// smoothness 2 (unit weights), used to rank candidate generators.
fn p2_criterion(points: u64, generator: &[u64]) -> f64 {
    let two_pi_sq = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    let mut acc = 0.0;
    for i in 0..points {
        let prod: f64 = generator
            .iter()
            .map(|&g| {
                let x = (u128::from(i) * u128::from(g) % u128::from(points)) as f64 / points as f64;
                1.0 + two_pi_sq * bernoulli2(x)
            })
            .product();
        acc += prod;
    }
    acc / points as f64 - 1.0
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Korobov generating vector `(1, a, a^2, ...) mod n`, with `a` picked from a
/// deterministic set of candidates coprime to `n` by the smallest P2 error.
pub fn korobov_generator(points: u64, dims: usize) -> Vec<u64> {
    let powers = |a: u64| -> Vec<u64> {
        let mut g = Vec::with_capacity(dims);
        let mut cur = 1 % points.max(1);
        for _ in 0..dims {
            g.push(cur);
            cur = (u128::from(cur) * u128::from(a) % u128::from(points)) as u64;
        }
        g
    };
    if points <= 3 || dims <= 1 {
        return powers(1);
    }
    let half = points / 2;
    let step = (half / MAX_KOROBOV_CANDIDATES).max(1);
    let mut best: Option<(f64, Vec<u64>)> = None;
    let mut a = 2;
    while a <= half {
        if gcd(a, points) == 1 {
            let g = powers(a);
            let err = p2_criterion(points, &g);
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, g));
            }
        }
        a += step;
    }
    best.map(|(_, g)| g).unwrap_or_else(|| powers(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_starts_with_one_and_is_deterministic() {
        let g = korobov_generator(1021, 5);
        assert_eq!(g[0], 1);
        assert_eq!(g.len(), 5);
        assert_eq!(g, korobov_generator(1021, 5));
    }

    #[test]
    fn chosen_generator_beats_the_trivial_one() {
        let g = korobov_generator(509, 3);
        assert!(p2_criterion(509, &g) < p2_criterion(509, &[1, 1, 1]));
    }

    #[test]
    fn lattice_integrates_trigonometric_monomials_with_nonresonant_frequency() {
        // The average of exp(2 pi i (h . x)) over the lattice is 1 iff h . g = 0 mod n.
        let rule = LatticeRule::korobov(1021, 2);
        let (h1, h2) = (1i64, 2i64);
        let mut re = 0.0;
        for i in 0..rule.points {
            let x = rule.coordinate::<f64>(i, 0, 0.0);
            let y = rule.coordinate::<f64>(i, 1, 0.0);
            re += (2.0 * std::f64::consts::PI * (h1 as f64 * x + h2 as f64 * y)).cos();
        }
        assert!((re / rule.points as f64).abs() < 1e-9);
    }
}
