//! A fixed enumeration of a countable dense subset of the polydisc.
//!
//! Index `k` is split into `2 * dims` natural numbers by interleaving its
//! bits, each number is mapped to a dyadic rational in `(-1, 1)` by
//! [`dyadic`], and the resulting real and imaginary parts form the point.
//! Points with some coordinate of modulus `>= 1` are skipped. Every point
//! with dyadic coordinates in the open polydisc eventually appears, and
//! `k = 0` gives the origin.

use num_complex::Complex;

use super::compact::CompactBox;
use crate::polytorus::PointInPolydisc;
use crate::scalar::Real;

/// The `i`-th dyadic rational of `(-1, 1)`: `0, 1/2, -1/2, 1/4, -1/4, 3/4,
/// -3/4, 1/8, ...` (level `L` lists the odd multiples of `2^-L`).
pub fn dyadic(i: u64) -> f64 {
    if i == 0 {
        return 0.0;
    }
    // Level L occupies i in [2^L - 1, 2^{L+1} - 2].
    let level = 63 - (i + 1).leading_zeros() as u64;
    let offset = i + 1 - (1u64 << level);
    let numerator = 2 * (offset / 2) + 1;
    let value = numerator as f64 / (1u64 << level) as f64;
    if offset.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

fn deinterleave(mut k: u64, parts: usize) -> Vec<u64> {
    let mut out = vec![0u64; parts];
    let mut bit = 0;
    while k != 0 {
        for slot in out.iter_mut() {
            *slot |= (k & 1) << bit;
            k >>= 1;
        }
        bit += 1;
    }
    out
}

fn raw_points(dims: usize) -> impl Iterator<Item = Vec<(f64, f64)>> {
    (0u64..).filter_map(move |k| {
        let parts = deinterleave(k, 2 * dims);
        let coords: Vec<(f64, f64)> = parts
            .chunks(2)
            .map(|pair| (dyadic(pair[0]), dyadic(pair[1])))
            .collect();
        coords
            .iter()
            .all(|&(x, y)| x * x + y * y < 1.0)
            .then_some(coords)
    })
}

/// The first `count` points of the enumeration in `dims` coordinates.
pub fn dense_enumerate<T: Real>(count: usize, dims: usize) -> Vec<PointInPolydisc<T>> {
    raw_points(dims)
        .take(count)
        .map(|c| {
            let coords = c
                .into_iter()
                .map(|(x, y)| Complex::new(T::lit(x), T::lit(y)))
                .collect();
            PointInPolydisc::new(coords).expect("enumerated points lie in the polydisc")
        })
        .collect()
}

/// The same enumeration with coordinate `j` scaled by `rho_j`: a dense
/// sequence in the box.
pub fn dense_enumerate_in<T: Real>(count: usize, k: &CompactBox<T>) -> Vec<PointInPolydisc<T>> {
    raw_points(k.dims())
        .take(count)
        .map(|c| {
            let coords = c
                .into_iter()
                .zip(k.radii())
                .map(|((x, y), &rho)| Complex::new(T::lit(x) * rho, T::lit(y) * rho))
                .collect();
            PointInPolydisc::new(coords).expect("box radii are < 1")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_sequence_prefix() {
        let got: Vec<f64> = (0..7).map(dyadic).collect();
        assert_eq!(got, vec![0.0, 0.5, -0.5, 0.25, -0.25, 0.75, -0.75]);
        assert_eq!(dyadic(7), 0.125);
        assert!((0..10_000).all(|i| dyadic(i).abs() < 1.0));
    }

    #[test]
    fn dyadics_are_distinct() {
        let mut v: Vec<f64> = (0..4096).map(dyadic).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        assert_eq!(v.len(), 4096);
    }

    #[test]
    fn enumeration_properties() {
        let pts = dense_enumerate::<f64>(500, 2);
        assert_eq!(pts.len(), 500);
        assert_eq!(pts[0].norm2(), 0.0);
        assert!(pts.iter().all(|p| p.norm_inf() < 1.0 && p.coords().len() == 2));
        assert_eq!(pts, dense_enumerate::<f64>(500, 2));
    }

    #[test]
    fn enumeration_gets_close_to_any_point() {
        let pts = dense_enumerate::<f64>(5000, 1);
        let target = Complex::new(-0.31, 0.62);
        let best = pts
            .iter()
            .map(|p| (p.coords()[0] - target).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(best < 0.05, "{best}");
    }

    #[test]
    fn scaled_enumeration_stays_in_box() {
        let k = CompactBox::new(vec![0.5, 0.1]).unwrap();
        let pts = dense_enumerate_in(300, &k);
        assert!(pts.iter().all(|p| k.contains(p)));
    }
}
