//! Primes and the bijection `n = p^alpha` between positive integers and
//! finitely supported multi-indices.
//!
//! Positions are 1-based: position `k` carries the exponent of the `k`-th
//! prime, so `12 = 2^2 * 3` is the index with exponent 2 at position 1 and
//! exponent 1 at position 2.

use std::cmp::Ordering;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};

/// Largest integer the shared prime table will sieve up to.
pub const PRIME_LIMIT: u64 = 1 << 28;

const INITIAL_SIEVE: u64 = 1 << 12;

struct PrimeTable {
    primes: Vec<u32>,
    sieved_to: u64,
}

static TABLE: RwLock<PrimeTable> = RwLock::new(PrimeTable {
    primes: Vec::new(),
    sieved_to: 1,
});

fn simple_sieve(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

impl PrimeTable {
    fn extend_to(&mut self, limit: u64) {
        if self.sieved_to < INITIAL_SIEVE {
            self.primes = simple_sieve(INITIAL_SIEVE);
            self.sieved_to = INITIAL_SIEVE;
        }
        while self.sieved_to < limit {
            // Doubling keeps every base prime <= sqrt(hi) inside the table.
            let lo = self.sieved_to + 1;
            let hi = (self.sieved_to * 2)
                .min(self.sieved_to + (1 << 24))
                .min(PRIME_LIMIT);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &self.primes {
                let p = u64::from(p);
                if p * p > hi {
                    break;
                }
                let start = (lo.div_ceil(p) * p).max(p * p);
                let mut m = start;
                while m <= hi {
                    composite[(m - lo) as usize] = true;
                    m += p;
                }
            }
            self.primes.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| (lo + i as u64) as u32),
            );
            self.sieved_to = hi;
        }
    }
}

fn with_primes_up_to<R>(limit: u64, f: impl FnOnce(&[u32]) -> R) -> Result<R> {
    if limit > PRIME_LIMIT {
        return Err(Error::Resource(format!(
            "primes up to {limit} requested; the prime table stops at {PRIME_LIMIT}"
        )));
    }
    {
        let table = TABLE.read().expect("prime table lock");
        if table.sieved_to >= limit {
            return Ok(f(&table.primes));
        }
    }
    let mut table = TABLE.write().expect("prime table lock");
    table.extend_to(limit);
    Ok(f(&table.primes))
}

fn with_prime_count<R>(count: usize, f: impl FnOnce(&[u32]) -> R) -> Result<R> {
    {
        let table = TABLE.read().expect("prime table lock");
        if table.primes.len() >= count {
            return Ok(f(&table.primes));
        }
    }
    let mut table = TABLE.write().expect("prime table lock");
    while table.primes.len() < count {
        if table.sieved_to >= PRIME_LIMIT {
            return Err(Error::Resource(format!(
                "the {count}-th prime lies beyond the prime table limit {PRIME_LIMIT}"
            )));
        }
        let next = (table.sieved_to.max(INITIAL_SIEVE) * 2).min(PRIME_LIMIT);
        table.extend_to(next);
    }
    Ok(f(&table.primes))
}

/// The `k`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("prime positions start at 1"));
    }
    with_prime_count(k, |p| u64::from(p[k - 1]))
}

/// 1-based position of a prime `p` in the prime sequence.
fn prime_position(p: u64) -> Result<u32> {
    with_primes_up_to(p, |primes| {
        primes
            .binary_search(&(p as u32))
            .map(|i| i as u32 + 1)
            .map_err(|_| Error::domain(format!("{p} is not prime")))
    })?
}

/// The first `m` primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    pub fn first(m: usize) -> Result<Self> {
        let primes = if m == 0 {
            Vec::new()
        } else {
            with_prime_count(m, |p| p[..m].iter().map(|&x| u64::from(x)).collect())?
        };
        Ok(Self { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Finitely supported exponent vector, stored as strictly increasing
/// `(position, exponent)` pairs with every exponent at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    entries: Vec<(u32, u32)>,
}

impl MultiIndex {
    /// The zero index, corresponding to `n = 1`.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds an index from `(position, exponent)` pairs. Zero exponents are
    /// dropped; positions must be >= 1 and strictly increasing.
    pub fn from_sparse<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut entries: Vec<(u32, u32)> = Vec::new();
        for (pos, exp) in pairs {
            if pos == 0 {
                return Err(Error::domain("multi-index positions start at 1"));
            }
            if let Some(&(last, _)) = entries.last() {
                if pos <= last {
                    return Err(Error::domain(format!(
                        "multi-index positions must increase strictly ({last} then {pos})"
                    )));
                }
            }
            if exp > 0 {
                entries.push((pos, exp));
            }
        }
        Ok(Self { entries })
    }

    /// Builds an index from a dense exponent list `(alpha_1, alpha_2, ...)`.
    pub fn from_dense(exponents: &[u32]) -> Self {
        Self {
            entries: exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32 + 1, e))
                .collect(),
        }
    }

    /// A single variable `z_pos^exp`.
    pub fn monomial(pos: u32, exp: u32) -> Result<Self> {
        Self::from_sparse([(pos, exp)])
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent(&self, pos: u32) -> u32 {
        self.entries
            .binary_search_by_key(&pos, |&(p, _)| p)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Total degree `|alpha|`.
    pub fn order(&self) -> u64 {
        self.entries.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn max_position(&self) -> u32 {
        self.entries.last().map_or(0, |&(p, _)| p)
    }

    /// Dense exponent vector of length `max_position()`.
    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = vec![0; self.max_position() as usize];
        for &(p, e) in &self.entries {
            out[p as usize - 1] = e;
        }
        out
    }

    /// Componentwise sum; the index of a product `m * n`.
    pub fn add(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            match (self.entries.get(i), other.entries.get(j)) {
                (Some(&(pa, ea)), Some(&(pb, eb))) if pa == pb => {
                    entries.push((pa, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a.0 < b.0 => {
                    entries.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    entries.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    entries.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    entries.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { entries }
    }
}

impl Ord for MultiIndex {
    /// Graded order: total degree first, then the first position where the
    /// exponents differ decides (smaller exponent sorts first).
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| {
            let len = self.max_position().max(other.max_position());
            (1..=len)
                .map(|p| self.exponent(p).cmp(&other.exponent(p)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense: Vec<String> = self.to_dense().iter().map(u32::to_string).collect();
        write!(f, "({})", dense.join(","))
    }
}

/// Exponent vector `alpha` with `p^alpha = n`.
pub fn factorize_to_index(n: u64) -> Result<MultiIndex> {
    if n == 0 {
        return Err(Error::domain("only positive integers have a prime factorization"));
    }
    let mut rem = n;
    let mut entries = Vec::new();
    let trial_limit = isqrt(n).min(PRIME_LIMIT);
    with_primes_up_to(trial_limit.max(2), |primes| {
        for (i, &p) in primes.iter().enumerate() {
            let p = u64::from(p);
            if p * p > rem {
                break;
            }
            let mut e = 0;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            if e > 0 {
                entries.push((i as u32 + 1, e));
            }
        }
    })?;
    // rem is now 1 or a prime: every prime <= min(sqrt(n), PRIME_LIMIT) was
    // tried, and a composite rem above PRIME_LIMIT fails the lookup below.
    if rem > 1 {
        entries.push((prime_position(rem)?, 1));
    }
    Ok(MultiIndex { entries })
}

/// `p^alpha`, failing on 64-bit overflow.
pub fn index_to_integer(alpha: &MultiIndex) -> Result<u64> {
    let overflow = || Error::Overflow(format!("p^{alpha} exceeds u64"));
    let mut n: u64 = 1;
    for &(pos, exp) in alpha.entries() {
        let p = nth_prime(pos as usize)?;
        let factor = p.checked_pow(exp).ok_or_else(overflow)?;
        n = n.checked_mul(factor).ok_or_else(overflow)?;
    }
    Ok(n)
}

/// `factorize_to_index(n)` for `n = 1..=max_n`, in integer order.
pub fn enumerate_indices(max_n: u64) -> Result<Vec<MultiIndex>> {
    if max_n == 0 {
        return Err(Error::domain("max_n must be at least 1"));
    }
    (1..=max_n).map(factorize_to_index).collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}
