use serde::Serialize;

use crate::error::{Error, Result};

/// Default largest sieve limit.
pub const DEFAULT_SIEVE_CAP: usize = 100_000_000;

/// `d(n)` for every `1 <= n <= limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTable {
    // counts[0] is unused; d(n) < 2^16 for every n below the default cap.
    counts: Vec<u16>,
}

impl DivisorTable {
    pub fn limit(&self) -> usize {
        self.counts.len() - 1
    }

    /// `d(n)`; panics if `n` is zero or above the limit.
    pub fn get(&self, n: usize) -> u32 {
        assert!(n >= 1 && n <= self.limit(), "index {n} outside 1..={}", self.limit());
        self.counts[n] as u32
    }

    /// `d(1), d(2), ..., d(limit)`.
    pub fn counts(&self) -> &[u16] {
        &self.counts[1..]
    }

    /// `sum_{n <= limit} d(n)`.
    pub fn divisor_sum(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Divisor counts by incrementing every multiple of every `k <= limit`.
pub fn divisor_sieve(limit: usize) -> Result<DivisorTable> {
    divisor_sieve_with_cap(limit, DEFAULT_SIEVE_CAP)
}

pub fn divisor_sieve_with_cap(limit: usize, cap: usize) -> Result<DivisorTable> {
    if limit == 0 {
        return Err(Error::Domain("sieve limit must be positive".into()));
    }
    if limit > cap {
        return Err(Error::ResourceCap {
            what: "sieve limit",
            requested: limit as u64,
            cap: cap as u64,
        });
    }
    let mut counts = vec![0u16; limit + 1];
    for k in 1..=limit {
        for m in (k..=limit).step_by(k) {
            counts[m] += 1;
        }
    }
    Ok(DivisorTable { counts })
}

/// `sum_{k <= n} floor(n / k)` by the hyperbola method in `O(sqrt n)`.
pub fn hyperbola_sum(n: u64) -> u64 {
    let r = n.isqrt();
    let head: u64 = (1..=r).map(|k| n / k).sum();
    2 * head - r * r
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Counts of `n` in the coincidence set at one checkpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityPoint {
    pub limit: u64,
    pub hits: u64,
    /// `hits / limit`, exact.
    pub density: crate::numerics::Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub points: Vec<DensityPoint>,
    /// The first (up to) ten `n >= 1` with `d(4n+1) = d(4n+3)`.
    pub first_members: Vec<u64>,
}

/// Whether `n` belongs to `{n : d(4n+1) = d(4n+3)}`, read from a table.
pub fn in_coincidence_set(table: &DivisorTable, n: u64) -> bool {
    let a = 4 * n as usize + 1;
    table.get(a) == table.get(a + 2)
}

/// Density of `{1 <= n <= limit : d(4n+1) = d(4n+3)}` at each checkpoint of
/// `grid` (values above `limit` are ignored; `limit` itself is always
/// reported last).
pub fn coincidence_density(limit: u64, grid: &[u64]) -> Result<CoincidenceReport> {
    if limit == 0 {
        return Err(Error::Domain("density limit must be positive".into()));
    }
    let table_limit = limit
        .checked_mul(4)
        .and_then(|v| v.checked_add(3))
        .ok_or_else(|| Error::Domain("density limit overflows".into()))?;
    let table = divisor_sieve(usize::try_from(table_limit).map_err(|_| Error::ResourceCap {
        what: "sieve limit",
        requested: table_limit,
        cap: DEFAULT_SIEVE_CAP as u64,
    })?)?;

    let mut checkpoints: Vec<u64> = grid.iter().copied().filter(|&g| g >= 1 && g < limit).collect();
    checkpoints.push(limit);
    checkpoints.sort_unstable();
    checkpoints.dedup();

    let mut points = Vec::with_capacity(checkpoints.len());
    let mut first_members = Vec::new();
    let mut hits = 0u64;
    let mut next = checkpoints.iter().peekable();
    for n in 1..=limit {
        if in_coincidence_set(&table, n) {
            hits += 1;
            if first_members.len() < 10 {
                first_members.push(n);
            }
        }
        if next.peek() == Some(&&n) {
            next.next();
            points.push(DensityPoint {
                limit: n,
                hits,
                density: crate::numerics::make_rational(hits as i64, n as i64)?,
            });
        }
    }
    Ok(CoincidenceReport { points, first_members })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ten_counts() {
        let t = divisor_sieve(10).unwrap();
        assert_eq!(t.counts(), &[1, 2, 2, 3, 2, 4, 2, 4, 3, 4]);
    }

    #[test]
    fn hyperbola_checksum() {
        let t = divisor_sieve(10_000).unwrap();
        let direct: u64 = (1..=10_000u64).map(|k| 10_000 / k).sum();
        assert_eq!(t.divisor_sum(), direct);
        assert_eq!(hyperbola_sum(10_000), direct);
        for n in [1u64, 2, 3, 17, 99, 100, 101] {
            let direct: u64 = (1..=n).map(|k| n / k).sum();
            assert_eq!(hyperbola_sum(n), direct, "n = {n}");
        }
    }

    #[test]
    fn prime_9973() {
        let is_prime = (2..9973u64).take_while(|d| d * d <= 9973).all(|d| 9973 % d != 0);
        assert!(is_prime);
        let t = divisor_sieve(10_000).unwrap();
        assert_eq!(t.get(9973), 2);
        let primes = primes_up_to(10_000);
        assert!(primes.iter().all(|&p| t.get(p as usize) == 2));
        assert_eq!(primes.len(), 1229);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(divisor_sieve_with_cap(11, 10), Err(Error::ResourceCap { .. })));
        assert!(divisor_sieve(0).is_err());
    }

    #[test]
    fn coincidence_members() {
        let report = coincidence_density(1000, &[10, 100]).unwrap();
        assert_eq!(report.first_members[0], 1);
        assert!(!report.first_members.contains(&2));
        let t = divisor_sieve(11).unwrap();
        assert_eq!((t.get(5), t.get(7)), (2, 2));
        assert_eq!((t.get(9), t.get(11)), (3, 2));
        let limits: Vec<u64> = report.points.iter().map(|p| p.limit).collect();
        assert_eq!(limits, [10, 100, 1000]);
        assert!(report.points.windows(2).all(|w| w[0].hits <= w[1].hits));
    }
}
