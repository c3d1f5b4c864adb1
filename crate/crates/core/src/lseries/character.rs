/// The non-principal character mod 4: `+1` on `4n+1`, `-1` on `4n+3`, `0` on
/// even integers.
pub fn chi_mod4(n: u64) -> i8 {
    match n % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Number of positive divisors of `n >= 1`, by trial division.
pub fn divisor_count(n: u64) -> u64 {
    assert!(n >= 1, "divisor count of 0");
    let mut count = 1;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        count *= e + 1;
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        count *= 2;
    }
    count
}

/// Coefficient of `n^-s` in `L(s, chi)^2`, by summing `chi(d) chi(n/d)`
/// over the divisors of `n`.
pub fn autoconvolution_coefficient(n: u64) -> i64 {
    assert!(n >= 1, "coefficient index 0");
    let mut total = 0i64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            let term = (chi_mod4(d) * chi_mod4(e)) as i64;
            total += if d == e { term } else { 2 * term };
        }
        d += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(chi_mod4(5), 1);
        assert_eq!(chi_mod4(7), -1);
        assert_eq!(chi_mod4(10), 0);
        assert_eq!(chi_mod4(1), 1);
    }

    #[test]
    fn completely_multiplicative() {
        for a in 1..=1000u64 {
            for b in 1..=1000u64 {
                assert_eq!(chi_mod4(a * b), chi_mod4(a) * chi_mod4(b), "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(5), 2);
        assert_eq!(divisor_count(7), 2);
        assert_eq!(divisor_count(1024), 11);
        assert_eq!(divisor_count(999_983), 2);
        for n in 1..=500u64 {
            let direct = (1..=n).filter(|d| n % d == 0).count() as u64;
            assert_eq!(divisor_count(n), direct);
        }
    }

    #[test]
    fn coefficient_is_d_times_chi() {
        for n in 1..=2000u64 {
            assert_eq!(
                autoconvolution_coefficient(n),
                divisor_count(n) as i64 * chi_mod4(n) as i64,
                "n = {n}"
            );
        }
    }
}
