//! Small integer helpers shared by the analysis modules.

use num_integer::Integer;

pub fn lcm_u128(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Least common multiple of `values`, or `None` on overflow. The empty lcm is 1.
pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> Option<u128> {
    values.into_iter().try_fold(1u128, |acc, n| lcm_u128(acc, n as u128))
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Binomial coefficient with `binom(n, j) = 0` for `j > n`.
pub fn binom(n: u64, j: u64) -> u128 {
    if j > n {
        return 0;
    }
    let j = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_are_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn phi_small_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e);
        }
    }

    #[test]
    fn binom_convention() {
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(1, 2), 0);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(30, 15), 155_117_520);
    }

    #[test]
    fn lcm_of_nothing_is_one() {
        assert_eq!(lcm_all([]), Some(1));
        assert_eq!(lcm_all([4, 6]), Some(12));
        assert_eq!(lcm_all([u64::MAX, u64::MAX - 1, u64::MAX - 2]), None);
    }
}
