//! Small integer number theory used to index divisor lattices.

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The classical Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius: n must be positive");
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    fn factor_mobius(n: u64) -> i64 {
        let mut exps = Vec::new();
        let mut m = n;
        for p in 2..=n {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                exps.push(e);
            }
        }
        if exps.iter().any(|&e| e > 1) {
            0
        } else if exps.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7), vec![1, 7]);
        for n in 1..300 {
            assert_eq!(divisors(n), trial_divisors(n));
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        for n in 1..300 {
            assert_eq!(mobius(n), factor_mobius(n), "n = {n}");
        }
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 1..=1000u64 {
            let s: i64 = divisors(n).into_iter().map(mobius).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }
}
