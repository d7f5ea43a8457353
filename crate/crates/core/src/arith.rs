//! Small integer helpers shared by the field and counting code.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `gcd` with the convention `gcd(0, m) = m`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `base^exp mod modulus`; `modulus = 1` yields 0.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Splits a prime power `q = p^f` into `(p, f)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let (mut rest, mut f) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    Some((p, f))
}

/// Residue of `p^e - 1` modulo `n` (as a nonnegative integer below `n`).
///
/// Used for torsion counts: `gcd(d, p^e - 1) = gcd(d, r)` whenever `d | n`.
pub fn pe_minus_one_mod(p: u64, e: u64, n: u64) -> u64 {
    if n == 0 {
        panic!("modulus must be positive");
    }
    (pow_mod(p, e, n) + n - 1) % n
}

/// Modular inverse of `a` mod `n`, if it exists.
pub fn inv_mod(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(73));
        assert!(!is_prime(1) && !is_prime(9));
        assert_eq!(prime_factors(531_440), vec![2, 5, 7, 13, 73]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn gcd_zero_convention() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(4, 0), 4);
    }

    #[test]
    fn pe_minus_one() {
        assert_eq!(pe_minus_one_mod(3, 0, 8), 0);
        assert_eq!(pe_minus_one_mod(3, 1, 8), 2);
        assert_eq!(pe_minus_one_mod(3, 2, 8), 0);
        assert_eq!(pe_minus_one_mod(5, 3, 1), 0);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(-1, 5), Some(4));
    }
}
