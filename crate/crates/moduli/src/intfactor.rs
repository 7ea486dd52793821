//! Integer factorization at desk scale: trial division plus Pollard rho
//! with a Miller-Rabin primality check, for inputs up to 10^12 (and in
//! practice well beyond). Used for square classes and Hilbert symbols.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FactorError {
    #[error("input height exceeds the 10^12 cap")]
    HeightExceeded,
    #[error("cannot factor zero")]
    ZeroInput,
}

pub const HEIGHT_CAP: u64 = 1_000_000_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic witness set for u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization of n >= 1, as (prime, exponent) pairs sorted by
/// prime.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    while d * d <= n && d < 100_000 {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += wheel[wi];
        wi = (wi + 1) % wheel.len();
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
        } else {
            let f = pollard_rho(m);
            stack.push(f);
            stack.push(m / f);
        }
    }
    out.sort_unstable();
    out
}

fn bigint_to_capped_u64(n: &BigInt) -> Result<u64, FactorError> {
    let a = n.abs();
    let v = a.to_u64().ok_or(FactorError::HeightExceeded)?;
    if v > HEIGHT_CAP {
        return Err(FactorError::HeightExceeded);
    }
    Ok(v)
}

/// Signed squarefree part of a nonzero integer: the product of the sign
/// and the primes appearing to odd exponent.
pub fn squarefree_part_int(n: &BigInt) -> Result<i64, FactorError> {
    if n.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let v = bigint_to_capped_u64(n)?;
    let mut out: i64 = if n.is_negative() { -1 } else { 1 };
    for (p, e) in factor_u64(v) {
        if e % 2 == 1 {
            out *= p as i64;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(999_999_999_989));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(999_999_999_991));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 360, 1_000_003, 999_966_000_289] {
            let fs = factor_u64(n);
            let prod: u64 = fs.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(fs.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part_int(&BigInt::from(12)).unwrap(), 3);
        assert_eq!(squarefree_part_int(&BigInt::from(-18)).unwrap(), -2);
        assert_eq!(squarefree_part_int(&BigInt::from(49)).unwrap(), 1);
        assert_eq!(squarefree_part_int(&BigInt::from(0)), Err(FactorError::ZeroInput));
    }
}
