//! Small-integer number theory helpers shared by the other modules.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order. `n` must be positive.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && factorize(n as u64) == [(n as u64, 1)]
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let m = m.abs();
    if m == 1 {
        return Some(0);
    }
    let g = a.mod_floor(&m).extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.mod_floor(&m))
}

pub fn check_divides(d: i64, n: i64) -> Result<()> {
    if d <= 0 || n % d != 0 {
        return Err(Error::NotDivisor { d, n });
    }
    Ok(())
}

/// Validates an odd positive squarefree modulus.
pub fn check_odd_squarefree(n: i64) -> Result<()> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::NotOddPositive(n));
    }
    if !is_squarefree(n as u64) {
        return Err(Error::NotSquarefree(n));
    }
    Ok(())
}

/// Validates the level restriction used throughout: squarefree and coprime to 6.
pub fn check_level(n: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::NotOddPositive(n));
    }
    if !is_squarefree(n as u64) {
        return Err(Error::NotSquarefree(n));
    }
    if n.gcd(&6) != 1 {
        return Err(Error::NotCoprimeToSix(n));
    }
    Ok(())
}
