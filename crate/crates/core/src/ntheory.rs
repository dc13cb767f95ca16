//! Elementary number theory on machine integers and big integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Prime factorization of a machine integer, ascending.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// Prime factorization of an arbitrary positive integer, ascending.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if let Some(rest) = rest {
        if !rest.is_empty() {
            return Err(Error::FactorizationIncomplete(n.to_string()));
        }
    }
    Ok(found.into_iter().map(|(p, e)| (p, e as u32)).collect())
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Multiplicative order of `a` modulo `m`; `a` must be a unit.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotCoprime(a, m));
    }
    let mut ord = euler_phi(m);
    for (p, _) in factor_u64(ord) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// Smallest primitive root modulo a prime.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q == 2 {
        return Ok(1);
    }
    let fs = factor_u64(q - 1);
    (2..q)
        .find(|&g| fs.iter().all(|&(f, _)| pow_mod(g, (q - 1) / f, q) != 1))
        .ok_or(Error::NotPrime(q))
}

pub fn is_primitive_root(g: u64, q: u64) -> bool {
    is_prime(q) && !g.is_multiple_of(q) && mult_order(g, q).map(|o| o == q - 1).unwrap_or(false)
}

pub fn is_squarefree(d: i64) -> bool {
    d != 0 && factor_u64(d.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Exact integer p-th root of a rational integer, if one exists.
pub fn integer_root(n: &BigInt, p: u32) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    if n.is_negative() && p.is_multiple_of(2) {
        return None;
    }
    let r = n.abs().nth_root(p);
    let r = if n.sign() == Sign::Minus { -r } else { r };
    (num_traits::pow(r.clone(), p as usize) == *n).then_some(r)
}

/// p-adic valuation of a nonzero big integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::primes(n + 1)
        .into_iter()
        .filter(|&p| p <= n)
        .collect()
}

pub fn big_pow(b: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}
