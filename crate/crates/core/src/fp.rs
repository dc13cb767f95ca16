//! Dense univariate polynomials over a prime field F_l, coefficients low to high.
//!
//! Used to split cyclotomic polynomials modulo primes (prime ideal
//! generators) and to extract p-th roots in residue fields.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ntheory::{inv_mod, mul_mod};

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I, l: u64) -> FpPoly {
    trim(
        coeffs
            .into_iter()
            .map(|c| c.rem_euclid(l as i64) as u64)
            .collect(),
    )
}

pub fn add(a: &[u64], b: &[u64], l: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % l)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], l: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + l - b.get(i).copied().unwrap_or(0)) % l)
            .collect(),
    )
}

pub fn scale(a: &[u64], c: u64, l: u64) -> FpPoly {
    trim(a.iter().map(|&x| mul_mod(x, c, l)).collect())
}

pub fn mul(a: &[u64], b: &[u64], l: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let l128 = l as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % l128;
        }
    }
    trim(out.into_iter().map(|c| c as u64).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], l: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv_lead = inv_mod(b[db], l).expect("leading coefficient not invertible");
    let mut r: FpPoly = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], inv_lead, l);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[shift + j] = (r[shift + j] + l - mul_mod(c, bj, l)) % l;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], l: u64) -> FpPoly {
    divrem(a, b, l).1
}

pub fn monic(a: &[u64], l: u64) -> FpPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(a, inv_mod(a[d], l).expect("nonzero lead"), l),
    }
}

pub fn gcd(a: &[u64], b: &[u64], l: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, l);
        x = y;
        y = r;
    }
    monic(&x, l)
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn inv_mod_poly(a: &[u64], m: &[u64], l: u64) -> Option<FpPoly> {
    // invariant: s*a ≡ r (mod m)
    let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, l));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, l);
        let s = sub(&s0, &mul(&q, &s1, l), l);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], l)?;
    Some(rem(&scale(&s0, c, l), m, l))
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], l: u64) -> FpPoly {
    rem(&mul(a, b, l), m, l)
}

pub fn powmod(a: &[u64], exp: &BigUint, m: &[u64], l: u64) -> FpPoly {
    let mut acc: FpPoly = rem(&[1], m, l);
    let base = rem(a, m, l);
    for i in (0..exp.bits()).rev() {
        acc = mulmod(&acc, &acc, m, l);
        if exp.bit(i) {
            acc = mulmod(&acc, &base, m, l);
        }
    }
    acc
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`.
/// Output is sorted lexicographically from the high coefficient down.
pub fn equal_degree_factor(f: &[u64], d: usize, l: u64, seed: u64) -> Vec<FpPoly> {
    let f = monic(f, l);
    let n = degree(&f).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (l << 20) ^ (n as u64));
    let mut done = Vec::new();
    let mut todo = vec![f];
    while let Some(g) = todo.pop() {
        let dg = degree(&g).unwrap();
        if dg == d {
            done.push(g);
            continue;
        }
        loop {
            let a: FpPoly = trim((0..dg).map(|_| rng.gen_range(0..l)).collect());
            if degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            let t = splitting_map(&a, d, &g, l);
            let h = if l == 2 {
                gcd(&t, &g, l)
            } else {
                gcd(&sub(&t, &[1], l), &g, l)
            };
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < dg {
                let (q, _) = divrem(&g, &h, l);
                todo.push(h);
                todo.push(monic(&q, l));
                break;
            }
        }
    }
    sort_polys(&mut done);
    done
}

// Odd l: a^((l^d - 1)/2). l = 2: the absolute trace a + a^2 + ... + a^(2^(d-1)).
fn splitting_map(a: &[u64], d: usize, g: &[u64], l: u64) -> FpPoly {
    if l == 2 {
        let mut t: FpPoly = Vec::new();
        let mut cur = rem(a, g, l);
        for _ in 0..d {
            t = add(&t, &cur, l);
            cur = mulmod(&cur, &cur, g, l);
        }
        t
    } else {
        let e = (BigUint::from(l).pow(d as u32) - BigUint::one()) >> 1;
        powmod(a, &e, g, l)
    }
}

pub fn sort_polys(v: &mut [FpPoly]) {
    v.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
    });
}

/// All p-th roots of `a` in the field F_l[x]/(h), `h` irreducible of degree `f`.
pub fn field_pth_roots(a: &[u64], h: &[u64], l: u64, p: u64) -> Vec<FpPoly> {
    let f = degree(h).unwrap() as u32;
    let a = rem(a, h, l);
    if a.is_empty() {
        return vec![Vec::new()];
    }
    let order = BigUint::from(l).pow(f) - BigUint::one();
    let pb = BigUint::from(p);
    if !(&order % &pb).is_zero() {
        // x -> x^p is a bijection
        let e = modinv_big(&pb, &order);
        return vec![powmod(&a, &e, h, l)];
    }
    if powmod(&a, &(&order / &pb), h, l) != vec![1] {
        return Vec::new();
    }
    let mut s = 0u32;
    let mut t = order.clone();
    while (&t % &pb).is_zero() {
        t /= &pb;
        s += 1;
    }
    // generator of the Sylow p-subgroup
    let c = (1u64..)
        .map(|k| field_element_from_index(k, l, f as usize))
        .find(|z| powmod(z, &(&order / &pb), h, l) != vec![1])
        .map(|z| powmod(&z, &t, h, l))
        .unwrap();
    let u = modinv_big(&pb, &t);
    let r0 = powmod(&a, &u, h, l);
    // r0^p / a lies in the Sylow subgroup; correct it by a p-th root of its inverse.
    let b = mulmod(
        &powmod(&r0, &pb, h, l),
        &inv_mod_poly(&a, h, l).unwrap(),
        h,
        l,
    );
    let binv = inv_mod_poly(&b, h, l).unwrap();
    let e = sylow_log(&binv, &c, s, p, h, l);
    debug_assert!((&e % &pb).is_zero());
    let s0 = powmod(&c, &(e / &pb), h, l);
    let root = mulmod(&r0, &s0, h, l);
    let omega = powmod(&c, &pb.pow(s - 1), h, l);
    let mut out = Vec::with_capacity(p as usize);
    let mut cur = root;
    for _ in 0..p {
        out.push(cur.clone());
        cur = mulmod(&cur, &omega, h, l);
    }
    out
}

fn field_element_from_index(mut k: u64, l: u64, f: usize) -> FpPoly {
    let mut out = Vec::with_capacity(f);
    for _ in 0..f {
        out.push(k % l);
        k /= l;
    }
    trim(out)
}

fn modinv_big(a: &BigUint, m: &BigUint) -> BigUint {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    let m = BigInt::from(m.clone());
    let x = ((e.x % &m) + &m) % &m;
    x.to_biguint().unwrap()
}

// Discrete log of `target` to base `c`, where c has order p^s.
fn sylow_log(target: &[u64], c: &[u64], s: u32, p: u64, h: &[u64], l: u64) -> BigUint {
    let pb = BigUint::from(p);
    let gamma = powmod(c, &pb.pow(s - 1), h, l);
    let gamma_pows: Vec<FpPoly> = (0..p)
        .map(|d| powmod(&gamma, &BigUint::from(d), h, l))
        .collect();
    let cinv = inv_mod_poly(c, h, l).unwrap();
    let mut e = BigUint::zero();
    for i in 0..s {
        let partial = powmod(&cinv, &e, h, l);
        let y = mulmod(target, &partial, h, l);
        let z = powmod(&y, &pb.pow(s - 1 - i), h, l);
        let d = gamma_pows
            .iter()
            .position(|g| *g == z)
            .expect("element outside the Sylow subgroup");
        e += BigUint::from(d as u64) * pb.pow(i);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_irreducible() {
        let h = vec![1, 1, 1]; // x^2 + x + 1 over F_2
        let a = vec![0, 1];
        let inv = inv_mod_poly(&a, &h, 2).unwrap();
        assert_eq!(mulmod(&a, &inv, &h, 2), vec![1]);
    }

    #[test]
    fn split_phi5_mod_11() {
        let phi5 = vec![1, 1, 1, 1, 1];
        let fs = equal_degree_factor(&phi5, 1, 11, 7);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1u64], |acc, f| mul(&acc, f, 11));
        assert_eq!(prod, phi5);
    }

    #[test]
    fn split_phi23_mod_2() {
        let phi = vec![1u64; 23];
        let fs = equal_degree_factor(&phi, 11, 2, 1);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| degree(f) == Some(11)));
        assert_eq!(fs.iter().fold(vec![1u64], |acc, f| mul(&acc, f, 2)), phi);
    }

    #[test]
    fn cube_roots_in_extension() {
        // F_49 = F_7[x]/(x^2 + 1): 3 | 48, so cubes have three cube roots
        let h = vec![1, 0, 1];
        let y = vec![3, 2];
        let a = powmod(&y, &BigUint::from(3u32), &h, 7);
        let roots = field_pth_roots(&a, &h, 7, 3);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&y));
        for r in roots {
            assert_eq!(powmod(&r, &BigUint::from(3u32), &h, 7), a);
        }
        // x is not a cube when x^16 != 1
        let nonres = vec![0, 1];
        if powmod(&nonres, &BigUint::from(16u32), &h, 7) != vec![1] {
            assert!(field_pth_roots(&nonres, &h, 7, 3).is_empty());
        }
    }
}
