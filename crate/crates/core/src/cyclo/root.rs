//! Exact p-th roots in Q(ζ_m).
//!
//! The root of an integral element is found l-adically: pick a prime l not
//! dividing the conductor or the norm, take all p-th roots in the residue
//! fields of Z[ζ]/l, combine them by CRT, Newton-lift each combination to a
//! precision exceeding twice the coefficient bound, and keep the first lift
//! whose p-th power is exactly the input. Embedding magnitudes supply the
//! coefficient bound; correctness never rests on them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{cyclic_product, CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::ntheory::{integer_root, is_prime, mult_order, pow_mod, primes_up_to};

const MAX_COMBINATIONS: u128 = 1 << 16;

struct ResiduePlan {
    l: u64,
    factor_degree: usize,
    combinations: u128,
}

impl CyclotomicNumber {
    /// Some y with y^p = self, or `None` when no such y exists in the field.
    /// Any returned root has been checked by exact exponentiation.
    pub fn pth_power_root(&self, p: u64) -> Result<Option<CyclotomicNumber>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let field = self.field.clone();
        let pe = p as u32;
        if let Some(r) = self.as_rational() {
            if let (Some(a), Some(b)) = (integer_root(r.numer(), pe), integer_root(r.denom(), pe)) {
                return Ok(Some(field.rational(&BigRational::new(a, b))));
            }
        }
        // y^p = X/D  <=>  (yD)^p = X·D^(p-1), an integral target
        let d = self.den.clone();
        let lift = num_traits::pow(d.clone(), (p - 1) as usize);
        let target: Vec<BigInt> = self.num.iter().map(|c| c * &lift).collect();
        let target_elt = CyclotomicNumber::from_parts(field.clone(), target.clone(), BigInt::one());
        let norm = target_elt.norm().numer().clone();
        if integer_root(&norm, pe).is_none() {
            return Ok(None);
        }
        let plan = choose_prime(&field, p, &norm)?;
        let l = plan.l;
        let phi_l = fp::from_ints(field.0.phi_small.iter().copied(), l);
        let factors = if plan.factor_degree == field.degree() {
            vec![phi_l.clone()]
        } else {
            fp::equal_degree_factor(&phi_l, plan.factor_degree, l, 0x6b77)
        };
        let target_l = reduce_mod_l(&target, l);
        let mut local_roots = Vec::with_capacity(factors.len());
        for h in &factors {
            let roots = fp::field_pth_roots(&target_l, h, l, p);
            if roots.is_empty() {
                return Ok(None);
            }
            local_roots.push(roots);
        }
        let combos: u128 = local_roots.iter().map(|r| r.len() as u128).product();
        if combos > MAX_COMBINATIONS {
            return Err(Error::RootSearchTooLarge(combos));
        }
        debug_assert!(combos <= plan.combinations.max(1));
        let idempotents = crt_idempotents(&phi_l, &factors, l);

        let bound_bits = coefficient_bound_bits(&target_elt, p);
        let precision = ((bound_bits + 2) as f64 / (l as f64).log2())
            .ceil()
            .max(1.0) as u32;

        let mut choice = vec![0usize; factors.len()];
        loop {
            let mut y0: FpPoly = Vec::new();
            for (j, roots) in local_roots.iter().enumerate() {
                let term = fp::mulmod(&roots[choice[j]], &idempotents[j], &phi_l, l);
                y0 = fp::add(&y0, &term, l);
            }
            if let Some(z) = hensel_lift(&field, &target, &y0, &phi_l, p, l, precision) {
                let root = CyclotomicNumber::from_parts(field.clone(), z, d.clone());
                if root.pow(p) == *self {
                    return Ok(Some(root));
                }
            }
            // next combination, odometer order
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return Ok(None);
                }
                choice[k] += 1;
                if choice[k] < local_roots[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

fn choose_prime(field: &CyclotomicField, p: u64, norm: &BigInt) -> Result<ResiduePlan> {
    let m = field.conductor();
    let n = field.degree();
    let mut best: Option<ResiduePlan> = None;
    let mut seen = 0;
    for l in primes_up_to(50_000) {
        if l == 2 || l == p || m.is_multiple_of(l) || (norm % BigInt::from(l)).is_zero() {
            continue;
        }
        let f = mult_order(l % m.max(1), m.max(1))? as usize;
        let g = (n / f) as u32;
        let combinations = if pow_mod(l, f as u64, p) == 1 {
            (p as u128).saturating_pow(g)
        } else {
            1
        };
        if best.as_ref().is_none_or(|b| combinations < b.combinations) {
            best = Some(ResiduePlan {
                l,
                factor_degree: f,
                combinations,
            });
        }
        seen += 1;
        if seen >= 40 || best.as_ref().is_some_and(|b| b.combinations <= p as u128) && seen >= 8 {
            break;
        }
    }
    best.ok_or_else(|| Error::Invalid("no usable residue prime below 50000".into()))
}

fn reduce_mod_l(v: &[BigInt], l: u64) -> FpPoly {
    let lb = BigInt::from(l);
    fp::trim(
        v.iter()
            .map(|c| c.mod_floor(&lb).to_u64().unwrap())
            .collect(),
    )
}

fn crt_idempotents(phi: &[u64], factors: &[FpPoly], l: u64) -> Vec<FpPoly> {
    if factors.len() == 1 {
        return vec![vec![1]];
    }
    factors
        .iter()
        .map(|h| {
            let (cofactor, _) = fp::divrem(phi, h, l);
            let inv = fp::inv_mod_poly(&cofactor, h, l).expect("squarefree factorization");
            fp::mulmod(&cofactor, &inv, phi, l)
        })
        .collect()
}

fn coefficient_bound_bits(target: &CyclotomicNumber, p: u64) -> u64 {
    let gain = target.field.coefficient_gain().max(1.0);
    let top = target
        .log2_embedding_upper_bounds()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let log2_bound = gain.log2() + top / p as f64 + 1.0;
    log2_bound.max(0.0).ceil() as u64 + 1
}

struct ModRing<'a> {
    field: &'a CyclotomicField,
    modulus: BigInt,
}

impl ModRing<'_> {
    fn reduce(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        self.field
            .reduce(v)
            .into_iter()
            .map(|c| c.mod_floor(&self.modulus))
            .collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(cyclic_product(a, b, self.field.conductor() as usize))
    }

    fn pow(&self, a: &[BigInt], e: u64) -> Vec<BigInt> {
        let mut acc = self.reduce(vec![BigInt::one()]);
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = self.mul(&acc, &acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).mod_floor(&self.modulus))
            .collect()
    }

    fn scale(&self, a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| (x * k).mod_floor(&self.modulus)).collect()
    }
}

/// Newton iteration for y^p = target in (Z/l^k)[ζ], from a simple root mod l.
fn hensel_lift(
    field: &CyclotomicField,
    target: &[BigInt],
    y0: &[u64],
    phi_l: &[u64],
    p: u64,
    l: u64,
    precision: u32,
) -> Option<Vec<BigInt>> {
    let n = field.degree();
    let widen = |v: &[u64]| -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        out.resize(n, BigInt::zero());
        out
    };
    let lb = BigInt::from(l);
    let pb = BigInt::from(p);
    let deriv0 = {
        let yp1 = fp::powmod(y0, &BigUint::from(p - 1), phi_l, l);
        fp::scale(&yp1, p % l, l)
    };
    let w0 = fp::inv_mod_poly(&deriv0, phi_l, l)?;
    let mut y = widen(y0);
    let mut w = widen(&w0);
    let mut k = 1u32;
    while k < precision {
        k = (2 * k).min(precision);
        let ring = ModRing {
            field,
            modulus: num_traits::pow(lb.clone(), k as usize),
        };
        let yp = ring.pow(&y, p);
        let resid = ring.sub(&yp, &ring.reduce(target.to_vec()));
        y = ring.sub(&y, &ring.mul(&resid, &w));
        let deriv = ring.scale(&ring.pow(&y, p - 1), &pb);
        let two = ring.reduce(vec![BigInt::from(2)]);
        w = ring.mul(&w, &ring.sub(&two, &ring.mul(&deriv, &w)));
    }
    let modulus = num_traits::pow(lb, precision as usize);
    let half = &modulus >> 1;
    Some(
        y.into_iter()
            .map(|c| {
                let c = c.mod_floor(&modulus);
                if c > half {
                    c - &modulus
                } else {
                    c
                }
            })
            .map(|c| {
                if c.is_negative() && c.is_zero() {
                    BigInt::zero()
                } else {
                    c
                }
            })
            .collect(),
    )
}
