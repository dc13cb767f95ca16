use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{require_prime_conductor, FractionalIdeal};
use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::ntheory::{is_prime, mult_order, valuation_int};

/// A prime (q, g(ζ)) of Z[ζ_p], g a monic irreducible factor of Φ_p mod q.
#[derive(Clone)]
pub struct PrimeIdealAboveQ {
    field: CyclotomicField,
    q: u64,
    g: FpPoly,
    e: u32,
    f: u32,
    /// τ ∈ qP^{-1} with v_P(τ) = e - 1, so x ∈ P^k iff τ^k x ∈ q^k Z[ζ].
    tau: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealRepr {
    pub q: u64,
    pub g: Vec<u64>,
    pub e: u32,
    pub f: u32,
}

/// The primes above q in Q(ζ_p) with their exponents in qZ[ζ].
pub fn factor_rational_prime(
    q: u64,
    field: &CyclotomicField,
) -> Result<Vec<(PrimeIdealAboveQ, u32)>> {
    require_prime_conductor(field)?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let p = field.conductor();
    let n = field.degree();
    if q == p {
        let one_minus_zeta = &field.one() - &field.zeta();
        let tau = field.integer(p).checked_div(&one_minus_zeta)?;
        let prime = PrimeIdealAboveQ {
            field: field.clone(),
            q,
            g: vec![q - 1, 1],
            e: (p - 1) as u32,
            f: 1,
            tau: tau.numerators().to_vec(),
        };
        return Ok(vec![(prime, (p - 1) as u32)]);
    }
    let f = mult_order(q % p, p)? as usize;
    let phi = fp::from_ints(vec![1i64; n + 1], q);
    let factors = if f == n {
        vec![phi.clone()]
    } else {
        let mut fs = fp::equal_degree_factor(&phi, f, q, 0x7072);
        fp::sort_polys(&mut fs);
        fs
    };
    Ok(factors
        .into_iter()
        .map(|g| (PrimeIdealAboveQ::unramified(field, q, g, f as u32, &phi), 1))
        .collect())
}

impl PrimeIdealAboveQ {
    fn unramified(field: &CyclotomicField, q: u64, g: FpPoly, f: u32, phi: &[u64]) -> Self {
        let (cofactor, _) = fp::divrem(phi, &g, q);
        let mut tau: Vec<BigInt> = cofactor.iter().map(|&c| BigInt::from(c)).collect();
        tau = field.reduce(tau);
        PrimeIdealAboveQ {
            field: field.clone(),
            q,
            g,
            e: 1,
            f,
            tau,
        }
    }

    /// The degree-one prime (q, ζ - r) for a root r of Φ_p mod q.
    pub fn degree_one(field: &CyclotomicField, q: u64, r: u64) -> Result<Self> {
        require_prime_conductor(field)?;
        let p = field.conductor();
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let r = r % q;
        if q == p {
            return factor_rational_prime(q, field).map(|v| v[0].0.clone());
        }
        if crate::ntheory::pow_mod(r, p, q) != 1 || r == 1 {
            return Err(Error::Invalid(format!(
                "{r} is not a root of Φ_{p} mod {q}"
            )));
        }
        let phi = fp::from_ints(vec![1i64; field.degree() + 1], q);
        Ok(Self::unramified(field, q, vec![(q - r) % q, 1], 1, &phi))
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients of g, low to high.
    pub fn generator_poly(&self) -> &[u64] {
        &self.g
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn ramification_index(&self) -> u32 {
        self.e
    }

    pub fn norm(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), self.f as usize)
    }

    /// For a degree-one prime, the r with ζ ≡ r mod P.
    pub fn root(&self) -> Option<u64> {
        (self.f == 1).then(|| (self.q - self.g[0]) % self.q)
    }

    pub fn ideal(&self) -> FractionalIdeal {
        let gvec: Vec<BigInt> = self.g.iter().map(|&c| BigInt::from(c)).collect();
        let g = self.field.from_poly(gvec);
        let mut gens = super::zeta_multiples(&g);
        gens.push(vec![BigInt::from(self.q)]);
        FractionalIdeal::from_generators(&self.field, gens, &BigInt::from(self.q), BigInt::one())
    }

    /// P^e for any integer e.
    pub fn power(&self, e: i64) -> Result<FractionalIdeal> {
        if e >= 0 {
            return self.ideal().pow(e);
        }
        self.inverse()?.pow(-e)
    }

    /// P^{-1} = q^{-1}·P^{e-1}·Π_{P' ≠ P} P'^e.
    pub fn inverse(&self) -> Result<FractionalIdeal> {
        let mut acc = FractionalIdeal::unit(&self.field)?;
        for (other, e) in factor_rational_prime(self.q, &self.field)? {
            let k = if other == *self { e - 1 } else { e };
            if k > 0 {
                acc = acc.multiply(&other.ideal().pow(k as i64)?)?;
            }
        }
        let inv_q = self.field.rational(&num_rational::BigRational::new(
            BigInt::one(),
            BigInt::from(self.q),
        ));
        acc.scale(&inv_q)
    }

    /// σ_a(P), the prime containing g(ζ^a).
    pub fn galois(&self, a: u64) -> Result<PrimeIdealAboveQ> {
        let p = self.field.conductor();
        if a.is_multiple_of(p) {
            return Err(Error::NotCoprime(a, p));
        }
        if self.q == p {
            return Ok(self.clone());
        }
        if let Some(r) = self.root() {
            // ζ^a ≡ r mod σ_a(P), so ζ ≡ r^(a^{-1})
            let inv = crate::ntheory::inv_mod(a % p, p).expect("unit mod p");
            return Self::degree_one(&self.field, self.q, crate::ntheory::pow_mod(r, inv, self.q));
        }
        let mut g_of_xa = vec![0u64; (self.g.len() - 1) * a as usize + 1];
        for (i, &c) in self.g.iter().enumerate() {
            g_of_xa[i * a as usize] = c;
        }
        for (cand, _) in factor_rational_prime(self.q, &self.field)? {
            if fp::rem(&g_of_xa, &cand.g, self.q).is_empty() {
                return Ok(cand);
            }
        }
        Err(Error::Invalid("no conjugate prime found".into()))
    }

    fn reduces_to_zero(&self, v: &[BigInt]) -> bool {
        let qb = BigInt::from(self.q);
        let red: FpPoly = fp::trim(
            v.iter()
                .map(|c| c.mod_floor(&qb).to_u64().unwrap())
                .collect(),
        );
        fp::rem(&red, &self.g, self.q).is_empty()
    }

    /// v_P of an integral coefficient vector, stopping once `cap` is reached.
    fn valuation_integral(&self, v: &[BigInt], cap: Option<u64>) -> u64 {
        let qb = BigInt::from(self.q);
        let m = self.field.conductor() as usize;
        let mut cur = v.to_vec();
        let mut k = 0u64;
        while cap.is_none_or(|c| k < c) {
            if !self.reduces_to_zero(&cur) {
                break;
            }
            let next = self
                .field
                .reduce(crate::cyclo::cyclic_product(&cur, &self.tau, m));
            if next.iter().any(|c| !c.is_multiple_of(&qb)) {
                break;
            }
            cur = next.into_iter().map(|c| c / &qb).collect();
            k += 1;
        }
        k
    }

    pub(crate) fn valuation_of_element(&self, x: &CyclotomicNumber) -> Result<i64> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch(x.conductor(), self.field.conductor()));
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let up = self.valuation_integral(x.numerators(), None) as i64;
        let down = self.e as i64 * valuation_int(x.denominator(), self.q) as i64;
        Ok(up - down)
    }

    pub(crate) fn valuation_of_ideal(&self, ideal: &FractionalIdeal) -> Result<i64> {
        if ideal.field() != &self.field {
            return Err(Error::FieldMismatch(
                ideal.field().conductor(),
                self.field.conductor(),
            ));
        }
        let rows = ideal.hnf();
        let mut best = self.e as u64 * valuation_int(&rows[0][0], self.q) as u64;
        for r in &rows[1..] {
            if best == 0 {
                break;
            }
            best = best.min(self.valuation_integral(r, Some(best)));
        }
        Ok(best as i64 - self.e as i64 * valuation_int(ideal.denominator(), self.q) as i64)
    }

    pub fn to_repr(&self) -> PrimeIdealRepr {
        PrimeIdealRepr {
            q: self.q,
            g: self.g.clone(),
            e: self.e,
            f: self.f,
        }
    }
}

impl PartialEq for PrimeIdealAboveQ {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.q == other.q && self.g == other.g
    }
}

impl Eq for PrimeIdealAboveQ {}

impl std::hash::Hash for PrimeIdealAboveQ {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor().hash(state);
        self.q.hash(state);
        self.g.hash(state);
    }
}

impl PartialOrd for PrimeIdealAboveQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdealAboveQ {
    fn cmp(&self, other: &Self) -> Ordering {
        // matches fp::sort_polys so factor_rational_prime output is sorted
        (self.field.conductor(), self.q, self.g.len())
            .cmp(&(other.field.conductor(), other.q, other.g.len()))
            .then_with(|| self.g.iter().rev().cmp(other.g.iter().rev()))
    }
}

impl fmt::Debug for PrimeIdealAboveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P(q={}, g={:?}, e={}, f={})",
            self.q, self.g, self.e, self.f
        )
    }
}

impl Serialize for PrimeIdealAboveQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}
