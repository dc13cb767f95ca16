//! Fractional ideals of Z[ζ_p] for a prime conductor p.
//!
//! An ideal is stored as (1/den)·M with M an integral ideal in Hermite normal
//! form over the power basis 1, ζ, …, ζ^(p-2), so equal ideals have equal
//! representations.

mod classgroup;
pub(crate) mod hnf;
mod lll;
mod prime;
mod principal;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{cyclic_product, CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::json::{ints, JsonInt};
use crate::ntheory::factor_biguint;

pub use classgroup::{
    class_group, ClassGenerator, ClassGroupCertificate, ClassGroupDescription, OrbitRecord,
    Relation,
};
pub use prime::{factor_rational_prime, PrimeIdealAboveQ, PrimeIdealRepr};
pub use principal::SearchEffort;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    field: CyclotomicField,
    rows: Vec<Vec<BigInt>>,
    den: BigInt,
}

pub(crate) fn require_prime_conductor(field: &CyclotomicField) -> Result<()> {
    if field.is_prime_conductor() {
        Ok(())
    } else {
        Err(Error::CompositeConductor(field.conductor()))
    }
}

impl FractionalIdeal {
    fn from_integral(field: &CyclotomicField, rows: Vec<Vec<BigInt>>, den: BigInt) -> Self {
        let mut g = den.clone();
        for r in &rows {
            for c in r {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
        }
        let (rows, den) = if g.is_one() {
            (rows, den)
        } else {
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|c| c / &g).collect())
                .collect();
            (rows, den / &g)
        };
        FractionalIdeal {
            field: field.clone(),
            rows,
            den,
        }
    }

    /// The ideal generated by integral vectors, given a positive integer d in it.
    fn from_generators<I>(field: &CyclotomicField, gens: I, d: &BigInt, den: BigInt) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let rows = hnf::hnf_mod(gens, field.degree(), d);
        Self::from_integral(field, rows, den)
    }

    pub fn unit(field: &CyclotomicField) -> Result<Self> {
        require_prime_conductor(field)?;
        let n = field.degree();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::one();
                r
            })
            .collect();
        Ok(FractionalIdeal {
            field: field.clone(),
            rows,
            den: BigInt::one(),
        })
    }

    /// The ideal x·Z[ζ].
    pub fn principal(x: &CyclotomicNumber) -> Result<Self> {
        let field = x.field();
        require_prime_conductor(field)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let num =
            CyclotomicNumber::from_parts(field.clone(), x.numerators().to_vec(), BigInt::one());
        let d = num.norm().numer().abs();
        let gens = zeta_multiples(&num);
        Ok(Self::from_generators(
            field,
            gens,
            &d,
            x.denominator().clone(),
        ))
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// HNF rows of the integral ideal den·I.
    pub fn hnf(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.den.is_one() && self.rows[0][0].is_one()
    }

    /// Smallest positive integer in den·I.
    pub(crate) fn min_integer(&self) -> &BigInt {
        &self.rows[0][0]
    }

    /// The integral ideal den·I.
    pub fn numerator_ideal(&self) -> FractionalIdeal {
        FractionalIdeal {
            field: self.field.clone(),
            rows: self.rows.clone(),
            den: BigInt::one(),
        }
    }

    pub fn norm(&self) -> BigRational {
        let det = hnf::determinant(&self.rows);
        let n = self.field.degree();
        BigRational::new(det, num_traits::pow(self.den.clone(), n))
    }

    pub fn basis_elements(&self) -> Vec<CyclotomicNumber> {
        self.rows
            .iter()
            .map(|r| CyclotomicNumber::from_parts(self.field.clone(), r.clone(), self.den.clone()))
            .collect()
    }

    fn check_field(&self, other: &FractionalIdeal) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.conductor(),
                other.field.conductor(),
            ))
        }
    }

    pub fn multiply(&self, other: &FractionalIdeal) -> Result<FractionalIdeal> {
        self.check_field(other)?;
        let (small, big) = {
            let a = hnf::module_generators(&self.rows).len();
            let b = hnf::module_generators(&other.rows).len();
            if a <= b {
                (self, other)
            } else {
                (other, self)
            }
        };
        let m = self.field.conductor() as usize;
        let gens: Vec<Vec<BigInt>> = hnf::module_generators(&small.rows)
            .into_iter()
            .flat_map(|g| {
                big.rows
                    .iter()
                    .map(|r| self.field.reduce(cyclic_product(g, r, m)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let d = small.min_integer() * big.min_integer();
        Ok(Self::from_generators(
            &self.field,
            gens,
            &d,
            &self.den * &other.den,
        ))
    }

    /// x·I for a nonzero field element x.
    pub fn scale(&self, x: &CyclotomicNumber) -> Result<FractionalIdeal> {
        self.multiply(&FractionalIdeal::principal(x)?)
    }

    pub fn pow(&self, e: i64) -> Result<FractionalIdeal> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = FractionalIdeal::unit(&self.field)?;
        let e = e.unsigned_abs();
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = acc.multiply(&acc)?;
            if (e >> i) & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// σ_a(I).
    pub fn galois(&self, a: u64) -> Result<FractionalIdeal> {
        let p = self.field.conductor();
        if a.is_multiple_of(p) {
            return Err(Error::NotCoprime(a, p));
        }
        let gens = self.rows.iter().map(|r| {
            CyclotomicNumber::from_parts(self.field.clone(), r.clone(), BigInt::one())
                .galois(a)
                .numerators()
                .to_vec()
        });
        Ok(Self::from_generators(
            &self.field,
            gens,
            self.min_integer(),
            self.den.clone(),
        ))
    }

    pub fn contains_element(&self, x: &CyclotomicNumber) -> Result<bool> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch(x.conductor(), self.field.conductor()));
        }
        // x ∈ (1/den)M  <=>  den·x ∈ M, which needs den·x integral
        let scaled = x.scale_int(&self.den);
        if !scaled.is_integral() {
            return Ok(false);
        }
        Ok(hnf::solve(&self.rows, scaled.numerators()).is_some())
    }

    /// self ⊆ other.
    pub fn is_contained_in(&self, other: &FractionalIdeal) -> Result<bool> {
        self.check_field(other)?;
        for x in self.basis_elements() {
            if !other.contains_element(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// I^{-1}, assembled from the prime factorization.
    pub fn inverse(&self) -> Result<FractionalIdeal> {
        let factors = factor_ideal(self)?;
        let inverted: Vec<_> = factors.into_iter().map(|(p, e)| (p, -e)).collect();
        ideal_from_factorization(&self.field, &inverted)
    }

    pub fn to_repr(&self) -> IdealRepr {
        IdealRepr {
            conductor: self.field.conductor(),
            denominator: JsonInt(self.den.clone()),
            hnf: self.rows.iter().map(ints).collect(),
        }
    }

    pub fn from_repr(field: &CyclotomicField, repr: &IdealRepr) -> Result<FractionalIdeal> {
        require_prime_conductor(field)?;
        if repr.conductor != field.conductor() {
            return Err(Error::FieldMismatch(repr.conductor, field.conductor()));
        }
        let n = field.degree();
        let rows: Vec<Vec<BigInt>> = repr
            .hnf
            .iter()
            .map(|r| r.iter().map(|c| c.0.clone()).collect())
            .collect();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) || !repr.denominator.0.is_positive()
        {
            return Err(Error::Invalid("malformed ideal representation".into()));
        }
        let d = rows[0][0].clone();
        if !d.is_positive() {
            return Err(Error::Invalid("malformed ideal representation".into()));
        }
        let ideal = Self::from_generators(field, rows.clone(), &d, repr.denominator.0.clone());
        // closed under ζ and equal to its own normal form
        let closed = ideal.numerator_ideal().scale(&field.zeta())? == ideal.numerator_ideal();
        let canonical = ideal.rows == rows && ideal.den == repr.denominator.0;
        if !closed || !canonical {
            return Err(Error::Invalid("not a normalized ideal".into()));
        }
        Ok(ideal)
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ideal(p={}, norm={}, den={})",
            self.field.conductor(),
            self.norm(),
            self.den
        )
    }
}

impl Serialize for FractionalIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRepr {
    pub conductor: u64,
    pub denominator: JsonInt,
    pub hnf: Vec<Vec<JsonInt>>,
}

/// x, ζx, …, ζ^(n-1)x as coefficient vectors.
fn zeta_multiples(x: &CyclotomicNumber) -> Vec<Vec<BigInt>> {
    let field = x.field();
    let n = field.degree();
    let mut out = Vec::with_capacity(n);
    let mut cur = x.numerators().to_vec();
    for _ in 0..n {
        out.push(cur.clone());
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(cur);
        cur = field.reduce(shifted);
    }
    out
}

/// P-adic valuation of a nonzero element or ideal.
pub trait Valuation {
    fn valuation(&self, prime: &PrimeIdealAboveQ) -> Result<i64>;
}

impl Valuation for CyclotomicNumber {
    fn valuation(&self, prime: &PrimeIdealAboveQ) -> Result<i64> {
        prime.valuation_of_element(self)
    }
}

impl Valuation for FractionalIdeal {
    fn valuation(&self, prime: &PrimeIdealAboveQ) -> Result<i64> {
        prime.valuation_of_ideal(self)
    }
}

pub fn valuation<T: Valuation>(target: &T, prime: &PrimeIdealAboveQ) -> Result<i64> {
    target.valuation(prime)
}

/// Rational primes dividing any of the given integers.
fn rational_primes_of(parts: &[&BigInt]) -> Result<Vec<u64>> {
    let mut primes = Vec::new();
    for part in parts {
        let mag = part.magnitude();
        if mag.is_one() || mag.is_zero() {
            continue;
        }
        for (q, _) in factor_biguint(mag)? {
            let q: u64 = (&q).try_into().map_err(|_| {
                Error::FactorizationIncomplete(format!("prime factor {q} exceeds 64 bits"))
            })?;
            primes.push(q);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Prime factorization of an ideal, ordered by (q, generator).
pub fn factor_ideal(ideal: &FractionalIdeal) -> Result<Vec<(PrimeIdealAboveQ, i64)>> {
    let mut out = Vec::new();
    // a prime of den·I divides its smallest integer
    for q in rational_primes_of(&[ideal.min_integer(), ideal.denominator()])? {
        for (prime, _) in factor_rational_prime(q, &ideal.field)? {
            let v = prime.valuation_of_ideal(ideal)?;
            if v != 0 {
                out.push((prime, v));
            }
        }
    }
    Ok(out)
}

/// Prime factorization of the principal ideal (x), without forming its HNF.
pub fn factor_element(x: &CyclotomicNumber) -> Result<Vec<(PrimeIdealAboveQ, i64)>> {
    require_prime_conductor(x.field())?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    let norm = x.norm();
    for q in rational_primes_of(&[norm.numer(), norm.denom(), x.denominator()])? {
        for (prime, _) in factor_rational_prime(q, x.field())? {
            let v = prime.valuation_of_element(x)?;
            if v != 0 {
                out.push((prime, v));
            }
        }
    }
    Ok(out)
}

/// Π P^e over the given factorization.
pub fn ideal_from_factorization(
    field: &CyclotomicField,
    factors: &[(PrimeIdealAboveQ, i64)],
) -> Result<FractionalIdeal> {
    let mut acc = FractionalIdeal::unit(field)?;
    for (prime, e) in factors {
        acc = acc.multiply(&prime.power(*e)?)?;
    }
    Ok(acc)
}

/// 𝔞 with 𝔞^ℓ = (μ) when every exponent of (μ) is divisible by ℓ.
pub fn pth_power_shape(mu: &CyclotomicNumber, l: u64) -> Result<Option<FractionalIdeal>> {
    if l == 0 {
        return Err(Error::Invalid("exponent must be positive".into()));
    }
    let factors = factor_element(mu)?;
    if factors.iter().any(|(_, e)| e.rem_euclid(l as i64) != 0) {
        return Ok(None);
    }
    let root: Vec<_> = factors
        .into_iter()
        .map(|(p, e)| (p, e / l as i64))
        .collect();
    ideal_from_factorization(mu.field(), &root).map(Some)
}

/// (4/π)^{r₂}·(n!/nⁿ)·√|d|, rounded upward.
pub fn minkowski_bound(field: &CyclotomicField) -> Result<f64> {
    require_prime_conductor(field)?;
    let n = field.degree() as f64;
    let r2 = n / 2.0;
    let ln_fact: f64 = (1..=field.degree()).map(|k| (k as f64).ln()).sum();
    let ln_disc = ln_big(field.discriminant());
    let ln_bound = r2 * (4.0 / std::f64::consts::PI).ln() + ln_fact - n * n.ln() + 0.5 * ln_disc;
    Ok(ln_bound.exp() * (1.0 + 1e-9))
}

pub(crate) fn ln_big(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let top: f64 = num_traits::ToPrimitive::to_f64(&(x.abs() >> shift)).unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
