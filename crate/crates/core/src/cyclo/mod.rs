//! Exact arithmetic in cyclotomic fields Q(ζ_m).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^(φ(m)-1) as integer
//! numerators over one positive common denominator. Every constructor and
//! operation reduces modulo Φ_m and clears common factors, so two values are
//! equal exactly when their representations are.

mod embed;
mod minpoly;
mod root;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::ntheory::{euler_phi, factor_u64, gcd, inv_mod, mobius};
use crate::poly;

pub use embed::ComplexApprox;

/// The field Q(ζ_m) together with its defining polynomial Φ_m.
#[derive(Clone)]
pub struct CyclotomicField(Arc<FieldData>);

struct FieldData {
    conductor: u64,
    degree: usize,
    phi: Vec<BigInt>,
    phi_small: Vec<i64>,
    discriminant: BigInt,
    units: Vec<u64>,
    coefficient_gain: OnceLock<f64>,
}

impl CyclotomicField {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let phi = poly::cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree as u64, euler_phi(m));
        let phi_small = phi
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficients fit in i64"))
            .collect();
        let units = (1..=m)
            .filter(|&a| gcd(a % m, m) == 1)
            .map(|a| a % m)
            .collect::<Vec<_>>();
        let mut units = units;
        units.sort_unstable();
        Ok(CyclotomicField(Arc::new(FieldData {
            conductor: m,
            degree,
            phi,
            phi_small,
            discriminant: discriminant(m),
            units,
            coefficient_gain: OnceLock::new(),
        })))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Φ_m, monic, low to high.
    pub fn cyclotomic_polynomial(&self) -> &[BigInt] {
        &self.0.phi
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.0.discriminant
    }

    /// Indices a of the automorphisms σ_a, ascending.
    pub fn galois_indices(&self) -> &[u64] {
        &self.0.units
    }

    pub fn automorphisms(&self) -> impl Iterator<Item = GaloisAutomorphism> + '_ {
        self.0.units.iter().map(|&a| GaloisAutomorphism {
            conductor: self.conductor(),
            index: a,
        })
    }

    pub fn is_prime_conductor(&self) -> bool {
        crate::ntheory::is_prime(self.conductor())
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.integer(1)
    }

    pub fn integer<T: Into<BigInt>>(&self, n: T) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = n.into();
        CyclotomicNumber::from_parts(self.clone(), num, BigInt::one())
    }

    pub fn rational(&self, r: &BigRational) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        CyclotomicNumber::from_parts(self.clone(), num, r.denom().clone())
    }

    pub fn zeta(&self) -> CyclotomicNumber {
        self.zeta_pow(1)
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        let m = self.conductor() as i64;
        let mut v = vec![BigInt::zero(); self.conductor() as usize];
        v[k.rem_euclid(m) as usize] = BigInt::one();
        self.from_poly(v)
    }

    /// The value Σ c_i ζ^i of an integer polynomial of any length.
    pub fn from_poly(&self, coeffs: Vec<BigInt>) -> CyclotomicNumber {
        let num = self.reduce(coeffs);
        CyclotomicNumber::from_parts(self.clone(), num, BigInt::one())
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> CyclotomicNumber {
        self.from_poly(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Σ c_i ζ^i for rational coefficients.
    pub fn from_rationals(&self, coeffs: &[BigRational]) -> CyclotomicNumber {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let num = self.reduce(num);
        CyclotomicNumber::from_parts(self.clone(), num, den)
    }

    pub fn from_repr(&self, repr: &CyclotomicNumberRepr) -> Result<CyclotomicNumber> {
        if repr.conductor != self.conductor() {
            return Err(Error::FieldMismatch(repr.conductor, self.conductor()));
        }
        let coeffs: Vec<BigRational> = repr
            .coefficients
            .iter()
            .map(|(n, d)| {
                if d.0.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(BigRational::new(n.0.clone(), d.0.clone()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(self.from_rationals(&coeffs))
    }

    /// Reduces an integer polynomial in ζ modulo x^m - 1 and then Φ_m.
    pub(crate) fn reduce(&self, coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let m = self.conductor() as usize;
        let n = self.degree();
        let mut v = if coeffs.len() > m {
            let mut folded = vec![BigInt::zero(); m];
            for (i, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    folded[i % m] += c;
                }
            }
            folded
        } else {
            coeffs
        };
        let phi = &self.0.phi_small;
        for top in (n..v.len()).rev() {
            if v[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[top]);
            let shift = top - n;
            for (j, &pj) in phi.iter().enumerate().take(n) {
                if pj != 0 {
                    v[shift + j] -= &c * pj;
                }
            }
        }
        v.resize(n, BigInt::zero());
        v
    }

    fn same(&self, other: &CyclotomicField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.conductor() == other.conductor()
    }

    fn check_same(&self, other: &CyclotomicField) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.conductor(), other.conductor()))
        }
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for CyclotomicField {}

impl Hash for CyclotomicField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor())
    }
}

fn discriminant(m: u64) -> BigInt {
    let m = if m % 4 == 2 { m / 2 } else { m };
    if m <= 2 {
        return BigInt::one();
    }
    let n = euler_phi(m);
    let mut num = num_traits::pow(BigInt::from(m), n as usize);
    for (p, _) in factor_u64(m) {
        num /= num_traits::pow(BigInt::from(p), (n / (p - 1)) as usize);
    }
    if (n / 2) % 2 == 1 {
        -num
    } else {
        num
    }
}

/// σ_a : ζ ↦ ζ^a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisAutomorphism {
    conductor: u64,
    index: u64,
}

impl GaloisAutomorphism {
    pub fn new(m: u64, a: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let a = a.rem_euclid(m as i64) as u64;
        if gcd(a, m) != 1 {
            return Err(Error::NotCoprime(a, m));
        }
        Ok(GaloisAutomorphism {
            conductor: m,
            index: a % m.max(1),
        })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// σ_a ∘ σ_b = σ_{ab}.
    pub fn compose(&self, other: &GaloisAutomorphism) -> Result<GaloisAutomorphism> {
        if self.conductor != other.conductor {
            return Err(Error::FieldMismatch(self.conductor, other.conductor));
        }
        let m = self.conductor;
        Ok(GaloisAutomorphism {
            conductor: m,
            index: crate::ntheory::mul_mod(self.index, other.index, m),
        })
    }

    pub fn inverse(&self) -> GaloisAutomorphism {
        let m = self.conductor;
        GaloisAutomorphism {
            conductor: m,
            index: if m == 1 {
                0
            } else {
                inv_mod(self.index, m).expect("unit")
            },
        }
    }

    pub fn apply(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if x.field.conductor() != self.conductor {
            return Err(Error::FieldMismatch(self.conductor, x.field.conductor()));
        }
        Ok(x.galois(self.index))
    }
}

/// An element of Q(ζ_m).
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: CyclotomicField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub(crate) fn from_parts(
        field: CyclotomicField,
        mut num: Vec<BigInt>,
        mut den: BigInt,
    ) -> Self {
        assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if num.iter().all(Zero::is_zero) {
                g = den.clone();
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        CyclotomicNumber { field, num, den }
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coefficient(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coefficient(0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect();
            return Ok(Self::from_parts(self.field.clone(), num, self.den.clone()));
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let num = self.field.reduce(cyclic_product(
            &self.num,
            &other.num,
            self.conductor() as usize,
        ));
        Ok(Self::from_parts(
            self.field.clone(),
            num,
            &self.den * &other.den,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> = poly::to_rational(&poly::trim(self.num.clone()));
        let m: Vec<BigRational> = poly::to_rational(self.field.cyclotomic_polynomial());
        let s = rational_inverse_mod(&a, &m);
        let scaled: Vec<BigRational> = s
            .into_iter()
            .map(|c| c * BigRational::from_integer(self.den.clone()))
            .collect();
        Ok(self.field.from_rationals(&scaled))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * k).collect(),
            self.den.clone(),
        )
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// σ_a(x); `a` must be a unit modulo the conductor.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.conductor();
        debug_assert_eq!(gcd(a % m.max(1), m), 1);
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((i as u64 * a) % m) as usize] += c;
            }
        }
        Self::from_parts(self.field.clone(), self.field.reduce(v), self.den.clone())
    }

    /// Complex conjugation σ_{-1}.
    pub fn conj(&self) -> Self {
        self.galois(self.conductor().saturating_sub(1).max(1))
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let int = Self::from_parts(self.field.clone(), self.num.clone(), BigInt::one());
        let prod = self
            .field
            .galois_indices()
            .iter()
            .skip(1)
            .fold(int.clone(), |acc, &a| &acc * &int.galois(a));
        debug_assert!(prod.is_rational());
        let n = self.field.degree();
        BigRational::new(prod.num[0].clone(), num_traits::pow(self.den.clone(), n))
    }

    /// Sum of all Galois conjugates, via Ramanujan sums Tr(ζ^i) = c_m(i).
    pub fn trace(&self) -> BigRational {
        let m = self.conductor();
        let n = self.field.degree() as i64;
        let total: BigInt = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let g = gcd(i as u64 % m, m);
                let q = m / g;
                let ram = mobius(q) * n / euler_phi(q) as i64;
                c * ram
            })
            .sum();
        BigRational::new(total, self.den.clone())
    }

    /// Image under Q(ζ_m) → Q(ζ_M), ζ_m ↦ ζ_M^(M/m).
    pub fn embed_into(&self, target: &CyclotomicField) -> Result<Self> {
        let m = self.conductor();
        let big = target.conductor();
        if !big.is_multiple_of(m) {
            return Err(Error::NotDivisor(m, big));
        }
        let step = (big / m) as usize;
        let mut v = vec![BigInt::zero(); big as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[(i * step) % big as usize] += c;
        }
        Ok(Self::from_parts(
            target.clone(),
            target.reduce(v),
            self.den.clone(),
        ))
    }

    /// Rewrites a value of Q(ζ_M) lying in the subfield Q(ζ_m) in the
    /// conductor-m power basis. Returns `None` when it does not lie there.
    pub fn descend_to(&self, target: &CyclotomicField) -> Result<Option<Self>> {
        let small = target.degree();
        let columns: Vec<Self> = (0..small as i64)
            .map(|i| target.zeta_pow(i).embed_into(&self.field))
            .collect::<Result<_>>()?;
        // rows of the system: one per coordinate of the big field
        let rows: Vec<Vec<BigRational>> = (0..self.field.degree())
            .map(|r| {
                let mut row: Vec<BigRational> = columns.iter().map(|c| c.coefficient(r)).collect();
                row.push(self.coefficient(r));
                row
            })
            .collect();
        let Some(sol) = solve_overdetermined(rows, small) else {
            return Ok(None);
        };
        let candidate = target.from_rationals(&sol);
        Ok((candidate.embed_into(&self.field)? == *self).then_some(candidate))
    }

    pub fn to_repr(&self) -> CyclotomicNumberRepr {
        CyclotomicNumberRepr {
            conductor: self.conductor(),
            coefficients: self
                .coefficients()
                .into_iter()
                .map(|c| (JsonInt(c.numer().clone()), JsonInt(c.denom().clone())))
                .collect(),
        }
    }

    /// Largest coefficient size in bits, numerators and denominator included.
    pub fn height_bits(&self) -> u64 {
        self.num
            .iter()
            .map(|c| c.bits())
            .max()
            .unwrap_or(0)
            .max(self.den.bits())
    }
}

pub(crate) fn cyclic_product(a: &[BigInt], b: &[BigInt], m: usize) -> Vec<BigInt> {
    let len = (a.len() + b.len()).saturating_sub(1).min(m.max(1));
    let mut out = vec![BigInt::zero(); len.max(1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = (i + j) % m.max(1);
            out[k] += x * y;
        }
    }
    out
}

fn rtrim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rational_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = rtrim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = rtrim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] / &lead;
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = rtrim(r);
    }
    (rtrim(q), r)
}

fn rational_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(out)
}

fn rational_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    rtrim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}

// s with s*a ≡ 1 mod m, for coprime a and m.
fn rational_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (rtrim(m.to_vec()), rational_divrem(a, m).1);
    let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = rational_divrem(&r0, &r1);
        let s = rational_sub(&s0, &rational_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        // keep remainders monic to limit coefficient growth
        if let Some(lead) = r1.last().cloned() {
            r1.iter_mut().for_each(|c| *c = &*c / &lead);
            s1.iter_mut().for_each(|c| *c = &*c / &lead);
        }
    }
    assert_eq!(r0.len(), 1, "element shares a factor with the modulus");
    let c = r0[0].clone();
    s0.into_iter().map(|x| x / &c).collect()
}

/// Solves an overdetermined consistent system given as augmented rows; only
/// `cols` unknowns. Returns `None` when the rows are inconsistent.
fn solve_overdetermined(rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            if !row[*col].is_zero() {
                let f = row[*col].clone();
                for (x, y) in row.iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
        match (0..cols).find(|&c| !row[c].is_zero()) {
            Some(c) => {
                let inv = row[c].recip();
                row.iter_mut().for_each(|x| *x *= &inv);
                for (_, prow) in pivots.iter_mut() {
                    if !prow[c].is_zero() {
                        let f = prow[c].clone();
                        for (x, y) in prow.iter_mut().zip(&row) {
                            *x -= &f * y;
                        }
                    }
                }
                pivots.push((c, row));
                if pivots.len() == cols {
                    break;
                }
            }
            None if !row[cols].is_zero() => return None,
            None => {}
        }
    }
    if pivots.len() < cols {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (c, row) in pivots {
        sol[c] = row[cols].clone();
    }
    Some(sol)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let coeff = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && (-c).is_one() {
                "-".to_string()
            } else if i > 0 {
                format!("{c}*")
            } else {
                c.to_string()
            };
            terms.push(format!("{coeff}{mono}"));
        }
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("operands in the same field")
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$checked(&rhs).expect("operands in the same field")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Wire form: conductor plus (numerator, denominator) pairs, ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicNumberRepr {
    pub conductor: u64,
    pub coefficients: Vec<(JsonInt, JsonInt)>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}
