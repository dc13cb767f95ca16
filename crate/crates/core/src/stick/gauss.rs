use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{require_odd_prime, stickelberger_element};
use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::ideal::{factor_element, FractionalIdeal, PrimeIdealAboveQ, PrimeIdealRepr};
use crate::ntheory::{inv_mod, is_prime, is_primitive_root, pow_mod, primitive_root};

/// g(χ) = Σ_{t=1}^{q−1} χ(t)ζ_q^t in Q(ζ_pq), with χ(g^k) = ζ_p^k.
#[derive(Clone, Debug, Serialize)]
pub struct GaussSumDatum {
    pub p: u64,
    pub q: u64,
    pub g: u64,
    pub value: CyclotomicNumber,
}

/// The Gauss sum of the order-p character χ(g^k) = ζ_p^k modulo q. In
/// Q(ζ_pq), ζ_p = ζ^q and ζ_q = ζ^p. Checks g(χ)·conj(g(χ)) = q and Σ χ = 0.
pub fn gauss_sum(p: u64, q: u64, g: u64) -> Result<GaussSumDatum> {
    require_odd_prime(p)?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % p != 1 {
        return Err(Error::Precondition(format!("{q} is not 1 mod {p}")));
    }
    if !is_primitive_root(g % q, q) {
        return Err(Error::Precondition(format!(
            "{g} is not a primitive root mod {q}"
        )));
    }
    let m = p * q;
    let field = CyclotomicField::new(m)?;
    let mut coeffs = vec![BigInt::from(0); m as usize];
    let mut chi_sum = vec![0i64; p as usize];
    let mut t = 1u64;
    for k in 0..q - 1 {
        let exp = (q * (k % p) + p * t) % m;
        coeffs[exp as usize] += 1;
        chi_sum[(k % p) as usize] += 1;
        t = t * g % q;
    }
    // Σ χ(t) = Σ_j c_j ζ_p^j vanishes iff all counts agree
    if chi_sum.iter().any(|&c| c != chi_sum[0]) {
        return Err(Error::Verification(
            "character values do not sum to zero".into(),
        ));
    }
    let value = field.from_poly(coeffs);
    if &value * &value.conj() != field.integer(q) {
        return Err(Error::Verification(format!("g·conj(g) ≠ {q}")));
    }
    Ok(GaussSumDatum { p, q, g, value })
}

/// g(χ)^p, checked to be fixed by Gal(Q(ζ_pq)/Q(ζ_p)) and rewritten in the
/// power basis of Q(ζ_p).
pub fn gauss_sum_power_descend(d: &GaussSumDatum) -> Result<CyclotomicNumber> {
    let (p, q) = (d.p, d.q);
    let m = p * q;
    let power = d.value.pow(p);
    // a ≡ 1 mod p and a ≡ h mod q, h a primitive root mod q, generates the subgroup
    let h = primitive_root(q)?;
    let a = (1..m)
        .find(|&a| a % p == 1 && a % q == h)
        .expect("CRT solution");
    if power.galois(a) != power {
        return Err(Error::Verification(format!("g^{p} is moved by σ_{a}")));
    }
    let small = CyclotomicField::new(p)?;
    let descended = power
        .descend_to(&small)?
        .ok_or_else(|| Error::Verification("g^p does not lie in Q(ζ_p)".into()))?;
    if &descended * &descended.conj() != small.integer(num_traits::pow(BigInt::from(q), p as usize))
    {
        return Err(Error::Verification(
            "descended value times conjugate is not q^p".into(),
        ));
    }
    Ok(descended)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentEntry {
    pub prime: PrimeIdealRepr,
    pub exponent: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StickelbergerCertificate {
    pub p: u64,
    pub q: u64,
    pub g: u64,
    /// v_P(g^p) for each prime P above q, in the canonical prime order.
    pub exponent_pattern: Vec<ExponentEntry>,
    /// The prime (q, ζ − g^((q−1)/p)).
    pub distinguished_prime: PrimeIdealRepr,
    /// c with (g^p) = σ_c(𝔮)^θ for the distinguished prime 𝔮.
    pub relabeling: u64,
    pub gauss_sum: CyclotomicNumber,
    pub descended_power: CyclotomicNumber,
}

/// Factors (g(χ)^p) in Z[ζ_p] and matches it against θ applied to the
/// distinguished prime above q, up to a recorded Galois relabeling.
pub fn verify_stickelberger_factorization(
    p: u64,
    q: u64,
    g: u64,
) -> Result<StickelbergerCertificate> {
    let datum = gauss_sum(p, q, g)?;
    let descended = gauss_sum_power_descend(&datum)?;
    let field = descended.field().clone();
    let factors = factor_element(&descended)?;
    if factors.iter().any(|(pr, _)| pr.q() != q) {
        return Err(Error::Verification(format!(
            "(g^{p}) has support outside the primes above {q}"
        )));
    }
    if factors.len() != (p - 1) as usize {
        return Err(Error::Verification(format!(
            "(g^{p}) is divisible by {} primes, expected {}",
            factors.len(),
            p - 1
        )));
    }
    let mut multiset: Vec<i64> = factors.iter().map(|(_, e)| *e).collect();
    multiset.sort_unstable();
    if multiset != (1..p as i64).collect::<Vec<_>>() {
        return Err(Error::Verification(format!(
            "exponent multiset {multiset:?} is not 1..{}",
            p - 1
        )));
    }
    let root = pow_mod(g % q, (q - 1) / p, q);
    let distinguished = PrimeIdealAboveQ::degree_one(&field, q, root)?;
    let theta = stickelberger_element(p)?;
    let exponent_at =
        |pr: &PrimeIdealAboveQ| factors.iter().find(|(f, _)| f == pr).map_or(0, |(_, e)| *e);
    // σ_c(𝔮)^θ has exponent a at σ_{c·a^{-1}}(𝔮), i.e. b^{-1} at σ_{cb}(𝔮)
    let mut relabeling = None;
    for c in 1..p {
        let mut ok = true;
        for b in 1..p {
            let image = distinguished.galois(c * b % p)?;
            if exponent_at(&image) != inv_mod(b, p).expect("unit") as i64 {
                ok = false;
                break;
            }
        }
        if ok {
            relabeling = Some(c);
            break;
        }
    }
    let c = relabeling.ok_or_else(|| {
        Error::Verification("no relabeling matches θ on the distinguished prime".into())
    })?;
    let expected = theta.apply_to_prime(&distinguished.galois(c)?)?;
    if FractionalIdeal::principal(&descended)? != expected {
        return Err(Error::Verification(
            "(g^p) differs from σ_c(𝔮)^θ as an ideal".into(),
        ));
    }
    debug_assert_eq!(
        expected.norm(),
        BigRational::from(num_traits::pow(BigInt::from(q), ((p - 1) * p / 2) as usize))
    );
    Ok(StickelbergerCertificate {
        p,
        q,
        g,
        exponent_pattern: factors
            .iter()
            .map(|(pr, e)| ExponentEntry {
                prime: pr.to_repr(),
                exponent: *e,
            })
            .collect(),
        distinguished_prime: distinguished.to_repr(),
        relabeling: c,
        gauss_sum: datum.value,
        descended_power: descended,
    })
}
