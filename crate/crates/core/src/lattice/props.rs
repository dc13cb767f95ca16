use serde::Serialize;

use super::{
    enumerate_abelian_fields, ramification_profile, subfield_by_periods, AbelianField,
    PeriodPolynomial,
};
use crate::error::{Error, Result};
use crate::ntheory::{factor_u64, is_prime, is_squarefree};

/// Largest p^m accepted by [`verify_prop_cp_c2`].
pub const MAX_PRIME_POWER_DEGREE: u64 = 128;

const SCOPE: &str = "checked inside the subfield lattice of one cyclotomic field; \
cyclic fields not presented as subfields of Q(ζ_N) are outside the model";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticField {
    /// Squarefree d with K = Q(√d).
    pub d: i64,
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    pub real: bool,
    pub polynomial: PeriodPolynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropPex2Certificate {
    pub bound: u64,
    pub squarefree_scanned: u64,
    /// Squarefree d ≠ 1, |d| ≤ bound, whose discriminant has no odd prime factor.
    pub discriminant_route: Vec<i64>,
    /// Quadratic subfields of Q(ζ_8), all unramified outside 2.
    pub lattice_route: Vec<QuadraticField>,
    pub routes_agree: bool,
    pub real_fields: Vec<i64>,
}

fn discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

fn squarefree_part(v: i64) -> i64 {
    let core: u64 = factor_u64(v.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(q, _)| q)
        .product();
    v.signum() * core as i64
}

/// Quadratic fields unramified outside 2, found twice: by scanning squarefree
/// d with |d| ≤ bound for discriminants free of odd primes, and as the
/// index-2 subgroups of (Z/8)^×. Both must give {−1, 2, −2} with Q(√2) the
/// only real one.
pub fn verify_prop_pex2(bound: u64) -> Result<PropPex2Certificate> {
    if bound < 10 {
        return Err(Error::Precondition(format!(
            "bound must be at least 10, got {bound}"
        )));
    }
    let b = i64::try_from(bound).map_err(|_| Error::Invalid(format!("bound {bound} too large")))?;
    let mut scanned = 0;
    let mut discriminant_route = Vec::new();
    for d in -b..=b {
        if d == 0 || d == 1 || !is_squarefree(d) {
            continue;
        }
        scanned += 1;
        let odd = factor_u64(discriminant(d).unsigned_abs())
            .into_iter()
            .any(|(q, _)| q != 2);
        if !odd {
            discriminant_route.push(d);
        }
    }
    discriminant_route.sort_unstable();

    let mut lattice_route = Vec::new();
    for k in enumerate_abelian_fields(8, 2, &[2])? {
        let poly = subfield_by_periods(&k)?;
        let c = poly
            .as_i64s()
            .ok_or_else(|| Error::Verification("quadratic period polynomial overflow".into()))?;
        let d = squarefree_part(c[1] * c[1] - 4 * c[0]);
        if (d > 0) != k.is_real() {
            return Err(Error::Verification(format!(
                "Q(√{d}) disagrees with the real flag of H = {:?}",
                k.subgroup()
            )));
        }
        lattice_route.push(QuadraticField {
            d,
            modulus: 8,
            subgroup: k.subgroup().to_vec(),
            real: k.is_real(),
            polynomial: poly,
        });
    }
    let mut from_lattice: Vec<i64> = lattice_route.iter().map(|q| q.d).collect();
    from_lattice.sort_unstable();
    let routes_agree = from_lattice == discriminant_route;
    if !routes_agree {
        return Err(Error::Verification(format!(
            "discriminant scan gives {discriminant_route:?}, the lattice gives {from_lattice:?}"
        )));
    }
    if discriminant_route != [-2, -1, 2] {
        return Err(Error::Verification(format!(
            "expected d ∈ {{−2, −1, 2}}, found {discriminant_route:?}"
        )));
    }
    let real_fields: Vec<i64> = lattice_route
        .iter()
        .filter(|q| q.real)
        .map(|q| q.d)
        .collect();
    if real_fields != [2] {
        return Err(Error::Verification(format!(
            "real fields {real_fields:?}, expected only Q(√2)"
        )));
    }
    Ok(PropPex2Certificate {
        bound,
        squarefree_scanned: scanned,
        discriminant_route,
        lattice_route,
        routes_agree,
        real_fields,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubfieldRecord {
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    pub degree: u64,
    pub real: bool,
    pub ramified: Vec<u64>,
    pub galois_invariants: Vec<u64>,
    pub cyclic: bool,
}

impl SubfieldRecord {
    fn of(k: &AbelianField) -> Result<Self> {
        let g = k.galois_group()?;
        Ok(SubfieldRecord {
            modulus: k.modulus(),
            subgroup: k.subgroup().to_vec(),
            degree: k.degree(),
            real: k.is_real(),
            ramified: ramification_profile(k),
            galois_invariants: g.invariants().to_vec(),
            cyclic: g.is_cyclic(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropCpCertificate {
    pub p: u64,
    pub m: u32,
    /// N = p^(m+1) for odd p, 2^(m+2) for p = 2.
    pub modulus: u64,
    pub degree: u64,
    /// Subfields of Q(ζ_N) of degree p^m unramified outside p.
    pub candidates: Vec<SubfieldRecord>,
    /// Subfields of Q(ζ_N) of degree p.
    pub degree_p_subfields: Vec<SubfieldRecord>,
    pub k_prime: SubfieldRecord,
    pub k_prime_polynomial: PeriodPolynomial,
    pub scope: &'static str,
}

/// The cyclotomic candidate K′ of degree p^m. For odd p, Q(ζ_{p^(m+1)}) has
/// exactly one subfield of degree p^m and exactly one of degree p, and the
/// former is cyclic. For p = 2, Q(ζ_{2^(m+2)}) has three quadratic subfields
/// of which one is real, and its maximal real subfield is the only real
/// cyclic subfield of degree 2^m.
pub fn verify_prop_cp_c2(p: u64, m: u32) -> Result<PropCpCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let degree = p
        .checked_pow(m)
        .filter(|&d| m >= 1 && d <= MAX_PRIME_POWER_DEGREE)
        .ok_or_else(|| {
            Error::Precondition(format!("need m ≥ 1 and p^m ≤ {MAX_PRIME_POWER_DEGREE}"))
        })?;
    let modulus = if p == 2 { degree * 4 } else { degree * p };
    let candidates = enumerate_abelian_fields(modulus, degree, &[p])?;
    let degree_p = enumerate_abelian_fields(modulus, p, &[p])?;
    let records = |v: &[AbelianField]| v.iter().map(SubfieldRecord::of).collect::<Result<Vec<_>>>();
    let (cand_records, p_records) = (records(&candidates)?, records(&degree_p)?);
    let mismatch = |what: &str| Error::Verification(format!("p = {p}, m = {m}: {what}"));
    let k_prime = if p == 2 {
        if p_records.len() != 3 {
            return Err(mismatch(&format!(
                "{} quadratic subfields, expected 3",
                p_records.len()
            )));
        }
        if p_records.iter().filter(|r| r.real).count() != 1 {
            return Err(mismatch("expected exactly one real quadratic subfield"));
        }
        let real_cyclic: Vec<&AbelianField> = candidates
            .iter()
            .zip(&cand_records)
            .filter(|(_, r)| r.real && r.cyclic)
            .map(|(k, _)| k)
            .collect();
        let maximal_real = AbelianField::maximal_real(modulus)?;
        if real_cyclic != [&maximal_real] {
            return Err(mismatch(
                "the maximal real subfield is not the unique real cyclic candidate",
            ));
        }
        maximal_real
    } else {
        if candidates.len() != 1 || !cand_records[0].cyclic {
            return Err(mismatch(&format!(
                "{} subfields of degree p^m, expected one cyclic",
                candidates.len()
            )));
        }
        if degree_p.len() != 1 {
            return Err(mismatch(&format!(
                "{} subfields of degree p, expected 1",
                degree_p.len()
            )));
        }
        candidates[0].clone()
    };
    let k_prime_polynomial = subfield_by_periods(&k_prime)?;
    if k_prime_polynomial.degree() as u64 != degree {
        return Err(mismatch("period polynomial has the wrong degree"));
    }
    Ok(PropCpCertificate {
        p,
        m,
        modulus,
        degree,
        candidates: cand_records,
        degree_p_subfields: p_records,
        k_prime: SubfieldRecord::of(&k_prime)?,
        k_prime_polynomial,
        scope: SCOPE,
    })
}
