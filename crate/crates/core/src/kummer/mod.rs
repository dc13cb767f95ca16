//! Kummer data F(μ^{1/p}) over F = Q(ζ_p): the abelian criterion, the
//! splitting lemma, the reduction μ = ζ^t(αρ)^p and the exponent-p sweep.

mod sweep;

use num_traits::Signed;
use serde::Serialize;

use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::ideal::{
    factor_element, pth_power_shape, valuation, ClassGroupDescription, FractionalIdeal,
    PrimeIdealAboveQ,
};
use crate::ntheory::{inv_mod, is_prime};

pub use sweep::{cyclotomic_unit, verify_prop_exp, Candidate, PropExpCertificate};

/// L = F(μ^{1/p}); every predicate here depends only on μ mod (F^×)^p.
#[derive(Clone, Debug, Serialize)]
pub struct KummerDatum {
    pub p: u64,
    pub mu: CyclotomicNumber,
}

impl KummerDatum {
    pub fn new(mu: CyclotomicNumber) -> Result<Self> {
        let p = mu.conductor();
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if mu.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(KummerDatum { p, mu })
    }

    pub fn field(&self) -> &CyclotomicField {
        self.mu.field()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "xi", rename_all = "snake_case")]
pub enum CriterionEntry {
    /// σ_a(μ) = ξ^p·μ^a, verified.
    Witness(CyclotomicNumber),
    NotPthPower,
    /// Not evaluated after an earlier failure.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianCriterionReport {
    pub p: u64,
    /// (a, outcome) for a = 2, …, p−1.
    pub entries: Vec<(u64, CriterionEntry)>,
    pub first_failure: Option<u64>,
    pub pass: bool,
}

impl AbelianCriterionReport {
    pub fn witness(&self, a: u64) -> Option<&CyclotomicNumber> {
        self.entries
            .iter()
            .find(|(b, _)| *b == a)
            .and_then(|(_, e)| match e {
                CriterionEntry::Witness(x) => Some(x),
                _ => None,
            })
    }
}

/// Tests whether σ_a(μ)/μ^a is a p-th power for every a in 2..p−1, which is
/// the condition for L/Q to be abelian.
pub fn abelian_criterion(d: &KummerDatum) -> Result<AbelianCriterionReport> {
    criterion(d, false)
}

/// As [`abelian_criterion`], stopping at the first failing a.
pub fn abelian_criterion_short(d: &KummerDatum) -> Result<AbelianCriterionReport> {
    criterion(d, true)
}

fn criterion(d: &KummerDatum, stop_early: bool) -> Result<AbelianCriterionReport> {
    let p = d.p;
    let mut entries = Vec::new();
    let mut first_failure = None;
    for a in 2..p {
        if stop_early && first_failure.is_some() {
            entries.push((a, CriterionEntry::Skipped));
            continue;
        }
        let mu_a = d.mu.pow(a);
        let quotient = d.mu.galois(a).checked_div(&mu_a)?;
        let entry = match quotient.pth_power_root(p)? {
            Some(xi) => {
                if &xi.pow(p) * &mu_a != d.mu.galois(a) {
                    return Err(Error::Verification(format!(
                        "criterion witness for a = {a} fails"
                    )));
                }
                CriterionEntry::Witness(xi)
            }
            None => {
                first_failure.get_or_insert(a);
                CriterionEntry::NotPthPower
            }
        };
        entries.push((a, entry));
    }
    Ok(AbelianCriterionReport {
        p,
        entries,
        first_failure,
        pass: first_failure.is_none(),
    })
}

/// True iff v_P(μ) ≡ 0 mod p at every prime P not above p.
pub fn unramified_outside_p(d: &KummerDatum) -> Result<bool> {
    let p = d.p as i64;
    Ok(factor_element(&d.mu)?
        .iter()
        .all(|(pr, e)| pr.q() == d.p || e.rem_euclid(p) == 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitOutcome {
    /// p | v_Q(μ), or the abelian criterion fails.
    Inapplicable { reason: String, r: i64 },
    /// Q has e = f = 1.
    Holds { r: i64, e: u32, f: u32 },
    /// The hypotheses hold but Q does not split completely.
    Violated { r: i64, e: u32, f: u32 },
}

/// If p ∤ v_Q(μ) and L/Q is abelian then Q splits completely in F/Q.
pub fn split_completely_check(d: &KummerDatum, prime: &PrimeIdealAboveQ) -> Result<SplitOutcome> {
    let r = valuation(&d.mu, prime)?;
    if r.rem_euclid(d.p as i64) == 0 {
        return Ok(SplitOutcome::Inapplicable {
            reason: format!("p divides v_Q(μ) = {r}"),
            r,
        });
    }
    let report = abelian_criterion_short(d)?;
    if let Some(a) = report.first_failure {
        return Ok(SplitOutcome::Inapplicable {
            reason: format!("abelian criterion fails at a = {a}"),
            r,
        });
    }
    let (e, f) = (prime.ramification_index(), prime.residue_degree());
    Ok(if e == 1 && f == 1 {
        SplitOutcome::Holds { r, e, f }
    } else {
        SplitOutcome::Violated { r, e, f }
    })
}

/// The witness chain μ = ζ^t·(α·ρ)^p.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReduction {
    pub p: u64,
    pub mu: CyclotomicNumber,
    /// 𝔞 with 𝔞^p = (μ).
    pub ideal: FractionalIdeal,
    pub alpha: CyclotomicNumber,
    /// The unit μ/α^p.
    pub eta: CyclotomicNumber,
    /// η/σ_{−1}(η) = sign·ζ^s.
    pub conjugate_ratio_exponent: u64,
    pub conjugate_ratio_sign: i8,
    pub t: u64,
    /// ζ^{−t}η, fixed by complex conjugation.
    pub epsilon: CyclotomicNumber,
    pub rho: CyclotomicNumber,
}

/// Runs the reduction: 𝔞^p = (μ), 𝔞 = (α), η = μ/α^p a unit, η = ζ^t·ε with
/// ε real, ε = ρ^p. Each step is verified exactly and the chain is checked
/// against μ at the end.
pub fn reduce_generator(d: &KummerDatum, cg: &ClassGroupDescription) -> Result<GeneratorReduction> {
    let p = d.p;
    let field = d.field().clone();
    if cg.field() != &field {
        return Err(Error::FieldMismatch(
            cg.field().conductor(),
            field.conductor(),
        ));
    }
    if !unramified_outside_p(d)? {
        return Err(Error::Precondition("μ is ramified outside p".into()));
    }
    if let Some(a) = abelian_criterion_short(d)?.first_failure {
        return Err(Error::Precondition(format!(
            "abelian criterion fails at a = {a}"
        )));
    }
    let ideal = pth_power_shape(&d.mu, p)?
        .ok_or_else(|| Error::Precondition("(μ) is not the p-th power of an ideal".into()))?;
    let alpha = ideal
        .is_principal(Some(cg))?
        .ok_or_else(|| Error::Verification("the ideal 𝔞 with 𝔞^p = (μ) is not principal".into()))?;
    let eta = d.mu.checked_div(&alpha.pow(p))?;
    if eta.norm().abs() != num_rational::BigRational::from_integer(1.into()) || !eta.is_integral() {
        return Err(Error::Verification("μ/α^p is not a unit".into()));
    }
    let ratio = eta.checked_div(&eta.conj())?;
    let (s, sign) = (0..p)
        .flat_map(|s| [(s, 1i8), (s, -1i8)])
        .find(|&(s, sign)| {
            let z = field.zeta_pow(s as i64);
            ratio == if sign > 0 { z } else { -z }
        })
        .ok_or_else(|| Error::Verification("η/σ_{−1}(η) is not ±ζ^s".into()))?;
    if sign < 0 {
        return Err(Error::Verification(
            "η/σ_{−1}(η) = −ζ^s leaves no real ε with η = ζ^t ε".into(),
        ));
    }
    let t = (s * inv_mod(2, p).expect("p odd")) % p;
    let epsilon = &field.zeta_pow(-(t as i64)) * &eta;
    if epsilon.conj() != epsilon {
        return Err(Error::Verification("ζ^{−t}η is not real".into()));
    }
    let rho = epsilon
        .pth_power_root(p)?
        .ok_or_else(|| Error::Verification("ε is not a p-th power".into()))?;
    if &field.zeta_pow(t as i64) * &(&alpha * &rho).pow(p) != d.mu {
        return Err(Error::Verification("μ ≠ ζ^t(αρ)^p".into()));
    }
    Ok(GeneratorReduction {
        p,
        mu: d.mu.clone(),
        ideal,
        alpha,
        eta,
        conjugate_ratio_exponent: s,
        conjugate_ratio_sign: sign,
        t,
        epsilon,
        rho,
    })
}

/// A seeded instance μ = ζ^t·γ^p with γ = u·α, u a product of ζ and
/// cyclotomic units and α a small nonzero integral element. Returns (μ, t).
pub fn constructed_instance(field: &CyclotomicField, seed: u64) -> (CyclotomicNumber, u64) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = field.conductor();
    let n = field.degree();
    let mut gamma = field.zeta_pow(rng.gen_range(0..p as i64));
    for a in 2..=(p - 1) / 2 {
        let e = rng.gen_range(-2i64..=2);
        gamma = &gamma
            * &sweep::cyclotomic_unit(field, a)
                .pow_signed(e)
                .expect("units are invertible");
    }
    let alpha = loop {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
        let x = field.from_i64s(&coeffs);
        if !x.is_zero() {
            break x;
        }
    };
    let t = rng.gen_range(0..p);
    let mu = &field.zeta_pow(t as i64) * &(&gamma * &alpha).pow(p);
    (mu, t)
}

#[cfg(test)]
mod tests;
