use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{
    abelian_criterion_short, reduce_generator, unramified_outside_p, GeneratorReduction,
    KummerDatum,
};
use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::ideal::class_group;
use crate::json::JsonInt;
use crate::ntheory::is_prime;

/// Largest p for which the exhaustive sweep is run.
pub const MAX_SWEEP_PRIME: u64 = 7;

/// The cyclotomic unit (1 − ζ^a)/(1 − ζ) = 1 + ζ + … + ζ^{a−1}.
pub fn cyclotomic_unit(field: &CyclotomicField, a: u64) -> CyclotomicNumber {
    field.from_i64s(&vec![1; a as usize])
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    /// Exponents of the generators, each in 0..p.
    pub exponents: Vec<u64>,
    pub unramified_outside_p: bool,
    pub abelian: bool,
    pub failing_a: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionIdentification {
    pub conductor: u64,
    /// ζ_{p²}^p equals the image of ζ_p, so F(ζ_p^{1/p}) = Q(ζ_{p²}).
    pub root_check: bool,
    pub relative_degree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropExpCertificate {
    pub p: u64,
    pub generator_names: Vec<String>,
    pub generators: Vec<CyclotomicNumber>,
    pub class_count: u64,
    pub class_number: JsonInt,
    pub candidates: Vec<Candidate>,
    pub survivors: Vec<Vec<u64>>,
    /// Survivors are exactly the classes of ζ^k.
    pub survivors_are_roots_of_unity: bool,
    pub reductions: Vec<GeneratorReduction>,
    pub extension: ExtensionIdentification,
}

/// Sweeps V = ⟨ζ, 1−ζ, (1−ζ^a)/(1−ζ) : 2 ≤ a ≤ (p−1)/2⟩ modulo p-th powers,
/// applying the ramification test and the abelian criterion to every class.
/// The survivors must be exactly ⟨ζ⟩, each reducing to μ = ζ^t, which
/// identifies the extension as Q(ζ_{p²}).
pub fn verify_prop_exp(p: u64) -> Result<PropExpCertificate> {
    if p == 2 || !is_prime(p) || p > MAX_SWEEP_PRIME {
        return Err(Error::Precondition(format!(
            "the sweep runs for odd primes p ≤ {MAX_SWEEP_PRIME}, got {p}"
        )));
    }
    let field = CyclotomicField::new(p)?;
    let cg = class_group(&field, None)?;
    if !cg.order().is_one() || !cg.is_unconditional() {
        return Err(Error::Precondition(format!(
            "class number of Q(ζ_{p}) is not certified to be 1"
        )));
    }
    let mut names = vec!["zeta".to_string(), "1-zeta".to_string()];
    let mut gens = vec![field.zeta(), &field.one() - &field.zeta()];
    for a in 2..=(p - 1) / 2 {
        names.push(format!("(1-zeta^{a})/(1-zeta)"));
        gens.push(cyclotomic_unit(&field, a));
    }
    let k = gens.len();
    // powers[i][e] = gens[i]^e
    let powers: Vec<Vec<CyclotomicNumber>> = gens
        .iter()
        .map(|g| {
            let mut v = vec![field.one()];
            for e in 1..p {
                v.push(&v[e as usize - 1] * g);
            }
            v
        })
        .collect();
    let class_count = p.pow(k as u32);
    let mut candidates = Vec::with_capacity(class_count as usize);
    let mut survivors = Vec::new();
    for index in 0..class_count {
        let exponents: Vec<u64> = (0..k).map(|i| (index / p.pow(i as u32)) % p).collect();
        let mu = exponents
            .iter()
            .enumerate()
            .fold(field.one(), |acc, (i, &e)| &acc * &powers[i][e as usize]);
        let d = KummerDatum::new(mu)?;
        let unramified = unramified_outside_p(&d)?;
        let (abelian, failing_a) = if unramified {
            let report = abelian_criterion_short(&d)?;
            (report.pass, report.first_failure)
        } else {
            (false, None)
        };
        if unramified && abelian {
            survivors.push(exponents.clone());
        }
        candidates.push(Candidate {
            exponents,
            unramified_outside_p: unramified,
            abelian,
            failing_a,
        });
    }
    let expected: Vec<Vec<u64>> = (0..p)
        .map(|e| {
            let mut v = vec![0; k];
            v[0] = e;
            v
        })
        .collect();
    let survivors_are_roots_of_unity = survivors == expected;
    if !survivors_are_roots_of_unity {
        return Err(Error::Verification(format!(
            "survivors {survivors:?} are not exactly the powers of ζ"
        )));
    }
    let mut reductions = Vec::new();
    for s in &survivors {
        let d = KummerDatum::new(field.zeta_pow(s[0] as i64))?;
        let red = reduce_generator(&d, &cg)?;
        if red.t != s[0] {
            return Err(Error::Verification(format!(
                "reduction of ζ^{} returned t = {}",
                s[0], red.t
            )));
        }
        reductions.push(red);
    }
    let big = CyclotomicField::new(p * p)?;
    let root_check = big.zeta().pow(p) == field.zeta().embed_into(&big)?;
    let relative_degree = (big.degree() / field.degree()) as u64;
    if !root_check || relative_degree != p {
        return Err(Error::Verification(
            "Q(ζ_{p²}) identification failed".into(),
        ));
    }
    Ok(PropExpCertificate {
        p,
        generator_names: names,
        generators: gens,
        class_count,
        class_number: JsonInt(BigInt::from(1)),
        candidates,
        survivors,
        survivors_are_roots_of_unity,
        reductions,
        extension: ExtensionIdentification {
            conductor: p * p,
            root_check,
            relative_degree,
        },
    })
}
