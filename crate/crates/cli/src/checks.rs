use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use kwverify::ideal::{class_group, factor_rational_prime, FractionalIdeal};
use kwverify::kummer::{
    abelian_criterion, constructed_instance, reduce_generator, unramified_outside_p,
    verify_prop_exp, KummerDatum,
};
use kwverify::lattice::{
    cyclic_compositum_check, ramification_profile, subfield_by_periods, verify_prop_cp_c2,
    verify_prop_pex2, AbelianField,
};
use kwverify::ntheory::{divisors, euler_phi, is_prime, mult_order, primes_up_to, primitive_root};
use kwverify::stick::{verify_annihilation, verify_stickelberger_factorization};
use kwverify::{poly, CyclotomicField, Error, Result};

/// One verification with its parameters. Serializes to {"check": name, …params}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    Kernel { m_max: u64 },
    Splitting { p: u64, q_max: u64 },
    Classgroup { p: u64, factor_base: Option<u64> },
    Stickelberger { p: u64, factor_base: Option<u64> },
    GaussSum { p: u64, q: u64 },
    PropExp { p: u64 },
    PropPex2 { bound: u64 },
    LemmaLc { p: u64, amax: u32, bmax: u32 },
    PropCp { p: u64, m: u32 },
    Subfield { n: u64, subgroup: Vec<u64> },
    Kummer { p: u64, samples: u64, seed: u64 },
    Reduction { p: u64, instances: u64, seed: u64 },
}

impl Check {
    /// (name, params) as they appear in the report.
    pub fn describe(&self) -> (String, Value) {
        let mut v = serde_json::to_value(self).expect("checks serialize");
        let obj = v.as_object_mut().expect("tagged enum is an object");
        let name = obj
            .remove("check")
            .and_then(|n| n.as_str().map(str::to_owned))
            .expect("tag present");
        (name, v)
    }

    /// Runs the check; `Ok(true)` is a pass, `Ok(false)` a completed run
    /// whose witness shows an open search (reported as undecided).
    pub fn run(&self) -> Result<(bool, Value)> {
        match *self {
            Check::Kernel { m_max } => kernel(m_max),
            Check::Splitting { p, q_max } => splitting(p, q_max),
            Check::Classgroup { p, factor_base } => {
                let cg = class_group(&CyclotomicField::new(p)?, factor_base)?;
                cg.verify()?;
                Ok((true, to_json(&cg.to_certificate())))
            }
            Check::Stickelberger { p, factor_base } => {
                let cg = class_group(&CyclotomicField::new(p)?, factor_base)?;
                cg.verify()?;
                let cert = verify_annihilation(p, &cg)?;
                Ok((cert.complete, to_json(&cert)))
            }
            Check::GaussSum { p, q } => {
                let g = primitive_root(q)?;
                Ok((true, to_json(&verify_stickelberger_factorization(p, q, g)?)))
            }
            Check::PropExp { p } => Ok((true, to_json(&verify_prop_exp(p)?))),
            Check::PropPex2 { bound } => Ok((true, to_json(&verify_prop_pex2(bound)?))),
            Check::LemmaLc { p, amax, bmax } => {
                Ok((true, to_json(&cyclic_compositum_check(p, amax, bmax)?)))
            }
            Check::PropCp { p, m } => Ok((true, to_json(&verify_prop_cp_c2(p, m)?))),
            Check::Subfield { n, ref subgroup } => {
                let k = AbelianField::new(n, subgroup)?;
                let poly = subfield_by_periods(&k)?;
                let group = k.galois_group()?;
                Ok((
                    true,
                    json!({
                        "modulus": n,
                        "subgroup": k.subgroup(),
                        "degree": k.degree(),
                        "real": k.is_real(),
                        "ramified": ramification_profile(&k),
                        "galois_invariants": group.invariants(),
                        "polynomial": to_json(&poly),
                    }),
                ))
            }
            Check::Kummer { p, samples, seed } => kummer(p, samples, seed),
            Check::Reduction { p, instances, seed } => reduction(p, instances, seed),
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificates serialize")
}

/// Π_{d|m} Φ_d = x^m − 1 for m ≤ m_max, deg Φ_m = φ(m), and norm and trace of
/// ζ_p and 1 − ζ_p for the odd primes p ≤ 13.
fn kernel(m_max: u64) -> Result<(bool, Value)> {
    if m_max == 0 {
        return Err(Error::Invalid("m_max must be positive".into()));
    }
    for m in 1..=m_max {
        let family = poly::cyclotomic_family(m);
        let product = divisors(m)
            .iter()
            .fold(vec![BigInt::from(1)], |acc, d| poly::mul(&acc, &family[d]));
        let mut expected = vec![BigInt::from(0); m as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[m as usize] = BigInt::from(1);
        if product != expected {
            return Err(Error::Verification(format!("Π_(d|{m}) Φ_d ≠ x^{m} − 1")));
        }
        if family[&m].len() as u64 - 1 != euler_phi(m) {
            return Err(Error::Verification(format!("deg Φ_{m} ≠ φ({m})")));
        }
    }
    let mut fields = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let f = CyclotomicField::new(p)?;
        let norm = (&f.one() - &f.zeta()).norm();
        let trace = f.zeta().trace();
        if norm != BigRational::from(BigInt::from(p))
            || trace != BigRational::from(BigInt::from(-1))
        {
            return Err(Error::Verification(format!(
                "N(1 − ζ_{p}) = {norm}, Tr(ζ_{p}) = {trace}"
            )));
        }
        fields.push(json!({ "p": p, "norm_one_minus_zeta": p, "trace_zeta": -1 }));
    }
    Ok((
        true,
        json!({ "product_identity_up_to": m_max, "fields": fields }),
    ))
}

/// For every prime q ≤ q_max, q ≠ p: g·f = p − 1 with f = ord_p(q) and e = 1,
/// and (p) = (1 − ζ)^(p−1).
fn splitting(p: u64, q_max: u64) -> Result<(bool, Value)> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    let f = CyclotomicField::new(p)?;
    let mut rows = Vec::new();
    for q in primes_up_to(q_max).into_iter().filter(|&q| q != p) {
        let primes = factor_rational_prime(q, &f)?;
        let order = mult_order(q % p, p)?;
        let unramified = primes.iter().all(|(_, e)| *e == 1);
        let degrees_agree = primes
            .iter()
            .all(|(pr, _)| pr.residue_degree() as u64 == order);
        if !unramified || !degrees_agree || primes.len() as u64 * order != p - 1 {
            return Err(Error::Verification(format!(
                "q = {q}: {} primes, ord = {order}, unramified = {unramified}",
                primes.len()
            )));
        }
        rows.push(json!({ "q": q, "primes": primes.len(), "order": order }));
    }
    let above_p = factor_rational_prime(p, &f)?;
    let lambda = FractionalIdeal::principal(&(&f.one() - &f.zeta()))?;
    let totally_ramified =
        above_p.len() == 1 && above_p[0].1 == (p - 1) as u32 && above_p[0].0.ideal() == lambda;
    if !totally_ramified {
        return Err(Error::Verification(format!("(p) ≠ (1 − ζ)^{}", p - 1)));
    }
    Ok((
        true,
        json!({ "p": p, "split_data": rows, "p_is_lambda_power": p - 1 }),
    ))
}

fn random_element(field: &CyclotomicField, rng: &mut ChaCha8Rng) -> kwverify::CyclotomicNumber {
    loop {
        let coeffs: Vec<i64> = (0..field.degree())
            .map(|_| rng.gen_range(-3i64..=3))
            .collect();
        let x = field.from_i64s(&coeffs);
        if !x.is_zero() {
            return x;
        }
    }
}

/// ζ passes with witnesses ξ satisfying ξ^p = 1, 2 fails (at a = 2 when
/// p = 3), and both predicates are unchanged by μ ↦ μν^p for seeded random ν.
fn kummer(p: u64, samples: u64, seed: u64) -> Result<(bool, Value)> {
    let f = CyclotomicField::new(p)?;
    let zeta = abelian_criterion(&KummerDatum::new(f.zeta())?)?;
    let zeta_ok = zeta.pass && (2..p).all(|a| zeta.witness(a).is_some_and(|x| x.pow(p) == f.one()));
    if !zeta_ok {
        return Err(Error::Verification(format!(
            "μ = ζ_{p} fails the criterion"
        )));
    }
    let two = abelian_criterion(&KummerDatum::new(f.integer(2))?)?;
    if two.pass || (p == 3 && two.first_failure != Some(2)) {
        return Err(Error::Verification(format!(
            "μ = 2 passes or fails at the wrong a: {:?}",
            two.first_failure
        )));
    }
    let bases = [
        f.zeta(),
        f.integer(2),
        &f.one() - &f.zeta(),
        f.from_i64s(&[1, 2]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let mu = bases[rng.gen_range(0..bases.len())].clone();
        let nu = random_element(&f, &mut rng);
        let a = KummerDatum::new(mu.clone())?;
        let b = KummerDatum::new(&mu * &nu.pow(p))?;
        let same = abelian_criterion(&a)?.pass == abelian_criterion(&b)?.pass
            && unramified_outside_p(&a)? == unramified_outside_p(&b)?;
        if !same {
            return Err(Error::Verification(format!(
                "sample {i}: predicates differ on μ = {mu:?}, ν = {nu:?}"
            )));
        }
    }
    Ok((
        true,
        json!({
            "zeta_witnesses": to_json(&zeta.entries),
            "two_first_failure": two.first_failure,
            "invariance_samples": samples,
            "seed": seed,
        }),
    ))
}

/// Reduces seeded instances μ = ζ^t·γ^p and checks that the recovered t
/// matches the one used to build μ.
fn reduction(p: u64, instances: u64, seed: u64) -> Result<(bool, Value)> {
    let f = CyclotomicField::new(p)?;
    let cg = class_group(&f, None)?;
    let mut rows = Vec::new();
    for i in 0..instances {
        let s = seed.wrapping_add(i);
        let (mu, t) = constructed_instance(&f, s);
        let red = reduce_generator(&KummerDatum::new(mu)?, &cg)?;
        if red.t != t {
            return Err(Error::Verification(format!(
                "seed {s}: recovered t = {}, built with t = {t}",
                red.t
            )));
        }
        rows.push(
            json!({ "seed": s, "t": t, "alpha": to_json(&red.alpha), "rho": to_json(&red.rho) }),
        );
    }
    Ok((true, json!({ "p": p, "instances": rows })))
}
