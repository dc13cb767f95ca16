//! The group ring Z[Gal(Q(ζ_p)/Q)], the Stickelberger element and its action
//! on ideals, exact Gauss sums, and instance checks of Stickelberger's theorem.

mod analytic;
mod gauss;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclo::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::ideal::{
    ideal_from_factorization, ClassGroupDescription, FractionalIdeal, IdealRepr, PrimeIdealAboveQ,
    PrimeIdealRepr, SearchEffort,
};
use crate::json::{ints, JsonInt};
use crate::ntheory::{inv_mod, is_prime};

pub use analytic::minus_class_number;
pub use gauss::{
    gauss_sum, gauss_sum_power_descend, verify_stickelberger_factorization, GaussSumDatum,
    StickelbergerCertificate,
};

/// Σ n_a σ_a with a ranging over (Z/pZ)^×; σ_aσ_b = σ_{ab}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    p: u64,
    /// coeffs[a - 1] = n_a
    coeffs: Vec<i64>,
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

impl GroupRingElement {
    pub fn zero(p: u64) -> Result<Self> {
        require_odd_prime(p)?;
        Ok(GroupRingElement {
            p,
            coeffs: vec![0; (p - 1) as usize],
        })
    }

    /// The basis element σ_a.
    pub fn sigma(p: u64, a: u64) -> Result<Self> {
        let mut e = Self::zero(p)?;
        if a.is_multiple_of(p) {
            return Err(Error::NotCoprime(a, p));
        }
        e.coeffs[(a % p - 1) as usize] = 1;
        Ok(e)
    }

    pub fn identity(p: u64) -> Result<Self> {
        Self::sigma(p, 1)
    }

    pub fn from_coefficients(p: u64, coeffs: &BTreeMap<u64, i64>) -> Result<Self> {
        let mut e = Self::zero(p)?;
        for (&a, &n) in coeffs {
            if a % p == 0 {
                return Err(Error::NotCoprime(a, p));
            }
            e.coeffs[(a % p - 1) as usize] += n;
        }
        Ok(e)
    }

    pub fn conductor(&self) -> u64 {
        self.p
    }

    pub fn coefficient(&self, a: u64) -> i64 {
        if a.is_multiple_of(self.p) {
            return 0;
        }
        self.coeffs[(a % self.p - 1) as usize]
    }

    /// Nonzero terms (a, n_a) in increasing a.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(i, &n)| (i as u64 + 1, n))
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(GroupRingElement { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GroupRingElement { p: self.p, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.p)?;
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.coeffs[((a * b) % self.p - 1) as usize] += x * y;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupRingElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Π_a σ_a(x)^{n_a}.
    pub fn apply_to_element(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if x.conductor() != self.p {
            return Err(Error::FieldMismatch(x.conductor(), self.p));
        }
        let mut acc = x.field().one();
        for (a, n) in self.terms() {
            acc = &acc * &x.galois(a).pow_signed(n)?;
        }
        Ok(acc)
    }

    /// Π_a σ_a(P)^{n_a} assembled from the conjugate primes.
    pub fn apply_to_prime(&self, prime: &PrimeIdealAboveQ) -> Result<FractionalIdeal> {
        if prime.field().conductor() != self.p {
            return Err(Error::FieldMismatch(prime.field().conductor(), self.p));
        }
        #[allow(clippy::mutable_key_type)]
        let mut exps: BTreeMap<PrimeIdealAboveQ, i64> = BTreeMap::new();
        for (a, n) in self.terms() {
            *exps.entry(prime.galois(a)?).or_default() += n;
        }
        let factors: Vec<(PrimeIdealAboveQ, i64)> =
            exps.into_iter().filter(|(_, e)| *e != 0).collect();
        ideal_from_factorization(prime.field(), &factors)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, n) in self.terms() {
            let mag = n.unsigned_abs();
            let body = if mag == 1 {
                format!("σ{a}")
            } else {
                format!("{mag}σ{a}")
            };
            match (first, n < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<u64, i64> = self.terms().collect();
        #[derive(Serialize)]
        struct Repr {
            p: u64,
            coefficients: BTreeMap<u64, i64>,
        }
        Repr {
            p: self.p,
            coefficients: map,
        }
        .serialize(s)
    }
}

/// θ = Σ_{a=1}^{p−1} a·σ_a^{−1}.
pub fn stickelberger_element(p: u64) -> Result<GroupRingElement> {
    let mut theta = GroupRingElement::zero(p)?;
    for a in 1..p {
        let inv = inv_mod(a, p).expect("unit mod p");
        theta.coeffs[(inv - 1) as usize] += a as i64;
    }
    Ok(theta)
}

/// Π_a σ_a(I)^{n_a}.
pub fn apply_to_ideal(e: &GroupRingElement, ideal: &FractionalIdeal) -> Result<FractionalIdeal> {
    if ideal.field().conductor() != e.p {
        return Err(Error::FieldMismatch(ideal.field().conductor(), e.p));
    }
    let mut acc = FractionalIdeal::unit(ideal.field())?;
    for (a, n) in e.terms() {
        acc = acc.multiply(&ideal.galois(a)?.pow(n)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationWitness {
    /// How the ideal was chosen: a class-group generator or, for a trivial
    /// class group, a principal seed prime.
    pub source: &'static str,
    pub ideal: IdealRepr,
    pub prime: Option<PrimeIdealRepr>,
    pub image_norm: JsonInt,
    /// Generator of the θ-image, verified to generate it exactly.
    pub generator: Option<CyclotomicNumber>,
    /// Class of the θ-image computed by class arithmetic.
    pub image_class: Vec<JsonInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationCertificate {
    pub p: u64,
    pub theta: GroupRingElement,
    pub class_group_order: JsonInt,
    pub invariants: Vec<u64>,
    pub witnesses: Vec<AnnihilationWitness>,
    /// False when some θ-image generator could not be exhibited.
    pub complete: bool,
}

/// For every class-group generator 𝔞, exhibits a verified generator of 𝔞^θ
/// and checks that the class of 𝔞^θ is trivial by class arithmetic. A trivial
/// class group is exercised on the smallest split prime, whose generator α
/// gives the witness α^θ.
pub fn verify_annihilation(p: u64, cg: &ClassGroupDescription) -> Result<AnnihilationCertificate> {
    require_odd_prime(p)?;
    if cg.field().conductor() != p {
        return Err(Error::FieldMismatch(cg.field().conductor(), p));
    }
    let theta = stickelberger_element(p)?;
    let field = cg.field();
    let mut witnesses = Vec::new();
    let mut complete = true;
    for gen in cg.generators() {
        let single = single_prime(cg, &gen.exponents);
        let image = match single {
            Some(pr) => theta.apply_to_prime(pr)?,
            None => apply_to_ideal(&theta, &gen.representative)?,
        };
        let class = cg.class_of(&image)?;
        if class.iter().any(|c| c != &BigInt::from(0)) {
            return Err(Error::Verification(format!(
                "θ-image of a class generator has class {class:?}"
            )));
        }
        let generator = cg.decide_principal(&image)?;
        match &generator {
            Some(g) if FractionalIdeal::principal(g)? == image => {}
            Some(_) => {
                return Err(Error::Verification(
                    "θ-image generator does not generate".into(),
                ))
            }
            None => {
                return Err(Error::Verification(
                    "θ-image of a class generator is not principal".into(),
                ))
            }
        }
        witnesses.push(AnnihilationWitness {
            source: "class-group generator",
            ideal: gen.representative.to_repr(),
            prime: single.map(PrimeIdealAboveQ::to_repr),
            image_norm: JsonInt(image.norm().to_integer()),
            generator,
            image_class: ints(&class),
        });
    }
    if cg.generators().is_empty() {
        let q = (1..)
            .map(|k| 2 * k * p + 1)
            .find(|&q| is_prime(q))
            .expect("primes ≡ 1 mod 2p exist");
        let seed = crate::ideal::factor_rational_prime(q, field)?.remove(0).0;
        let image = theta.apply_to_prime(&seed)?;
        let generator = match seed.ideal().search_generator(&SearchEffort::default())? {
            Some(alpha) => {
                let g = theta.apply_to_element(&alpha)?;
                if FractionalIdeal::principal(&g)? != image {
                    return Err(Error::Verification(
                        "α^θ does not generate the θ-image".into(),
                    ));
                }
                Some(g)
            }
            None => {
                complete = false;
                None
            }
        };
        witnesses.push(AnnihilationWitness {
            source: "principal seed prime",
            ideal: seed.ideal().to_repr(),
            prime: Some(seed.to_repr()),
            image_norm: JsonInt(image.norm().to_integer()),
            generator,
            image_class: Vec::new(),
        });
    }
    Ok(AnnihilationCertificate {
        p,
        theta,
        class_group_order: JsonInt(cg.order()),
        invariants: cg.invariants(),
        witnesses,
        complete,
    })
}

fn single_prime<'a>(
    cg: &'a ClassGroupDescription,
    exponents: &[i64],
) -> Option<&'a PrimeIdealAboveQ> {
    let nonzero: Vec<usize> = (0..exponents.len())
        .filter(|&i| exponents[i] != 0)
        .collect();
    match nonzero.as_slice() {
        [i] if exponents[*i] == 1 => cg.residual_primes().get(*i).copied(),
        _ => None,
    }
}
