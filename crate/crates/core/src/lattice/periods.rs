use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::AbelianField;
use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::json::{ints, JsonInt};

/// Largest c tried in the fallback θ = η_H + c·Σ_h ζ^{jh}.
pub const MAX_PERTURBATION: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodPolynomial {
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    /// Monic, low to high.
    pub coefficients: Vec<JsonInt>,
    /// 0 when the Gaussian period η_H itself generates; otherwise θ is
    /// η_H + c·Σ_h ζ^{jh} with c = `perturbation` and j = `perturbation_power`,
    /// the first pair in the order j = 2, 3, …, then c = 1, 2, ….
    pub perturbation: u64,
    pub perturbation_power: u64,
    /// Coset representatives g with σ_g(θ) ≠ θ for g ∉ H, checked exactly.
    pub conjugates_distinct: bool,
    pub fixed_by_subgroup: bool,
}

impl PeriodPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn as_i64s(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(|c| c.0.to_i64()).collect()
    }

    /// The element whose minimal polynomial this is.
    pub fn generator(&self, field: &CyclotomicField) -> Result<CyclotomicNumber> {
        let k = AbelianField::new(self.modulus, &self.subgroup)?;
        if field.conductor() != self.modulus {
            return Err(Error::FieldMismatch(field.conductor(), self.modulus));
        }
        let eta = period(field, &k, 1);
        Ok(if self.perturbation == 0 {
            eta
        } else {
            &eta + &period(field, &k, self.perturbation_power)
                .scale_int(&BigInt::from(self.perturbation))
        })
    }

    /// Exact evaluation at an element of any cyclotomic field.
    pub fn evaluate(&self, x: &CyclotomicNumber) -> CyclotomicNumber {
        let field = x.field();
        self.coefficients.iter().rev().fold(field.zero(), |acc, c| {
            &(&acc * x) + &field.integer(c.0.clone())
        })
    }
}

/// Σ_{h∈H} σ_h(ζ^k).
fn period(field: &CyclotomicField, k: &AbelianField, power: u64) -> CyclotomicNumber {
    let n = k.modulus();
    k.subgroup().iter().fold(field.zero(), |acc, &h| {
        &acc + &field.zeta_pow(((h * power) % n) as i64)
    })
}

/// Minimal polynomial over Q of a generator of K built from Gaussian
/// periods. The conjugates σ_g(θ), g over coset representatives, are
/// multiplied out numerically and rounded; the result is accepted only after
/// exact checks that θ is H-fixed, has pairwise distinct conjugates and is a
/// root.
pub fn subfield_by_periods(k: &AbelianField) -> Result<PeriodPolynomial> {
    let n = k.modulus();
    let field = CyclotomicField::new(n)?;
    let eta = period(&field, k, 1);
    let reps = k.coset_representatives();
    let attempts = std::iter::once((0, 0))
        .chain((2..n).flat_map(|j| (1..=MAX_PERTURBATION).map(move |c| (j, c))));
    for (j, c) in attempts {
        let theta = if c == 0 {
            eta.clone()
        } else {
            &eta + &period(&field, k, j).scale_int(&BigInt::from(c))
        };
        let fixed_by_subgroup = k.subgroup().iter().all(|&h| theta.galois(h) == theta);
        if !fixed_by_subgroup {
            return Err(Error::Verification(format!(
                "period is not fixed by H at modulus {n}"
            )));
        }
        // the stabiliser of θ is H exactly iff σ_g(θ) ≠ θ off H
        if reps.iter().skip(1).any(|&g| theta.galois(g) == theta) {
            continue;
        }
        let bound = (k.subgroup().len() as u64) * (1 + c);
        let coefficients = numeric_product(&theta, &reps, bound)?;
        let poly = PeriodPolynomial {
            modulus: n,
            subgroup: k.subgroup().to_vec(),
            coefficients: ints(&coefficients),
            perturbation: c,
            perturbation_power: j,
            conjugates_distinct: true,
            fixed_by_subgroup,
        };
        if !poly.evaluate(&theta).is_zero() {
            return Err(Error::Verification(format!(
                "rounded period polynomial does not vanish at modulus {n}"
            )));
        }
        return Ok(poly);
    }
    Err(Error::Verification(format!(
        "no perturbation η_H + c·Σ_h ζ^(jh) with c ≤ {MAX_PERTURBATION} generates the fixed field of H at modulus {n}"
    )))
}

/// Π_g (x − σ_g(θ)) in fixed point, rounded to integers. `bound` caps |σ_g(θ)|.
fn numeric_product(theta: &CyclotomicNumber, reps: &[u64], bound: u64) -> Result<Vec<BigInt>> {
    let d = reps.len() as u32;
    // coefficients are at most (1 + bound)^d and rounding error grows by the
    // same factor, so twice that many bits plus a margin suffices
    let growth = 64 - (1 + bound).leading_zeros();
    let bits = 2 * d * growth + 64;
    let embeddings = theta.embed_complex(bits);
    let indices = theta.field().galois_indices();
    let roots: Vec<(BigInt, BigInt)> = reps
        .iter()
        .map(|g| {
            let i = indices.binary_search(g).expect("representatives are units");
            (embeddings[i].re.clone(), embeddings[i].im.clone())
        })
        .collect();
    let one = BigInt::one() << bits;
    let mut re = vec![one];
    let mut im = vec![BigInt::zero()];
    for (rr, ri) in &roots {
        // multiply by (x − r)
        let mut nre = vec![BigInt::zero(); re.len() + 1];
        let mut nim = vec![BigInt::zero(); re.len() + 1];
        for j in 0..re.len() {
            nre[j + 1] += &re[j];
            nim[j + 1] += &im[j];
            nre[j] -= (&re[j] * rr - &im[j] * ri) >> bits;
            nim[j] -= (&re[j] * ri + &im[j] * rr) >> bits;
        }
        re = nre;
        im = nim;
    }
    let half = BigInt::one() << (bits - 1);
    let mut out = Vec::with_capacity(re.len());
    for (r, i) in re.iter().zip(&im) {
        if i.abs() > (BigInt::one() << (bits - 8)) {
            return Err(Error::Verification(
                "period polynomial has a non-real coefficient".into(),
            ));
        }
        out.push((r + &half) >> bits);
    }
    Ok(out)
}
