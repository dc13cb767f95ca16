use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cyclo::CyclotomicField;
use crate::error::{Error, Result};
use crate::ntheory::{is_prime, mul_mod, primitive_root};

/// h⁻(Q(ζ_p)) = 2p·Π_{χ odd} (−½ B_{1,χ}) with B_{1,χ} = (1/p) Σ_a χ(a)·a,
/// evaluated exactly in Q(ζ_{p−1}) where the characters take their values.
pub fn minus_class_number(p: u64) -> Result<BigInt> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let values = CyclotomicField::new(p - 1)?;
    let g = primitive_root(p)?;
    // powers[k] = g^k mod p
    let mut powers = Vec::with_capacity((p - 1) as usize);
    let mut x = 1u64;
    for _ in 0..p - 1 {
        powers.push(x);
        x = mul_mod(x, g, p);
    }
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(2 * p));
    let mut product = values.integer(2 * p);
    for j in (1..p - 1).step_by(2) {
        let mut coeffs = vec![BigInt::from(0); (p - 1) as usize];
        for (k, &a) in powers.iter().enumerate() {
            coeffs[(j as usize * k) % (p - 1) as usize] += BigInt::from(a);
        }
        let sum = values.from_poly(coeffs);
        product = &product * &sum.scale(&scale);
    }
    let h = product
        .as_rational()
        .ok_or_else(|| Error::Verification("Bernoulli product is not rational".into()))?;
    if !h.is_integer() || h < BigRational::one() {
        return Err(Error::Verification(format!(
            "Bernoulli product {h} is not a positive integer"
        )));
    }
    Ok(h.to_integer())
}
