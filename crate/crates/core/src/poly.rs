//! Integer and rational polynomial helpers (coefficients low to high).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ntheory::divisors;

pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
pub fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    if r.len() <= db {
        assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(q)
}

/// Cyclotomic polynomials Φ_d for every divisor d of m, keyed by d.
pub fn cyclotomic_family(m: u64) -> BTreeMap<u64, Vec<BigInt>> {
    let mut out: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(m) {
        let mut xd = vec![BigInt::zero(); d as usize + 1];
        xd[0] = -BigInt::one();
        xd[d as usize] = BigInt::one();
        let mut phi = xd;
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            phi = div_exact_monic(&phi, &out[&e]);
        }
        out.insert(d, phi);
    }
    out
}

pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    cyclotomic_family(m).remove(&m).expect("m divides itself")
}

pub fn to_rational(a: &[BigInt]) -> Vec<BigRational> {
    a.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Renders a rational polynomial as e.g. `x^3 - 3*x + 1`.
pub fn format_rational(poly: &[BigRational]) -> String {
    let mut terms = Vec::new();
    for (i, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let coeff = if mag.is_one() && i > 0 {
            String::new()
        } else if i > 0 {
            format!("{mag}*")
        } else {
            format!("{mag}")
        };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let sign = if terms.is_empty() {
            if neg {
                "-"
            } else {
                ""
            }
        } else if neg {
            " - "
        } else {
            " + "
        };
        terms.push(format!("{sign}{coeff}{mono}"));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        // first cyclotomic polynomial with a coefficient outside {-1,0,1}
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn formatting() {
        let p = to_rational(&ints(&[1, -3, 0, 1]));
        assert_eq!(format_rational(&p), "x^3 - 3*x + 1");
        assert_eq!(format_rational(&to_rational(&ints(&[-5, 1]))), "x - 5");
    }
}
