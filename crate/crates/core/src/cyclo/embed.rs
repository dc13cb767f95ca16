use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{CyclotomicField, CyclotomicNumber};

/// A complex number (re + i·im) / 2^bits in fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexApprox {
    #[serde(skip)]
    pub re: BigInt,
    #[serde(skip)]
    pub im: BigInt,
    pub bits: u32,
}

impl ComplexApprox {
    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(
            fixed_to_f64(&self.re, self.bits),
            fixed_to_f64(&self.im, self.bits),
        )
    }

    pub fn norm_f64(&self) -> f64 {
        self.to_f64().norm()
    }
}

fn fixed_to_f64(v: &BigInt, bits: u32) -> f64 {
    let shift = v.bits().saturating_sub(60) as u32;
    let top = (v >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - bits as i32)
}

fn fmul(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    (a * b) >> w
}

fn atan_inv(k: u64, w: u32) -> BigInt {
    // atan(1/k) = Σ (-1)^j / ((2j+1) k^(2j+1))
    let one = BigInt::one() << w;
    let k2 = BigInt::from(k * k);
    let mut term = &one / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &k2;
        j += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

fn cos_sin(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut k = 1u64;
    loop {
        term = fmul(&term, theta, w) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        k += 1;
    }
    (cos, sin)
}

impl CyclotomicField {
    /// ∞-norm of the inverse of the embedding matrix (ζ^(a·i))_{a,i}: bounds
    /// power-basis coefficients by the largest absolute embedding.
    pub(crate) fn coefficient_gain(&self) -> f64 {
        *self.0.coefficient_gain.get_or_init(|| {
            let n = self.degree();
            let m = self.conductor() as f64;
            let units = self.galois_indices();
            let mut a: Vec<Vec<Complex64>> = units
                .iter()
                .map(|&k| {
                    (0..n)
                        .map(|i| {
                            Complex64::from_polar(
                                1.0,
                                2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / m,
                            )
                        })
                        .collect()
                })
                .collect();
            let mut inv: Vec<Vec<Complex64>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            if r == c {
                                Complex64::one()
                            } else {
                                Complex64::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for col in 0..n {
                let piv = (col..n)
                    .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                    .unwrap();
                a.swap(col, piv);
                inv.swap(col, piv);
                let d = a[col][col];
                for c in 0..n {
                    a[col][c] /= d;
                    inv[col][c] /= d;
                }
                for r in 0..n {
                    if r != col {
                        let f = a[r][col];
                        if f != Complex64::zero() {
                            for c in 0..n {
                                let (ac, ic) = (a[col][c], inv[col][c]);
                                a[r][c] -= f * ac;
                                inv[r][c] -= f * ic;
                            }
                        }
                    }
                }
            }
            inv.iter()
                .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max)
        })
    }
}

impl CyclotomicNumber {
    /// Complex embeddings ζ ↦ e^(2πik/m), gcd(k, m) = 1, in ascending k,
    /// each accurate to about 2^-bits (bits is raised to at least 64).
    pub fn embed_complex(&self, bits: u32) -> Vec<ComplexApprox> {
        let bits = bits.max(64);
        let m = self.conductor();
        let guard = 32 + 64 - (m.max(2) * self.field.degree() as u64).leading_zeros();
        let w = bits + guard;
        let theta = (pi_fixed(w) * 2) / BigInt::from(m);
        let (c, s) = cos_sin(&theta, w);
        let one = BigInt::one() << w;
        let mut powers = Vec::with_capacity(m as usize);
        let (mut re, mut im) = (one, BigInt::zero());
        for _ in 0..m {
            powers.push((re.clone(), im.clone()));
            let nre = fmul(&re, &c, w) - fmul(&im, &s, w);
            let nim = fmul(&re, &s, w) + fmul(&im, &c, w);
            re = nre;
            im = nim;
        }
        self.field
            .galois_indices()
            .iter()
            .map(|&k| {
                let (mut sr, mut si) = (BigInt::zero(), BigInt::zero());
                for (i, coeff) in self.num.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (pr, pi) = &powers[((k * i as u64) % m) as usize];
                    sr += coeff * pr;
                    si += coeff * pi;
                }
                let scale = &self.den << guard;
                ComplexApprox {
                    re: round_div(&sr, &scale),
                    im: round_div(&si, &scale),
                    bits,
                }
            })
            .collect()
    }

    /// Double-precision embeddings; only meaningful for moderate coefficients.
    pub fn embeddings_f64(&self) -> Vec<Complex64> {
        let m = self.conductor() as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let coeffs: Vec<f64> = self
            .num
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY) / den)
            .collect();
        self.field
            .galois_indices()
            .iter()
            .map(|&k| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(i, &c)| {
                        Complex64::from_polar(
                            c,
                            2.0 * std::f64::consts::PI * ((k * i as u64) as f64) / m,
                        )
                    })
                    .sum()
            })
            .collect()
    }

    /// Upper bounds for log2 |ψ(x)| over all embeddings ψ, valid for any
    /// coefficient size (the numerator only; the denominator is ignored).
    pub(crate) fn log2_embedding_upper_bounds(&self) -> Vec<f64> {
        let top = self.num.iter().map(|c| c.bits()).max().unwrap_or(0);
        let shift = top.saturating_sub(900);
        let m = self.conductor() as f64;
        let scaled: Vec<f64> = self
            .num
            .iter()
            .map(|c| {
                let v = if c.is_negative() {
                    -((-c) >> shift)
                } else {
                    c >> shift
                };
                v.to_f64().unwrap()
            })
            .collect();
        let max_abs = scaled.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let slack = (scaled.len() as f64 + 1.0) * (max_abs + 1.0) * 2f64.powi(-40);
        self.field
            .galois_indices()
            .iter()
            .map(|&k| {
                let z: Complex64 = scaled
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        Complex64::from_polar(
                            c,
                            2.0 * std::f64::consts::PI * ((k * i as u64) as f64) / m,
                        )
                    })
                    .sum();
                (z.norm() + slack).log2() + shift as f64
            })
            .collect()
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let twice = a * 2 + b;
    num_integer::Integer::div_floor(&twice, &(b * 2))
}
