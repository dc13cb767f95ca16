//! Principality: short-vector search for generators, with the class group and
//! a norm-form obstruction as deciding fallbacks.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{hnf, lll, ln_big, ClassGroupDescription, FractionalIdeal};
use crate::cyclo::CyclotomicNumber;
use crate::error::{Error, Result};

/// Bounds on the generator search. Radii are multiples of the smallest
/// possible T2 value n·N^(2/n) of an element of norm N.
#[derive(Clone, Debug)]
pub struct SearchEffort {
    pub radius_factors: Vec<f64>,
    pub max_points: u64,
}

impl Default for SearchEffort {
    fn default() -> Self {
        SearchEffort {
            radius_factors: vec![1.05, 1.5, 2.0, 3.0, 4.0],
            max_points: 400_000,
        }
    }
}

impl SearchEffort {
    pub fn quick() -> Self {
        SearchEffort {
            radius_factors: vec![1.05, 1.5, 2.0],
            max_points: 20_000,
        }
    }
}

/// T2(x, y) = Σ_σ σ(x)·conj(σ(y)) on the power basis of Q(ζ_p): p⟨x, y⟩ − (Σx)(Σy).
pub(crate) fn t2_inner(p: u64) -> impl Fn(&[BigInt], &[BigInt]) -> BigInt {
    move |x: &[BigInt], y: &[BigInt]| {
        let dot: BigInt = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let sx: BigInt = x.iter().sum();
        let sy: BigInt = y.iter().sum();
        dot * BigInt::from(p) - sx * sy
    }
}

impl FractionalIdeal {
    /// Some α with (α) = I found by lattice reduction and bounded enumeration,
    /// verified exactly; `None` means the search was exhausted.
    pub fn search_generator(&self, effort: &SearchEffort) -> Result<Option<CyclotomicNumber>> {
        let field = self.field().clone();
        let den = field.rational(&num_rational::BigRational::new(
            BigInt::one(),
            self.denominator().clone(),
        ));
        if self.hnf()[0][0].is_one() {
            return Ok(Some(den));
        }
        let p = field.conductor();
        let n = field.degree();
        let norm = hnf::determinant(self.hnf());
        let mut basis = self.hnf().to_vec();
        let inner = t2_inner(p);
        lll::lll(&mut basis, &inner);

        let ln_norm = ln_big(&norm);
        let scale = (2.0 * ln_norm / n as f64).exp();
        let gram: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        inner(&basis[i], &basis[j])
                            .to_f64()
                            .unwrap_or(f64::INFINITY)
                            / scale
                    })
                    .collect()
            })
            .collect();
        if gram.iter().flatten().any(|v| !v.is_finite()) {
            return Ok(None);
        }
        let half = n / 2;
        let emb: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|b| {
                (1..=half)
                    .map(|k| {
                        b.iter()
                            .enumerate()
                            .map(|(j, c)| {
                                let angle =
                                    2.0 * std::f64::consts::PI * ((k * j) % p as usize) as f64
                                        / p as f64;
                                Complex64::from_polar(c.to_f64().unwrap_or(0.0), angle)
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();

        let mut found = None;
        let mut visited = 0u64;
        let mut previous = 0.0;
        let mut error = None;
        for &c in &effort.radius_factors {
            let bound = c * n as f64;
            let flow = lll::enumerate(&gram, bound, &mut |x, value| {
                if value <= previous {
                    return ControlFlow::Continue(());
                }
                visited += 1;
                if visited > effort.max_points {
                    return ControlFlow::Break(());
                }
                let mut log_norm = 0.0;
                for k in 0..half {
                    let z: Complex64 = x.iter().zip(&emb).map(|(&xi, e)| e[k] * xi as f64).sum();
                    log_norm += 2.0 * z.norm().ln();
                }
                // |N(x)| is a positive multiple of N(I)
                if log_norm - ln_norm > 0.2 {
                    return ControlFlow::Continue(());
                }
                let mut coeffs = vec![BigInt::zero(); n];
                for (&xi, b) in x.iter().zip(&basis) {
                    if xi != 0 {
                        for (c, bj) in coeffs.iter_mut().zip(b) {
                            *c += bj * xi;
                        }
                    }
                }
                let alpha = field.from_poly(coeffs);
                if alpha.norm().numer().abs() == norm {
                    match FractionalIdeal::principal(&alpha) {
                        Ok(i) if i == self.numerator_ideal() => {
                            found = Some(alpha);
                            return ControlFlow::Break(());
                        }
                        Ok(_) => {}
                        Err(e) => {
                            error = Some(e);
                            return ControlFlow::Break(());
                        }
                    }
                }
                ControlFlow::Continue(())
            });
            if let Some(e) = error {
                return Err(e);
            }
            if let Some(alpha) = found {
                return Ok(Some(&alpha * &den));
            }
            if flow.is_break() {
                break;
            }
            previous = bound;
        }
        Ok(None)
    }

    /// Some(α) with (α) = I, or `None` when I is provably not principal.
    /// Search exhaustion without a deciding argument is `Error::Undecided`.
    pub fn is_principal(
        &self,
        class_group: Option<&ClassGroupDescription>,
    ) -> Result<Option<CyclotomicNumber>> {
        if let Some(alpha) = self.search_generator(&SearchEffort::default())? {
            return Ok(Some(alpha));
        }
        if norm_form_obstruction(self) {
            return Ok(None);
        }
        if let Some(cg) = class_group {
            if cg.field() != self.field() {
                return Err(Error::FieldMismatch(
                    cg.field().conductor(),
                    self.field().conductor(),
                ));
            }
            return cg.decide_principal(self);
        }
        Err(Error::Undecided(format!(
            "no generator found for an ideal of norm {} and no class group supplied",
            self.norm()
        )))
    }
}

/// For p ≡ 3 mod 4, an ideal whose norm is not represented by the principal
/// form x² + xy + ((p+1)/4)y² of Q(√−p) cannot be principal, since its
/// relative norm to that subfield would be principal of the same norm.
pub(crate) fn norm_form_obstruction(ideal: &FractionalIdeal) -> bool {
    let p = ideal.field().conductor();
    if p % 4 != 3 {
        return false;
    }
    let norm = ideal.norm();
    if !norm.is_integer() {
        return false;
    }
    let n = norm.to_integer();
    if n.bits() > 80 {
        return false;
    }
    !represented_by_principal_form(&n, p)
}

/// Whether 4N = s² + p·y² has a solution with s ≡ y mod 2.
pub(crate) fn represented_by_principal_form(n: &BigInt, p: u64) -> bool {
    let four_n = n * 4;
    let pb = BigInt::from(p);
    let mut y = BigInt::zero();
    loop {
        let rest: BigInt = &four_n - &pb * &y * &y;
        if rest.is_negative() {
            return false;
        }
        let s = rest.sqrt();
        if &s * &s == rest && (&s - &y).is_even() {
            return true;
        }
        y += 1;
    }
}
