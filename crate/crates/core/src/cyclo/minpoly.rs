use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CyclotomicNumber;

impl CyclotomicNumber {
    /// Monic minimal polynomial over Q, low to high, found as the first linear
    /// dependency among 1, x, x², … in the power basis.
    pub fn minimal_polynomial(&self) -> Vec<BigRational> {
        let n = self.field.degree();
        // echelon rows: (pivot column, coordinates, combination of powers)
        let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let mut power = self.field.one();
        for k in 0..=n {
            let mut v = power.coefficients();
            let mut comb = vec![BigRational::zero(); k + 1];
            comb[k] = BigRational::one();
            for (piv, rv, rc) in &rows {
                if v[*piv].is_zero() {
                    continue;
                }
                let f = v[*piv].clone();
                for (x, y) in v.iter_mut().zip(rv) {
                    *x -= &f * y;
                }
                for (x, y) in comb.iter_mut().zip(rc) {
                    *x -= &f * y;
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return comb,
                Some(piv) => {
                    let inv = v[piv].recip();
                    v.iter_mut().for_each(|x| *x *= &inv);
                    comb.iter_mut().for_each(|x| *x *= &inv);
                    rows.push((piv, v, comb));
                }
            }
            power = &power * self;
        }
        unreachable!("degree of an element is at most the field degree")
    }
}
