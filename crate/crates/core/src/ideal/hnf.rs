//! Hermite normal form for full-rank sublattices L of Z^n with d·Z^n ⊆ L.
//!
//! Row i of the form is zero beyond coordinate i and carries a positive pivot
//! at coordinate i; every entry left of a pivot lies in [0, pivot).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type Rows = Vec<Option<Vec<BigInt>>>;

fn insert(t: &mut Rows, mut v: Vec<BigInt>, top: usize, d: &BigInt) {
    for x in v.iter_mut().take(top + 1) {
        *x = x.mod_floor(d);
    }
    let mut j = top + 1;
    while j > 0 {
        j -= 1;
        if v[j].is_zero() {
            continue;
        }
        let Some(row) = t[j].as_mut() else {
            t[j] = Some(v);
            return;
        };
        let ext = row[j].extended_gcd(&v[j]);
        let r = &row[j] / &ext.gcd;
        let s = &v[j] / &ext.gcd;
        for k in 0..=j {
            let nr = (&ext.x * &row[k] + &ext.y * &v[k]).mod_floor(d);
            let nv = (&r * &v[k] - &s * &row[k]).mod_floor(d);
            row[k] = nr;
            v[k] = nv;
        }
    }
}

/// HNF of the lattice spanned by `gens` together with d·Z^n; d must be
/// positive.
pub(crate) fn hnf_mod<I>(gens: I, n: usize, d: &BigInt) -> Vec<Vec<BigInt>>
where
    I: IntoIterator<Item = Vec<BigInt>>,
{
    debug_assert!(d.is_positive());
    let mut t: Rows = vec![None; n];
    for mut v in gens {
        v.resize(n, BigInt::zero());
        insert(&mut t, v, n - 1, d);
    }
    // fold in d·e_j from the top; reductions below j are repaired by later steps
    for j in (0..n).rev() {
        match t[j].take() {
            None => {
                let mut e = vec![BigInt::zero(); n];
                e[j] = d.clone();
                t[j] = Some(e);
            }
            Some(mut row) => {
                let ext = row[j].extended_gcd(d);
                let s = d / &ext.gcd;
                let mut rest = vec![BigInt::zero(); n];
                for k in 0..j {
                    rest[k] = (-&s * &row[k]).mod_floor(d);
                    row[k] = (&ext.x * &row[k]).mod_floor(d);
                }
                row[j] = ext.gcd.clone();
                t[j] = Some(row);
                if j > 0 {
                    insert(&mut t, rest, j - 1, d);
                }
            }
        }
    }
    let mut rows: Vec<Vec<BigInt>> = t.into_iter().map(|r| r.expect("full rank")).collect();
    for i in 1..n {
        for k in (0..i).rev() {
            let q = rows[i][k].div_floor(&rows[k][k]);
            if q.is_zero() {
                continue;
            }
            let (lo, hi) = rows.split_at_mut(i);
            for (x, y) in hi[0].iter_mut().zip(&lo[k]).take(k + 1) {
                *x -= &q * y;
            }
        }
    }
    rows
}

/// Integer coordinates of v in the HNF basis, if v lies in the lattice.
pub(crate) fn solve(rows: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = rows.len();
    let mut v = v.to_vec();
    v.resize(n, BigInt::zero());
    let mut coords = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        if v[i].is_zero() {
            continue;
        }
        let (q, r) = v[i].div_rem(&rows[i][i]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in v.iter_mut().zip(&rows[i]).take(i + 1) {
            *x -= &q * y;
        }
        coords[i] = q;
    }
    Some(coords)
}

/// Rows needed to generate the lattice as a Z[ζ]-module when multiplication
/// by ζ shifts coordinates upward: row i is redundant when its pivot equals
/// the previous one.
pub(crate) fn module_generators(rows: &[Vec<BigInt>]) -> Vec<&Vec<BigInt>> {
    rows.iter()
        .enumerate()
        .filter(|(i, r)| *i == 0 || r[*i] != rows[i - 1][i - 1])
        .map(|(_, r)| r)
        .collect()
}

pub(crate) fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    rows.iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, r)| acc * &r[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_of_small_lattice() {
        // lattice spanned by (2, 0), (1, 3) contains 6·Z^2
        let rows = hnf_mod([ints(&[2, 0]), ints(&[1, 3])], 2, &BigInt::from(6));
        assert_eq!(rows, vec![ints(&[2, 0]), ints(&[1, 3])]);
        let rows = hnf_mod([ints(&[4, 0]), ints(&[3, 3])], 2, &BigInt::from(12));
        assert_eq!(determinant(&rows), BigInt::from(12));
        assert_eq!(rows[0], ints(&[4, 0]));
        assert_eq!(rows[1], ints(&[3, 3]));
    }

    #[test]
    fn hnf_is_canonical() {
        let d = BigInt::from(30);
        let a = hnf_mod(
            [ints(&[1, 2, 3]), ints(&[0, 5, 1]), ints(&[7, 7, 0])],
            3,
            &d,
        );
        let b = hnf_mod(
            [ints(&[7, 7, 0]), ints(&[1, 7, 4]), ints(&[1, 2, 3])],
            3,
            &d,
        );
        assert_eq!(a, b);
        for v in [
            ints(&[1, 2, 3]),
            ints(&[0, 5, 1]),
            ints(&[7, 7, 0]),
            ints(&[30, 0, 0]),
        ] {
            assert!(solve(&a, &v).is_some());
        }
        assert!(solve(
            &hnf_mod([ints(&[2, 0])], 2, &BigInt::from(2)),
            &ints(&[1, 0])
        )
        .is_none());
    }
}
