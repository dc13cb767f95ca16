//! Exact integral LLL and Fincke–Pohst enumeration for positive definite forms.

#![allow(clippy::needless_range_loop)]

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// LLL-reduces `b` (δ = 3/4) in place with respect to the bilinear form
/// `inner`, using only integer arithmetic.
pub(crate) fn lll<F>(b: &mut [Vec<BigInt>], inner: F)
where
    F: Fn(&[BigInt], &[BigInt]) -> BigInt,
{
    let n = b.len();
    if n <= 1 {
        return;
    }
    // 1-based: d[0] = 1, d[i] = Gram determinant of the first i vectors
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = inner(&b[0], &b[0]);
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = inner(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input must be linearly independent");
                    d[k] = u;
                }
            }
        }
        loop {
            reduce(b, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k] * &d[k - 2];
            let rhs = BigInt::from(3) * &d[k - 1] * &d[k - 1]
                - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swap(b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(2);
            } else {
                break;
            }
        }
        for l in (1..k - 1).rev() {
            reduce(b, &mut lam, &d, k, l);
        }
        k += 1;
    }
}

fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two_lam: BigInt = &lam[k][l] * 2;
    if two_lam.abs() <= d[l] {
        return;
    }
    let q = (&two_lam + &d[l]).div_floor(&(&d[l] * 2));
    let (lo, hi) = b.split_at_mut(k - 1);
    for (x, y) in hi[0].iter_mut().zip(&lo[l - 1]) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let big_b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&big_b * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = big_b;
}

/// Cholesky-type decomposition Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)².
fn quadratic_decomposition(gram: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = gram.len();
    let mut q = gram.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

/// Visits every nonzero x, one of each pair ±x, with Q(x) ≤ bound, where Q
/// has Gram matrix `gram`. Visit order is deterministic. The visitor sees
/// the coordinates and Q(x). Returns `Break` if the visitor stopped early.
pub(crate) fn enumerate<V>(gram: &[Vec<f64>], bound: f64, visit: &mut V) -> ControlFlow<()>
where
    V: FnMut(&[i64], f64) -> ControlFlow<()>,
{
    let n = gram.len();
    let q = quadratic_decomposition(gram);
    let mut x = vec![0i64; n];
    recurse(&q, n, bound, 0.0, true, &mut x, visit)
}

fn recurse<V>(
    q: &[Vec<f64>],
    level: usize,
    bound: f64,
    used: f64,
    all_zero_above: bool,
    x: &mut Vec<i64>,
    visit: &mut V,
) -> ControlFlow<()>
where
    V: FnMut(&[i64], f64) -> ControlFlow<()>,
{
    if level == 0 {
        if all_zero_above {
            return ControlFlow::Continue(());
        }
        return visit(x, used);
    }
    let i = level - 1;
    let n = x.len();
    let centre: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let room = (bound - used).max(0.0);
    let half = (room / q[i][i]).sqrt() + 1e-9;
    let mut lo = (centre - half).ceil() as i64;
    let hi = (centre + half).floor() as i64;
    if all_zero_above {
        lo = lo.max(0);
    }
    for v in lo..=hi {
        let t = v as f64 - centre;
        let cost = used + q[i][i] * t * t;
        if cost > bound * (1.0 + 1e-12) + 1e-12 {
            continue;
        }
        x[i] = v;
        recurse(
            q,
            level - 1,
            bound,
            cost,
            all_zero_above && v == 0,
            x,
            visit,
        )?;
    }
    x[i] = 0;
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lll_finds_short_basis() {
        let mut b = vec![ints(&[1, 1, 1]), ints(&[-1, 0, 2]), ints(&[3, 5, 6])];
        lll(&mut b, dot);
        let norms: Vec<BigInt> = b.iter().map(|v| dot(v, v)).collect();
        assert!(norms[0] <= BigInt::from(3));
        // determinant is preserved up to sign
        let det = |m: &[Vec<BigInt>]| {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        };
        assert_eq!(det(&b).abs(), BigInt::from(3));
    }

    #[test]
    fn enumeration_counts_lattice_points() {
        // Z^2 with the standard form: points with x²+y² ≤ 2, up to sign
        let gram = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let mut seen = Vec::new();
        let _ = enumerate(&gram, 2.0, &mut |x, _| {
            seen.push(x.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 4);
        // hexagonal lattice: six minimal vectors, three up to sign
        let gram = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let mut count = 0;
        let _ = enumerate(&gram, 2.0, &mut |_, _| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 3);
    }
}
