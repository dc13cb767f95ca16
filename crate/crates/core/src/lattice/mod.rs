//! Abelian number fields inside Q(ζ_n), each labeled by the subgroup
//! H ≤ (Z/nZ)^× fixing it. Ramification is read off inertia subgroups and
//! explicit generators come from Gaussian periods.

mod compositum;
mod periods;
mod props;

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::{euler_phi, factor_u64, gcd, mul_mod};

pub use compositum::{
    cyclic_compositum_check, CompositumCase, CompositumCertificate, CompositumCounts,
};
pub use periods::{subfield_by_periods, PeriodPolynomial, MAX_PERTURBATION};
pub use props::{
    verify_prop_cp_c2, verify_prop_pex2, PropCpCertificate, PropPex2Certificate, QuadraticField,
    SubfieldRecord, MAX_PRIME_POWER_DEGREE,
};

/// Elements of (Z/nZ)^× in ascending order.
pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

fn check_modulus(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroConductor);
    }
    if n % 4 == 2 {
        return Err(Error::NonCanonicalModulus(n, n / 2));
    }
    if n < 3 {
        return Err(Error::Invalid(format!(
            "modulus must be at least 3, got {n}"
        )));
    }
    Ok(())
}

/// The subgroup generated by `gens`, sorted.
pub fn generate_subgroup(n: u64, gens: &[u64]) -> Vec<u64> {
    let mut seen: HashSet<u64> = HashSet::from([1 % n]);
    let mut frontier = vec![1 % n];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul_mod(x, g % n, n);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<u64> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Every subgroup of (Z/nZ)^×, ordered by size and then lexicographically.
pub fn subgroups(n: u64) -> Result<Vec<Vec<u64>>> {
    check_modulus(n)?;
    let cyclic: BTreeSet<Vec<u64>> = units(n)
        .iter()
        .map(|&g| generate_subgroup(n, &[g]))
        .collect();
    let mut all: BTreeSet<Vec<u64>> = cyclic.clone();
    let mut work: Vec<Vec<u64>> = cyclic.iter().cloned().collect();
    // every subgroup is a join of cyclic ones
    while let Some(s) = work.pop() {
        for c in &cyclic {
            let members: HashSet<u64> = s.iter().copied().collect();
            if c.iter().all(|x| members.contains(x)) {
                continue;
            }
            let mut gens = s.clone();
            gens.extend(c);
            let joined = generate_subgroup(n, &gens);
            if all.insert(joined.clone()) {
                work.push(joined);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// A finite abelian group Z/d_1 × … × Z/d_k with 1 < d_1 | d_2 | … | d_k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    invariants: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(invariants: Vec<u64>) -> Result<Self> {
        if invariants.iter().any(|&d| d <= 1) {
            return Err(Error::Invalid(format!(
                "invariant factors must exceed 1: {invariants:?}"
            )));
        }
        if invariants.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!(
                "invariant factors must form a divisor chain: {invariants:?}"
            )));
        }
        Ok(FiniteAbelianGroup { invariants })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariants: Vec::new(),
        }
    }

    /// Normal form of Z/c_1 × … × Z/c_k for arbitrary positive c_i.
    pub fn from_cyclic_factors(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Invalid("cyclic factor of order 0".into()));
        }
        let mut primes: BTreeSet<u64> = BTreeSet::new();
        for &c in orders {
            primes.extend(factor_u64(c).into_iter().map(|(q, _)| q));
        }
        let elementary: Vec<(u64, Vec<u32>)> = primes
            .into_iter()
            .map(|q| {
                let mut exps: Vec<u32> = orders
                    .iter()
                    .map(|&c| {
                        factor_u64(c)
                            .into_iter()
                            .find(|&(r, _)| r == q)
                            .map_or(0, |(_, e)| e)
                    })
                    .filter(|&e| e > 0)
                    .collect();
                exps.sort_unstable();
                (q, exps)
            })
            .collect();
        Ok(Self::assemble(&elementary))
    }

    /// Structure of a group of order `order` from the counts
    /// c(k) = #{x : x^k = 1}, evaluated at prime powers k.
    pub fn from_torsion_counts(order: u64, count: impl Fn(u64) -> u64) -> Result<Self> {
        let mut elementary = Vec::new();
        for (q, e) in factor_u64(order) {
            // r_k = log_q c(q^k) = Σ_i min(k, e_i)
            let mut prev = 0u32;
            let mut at_least = Vec::new();
            for k in 1..=e {
                let c = count(q.pow(k));
                let r = exact_log(c, q).ok_or_else(|| {
                    Error::Verification(format!(
                        "{c} elements of order dividing {q}^{k} is not a power of {q}"
                    ))
                })?;
                at_least.push(r - prev);
                prev = r;
            }
            // at_least[k-1] = #{i : e_i ≥ k}
            let mut exps = Vec::new();
            for k in 1..=e as usize {
                let next = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..(at_least[k - 1] - next) {
                    exps.push(k as u32);
                }
            }
            exps.sort_unstable();
            elementary.push((q, exps));
        }
        let g = Self::assemble(&elementary);
        if g.order() != order {
            return Err(Error::Verification(format!(
                "torsion counts give order {} not {order}",
                g.order()
            )));
        }
        Ok(g)
    }

    fn assemble(elementary: &[(u64, Vec<u32>)]) -> Self {
        let rank = elementary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        // the largest exponents of every prime go into the last factor
        let mut invariants = vec![1u64; rank];
        for (q, exps) in elementary {
            for (j, &e) in exps.iter().rev().enumerate() {
                invariants[rank - 1 - j] *= q.pow(e);
            }
        }
        FiniteAbelianGroup { invariants }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariants.len() <= 1
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

fn exact_log(mut c: u64, q: u64) -> Option<u32> {
    let mut r = 0;
    while c > 1 {
        if !c.is_multiple_of(q) {
            return None;
        }
        c /= q;
        r += 1;
    }
    (c == 1).then_some(r)
}

/// The subfield of Q(ζ_n) fixed by H ≤ (Z/nZ)^×.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianField {
    modulus: u64,
    subgroup: Vec<u64>,
}

impl AbelianField {
    pub fn new(n: u64, subgroup: &[u64]) -> Result<Self> {
        check_modulus(n)?;
        let mut h: Vec<u64> = subgroup.iter().map(|&x| x % n).collect();
        h.sort_unstable();
        h.dedup();
        if let Some(&x) = h.iter().find(|&&x| gcd(x, n) != 1) {
            return Err(Error::NotCoprime(x, n));
        }
        if h.first() != Some(&1) {
            return Err(Error::Invalid("subgroup must contain 1".into()));
        }
        let members: HashSet<u64> = h.iter().copied().collect();
        for &x in &h {
            for &y in &h {
                let z = mul_mod(x, y, n);
                if !members.contains(&z) {
                    return Err(Error::Invalid(format!(
                        "{x}·{y} = {z} mod {n} lies outside the subgroup"
                    )));
                }
            }
        }
        if !euler_phi(n).is_multiple_of(h.len() as u64) {
            return Err(Error::Verification(format!(
                "|H| = {} does not divide φ({n})",
                h.len()
            )));
        }
        Ok(AbelianField {
            modulus: n,
            subgroup: h,
        })
    }

    /// Q(ζ_n) itself.
    pub fn cyclotomic(n: u64) -> Result<Self> {
        Self::new(n, &[1])
    }

    /// The maximal real subfield Q(ζ_n + ζ_n^{−1}).
    pub fn maximal_real(n: u64) -> Result<Self> {
        Self::new(n, &[1, n - 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn degree(&self) -> u64 {
        euler_phi(self.modulus) / self.subgroup.len() as u64
    }

    pub fn contains_automorphism(&self, a: u64) -> bool {
        self.subgroup.binary_search(&(a % self.modulus)).is_ok()
    }

    /// Fixed by complex conjugation σ_{−1}.
    pub fn is_real(&self) -> bool {
        self.contains_automorphism(self.modulus - 1)
    }

    /// Representatives of (Z/nZ)^×/H, the least element of each coset, ascending.
    pub fn coset_representatives(&self) -> Vec<u64> {
        let n = self.modulus;
        let mut covered: HashSet<u64> = HashSet::new();
        let mut reps = Vec::new();
        for g in units(n) {
            if covered.contains(&g) {
                continue;
            }
            reps.push(g);
            covered.extend(self.subgroup.iter().map(|&h| mul_mod(g, h, n)));
        }
        reps
    }

    /// Gal(K/Q) = (Z/nZ)^×/H.
    pub fn galois_group(&self) -> Result<FiniteAbelianGroup> {
        let n = self.modulus;
        let all = units(n);
        let count = |k: u64| {
            let killed = all
                .iter()
                .filter(|&&g| self.contains_automorphism(crate::ntheory::pow_mod(g, k, n)))
                .count();
            (killed / self.subgroup.len()) as u64
        };
        FiniteAbelianGroup::from_torsion_counts(self.degree(), count)
    }

    /// The same field written with modulus `big`, a multiple of n:
    /// H' = {x ∈ (Z/big)^× : x mod n ∈ H}.
    pub fn lift(&self, big: u64) -> Result<Self> {
        if !big.is_multiple_of(self.modulus) {
            return Err(Error::NotDivisor(self.modulus, big));
        }
        check_modulus(big)?;
        let h: Vec<u64> = units(big)
            .into_iter()
            .filter(|&x| self.contains_automorphism(x))
            .collect();
        Self::new(big, &h)
    }

    /// Galois correspondence: K ⊆ L iff H_L ⊆ H_K after lifting to a common modulus.
    pub fn is_subfield_of(&self, other: &AbelianField) -> Result<bool> {
        let n = num_integer::lcm(self.modulus, other.modulus);
        let (a, b) = (self.lift(n)?, other.lift(n)?);
        Ok(b.subgroup.iter().all(|&x| a.contains_automorphism(x)))
    }
}

/// {x ∈ (Z/nZ)^× : x ≡ 1 mod m′} where n = q^k·m′ with q ∤ m′.
pub fn inertia_subgroup(n: u64, q: u64) -> Result<Vec<u64>> {
    check_modulus(n)?;
    if !crate::ntheory::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !n.is_multiple_of(q) {
        return Err(Error::NotDivisor(q, n));
    }
    let mut m = n;
    while m.is_multiple_of(q) {
        m /= q;
    }
    Ok(units(n).into_iter().filter(|&x| x % m == 1 % m).collect())
}

/// Primes q | n with I_q ⊄ H, ascending.
pub fn ramification_profile(k: &AbelianField) -> Vec<u64> {
    factor_u64(k.modulus)
        .into_iter()
        .map(|(q, _)| q)
        .filter(|&q| {
            inertia_subgroup(k.modulus, q)
                .expect("q divides a valid modulus")
                .iter()
                .any(|&x| !k.contains_automorphism(x))
        })
        .collect()
}

/// All subfields of Q(ζ_n) of degree d ramified only at primes in `allowed`,
/// in the order of [`subgroups`].
pub fn enumerate_abelian_fields(n: u64, d: u64, allowed: &[u64]) -> Result<Vec<AbelianField>> {
    let phi = euler_phi(n);
    if d == 0 || !phi.is_multiple_of(d) {
        return Err(Error::NotDivisor(d, phi));
    }
    let mut out = Vec::new();
    for h in subgroups(n)? {
        if h.len() as u64 * d != phi {
            continue;
        }
        let k = AbelianField::new(n, &h)?;
        if ramification_profile(&k).iter().all(|q| allowed.contains(q)) {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
