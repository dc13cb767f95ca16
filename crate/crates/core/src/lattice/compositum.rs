use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::{gcd, is_prime};

/// Largest exponent a or b accepted.
const MAX_EXPONENT: u32 = 4;
/// Cap on p^(a_max + b_max), the size of the ambient group.
const MAX_AMBIENT: u64 = 1 << 20;

/// One subdirect Γ ≤ Z/p^a × Z/p^b, given by the lattice with Hermite basis
/// (x, y), (0, z) above p^a·Z × p^b·Z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositumCase {
    pub a: u32,
    pub b: u32,
    pub basis: [[u64; 2]; 2],
    pub order: u64,
    /// Both projections are onto.
    pub subdirect: bool,
    pub cyclic: bool,
    pub first_injective: bool,
    pub second_injective: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompositumCounts {
    pub a: u32,
    pub b: u32,
    pub subgroups: u64,
    pub subdirect: u64,
    pub cyclic_subdirect: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositumCertificate {
    pub p: u64,
    pub a_max: u32,
    pub b_max: u32,
    pub counts: Vec<CompositumCounts>,
    /// Every cyclic subdirect subgroup, with its injective projections.
    pub cyclic_cases: Vec<CompositumCase>,
    pub counterexamples: Vec<CompositumCase>,
}

/// Γ = Gal(KK′/Q) embeds in Gal(K/Q) × Gal(K′/Q) with both projections onto.
/// For every such Γ inside Z/p^a × Z/p^b with 1 ≤ a ≤ a_max and 1 ≤ b ≤ b_max,
/// checks that Γ cyclic forces a projection to be injective, meaning one field
/// contains the other.
pub fn cyclic_compositum_check(p: u64, a_max: u32, b_max: u32) -> Result<CompositumCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a_max == 0 || b_max == 0 || a_max > MAX_EXPONENT || b_max > MAX_EXPONENT {
        return Err(Error::Precondition(format!(
            "exponents must lie in 1..={MAX_EXPONENT}"
        )));
    }
    if p.checked_pow(a_max + b_max)
        .is_none_or(|s| s > MAX_AMBIENT)
    {
        return Err(Error::Precondition(format!(
            "p^(a_max + b_max) exceeds {MAX_AMBIENT}"
        )));
    }
    let mut counts = Vec::new();
    let mut cyclic_cases = Vec::new();
    let mut counterexamples = Vec::new();
    for a in 1..=a_max {
        for b in 1..=b_max {
            let mut c = CompositumCounts {
                a,
                b,
                ..Default::default()
            };
            for case in subgroups_of_product(p, a, b) {
                c.subgroups += 1;
                if !case.subdirect {
                    continue;
                }
                c.subdirect += 1;
                if case.cyclic {
                    c.cyclic_subdirect += 1;
                    if !(case.first_injective || case.second_injective) {
                        counterexamples.push(case.clone());
                    }
                    cyclic_cases.push(case);
                }
            }
            counts.push(c);
        }
    }
    if !counterexamples.is_empty() {
        return Err(Error::Verification(format!(
            "cyclic subdirect subgroups with no injective projection: {counterexamples:?}"
        )));
    }
    Ok(CompositumCertificate {
        p,
        a_max,
        b_max,
        counts,
        cyclic_cases,
        counterexamples,
    })
}

/// All subgroups of Z/p^a × Z/p^b, each with its structure read off from an
/// explicit element list.
fn subgroups_of_product(p: u64, a: u32, b: u32) -> Vec<CompositumCase> {
    let (pa, pb) = (p.pow(a), p.pow(b));
    let mut out = Vec::new();
    for i in 0..=a {
        let x = p.pow(i);
        for j in 0..=b {
            let z = p.pow(j);
            for y in 0..z {
                // (p^a, 0) must lie in the lattice
                if ((pa / x) * y) % z != 0 {
                    continue;
                }
                let elements = span(pa, pb, (x % pa, y % pb), z % pb);
                let order = elements.len() as u64;
                let max_order = elements
                    .iter()
                    .map(|&(u, v)| element_order(u, pa).max(element_order(v, pb)))
                    .max();
                let firsts: BTreeSet<u64> = elements.iter().map(|e| e.0).collect();
                let seconds: BTreeSet<u64> = elements.iter().map(|e| e.1).collect();
                out.push(CompositumCase {
                    a,
                    b,
                    basis: [[x, y], [0, z]],
                    order,
                    subdirect: firsts.len() as u64 == pa && seconds.len() as u64 == pb,
                    cyclic: max_order == Some(order),
                    first_injective: firsts.len() as u64 == order,
                    second_injective: seconds.len() as u64 == order,
                });
            }
        }
    }
    out
}

fn span(pa: u64, pb: u64, g: (u64, u64), z: u64) -> BTreeSet<(u64, u64)> {
    let mut set = BTreeSet::new();
    let mut first = (0u64, 0u64);
    loop {
        let mut v = first;
        loop {
            set.insert(v);
            v = (v.0, (v.1 + z) % pb);
            if v == first {
                break;
            }
        }
        first = ((first.0 + g.0) % pa, (first.1 + g.1) % pb);
        if set.contains(&first) {
            break;
        }
    }
    set
}

fn element_order(u: u64, m: u64) -> u64 {
    m / gcd(u, m)
}
