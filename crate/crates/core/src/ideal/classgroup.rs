//! Class groups of Q(ζ_p) from a factor base, relations found by generator
//! search, and the Smith normal form of the relation lattice.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::principal::{norm_form_obstruction, SearchEffort};
use super::{
    factor_ideal, factor_rational_prime, minkowski_bound, require_prime_conductor, FractionalIdeal,
    PrimeIdealAboveQ,
};
use crate::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::ntheory::{mult_order, primes_up_to};

/// Largest conductor the class-group machinery is run at.
pub const MAX_CONDUCTOR: u64 = 23;
/// Minkowski bounds above this are replaced by [`FALLBACK_BOUND`].
pub const MINKOWSKI_CAP: f64 = 200_000.0;
pub const FALLBACK_BOUND: u64 = 100;

/// (α) = Π P_j^{e_j} over the residual factor-base primes.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub exponents: Vec<i64>,
    pub generator: CyclotomicNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassGenerator {
    /// Exponents over the residual factor-base primes.
    pub exponents: Vec<i64>,
    pub representative: FractionalIdeal,
    pub order: u64,
    /// Generator of representative^order.
    pub witness: CyclotomicNumber,
    /// Non-principality shown by the norm form of the imaginary quadratic subfield.
    pub norm_form_nonprincipal: bool,
}

#[derive(Clone, Debug)]
pub struct ClassGroupDescription {
    field: CyclotomicField,
    bound: u64,
    minkowski: f64,
    factor_base: Vec<PrimeIdealAboveQ>,
    /// Generator for each factor-base prime found principal directly.
    principal: Vec<Option<CyclotomicNumber>>,
    /// Factor-base indices not shown principal individually.
    residual: Vec<usize>,
    relations: Vec<Relation>,
    /// Relation-lattice basis, lower triangular with positive pivots.
    lattice: Vec<Vec<BigInt>>,
    /// lattice[i] = Σ_j combos[i][j]·relations[j].
    combos: Vec<Vec<BigInt>>,
    diagonal: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
    generators: Vec<ClassGenerator>,
    minus_class_number: BigInt,
}

/// Class group of Q(ζ_p) for an odd prime p ≤ 23. The factor base holds every
/// prime of norm ≤ `bound` (default: the Minkowski bound when it is at most
/// [`MINKOWSKI_CAP`], else [`FALLBACK_BOUND`]). The order is required to equal
/// the minus class number; a disagreement is an error.
pub fn class_group(field: &CyclotomicField, bound: Option<u64>) -> Result<ClassGroupDescription> {
    require_prime_conductor(field)?;
    let p = field.conductor();
    if p == 2 || p > MAX_CONDUCTOR {
        return Err(Error::Precondition(format!(
            "class groups are supported for odd p ≤ {MAX_CONDUCTOR}, got {p}"
        )));
    }
    let minkowski = minkowski_bound(field)?;
    let bound = bound.unwrap_or(if minkowski <= MINKOWSKI_CAP {
        minkowski.ceil() as u64
    } else {
        FALLBACK_BOUND
    });
    let minus = crate::stick::minus_class_number(p)?;

    let mut factor_base = Vec::new();
    let mut principal = Vec::new();
    let effort = SearchEffort::default();
    for q in primes_up_to(bound) {
        let f = if q == p {
            1
        } else {
            mult_order(q % p, p)? as u32
        };
        if (q as f64).powi(f as i32) > bound as f64 {
            continue;
        }
        let primes: Vec<PrimeIdealAboveQ> = factor_rational_prime(q, field)?
            .into_iter()
            .map(|(pr, _)| pr)
            .collect();
        let rep = &primes[0];
        let gens = match rep.ideal().search_generator(&effort)? {
            Some(alpha) => conjugate_generators(field, &primes, &alpha)?,
            None => vec![None; primes.len()],
        };
        factor_base.extend(primes);
        principal.extend(gens);
    }
    let residual: Vec<usize> = (0..factor_base.len())
        .filter(|&i| principal[i].is_none())
        .collect();

    let mut cg = ClassGroupDescription {
        field: field.clone(),
        bound,
        minkowski,
        factor_base,
        principal,
        residual,
        relations: Vec::new(),
        lattice: Vec::new(),
        combos: Vec::new(),
        diagonal: Vec::new(),
        v: Vec::new(),
        generators: Vec::new(),
        minus_class_number: minus.clone(),
    };
    if cg.residual.is_empty() {
        return cg.finish();
    }
    cg.search_relations(&effort)?;
    cg.finish()
}

/// For primes P_0, …, all above one q, generators σ_a(α) of P_i = σ_a(P_0).
fn conjugate_generators(
    field: &CyclotomicField,
    primes: &[PrimeIdealAboveQ],
    alpha: &CyclotomicNumber,
) -> Result<Vec<Option<CyclotomicNumber>>> {
    let mut out = vec![None; primes.len()];
    out[0] = Some(alpha.clone());
    let mut missing = primes.len() - 1;
    for &a in field.galois_indices() {
        if missing == 0 {
            break;
        }
        let image = primes[0].galois(a)?;
        if let Some(i) = primes.iter().position(|pr| *pr == image) {
            if out[i].is_none() {
                let g = alpha.galois(a);
                // |N(g)| = N(P_i) and g ∈ P_i, so (g) = P_i
                if primes[i].valuation_of_element(&g)? != 1 {
                    return Err(Error::Verification(
                        "conjugate generator left its prime".into(),
                    ));
                }
                out[i] = Some(g);
                missing -= 1;
            }
        }
    }
    Ok(out)
}

impl ClassGroupDescription {
    fn search_relations(&mut self, effort: &SearchEffort) -> Result<()> {
        let k = self.residual.len();
        let residual_primes: Vec<PrimeIdealAboveQ> = self
            .residual
            .iter()
            .map(|&i| self.factor_base[i].clone())
            .collect();
        // the field handle caches internally; Ord reads only immutable data
        #[allow(clippy::mutable_key_type)]
        let index_of: BTreeMap<&PrimeIdealAboveQ, usize> = residual_primes
            .iter()
            .enumerate()
            .map(|(i, pr)| (pr, i))
            .collect();
        // Galois permutation of the residual primes for each a
        let units = self.field.galois_indices().to_vec();
        let mut perms: Vec<(u64, Vec<usize>)> = Vec::new();
        for &a in &units {
            let mut perm = Vec::with_capacity(k);
            for pr in &residual_primes {
                let image = pr.galois(a)?;
                let j = *index_of.get(&image).ok_or_else(|| {
                    Error::Invalid("residual primes are not Galois stable".into())
                })?;
                perm.push(j);
            }
            perms.push((a, perm));
        }
        let base = residual_primes[0].ideal();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        for power in 0..=2i64 {
            let prefix = base.pow(power)?;
            for (j, pr) in residual_primes.iter().enumerate() {
                let mut exps = vec![0i64; k];
                exps[0] += power;
                exps[j] += 1;
                if seen.contains(&exps) {
                    continue;
                }
                let ideal = prefix.multiply(&pr.ideal())?;
                let Some(alpha) = ideal.search_generator(effort)? else {
                    continue;
                };
                for (a, perm) in &perms {
                    let mut image = vec![0i64; k];
                    for (i, &e) in exps.iter().enumerate() {
                        image[perm[i]] += e;
                    }
                    if seen.insert(image.clone()) {
                        self.relations.push(Relation {
                            exponents: image,
                            generator: alpha.galois(*a),
                        });
                    }
                }
                self.rebuild_lattice();
                if self.lattice.len() == k && self.lattice_determinant() == self.minus_class_number
                {
                    return Ok(());
                }
            }
        }
        if self.lattice.len() < k {
            return Err(Error::FactorBaseTooSmall(format!(
                "relations among {} residual primes have rank {} < {}; raise the factor-base bound or search effort",
                k,
                self.lattice.len(),
                k
            )));
        }
        Ok(())
    }

    fn lattice_determinant(&self) -> BigInt {
        self.lattice
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, r)| acc * &r[i])
    }

    /// Triangular basis of the relation lattice with combination records.
    fn rebuild_lattice(&mut self) {
        let k = self.residual.len();
        let r = self.relations.len();
        let mut slots: Vec<Option<(Vec<BigInt>, Vec<BigInt>)>> = vec![None; k];
        for (idx, rel) in self.relations.iter().enumerate() {
            let mut v: Vec<BigInt> = rel.exponents.iter().map(|&e| BigInt::from(e)).collect();
            let mut c = vec![BigInt::zero(); r];
            c[idx] = BigInt::one();
            for j in (0..k).rev() {
                if v[j].is_zero() {
                    continue;
                }
                match slots[j].take() {
                    None => {
                        if v[j].is_negative() {
                            v.iter_mut().for_each(|x| *x = -&*x);
                            c.iter_mut().for_each(|x| *x = -&*x);
                        }
                        slots[j] = Some((v, c));
                        break;
                    }
                    Some((mut row, mut rc)) => {
                        let ext = row[j].extended_gcd(&v[j]);
                        let a = &row[j] / &ext.gcd;
                        let b = &v[j] / &ext.gcd;
                        let new_row: Vec<BigInt> = row
                            .iter()
                            .zip(&v)
                            .map(|(x, y)| &ext.x * x + &ext.y * y)
                            .collect();
                        let new_rc: Vec<BigInt> = rc
                            .iter()
                            .zip(&c)
                            .map(|(x, y)| &ext.x * x + &ext.y * y)
                            .collect();
                        let rest: Vec<BigInt> =
                            row.iter().zip(&v).map(|(x, y)| &a * y - &b * x).collect();
                        let rest_c: Vec<BigInt> =
                            rc.iter().zip(&c).map(|(x, y)| &a * y - &b * x).collect();
                        row = new_row;
                        rc = new_rc;
                        if row[j].is_negative() {
                            row.iter_mut().for_each(|x| *x = -&*x);
                            rc.iter_mut().for_each(|x| *x = -&*x);
                        }
                        slots[j] = Some((row, rc));
                        v = rest;
                        c = rest_c;
                    }
                }
            }
        }
        let full = slots.iter().all(Option::is_some);
        if !full {
            self.lattice = slots.iter().flatten().map(|(r, _)| r.clone()).collect();
            self.combos.clear();
            return;
        }
        let (mut rows, mut combos): (Vec<_>, Vec<_>) =
            slots.into_iter().map(Option::unwrap).unzip();
        // size-reduce below the pivots to keep combinations small
        for i in 1..k {
            for j in (0..i).rev() {
                let q = rows[i][j].div_floor(&rows[j][j]);
                if q.is_zero() {
                    continue;
                }
                let (lo, hi) = rows.split_at_mut(i);
                hi[0].iter_mut().zip(&lo[j]).for_each(|(x, y)| *x -= &q * y);
                let (lo, hi) = combos.split_at_mut(i);
                hi[0].iter_mut().zip(&lo[j]).for_each(|(x, y)| *x -= &q * y);
            }
        }
        self.lattice = rows;
        self.combos = combos;
    }

    fn finish(mut self) -> Result<ClassGroupDescription> {
        let k = self.residual.len();
        if k == 0 {
            if !self.minus_class_number.is_one() {
                return Err(Error::CrossCheck(format!(
                    "every factor-base prime is principal but the minus class number is {}",
                    self.minus_class_number
                )));
            }
            return Ok(self);
        }
        let (diagonal, v, vinv) = smith(&self.lattice);
        self.diagonal = diagonal;
        self.v = v;
        let order = self.order();
        if order != self.minus_class_number {
            return Err(Error::CrossCheck(format!(
                "relation lattice gives order {order}, minus class number is {}",
                self.minus_class_number
            )));
        }
        let mut generators = Vec::new();
        let nontrivial: Vec<usize> = (0..k).filter(|&i| !self.diagonal[i].is_one()).collect();
        for &i in &nontrivial {
            let d = self.diagonal[i]
                .to_u64()
                .ok_or_else(|| Error::Invalid("invariant factor overflow".into()))?;
            // prefer a single residual prime whose class is exactly the i-th generator
            let single = (0..k).find(|&j| {
                let mut e = vec![0i64; k];
                e[j] = 1;
                let c = self.class_vector(&e);
                nontrivial.iter().all(|&t| {
                    if t == i {
                        c[t].is_one()
                    } else {
                        c[t].is_zero()
                    }
                })
            });
            let exponents: Vec<i64> = match single {
                Some(j) => {
                    let mut e = vec![0i64; k];
                    e[j] = 1;
                    e
                }
                None => vinv[i]
                    .iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| Error::Invalid("generator exponent overflow".into()))
                    })
                    .collect::<Result<_>>()?,
            };
            let representative = self.residual_ideal(&exponents)?;
            let target: Vec<i64> = exponents.iter().map(|e| e * d as i64).collect();
            let witness = self.combine(&target)?;
            if FractionalIdeal::principal(&witness)? != representative.pow(d as i64)? {
                return Err(Error::Verification(
                    "class generator witness does not generate".into(),
                ));
            }
            let norm_form_nonprincipal = norm_form_obstruction(&representative);
            generators.push(ClassGenerator {
                exponents,
                representative,
                order: d,
                witness,
                norm_form_nonprincipal,
            });
        }
        self.generators = generators;
        Ok(self)
    }

    /// Π over residual primes of P_j^{e_j}.
    fn residual_ideal(&self, exponents: &[i64]) -> Result<FractionalIdeal> {
        let mut acc = FractionalIdeal::unit(&self.field)?;
        for (j, &e) in exponents.iter().enumerate() {
            if e != 0 {
                acc = acc.multiply(&self.factor_base[self.residual[j]].power(e)?)?;
            }
        }
        Ok(acc)
    }

    /// Class coordinates (x·V)_i mod d_i over all residual columns.
    fn class_vector(&self, x: &[i64]) -> Vec<BigInt> {
        let k = self.residual.len();
        (0..k)
            .map(|i| {
                let s: BigInt = (0..k).map(|j| &self.v[j][i] * x[j]).sum();
                s.mod_floor(&self.diagonal[i])
            })
            .collect()
    }

    /// A generator of Π P_j^{x_j} for x in the relation lattice.
    fn combine(&self, x: &[i64]) -> Result<CyclotomicNumber> {
        let k = self.residual.len();
        let mut rest: Vec<BigInt> = x.iter().map(|&e| BigInt::from(e)).collect();
        let mut z = vec![BigInt::zero(); k];
        for i in (0..k).rev() {
            if rest[i].is_zero() {
                continue;
            }
            let (q, r) = rest[i].div_rem(&self.lattice[i][i]);
            if !r.is_zero() {
                return Err(Error::Invalid("exponent vector is not a relation".into()));
            }
            for (t, l) in rest.iter_mut().zip(&self.lattice[i]) {
                *t -= &q * l;
            }
            z[i] = q;
        }
        let mut gamma = self.field.one();
        for (j, rel) in self.relations.iter().enumerate() {
            let y: BigInt = (0..k).map(|i| &z[i] * &self.combos[i][j]).sum();
            if y.is_zero() {
                continue;
            }
            let e = y
                .to_i64()
                .ok_or_else(|| Error::Invalid("relation exponent overflow".into()))?;
            gamma = &gamma * &rel.generator.pow_signed(e)?;
        }
        Ok(gamma)
    }

    /// Exponent vector over the factor base, if every prime of I lies in it.
    fn factor_base_exponents(&self, ideal: &FractionalIdeal) -> Result<Option<Vec<i64>>> {
        let mut exps = vec![0i64; self.factor_base.len()];
        for (prime, e) in factor_ideal(ideal)? {
            match self.factor_base.binary_search(&prime) {
                Ok(i) => exps[i] = e,
                Err(_) => return Ok(None),
            }
        }
        Ok(Some(exps))
    }

    /// Class of I in ⊕ Z/d_i (nontrivial invariant factors only).
    pub fn class_of(&self, ideal: &FractionalIdeal) -> Result<Vec<BigInt>> {
        let exps = self
            .factor_base_exponents(ideal)?
            .ok_or_else(|| Error::Undecided("ideal has primes outside the factor base".into()))?;
        let x: Vec<i64> = self.residual.iter().map(|&i| exps[i]).collect();
        if x.is_empty() {
            return Ok(Vec::new());
        }
        let c = self.class_vector(&x);
        Ok((0..x.len())
            .filter(|&i| !self.diagonal[i].is_one())
            .map(|i| c[i].clone())
            .collect())
    }

    /// Principality decided through the class group, with a verified generator
    /// assembled from relation witnesses.
    pub(crate) fn decide_principal(
        &self,
        ideal: &FractionalIdeal,
    ) -> Result<Option<CyclotomicNumber>> {
        let exps = self
            .factor_base_exponents(ideal)?
            .ok_or_else(|| Error::Undecided("ideal has primes outside the factor base".into()))?;
        let x: Vec<i64> = self.residual.iter().map(|&i| exps[i]).collect();
        if !x.is_empty() && self.class_vector(&x).iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let mut gamma = if x.is_empty() {
            self.field.one()
        } else {
            self.combine(&x)?
        };
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                if let Some(g) = &self.principal[i] {
                    gamma = &gamma * &g.pow_signed(e)?;
                }
            }
        }
        if FractionalIdeal::principal(&gamma)? != *ideal {
            return Err(Error::Verification(
                "assembled generator does not generate the ideal".into(),
            ));
        }
        Ok(Some(gamma))
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn factor_base_bound(&self) -> u64 {
        self.bound
    }

    pub fn minkowski_bound(&self) -> f64 {
        self.minkowski
    }

    /// Whether the factor base reaches the Minkowski bound, so that it
    /// provably generates the class group.
    pub fn is_unconditional(&self) -> bool {
        self.bound as f64 >= self.minkowski
    }

    pub fn factor_base(&self) -> &[PrimeIdealAboveQ] {
        &self.factor_base
    }

    pub fn residual_primes(&self) -> Vec<&PrimeIdealAboveQ> {
        self.residual
            .iter()
            .map(|&i| &self.factor_base[i])
            .collect()
    }

    pub fn principal_generator(&self, index: usize) -> Option<&CyclotomicNumber> {
        self.principal.get(index).and_then(Option::as_ref)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Relation matrix over the residual primes, one row per relation.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relations.iter().map(|r| r.exponents.clone()).collect()
    }

    /// Invariant factors d_1 | d_2 | … greater than one.
    pub fn invariants(&self) -> Vec<u64> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.diagonal.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn generators(&self) -> &[ClassGenerator] {
        &self.generators
    }

    pub fn minus_class_number(&self) -> &BigInt {
        &self.minus_class_number
    }

    /// Re-checks every stored witness exactly.
    pub fn verify(&self) -> Result<()> {
        for (prime, g) in self.factor_base.iter().zip(&self.principal) {
            if let Some(g) = g {
                if FractionalIdeal::principal(g)? != prime.ideal() {
                    return Err(Error::Verification(format!(
                        "stored generator fails for {prime:?}"
                    )));
                }
            }
        }
        for rel in &self.relations {
            if FractionalIdeal::principal(&rel.generator)? != self.residual_ideal(&rel.exponents)? {
                return Err(Error::Verification(
                    "relation witness does not generate".into(),
                ));
            }
        }
        for g in &self.generators {
            if FractionalIdeal::principal(&g.witness)? != g.representative.pow(g.order as i64)? {
                return Err(Error::Verification(
                    "generator witness does not generate".into(),
                ));
            }
        }
        if self.order() != self.minus_class_number {
            return Err(Error::CrossCheck(
                "order differs from the minus class number".into(),
            ));
        }
        Ok(())
    }

    pub fn to_certificate(&self) -> ClassGroupCertificate {
        let mut orbits = Vec::new();
        let mut last_q = 0;
        for (i, prime) in self.factor_base.iter().enumerate() {
            if prime.q() == last_q {
                continue;
            }
            last_q = prime.q();
            orbits.push(OrbitRecord {
                q: prime.q(),
                residue_degree: prime.residue_degree(),
                primes: self
                    .factor_base
                    .iter()
                    .filter(|pr| pr.q() == prime.q())
                    .count(),
                representative: prime.to_repr(),
                generator: self.principal[i].clone(),
            });
        }
        ClassGroupCertificate {
            conductor: self.field.conductor(),
            factor_base_bound: self.bound,
            minkowski_bound: self.minkowski,
            unconditional: self.is_unconditional(),
            factor_base_size: self.factor_base.len(),
            orbits,
            residual: self
                .residual_primes()
                .into_iter()
                .map(|p| p.to_repr())
                .collect(),
            relations: self.relations.clone(),
            invariants: self.invariants(),
            order: JsonInt(self.order()),
            minus_class_number: JsonInt(self.minus_class_number.clone()),
            generators: self.generators.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub q: u64,
    pub residue_degree: u32,
    pub primes: usize,
    pub representative: super::PrimeIdealRepr,
    /// Generator of the representative; conjugates generate the rest.
    pub generator: Option<CyclotomicNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassGroupCertificate {
    pub conductor: u64,
    pub factor_base_bound: u64,
    pub minkowski_bound: f64,
    pub unconditional: bool,
    pub factor_base_size: usize,
    pub orbits: Vec<OrbitRecord>,
    pub residual: Vec<super::PrimeIdealRepr>,
    pub relations: Vec<Relation>,
    pub invariants: Vec<u64>,
    pub order: JsonInt,
    pub minus_class_number: JsonInt,
    pub generators: Vec<ClassGenerator>,
}

type Matrix = Vec<Vec<BigInt>>;

/// Smith form of a square nonsingular matrix: returns the diagonal d_1 | d_2 | …,
/// V and V^{-1} with U·A·V = diag for some unimodular U.
fn smith(a: &[Vec<BigInt>]) -> (Vec<BigInt>, Matrix, Matrix) {
    let k = a.len();
    let mut a = a.to_vec();
    let identity = |k: usize| -> Matrix {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mut v = identity(k);
    let mut vinv = identity(k);
    for t in 0..k {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if !a[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..k {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (lo, hi) = a.split_at_mut(i);
                    hi[0].iter_mut().zip(&lo[t]).for_each(|(x, y)| *x -= &q * y);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..k {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    for row in v.iter_mut() {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    let (lo, hi) = vinv.split_at_mut(j);
                    lo[t].iter_mut().zip(&hi[0]).for_each(|(x, y)| *x += &q * y);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..k).find(|&i| (t + 1..k).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (lo, hi) = a.split_at_mut(i);
                    lo[t].iter_mut().zip(&hi[0]).for_each(|(x, y)| *x += y);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -&*x);
        }
    }
    let diagonal = (0..k).map(|i| a[i][i].clone()).collect();
    (diagonal, v, vinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn smith_form_of_small_matrix() {
        let a: Matrix = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (d, v, vinv) = smith(&a);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let k = 3;
        for i in 0..k {
            for j in 0..k {
                let s: BigInt = (0..k).map(|t| &v[i][t] * &vinv[t][j]).sum();
                assert_eq!(
                    s,
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                );
            }
        }
    }
}
