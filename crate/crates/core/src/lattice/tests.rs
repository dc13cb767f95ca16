use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::cyclo::CyclotomicField;
use crate::ntheory::euler_phi;

fn field(n: u64, h: &[u64]) -> AbelianField {
    AbelianField::new(n, h).unwrap()
}

fn poly(n: u64, h: &[u64]) -> Vec<i64> {
    subfield_by_periods(&field(n, h))
        .unwrap()
        .as_i64s()
        .unwrap()
}

#[test]
fn modulus_and_subgroup_validation() {
    assert_eq!(
        AbelianField::new(6, &[1]),
        Err(Error::NonCanonicalModulus(6, 3))
    );
    assert!(matches!(
        AbelianField::new(9, &[1, 2]),
        Err(Error::Invalid(_))
    ));
    assert_eq!(AbelianField::new(9, &[1, 3]), Err(Error::NotCoprime(3, 9)));
    assert!(AbelianField::new(9, &[2, 4]).is_err());
    let k = field(9, &[1, 8, 17]);
    assert_eq!(k.subgroup(), &[1, 8]);
    assert_eq!(k.degree(), 3);
}

#[test]
fn inertia_examples() {
    assert_eq!(inertia_subgroup(8, 2).unwrap(), units(8));
    assert_eq!(inertia_subgroup(15, 3).unwrap(), vec![1, 11]);
    assert_eq!(inertia_subgroup(9, 3).unwrap(), units(9));
    assert_eq!(inertia_subgroup(15, 5).unwrap(), vec![1, 4, 7, 13]);
    assert_eq!(inertia_subgroup(15, 7), Err(Error::NotDivisor(7, 15)));
    assert_eq!(inertia_subgroup(15, 15), Err(Error::NotPrime(15)));
}

#[test]
fn ramification_examples() {
    assert_eq!(ramification_profile(&field(4, &[1])), vec![2]);
    assert_eq!(ramification_profile(&field(5, &[1, 4])), vec![5]);
    assert_eq!(
        ramification_profile(&field(15, &units(15))),
        Vec::<u64>::new()
    );
    // Q(√5) written with modulus 15 is still ramified only at 5
    let k = field(5, &[1, 4]).lift(15).unwrap();
    assert_eq!(ramification_profile(&k), vec![5]);
    for n in [3u64, 4, 5, 8, 9, 12, 15, 16, 20, 21, 35] {
        let primes: Vec<u64> = crate::ntheory::factor_u64(n)
            .into_iter()
            .map(|(q, _)| q)
            .collect();
        assert_eq!(
            ramification_profile(&AbelianField::cyclotomic(n).unwrap()),
            primes,
            "n={n}"
        );
    }
}

#[test]
fn enumeration_examples() {
    let quadratics = enumerate_abelian_fields(8, 2, &[2]).unwrap();
    assert_eq!(quadratics.len(), 3);
    assert_eq!(enumerate_abelian_fields(9, 3, &[3]).unwrap().len(), 1);
    assert_eq!(enumerate_abelian_fields(25, 5, &[5]).unwrap().len(), 1);
    // Q(√−3) and Q(√5) sit in Q(ζ_15) but only Q(√−15) is ramified at both
    let both = enumerate_abelian_fields(15, 2, &[3, 5]).unwrap();
    assert_eq!(both.len(), 3);
    assert_eq!(enumerate_abelian_fields(15, 2, &[3]).unwrap().len(), 1);
    assert!(enumerate_abelian_fields(9, 4, &[3]).is_err());
}

#[test]
fn subgroup_counts() {
    // cyclic of order 6 and 20, Klein four, Z/2 × Z/4
    assert_eq!(subgroups(9).unwrap().len(), 4);
    assert_eq!(subgroups(25).unwrap().len(), 6);
    assert_eq!(subgroups(8).unwrap().len(), 5);
    assert_eq!(subgroups(16).unwrap().len(), 8);
    for n in [8u64, 9, 15, 16, 21] {
        for h in subgroups(n).unwrap() {
            let k = field(n, &h);
            assert_eq!(k.degree() * h.len() as u64, euler_phi(n));
        }
    }
}

#[test]
fn group_structure() {
    assert_eq!(
        AbelianField::cyclotomic(8)
            .unwrap()
            .galois_group()
            .unwrap()
            .invariants(),
        &[2, 2]
    );
    assert_eq!(
        AbelianField::cyclotomic(9)
            .unwrap()
            .galois_group()
            .unwrap()
            .invariants(),
        &[6]
    );
    assert_eq!(
        AbelianField::cyclotomic(15)
            .unwrap()
            .galois_group()
            .unwrap()
            .invariants(),
        &[2, 4]
    );
    assert_eq!(
        AbelianField::cyclotomic(32)
            .unwrap()
            .galois_group()
            .unwrap()
            .invariants(),
        &[2, 8]
    );
    assert!(AbelianField::maximal_real(32)
        .unwrap()
        .galois_group()
        .unwrap()
        .is_cyclic());
    assert_eq!(
        FiniteAbelianGroup::from_cyclic_factors(&[4, 6])
            .unwrap()
            .invariants(),
        &[2, 12]
    );
    assert_eq!(
        FiniteAbelianGroup::from_cyclic_factors(&[1, 1]).unwrap(),
        FiniteAbelianGroup::trivial()
    );
    assert!(FiniteAbelianGroup::new(vec![4, 6]).is_err());
    assert!(FiniteAbelianGroup::new(vec![1, 3]).is_err());
    let g = FiniteAbelianGroup::new(vec![3, 9]).unwrap();
    assert_eq!((g.order(), g.exponent(), g.rank()), (27, 9, 2));
}

#[test]
fn period_polynomial_examples() {
    assert_eq!(poly(9, &[1, 8]), vec![1, -3, 0, 1]);
    assert_eq!(poly(8, &[1, 7]), vec![-2, 0, 1]);
    assert_eq!(poly(5, &[1, 4]), vec![-1, 1, 1]);
    assert_eq!(poly(4, &[1]), vec![1, 0, 1]);
    assert_eq!(poly(16, &[1, 15]), vec![2, 0, -4, 0, 1]);
    // ζ_8 + ζ_8^5 = 0 degenerates; the fallback adds the period 2i
    let k = subfield_by_periods(&field(8, &[1, 5])).unwrap();
    assert_eq!((k.perturbation, k.perturbation_power), (1, 2));
    assert_eq!(k.as_i64s().unwrap(), vec![4, 0, 1]);
    // ζ_9 + ζ_9^4 + ζ_9^7 = 0 and so is its square; Σ_h ζ_9^(3h) = 3ζ_3 generates
    let k = subfield_by_periods(&field(9, &[1, 4, 7])).unwrap();
    assert_eq!((k.perturbation, k.perturbation_power), (1, 3));
    assert_eq!(k.as_i64s().unwrap(), vec![9, 3, 1]);
    assert_eq!(
        subfield_by_periods(&field(8, &[1, 3]))
            .unwrap()
            .as_i64s()
            .unwrap(),
        vec![2, 0, 1]
    );
}

#[test]
fn period_polynomials_match_exact_minimal_polynomials() {
    // independent route: linear algebra on powers of the same element
    for n in [5u64, 7, 8, 9, 12, 13, 15, 16, 20, 21] {
        let f = CyclotomicField::new(n).unwrap();
        for h in subgroups(n).unwrap() {
            let k = field(n, &h);
            let pp = subfield_by_periods(&k).unwrap();
            // rebuilt by hand rather than through pp.generator
            let (c, j) = (BigInt::from(pp.perturbation), pp.perturbation_power);
            let theta = h.iter().fold(f.zero(), |acc, &x| {
                &(&acc + &f.zeta_pow(x as i64)) + &f.zeta_pow((j * x % n) as i64).scale_int(&c)
            });
            let exact = theta.minimal_polynomial();
            let ours: Vec<BigRational> = pp
                .coefficients
                .iter()
                .map(|c| BigRational::from(c.0.clone()))
                .collect();
            assert_eq!(ours, exact, "n={n} H={h:?}");
            assert_eq!(pp.degree() as u64, k.degree());
        }
    }
}

#[test]
fn galois_correspondence_by_root_membership() {
    for n in [7u64, 9, 12, 15, 16] {
        let f = CyclotomicField::new(n).unwrap();
        let all = subgroups(n).unwrap();
        let generators: Vec<_> = all
            .iter()
            .map(|h| {
                subfield_by_periods(&field(n, h))
                    .unwrap()
                    .generator(&f)
                    .unwrap()
            })
            .collect();
        for h1 in &all {
            for (j, h2) in all.iter().enumerate() {
                let contained = h1.iter().all(|x| h2.contains(x));
                // K(H2) ⊆ K(H1) iff the generator of K(H2) is fixed by H1
                let by_roots = h1.iter().all(|&x| generators[j].galois(x) == generators[j]);
                assert_eq!(contained, by_roots, "n={n} {h1:?} {h2:?}");
                assert_eq!(
                    contained,
                    field(n, h2).is_subfield_of(&field(n, h1)).unwrap()
                );
            }
        }
    }
}

#[test]
fn lifting_preserves_the_field() {
    let k = field(5, &[1, 4]);
    let big = k.lift(20).unwrap();
    assert_eq!(big.degree(), 2);
    assert!(k
        .is_subfield_of(&AbelianField::cyclotomic(15).unwrap())
        .unwrap());
    assert!(!field(8, &[1, 7])
        .is_subfield_of(&AbelianField::cyclotomic(12).unwrap())
        .unwrap());
    assert!(field(4, &[1])
        .is_subfield_of(&AbelianField::cyclotomic(12).unwrap())
        .unwrap());
    assert_eq!(k.lift(7), Err(Error::NotDivisor(5, 7)));
}

#[test]
fn compositum_small_cases() {
    let cert = cyclic_compositum_check(2, 1, 1).unwrap();
    assert_eq!(cert.counts[0].subdirect, 2);
    assert_eq!(cert.counts[0].cyclic_subdirect, 1);
    let diagonal = &cert.cyclic_cases[0];
    assert!(diagonal.first_injective && diagonal.second_injective);
    assert_eq!(diagonal.order, 2);

    // Z/p × Z/p: the full group and the p − 1 graphs of automorphisms
    for p in [3u64, 5, 7] {
        let c = &cyclic_compositum_check(p, 1, 1).unwrap().counts[0];
        assert_eq!((c.subdirect, c.cyclic_subdirect), (p, p - 1), "p={p}");
    }

    let cert = cyclic_compositum_check(3, 2, 1).unwrap();
    let cases: Vec<_> = cert
        .cyclic_cases
        .iter()
        .filter(|c| (c.a, c.b) == (2, 1))
        .collect();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|c| c.order == 9 && c.first_injective));
}

#[test]
fn compositum_exhaustive() {
    for p in [2u64, 3] {
        let cert = cyclic_compositum_check(p, 3, 3).unwrap();
        assert!(cert.counterexamples.is_empty());
        assert_eq!(cert.counts.len(), 9);
        // subgroup counts of Z/p^a × Z/p^b are symmetric in (a, b)
        for c in &cert.counts {
            let mirror = cert
                .counts
                .iter()
                .find(|d| (d.a, d.b) == (c.b, c.a))
                .unwrap();
            assert_eq!(
                (c.subgroups, c.subdirect, c.cyclic_subdirect),
                (mirror.subgroups, mirror.subdirect, mirror.cyclic_subdirect)
            );
        }
    }
    // Z/4 × Z/2 has 8 subgroups
    let cert = cyclic_compositum_check(2, 2, 1).unwrap();
    assert_eq!(
        cert.counts
            .iter()
            .find(|c| (c.a, c.b) == (2, 1))
            .unwrap()
            .subgroups,
        8
    );
    assert!(cyclic_compositum_check(4, 1, 1).is_err());
    assert!(cyclic_compositum_check(2, 5, 1).is_err());
}

#[test]
fn prop_pex2_routes() {
    for bound in [10u64, 10_000] {
        let cert = verify_prop_pex2(bound).unwrap();
        assert_eq!(cert.discriminant_route, vec![-2, -1, 2]);
        assert!(cert.routes_agree);
        assert_eq!(cert.real_fields, vec![2]);
    }
    let cert = verify_prop_pex2(10).unwrap();
    assert!(!cert.discriminant_route.contains(&5));
    let i = cert.lattice_route.iter().find(|q| q.d == -1).unwrap();
    assert!(!i.real);
    assert!(verify_prop_pex2(9).is_err());
}

#[test]
fn prop_cp_examples() {
    let c = verify_prop_cp_c2(3, 1).unwrap();
    assert_eq!(c.modulus, 9);
    assert_eq!(c.k_prime_polynomial.as_i64s().unwrap(), vec![1, -3, 0, 1]);
    let c = verify_prop_cp_c2(2, 1).unwrap();
    assert_eq!(c.modulus, 8);
    assert_eq!(c.k_prime_polynomial.as_i64s().unwrap(), vec![-2, 0, 1]);
    let c = verify_prop_cp_c2(5, 1).unwrap();
    assert_eq!(
        (c.modulus, c.degree, c.k_prime_polynomial.degree()),
        (25, 5, 5)
    );
    let c = verify_prop_cp_c2(2, 2).unwrap();
    assert_eq!(
        c.k_prime_polynomial.as_i64s().unwrap(),
        vec![2, 0, -4, 0, 1]
    );
    for (p, m) in [(3u64, 2u32), (7, 1), (2, 3)] {
        let c = verify_prop_cp_c2(p, m).unwrap();
        assert!(c.k_prime.cyclic && c.k_prime.real);
        assert_eq!(c.k_prime.ramified, vec![p]);
    }
    assert!(verify_prop_cp_c2(3, 5).is_err());
    assert!(verify_prop_cp_c2(4, 1).is_err());
}

fn modulus() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![7u64, 9, 12, 13, 15, 16, 20, 21, 24, 28])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_subgroups_give_consistent_fields(n in modulus(), picks in prop::collection::vec(0usize..64, 0..3)) {
        let u = units(n);
        let gens: Vec<u64> = picks.iter().map(|&i| u[i % u.len()]).collect();
        let h = generate_subgroup(n, &gens);
        let k = AbelianField::new(n, &h).unwrap();
        prop_assert_eq!(k.degree() * h.len() as u64, euler_phi(n));
        prop_assert_eq!(k.galois_group().unwrap().order(), k.degree());
        let pp = subfield_by_periods(&k).unwrap();
        prop_assert_eq!(pp.degree() as u64, k.degree());
        prop_assert!(pp.conjugates_distinct && pp.fixed_by_subgroup);
        // ramified primes are exactly those whose inertia escapes H
        for q in ramification_profile(&k) {
            prop_assert!(n % q == 0);
            prop_assert!(inertia_subgroup(n, q).unwrap().iter().any(|x| !h.contains(x)));
        }
    }

    #[test]
    fn lifting_commutes_with_degree_and_ramification(n in modulus(), pick in 0usize..64, factor in 1u64..4) {
        let u = units(n);
        let k = AbelianField::new(n, &generate_subgroup(n, &[u[pick % u.len()]])).unwrap();
        let big = n * [1, 3, 5, 7][factor as usize];
        let lifted = k.lift(big).unwrap();
        prop_assert_eq!(lifted.degree(), k.degree());
        prop_assert_eq!(ramification_profile(&lifted), ramification_profile(&k));
        prop_assert!(lifted.is_subfield_of(&k).unwrap() && k.is_subfield_of(&lifted).unwrap());
    }
}
