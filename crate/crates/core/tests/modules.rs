use kwverify::ideal::{class_group, factor_rational_prime, FractionalIdeal};
use kwverify::kummer::{abelian_criterion, constructed_instance, reduce_generator, KummerDatum};
use kwverify::lattice::{subfield_by_periods, AbelianField};
use kwverify::ntheory::primitive_root;
use kwverify::stick::{
    apply_to_ideal, minus_class_number, stickelberger_element, verify_stickelberger_factorization,
};
use kwverify::CyclotomicField;

#[test]
fn class_group_order_matches_the_analytic_minus_part() {
    for p in [3u64, 5, 7, 11, 13] {
        let f = CyclotomicField::new(p).unwrap();
        let cg = class_group(&f, None).unwrap();
        assert_eq!(cg.order(), minus_class_number(p).unwrap(), "p = {p}");
    }
}

#[test]
fn stickelberger_image_of_a_split_prime_is_generated_by_a_gauss_sum_power() {
    let (p, q) = (7, 29);
    let f = CyclotomicField::new(p).unwrap();
    let theta = stickelberger_element(p).unwrap();
    let cert = verify_stickelberger_factorization(p, q, primitive_root(q).unwrap()).unwrap();
    let prime = factor_rational_prime(q, &f).unwrap().remove(0).0;
    // recomputed independently: θ(σ_c 𝔮) for every c, one of which is (g^p)
    let target = FractionalIdeal::principal(&cert.descended_power).unwrap();
    let hits: Vec<u64> = (1..p)
        .filter(|&c| apply_to_ideal(&theta, &prime.galois(c).unwrap().ideal()).unwrap() == target)
        .collect();
    assert_eq!(hits.len(), 1);
}

#[test]
fn reduction_recovers_the_root_of_unity_exponent() {
    let f = CyclotomicField::new(5).unwrap();
    let cg = class_group(&f, None).unwrap();
    for seed in 0..4 {
        let (mu, t) = constructed_instance(&f, seed);
        let datum = KummerDatum::new(mu).unwrap();
        assert_eq!(reduce_generator(&datum, &cg).unwrap().t, t);
    }
}

#[test]
fn zeta_satisfies_the_abelian_criterion() {
    let f = CyclotomicField::new(5).unwrap();
    assert!(
        abelian_criterion(&KummerDatum::new(f.zeta()).unwrap())
            .unwrap()
            .pass
    );
}

#[test]
fn real_subfield_polynomial_of_q_zeta_seven() {
    let k = AbelianField::maximal_real(7).unwrap();
    let poly = subfield_by_periods(&k).unwrap();
    // 2cos(2π/7) has minimal polynomial x³ + x² − 2x − 1
    assert_eq!(poly.as_i64s().unwrap(), vec![-1, -2, 1, 1]);
}
