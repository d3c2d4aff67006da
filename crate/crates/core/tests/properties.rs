use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use sqtile::orbit::{act_l, act_l_inverse, act_r, act_r_inverse, apply_word};
use sqtile::poly::{primes_from, IntPolynomial};
use sqtile::{Origami, Permutation, Word};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn origami() -> impl Strategy<Value = Origami> {
    (1usize..=8)
        .prop_flat_map(|n| (permutation(n), permutation(n)))
        .prop_filter_map("transitive", |(r, u)| Origami::new(r, u).ok())
}

fn sigma_for(o: &Origami) -> impl Strategy<Value = (Origami, Permutation)> {
    let o = o.clone();
    permutation(o.degree()).prop_map(move |s| (o.clone(), s))
}

fn quartic() -> impl Strategy<Value = IntPolynomial> {
    (prop::collection::vec(-30i64..=30, 4), 1i64..=5).prop_map(|(mut c, lead)| {
        c.push(lead);
        IntPolynomial::from_i64(&c)
    })
}

fn small_poly(max_degree: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_degree)
        .prop_flat_map(|d| (prop::collection::vec(-9i64..=9, d), 1i64..=3))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPolynomial::from_i64(&c)
        })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), -5i64..=5), 0..6).prop_map(|runs| {
        Word::from_runs(runs.into_iter().map(|(l, e)| (if l { sqtile::Letter::L } else { sqtile::Letter::R }, e)))
    })
}

/// Proper degrees `d` such that every sampled factorization pattern has a sub-multiset summing to `d`.
fn consistent_factor_degrees(p: &IntPolynomial, primes: usize) -> Vec<usize> {
    let n = p.degree();
    let mut alive: Vec<bool> = (0..=n).map(|d| d > 0 && d < n).collect();
    for prime in primes_from(2).take(primes) {
        let Some(pattern) = p.factor_pattern_mod(prime) else { continue };
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for k in pattern {
            for s in (k..=n).rev() {
                sums[s] |= sums[s - k];
            }
        }
        for d in 0..=n {
            alive[d] &= sums[d];
        }
    }
    (0..=n).filter(|&d| alive[d]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generators_preserve_area_and_stratum(o in origami()) {
        for image in [act_l(&o), act_r(&o), act_l_inverse(&o), act_r_inverse(&o)] {
            prop_assert_eq!(image.degree(), o.degree());
            prop_assert_eq!(image.stratum(), o.stratum());
        }
        // The generators act on isomorphism classes.
        prop_assert_eq!(act_l_inverse(&act_l(&o)).canonical_form(), o.canonical_form());
        prop_assert_eq!(act_r(&act_r_inverse(&o)).canonical_form(), o.canonical_form());
    }

    #[test]
    fn canonical_form_is_a_relabelling_invariant((o, sigma) in origami().prop_flat_map(|o| sigma_for(&o))) {
        let relabelled = o.relabel(&sigma);
        prop_assert_eq!(relabelled.canonical_form(), o.canonical_form());
        prop_assert_eq!(relabelled.automorphism_count(), o.automorphism_count());
        prop_assert!(!o.isomorphisms_to(&relabelled).is_empty());
    }

    #[test]
    fn origami_text_roundtrip(o in origami()) {
        prop_assert_eq!(Origami::parse(&o.to_text()).unwrap(), o);
    }

    #[test]
    fn euler_characteristic_matches_stratum(o in origami()) {
        let s = o.stratum();
        prop_assert_eq!(2 * s.genus, 2 + s.zero_orders.iter().sum::<usize>());
    }

    #[test]
    fn word_action_is_a_group_action(o in origami(), a in word(), b in word()) {
        let ab = a.concat(&b);
        prop_assert_eq!(apply_word(&o, &ab), apply_word(&apply_word(&o, &b), &a));
        prop_assert_eq!(ab.matrix(), a.matrix() * b.matrix());
        prop_assert_eq!(Word::parse(&ab.to_string()).unwrap(), ab);
    }

    #[test]
    fn polynomial_text_roundtrip(p in small_poly(7)) {
        prop_assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn irreducibility_respects_mod_p_patterns(p in small_poly(6)) {
        let irreducible = p.is_irreducible();
        let n = p.degree();
        let primitive = p.primitive_part();
        let inert_somewhere = primes_from(2).take(40).any(|q| primitive.factor_pattern_mod(q) == Some(vec![n]));
        if inert_somewhere {
            prop_assert!(irreducible);
        }
        if !irreducible && n > 1 && p.is_squarefree() {
            prop_assert!(!consistent_factor_degrees(&primitive, 40).is_empty());
        }
    }

    #[test]
    fn products_are_reducible(a in small_poly(3), b in small_poly(3)) {
        prop_assert!(!a.mul(&b).is_irreducible());
    }

    #[test]
    fn totally_real_quartics_have_positive_discriminant(p in quartic()) {
        if p.is_squarefree() {
            let real = p.totally_real().unwrap();
            prop_assert_eq!(real, p.sturm_real_root_count() == p.degree());
            if real {
                prop_assert!(p.discriminant().is_positive());
            }
            // Quartic discriminant sign: positive iff 0 or 4 real roots.
            let count = p.sturm_real_root_count();
            prop_assert_eq!(p.discriminant().is_positive(), count == 0 || count == 4);
        } else {
            prop_assert_eq!(p.discriminant(), BigInt::from(0));
        }
    }
}
