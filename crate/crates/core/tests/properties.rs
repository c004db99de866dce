use carlitz_core::curve::{counts_from_l_poly, functional_equation_holds, l_poly_from_counts};
use carlitz_core::group::GroupLevel;
use carlitz_core::theta::{theta_truncate, theta_truncate_enumerated};
use carlitz_core::zeta::{power_sum, power_sum_enumerated, z_poly};
use carlitz_core::{Fq, Place};
use proptest::prelude::*;

fn field(idx: usize) -> Fq {
    let (p, r) = [(2, 1), (3, 1), (2, 2), (5, 1)][idx];
    Fq::new(p, r).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    (0usize..4, 0u64..5000, 0u64..5000, 0u64..5000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((idx, a, b, c) in poly_strategy()) {
        let f = field(idx);
        let (a, b, c) = (f.decode(a), f.decode(b), f.decode(c));
        prop_assert_eq!(f.pmul(&a, &f.padd(&b, &c)), f.padd(&f.pmul(&a, &b), &f.pmul(&a, &c)));
        prop_assert_eq!(f.pmul(&a, &b), f.pmul(&b, &a));
        if !b.is_zero() {
            let (quo, rem) = f.pdivrem(&a, &b);
            prop_assert_eq!(f.padd(&f.pmul(&quo, &b), &rem), a);
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        }
    }

    #[test]
    fn frobenius_is_additive((idx, a, b, _) in poly_strategy()) {
        let f = field(idx);
        let p = f.p() as u64;
        let (a, b) = (f.decode(a), f.decode(b));
        prop_assert_eq!(f.ppow(&f.padd(&a, &b), p), f.padd(&f.ppow(&a, p), &f.ppow(&b, p)));
    }

    #[test]
    fn power_sums_agree(idx in 0usize..4, j in 0u64..40, n in 0usize..4) {
        let f = field(idx);
        prop_assert_eq!(power_sum(&f, j, n, None).unwrap(), power_sum_enumerated(&f, j, n, None, 1 << 20).unwrap());
    }

    #[test]
    fn z_is_a_polynomial(idx in 0usize..4, j in 0u64..200) {
        let f = field(idx);
        let z = z_poly(&f, j).unwrap();
        prop_assert!(z.degree() <= z.bound);
        for n in z.bound + 1..=z.bound + 2 {
            prop_assert!(power_sum(&f, j, n, None).unwrap().is_zero());
        }
    }

    #[test]
    fn weil_polynomials_round_trip(a1 in -3i64..=3, a2 in -4i64..=4) {
        // L(X) = 1 + a1 X + a2 X^2 + q a1 X^3 + q^2 X^4 for q = 3
        let q = 3i64;
        let num = vec![1, a1, a2, q * a1, q * q];
        prop_assume!(functional_equation_holds(q as u64, &num));
        let counts = counts_from_l_poly(q as u64, &num, 4);
        prop_assume!(counts.iter().all(|&c| c >= 0));
        let measured: Vec<u64> = counts.iter().map(|&c| c as u64).collect();
        let (back, fe) = l_poly_from_counts(q as u64, 2, &measured).unwrap();
        prop_assert!(fe);
        prop_assert_eq!(back, num);
    }
}

#[test]
fn theta_fast_path_matches_enumeration() {
    for (p, r, conductor, level, degree) in [(2, 1, "t^2+t+1", 1, 6), (3, 1, "t", 2, 5), (2, 2, "t", 1, 5), (3, 1, "t^2+1", 0, 5)] {
        let f = Fq::new(p, r).unwrap();
        let place = Place::finite(&f, f.parse_poly(conductor, 't').unwrap()).unwrap();
        let group = GroupLevel::new(&f, &place, level).unwrap();
        let fast = theta_truncate(&group, degree, 1 << 22).unwrap();
        let slow = theta_truncate_enumerated(&group, degree, 1 << 22).unwrap();
        assert_eq!(fast.coeffs, slow.coeffs, "q={} P={conductor} n={level}", f.q());
    }
}
