use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use latori_core::arith::{divisors, gcd};
use latori_core::classgroup::{max_order_class_group, TotalOrder};
use latori_core::corpus::corpus;
use latori_core::cyclo::{cyclotomic, h_minus, h_minus_with, IntPolynomial};
use latori_core::groups::{condition_1prime, parse_group, theorem14_classify, FamilySpec};
use latori_core::homalg::{det, elementary_divisors, hnf_with_transform, is_unimodular, kernel_basis, snf, tate_h0};
use latori_core::lattices::PiLattice;
use latori_core::IMat;

fn small_matrix() -> impl Strategy<Value = IMat> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..10, r * c).prop_map(move |data| IMat::from_vec(r, c, data))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_transform_is_unimodular(a in small_matrix()) {
        let (h, u, _) = hnf_with_transform(&a).unwrap();
        prop_assert!(is_unimodular(&u).unwrap());
        prop_assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn kernel_annihilates(a in small_matrix()) {
        let k = kernel_basis(&a).unwrap();
        prop_assert_eq!(k.rows(), a.cols());
        if k.cols() > 0 {
            prop_assert!(a.mul(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn smith_divisibility_and_determinant(data in proptest::collection::vec(-6i64..7, 9)) {
        let a = IMat::from_vec(3, 3, data);
        let s = snf(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0);
        }
        let prod = elementary_divisors(&a).unwrap().iter().fold(BigInt::one(), |acc, x| acc * x);
        let d = det(&a).unwrap().abs();
        if !d.is_zero() {
            prop_assert_eq!(prod, d);
        }
    }

    #[test]
    fn cyclotomic_product(n in 1u64..400) {
        let prod = divisors(n).into_iter().fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d)).unwrap());
        prop_assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize));
    }

    #[test]
    fn relative_class_number_is_independent_of_generators(m in 3u64..60, v in 0u64..4) {
        prop_assume!(m % 4 != 2);
        prop_assert_eq!(h_minus_with(m, v).unwrap(), h_minus(m).unwrap());
    }

    #[test]
    fn classification_conditions_agree(n in (0u64..32).prop_map(|k| 2 * k + 1), m in (1u64..25).prop_map(|k| 2 * k + 1)) {
        prop_assume!(gcd(n, m) == 1);
        let via_family = if n == 1 {
            theorem14_classify(&FamilySpec::Dihedral { n: m }).unwrap().in_list
        } else {
            theorem14_classify(&FamilySpec::CyclicTimesDihedral { n, m }).unwrap().in_list
        };
        prop_assert_eq!(via_family, condition_1prime(n, m, 1));
        let q = theorem14_classify(&FamilySpec::Quaternion { n: m }).unwrap().in_list;
        prop_assert_eq!(q, condition_1prime(1, m, 2));
    }

    #[test]
    fn class_group_total_is_product(n in 2u64..80, which in 0usize..3) {
        let spec = match which {
            0 => FamilySpec::Dihedral { n },
            1 => FamilySpec::Cyclic { n },
            _ => FamilySpec::Quaternion { n },
        };
        let r = max_order_class_group(&spec).unwrap();
        let product = r.summands.iter().try_fold(BigInt::one(), |acc, s| {
            s.status.known().map(|h| acc * num_traits::pow(h.clone(), s.multiplicity as usize))
        });
        match (product, &r.total) {
            (Some(p), TotalOrder::Known(t)) => prop_assert_eq!(&p, t),
            (None, TotalOrder::Unknown) => {}
            _ => prop_assert!(false, "total does not match summands"),
        }
        prop_assert_eq!(&r, &max_order_class_group(&spec).unwrap());
    }

    #[test]
    fn epsilon_is_multiplicative(which in 0usize..3, n in 3u64..20, a in 0usize..1000, b in 0usize..1000) {
        let spec = match which {
            0 => format!("D{n}"),
            1 => format!("Q{}", 4 * n),
            _ => format!("C{}", n),
        };
        let g = parse_group(&spec).unwrap();
        let (x, y) = (a % g.order(), b % g.order());
        let e = |t| g.epsilon(t).unwrap();
        prop_assert_eq!(e(g.mul(x, y)), e(x) * e(y));
    }
}

#[test]
fn dual_is_an_involution_and_cohomology_is_additive() {
    for spec in ["C4", "D3", "Q8"] {
        let g = Arc::new(parse_group(spec).unwrap());
        let ms = corpus(g.clone()).unwrap();
        for m in &ms {
            assert!(m.dual().unwrap().dual().unwrap().same_matrices(m), "{spec} {}", m.label());
        }
        let reg = PiLattice::regular(g.clone());
        for h in g.subgroups().representatives() {
            for m in ms.iter().take(6) {
                let sum = m.direct_sum(&reg).unwrap();
                let lhs = tate_h0(&sum, &h.elements).unwrap();
                let rhs = tate_h0(m, &h.elements).unwrap().sum(&tate_h0(&reg, &h.elements).unwrap());
                assert_eq!(lhs, rhs, "{spec} {} over {}", m.label(), h.describe(&g));
            }
        }
    }
}
