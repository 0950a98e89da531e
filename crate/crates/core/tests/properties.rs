//! Property tests for the exact-arithmetic substrate and the disk algebra.

use hpseries::disk::{self, DiskPoly};
use hpseries::scalars::{gamma_ratio, rat, GaussianRational, LaurentPoly, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-4i64..=4, -4i64..=4), arb_gaussian()), 0..6).prop_map(|terms| {
        let mut p = LaurentPoly::zero(2);
        for ((a, b), c) in terms {
            p.add_term((a, b), c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_ratio_composes(x in arb_rational(), n in -5i64..=5, m in -5i64..=5) {
        let shifted = &x + Rational::from_integer(n.into());
        if let (Ok(a), Ok(b), Ok(c)) = (
            gamma_ratio(&x, n),
            gamma_ratio(&shifted, m),
            gamma_ratio(&x, n + m),
        ) {
            prop_assert_eq!(a * b, c);
        }
    }

    #[test]
    fn laurent_multiplication_commutes_and_associates(
        p in arb_laurent(),
        q in arb_laurent(),
        r in arb_laurent(),
    ) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn laurent_product_matches_pointwise_evaluation(p in arb_laurent(), q in arb_laurent()) {
        // Exactness of convolution: evaluate both sides at a rational circle
        // point in each variable.
        let eval = |f: &LaurentPoly| {
            f.specialize(0, &rat(3, 5), &rat(4, 5))
                .specialize(1, &rat(5, 13), &rat(12, 13))
                .eval_identity()
        };
        let lhs = eval(&(&p * &q));
        let rhs = {
            let (a, b) = (eval(&p), eval(&q));
            &a * &b
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_product_has_real_constant_term(p in arb_laurent()) {
        let prod = &p.conj() * &p;
        prop_assert!(prod.coeff((0, 0)).im.is_zero());
    }

    #[test]
    fn disk_linearization_partition_of_unity(
        alpha in 0i64..=4,
        p in 0i64..=5,
        q in 0i64..=5,
    ) {
        let map = disk::linearize_z_product(alpha, p, q);
        let mut sum = Rational::zero();
        for ((tp, tq), c) in &map {
            prop_assert!(!c.is_negative());
            prop_assert!(*tp == p + 1 && *tq == q || *tp == p && *tq == q - 1);
            sum += c.clone();
        }
        prop_assert_eq!(sum, Rational::from_integer(1.into()));
    }

    #[test]
    fn disk_basis_expansion_inverts_evaluation(
        alpha in 0i64..=3,
        p in 0i64..=4,
        q in 0i64..=4,
        p2 in 0i64..=3,
        q2 in 0i64..=3,
    ) {
        // Expanding a product of two basis elements and resumming gives the
        // product back, exactly.
        let f = disk::disk_polynomial(alpha, p, q).mul(&disk::disk_polynomial(alpha, p2, q2));
        let expansion = disk::expand_in_basis(alpha, &f).unwrap();
        let mut resum = DiskPoly::zero();
        for ((bp, bq), c) in expansion {
            resum = resum.add(&disk::disk_polynomial(alpha, bp, bq).scale(&c));
        }
        prop_assert_eq!(resum, f);
    }
}
