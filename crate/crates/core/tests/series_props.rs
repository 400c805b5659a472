use bireg_core::series::{
    add, dilate, div, extract, invert, mul, pow, reduce_mod, shift, sub, CoeffRing, Series,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const ORDER: usize = 64;

fn exact(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(-50i64..50, order + 1)
        .prop_map(|c| Series::from_i64s(CoeffRing::EXACT, &c).unwrap())
}

fn unit_exact(order: usize) -> impl Strategy<Value = Series> {
    (prop::bool::ANY, prop::collection::vec(-9i64..9, order)).prop_map(|(neg, tail)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(tail);
        Series::from_i64s(CoeffRing::EXACT, &c).unwrap()
    })
}

fn modular(m: u64) -> impl Strategy<Value = Series> {
    prop::collection::vec(0..m, ORDER + 1).prop_map(move |c| {
        Series::from_residues(CoeffRing::modular(m).unwrap(), c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 100,
        rng_seed: RngSeed::Fixed(0x6269_7265_67),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn exact_ring_laws(a in exact(ORDER), b in exact(ORDER), c in exact(ORDER)) {
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
        prop_assert_eq!(mul(&mul(&a, &b).unwrap(), &c).unwrap(), mul(&a, &mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(
            mul(&a, &add(&b, &c).unwrap()).unwrap(),
            add(&mul(&a, &b).unwrap(), &mul(&a, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(sub(&add(&a, &b).unwrap(), &b).unwrap(), a);
    }

    #[test]
    fn modular_ring_laws(a in modular(17), b in modular(17), c in modular(17)) {
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
        prop_assert_eq!(mul(&mul(&a, &b).unwrap(), &c).unwrap(), mul(&a, &mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(
            mul(&a, &add(&b, &c).unwrap()).unwrap(),
            add(&mul(&a, &b).unwrap(), &mul(&a, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn large_prime_ring_laws(a in modular(4611686018427387847), b in modular(4611686018427387847)) {
        prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
        let ab = mul(&a, &b).unwrap();
        prop_assert_eq!(sub(&ab, &mul(&b, &a).unwrap()).unwrap(), Series::zero(a.ring(), ORDER));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_exact(ORDER)) {
        let inv = invert(&a).unwrap();
        let one = Series::one(CoeffRing::EXACT, ORDER);
        prop_assert_eq!(mul(&a, &inv).unwrap(), one.clone());
        prop_assert_eq!(mul(&inv, &a).unwrap(), one);
    }

    #[test]
    fn division_undoes_multiplication(a in exact(ORDER), b in unit_exact(ORDER)) {
        prop_assert_eq!(div(&mul(&a, &b).unwrap(), &b).unwrap(), a);
    }

    #[test]
    fn pow_laws(a in unit_exact(24), e in 0i64..6, f in 0i64..6) {
        prop_assert_eq!(
            mul(&pow(&a, e).unwrap(), &pow(&a, f).unwrap()).unwrap(),
            pow(&a, e + f).unwrap()
        );
        prop_assert_eq!(mul(&pow(&a, e).unwrap(), &pow(&a, -e).unwrap()).unwrap(), Series::one(CoeffRing::EXACT, 24));
    }

    #[test]
    fn extract_dilate_adjunction(a in exact(40), s in 1usize..8) {
        let d = dilate(&a, s).unwrap();
        prop_assert_eq!(extract(&d, 0, s).unwrap(), a);
        for r in 1..s {
            prop_assert!(extract(&d, r, s).unwrap().is_zero());
        }
    }

    #[test]
    fn extraction_commutes_with_dilation(a in exact(ORDER), k in 1usize..5, s in 1usize..6, r in 0usize..6) {
        let r = r % s;
        let direct = extract(&a, r, s).unwrap();
        let via = extract(&dilate(&a, k).unwrap(), r * k, s * k).unwrap();
        let n = direct.order().min(via.order());
        prop_assert_eq!(direct.truncate(n), via.truncate(n));
    }

    #[test]
    fn reduction_commutes_with_dissection(a in exact(ORDER), m in 2u64..40, s in 1usize..6, k in 1usize..4) {
        let r = ORDER % s;
        prop_assert_eq!(reduce_mod(&extract(&a, r, s).unwrap(), m).unwrap(), extract(&reduce_mod(&a, m).unwrap(), r, s).unwrap());
        prop_assert_eq!(reduce_mod(&dilate(&a, k).unwrap(), m).unwrap(), dilate(&reduce_mod(&a, m).unwrap(), k).unwrap());
    }

    #[test]
    fn dissection_reconstructs(a in exact(ORDER), s in 1usize..9) {
        let mut acc = Series::zero(CoeffRing::EXACT, ORDER);
        for r in 0..s {
            let piece = dilate(&extract(&a, r, s).unwrap(), s).unwrap().truncate(ORDER);
            let padded = if piece.order() < ORDER {
                let mut c = piece.coeffs();
                c.resize(ORDER + 1, 0.into());
                Series::new(CoeffRing::EXACT, c).unwrap()
            } else {
                piece
            };
            acc = add(&acc, &shift(&padded, r)).unwrap();
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn reduction_commutes(a in exact(ORDER), b in unit_exact(ORDER), m in 2u64..60) {
        let ra = reduce_mod(&a, m).unwrap();
        let rb = reduce_mod(&b, m).unwrap();
        prop_assert_eq!(reduce_mod(&mul(&a, &b).unwrap(), m).unwrap(), mul(&ra, &rb).unwrap());
        prop_assert_eq!(reduce_mod(&add(&a, &b).unwrap(), m).unwrap(), add(&ra, &rb).unwrap());
        prop_assert_eq!(reduce_mod(&div(&a, &b).unwrap(), m).unwrap(), div(&ra, &rb).unwrap());
        prop_assert_eq!(reduce_mod(&pow(&b, -3).unwrap(), m).unwrap(), pow(&rb, -3).unwrap());
    }

    #[test]
    fn sparse_stride_path_matches_dense(c in prop::collection::vec(-3i64..3, 9), g in 2usize..6) {
        let order = 8 * g;
        let base = Series::from_i64s(CoeffRing::EXACT, &c).unwrap();
        let spread = dilate(&base, g).unwrap();
        prop_assert_eq!(spread.order(), order);
        let other = Series::new(CoeffRing::EXACT, { let mut v = vec![0.into(); order + 1]; v[0] = 1.into(); v[1] = 1.into(); v }).unwrap();
        let direct = mul(&mul(&spread, &spread).unwrap(), &other).unwrap();
        let squared = dilate(&mul(&base, &base).unwrap(), g).unwrap();
        prop_assert_eq!(direct, mul(&squared, &other).unwrap());
    }
}
