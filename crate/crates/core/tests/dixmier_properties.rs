mod common;

use common::{random_poly, triangular_with_local_slice, triangular_with_slice};
use lnd::derivation::DEFAULT_NILPOTENCY_CAP as CAP;
use lnd::dixmier::{dixmier_map, slice_kernel_generators, slice_taylor_identity, LocalizedElement};
use lnd::Polynomial;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dixmier_map_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, r) = triangular_with_local_slice(&mut rng);
        let ctx = d.context().clone();
        let all: Vec<usize> = (0..ctx.len()).collect();
        let f = random_poly(&mut rng, &ctx, &all, 3, 2);
        let g = random_poly(&mut rng, &ctx, &all, 3, 2);
        let pf = dixmier_map(&d, &r, &f, CAP).unwrap();
        let pg = dixmier_map(&d, &r, &g, CAP).unwrap();
        prop_assert_eq!(dixmier_map(&d, &r, &(&f * &g), CAP).unwrap(), pf.mul(&pg).unwrap());
        prop_assert_eq!(dixmier_map(&d, &r, &(&f + &g), CAP).unwrap(), pf.add(&pg).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn image_is_annihilated(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, r) = triangular_with_local_slice(&mut rng);
        let ctx = d.context().clone();
        let all: Vec<usize> = (0..ctx.len()).collect();
        let f = random_poly(&mut rng, &ctx, &all, 4, 3);
        let pi = dixmier_map(&d, &r, &f, CAP).unwrap();
        prop_assert!(pi.derive(&d).unwrap().is_zero());
        prop_assert!(pi.exponent() <= d.orbit(&f, CAP).unwrap().unwrap().len() as u32);
    }

    #[test]
    fn kernel_elements_are_fixed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, r) = triangular_with_local_slice(&mut rng);
        let ctx = d.context().clone();
        // X and t span a kernel subring
        let k = random_poly(&mut rng, &ctx, &[0, 1], 4, 3);
        let pi = dixmier_map(&d, &r, &k, CAP).unwrap();
        prop_assert_eq!(pi, LocalizedElement::from_polynomial(k, d.apply(&r).unwrap()).unwrap());
    }

    #[test]
    fn slice_reconstruction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, s) = triangular_with_slice(&mut rng);
        let ctx = d.context().clone();
        for g in slice_kernel_generators(&d, &s, CAP).unwrap() {
            prop_assert!(d.apply(&g).unwrap().is_zero());
        }
        let all: Vec<usize> = (0..ctx.len()).collect();
        let f = random_poly(&mut rng, &ctx, &all, 3, 3);
        prop_assert!(slice_taylor_identity(&d, &s, &f, CAP).unwrap());
        prop_assert!(dixmier_map(&d, &s, &s, CAP).unwrap().is_zero());
        for v in ctx.ring_names() {
            prop_assert!(slice_taylor_identity(&d, &s, &Polynomial::var(&ctx, v).unwrap(), CAP).unwrap());
        }
    }
}
