//! Property tests tying the index routes together.

mod common;

use common::{k, tuple, z};
use fredholm_toeplitz::algebraic::{common_zeros, AlgebraicConfig};
use fredholm_toeplitz::cert::{boundary_lower_bound, CertConfig, CertVerdict};
use fredholm_toeplitz::koszul::range_sum_check;
use fredholm_toeplitz::oracle::{perturbed_count, winding_number, OracleConfig};
use fredholm_toeplitz::poly::{ExactComplex, ExactPoly, SymbolTuple};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rationals whose moduli and roots stay away from the unit circle.
const VALUES: [(i64, i64); 8] = [(1, 4), (-1, 3), (1, 2), (-1, 8), (2, 1), (-3, 1), (5, 2), (0, 1)];

fn q(i: usize) -> ExactComplex {
    let (a, b) = VALUES[i];
    ExactComplex::from_ratio(a, b)
}

/// `(z1^a − α + s z2, z2^b − β)`: finitely many common zeros, whose
/// location depends on all five parameters.
fn pair_strategy() -> impl Strategy<Value = SymbolTuple> {
    (1u32..=2, 1u32..=2, 0..VALUES.len(), 0..VALUES.len(), 0..VALUES.len()).prop_map(|(a, b, al, be, s)| {
        let f = z(2, 0).pow(a).sub(&ExactPoly::constant(2, q(al))).add(&z(2, 1).scale(&q(s)));
        let g = z(2, 1).pow(b).sub(&ExactPoly::constant(2, q(be)));
        tuple(vec![f, g])
    })
}

/// Interior zero count, or `None` when a zero sits too close to the torus.
fn count(t: &SymbolTuple) -> Option<usize> {
    let zs = common_zeros(t, &AlgebraicConfig::default()).ok()?;
    let clear = zs.zeros.iter().all(|z| {
        let m = z.point.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (m - 1.0).abs() > 0.02
    });
    (!zs.degenerate && clear).then_some(zs.total_inside)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_preserves_the_count(t in pair_strategy(), c1 in 1..VALUES.len() - 1, c2 in 1..VALUES.len() - 1) {
        let base = count(&t);
        prop_assume!(base.is_some());
        let scaled = tuple(vec![t.symbols()[0].scale(&q(c1)), t.symbols()[1].scale(&q(c2))]);
        prop_assert_eq!(count(&scaled), base);
    }

    #[test]
    fn conjugation_preserves_the_count(t in pair_strategy(), i in 0..VALUES.len()) {
        // a complex shift keeps the pair non-real
        let shift = ExactPoly::constant(2, ExactComplex::new(q(i).re, q(i).re));
        let t = tuple(vec![t.symbols()[0].add(&shift.scale(&ExactComplex::from_ratio(1, 16))), t.symbols()[1].clone()]);
        let base = count(&t);
        prop_assume!(base.is_some());
        let conj = tuple(t.symbols().iter().map(ExactPoly::conj_coeffs).collect());
        prop_assert_eq!(count(&conj), base);
    }

    #[test]
    fn invertible_multiplier_preserves_the_count(t in pair_strategy(), i in 4..7usize) {
        let base = count(&t);
        prop_assume!(base.is_some());
        // z1 − c with |c| ≥ 2 has no zero on the closed bidisc
        let u = z(2, 0).sub(&ExactPoly::constant(2, q(i)));
        let multiplied = tuple(vec![t.symbols()[0].mul(&u), t.symbols()[1].clone()]);
        prop_assert_eq!(count(&multiplied), base);
    }

    #[test]
    fn oracle_matches_multiplicity_count(t in pair_strategy(), seed in 0u64..1000) {
        let base = count(&t);
        prop_assume!(base.is_some());
        let cfg = OracleConfig { seed, ..Default::default() };
        prop_assert_eq!(perturbed_count(&t, &cfg).ok(), base);
    }

    #[test]
    fn winding_is_additive(p in prop::collection::vec(0..VALUES.len() - 1, 1..4), r in prop::collection::vec(0..VALUES.len() - 1, 1..4)) {
        let poly = |roots: &[usize]| {
            roots.iter().fold(ExactPoly::one(1), |acc, &i| acc.mul(&z(1, 0).sub(&ExactPoly::constant(1, q(i)))))
        };
        let inside = |roots: &[usize]| roots.iter().filter(|&&i| q(i).to_complex().norm() < 1.0).count() as i64;
        let cfg = OracleConfig::default();
        let (a, b) = (poly(&p), poly(&r));
        let wa = winding_number(&a, 1.0, &cfg).unwrap();
        let wb = winding_number(&b, 1.0, &cfg).unwrap();
        prop_assert_eq!(wa, inside(&p));
        prop_assert_eq!(winding_number(&a.mul(&b), 1.0, &cfg).unwrap(), wa + wb);
    }

    #[test]
    fn count_is_stable_under_small_homotopy(t in pair_strategy(), eps in 1i64..8) {
        let base = count(&t);
        prop_assume!(base.is_some());
        let moved = tuple(vec![t.symbols()[0].add(&k(2, eps, 1000)), t.symbols()[1].sub(&k(2, eps, 2000))]);
        let m = count(&moved);
        prop_assume!(m.is_some());
        prop_assert_eq!(m, base);
    }

    #[test]
    fn certified_bounds_hold_on_samples(t in pair_strategy(), ri in 0..3usize, seed in 0u64..1000) {
        let r = [0.5, 0.7, 0.9][ri];
        let cert = boundary_lower_bound(&t, r, &CertConfig::default()).unwrap();
        prop_assume!(cert.verdict == CertVerdict::Certified);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..2000 {
            let face = rng.gen_range(0..2);
            let p: Vec<Complex64> = (0..2)
                .map(|i| {
                    let rho: f64 = if i == face { rng.gen_range(r..=1.0) } else { rng.gen_range(0.0..=1.0) };
                    Complex64::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect();
            let v: f64 = t.symbols().iter().map(|s| s.eval(&p).unwrap().norm_sqr()).sum();
            prop_assert!(v >= cert.c, "{} < {} at {:?}", v, cert.c, p);
        }
    }

    #[test]
    fn range_sum_identity(n in 4usize..=8, ranks in prop::collection::vec(0usize..=8, 1..4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand = |r: usize, c: usize| {
            DMatrix::from_fn(r, c, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        };
        let mats: Vec<DMatrix<Complex64>> = ranks
            .iter()
            .map(|&rk| {
                let rk = rk.min(n);
                rand(n, rk) * rand(rk, n)
            })
            .collect();
        prop_assert!(range_sum_check(&mats, 1e-8).unwrap());
    }
}
