use proptest::prelude::*;

use skewinfo::matcore::{anticommutator, commutator, frobenius_norm, hs_inner, psd_sqrt};
use skewinfo::quantum::{apply_channel, density_from_bloch, mix_kraus};
use skewinfo::sampling::{
    complex_gaussian, random_bloch_with, random_channel_with, random_density_with,
    random_unitary_with, trial_rng,
};
use skewinfo::uncertainty::{
    dual_info_channel, lb_product, lb_sum, quantum_uncertainty, report, skew_info_channel,
    variance_channel,
};
use skewinfo::{BlochVector, ComplexMatrix};

fn random_hermitian(seed: u64, d: usize) -> ComplexMatrix {
    let g = complex_gaussian(&mut trial_rng(seed, 0), d, d);
    g.hermitian_part().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sqrt_of_square_reconstructs(seed in any::<u64>(), d in 1usize..=8) {
        let h = random_hermitian(seed, d);
        let hh = h.matmul(&h).unwrap();
        let root = psd_sqrt(&hh).unwrap();
        let err = root.matmul(&root).unwrap().sub(&hh).unwrap().frobenius_norm();
        prop_assert!(err <= 1e-9 * hh.frobenius_norm().max(1.0));
        prop_assert!(root.hermitian_residual() <= 1e-12 * root.frobenius_norm().max(1.0));
    }

    #[test]
    fn hs_cauchy_schwarz(seed in any::<u64>(), d in 1usize..=6) {
        let rng = &mut trial_rng(seed, 1);
        let a = complex_gaussian(rng, d, d);
        let b = complex_gaussian(rng, d, d);
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
        let lhs = ab.norm_sqr();
        let rhs = hs_inner(&a, &a).unwrap().re * hs_inner(&b, &b).unwrap().re;
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn frobenius_is_unitarily_invariant(seed in any::<u64>(), d in 1usize..=6) {
        let rng = &mut trial_rng(seed, 2);
        let a = complex_gaussian(rng, d, d);
        let u = random_unitary_with(rng, d).unwrap();
        let v = random_unitary_with(rng, d).unwrap();
        let uav = u.matmul(&a).unwrap().matmul(&v).unwrap();
        prop_assert!((frobenius_norm(&uav) - frobenius_norm(&a)).abs() <= 1e-10 * frobenius_norm(&a).max(1.0));
    }

    #[test]
    fn commutator_plus_anticommutator_is_twice_product(seed in any::<u64>(), d in 1usize..=5) {
        let rng = &mut trial_rng(seed, 3);
        let a = complex_gaussian(rng, d, d);
        let b = complex_gaussian(rng, d, d);
        let lhs = commutator(&a, &b).unwrap().add(&anticommutator(&a, &b).unwrap()).unwrap();
        let rhs = a.matmul(&b).unwrap().scale_real(2.0);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn remixed_kraus_lists_act_identically(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=4, extra in 0usize..=2) {
        let rng = &mut trial_rng(seed, 4);
        let ch = random_channel_with(rng, d, n).unwrap();
        let u = random_unitary_with(rng, n + extra).unwrap();
        let mixed = mix_kraus(&ch, &u).unwrap();
        let rho = random_density_with(rng, d, d).unwrap();
        let a = apply_channel(&ch, &rho).unwrap();
        let b = apply_channel(&mixed, &rho).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-10);
    }

    #[test]
    fn bloch_purity(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let r = BlochVector::new(x, y, z);
        prop_assume!(r.norm() <= 1.0);
        let rho = density_from_bloch(r).unwrap();
        prop_assert!((rho.purity() - (1.0 + r.norm().powi(2)) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn channel_output_is_a_state(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=4, rank in 1usize..=4) {
        let rng = &mut trial_rng(seed, 5);
        let rank = rank.min(d);
        let rho = random_density_with(rng, d, rank).unwrap();
        let ch = random_channel_with(rng, d, n).unwrap();
        let out = apply_channel(&ch, &rho).unwrap();
        prop_assert!((out.matrix().trace().unwrap().re - 1.0).abs() < 1e-9);
        prop_assert!(out.purity() <= 1.0 + 1e-9);
        prop_assert!(out.purity() >= 1.0 / d as f64 - 1e-9);
    }

    #[test]
    fn report_invariants_and_kraus_invariance(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=4) {
        let rng = &mut trial_rng(seed, 6);
        let rho = random_density_with(rng, d, d).unwrap();
        let ch = random_channel_with(rng, d, n).unwrap();
        let r = report(&rho, &ch).unwrap();
        prop_assert!(r.all_invariants_hold());
        let mixed = mix_kraus(&ch, &random_unitary_with(rng, n).unwrap()).unwrap();
        prop_assert!((skew_info_channel(&rho, &mixed).unwrap() - r.skew_info).abs() < 1e-10);
        prop_assert!((dual_info_channel(&rho, &mixed).unwrap() - r.dual_info).abs() < 1e-10);
        prop_assert!((variance_channel(&rho, &mixed).unwrap() - r.variance).abs() < 1e-10);
        prop_assert!((quantum_uncertainty(&rho, &mixed).unwrap() - r.quantum).abs() < 1e-10);
    }

    #[test]
    fn product_and_sum_relations(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=4, m in 1usize..=4) {
        let rng = &mut trial_rng(seed, 7);
        let rho = random_density_with(rng, d, d).unwrap();
        let psi = random_channel_with(rng, d, n).unwrap();
        let phi = random_channel_with(rng, d, m).unwrap();
        prop_assert!(lb_product(&rho, &psi, &phi).unwrap().satisfied);
        prop_assert!(lb_sum(&rho, &psi, &phi).unwrap().satisfied);
    }

    #[test]
    fn qubit_bloch_round_trip(seed in any::<u64>()) {
        let r = random_bloch_with(&mut trial_rng(seed, 8));
        let back = density_from_bloch(r).unwrap().bloch_vector().unwrap();
        prop_assert!((back.x - r.x).abs() < 1e-14);
        prop_assert!((back.y - r.y).abs() < 1e-14);
        prop_assert!((back.z - r.z).abs() < 1e-14);
    }
}
