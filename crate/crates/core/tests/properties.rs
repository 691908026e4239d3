//! Property tests for the invariants the closed forms rest on: spectral
//! identities of the matrix kernel, unitary invariance of the derived gains,
//! monotonicity and optimality of the joint scheme, and concavity plus
//! stationarity of the slot allocation.

use marc_core::channel::{derive_gains, sample_rayleigh, ChannelSet, PowerBudget};
use marc_core::joint::{self, CovarianceSet};
use marc_core::matrix::{self, ComplexMatrix};
use marc_core::tdma::{self, TimeAllocation};
use marc_core::Complex64;
use proptest::prelude::*;

fn complex_entries(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im)),
        n,
    )
}

fn hermitian_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=6).prop_flat_map(|n| {
        complex_entries(n * n)
            .prop_map(move |data| ComplexMatrix::new(n, n, data).unwrap().hermitian_part())
    })
}

fn rect_matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=max, 1usize..=max).prop_flat_map(|(r, c)| {
        complex_entries(r * c).prop_map(move |data| ComplexMatrix::new(r, c, data).unwrap())
    })
}

/// Random PSD matrix with trace scaled to `budget`, through public API only.
fn trace_tight_psd(dim: usize, budget: f64, entries: Vec<Complex64>) -> ComplexMatrix {
    let g = matrix::gram(&ComplexMatrix::new(dim, dim, entries).unwrap()).unwrap();
    let tr = g.trace().re;
    if tr <= 0.0 {
        ComplexMatrix::zeros(dim, dim)
    } else {
        g.scale(budget / tr)
    }
}

proptest! {
    #[test]
    fn trace_equals_sum_of_eigenvalues(a in hermitian_matrix()) {
        let eig = matrix::eig_hermitian(&a).unwrap();
        let trace = a.trace().re;
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-9 * trace.abs().max(1.0));
    }

    #[test]
    fn rayleigh_quotient_never_beats_eig_max(
        a in hermitian_matrix(),
        raw in complex_entries(6),
    ) {
        let x: Vec<Complex64> = raw.into_iter().take(a.rows()).collect();
        prop_assume!(matrix::vec_norm_sq(&x) > 1e-12);
        let (lam, _) = matrix::eig_max(&a).unwrap();
        let q = matrix::rayleigh(&a, &x).unwrap();
        prop_assert!(q <= lam + 1e-9 * lam.abs().max(1.0));
    }

    #[test]
    fn gram_matrices_are_psd(a in rect_matrix(5)) {
        prop_assert!(matrix::is_psd(&matrix::gram(&a).unwrap(), 1e-9));
    }

    #[test]
    fn eigendecomposition_reconstructs_the_input(a in hermitian_matrix()) {
        let n = a.rows();
        let eig = matrix::eig_hermitian(&a).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(n, n);
        for (lam, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            rebuilt = rebuilt
                .add(&ComplexMatrix::outer(v, v).unwrap().scale(*lam))
                .unwrap();
        }
        let err = rebuilt.add(&a.scale(-1.0)).unwrap().fro_norm();
        prop_assert!(err <= 1e-9 * a.fro_norm().max(1.0));
    }

    #[test]
    fn gains_invariant_under_right_unitary(seed in any::<u64>(), mixer in hermitian_matrix()) {
        // eigenvectors of any Hermitian matrix form a unitary; verify, then mix
        let m = mixer.rows();
        let eig = matrix::eig_hermitian(&mixer).unwrap();
        let mut u = ComplexMatrix::zeros(m, m);
        for (j, v) in eig.eigenvectors.iter().enumerate() {
            for (i, &z) in v.iter().enumerate() {
                u.set(i, j, z);
            }
        }
        let check = u.adjoint().mul(&u).unwrap()
            .add(&ComplexMatrix::identity(m).scale(-1.0)).unwrap();
        prop_assume!(check.fro_norm() < 1e-10);

        let c = sample_rayleigh(1, &[m], 3, seed).unwrap();
        let base = derive_gains(&c).unwrap();
        let rotated = ChannelSet::new(
            vec![c.user_channel(0).mul(&u).unwrap()],
            c.receiver_channel().to_vec(),
        )
        .unwrap();
        let after = derive_gains(&rotated).unwrap();
        prop_assert!((base.alpha1[0] - after.alpha1[0]).abs() <= 1e-9 * base.alpha1[0].max(1.0));
    }

    #[test]
    fn joint_rate_monotone_in_powers(
        seed in any::<u64>(),
        users in 1usize..=3,
        bump in 0.01..2.0f64,
        which in 0usize..=3,
    ) {
        let c = sample_rayleigh(users, &vec![2; users], 2, seed).unwrap();
        let powers = PowerBudget::uniform(users, 1.5, 2.0).unwrap();
        let base = joint::joint_sum_rate(&c, &powers).unwrap().sum_rate;

        let bumped = if which >= users {
            powers.with_relay(powers.relay() + bump)
        } else {
            let mut p = powers.users().to_vec();
            p[which] += bump;
            PowerBudget::new(p, powers.relay()).unwrap()
        };
        let after = joint::joint_sum_rate(&c, &bumped).unwrap().sum_rate;
        prop_assert!(after >= base - 1e-12, "rate fell from {base} to {after}");
    }

    #[test]
    fn random_covariances_never_beat_lambda_max(
        seed in any::<u64>(),
        users in 1usize..=3,
        raw in prop::collection::vec(complex_entries(9), 3),
    ) {
        let c = sample_rayleigh(users, &vec![3; users], 3, seed).unwrap();
        let powers = PowerBudget::uniform(users, 2.0, 1.0).unwrap();
        let q = CovarianceSet::new(
            (0..users)
                .map(|k| trace_tight_psd(3, powers.user(k), raw[k].clone()))
                .collect(),
        )
        .unwrap();
        let (lam_r, _) = matrix::eig_max(&joint::build_r(&c, &q).unwrap()).unwrap();
        let (lam_t, _) = matrix::eig_max(&joint::build_r_tilde(&c, &powers).unwrap()).unwrap();
        prop_assert!(lam_r <= lam_t + 1e-9, "{lam_r} > {lam_t}");
    }

    #[test]
    fn beamformed_covariances_achieve_lambda_max(seed in any::<u64>(), users in 1usize..=4) {
        let c = sample_rayleigh(users, &vec![2; users], 3, seed).unwrap();
        let powers = PowerBudget::uniform(users, 1.0, 1.0).unwrap();
        let q = joint::optimal_covariances(&c, &powers).unwrap();
        let (achieved, _) = matrix::eig_max(&joint::build_r(&c, &q).unwrap()).unwrap();
        let (target, _) = matrix::eig_max(&joint::build_r_tilde(&c, &powers).unwrap()).unwrap();
        prop_assert!((achieved - target).abs() <= 1e-8 * target.max(1.0));
    }

    #[test]
    fn rate_expression_routes_agree(
        sigma in 0.0..50.0f64,
        lambda in 0.0..500.0f64,
        relay_power in 0.0..1000.0f64,
    ) {
        let a = joint::closed_form_rate(sigma, lambda, relay_power);
        let b = joint::single_log_rate(sigma, lambda, relay_power);
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn tdma_concave_along_simplex_segments(
        seed in any::<u64>(),
        users in 2usize..=4,
        wa in prop::collection::vec(0.01..1.0f64, 4),
        wb in prop::collection::vec(0.01..1.0f64, 4),
        theta in 0.05..0.95f64,
    ) {
        let c = sample_rayleigh(users, &vec![2; users], 2, seed).unwrap();
        let powers = PowerBudget::uniform(users, 2.0, 3.0).unwrap();
        let norm = |w: &[f64]| {
            let total: f64 = w[..users].iter().sum();
            w[..users].iter().map(|x| x / total).collect::<Vec<_>>()
        };
        let (a, b) = (norm(&wa), norm(&wb));
        let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| theta * x + (1.0 - theta) * y).collect();

        let rate = |t: Vec<f64>| {
            tdma::evaluate_tdma_rate(&c, &powers, &TimeAllocation::new(t).unwrap())
                .unwrap()
                .sum_rate
        };
        let chord = theta * rate(a) + (1.0 - theta) * rate(b);
        prop_assert!(rate(mid) >= chord - 1e-9);
    }

    #[test]
    fn tdma_optimum_matches_closed_form_and_is_stationary(seed in any::<u64>(), users in 2usize..=4) {
        let c = sample_rayleigh(users, &vec![2; users], 3, seed).unwrap();
        let powers = PowerBudget::uniform(users, 1.5, 2.5).unwrap();
        let gains = derive_gains(&c).unwrap();
        let sol = tdma::tdma_sum_rate(&c, &powers).unwrap();
        prop_assert!((sol.sum_rate - tdma::closed_form_rate(&gains, &powers)).abs() < 1e-9);

        // stationarity when the optimum is interior enough for the probe
        let t = tdma::optimal_time_slots(&c, &powers).unwrap();
        if t.slots().iter().all(|&tau| tau > 1e-3 && tau < 1.0 - 1e-3) {
            let res = marc_core::oracle::kkt_residual(&c, &powers, &t, 1e-6).unwrap();
            prop_assert!(res < 1e-5, "KKT residual {res}");
        }
    }

    #[test]
    fn tdma_dominates_joint_relaying(
        seed in any::<u64>(),
        users in 1usize..=4,
        relay_power in 0.1..100.0f64,
    ) {
        let c = sample_rayleigh(users, &vec![2; users], 2, seed).unwrap();
        let powers = PowerBudget::uniform(users, 2.0, relay_power).unwrap();
        let td = tdma::tdma_sum_rate(&c, &powers).unwrap().sum_rate;
        let jr = joint::joint_sum_rate(&c, &powers).unwrap().sum_rate;
        prop_assert!(td >= jr - 1e-9, "tdma {td} below joint {jr}");
    }

    #[test]
    fn channel_file_roundtrip(seed in any::<u64>(), users in 1usize..=3, mr in 1usize..=4) {
        let c = sample_rayleigh(users, &vec![2; users], mr, seed).unwrap();
        let text = marc_core::channel::channels_to_string(&c);
        let back = marc_core::channel::channels_from_str(&text).unwrap();
        prop_assert_eq!(c, back);
    }
}
