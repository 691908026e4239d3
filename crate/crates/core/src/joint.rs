//! Joint relaying: every user transmits at once and the relay amplifies the
//! superposition.
//!
//! With a single receive antenna the optimal relay matrix pours all relay
//! power into the top eigenmode of the received covariance `R`, and the
//! optimal transmit covariances are rank-one beamformers aligned with the top
//! eigenvector of the power-weighted Gram sum `R_tilde`. The resulting sum
//! rate has the closed form
//!
//! ```text
//! log2(1 + ||h||^2 Pr) - log2(1 + ||h||^2 Pr / (1 + lambda_max(R_tilde)))
//! ```

use num_complex::Complex64;

use crate::channel::{ChannelSet, PowerBudget};
use crate::error::Error;
use crate::matrix::{self, ComplexMatrix};
use crate::Result;

/// Relative tolerance for trace and power feasibility checks.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Transmit covariance matrices, one per user.
#[derive(Debug, Clone)]
pub struct CovarianceSet {
    matrices: Vec<ComplexMatrix>,
}

impl CovarianceSet {
    /// Accepts square per-user matrices; PSD-ness is the producer's business
    /// (both the optimal construction and the oracle samplers build Grams).
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        for q in &matrices {
            if !q.is_square() {
                return Err(Error::ShapeMismatch {
                    expected: (q.rows(), q.rows()),
                    got: (q.rows(), q.cols()),
                });
            }
        }
        Ok(Self { matrices })
    }

    /// All-zero covariances for the given per-user antenna counts.
    pub fn zero(m_users: &[usize]) -> Self {
        Self {
            matrices: m_users
                .iter()
                .map(|&m| ComplexMatrix::zeros(m, m))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn user(&self, k: usize) -> &ComplexMatrix {
        &self.matrices[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.matrices.iter()
    }

    /// Errors if any trace exceeds its budget beyond [`FEASIBILITY_TOL`].
    pub fn check_feasible(&self, powers: &PowerBudget) -> Result<()> {
        for (k, q) in self.matrices.iter().enumerate() {
            let trace = q.trace().re;
            let budget = powers.user(k);
            if trace > budget + FEASIBILITY_TOL * budget.max(1.0) {
                return Err(Error::InfeasibleCovariance {
                    user: k,
                    trace,
                    budget,
                });
            }
        }
        Ok(())
    }
}

/// Everything the joint scheme decides for one instance.
#[derive(Debug, Clone)]
pub struct JointSolution {
    /// Optimal relay amplification matrix.
    pub relay_matrix: ComplexMatrix,
    /// Optimal rank-one transmit covariances.
    pub covariances: CovarianceSet,
    /// Top eigenvalue of the power-weighted Gram sum.
    pub lambda_max_rtilde: f64,
    /// Its unit eigenvector, the common beamforming direction.
    pub top_direction: Vec<Complex64>,
    /// Sum rate in bits per channel use.
    pub sum_rate: f64,
}

/// Received covariance `R = sum_k H_k Q_k H_k^H`, Hermitian PSD.
pub fn build_r(c: &ChannelSet, q: &CovarianceSet) -> Result<ComplexMatrix> {
    if q.len() != c.users() {
        return Err(Error::ShapeMismatch {
            expected: (c.users(), 1),
            got: (q.len(), 1),
        });
    }
    let mr = c.relay_antennas();
    let mut r = ComplexMatrix::zeros(mr, mr);
    for k in 0..c.users() {
        let h = c.user_channel(k);
        if q.user(k).rows() != h.cols() {
            return Err(Error::ShapeMismatch {
                expected: (h.cols(), h.cols()),
                got: (q.user(k).rows(), q.user(k).cols()),
            });
        }
        let term = h.mul(q.user(k))?.mul(&h.adjoint())?;
        r = r.add(&term)?;
    }
    // rounding can leave |1e-17| asymmetry; pin the Hermitian structure
    Ok(r.hermitian_part())
}

/// Power-weighted Gram sum `R_tilde = sum_k P_k H_k H_k^H`.
pub fn build_r_tilde(c: &ChannelSet, powers: &PowerBudget) -> Result<ComplexMatrix> {
    let mr = c.relay_antennas();
    let mut rt = ComplexMatrix::zeros(mr, mr);
    for k in 0..c.users() {
        rt = rt.add(&matrix::gram(c.user_channel(k))?.scale(powers.user(k)))?;
    }
    Ok(rt)
}

/// Rank-one covariances beamformed along `v` with full per-user power.
///
/// `Q_k = P_k (H_k^H v)(H_k^H v)^H / ||H_k^H v||^2`; a user whose channel is
/// orthogonal to `v` gets the zero matrix, since no feasible covariance can
/// contribute along `v` anyway.
pub fn covariances_for_direction(
    c: &ChannelSet,
    powers: &PowerBudget,
    v: &[Complex64],
) -> Result<CovarianceSet> {
    let mut matrices = Vec::with_capacity(c.users());
    for k in 0..c.users() {
        let w = c.user_channel(k).adjoint().matvec(v)?;
        let denom = matrix::vec_norm_sq(&w);
        if denom < 1e-100 {
            matrices.push(ComplexMatrix::zeros(w.len(), w.len()));
        } else {
            matrices.push(ComplexMatrix::outer(&w, &w)?.scale(powers.user(k) / denom));
        }
    }
    CovarianceSet::new(matrices)
}

/// Optimal covariances: beamform along the top eigenvector of `R_tilde`.
pub fn optimal_covariances(c: &ChannelSet, powers: &PowerBudget) -> Result<CovarianceSet> {
    let (_, v) = matrix::eig_max(&build_r_tilde(c, powers)?)?;
    covariances_for_direction(c, powers, &v)
}

/// Optimal relay matrix for a given received covariance `R`.
///
/// `F = sqrt(Pr / (lambda_1 + 1)) * (h / ||h||) * u_1^H` with `(lambda_1, u_1)`
/// the top eigenpair of `R`; the zero matrix when `h = 0`.
pub fn optimal_relay_matrix(
    c: &ChannelSet,
    r: &ComplexMatrix,
    relay_power: f64,
) -> Result<ComplexMatrix> {
    let mr = c.relay_antennas();
    if r.rows() != mr || r.cols() != mr {
        return Err(Error::ShapeMismatch {
            expected: (mr, mr),
            got: (r.rows(), r.cols()),
        });
    }
    let h = c.receiver_channel();
    let hnorm = matrix::vec_norm(h);
    if hnorm == 0.0 {
        return Ok(ComplexMatrix::zeros(mr, mr));
    }
    let (lambda1, u1) = matrix::eig_max(r)?;
    let gain = (relay_power / (lambda1 + 1.0)).sqrt() / hnorm;
    Ok(ComplexMatrix::outer(h, &u1)?.scale(gain))
}

/// Relay transmit power `tr(F (I + R) F^H)` for a given amplification matrix.
pub fn relay_output_power(f: &ComplexMatrix, r: &ComplexMatrix) -> Result<f64> {
    let i_plus_r = ComplexMatrix::identity(r.rows()).add(r)?;
    Ok(f.mul(&i_plus_r)?.mul(&f.adjoint())?.trace().re)
}

/// Generic sum-rate evaluation for an arbitrary feasible pair `(F, Q)`.
#[derive(Debug, Clone, Copy)]
pub struct RateEvaluation {
    /// Bits per channel use.
    pub rate: f64,
    /// Relay power actually spent, `tr(F (I + R) F^H)`.
    pub relay_power_used: f64,
    /// Whether the relay power stays within budget (relative tolerance).
    pub relay_power_ok: bool,
}

/// Evaluates the sum rate `log2(1 + h^H F R F^H h / (h^H F F^H h + 1))` and
/// audits both power constraints for the given `(F, Q)`.
pub fn evaluate_sum_rate(
    c: &ChannelSet,
    powers: &PowerBudget,
    f: &ComplexMatrix,
    q: &CovarianceSet,
) -> Result<RateEvaluation> {
    let mr = c.relay_antennas();
    if f.rows() != mr || f.cols() != mr {
        return Err(Error::ShapeMismatch {
            expected: (mr, mr),
            got: (f.rows(), f.cols()),
        });
    }
    q.check_feasible(powers)?;
    let r = build_r(c, q)?;
    let fh = f.adjoint().matvec(c.receiver_channel())?;
    // PSD quadratic form; clamp the rounding fuzz at zero
    let signal = r.quadratic_form(&fh)?.re.max(0.0);
    let noise = matrix::vec_norm_sq(&fh) + 1.0;
    let used = relay_output_power(f, &r)?;
    Ok(RateEvaluation {
        rate: (1.0 + signal / noise).log2(),
        relay_power_used: used,
        relay_power_ok: used <= powers.relay() + FEASIBILITY_TOL * powers.relay().max(1.0),
    })
}

/// Closed-form optimal sum rate as a function of the instance scalars.
pub fn closed_form_rate(sigma1_sq: f64, lambda_max: f64, relay_power: f64) -> f64 {
    let hp = sigma1_sq * relay_power;
    (1.0 + hp).log2() - (1.0 + hp / (1.0 + lambda_max)).log2()
}

/// Same rate in single-logarithm form; agrees with [`closed_form_rate`] to
/// rounding and exists so the two algebraic routes can cross-check.
pub fn single_log_rate(sigma1_sq: f64, lambda_max: f64, relay_power: f64) -> f64 {
    let num = sigma1_sq * lambda_max * relay_power;
    let den = sigma1_sq * relay_power + lambda_max + 1.0;
    (1.0 + num / den).log2()
}

/// Solves the joint relaying scheme for one instance.
pub fn joint_sum_rate(c: &ChannelSet, powers: &PowerBudget) -> Result<JointSolution> {
    let (lambda_max, v) = matrix::eig_max(&build_r_tilde(c, powers)?)?;
    let covariances = covariances_for_direction(c, powers, &v)?;
    let r = build_r(c, &covariances)?;
    let relay_matrix = optimal_relay_matrix(c, &r, powers.relay())?;
    let sigma1_sq = matrix::vec_norm_sq(c.receiver_channel());
    Ok(JointSolution {
        relay_matrix,
        covariances,
        lambda_max_rtilde: lambda_max,
        top_direction: v,
        sum_rate: closed_form_rate(sigma1_sq, lambda_max, powers.relay()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{derive_gains, sample_rayleigh};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn build_r_zero_and_diagonal() {
        let ch = sample_rayleigh(2, &[2, 3], 3, 1).unwrap();
        let r = build_r(&ch, &CovarianceSet::zero(ch.user_antennas())).unwrap();
        assert_eq!(r.fro_norm(), 0.0);

        let ident = ChannelSet::new(
            vec![ComplexMatrix::identity(2)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        let q = CovarianceSet::new(vec![ComplexMatrix::from_rows(&[
            vec![c64(0.4, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(1.6, 0.0)],
        ])
        .unwrap()])
        .unwrap();
        let r = build_r(&ident, &q).unwrap();
        assert!((r.get(0, 0).re - 0.4).abs() < 1e-15);
        assert!((r.get(1, 1).re - 1.6).abs() < 1e-15);
        assert!(r.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn build_r_matches_term_by_term_resummation() {
        let ch = sample_rayleigh(3, &[2, 4, 3], 4, 77).unwrap();
        let powers = PowerBudget::new(vec![1.5, 0.25, 3.0], 1.0).unwrap();
        let q = optimal_covariances(&ch, &powers).unwrap();
        let r = build_r(&ch, &q).unwrap();
        // independent re-summation, entry by entry without matrix helpers
        let mr = ch.relay_antennas();
        for i in 0..mr {
            for j in 0..mr {
                let mut z = c64(0.0, 0.0);
                for k in 0..ch.users() {
                    let h = ch.user_channel(k);
                    for a in 0..h.cols() {
                        for b in 0..h.cols() {
                            z += h.get(i, a) * q.user(k).get(a, b) * h.get(j, b).conj();
                        }
                    }
                }
                assert!((r.get(i, j) - z).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn r_tilde_scalar_and_gram_sum() {
        let ch = ChannelSet::new(
            vec![ComplexMatrix::new(1, 1, vec![c64(2.0, 0.0)]).unwrap()],
            vec![c64(1.0, 0.0)],
        )
        .unwrap();
        let powers = PowerBudget::new(vec![3.0], 1.0).unwrap();
        let rt = build_r_tilde(&ch, &powers).unwrap();
        assert!((rt.get(0, 0).re - 12.0).abs() < 1e-15);

        let ch2 = sample_rayleigh(2, &[3, 2], 3, 9).unwrap();
        let powers2 = PowerBudget::new(vec![0.5, 2.0], 1.0).unwrap();
        let rt2 = build_r_tilde(&ch2, &powers2).unwrap();
        let manual = matrix::gram(ch2.user_channel(0))
            .unwrap()
            .scale(0.5)
            .add(&matrix::gram(ch2.user_channel(1)).unwrap().scale(2.0))
            .unwrap();
        assert!(rt2.add(&manual.scale(-1.0)).unwrap().fro_norm() < 1e-12);
    }

    #[test]
    fn scalar_covariance_uses_full_power() {
        let ch = ChannelSet::new(
            vec![ComplexMatrix::new(1, 1, vec![c64(1.5, -0.5)]).unwrap()],
            vec![c64(0.7, 0.2)],
        )
        .unwrap();
        let powers = PowerBudget::new(vec![2.5], 1.0).unwrap();
        let q = optimal_covariances(&ch, &powers).unwrap();
        assert!((q.user(0).get(0, 0).re - 2.5).abs() < 1e-12);
        assert!(q.user(0).get(0, 0).im.abs() < 1e-14);
    }

    #[test]
    fn single_user_covariance_is_top_right_singular_beamformer() {
        let ch = sample_rayleigh(1, &[3], 4, 21).unwrap();
        let powers = PowerBudget::new(vec![2.0], 1.0).unwrap();
        let q = optimal_covariances(&ch, &powers).unwrap();
        // oracle: P * v1 v1^H with v1 the top eigenvector of H^H H
        let h = ch.user_channel(0);
        let hh = matrix::gram(&h.adjoint()).unwrap();
        let (_, v1) = matrix::eig_max(&hh).unwrap();
        let expect = ComplexMatrix::outer(&v1, &v1).unwrap().scale(2.0);
        let diff = q.user(0).add(&expect.scale(-1.0)).unwrap();
        assert!(diff.fro_norm() < 1e-10);
    }

    #[test]
    fn optimal_covariances_achieve_lambda_max() {
        for seed in [3_u64, 14, 159] {
            let ch = sample_rayleigh(3, &[2, 3, 2], 3, seed).unwrap();
            let powers = PowerBudget::new(vec![1.0, 2.0, 0.5], 4.0).unwrap();
            let (target, _) = matrix::eig_max(&build_r_tilde(&ch, &powers).unwrap()).unwrap();
            let q = optimal_covariances(&ch, &powers).unwrap();
            let (achieved, _) = matrix::eig_max(&build_r(&ch, &q).unwrap()).unwrap();
            assert!((achieved - target).abs() <= 1e-8 * target.abs().max(1.0));
            // traces hit the budgets exactly
            for (k, qk) in q.iter().enumerate() {
                assert!((qk.trace().re - powers.user(k)).abs() < 1e-12);
                assert!(matrix::is_psd(qk, 1e-9));
            }
        }
    }

    #[test]
    fn beamformed_covariances_beat_ten_thousand_random_pairs() {
        use rand_chacha::ChaCha8Rng;
        use rand_core::{RngCore, SeedableRng};

        let ch = sample_rayleigh(2, &[2, 2], 2, 314).unwrap();
        let powers = PowerBudget::new(vec![1.0, 2.0], 1.0).unwrap();
        let q_opt = optimal_covariances(&ch, &powers).unwrap();
        let (best, _) = matrix::eig_max(&build_r(&ch, &q_opt).unwrap()).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(2718);
        let mut gaussian = |m: usize| {
            let data: Vec<Complex64> = (0..m * m)
                .map(|_| {
                    // Box-Muller on raw uniforms; only full support matters here
                    let u1 = ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64;
                    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                    let r = (-2.0 * u1.ln()).sqrt();
                    let th = 2.0 * std::f64::consts::PI * u2;
                    c64(r * th.cos(), r * th.sin())
                })
                .collect();
            ComplexMatrix::new(m, m, data).unwrap()
        };
        for _ in 0..10_000 {
            let q = CovarianceSet::new(
                (0..2)
                    .map(|k| {
                        let g = matrix::gram(&gaussian(2)).unwrap();
                        g.scale(powers.user(k) / g.trace().re)
                    })
                    .collect(),
            )
            .unwrap();
            let (lam, _) = matrix::eig_max(&build_r(&ch, &q).unwrap()).unwrap();
            assert!(
                lam <= best + 1e-9,
                "random pair reached {lam}, optimum {best}"
            );
        }
    }

    #[test]
    fn relay_matrix_noise_only_input() {
        let ch = ChannelSet::new(
            vec![ComplexMatrix::zeros(2, 1)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        let r = ComplexMatrix::zeros(2, 2);
        let f = optimal_relay_matrix(&ch, &r, 4.0).unwrap();
        // F = 2 e1 e1^H
        assert!((f.get(0, 0).re - 2.0).abs() < 1e-14);
        assert!(f.get(0, 1).norm() < 1e-14);
        assert!(f.get(1, 0).norm() < 1e-14);
        assert!(f.get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn relay_matrix_scalar_case() {
        let ch = ChannelSet::new(
            vec![ComplexMatrix::new(1, 1, vec![c64(1.0, 0.0)]).unwrap()],
            vec![c64(1.0, 0.0)],
        )
        .unwrap();
        let r = ComplexMatrix::new(1, 1, vec![c64(3.0, 0.0)]).unwrap();
        let f = optimal_relay_matrix(&ch, &r, 8.0).unwrap();
        assert!((f.get(0, 0).re - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn relay_power_constraint_active_at_equality() {
        let ch = sample_rayleigh(2, &[2, 2], 3, 5).unwrap();
        let powers = PowerBudget::new(vec![1.0, 4.0], 2.5).unwrap();
        let q = optimal_covariances(&ch, &powers).unwrap();
        let r = build_r(&ch, &q).unwrap();
        let f = optimal_relay_matrix(&ch, &r, powers.relay()).unwrap();
        let used = relay_output_power(&f, &r).unwrap();
        assert!((used - powers.relay()).abs() <= 1e-9 * powers.relay());
    }

    #[test]
    fn evaluate_zero_relay_or_zero_covariance_gives_zero() {
        let ch = sample_rayleigh(2, &[2, 2], 2, 8).unwrap();
        let powers = PowerBudget::new(vec![1.0, 1.0], 3.0).unwrap();
        let q = optimal_covariances(&ch, &powers).unwrap();
        let f0 = ComplexMatrix::zeros(2, 2);
        assert_eq!(evaluate_sum_rate(&ch, &powers, &f0, &q).unwrap().rate, 0.0);

        let q0 = CovarianceSet::zero(ch.user_antennas());
        let r0 = build_r(&ch, &q0).unwrap();
        let f = optimal_relay_matrix(&ch, &r0, powers.relay()).unwrap();
        assert_eq!(evaluate_sum_rate(&ch, &powers, &f, &q0).unwrap().rate, 0.0);
    }

    #[test]
    fn infeasible_covariance_is_rejected() {
        let ch = sample_rayleigh(1, &[2], 2, 3).unwrap();
        let powers = PowerBudget::new(vec![1.0], 1.0).unwrap();
        let q = CovarianceSet::new(vec![ComplexMatrix::identity(2)]).unwrap(); // trace 2 > 1
        let f = ComplexMatrix::zeros(2, 2);
        assert!(matches!(
            evaluate_sum_rate(&ch, &powers, &f, &q),
            Err(Error::InfeasibleCovariance { user: 0, .. })
        ));
    }

    #[test]
    fn closed_form_matches_generic_evaluation() {
        for seed in [100_u64, 200, 300] {
            let ch = sample_rayleigh(3, &[2, 2, 3], 3, seed).unwrap();
            let powers = PowerBudget::new(vec![1.0, 0.5, 2.0], 5.0).unwrap();
            let sol = joint_sum_rate(&ch, &powers).unwrap();
            let eval =
                evaluate_sum_rate(&ch, &powers, &sol.relay_matrix, &sol.covariances).unwrap();
            assert!((eval.rate - sol.sum_rate).abs() < 1e-9);
            assert!(eval.relay_power_ok);
        }
    }

    #[test]
    fn hand_evaluated_scalar_instance() {
        // K=1, all-scalar, h=1, H=1, P=1, Pr=1: rate = 1 - log2(1.5)
        let ch = ChannelSet::new(
            vec![ComplexMatrix::new(1, 1, vec![c64(1.0, 0.0)]).unwrap()],
            vec![c64(1.0, 0.0)],
        )
        .unwrap();
        let powers = PowerBudget::new(vec![1.0], 1.0).unwrap();
        let sol = joint_sum_rate(&ch, &powers).unwrap();
        assert!((sol.lambda_max_rtilde - 1.0).abs() < 1e-14);
        assert!((sol.sum_rate - 0.4150374992788438).abs() < 1e-12);
    }

    #[test]
    fn degenerate_budgets_give_zero_rate() {
        let ch = sample_rayleigh(2, &[2, 2], 2, 17).unwrap();
        let no_relay = PowerBudget::new(vec![1.0, 1.0], 0.0).unwrap();
        assert_eq!(joint_sum_rate(&ch, &no_relay).unwrap().sum_rate, 0.0);

        let no_tx = PowerBudget::new(vec![0.0, 0.0], 5.0).unwrap();
        let sol = joint_sum_rate(&ch, &no_tx).unwrap();
        assert!(sol.sum_rate.abs() < 1e-15);
        assert!((sol.lambda_max_rtilde).abs() < 1e-15);
    }

    #[test]
    fn zero_receiver_channel_gives_zero_rate_and_zero_relay_matrix() {
        let ch = ChannelSet::new(
            vec![ComplexMatrix::identity(2)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        let powers = PowerBudget::new(vec![1.0], 2.0).unwrap();
        let sol = joint_sum_rate(&ch, &powers).unwrap();
        assert_eq!(sol.sum_rate, 0.0);
        assert_eq!(sol.relay_matrix.fro_norm(), 0.0);
    }

    #[test]
    fn unit_modulus_phase_on_h_leaves_rate_unchanged() {
        let ch = sample_rayleigh(2, &[2, 2], 3, 55).unwrap();
        let powers = PowerBudget::new(vec![1.0, 2.0], 3.0).unwrap();
        let base = joint_sum_rate(&ch, &powers).unwrap().sum_rate;
        let phase = Complex64::from_polar(1.0, 1.2345);
        let rotated = ChannelSet::new(
            (0..ch.users())
                .map(|k| ch.user_channel(k).clone())
                .collect(),
            ch.receiver_channel().iter().map(|z| z * phase).collect(),
        )
        .unwrap();
        let rot = joint_sum_rate(&rotated, &powers).unwrap().sum_rate;
        assert!((base - rot).abs() < 1e-12);
    }

    #[test]
    fn gains_feed_closed_form_consistently() {
        let ch = sample_rayleigh(2, &[2, 2], 2, 31).unwrap();
        let powers = PowerBudget::new(vec![2.0, 2.0], 4.0).unwrap();
        let gains = derive_gains(&ch).unwrap();
        let sol = joint_sum_rate(&ch, &powers).unwrap();
        let direct = closed_form_rate(gains.sigma1_sq, sol.lambda_max_rtilde, powers.relay());
        assert_eq!(direct, sol.sum_rate);
        // the two algebraic forms agree
        let alt = single_log_rate(gains.sigma1_sq, sol.lambda_max_rtilde, powers.relay());
        assert!((direct - alt).abs() < 1e-12);
    }
}
