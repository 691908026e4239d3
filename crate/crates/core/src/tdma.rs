//! TDMA relaying: each user gets an exclusive slot of duration `tau_k`, boosts
//! its transmit power to `P_k / tau_k`, and the relay re-optimizes per slot.
//!
//! The per-slot problem is the single-user relay channel, whose closed form
//! depends only on `||h||^2` and the top Gram eigenvalue `alpha_k` of that
//! user's channel. Proportional slots `tau_k = alpha_k P_k / sum_j alpha_j P_j`
//! are optimal and collapse the sum rate to
//!
//! ```text
//! log2(1 + ||h||^2 Pr) - log2(1 + ||h||^2 Pr / (1 + sum_j alpha_j P_j))
//! ```

use crate::channel::{derive_gains, ChannelSet, DerivedGains, PowerBudget};
use crate::error::Error;
use crate::matrix::{self, ComplexMatrix};
use crate::Result;

/// Slot durations on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeAllocation {
    tau: Vec<f64>,
}

impl TimeAllocation {
    /// Accepts nonnegative durations summing to 1 within 1e-12.
    pub fn new(tau: Vec<f64>) -> Result<Self> {
        if tau.is_empty() {
            return Err(Error::InvalidAllocation("no slots".into()));
        }
        if tau.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidAllocation(
                "durations must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = tau.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidAllocation(format!(
                "durations sum to {total}, expected 1"
            )));
        }
        Ok(Self { tau })
    }

    /// Equal slots, 1/K each.
    pub fn uniform(users: usize) -> Self {
        Self {
            tau: vec![1.0 / users as f64; users],
        }
    }

    pub fn slots(&self) -> &[f64] {
        &self.tau
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

/// Slot allocation, per-user rates, and their sum.
#[derive(Debug, Clone)]
pub struct TdmaSolution {
    pub allocation: TimeAllocation,
    pub per_user_rate: Vec<f64>,
    pub sum_rate: f64,
}

/// Closed-form single-user relay rate.
pub fn single_user_rate(sigma1_sq: f64, alpha1: f64, power: f64, relay_power: f64) -> f64 {
    let hp = sigma1_sq * relay_power;
    (1.0 + hp).log2() - (1.0 + hp / (1.0 + alpha1 * power)).log2()
}

/// Rate of user `k` in a slot of duration `tau`, with the `P/tau` power boost.
/// A zero-length slot contributes exactly zero (the bracket grows only
/// logarithmically while the prefactor vanishes).
fn slot_rate(sigma1_sq: f64, alpha1: f64, power: f64, relay_power: f64, tau: f64) -> f64 {
    if tau == 0.0 {
        0.0
    } else {
        tau * single_user_rate(sigma1_sq, alpha1, power / tau, relay_power)
    }
}

/// Sum rate at an arbitrary duration vector, without the simplex-sum check.
///
/// This is the raw objective of the slot optimization; finite-difference
/// probes step off the simplex, so this deliberately skips validation.
pub fn raw_sum_rate(gains: &DerivedGains, powers: &PowerBudget, tau: &[f64]) -> f64 {
    gains
        .alpha1
        .iter()
        .zip(powers.users())
        .zip(tau)
        .map(|((&a, &p), &t)| slot_rate(gains.sigma1_sq, a, p, powers.relay(), t))
        .sum()
}

/// Per-user rates and sum rate at a validated allocation, from gains.
pub fn evaluate_with_gains(
    gains: &DerivedGains,
    powers: &PowerBudget,
    t: &TimeAllocation,
) -> Result<TdmaSolution> {
    if t.len() != gains.alpha1.len() {
        return Err(Error::InvalidAllocation(format!(
            "{} slots for {} users",
            t.len(),
            gains.alpha1.len()
        )));
    }
    let per_user_rate: Vec<f64> = gains
        .alpha1
        .iter()
        .zip(powers.users())
        .zip(t.slots())
        .map(|((&a, &p), &tau)| slot_rate(gains.sigma1_sq, a, p, powers.relay(), tau))
        .collect();
    let sum_rate = per_user_rate.iter().sum();
    Ok(TdmaSolution {
        allocation: t.clone(),
        per_user_rate,
        sum_rate,
    })
}

/// Per-user rates and sum rate at a validated allocation.
pub fn evaluate_tdma_rate(
    c: &ChannelSet,
    powers: &PowerBudget,
    t: &TimeAllocation,
) -> Result<TdmaSolution> {
    evaluate_with_gains(&derive_gains(c)?, powers, t)
}

/// Proportional slot durations from precomputed gains.
///
/// When every `alpha_k P_k` vanishes the split is 0/0; any allocation is then
/// optimal (all rates are zero) and the uniform one is returned.
pub fn optimal_slots_from_gains(gains: &DerivedGains, powers: &PowerBudget) -> TimeAllocation {
    let weights: Vec<f64> = gains
        .alpha1
        .iter()
        .zip(powers.users())
        .map(|(&a, &p)| a * p)
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return TimeAllocation::uniform(weights.len());
    }
    TimeAllocation {
        tau: weights.iter().map(|w| w / total).collect(),
    }
}

/// Optimal slot durations for one instance.
pub fn optimal_time_slots(c: &ChannelSet, powers: &PowerBudget) -> Result<TimeAllocation> {
    Ok(optimal_slots_from_gains(&derive_gains(c)?, powers))
}

/// Closed-form optimal TDMA sum rate from raw scalars.
pub fn closed_form_from_scalars(sigma1_sq: f64, weighted_alpha_sum: f64, relay_power: f64) -> f64 {
    let hp = sigma1_sq * relay_power;
    (1.0 + hp).log2() - (1.0 + hp / (1.0 + weighted_alpha_sum)).log2()
}

/// Closed-form optimal TDMA sum rate from the instance scalars.
pub fn closed_form_rate(gains: &DerivedGains, powers: &PowerBudget) -> f64 {
    closed_form_from_scalars(
        gains.sigma1_sq,
        gains.weighted_alpha_sum(powers),
        powers.relay(),
    )
}

/// Solves the TDMA scheme: optimal slots, then evaluation at those slots.
pub fn tdma_sum_rate(c: &ChannelSet, powers: &PowerBudget) -> Result<TdmaSolution> {
    let gains = derive_gains(c)?;
    let t = optimal_slots_from_gains(&gains, powers);
    evaluate_with_gains(&gains, powers, &t)
}

/// Materializes the transmit covariance and relay matrix used in user `k`'s
/// slot: the rank-one beamformer `q_1 = P_k / tau_k` on the top right-singular
/// vector of the channel, and `F = sqrt(f_1) (h/||h||) u_1^H` with
/// `f_1 = Pr / (1 + alpha_k q_1)`. Zero matrices for a zero-length slot.
pub fn expand_slot_matrices(
    c: &ChannelSet,
    powers: &PowerBudget,
    t: &TimeAllocation,
    k: usize,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let h_k = c.user_channel(k);
    let (m_k, mr) = (h_k.cols(), c.relay_antennas());
    let tau = t.slots()[k];
    if tau == 0.0 {
        return Ok((ComplexMatrix::zeros(m_k, m_k), ComplexMatrix::zeros(mr, mr)));
    }
    let boosted = powers.user(k) / tau;
    // right-singular direction: top eigenvector of H^H H
    let (alpha, v1) = matrix::eig_max(&matrix::gram(&h_k.adjoint())?)?;
    let q = ComplexMatrix::outer(&v1, &v1)?.scale(boosted);
    // left-singular direction: top eigenvector of H H^H
    let (_, u1) = matrix::eig_max(&matrix::gram(h_k)?)?;
    let h = c.receiver_channel();
    let hnorm = matrix::vec_norm(h);
    if hnorm == 0.0 {
        return Ok((q, ComplexMatrix::zeros(mr, mr)));
    }
    let f1 = powers.relay() / (1.0 + alpha * boosted);
    let f = ComplexMatrix::outer(h, &u1)?.scale(f1.sqrt() / hnorm);
    Ok((q, f))
}
