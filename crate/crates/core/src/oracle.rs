//! Independent brute-force checks of every optimality claim the closed forms
//! rest on.
//!
//! None of these consult the quantities they audit: the joint-relaying search
//! samples feasible covariances and relay matrices and evaluates the generic
//! rate expression, the slot search enumerates a simplex grid, the lemma
//! checks generate random PSD instances, and the stationarity check probes the
//! objective with finite differences. Zero violations across all oracles at
//! default trial counts is the pass condition.
//!
//! Every oracle derives per-trial sub-seeds from `(master seed, trial index)`,
//! so reports are reproducible and trials could fan out in parallel without
//! changing results.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::channel::{
    self, channels_to_string, derive_gains, derive_seed, sample_rayleigh, ChannelSet, PowerBudget,
};
use crate::error::Error;
use crate::joint::{self, CovarianceSet};
use crate::matrix::{self, ComplexMatrix};
use crate::tdma::{self, TimeAllocation};
use crate::Result;

/// Margin below which a probe counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// One refuted claim: what happened, and the instance to replay it on.
#[derive(Debug, Clone)]
pub struct Violation {
    pub descriptor: String,
    pub channel: Option<ChannelSet>,
}

/// Outcome of an oracle run.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub trials: usize,
    pub violations: usize,
    /// Most negative margin observed; positive margins mean headroom.
    pub worst_gap: f64,
    pub details: Vec<Violation>,
}

impl OracleReport {
    fn new() -> Self {
        Self {
            trials: 0,
            violations: 0,
            worst_gap: f64::INFINITY,
            details: Vec::new(),
        }
    }

    fn record(&mut self, margin: f64, descriptor: impl FnOnce() -> Violation) {
        self.trials += 1;
        self.worst_gap = self.worst_gap.min(margin);
        if margin < -VIOLATION_TOL {
            self.violations += 1;
            self.details.push(descriptor());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Writes one regression-capture file per violation that carries a channel
    /// instance, in the channel format with a `# violation` comment header.
    pub fn dump_violations(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut paths = Vec::new();
        for (i, v) in self.details.iter().enumerate() {
            if let Some(ch) = &v.channel {
                let path = dir.join(format!("violation_{i:04}.marc"));
                let body = format!("# violation {}\n{}", v.descriptor, channels_to_string(ch));
                std::fs::write(&path, body)?;
                paths.push(path);
            }
        }
        Ok(paths)
    }
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..rows * cols)
        .map(|_| channel::sample_cn01(rng))
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian entries")
}

/// Random PSD matrix with trace exactly `budget` (Gram of a Gaussian draw,
/// rescaled); the trace-tight boundary is where the optima live.
fn random_trace_tight_psd(dim: usize, budget: f64, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = matrix::gram(&gaussian_matrix(dim, dim, rng)).expect("gram of finite matrix");
    let tr = g.trace().re;
    if tr <= 0.0 || budget == 0.0 {
        ComplexMatrix::zeros(dim, dim)
    } else {
        g.scale(budget / tr)
    }
}

/// Attempts to beat the joint-relaying closed form with `n` random feasible
/// covariance sets (each paired with its optimal relay matrix) and `n` random
/// feasible relay matrices; 2n probes total.
pub fn random_feasible_joint_search(
    c: &ChannelSet,
    powers: &PowerBudget,
    n: usize,
    seed: u64,
) -> Result<OracleReport> {
    let closed = joint::joint_sum_rate(c, powers)?.sum_rate;
    let mut report = OracleReport::new();
    for trial in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
        let q = CovarianceSet::new(
            (0..c.users())
                .map(|k| random_trace_tight_psd(c.user_antennas()[k], powers.user(k), &mut rng))
                .collect(),
        )?;
        let r = joint::build_r(c, &q)?;

        let f_opt = joint::optimal_relay_matrix(c, &r, powers.relay())?;
        let rate = joint::evaluate_sum_rate(c, powers, &f_opt, &q)?.rate;
        report.record(closed - rate, || Violation {
            descriptor: format!(
                "random covariances (trial {trial}, seed {seed}) beat the closed form: {rate} > {closed}"
            ),
            channel: Some(c.clone()),
        });

        let f = random_feasible_relay_matrix(c, &r, powers.relay(), &mut rng)?;
        let rate = joint::evaluate_sum_rate(c, powers, &f, &q)?.rate;
        report.record(closed - rate, || Violation {
            descriptor: format!(
                "random relay matrix (trial {trial}, seed {seed}) beat the closed form: {rate} > {closed}"
            ),
            channel: Some(c.clone()),
        });
    }
    Ok(report)
}

/// Random relay matrix rescaled so the power constraint is active at equality.
fn random_feasible_relay_matrix(
    c: &ChannelSet,
    r: &ComplexMatrix,
    relay_power: f64,
    rng: &mut ChaCha8Rng,
) -> Result<ComplexMatrix> {
    let mr = c.relay_antennas();
    let f0 = gaussian_matrix(mr, mr, rng);
    let used = joint::relay_output_power(&f0, r)?;
    if used <= 0.0 || relay_power == 0.0 {
        return Ok(ComplexMatrix::zeros(mr, mr));
    }
    Ok(f0.scale((relay_power / used).sqrt()))
}

/// Exhaustive simplex-grid challenge of the proportional slot allocation.
#[derive(Debug, Clone)]
pub struct GridSearch {
    pub report: OracleReport,
    pub best_point: Vec<f64>,
    pub best_rate: f64,
}

/// Enumerates all duration vectors with components `i / resolution` and
/// compares each against the closed-form optimum.
pub fn tau_grid_search(
    c: &ChannelSet,
    powers: &PowerBudget,
    resolution: usize,
) -> Result<GridSearch> {
    let users = c.users();
    if users > 4 {
        return Err(Error::GridTooLarge { users, resolution });
    }
    if resolution < 10 {
        return Err(Error::InvalidDimensions(
            "grid resolution must be at least 10".into(),
        ));
    }
    let gains = derive_gains(c)?;
    let opt = tdma::tdma_sum_rate(c, powers)?;

    // depth-first enumeration of compositions of `resolution` into K parts
    struct Grid<'a> {
        resolution: usize,
        gains: &'a channel::DerivedGains,
        powers: &'a PowerBudget,
        channel: &'a ChannelSet,
        opt_rate: f64,
        report: OracleReport,
        best_rate: f64,
        best_point: Vec<f64>,
        tau: Vec<f64>,
        counts: Vec<usize>,
    }

    impl Grid<'_> {
        fn descend(&mut self, k: usize, remaining: usize) {
            if k + 1 == self.counts.len() {
                self.counts[k] = remaining;
                for (t, &n) in self.tau.iter_mut().zip(&self.counts) {
                    *t = n as f64 / self.resolution as f64;
                }
                let rate = tdma::raw_sum_rate(self.gains, self.powers, &self.tau);
                if rate > self.best_rate {
                    self.best_rate = rate;
                    self.best_point.copy_from_slice(&self.tau);
                }
                let (point, opt_rate, channel) = (self.tau.clone(), self.opt_rate, self.channel);
                self.report.record(opt_rate - rate, || Violation {
                    descriptor: format!(
                        "grid point {point:?} beat the closed form: {rate} > {opt_rate}"
                    ),
                    channel: Some(channel.clone()),
                });
                return;
            }
            for n in 0..=remaining {
                self.counts[k] = n;
                self.descend(k + 1, remaining - n);
            }
        }
    }

    let mut grid = Grid {
        resolution,
        gains: &gains,
        powers,
        channel: c,
        opt_rate: opt.sum_rate,
        report: OracleReport::new(),
        best_rate: f64::NEG_INFINITY,
        best_point: vec![0.0; users],
        tau: vec![0.0; users],
        counts: vec![0; users],
    };
    grid.descend(0, resolution);

    Ok(GridSearch {
        report: grid.report,
        best_point: grid.best_point,
        best_rate: grid.best_rate,
    })
}

/// Spectral monotonicity under PSD ordering: if `A - B` is PSD then
/// `lambda_max(A) >= lambda_max(B)`. Tolerance 1e-10.
pub fn check_lemma1(n_trials: usize, dim: usize, seed: u64) -> Result<OracleReport> {
    let mut report = OracleReport::new();
    for trial in 0..n_trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
        let b = matrix::gram(&gaussian_matrix(dim, dim, &mut rng))?;
        let increment = matrix::gram(&gaussian_matrix(dim, dim, &mut rng))?;
        let a = b.add(&increment)?;
        let margin = matrix::eig_max(&a)?.0 - matrix::eig_max(&b)?.0;
        report.record(margin, || Violation {
            descriptor: format!("lemma1 trial {trial} (seed {seed}, dim {dim})"),
            channel: None,
        });
    }
    Ok(report)
}

/// Gram-vs-budget dominance: for PSD `P` with `tr(P) <= budget` and any `A`,
/// `budget * A A^H - A P A^H` is PSD; so is `budget * I - P`.
pub fn check_lemma2(n_trials: usize, dims: (usize, usize), seed: u64) -> Result<OracleReport> {
    let (m, n) = dims;
    let mut report = OracleReport::new();
    for trial in 0..n_trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial as u64));
        let budget = 0.5 + 4.5 * channel::uniform_01(&mut rng);
        let p = random_trace_tight_psd(n, budget, &mut rng);
        let a = gaussian_matrix(m, n, &mut rng);

        let lhs = matrix::gram(&a)?.scale(budget);
        let rhs = a.mul(&p)?.mul(&a.adjoint())?;
        let diff = lhs.add(&rhs.scale(-1.0))?.hermitian_part();
        let min_eig = *matrix::eig_hermitian(&diff)?
            .eigenvalues
            .last()
            .expect("nonempty spectrum");
        report.record(min_eig, || Violation {
            descriptor: format!(
                "lemma2 trial {trial} (seed {seed}, dims {m}x{n}): A A^H budget - A P A^H not PSD"
            ),
            channel: None,
        });

        let scaled_identity = ComplexMatrix::identity(n).scale(budget);
        let slack = scaled_identity.add(&p.scale(-1.0))?.hermitian_part();
        let min_eig = *matrix::eig_hermitian(&slack)?
            .eigenvalues
            .last()
            .expect("nonempty spectrum");
        report.record(min_eig, || Violation {
            descriptor: format!("lemma2 trial {trial} (seed {seed}): budget I - P not PSD"),
            channel: None,
        });
    }
    Ok(report)
}

/// Ordering check with a strict-inequality census.
#[derive(Debug, Clone)]
pub struct Theorem3Check {
    pub report: OracleReport,
    /// Instances where TDMA beat joint relaying by more than 1e-6.
    pub strict: usize,
}

/// Verifies `tdma >= joint` rate ordering and the eigenvalue inequality it
/// reduces to, over random Rayleigh instances.
pub fn check_theorem3(
    n_instances: usize,
    m_users: &[usize],
    m_relay: usize,
    powers: &PowerBudget,
    seed: u64,
) -> Result<Theorem3Check> {
    let mut report = OracleReport::new();
    let mut strict = 0;
    for trial in 0..n_instances {
        let c = sample_rayleigh(
            m_users.len(),
            m_users,
            m_relay,
            derive_seed(seed, trial as u64),
        )?;
        let jr = joint::joint_sum_rate(&c, powers)?;
        let td = tdma::tdma_sum_rate(&c, powers)?;
        let rate_margin = td.sum_rate - jr.sum_rate;
        if rate_margin > 1e-6 {
            strict += 1;
        }
        report.record(rate_margin, || Violation {
            descriptor: format!(
                "theorem3 instance {trial} (seed {seed}): joint {} beat tdma {}",
                jr.sum_rate, td.sum_rate
            ),
            channel: Some(c.clone()),
        });
        let eig_margin = derive_gains(&c)?.weighted_alpha_sum(powers) - jr.lambda_max_rtilde;
        report.record(eig_margin, || Violation {
            descriptor: format!(
                "theorem3 instance {trial} (seed {seed}): sum of top gains below lambda_max"
            ),
            channel: Some(c),
        });
    }
    Ok(Theorem3Check { report, strict })
}

/// Instance on which TDMA and joint relaying tie: every user shares the same
/// single-column channel, so all top Gram eigenvectors coincide.
pub fn equality_witness_instance(users: usize, m_relay: usize, seed: u64) -> Result<ChannelSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shared = gaussian_matrix(m_relay, 1, &mut rng);
    let h: Vec<Complex64> = (0..m_relay)
        .map(|_| channel::sample_cn01(&mut rng))
        .collect();
    ChannelSet::new(vec![shared; users], h)
}

/// Max pairwise spread of the finite-difference partial derivatives of the
/// TDMA objective at `t`; near zero exactly at the optimal allocation, where
/// the constrained gradient must be a multiple of the all-ones vector.
pub fn kkt_residual(
    c: &ChannelSet,
    powers: &PowerBudget,
    t: &TimeAllocation,
    step: f64,
) -> Result<f64> {
    for (k, &tau) in t.slots().iter().enumerate() {
        if tau - step < 0.0 || tau + step > 1.0 {
            return Err(Error::StepOutOfRange {
                component: k,
                value: tau,
            });
        }
    }
    let gains = derive_gains(c)?;
    let mut probe = t.slots().to_vec();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..probe.len() {
        let tau = probe[k];
        probe[k] = tau + step;
        let up = tdma::raw_sum_rate(&gains, powers, &probe);
        probe[k] = tau - step;
        let down = tdma::raw_sum_rate(&gains, powers, &probe);
        probe[k] = tau;
        let partial = (up - down) / (2.0 * step);
        lo = lo.min(partial);
        hi = hi.max(partial);
    }
    Ok(hi - lo)
}
