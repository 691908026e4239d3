//! Monte-Carlo comparison of the two schemes over a relay-SNR sweep.
//!
//! One channel realization is drawn per trial from `(master_seed, trial)` and
//! reused across every SNR point and both schemes (common random numbers):
//! only the relay power varies along the sweep, so the per-trial scalars
//! `||h||^2`, `lambda_max(R_tilde)`, and `sum_k alpha_k P_k` are computed once
//! and the closed forms are evaluated per point. Aggregation runs in trial
//! order whatever the worker count, so results are byte-stable.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::channel::{self, derive_gains, derive_seed, PowerBudget};
use crate::error::Error;
use crate::{joint, tdma, Result};

/// Scenario description for one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub users: usize,
    pub m_users: Vec<usize>,
    pub m_relay: usize,
    pub powers: Vec<f64>,
    pub snr_points_db: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
}

impl SweepConfig {
    /// The simulated scenario: 8 users, 4 antennas everywhere, unit-noise
    /// transmit power 10, relay SNR swept 0-30 dB in 2 dB steps, 1000 trials.
    pub fn reference_scenario(master_seed: u64) -> Self {
        Self {
            users: 8,
            m_users: vec![4; 8],
            m_relay: 4,
            powers: vec![10.0; 8],
            snr_points_db: (0..=15).map(|i| 2.0 * i as f64).collect(),
            trials: 1000,
            master_seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.users == 0
            || self.m_relay == 0
            || self.m_users.len() != self.users
            || self.m_users.contains(&0)
        {
            return Err(Error::InvalidDimensions(format!(
                "users={}, relay antennas={}, user antennas={:?}",
                self.users, self.m_relay, self.m_users
            )));
        }
        if self.powers.len() != self.users {
            return Err(Error::InvalidDimensions(format!(
                "{} powers for {} users",
                self.powers.len(),
                self.users
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidDimensions("need at least one trial".into()));
        }
        if self.snr_points_db.is_empty() || self.snr_points_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidDimensions(
                "SNR sweep must be nonempty and finite".into(),
            ));
        }
        Ok(())
    }
}

/// Averages at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub joint_mean: f64,
    pub tdma_mean: f64,
    /// Mean of the per-trial relative gain (tdma - joint) / joint, percent.
    pub gain_pct: f64,
    pub joint_se: f64,
    pub tdma_se: f64,
    pub trials: usize,
}

/// One sweep, one row per SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

/// The scalars one realization contributes to every SNR point.
struct TrialStats {
    sigma1_sq: f64,
    lambda_max_rtilde: f64,
    weighted_alpha_sum: f64,
}

fn trial_stats(cfg: &SweepConfig, trial: usize) -> Result<TrialStats> {
    let c = channel::sample_rayleigh(
        cfg.users,
        &cfg.m_users,
        cfg.m_relay,
        derive_seed(cfg.master_seed, trial as u64),
    )?;
    // relay power is irrelevant to these scalars; any budget works
    let powers = PowerBudget::new(cfg.powers.clone(), 0.0)?;
    let gains = derive_gains(&c)?;
    let (lambda_max, _) = crate::matrix::eig_max(&joint::build_r_tilde(&c, &powers)?)?;
    Ok(TrialStats {
        sigma1_sq: gains.sigma1_sq,
        lambda_max_rtilde: lambda_max,
        weighted_alpha_sum: gains.weighted_alpha_sum(&powers),
    })
}

/// Runs the sweep on `workers` threads. The output is identical for any
/// worker count: trials are computed independently and folded in trial order.
pub fn run_sweep(cfg: &SweepConfig, workers: usize) -> Result<SweepResult> {
    cfg.validate()?;
    let workers = workers.max(1).min(cfg.trials);

    let mut stats: Vec<Option<TrialStats>> = Vec::with_capacity(cfg.trials);
    stats.resize_with(cfg.trials, || None);

    if workers == 1 {
        for (t, slot) in stats.iter_mut().enumerate() {
            *slot = Some(trial_stats(cfg, t)?);
        }
    } else {
        let chunk = cfg.trials.div_ceil(workers);
        let results: Vec<Result<Vec<(usize, TrialStats)>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(cfg.trials);
                    scope.spawn(move || {
                        (lo..hi)
                            .map(|t| Ok((t, trial_stats(cfg, t)?)))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        });
        for batch in results {
            for (t, s) in batch? {
                stats[t] = Some(s);
            }
        }
    }
    let stats: Vec<TrialStats> = stats
        .into_iter()
        .map(|s| s.expect("all trials ran"))
        .collect();

    let points = cfg
        .snr_points_db
        .iter()
        .map(|&snr_db| {
            let relay_power = 10f64.powf(snr_db / 10.0);
            aggregate_point(snr_db, relay_power, &stats)
        })
        .collect();
    Ok(SweepResult { points })
}

fn aggregate_point(snr_db: f64, relay_power: f64, stats: &[TrialStats]) -> SweepPoint {
    let n = stats.len();
    let rates = |s: &TrialStats| {
        let jr = joint::closed_form_rate(s.sigma1_sq, s.lambda_max_rtilde, relay_power);
        let td = tdma::closed_form_from_scalars(s.sigma1_sq, s.weighted_alpha_sum, relay_power);
        (jr, td)
    };

    let mut joint_sum = 0.0;
    let mut tdma_sum = 0.0;
    let mut gain_sum = 0.0;
    for s in stats {
        let (jr, td) = rates(s);
        joint_sum += jr;
        tdma_sum += td;
        gain_sum += if jr > 0.0 {
            (td - jr) / jr * 100.0
        } else {
            0.0
        };
    }
    let joint_mean = joint_sum / n as f64;
    let tdma_mean = tdma_sum / n as f64;

    let (mut joint_var, mut tdma_var) = (0.0, 0.0);
    for s in stats {
        let (jr, td) = rates(s);
        joint_var += (jr - joint_mean) * (jr - joint_mean);
        tdma_var += (td - tdma_mean) * (td - tdma_mean);
    }
    let se = |var: f64| {
        if n > 1 {
            (var / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        }
    };

    SweepPoint {
        snr_db,
        joint_mean,
        tdma_mean,
        gain_pct: gain_sum / n as f64,
        joint_se: se(joint_var),
        tdma_se: se(tdma_var),
        trials: n,
    }
}

/// CSV header written by [`write_csv`].
pub const CSV_HEADER: &str = "snr_db,joint_mean,tdma_mean,gain_pct,joint_se,tdma_se,trials";

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders the result as CSV text, 12 significant digits, LF endings.
pub fn csv_to_string(r: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &r.points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt12(p.snr_db),
            fmt12(p.joint_mean),
            fmt12(p.tdma_mean),
            fmt12(p.gain_pct),
            fmt12(p.joint_se),
            fmt12(p.tdma_se),
            p.trials
        ));
    }
    out
}

/// Writes the sweep CSV.
pub fn write_csv(r: &SweepResult, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(csv_to_string(r).as_bytes())?;
    Ok(())
}

/// Parses a file written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<SweepResult> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(Error::MalformedFile {
                line: 1,
                reason: format!("expected header `{CSV_HEADER}`"),
            })
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 7 {
            return Err(Error::MalformedFile {
                line: i + 1,
                reason: format!("expected 7 fields, got {}", cells.len()),
            });
        }
        let num = |j: usize| -> Result<f64> {
            cells[j].parse().map_err(|e| Error::MalformedFile {
                line: i + 1,
                reason: format!("field {}: {e}", j + 1),
            })
        };
        points.push(SweepPoint {
            snr_db: num(0)?,
            joint_mean: num(1)?,
            tdma_mean: num(2)?,
            gain_pct: num(3)?,
            joint_se: num(4)?,
            tdma_se: num(5)?,
            trials: cells[6].parse().map_err(|e| Error::MalformedFile {
                line: i + 1,
                reason: format!("trials: {e}"),
            })?,
        });
    }
    Ok(SweepResult { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_rayleigh;

    fn small_cfg() -> SweepConfig {
        SweepConfig {
            users: 2,
            m_users: vec![2, 2],
            m_relay: 2,
            powers: vec![2.0, 3.0],
            snr_points_db: vec![0.0, 10.0],
            trials: 5,
            master_seed: 42,
        }
    }

    #[test]
    fn single_trial_means_equal_instance_rates() {
        let mut cfg = small_cfg();
        cfg.trials = 1;
        cfg.snr_points_db = vec![10.0];
        let r = run_sweep(&cfg, 1).unwrap();
        let p = &r.points[0];
        assert_eq!(p.trials, 1);
        assert_eq!(p.joint_se, 0.0);

        // replicate by hand on the same realization
        let c = sample_rayleigh(2, &[2, 2], 2, derive_seed(42, 0)).unwrap();
        let powers = PowerBudget::new(vec![2.0, 3.0], 10.0).unwrap();
        let jr = joint::joint_sum_rate(&c, &powers).unwrap().sum_rate;
        let td = tdma::tdma_sum_rate(&c, &powers).unwrap().sum_rate;
        assert!((p.joint_mean - jr).abs() < 1e-12);
        assert!((p.tdma_mean - td).abs() < 1e-9);
    }

    #[test]
    fn reruns_are_bit_identical() {
        let cfg = small_cfg();
        let a = run_sweep(&cfg, 1).unwrap();
        let b = run_sweep(&cfg, 1).unwrap();
        assert_eq!(csv_to_string(&a), csv_to_string(&b));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut cfg = small_cfg();
        cfg.trials = 17;
        let baseline = csv_to_string(&run_sweep(&cfg, 1).unwrap());
        for workers in [2, 3, 8, 32] {
            let other = csv_to_string(&run_sweep(&cfg, workers).unwrap());
            assert_eq!(baseline, other, "worker count {workers} changed bytes");
        }
    }

    #[test]
    fn tdma_mean_dominates_joint_mean() {
        let r = run_sweep(&small_cfg(), 2).unwrap();
        for p in &r.points {
            assert!(p.tdma_mean >= p.joint_mean - 1e-12);
            assert!(p.gain_pct >= 0.0);
        }
    }

    #[test]
    fn csv_roundtrip_and_header_only_file() {
        let dir = std::env::temp_dir().join("marc_sweep_csv");
        fs::create_dir_all(&dir).unwrap();

        let r = run_sweep(&small_cfg(), 1).unwrap();
        let path = dir.join("sweep.csv");
        write_csv(&r, &path).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(back.points.len(), r.points.len());
        for (a, b) in r.points.iter().zip(&back.points) {
            // 12 significant digits survive the round trip at this magnitude
            assert!((a.joint_mean - b.joint_mean).abs() < 1e-9);
            assert!((a.tdma_mean - b.tdma_mean).abs() < 1e-9);
            assert_eq!(a.trials, b.trials);
        }

        let empty = SweepResult { points: vec![] };
        let path2 = dir.join("empty.csv");
        write_csv(&empty, &path2).unwrap();
        let text = fs::read_to_string(&path2).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n"));
        assert!(read_csv(&path2).unwrap().points.is_empty());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = small_cfg();
        cfg.trials = 0;
        assert!(run_sweep(&cfg, 1).is_err());
        let mut cfg = small_cfg();
        cfg.snr_points_db.clear();
        assert!(run_sweep(&cfg, 1).is_err());
        let mut cfg = small_cfg();
        cfg.powers = vec![1.0];
        assert!(run_sweep(&cfg, 1).is_err());
    }
}
