//! Channel instances: dimensions, fading realizations, powers, and the
//! line-oriented text format used to persist them.
//!
//! Sampling is fully pinned down so a seed identifies a realization across
//! machines and runs: the generator is ChaCha8 keyed by the 64-bit seed, each
//! complex entry consumes exactly two `u64` draws through a Box-Muller
//! transform, and entries are emitted user by user in row-major order with
//! the relay-to-receiver vector last. Real and imaginary parts each carry
//! variance 1/2, so `E|entry|^2 = 1`.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Error;
use crate::matrix::{self, ComplexMatrix};
use crate::Result;

/// One realization of the multiple-access relay channel.
///
/// `user_channels[k]` is the `m_relay x m_users[k]` matrix from transmitter k
/// to the relay; `relay_to_receiver` holds the length-`m_relay` vector `h`
/// (the received signal uses `h^H`).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    users: usize,
    m_relay: usize,
    m_users: Vec<usize>,
    user_channels: Vec<ComplexMatrix>,
    relay_to_receiver: Vec<Complex64>,
}

impl ChannelSet {
    /// Validates shapes and finiteness before accepting the parts.
    pub fn new(
        user_channels: Vec<ComplexMatrix>,
        relay_to_receiver: Vec<Complex64>,
    ) -> Result<Self> {
        if user_channels.is_empty() {
            return Err(Error::InvalidDimensions("need at least one user".into()));
        }
        let m_relay = user_channels[0].rows();
        if relay_to_receiver.len() != m_relay {
            return Err(Error::InvalidDimensions(format!(
                "receiver vector length {} does not match {} relay antennas",
                relay_to_receiver.len(),
                m_relay
            )));
        }
        if relay_to_receiver
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NotFinite);
        }
        let mut m_users = Vec::with_capacity(user_channels.len());
        for h in &user_channels {
            if h.rows() != m_relay {
                return Err(Error::ShapeMismatch {
                    expected: (m_relay, h.cols()),
                    got: (h.rows(), h.cols()),
                });
            }
            m_users.push(h.cols());
        }
        Ok(Self {
            users: user_channels.len(),
            m_relay,
            m_users,
            user_channels,
            relay_to_receiver,
        })
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn relay_antennas(&self) -> usize {
        self.m_relay
    }

    pub fn user_antennas(&self) -> &[usize] {
        &self.m_users
    }

    /// Transmitter-k-to-relay channel matrix.
    pub fn user_channel(&self, k: usize) -> &ComplexMatrix {
        &self.user_channels[k]
    }

    /// Relay-to-receiver channel vector `h`.
    pub fn receiver_channel(&self) -> &[Complex64] {
        &self.relay_to_receiver
    }
}

/// Per-user transmit power budgets plus the relay budget, linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerBudget {
    per_user: Vec<f64>,
    relay: f64,
}

impl PowerBudget {
    pub fn new(per_user: Vec<f64>, relay: f64) -> Result<Self> {
        if per_user.is_empty() {
            return Err(Error::InvalidDimensions(
                "need at least one user power".into(),
            ));
        }
        if per_user
            .iter()
            .chain([&relay])
            .any(|p| !p.is_finite() || *p < 0.0)
        {
            return Err(Error::InvalidDimensions(
                "powers must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { per_user, relay })
    }

    /// Same power for every user.
    pub fn uniform(users: usize, per_user: f64, relay: f64) -> Result<Self> {
        Self::new(vec![per_user; users], relay)
    }

    /// Budget with a different relay power, user powers unchanged.
    pub fn with_relay(&self, relay: f64) -> Self {
        Self {
            per_user: self.per_user.clone(),
            relay,
        }
    }

    pub fn user(&self, k: usize) -> f64 {
        self.per_user[k]
    }

    pub fn users(&self) -> &[f64] {
        &self.per_user
    }

    pub fn relay(&self) -> f64 {
        self.relay
    }
}

/// Scalars the closed-form rates depend on: `sigma1_sq = ||h||^2` and, per
/// user, the largest eigenvalue of the channel Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedGains {
    pub sigma1_sq: f64,
    pub alpha1: Vec<f64>,
}

impl DerivedGains {
    /// Power-weighted sum of the per-user top gains.
    pub fn weighted_alpha_sum(&self, powers: &PowerBudget) -> f64 {
        self.alpha1
            .iter()
            .zip(powers.users())
            .map(|(a, p)| a * p)
            .sum()
    }
}

/// Stable sub-seed for trial `index` under `master`; a SplitMix64 step, so
/// trials can be distributed across workers without changing any draw.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) consuming exactly one `u64`.
pub(crate) fn uniform_01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Two standard normals from one pair of uniform draws.
fn box_muller(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = uniform_01(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    (r * theta.cos(), r * theta.sin())
}

/// One circularly-symmetric complex Gaussian with unit total variance.
pub(crate) fn sample_cn01(rng: &mut ChaCha8Rng) -> Complex64 {
    let (g1, g2) = box_muller(rng);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(g1 * s, g2 * s)
}

/// Draws an i.i.d. Rayleigh-fading realization, deterministic in the seed.
pub fn sample_rayleigh(
    users: usize,
    m_users: &[usize],
    m_relay: usize,
    seed: u64,
) -> Result<ChannelSet> {
    if users == 0 || m_relay == 0 || m_users.len() != users || m_users.contains(&0) {
        return Err(Error::InvalidDimensions(format!(
            "users={users}, relay antennas={m_relay}, user antennas={m_users:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut user_channels = Vec::with_capacity(users);
    for &m in m_users {
        let data: Vec<Complex64> = (0..m_relay * m).map(|_| sample_cn01(&mut rng)).collect();
        user_channels.push(ComplexMatrix::new(m_relay, m, data)?);
    }
    let h: Vec<Complex64> = (0..m_relay).map(|_| sample_cn01(&mut rng)).collect();
    ChannelSet::new(user_channels, h)
}

/// Computes `sigma1_sq` and the per-user top Gram eigenvalues.
pub fn derive_gains(c: &ChannelSet) -> Result<DerivedGains> {
    let alpha1 = (0..c.users())
        .map(|k| Ok(matrix::eig_max(&matrix::gram(c.user_channel(k))?)?.0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DerivedGains {
        sigma1_sq: matrix::vec_norm_sq(c.receiver_channel()),
        alpha1,
    })
}

fn fmt_entry(z: Complex64) -> String {
    // 17 significant digits round-trip f64 exactly.
    format!("{:.16e} {:.16e}", z.re, z.im)
}

/// Serializes a channel set in the `MARC v1` text format.
pub fn channels_to_string(c: &ChannelSet) -> String {
    let dims: Vec<String> = c.m_users.iter().map(|m| m.to_string()).collect();
    let mut out = format!(
        "MARC v1 K={} Mr={} M={}\n",
        c.users,
        c.m_relay,
        dims.join(",")
    );
    for h in &c.user_channels {
        for i in 0..h.rows() {
            for j in 0..h.cols() {
                out.push_str(&fmt_entry(h.get(i, j)));
                out.push('\n');
            }
        }
    }
    for &z in &c.relay_to_receiver {
        out.push_str(&fmt_entry(z));
        out.push('\n');
    }
    out
}

/// Writes the channel file; see [`channels_to_string`] for the format.
pub fn save_channels(c: &ChannelSet, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(channels_to_string(c).as_bytes())?;
    Ok(())
}

/// Parses the `MARC v1` text format. Lines starting with `#` and blank lines
/// are ignored, so oracle violation dumps with comment headers load too.
pub fn channels_from_str(text: &str) -> Result<ChannelSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines.next().ok_or(Error::MalformedFile {
        line: 0,
        reason: "empty file".into(),
    })?;
    let bad_header = |reason: &str| Error::MalformedFile {
        line: header_no,
        reason: reason.into(),
    };

    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "MARC" || fields[1] != "v1" {
        return Err(bad_header("expected `MARC v1 K=<k> Mr=<mr> M=<m1,...,mk>`"));
    }
    let parse_kv = |field: &str, key: &str| -> Result<String> {
        field
            .strip_prefix(key)
            .map(str::to_owned)
            .ok_or_else(|| bad_header(&format!("expected `{key}...`, got `{field}`")))
    };
    let users: usize = parse_kv(fields[2], "K=")?
        .parse()
        .map_err(|_| bad_header("K is not a count"))?;
    let m_relay: usize = parse_kv(fields[3], "Mr=")?
        .parse()
        .map_err(|_| bad_header("Mr is not a count"))?;
    let m_users: Vec<usize> = parse_kv(fields[4], "M=")?
        .split(',')
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| bad_header("M entry is not a count"))
        })
        .collect::<Result<_>>()?;
    if m_users.len() != users {
        return Err(bad_header(&format!(
            "declared K={} but M lists {} entries",
            users,
            m_users.len()
        )));
    }
    if users == 0 || m_relay == 0 || m_users.contains(&0) {
        return Err(bad_header("all dimensions must be at least 1"));
    }

    let mut next_entry = |what: &str| -> Result<Complex64> {
        let (no, line) = lines.next().ok_or(Error::MalformedFile {
            line: usize::MAX,
            reason: format!("file ended before {what}"),
        })?;
        let mut parts = line.split_whitespace();
        let bad = |reason: String| Error::MalformedFile { line: no, reason };
        let re: f64 = parts
            .next()
            .ok_or_else(|| bad("missing real part".into()))?
            .parse()
            .map_err(|e| bad(format!("real part: {e}")))?;
        let im: f64 = parts
            .next()
            .ok_or_else(|| bad("missing imaginary part".into()))?
            .parse()
            .map_err(|e| bad(format!("imaginary part: {e}")))?;
        if parts.next().is_some() {
            return Err(bad("expected exactly two numbers".into()));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(bad("entry is not finite".into()));
        }
        Ok(Complex64::new(re, im))
    };

    let mut user_channels = Vec::with_capacity(users);
    for (k, &m) in m_users.iter().enumerate() {
        let data = (0..m_relay * m)
            .map(|_| next_entry(&format!("user {k} finished")))
            .collect::<Result<Vec<_>>>()?;
        user_channels.push(ComplexMatrix::new(m_relay, m, data)?);
    }
    let h = (0..m_relay)
        .map(|_| next_entry("receiver vector finished"))
        .collect::<Result<Vec<_>>>()?;
    if let Some((no, _)) = lines.next() {
        return Err(Error::MalformedFile {
            line: no,
            reason: "trailing data after receiver vector".into(),
        });
    }
    ChannelSet::new(user_channels, h)
}

/// Loads a channel file written by [`save_channels`].
pub fn load_channels(path: &Path) -> Result<ChannelSet> {
    channels_from_str(&fs::read_to_string(path)?)
}
