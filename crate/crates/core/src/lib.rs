//! Sum-rate analysis for the K-user Gaussian multiple-access channel with a
//! multi-antenna amplify-and-forward relay and a single-antenna receiver.
//!
//! Two transmission schemes are implemented and compared:
//!
//! - **Joint relaying** ([`joint`]): all users transmit simultaneously, the
//!   relay amplifies the superposition with a matrix chosen for the top
//!   eigenmode of the received covariance.
//! - **TDMA relaying** ([`tdma`]): each user gets an exclusive time slot with
//!   a power boost `P / tau`, and the relay matrix adapts per slot.
//!
//! The TDMA scheme achieves a sum rate at least as large as joint relaying on
//! every channel instance; [`oracle`] hosts brute-force checks of that
//! ordering and of the optimality claims behind both closed forms, and
//! [`sweep`] averages both schemes over seeded Rayleigh-fading realizations.
//!
//! Everything is deterministic: channel generation, the eigensolver, and the
//! Monte-Carlo engine produce bit-identical results for identical seeds,
//! regardless of worker count.

pub mod channel;
pub mod error;
pub mod joint;
pub mod matrix;
pub mod oracle;
pub mod sweep;
pub mod tdma;

pub use channel::{ChannelSet, DerivedGains, PowerBudget};
pub use error::Error;
pub use joint::{CovarianceSet, JointSolution};
pub use matrix::{ComplexMatrix, HermitianEig};
pub use num_complex::Complex64;
pub use oracle::OracleReport;
pub use sweep::{SweepConfig, SweepPoint, SweepResult};
pub use tdma::{TdmaSolution, TimeAllocation};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
