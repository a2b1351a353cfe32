//! Secrecy performance of a correlated Rayleigh-fading wiretap channel with
//! side information known non-causally at the transmitter.
//!
//! The library computes the average secrecy capacity (ASC) and the secrecy
//! outage probability (SOP) of the two dirty-paper coding regimes, three
//! independent ways:
//!
//! * FGM closed forms built on the exponentially scaled exponential integral,
//! * adaptive double quadrature of the defining integrals (any copula with a
//!   density: FGM, Frank, independence),
//! * seeded Monte-Carlo over copula-coupled SNR pairs (all families,
//!   including the Frechet-Hoeffding bounds).
//!
//! Cross-checking the three routes against each other is a first-class
//! feature; the sweep runner's `gate_violations` turns it into a CI gate.

pub mod channel;
pub mod copula;
pub mod error;
pub mod metrics;
pub mod quad;
pub mod secrecy;
pub mod specfun;
pub mod sweep;

pub use channel::{SnrPair, WiretapParams};
pub use copula::{CopulaFamily, CopulaSpec, UnitPair};
pub use error::{Error, Result};
pub use metrics::{MetricEstimate, Method, TargetRate, Validity};
pub use secrecy::{AlphaThresholds, SecrecyRegime};
pub use sweep::{preset_figure, run_sweep, SweepSpec, SweepTable};
