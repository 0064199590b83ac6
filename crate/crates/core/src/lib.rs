//! Multi-pair amplify-and-forward relaying through a relay with a very
//! large antenna array.
//!
//! `K` single-antenna sources talk to `K` single-antenna destinations
//! through one `N`-antenna relay that applies MRC/MRT or zero-forcing
//! processing. The crate provides:
//!
//! - [`numerics`]: small dense complex matrix kernels and a counter-based
//!   random source,
//! - [`channel`]: Rayleigh fading draws with per-pair large-scale gains,
//! - [`relaying`]: exact per-realization gains, relay matrices and SINRs,
//! - [`asymptotics`]: closed-form large-N limits under the three
//!   power-scaling laws and the MRC/MRT-versus-ZF dominance tests,
//! - [`montecarlo`]: reproducible, parallel ergodic sum-rate estimation,
//! - [`cli`]: configuration files, figure presets, CSV output and the
//!   self-check suite behind the `multipair-relay` binary.

pub mod asymptotics;
pub mod channel;
pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod numerics;
pub mod relaying;

pub use asymptotics::{asym_report, AsymptoticReport, Dominance, ScalingCase};
pub use channel::{draw_channels, ChannelRealization, LargeScaleProfile, SystemConfig};
pub use error::{RelayError, Result};
pub use montecarlo::{estimate_ergodic_sum_rate, sweep, Estimate, SweepResult, SweepSpec};
pub use numerics::{CMat, RandomSource};
pub use relaying::{PerUserSinr, PowerSetting, RelayScheme, SinrBreakdown};
