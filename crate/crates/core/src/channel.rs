//! Fading realizations `G = H D^{1/2}` for the source-relay and
//! relay-destination hops.

use crate::error::{RelayError, Result};
use crate::numerics::{cgauss_matrix, CMat, RandomSource};

/// Linear power from decibels, `10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Large-scale fading gains of both hops, one entry per pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeScaleProfile {
    eta1: Vec<f64>,
    eta2: Vec<f64>,
}

impl LargeScaleProfile {
    pub fn new(eta1: Vec<f64>, eta2: Vec<f64>) -> Result<Self> {
        if eta1.is_empty() || eta1.len() != eta2.len() {
            return Err(RelayError::InvalidInput(format!(
                "eta1 and eta2 must be non-empty and of equal length (got {} and {})",
                eta1.len(),
                eta2.len()
            )));
        }
        if let Some(bad) = eta1
            .iter()
            .chain(&eta2)
            .find(|&&e| !(e.is_finite() && e > 0.0))
        {
            return Err(RelayError::InvalidInput(format!(
                "large-scale gains must be finite and positive, got {bad}"
            )));
        }
        Ok(LargeScaleProfile { eta1, eta2 })
    }

    /// `D1 = D2 = I_K`.
    pub fn uniform(k: usize) -> Self {
        LargeScaleProfile::new(vec![1.0; k], vec![1.0; k]).expect("k >= 1")
    }

    pub fn k(&self) -> usize {
        self.eta1.len()
    }

    pub fn eta1(&self) -> &[f64] {
        &self.eta1
    }

    pub fn eta2(&self) -> &[f64] {
        &self.eta2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub n_antennas: usize,
    pub n_pairs: usize,
    pub noise_power: f64,
}

impl SystemConfig {
    pub fn new(n_antennas: usize, n_pairs: usize, noise_power: f64) -> Result<Self> {
        if n_antennas == 0 || n_pairs == 0 {
            return Err(RelayError::InvalidInput(
                "antenna and pair counts must be at least 1".into(),
            ));
        }
        if !(noise_power.is_finite() && noise_power >= 0.0) {
            return Err(RelayError::InvalidInput(format!(
                "noise power must be finite and non-negative, got {noise_power}"
            )));
        }
        Ok(SystemConfig {
            n_antennas,
            n_pairs,
            noise_power,
        })
    }

    pub fn zf_feasible(&self) -> bool {
        self.n_antennas >= self.n_pairs
    }
}

/// One fast-fading draw of both hops, each `N x K`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub g1: CMat,
    pub g2: CMat,
}

impl ChannelRealization {
    pub fn new(g1: CMat, g2: CMat) -> Result<Self> {
        if g1.shape() != g2.shape() {
            return Err(RelayError::DimensionMismatch {
                op: "ChannelRealization",
                lhs: g1.shape(),
                rhs: g2.shape(),
            });
        }
        Ok(ChannelRealization { g1, g2 })
    }

    pub fn n_antennas(&self) -> usize {
        self.g1.rows()
    }

    pub fn n_pairs(&self) -> usize {
        self.g1.cols()
    }
}

/// Draws `G1 = H1 D1^{1/2}` and `G2 = H2 D2^{1/2}`.
///
/// `H1` comes from stream `2s` and `H2` from stream `2s + 1` of `source`,
/// so the two hops are independent.
pub fn draw_channels(
    config: &SystemConfig,
    profile: &LargeScaleProfile,
    source: &RandomSource,
) -> Result<ChannelRealization> {
    if profile.k() != config.n_pairs {
        return Err(RelayError::InvalidInput(format!(
            "profile has {} pairs but the system has K = {}",
            profile.k(),
            config.n_pairs
        )));
    }
    let (src1, src2) = source.split_pair();
    let n = config.n_antennas;
    let k = config.n_pairs;
    let mut g1 = cgauss_matrix(n, k, &src1);
    let mut g2 = cgauss_matrix(n, k, &src2);
    for (c, (&e1, &e2)) in profile.eta1().iter().zip(profile.eta2()).enumerate() {
        g1.scale_column(c, e1.sqrt());
        g2.scale_column(c, e2.sqrt());
    }
    Ok(ChannelRealization { g1, g2 })
}
