//! Per-realization relay processing: normalization gains, relay
//! transformation matrices and end-to-end SINRs for MRC/MRT, ZF and the
//! orthogonal (one pair at a time) scheme.
//!
//! Two evaluation routes exist on purpose. [`relay_matrix`] together with
//! [`sinr_from_decomposition`] builds the full `N x N` matrix `W` and
//! evaluates the generic signal / interference / noise split. The closed
//! forms ([`mrc_sinr`], [`zf_snr`], [`ns_snr`]) only touch the `K x K` Gram
//! matrices `A = G1^H G1` and `B = G2^H G2`, which keeps a Monte Carlo
//! trial at `O(N K^2)`.

use std::fmt;

use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::error::{RelayError, Result};
use crate::numerics::{dot_h, gram, herm, inv_hermitian, matmul, trace, CMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelayScheme {
    MrcMrt,
    Zf,
    NaiveOrthogonal,
}

impl RelayScheme {
    pub const ALL: [RelayScheme; 3] = [
        RelayScheme::MrcMrt,
        RelayScheme::Zf,
        RelayScheme::NaiveOrthogonal,
    ];

    /// Pre-log divisor: 1 when all pairs share the channel, `K` for the
    /// orthogonal scheme.
    pub fn prelog_divisor(self, k: usize) -> f64 {
        match self {
            RelayScheme::MrcMrt | RelayScheme::Zf => 1.0,
            RelayScheme::NaiveOrthogonal => k as f64,
        }
    }

    /// Short lowercase name used in config files and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            RelayScheme::MrcMrt => "mrc",
            RelayScheme::Zf => "zf",
            RelayScheme::NaiveOrthogonal => "naive",
        }
    }

    pub fn parse(s: &str) -> Option<RelayScheme> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mrc" | "mrt" | "mrc/mrt" | "mrcmrt" => Some(RelayScheme::MrcMrt),
            "zf" => Some(RelayScheme::Zf),
            "naive" | "ns" | "orthogonal" => Some(RelayScheme::NaiveOrthogonal),
            _ => None,
        }
    }

    pub(crate) fn tag(self) -> u64 {
        match self {
            RelayScheme::MrcMrt => 0,
            RelayScheme::Zf => 1,
            RelayScheme::NaiveOrthogonal => 2,
        }
    }
}

impl fmt::Display for RelayScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// Per-source transmit power and total relay power, both linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSetting {
    pub p_t: f64,
    pub p_r: f64,
}

impl PowerSetting {
    pub fn new(p_t: f64, p_r: f64) -> Result<Self> {
        for (name, v) in [("p_t", p_t), ("p_r", p_r)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RelayError::InvalidInput(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(PowerSetting { p_t, p_r })
    }
}

/// Received power split at one destination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrBreakdown {
    pub signal: f64,
    pub interference: f64,
    pub relay_noise: f64,
    pub dest_noise: f64,
}

impl SinrBreakdown {
    pub fn sinr(&self) -> f64 {
        self.signal / (self.interference + self.relay_noise + self.dest_noise)
    }
}

/// Linear SINR of every destination.
#[derive(Debug, Clone, PartialEq)]
pub struct PerUserSinr(pub Vec<f64>);

impl PerUserSinr {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Gram matrices of one realization, `A = G1^H G1` and `B = G2^H G2`.
#[derive(Debug, Clone)]
pub struct ChannelGrams {
    pub n_antennas: usize,
    pub a: CMat,
    pub b: CMat,
}

impl ChannelGrams {
    pub fn new(ch: &ChannelRealization) -> Self {
        ChannelGrams {
            n_antennas: ch.n_antennas(),
            a: gram(&ch.g1),
            b: gram(&ch.g2),
        }
    }

    pub fn k(&self) -> usize {
        self.a.rows()
    }

    fn zf_inverses(&self) -> Result<(CMat, CMat)> {
        let infeasible = RelayError::ZfInfeasible {
            n: self.n_antennas,
            k: self.k(),
        };
        if self.n_antennas < self.k() {
            return Err(infeasible);
        }
        let a_inv = inv_hermitian(&self.a).map_err(|_| infeasible.clone())?;
        let b_inv = inv_hermitian(&self.b).map_err(|_| infeasible)?;
        Ok((a_inv, b_inv))
    }
}

fn mul(a: &CMat, b: &CMat) -> CMat {
    matmul(a, b).expect("Gram matrices are K x K")
}

fn real_trace(m: &CMat) -> f64 {
    trace(m).expect("square").re
}

/// `a_mrc^2 = P_r / Tr(P_t A^2 B + N0 A B)`.
fn mrc_gain_sq(grams: &ChannelGrams, pw: &PowerSetting, n0: f64) -> f64 {
    let ab = mul(&grams.a, &grams.b);
    let aab = mul(&grams.a, &ab);
    pw.p_r / (pw.p_t * real_trace(&aab) + n0 * real_trace(&ab))
}

/// `a_zf^2 = P_r / Tr(P_t B^-1 + N0 B^-1 A^-1)`.
fn zf_gain_sq(a_inv: &CMat, b_inv: &CMat, pw: &PowerSetting, n0: f64) -> f64 {
    let ba = mul(b_inv, a_inv);
    pw.p_r / (pw.p_t * real_trace(b_inv) + n0 * real_trace(&ba))
}

/// MRC/MRT normalization gain meeting the relay power constraint.
pub fn mrc_gain(ch: &ChannelRealization, pw: &PowerSetting, n0: f64) -> f64 {
    mrc_gain_sq(&ChannelGrams::new(ch), pw, n0).sqrt()
}

/// ZF normalization gain; fails when `N < K` or a Gram matrix is singular.
pub fn zf_gain(ch: &ChannelRealization, pw: &PowerSetting, n0: f64) -> Result<f64> {
    let grams = ChannelGrams::new(ch);
    let (a_inv, b_inv) = grams.zf_inverses()?;
    Ok(zf_gain_sq(&a_inv, &b_inv, pw, n0).sqrt())
}

/// Relay transformation matrix `W` (`N x N`).
///
/// MRC/MRT: `W = a G2 G1^H`.
/// ZF: `W = a G2 (G2^H G2)^-1 (G1^H G1)^-1 G1^H`.
pub fn relay_matrix(
    scheme: RelayScheme,
    ch: &ChannelRealization,
    pw: &PowerSetting,
    n0: f64,
) -> Result<CMat> {
    match scheme {
        RelayScheme::MrcMrt => {
            let gain = mrc_gain(ch, pw, n0);
            Ok(matmul(&ch.g2, &herm(&ch.g1))?.scaled(gain))
        }
        RelayScheme::Zf => {
            let grams = ChannelGrams::new(ch);
            let (a_inv, b_inv) = grams.zf_inverses()?;
            let gain = zf_gain_sq(&a_inv, &b_inv, pw, n0).sqrt();
            let left = matmul(&ch.g2, &mul(&b_inv, &a_inv))?;
            Ok(matmul(&left, &herm(&ch.g1))?.scaled(gain))
        }
        RelayScheme::NaiveOrthogonal => Err(RelayError::UnsupportedScheme("the orthogonal scheme")),
    }
}

/// Average relay transmit power `Tr(P_t W G1 G1^H W^H + N0 W W^H)`,
/// conditioned on the channels.
pub fn power_check(w: &CMat, g1: &CMat, pw: &PowerSetting, n0: f64) -> Result<f64> {
    let wg1 = matmul(w, g1)?;
    let signal = real_trace(&matmul(&wg1, &herm(&wg1))?);
    let noise = real_trace(&matmul(w, &herm(w))?);
    Ok(pw.p_t * signal + n0 * noise)
}

/// Signal, interference, amplified relay noise and destination noise at
/// destination `k` for an arbitrary relay matrix.
pub fn sinr_from_decomposition(
    w: &CMat,
    ch: &ChannelRealization,
    pw: &PowerSetting,
    n0: f64,
    k: usize,
) -> Result<SinrBreakdown> {
    let n_pairs = ch.n_pairs();
    if k >= n_pairs {
        return Err(RelayError::IndexOutOfRange {
            index: k,
            len: n_pairs,
        });
    }
    let n = ch.n_antennas();
    if w.shape() != (n, n) {
        return Err(RelayError::DimensionMismatch {
            op: "sinr_from_decomposition",
            lhs: w.shape(),
            rhs: (n, n),
        });
    }
    // row vector g2k^H W
    let g2k = ch.g2.column(k);
    let mut r = vec![Complex64::new(0.0, 0.0); n];
    for (i, g) in g2k.iter().enumerate() {
        let gc = g.conj();
        for (rj, wij) in r.iter_mut().zip(w.row(i)) {
            *rj += gc * wij;
        }
    }
    let through = |i: usize| -> f64 {
        let col = ch.g1.column(i);
        r.iter().zip(&col).map(|(a, b)| a * b).sum::<Complex64>().norm_sqr()
    };
    let signal = pw.p_t * through(k);
    let interference = pw.p_t * (0..n_pairs).filter(|&i| i != k).map(through).sum::<f64>();
    let relay_noise = dot_h(&r, &r).re * n0;
    Ok(SinrBreakdown {
        signal,
        interference,
        relay_noise,
        dest_noise: n0,
    })
}

/// MRC/MRT SINRs from precomputed Gram matrices.
///
/// With `M = B A`, `g2k^H G2 G1^H g1i = M[k][i]` and
/// `||g2k^H G2 G1^H||^2 = (M B)[k][k]`.
pub fn mrc_sinr_from_grams(grams: &ChannelGrams, pw: &PowerSetting, n0: f64) -> PerUserSinr {
    let k_pairs = grams.k();
    let gain_sq = mrc_gain_sq(grams, pw, n0);
    let m = mul(&grams.b, &grams.a);
    let mb = mul(&m, &grams.b);
    let values = (0..k_pairs)
        .map(|k| {
            let v_norm_sq = mb[(k, k)].re;
            let row = m.row(k);
            let signal = pw.p_t * row[k].norm_sqr() / v_norm_sq;
            let interference = pw.p_t
                * row
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, z)| z.norm_sqr())
                    .sum::<f64>()
                / v_norm_sq;
            signal / (interference + n0 + n0 / (gain_sq * v_norm_sq))
        })
        .collect();
    PerUserSinr(values)
}

/// ZF SNRs from precomputed Gram matrices.
pub fn zf_snr_from_grams(grams: &ChannelGrams, pw: &PowerSetting, n0: f64) -> Result<PerUserSinr> {
    let (a_inv, b_inv) = grams.zf_inverses()?;
    let gain_sq = zf_gain_sq(&a_inv, &b_inv, pw, n0);
    let values = (0..grams.k())
        .map(|k| {
            let d = a_inv[(k, k)];
            debug_assert!(d.im.abs() < 1e-12);
            gain_sq * pw.p_t / (gain_sq * d.re * n0 + n0)
        })
        .collect();
    Ok(PerUserSinr(values))
}

/// Orthogonal-scheme SNRs: the two-hop AF harmonic form per pair.
pub fn ns_snr_from_grams(grams: &ChannelGrams, pw: &PowerSetting, n0: f64) -> PerUserSinr {
    let values = (0..grams.k())
        .map(|k| {
            let hop1 = pw.p_t * grams.a[(k, k)].re / n0;
            let hop2 = pw.p_r * grams.b[(k, k)].re / n0;
            hop1 * hop2 / (hop1 + hop2 + 1.0)
        })
        .collect();
    PerUserSinr(values)
}

pub fn mrc_sinr(ch: &ChannelRealization, pw: &PowerSetting, n0: f64) -> PerUserSinr {
    mrc_sinr_from_grams(&ChannelGrams::new(ch), pw, n0)
}

pub fn zf_snr(ch: &ChannelRealization, pw: &PowerSetting, n0: f64) -> Result<PerUserSinr> {
    zf_snr_from_grams(&ChannelGrams::new(ch), pw, n0)
}

pub fn ns_snr(ch: &ChannelRealization, pw: &PowerSetting, n0: f64) -> PerUserSinr {
    ns_snr_from_grams(&ChannelGrams::new(ch), pw, n0)
}

/// Per-user SINRs of `scheme` on one realization.
pub fn scheme_sinr(
    scheme: RelayScheme,
    ch: &ChannelRealization,
    pw: &PowerSetting,
    n0: f64,
) -> Result<PerUserSinr> {
    let grams = ChannelGrams::new(ch);
    match scheme {
        RelayScheme::MrcMrt => Ok(mrc_sinr_from_grams(&grams, pw, n0)),
        RelayScheme::Zf => zf_snr_from_grams(&grams, pw, n0),
        RelayScheme::NaiveOrthogonal => Ok(ns_snr_from_grams(&grams, pw, n0)),
    }
}

/// Rate of one user in bits/s/Hz, including the half-duplex and
/// time-sharing pre-log.
pub fn user_rate(sinr: f64, scheme: RelayScheme, k: usize) -> f64 {
    (1.0 + sinr).log2() / (2.0 * scheme.prelog_divisor(k))
}

/// `sum_k log2(1 + sinr_k) / (2 alpha_f)`.
pub fn instantaneous_sum_rate(sinr: &PerUserSinr, scheme: RelayScheme) -> f64 {
    let k = sinr.len();
    sinr.values().iter().map(|&g| user_rate(g, scheme, k)).sum()
}
