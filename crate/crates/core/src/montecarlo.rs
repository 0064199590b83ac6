//! Ergodic sum-rate estimation over fading draws, sweeps over the antenna
//! count, and the gap to the large-N limits.
//!
//! Trial `t` of the `(scheme, N)` point always draws its channels from
//! stream `row_nonce(scheme, N) + t`, and the per-trial results are reduced
//! in ascending trial order, so estimates do not depend on how many worker
//! threads run the trials.

use rayon::prelude::*;

use crate::asymptotics::{asym_report, ScalingCase};
use crate::channel::{draw_channels, LargeScaleProfile, SystemConfig};
use crate::error::{RelayError, Result};
use crate::numerics::RandomSource;
use crate::relaying::{scheme_sinr, user_rate, PowerSetting, RelayScheme};

/// Trials per `(scheme, N)` point when the caller does not say otherwise.
pub const DEFAULT_TRIALS: usize = 1000;

const MAX_TRIALS: usize = 1 << 32;

/// Per-source and relay power at a given antenna count.
pub fn realized_powers(case: &ScalingCase, n: usize) -> PowerSetting {
    let nf = n as f64;
    let (p_t, p_r) = match *case {
        ScalingCase::CaseI { e_t, p_r } => (e_t / nf, p_r),
        ScalingCase::CaseII { p_t, e_r } => (p_t, e_r / nf),
        ScalingCase::CaseIII { e_t, e_r } => (e_t / nf, e_r / nf),
        ScalingCase::Unscaled { p_t, p_r } => (p_t, p_r),
    };
    PowerSetting { p_t, p_r }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

impl Estimate {
    /// Mean and standard error of `samples`, summed in slice order.
    pub fn from_samples(samples: &[f64]) -> Estimate {
        let n = samples.len();
        let nf = n as f64;
        let mean = samples.iter().sum::<f64>() / nf;
        let var = if n > 1 {
            samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nf - 1.0)
        } else {
            0.0
        };
        Estimate {
            mean,
            stderr: (var / nf).sqrt(),
            trials: n,
        }
    }

    /// `mean +/- width * stderr`.
    pub fn interval(&self, width: f64) -> (f64, f64) {
        (self.mean - width * self.stderr, self.mean + width * self.stderr)
    }
}

/// Sum-rate estimate together with one estimate per user.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimates {
    pub sum: Estimate,
    pub per_user: Vec<Estimate>,
}

/// Everything that defines one Monte Carlo point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSpec<'a> {
    pub scheme: RelayScheme,
    pub n_antennas: usize,
    pub case: ScalingCase,
    pub profile: &'a LargeScaleProfile,
    pub noise_power: f64,
    pub trials: usize,
    pub seed: u64,
}

/// First stream of the `(scheme, N)` point; trials add their index to it.
pub fn row_nonce(scheme: RelayScheme, n: usize) -> u64 {
    (scheme.tag() << 56) | (((n as u64) & 0xFF_FFFF) << 32)
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

fn check_point(spec: &PointSpec<'_>) -> Result<()> {
    spec.case.validate()?;
    if spec.trials < 2 || spec.trials > MAX_TRIALS {
        return Err(RelayError::InvalidInput(format!(
            "trials must be in [2, 2^32], got {}",
            spec.trials
        )));
    }
    if spec.scheme == RelayScheme::Zf && spec.n_antennas < spec.profile.k() {
        return Err(RelayError::ZfInfeasible {
            n: spec.n_antennas,
            k: spec.profile.k(),
        });
    }
    Ok(())
}

/// Per-user rates of every trial, in trial order.
fn trial_rates(spec: &PointSpec<'_>) -> Result<Vec<Vec<f64>>> {
    check_point(spec)?;
    let k = spec.profile.k();
    let config = SystemConfig::new(spec.n_antennas, k, spec.noise_power)?;
    let powers = realized_powers(&spec.case, spec.n_antennas);
    let nonce = row_nonce(spec.scheme, spec.n_antennas);

    (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let source = RandomSource::new(spec.seed, nonce + t as u64);
            let ch = draw_channels(&config, spec.profile, &source)?;
            let sinr = scheme_sinr(spec.scheme, &ch, &powers, spec.noise_power)?;
            let rates: Vec<f64> = sinr
                .values()
                .iter()
                .map(|&g| user_rate(g, spec.scheme, k))
                .collect();
            match rates.iter().find(|r| !r.is_finite()) {
                Some(&value) => Err(RelayError::NonFiniteTrial { trial: t, value }),
                None => Ok(rates),
            }
        })
        .collect()
}

/// Estimates the ergodic sum rate and each user's ergodic rate.
pub fn estimate_rates(spec: &PointSpec<'_>) -> Result<RateEstimates> {
    let rates = trial_rates(spec)?;
    let sums: Vec<f64> = rates.iter().map(|r| r.iter().sum()).collect();
    let per_user = (0..spec.profile.k())
        .map(|k| {
            let col: Vec<f64> = rates.iter().map(|r| r[k]).collect();
            Estimate::from_samples(&col)
        })
        .collect();
    Ok(RateEstimates {
        sum: Estimate::from_samples(&sums),
        per_user,
    })
}

/// Sample-mean estimate of the ergodic sum rate at `n` antennas.
#[allow(clippy::too_many_arguments)]
pub fn estimate_ergodic_sum_rate(
    scheme: RelayScheme,
    n: usize,
    case: &ScalingCase,
    profile: &LargeScaleProfile,
    noise_power: f64,
    trials: usize,
    seed: u64,
) -> Result<Estimate> {
    let spec = PointSpec {
        scheme,
        n_antennas: n,
        case: *case,
        profile,
        noise_power,
        trials,
        seed,
    };
    Ok(estimate_rates(&spec)?.sum)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub schemes: Vec<RelayScheme>,
    pub case: ScalingCase,
    pub profile: LargeScaleProfile,
    pub noise_power: f64,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(RelayError::InvalidInput("no schemes selected".into()));
        }
        if self.n_values.is_empty() || self.n_values[0] == 0 {
            return Err(RelayError::InvalidInput(
                "antenna counts must be non-empty and positive".into(),
            ));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RelayError::InvalidInput(
                "antenna counts must be strictly increasing".into(),
            ));
        }
        if self.trials < 2 {
            return Err(RelayError::InvalidInput(format!(
                "at least 2 trials are needed, got {}",
                self.trials
            )));
        }
        if !(self.noise_power.is_finite() && self.noise_power > 0.0) {
            return Err(RelayError::InvalidInput(format!(
                "noise power must be positive, got {}",
                self.noise_power
            )));
        }
        self.case.validate()?;
        let k = self.profile.k();
        if self.schemes.contains(&RelayScheme::Zf) && self.n_values[0] < k {
            return Err(RelayError::ZfInfeasible {
                n: self.n_values[0],
                k,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub scheme: RelayScheme,
    pub n_antennas: usize,
    pub estimate: Estimate,
    pub asymptote: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub case: ScalingCase,
    pub rows: Vec<SweepRow>,
}

/// One estimate per `(scheme, N)`, scheme-major in the order given.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.schemes.len() * spec.n_values.len());
    for &scheme in &spec.schemes {
        let asymptote = if spec.case.is_scaled() {
            Some(asym_report(scheme, &spec.case, &spec.profile, spec.noise_power)?.sum_rate)
        } else {
            None
        };
        for &n in &spec.n_values {
            let estimate = estimate_ergodic_sum_rate(
                scheme,
                n,
                &spec.case,
                &spec.profile,
                spec.noise_power,
                spec.trials,
                spec.seed,
            )?;
            rows.push(SweepRow {
                scheme,
                n_antennas: n,
                estimate,
                asymptote,
            });
        }
    }
    Ok(SweepResult {
        case: spec.case,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceGap {
    pub scheme: RelayScheme,
    pub n_antennas: usize,
    pub relative_gap: f64,
}

/// `|mean - asymptote| / asymptote` for every row.
pub fn convergence_report(result: &SweepResult) -> Result<Vec<ConvergenceGap>> {
    result
        .rows
        .iter()
        .map(|row| {
            let asym = row.asymptote.ok_or(RelayError::MissingAsymptote {
                scheme: row.scheme.name(),
                n: row.n_antennas,
            })?;
            Ok(ConvergenceGap {
                scheme: row.scheme,
                n_antennas: row.n_antennas,
                relative_gap: (row.estimate.mean - asym).abs() / asym,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case1() -> ScalingCase {
        ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 }
    }

    #[test]
    fn powers_per_case() {
        assert_eq!(
            realized_powers(&case1(), 100),
            PowerSetting { p_t: 0.1, p_r: 1.0 }
        );
        assert_eq!(
            realized_powers(&ScalingCase::CaseIII { e_t: 10.0, e_r: 10.0 }, 10),
            PowerSetting { p_t: 1.0, p_r: 1.0 }
        );
        assert_eq!(
            realized_powers(&ScalingCase::CaseII { p_t: 1.0, e_r: 8.0 }, 4),
            PowerSetting { p_t: 1.0, p_r: 2.0 }
        );
        for n in [1, 7, 1000] {
            assert_eq!(
                realized_powers(&ScalingCase::Unscaled { p_t: 2.0, p_r: 3.0 }, n),
                PowerSetting { p_t: 2.0, p_r: 3.0 }
            );
        }
    }

    #[test]
    fn estimate_statistics() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        assert!((e.stderr - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(e.trials, 4);
    }

    #[test]
    fn estimate_is_deterministic() {
        let p = LargeScaleProfile::uniform(3);
        let run = || estimate_ergodic_sum_rate(RelayScheme::MrcMrt, 16, &case1(), &p, 1.0, 2, 9);
        assert_eq!(run().unwrap(), run().unwrap());
    }

    #[test]
    fn estimate_rejects_bad_inputs() {
        let p = LargeScaleProfile::uniform(5);
        assert!(matches!(
            estimate_ergodic_sum_rate(RelayScheme::Zf, 4, &case1(), &p, 1.0, 10, 0),
            Err(RelayError::ZfInfeasible { n: 4, k: 5 })
        ));
        assert!(matches!(
            estimate_ergodic_sum_rate(RelayScheme::MrcMrt, 8, &case1(), &p, 1.0, 1, 0),
            Err(RelayError::InvalidInput(_))
        ));
    }

    #[test]
    fn worker_count_does_not_change_estimates() {
        let p = LargeScaleProfile::new(vec![1.0, 2.0, 0.5], vec![1.5, 1.0, 3.0]).unwrap();
        let run = || {
            estimate_rates(&PointSpec {
                scheme: RelayScheme::Zf,
                n_antennas: 24,
                case: ScalingCase::CaseIII { e_t: 5.0, e_r: 5.0 },
                profile: &p,
                noise_power: 1.0,
                trials: 300,
                seed: 4,
            })
            .unwrap()
        };
        let one = with_workers(1, run);
        for w in [2, 8] {
            assert_eq!(with_workers(w, run), one);
        }
    }

    #[test]
    fn row_nonces_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for s in RelayScheme::ALL {
            for n in [1, 2, 64, 512, 2048, 1 << 20] {
                assert!(seen.insert(row_nonce(s, n)));
            }
        }
    }

    #[test]
    fn naive_case1_close_to_limit() {
        let p = LargeScaleProfile::uniform(5);
        let e = estimate_ergodic_sum_rate(RelayScheme::NaiveOrthogonal, 512, &case1(), &p, 1.0, 1000, 1)
            .unwrap();
        assert!((e.mean - 1.7297).abs() / 1.7297 < 0.05, "{e:?}");
    }

    #[test]
    fn stderr_halves_with_four_times_trials() {
        let p = LargeScaleProfile::uniform(3);
        let est = |trials| {
            estimate_ergodic_sum_rate(RelayScheme::MrcMrt, 16, &case1(), &p, 1.0, trials, 21).unwrap()
        };
        let ratio = est(500).stderr / est(2000).stderr;
        assert!((ratio - 2.0).abs() / 2.0 < 0.3, "{ratio}");
    }

    #[test]
    fn sweep_shape_and_validation() {
        let spec = SweepSpec {
            schemes: vec![RelayScheme::MrcMrt],
            case: case1(),
            profile: LargeScaleProfile::uniform(5),
            noise_power: 1.0,
            n_values: vec![32],
            trials: 20,
            seed: 0,
        };
        let res = sweep(&spec).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert!((res.rows[0].asymptote.unwrap() - 8.6486).abs() < 1e-4);

        let bad = SweepSpec {
            schemes: vec![RelayScheme::MrcMrt, RelayScheme::Zf],
            n_values: vec![2, 64],
            ..spec.clone()
        };
        assert_eq!(sweep(&bad), Err(RelayError::ZfInfeasible { n: 2, k: 5 }));

        let unsorted = SweepSpec {
            n_values: vec![64, 32],
            ..spec.clone()
        };
        assert!(matches!(sweep(&unsorted), Err(RelayError::InvalidInput(_))));

        let unscaled = SweepSpec {
            case: ScalingCase::Unscaled { p_t: 1.0, p_r: 1.0 },
            ..spec
        };
        let res = sweep(&unscaled).unwrap();
        assert_eq!(res.rows[0].asymptote, None);
        assert!(matches!(
            convergence_report(&res),
            Err(RelayError::MissingAsymptote { .. })
        ));
    }

    #[test]
    fn convergence_gaps() {
        let est = |mean| Estimate {
            mean,
            stderr: 0.0,
            trials: 2,
        };
        let result = SweepResult {
            case: case1(),
            rows: vec![
                SweepRow {
                    scheme: RelayScheme::MrcMrt,
                    n_antennas: 8,
                    estimate: est(8.5),
                    asymptote: Some(8.5),
                },
                SweepRow {
                    scheme: RelayScheme::Zf,
                    n_antennas: 8,
                    estimate: est(4.0),
                    asymptote: Some(5.0),
                },
                SweepRow {
                    scheme: RelayScheme::Zf,
                    n_antennas: 16,
                    estimate: est(6.0),
                    asymptote: Some(5.0),
                },
            ],
        };
        let gaps = convergence_report(&result).unwrap();
        assert_eq!(gaps[0].relative_gap, 0.0);
        assert!((gaps[1].relative_gap - 0.2).abs() < 1e-15);
        assert!((gaps[2].relative_gap - 0.2).abs() < 1e-15);
        assert!(gaps.iter().all(|g| g.relative_gap >= 0.0));
    }
}
