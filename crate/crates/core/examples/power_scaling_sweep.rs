//! Ergodic sum rate versus N with the source power cut as 1/N, next to the
//! large-N limit each scheme approaches.

use multipair_relay::montecarlo::convergence_report;
use multipair_relay::{sweep, LargeScaleProfile, RelayScheme, ScalingCase, SweepSpec};

pub fn run_example() -> multipair_relay::Result<()> {
    let trials = std::env::var("TRIALS")
        .ok()
        .and_then(|t| t.parse().ok())
        .unwrap_or(200);
    let spec = SweepSpec {
        schemes: RelayScheme::ALL.to_vec(),
        case: ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 },
        profile: LargeScaleProfile::uniform(5),
        noise_power: 1.0,
        n_values: vec![8, 32, 128],
        trials,
        seed: 11,
    };
    let result = sweep(&spec)?;
    let gaps = convergence_report(&result)?;
    for (row, gap) in result.rows.iter().zip(&gaps) {
        let (lo, hi) = row.estimate.interval(2.0);
        println!(
            "{:>5} N = {:4}: {:.3} [{lo:.3}, {hi:.3}] -> {:.3} ({:.1}% short)",
            row.scheme,
            row.n_antennas,
            row.estimate.mean,
            row.asymptote.unwrap_or(f64::NAN),
            100.0 * gap.relative_gap
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multipair_relay::Result<()> {
    run_example()
}
