//! Per-user ergodic rates for an asymmetric profile at a large array, against
//! the closed-form limits. One user favours ZF, the other two MRC/MRT.

use multipair_relay::montecarlo::{estimate_rates, PointSpec};
use multipair_relay::{asym_report, LargeScaleProfile, RelayScheme, ScalingCase};

pub fn run_example() -> multipair_relay::Result<()> {
    let profile = LargeScaleProfile::new(vec![2.0, 2.0, 2.0], vec![1.0, 3.0, 3.0])?;
    let case = ScalingCase::CaseII { p_t: 1.0, e_r: 100.0 };
    let n = 256;
    for scheme in [RelayScheme::MrcMrt, RelayScheme::Zf] {
        let est = estimate_rates(&PointSpec {
            scheme,
            n_antennas: n,
            case,
            profile: &profile,
            noise_power: 1.0,
            trials: 100,
            seed: 5,
        })?;
        let limit = asym_report(scheme, &case, &profile, 1.0)?;
        for (k, (e, r)) in est.per_user.iter().zip(&limit.per_user_rate).enumerate() {
            println!(
                "{scheme:>4} user {}: {:.3} +/- {:.3} at N = {n}, limit {r:.3}",
                k + 1,
                e.mean,
                e.stderr
            );
        }
        println!("{scheme:>4} sum: {:.3}, limit {:.3}", est.sum.mean, limit.sum_rate);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multipair_relay::Result<()> {
    run_example()
}
