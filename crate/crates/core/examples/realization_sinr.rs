//! One fading realization: relay matrices, power check and per-user SINRs
//! of MRC/MRT, zero-forcing and the orthogonal baseline.

use multipair_relay::numerics::RandomSource;
use multipair_relay::relaying::{
    instantaneous_sum_rate, power_check, relay_matrix, scheme_sinr, sinr_from_decomposition,
};
use multipair_relay::{draw_channels, LargeScaleProfile, PowerSetting, RelayScheme, SystemConfig};

pub fn run_example() -> multipair_relay::Result<()> {
    let (n, k, n0) = (64, 4, 1.0);
    let cfg = SystemConfig::new(n, k, n0)?;
    let profile = LargeScaleProfile::uniform(k);
    let ch = draw_channels(&cfg, &profile, &RandomSource::new(2024, 0))?;
    let pw = PowerSetting::new(0.5, 4.0)?;

    for scheme in RelayScheme::ALL {
        let sinr = scheme_sinr(scheme, &ch, &pw, n0)?;
        let shown: Vec<String> = sinr.values().iter().map(|g| format!("{g:7.3}")).collect();
        println!(
            "{scheme:>5}: sinr [{}]  sum rate {:.3} bit/s/Hz",
            shown.join(" "),
            instantaneous_sum_rate(&sinr, scheme)
        );
        if scheme == RelayScheme::NaiveOrthogonal {
            continue;
        }
        let w = relay_matrix(scheme, &ch, &pw, n0)?;
        let direct = sinr_from_decomposition(&w, &ch, &pw, n0, 0)?;
        println!(
            "       relay power {:.6} (P_r = {}), user 1 via W: signal {:.3e}, interference {:.3e}",
            power_check(&w, &ch.g1, &pw, n0)?,
            pw.p_r,
            direct.signal,
            direct.interference
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multipair_relay::Result<()> {
    run_example()
}
