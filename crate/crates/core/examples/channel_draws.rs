//! Draws Rayleigh channels with per-pair large-scale gains and shows the
//! columns becoming nearly orthogonal as the array grows.

use multipair_relay::numerics::{dot_h, RandomSource};
use multipair_relay::{draw_channels, LargeScaleProfile, SystemConfig};

pub fn run_example() -> multipair_relay::Result<()> {
    let profile = LargeScaleProfile::new(vec![2.0, 0.5], vec![1.0, 3.0])?;
    for n in [16, 64, 256, 1024] {
        let cfg = SystemConfig::new(n, 2, 1.0)?;
        let trials = 200;
        let (mut own, mut cross) = (0.0, 0.0);
        for t in 0..trials {
            let ch = draw_channels(&cfg, &profile, &RandomSource::new(7, t))?;
            let (a, b) = (ch.g2.column(0), ch.g2.column(1));
            own += dot_h(&b, &b).re / n as f64;
            cross += dot_h(&a, &b).norm() / n as f64;
        }
        println!(
            "N = {n:5}: |g22|^2/N = {:.3} (eta22 = 3), |g21^H g22|/N = {:.4}",
            own / trials as f64,
            cross / trials as f64
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multipair_relay::Result<()> {
    run_example()
}
