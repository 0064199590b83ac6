// Smoke-runs every example through its `run_example` entry point.

#[path = "../examples/channel_draws.rs"]
mod channel_draws;
#[path = "../examples/realization_sinr.rs"]
mod realization_sinr;
#[path = "../examples/asymptotic_limits.rs"]
mod asymptotic_limits;
#[path = "../examples/power_scaling_sweep.rs"]
mod power_scaling_sweep;
#[path = "../examples/per_user_rates.rs"]
mod per_user_rates;
#[path = "../examples/config_file_sweep.rs"]
mod config_file_sweep;
#[path = "../examples/self_check.rs"]
mod self_check;

#[test]
fn channel_draws_runs() {
    channel_draws::run_example().unwrap();
}

#[test]
fn realization_sinr_runs() {
    realization_sinr::run_example().unwrap();
}

#[test]
fn asymptotic_limits_runs() {
    asymptotic_limits::run_example().unwrap();
}

#[test]
fn power_scaling_sweep_runs() {
    power_scaling_sweep::run_example().unwrap();
}

#[test]
fn per_user_rates_runs() {
    per_user_rates::run_example().unwrap();
}

#[test]
fn config_file_sweep_runs() {
    config_file_sweep::run_example().unwrap();
}

#[test]
fn self_check_catches_fault() {
    assert!(self_check::run_example());
}
