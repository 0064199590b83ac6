//! Drives a sweep from the key-value config format used by the binary and
//! prints the resulting CSV.

use multipair_relay::cli::csv::sweep_csv;
use multipair_relay::cli::ExperimentConfig;
use multipair_relay::sweep;

const CONFIG: &str = "\
# both powers scale as 1/N
schemes = mrc, zf
case = III
et = 10db
er = 10db
eta1 = 1, 1, 1
eta2 = 0.5, 1, 2
n = 16, 64
trials = 50
seed = 3
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    let result = sweep(&cfg.sweep_spec())?;
    print!("{}", sweep_csv(&result, &[]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
