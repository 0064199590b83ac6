//! Runs the invariant suite, then again with the ZF gain doubled to show it
//! being caught.

use multipair_relay::cli::check::info_notes;
use multipair_relay::cli::{run_suite, Fault};

pub fn run_example() -> bool {
    let clean = run_suite(None);
    for o in &clean {
        println!("{o}");
    }
    for note in info_notes() {
        println!("{note}");
    }
    let faulty = run_suite(Some(Fault::ZfGainDoubled));
    let caught: Vec<_> = faulty.iter().filter(|o| !o.passed).map(|o| o.property).collect();
    println!("with zf-gain-doubled: failing {caught:?}");
    clean.iter().all(|o| o.passed) && !caught.is_empty()
}

#[allow(dead_code)]
fn main() {
    assert!(run_example());
}
