//! Closed-form large-N SINRs under the three power-scaling laws, plus the
//! MRC/MRT-versus-ZF verdicts for an asymmetric profile.

use multipair_relay::asymptotics::{dominance_case2, dominance_case3};
use multipair_relay::{asym_report, LargeScaleProfile, RelayScheme, ScalingCase};

pub fn run_example() -> multipair_relay::Result<()> {
    let n0 = 1.0;
    let profile = LargeScaleProfile::new(vec![2.0, 2.0, 2.0], vec![1.0, 3.0, 3.0])?;
    let cases = [
        ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 },
        ScalingCase::CaseII { p_t: 1.0, e_r: 100.0 },
        ScalingCase::CaseIII { e_t: 10.0, e_r: 100.0 },
    ];
    for case in cases {
        println!("case {case}");
        for scheme in RelayScheme::ALL {
            let rep = asym_report(scheme, &case, &profile, n0)?;
            let sinr: Vec<String> = rep.per_user_sinr.iter().map(|g| format!("{g:8.3}")).collect();
            println!("  {scheme:>5}: sinr [{}]  sum {:.3}", sinr.join(" "), rep.sum_rate);
        }
    }
    for k in 0..profile.k() {
        println!(
            "user {}: fixed N*P_r {:?}, both scaled {:?}",
            k + 1,
            dominance_case2(&profile, k)?,
            dominance_case3(&profile, 10.0, n0, k)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multipair_relay::Result<()> {
    run_example()
}
