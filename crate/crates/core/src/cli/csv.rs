//! CSV rendering with fixed column order and six significant digits.

use crate::asymptotics::AsymptoticReport;
use crate::channel::LargeScaleProfile;
use crate::montecarlo::SweepResult;

pub const SWEEP_HEADER: &str = "scheme,case,N,trials,sum_rate_mean,sum_rate_stderr,asymptote";
pub const ASYMPTOTE_HEADER: &str = "scheme,k,eta1,eta2,sinr,rate";

/// Formats like C's `%.6g`: six significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-4, 1e6)`.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // rounding first so that e.g. 999999.7 picks the right exponent
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Sweep table, preceded by any `comments` lines.
pub fn sweep_csv(result: &SweepResult, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out += c;
        out.push('\n');
    }
    out += SWEEP_HEADER;
    out.push('\n');
    for row in &result.rows {
        let asym = row.asymptote.map(fmt_sig6).unwrap_or_default();
        out += &format!(
            "{},{},{},{},{},{},{}\n",
            row.scheme,
            result.case,
            row.n_antennas,
            row.estimate.trials,
            fmt_sig6(row.estimate.mean),
            fmt_sig6(row.estimate.stderr),
            asym
        );
    }
    out
}

/// Per-user large-N table; users are numbered from 1 and each scheme ends
/// with a `sum` row.
pub fn asymptote_csv(
    reports: &[AsymptoticReport],
    profile: &LargeScaleProfile,
    comments: &[String],
) -> String {
    let mut out = String::new();
    for c in comments {
        out += c;
        out.push('\n');
    }
    out += ASYMPTOTE_HEADER;
    out.push('\n');
    for rep in reports {
        for (k, (sinr, rate)) in rep.per_user_sinr.iter().zip(&rep.per_user_rate).enumerate() {
            out += &format!(
                "{},{},{},{},{},{}\n",
                rep.scheme,
                k + 1,
                fmt_sig6(profile.eta1()[k]),
                fmt_sig6(profile.eta2()[k]),
                fmt_sig6(*sinr),
                fmt_sig6(*rate)
            );
        }
        out += &format!("{},sum,,,,{}\n", rep.scheme, fmt_sig6(rep.sum_rate));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{asym_report, ScalingCase};
    use crate::montecarlo::{Estimate, SweepRow};
    use crate::relaying::RelayScheme;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig6(8.648639), "8.64864");
        assert_eq!(fmt_sig6(1.0), "1");
        assert_eq!(fmt_sig6(0.0), "0");
        assert_eq!(fmt_sig6(123456789.0), "1.23457e+08");
        assert_eq!(fmt_sig6(0.000012345678), "1.23457e-05");
        assert_eq!(fmt_sig6(0.00012345678), "0.000123457");
        assert_eq!(fmt_sig6(999999.7), "1e+06");
        assert_eq!(fmt_sig6(-2.5), "-2.5");
        assert_eq!(fmt_sig6(100.0), "100");
        assert_eq!(fmt_sig6(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn sweep_table_layout() {
        let result = SweepResult {
            case: ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 },
            rows: vec![SweepRow {
                scheme: RelayScheme::Zf,
                n_antennas: 64,
                estimate: Estimate {
                    mean: 6.4386123,
                    stderr: 0.00312,
                    trials: 2000,
                },
                asymptote: Some(8.6486),
            }],
        };
        let csv = sweep_csv(&result, &["# note".to_string()]);
        assert_eq!(
            csv,
            "# note\nscheme,case,N,trials,sum_rate_mean,sum_rate_stderr,asymptote\nzf,I,64,2000,6.43861,0.00312,8.6486\n"
        );
    }

    #[test]
    fn asymptote_table_layout() {
        let p = LargeScaleProfile::new(vec![2.0, 2.0, 2.0], vec![1.0, 3.0, 3.0]).unwrap();
        let case = ScalingCase::CaseII { p_t: 1.0, e_r: 100.0 };
        let rep = asym_report(RelayScheme::Zf, &case, &p, 1.0).unwrap();
        let csv = asymptote_csv(&[rep], &p, &[]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], ASYMPTOTE_HEADER);
        assert_eq!(lines[1], "zf,1,2,1,60,2.96537");
        assert_eq!(lines[4], "zf,sum,,,,8.89611");
    }
}
