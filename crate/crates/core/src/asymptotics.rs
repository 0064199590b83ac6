//! Deterministic large-N limits of the per-user SINRs under the three
//! power-scaling laws, plus the MRC/MRT-versus-ZF dominance tests.
//!
//! Every trace over the diagonal large-scale matrices is written out as a
//! plain sum over pairs, e.g. `Tr(D1^2 D2) = sum_i eta1_i^2 eta2_i`.

use std::fmt;

use crate::channel::LargeScaleProfile;
use crate::error::{RelayError, Result};
use crate::relaying::{user_rate, RelayScheme};

/// Relative tolerance under which the two sides of a dominance test tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Which powers shrink as `1/N`. `E_*` are the fixed products `N P_*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingCase {
    /// `P_t = E_t / N`, relay power fixed.
    CaseI { e_t: f64, p_r: f64 },
    /// Source power fixed, `P_r = E_r / N`.
    CaseII { p_t: f64, e_r: f64 },
    /// Both scaled.
    CaseIII { e_t: f64, e_r: f64 },
    /// Nothing scaled.
    Unscaled { p_t: f64, p_r: f64 },
}

impl ScalingCase {
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.parameters();
        if [a, b].iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(())
        } else {
            Err(RelayError::InvalidInput(format!(
                "case {} needs finite positive powers, got ({a}, {b})",
                self.name()
            )))
        }
    }

    /// The two stored numbers in declaration order.
    pub fn parameters(&self) -> (f64, f64) {
        match *self {
            ScalingCase::CaseI { e_t, p_r } => (e_t, p_r),
            ScalingCase::CaseII { p_t, e_r } => (p_t, e_r),
            ScalingCase::CaseIII { e_t, e_r } => (e_t, e_r),
            ScalingCase::Unscaled { p_t, p_r } => (p_t, p_r),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalingCase::CaseI { .. } => "I",
            ScalingCase::CaseII { .. } => "II",
            ScalingCase::CaseIII { .. } => "III",
            ScalingCase::Unscaled { .. } => "unscaled",
        }
    }

    pub fn is_scaled(&self) -> bool {
        !matches!(self, ScalingCase::Unscaled { .. })
    }
}

impl fmt::Display for ScalingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub scheme: RelayScheme,
    pub per_user_sinr: Vec<f64>,
    pub per_user_rate: Vec<f64>,
    pub sum_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    MrcBetter,
    ZfBetter,
    Tie,
}

fn check_inputs(case: &ScalingCase, n0: f64) -> Result<()> {
    case.validate()?;
    if !(n0.is_finite() && n0 > 0.0) {
        return Err(RelayError::InvalidInput(format!(
            "noise power must be positive for large-N limits, got {n0}"
        )));
    }
    if !case.is_scaled() {
        return Err(RelayError::UnsupportedCase("unscaled"));
    }
    Ok(())
}

/// `sum_i eta1_i^2 eta2_i`
fn tr_d1sq_d2(p: &LargeScaleProfile) -> f64 {
    p.eta1().iter().zip(p.eta2()).map(|(a, b)| a * a * b).sum()
}

/// `sum_i eta1_i eta2_i`
fn tr_d1_d2(p: &LargeScaleProfile) -> f64 {
    p.eta1().iter().zip(p.eta2()).map(|(a, b)| a * b).sum()
}

/// `sum_i 1 / eta2_i`
fn tr_inv_d2(p: &LargeScaleProfile) -> f64 {
    p.eta2().iter().map(|b| 1.0 / b).sum()
}

/// `sum_i 1 / (eta1_i eta2_i)`
fn tr_inv_d1_d2(p: &LargeScaleProfile) -> f64 {
    p.eta1().iter().zip(p.eta2()).map(|(a, b)| 1.0 / (a * b)).sum()
}

/// First-hop limit shared by all schemes when the sources scale.
fn source_limited(e_t: f64, p: &LargeScaleProfile, n0: f64) -> Vec<f64> {
    p.eta1().iter().map(|e1| e_t * e1 / n0).collect()
}

/// Large-N MRC/MRT SINR of every user.
pub fn asym_sinr_mrc(case: &ScalingCase, p: &LargeScaleProfile, n0: f64) -> Result<Vec<f64>> {
    check_inputs(case, n0)?;
    let users = p.eta1().iter().zip(p.eta2());
    Ok(match *case {
        ScalingCase::CaseI { e_t, .. } => source_limited(e_t, p, n0),
        ScalingCase::CaseII { e_r, .. } => {
            let tr = tr_d1sq_d2(p);
            users.map(|(e1, e2)| e_r * e1 * e1 * e2 * e2 / (tr * n0)).collect()
        }
        ScalingCase::CaseIII { e_t, e_r } => {
            let tr = e_t * tr_d1sq_d2(p) + n0 * tr_d1_d2(p);
            users
                .map(|(e1, e2)| (e_t * e1 / n0) / (1.0 + tr / (e_r * e1 * e2 * e2)))
                .collect()
        }
        ScalingCase::Unscaled { .. } => unreachable!(),
    })
}

/// Large-N ZF SINR of every user.
pub fn asym_sinr_zf(case: &ScalingCase, p: &LargeScaleProfile, n0: f64) -> Result<Vec<f64>> {
    check_inputs(case, n0)?;
    Ok(match *case {
        ScalingCase::CaseI { e_t, .. } => source_limited(e_t, p, n0),
        ScalingCase::CaseII { e_r, .. } => {
            let g = e_r / (tr_inv_d2(p) * n0);
            vec![g; p.k()]
        }
        ScalingCase::CaseIII { e_t, e_r } => {
            let tr = e_t * tr_inv_d2(p) + n0 * tr_inv_d1_d2(p);
            p.eta1()
                .iter()
                .map(|e1| (e_t * e1 / n0) / (1.0 + tr * e1 / e_r))
                .collect()
        }
        ScalingCase::Unscaled { .. } => unreachable!(),
    })
}

/// Large-N SNR of the orthogonal scheme.
pub fn asym_sinr_ns(case: &ScalingCase, p: &LargeScaleProfile, n0: f64) -> Result<Vec<f64>> {
    check_inputs(case, n0)?;
    let users = p.eta1().iter().zip(p.eta2());
    Ok(match *case {
        ScalingCase::CaseI { e_t, .. } => source_limited(e_t, p, n0),
        ScalingCase::CaseII { e_r, .. } => p.eta2().iter().map(|e2| e_r * e2 / n0).collect(),
        ScalingCase::CaseIII { e_t, e_r } => users
            .map(|(e1, e2)| {
                let hop1 = e_t * e1 / n0;
                let hop2 = e_r * e2 / n0;
                hop1 * hop2 / (hop1 + hop2 + 1.0)
            })
            .collect(),
        ScalingCase::Unscaled { .. } => unreachable!(),
    })
}

pub fn asym_sinr(
    scheme: RelayScheme,
    case: &ScalingCase,
    p: &LargeScaleProfile,
    n0: f64,
) -> Result<Vec<f64>> {
    match scheme {
        RelayScheme::MrcMrt => asym_sinr_mrc(case, p, n0),
        RelayScheme::Zf => asym_sinr_zf(case, p, n0),
        RelayScheme::NaiveOrthogonal => asym_sinr_ns(case, p, n0),
    }
}

/// Large-N per-user SINRs, rates and sum rate.
pub fn asym_report(
    scheme: RelayScheme,
    case: &ScalingCase,
    p: &LargeScaleProfile,
    n0: f64,
) -> Result<AsymptoticReport> {
    let per_user_sinr = asym_sinr(scheme, case, p, n0)?;
    let k = per_user_sinr.len();
    let per_user_rate: Vec<f64> = per_user_sinr
        .iter()
        .map(|&g| user_rate(g, scheme, k))
        .collect();
    let sum_rate = per_user_rate.iter().sum();
    Ok(AsymptoticReport {
        scheme,
        per_user_sinr,
        per_user_rate,
        sum_rate,
    })
}

/// Compares `lhs` (ZF wins when larger) against `rhs` (MRC wins when larger).
fn verdict(lhs: f64, rhs: f64) -> Dominance {
    let scale = lhs.abs().max(rhs.abs());
    if (lhs - rhs).abs() <= TIE_TOLERANCE * scale {
        Dominance::Tie
    } else if lhs < rhs {
        Dominance::MrcBetter
    } else {
        Dominance::ZfBetter
    }
}

fn check_index(p: &LargeScaleProfile, k: usize) -> Result<()> {
    if k >= p.k() {
        Err(RelayError::IndexOutOfRange {
            index: k,
            len: p.k(),
        })
    } else {
        Ok(())
    }
}

/// Which of MRC/MRT and ZF gives user `k` the higher rate when the relay
/// power scales as `1/N`:
/// `(1/(eta1k^2 eta2k^2)) sum_{i!=k} eta1i^2 eta2i` versus `sum_{i!=k} 1/eta2i`.
pub fn dominance_case2(p: &LargeScaleProfile, k: usize) -> Result<Dominance> {
    check_index(p, k)?;
    let (e1k, e2k) = (p.eta1()[k], p.eta2()[k]);
    let others = || {
        p.eta1()
            .iter()
            .zip(p.eta2())
            .enumerate()
            .filter(move |&(i, _)| i != k)
            .map(|(_, pair)| pair)
    };
    let lhs = others().map(|(a, b)| a * a * b).sum::<f64>() / (e1k * e1k * e2k * e2k);
    let rhs = others().map(|(_, b)| 1.0 / b).sum::<f64>();
    Ok(verdict(lhs, rhs))
}

/// Same comparison when both source and relay powers scale as `1/N`.
pub fn dominance_case3(p: &LargeScaleProfile, e_t: f64, n0: f64, k: usize) -> Result<Dominance> {
    check_index(p, k)?;
    if !(e_t > 0.0 && n0 > 0.0) {
        return Err(RelayError::InvalidInput(
            "E_t and N0 must be positive".into(),
        ));
    }
    let (e1k, e2k) = (p.eta1()[k], p.eta2()[k]);
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for (i, (a, b)) in p.eta1().iter().zip(p.eta2()).enumerate() {
        if i == k {
            continue;
        }
        let w = 1.0 + e_t * a / n0;
        lhs += a * b * w;
        rhs += w / (a * b);
    }
    Ok(verdict(lhs / (e1k * e1k * e2k * e2k), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig5_profile() -> LargeScaleProfile {
        LargeScaleProfile::new(vec![2.0, 2.0, 2.0], vec![1.0, 3.0, 3.0]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn case1_limits_equal_across_schemes() {
        let p = LargeScaleProfile::uniform(5);
        let case = ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 };
        let mrc = asym_sinr_mrc(&case, &p, 1.0).unwrap();
        assert_eq!(mrc, vec![10.0; 5]);
        assert_eq!(asym_sinr_zf(&case, &p, 1.0).unwrap(), mrc);
        assert_eq!(asym_sinr_ns(&case, &p, 1.0).unwrap(), mrc);
    }

    #[test]
    fn case2_mrc_fig5_profile() {
        let case = ScalingCase::CaseII { p_t: 1.0, e_r: 100.0 };
        let g = asym_sinr_mrc(&case, &fig5_profile(), 1.0).unwrap();
        // Tr(D1^2 D2) = 4 + 12 + 12 = 28
        let expect = [400.0 / 28.0, 3600.0 / 28.0, 3600.0 / 28.0];
        for (a, b) in g.iter().zip(expect) {
            assert!(close(*a, b, 1e-14), "{a} vs {b}");
        }
        assert!((g[0] - 14.286).abs() < 1e-3 && (g[1] - 128.571).abs() < 1e-3);
    }

    #[test]
    fn case2_zf_fig5_profile() {
        let case = ScalingCase::CaseII { p_t: 1.0, e_r: 100.0 };
        let g = asym_sinr_zf(&case, &fig5_profile(), 1.0).unwrap();
        for x in &g {
            assert!(close(*x, 60.0, 1e-14));
        }
        let rep = asym_report(RelayScheme::Zf, &case, &fig5_profile(), 1.0).unwrap();
        assert!((rep.sum_rate - 1.5 * 61f64.log2()).abs() < 1e-12);
        assert!((rep.sum_rate - 8.897).abs() < 1e-3);
        let mrc = asym_report(RelayScheme::MrcMrt, &case, &fig5_profile(), 1.0).unwrap();
        assert!((mrc.sum_rate - 8.985).abs() < 1e-3, "{}", mrc.sum_rate);
    }

    #[test]
    fn case3_equal_fading_values() {
        let p = LargeScaleProfile::uniform(5);
        let case = ScalingCase::CaseIII { e_t: 10.0, e_r: 10.0 };
        let expect = 10.0 / (1.0 + 0.5 * 11.0);
        for x in asym_sinr_mrc(&case, &p, 1.0).unwrap() {
            assert!(close(x, expect, 1e-14));
        }
        for x in asym_sinr_zf(&case, &p, 1.0).unwrap() {
            assert!(close(x, expect, 1e-14));
        }
        for x in asym_sinr_ns(&case, &p, 1.0).unwrap() {
            assert!(close(x, 100.0 / 21.0, 1e-14));
        }
        let rep = asym_report(RelayScheme::MrcMrt, &case, &p, 1.0).unwrap();
        assert!((rep.sum_rate - 3.360).abs() < 1e-3, "{}", rep.sum_rate);
    }

    #[test]
    fn ns_case2_is_second_hop() {
        let case = ScalingCase::CaseII { p_t: 1.0, e_r: 10.0 };
        assert_eq!(
            asym_sinr_ns(&case, &LargeScaleProfile::uniform(3), 1.0).unwrap(),
            vec![10.0; 3]
        );
    }

    #[test]
    fn reports_and_prelog() {
        let p = LargeScaleProfile::uniform(5);
        let case = ScalingCase::CaseI { e_t: 10.0, p_r: 1.0 };
        let mrc = asym_report(RelayScheme::MrcMrt, &case, &p, 1.0).unwrap();
        assert!((mrc.sum_rate - 8.6486).abs() < 1e-4);
        let ns = asym_report(RelayScheme::NaiveOrthogonal, &case, &p, 1.0).unwrap();
        assert!((ns.sum_rate - 1.7297).abs() < 1e-4);
        assert_eq!(ns.sum_rate, ns.per_user_rate.iter().sum::<f64>());
    }

    #[test]
    fn unscaled_rejected() {
        let case = ScalingCase::Unscaled { p_t: 1.0, p_r: 1.0 };
        let p = LargeScaleProfile::uniform(2);
        for s in RelayScheme::ALL {
            assert_eq!(
                asym_sinr(s, &case, &p, 1.0),
                Err(RelayError::UnsupportedCase("unscaled"))
            );
        }
    }

    #[test]
    fn invalid_case_rejected() {
        let p = LargeScaleProfile::uniform(2);
        let case = ScalingCase::CaseI { e_t: -1.0, p_r: 1.0 };
        assert!(matches!(
            asym_sinr_mrc(&case, &p, 1.0),
            Err(RelayError::InvalidInput(_))
        ));
    }

    #[test]
    fn dominance_fig5() {
        let p = fig5_profile();
        assert_eq!(dominance_case2(&p, 0).unwrap(), Dominance::ZfBetter);
        assert_eq!(dominance_case2(&p, 1).unwrap(), Dominance::MrcBetter);
        assert_eq!(dominance_case2(&p, 2).unwrap(), Dominance::MrcBetter);
        assert!(dominance_case2(&p, 3).is_err());
    }

    #[test]
    fn dominance_ties() {
        let p = LargeScaleProfile::new(vec![1.7; 4], vec![0.3; 4]).unwrap();
        for k in 0..4 {
            assert_eq!(dominance_case2(&p, k).unwrap(), Dominance::Tie);
            assert_eq!(dominance_case3(&p, 10.0, 1.0, k).unwrap(), Dominance::Tie);
        }
        let single = LargeScaleProfile::new(vec![2.0], vec![5.0]).unwrap();
        assert_eq!(dominance_case2(&single, 0).unwrap(), Dominance::Tie);
        assert_eq!(dominance_case3(&single, 10.0, 1.0, 0).unwrap(), Dominance::Tie);
        assert!(dominance_case3(&single, 10.0, 1.0, 1).is_err());
    }

    #[test]
    fn case3_approaches_other_cases() {
        let p = LargeScaleProfile::new(vec![0.5, 2.0, 1.3], vec![4.0, 0.7, 1.1]).unwrap();
        let (e_t, e_r) = (3.0, 7.0);
        for scheme in [RelayScheme::MrcMrt, RelayScheme::Zf] {
            // E_t -> infinity: Case III -> Case II
            let big_t = asym_sinr(scheme, &ScalingCase::CaseIII { e_t: 1e12, e_r }, &p, 1.0).unwrap();
            let c2 = asym_sinr(scheme, &ScalingCase::CaseII { p_t: 1.0, e_r }, &p, 1.0).unwrap();
            for (a, b) in big_t.iter().zip(&c2) {
                assert!(close(*a, *b, 1e-6), "{scheme}: {a} vs {b}");
            }
            // E_r -> infinity: Case III -> Case I
            let big_r = asym_sinr(scheme, &ScalingCase::CaseIII { e_t, e_r: 1e12 }, &p, 1.0).unwrap();
            let c1 = asym_sinr(scheme, &ScalingCase::CaseI { e_t, p_r: 1.0 }, &p, 1.0).unwrap();
            for (a, b) in big_r.iter().zip(&c1) {
                assert!(close(*a, *b, 1e-6), "{scheme}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn equal_fading_special_forms() {
        let (k, e1, e2, e_t, e_r, n0) = (4usize, 1.5, 0.8, 6.0, 9.0, 1.2);
        let p = LargeScaleProfile::new(vec![e1; k], vec![e2; k]).unwrap();
        let c2 = ScalingCase::CaseII { p_t: 2.0, e_r };
        let want2 = e_r * e2 / (k as f64 * n0);
        for s in [RelayScheme::MrcMrt, RelayScheme::Zf] {
            for g in asym_sinr(s, &c2, &p, n0).unwrap() {
                assert!(close(g, want2, 1e-12));
            }
        }
        let c3 = ScalingCase::CaseIII { e_t, e_r };
        let snr1 = e_t * e1 / n0;
        let want3 = snr1 / (1.0 + k as f64 / (e_r * e2 / n0) * (1.0 + snr1));
        for s in [RelayScheme::MrcMrt, RelayScheme::Zf] {
            for g in asym_sinr(s, &c3, &p, n0).unwrap() {
                assert!(close(g, want3, 1e-12), "{s}: {g} vs {want3}");
            }
        }
    }

    fn arb_profile() -> impl Strategy<Value = LargeScaleProfile> {
        (2usize..=8).prop_flat_map(|k| {
            (
                proptest::collection::vec(-1.0f64..1.0, k),
                proptest::collection::vec(-1.0f64..1.0, k),
            )
                .prop_map(|(a, b)| {
                    LargeScaleProfile::new(
                        a.into_iter().map(|x| 10f64.powf(x)).collect(),
                        b.into_iter().map(|x| 10f64.powf(x)).collect(),
                    )
                    .unwrap()
                })
        })
    }

    fn direct(mrc: f64, zf: f64) -> Dominance {
        if (mrc - zf).abs() <= 1e-12 * mrc.max(zf) {
            Dominance::Tie
        } else if mrc > zf {
            Dominance::MrcBetter
        } else {
            Dominance::ZfBetter
        }
    }

    proptest! {
        #[test]
        fn dominance_matches_direct_comparison(
            p in arb_profile(),
            e_t in 0.1f64..100.0,
            e_r in 0.1f64..100.0,
        ) {
            let c2 = ScalingCase::CaseII { p_t: 1.0, e_r };
            let c3 = ScalingCase::CaseIII { e_t, e_r };
            let (m2, z2) = (asym_sinr_mrc(&c2, &p, 1.0).unwrap(), asym_sinr_zf(&c2, &p, 1.0).unwrap());
            let (m3, z3) = (asym_sinr_mrc(&c3, &p, 1.0).unwrap(), asym_sinr_zf(&c3, &p, 1.0).unwrap());
            for k in 0..p.k() {
                prop_assert_eq!(dominance_case2(&p, k).unwrap(), direct(m2[k], z2[k]));
                prop_assert_eq!(dominance_case3(&p, e_t, 1.0, k).unwrap(), direct(m3[k], z3[k]));
            }
        }

        #[test]
        fn case1_identical_for_all_schemes(p in arb_profile(), e_t in 0.01f64..1000.0) {
            let c = ScalingCase::CaseI { e_t, p_r: 1.0 };
            let m = asym_sinr_mrc(&c, &p, 1.0).unwrap();
            prop_assert_eq!(&m, &asym_sinr_zf(&c, &p, 1.0).unwrap());
            prop_assert_eq!(&m, &asym_sinr_ns(&c, &p, 1.0).unwrap());
        }

        #[test]
        fn limits_increase_with_own_energy(
            p in arb_profile(),
            e in 0.1f64..100.0,
            other in 0.1f64..100.0,
            boost in 1.01f64..10.0,
        ) {
            for s in RelayScheme::ALL {
                let pairs = [
                    (ScalingCase::CaseI { e_t: e, p_r: other }, ScalingCase::CaseI { e_t: e * boost, p_r: other }),
                    (ScalingCase::CaseII { p_t: other, e_r: e }, ScalingCase::CaseII { p_t: other, e_r: e * boost }),
                    (ScalingCase::CaseIII { e_t: e, e_r: other }, ScalingCase::CaseIII { e_t: e * boost, e_r: other }),
                    (ScalingCase::CaseIII { e_t: other, e_r: e }, ScalingCase::CaseIII { e_t: other, e_r: e * boost }),
                ];
                for (lo, hi) in pairs {
                    let a = asym_sinr(s, &lo, &p, 1.0).unwrap();
                    let b = asym_sinr(s, &hi, &p, 1.0).unwrap();
                    for (x, y) in a.iter().zip(&b) {
                        prop_assert!(y > x, "{} {:?}: {} !< {}", s, lo, x, y);
                    }
                }
            }
        }
    }
}
