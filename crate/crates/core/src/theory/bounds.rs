//! The sharp threshold δ₁ and the envelope constants C₁…C₈.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::params::{DerivedParams, ExponentPair, ParamPair};
use crate::error::{Error, Result};
use crate::special::beta;

/// Which coefficient multiplies c/d under the square root of the threshold.
///
/// `Beta` is the correct form. `Alpha` reproduces a misprinted variant and
/// exists so the sharpness checks can demonstrate that it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum ThresholdForm {
    #[default]
    Beta,
    Alpha,
}

/// δ₁ = [(a−b−1) + √((p−1)² + 4β·c/d)] / 2, the larger root of
/// (c/d−1)β + (a−b−1)δ − δ² = 0.
pub fn delta1(pp: ParamPair, ep: ExponentPair) -> Result<f64> {
    let dp = pp.derive();
    let ratio = ep.ratio();
    if !(ratio > 0.0 && ratio <= dp.ratio_bound) {
        return Err(Error::domain(
            "delta1",
            format!("c/d = {ratio} outside (0, {}]", dp.ratio_bound),
        ));
    }
    Ok(threshold(&dp, ratio, ThresholdForm::Beta))
}

/// The threshold under either coefficient form, without the ratio gate.
pub fn threshold(dp: &DerivedParams, ratio: f64, form: ThresholdForm) -> f64 {
    let coef = match form {
        ThresholdForm::Beta => dp.beta,
        ThresholdForm::Alpha => dp.alpha,
    };
    let disc = (dp.p - 1.0).powi(2) + 4.0 * coef * ratio;
    0.5 * ((dp.a - dp.b - 1.0) + disc.sqrt())
}

/// C₁(δ) = (d/(p·c))·((c/d−1)β + (a−b−1)δ − δ²), the limit of G at x → 1⁻.
pub fn c1(pp: ParamPair, ep: ExponentPair, delta: f64) -> f64 {
    let dp = pp.derive();
    dp.threshold_quadratic(ep.ratio(), delta) / (dp.p * ep.ratio())
}

/// C₂(δ) = 1/(p·B(a−δ, b+1+δ)) − 1/(p·B(a, b+1)), the limit of G at x → 0⁺.
pub fn c2(pp: ParamPair, delta: f64) -> Result<f64> {
    let (a, b, p) = (pp.a(), pp.b(), pp.p());
    let shifted = beta(a - delta, b + 1.0 + delta)?;
    let base = beta(a, b + 1.0)?;
    Ok(1.0 / (p * shifted) - 1.0 / (p * base))
}

/// C₃(δ) = −(d/c)(δ² + 2(1−a)δ + (1−a)²(1−c/d)), the b = 1−a case of C₁.
pub fn c3(a: f64, ep: ExponentPair, delta: f64) -> f64 {
    let s = 1.0 - a;
    let r = ep.ratio();
    -(delta * delta + 2.0 * s * delta + s * s * (1.0 - r)) / r
}

/// C₄(δ) = (1/π)[sin(π(a−δ))/(1−a+δ) − sin(πa)/(1−a)], the b = 1−a case of C₂.
pub fn c4(a: f64, delta: f64) -> f64 {
    ((PI * (a - delta)).sin() / (1.0 - a + delta) - (PI * a).sin() / (1.0 - a)) / PI
}

/// C₅(δ) = −(d/c)(δ² + δ + (1−c/d)/4), the a = b = 1/2 case of C₁.
pub fn c5(ep: ExponentPair, delta: f64) -> f64 {
    let r = ep.ratio();
    -(delta * delta + delta + 0.25 * (1.0 - r)) / r
}

/// C₆(δ) = (2/π)[cos(πδ)/(1+2δ) − 1], the a = b = 1/2 case of C₂.
pub fn c6(delta: f64) -> f64 {
    2.0 / PI * ((PI * delta).cos() / (1.0 + 2.0 * delta) - 1.0)
}

/// C₇(δ) = −(3/2)(δ² + 2(1−a)δ + (1−a)²/3), C₃ at c = 2, d = 3.
pub fn c7(a: f64, delta: f64) -> f64 {
    let s = 1.0 - a;
    -1.5 * (delta * delta + 2.0 * s * delta + s * s / 3.0)
}

/// C₈ = C₄; kept separately for the c = 2, d = 3 family.
pub fn c8(a: f64, delta: f64) -> f64 {
    c4(a, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::params::ParamPair;

    fn half() -> ParamPair {
        ParamPair::new(0.5, 0.5).unwrap()
    }

    fn ratios(bound: f64) -> Vec<f64> {
        (1..=20).map(|i| bound * i as f64 / 20.0).collect()
    }

    #[test]
    fn delta1_half_half() {
        for r in ratios(5.0 / 6.0) {
            let ep = ExponentPair::with_ratio(3.0 * r, r).unwrap();
            let d = delta1(half(), ep).unwrap();
            assert!((d - (ep.ratio().sqrt() - 1.0) / 2.0).abs() <= 1e-12);
            assert!(d < 0.0);
        }
    }

    #[test]
    fn delta1_complementary() {
        for &a in &[0.04, 0.2, 0.5, 0.77, 0.95] {
            let pp = ParamPair::complementary(a).unwrap();
            for r in ratios(pp.derive().ratio_bound) {
                let ep = ExponentPair::with_ratio(2.0, r).unwrap();
                let d = delta1(pp, ep).unwrap();
                assert!((d - (ep.ratio().sqrt() - 1.0) * (1.0 - a)).abs() <= 1e-12, "a={a} r={r}");
            }
        }
    }

    #[test]
    fn delta1_residual_and_sign() {
        for &(a, b) in &[(0.1, 0.9), (0.3, 1.5), (0.9, 3.0), (0.6, 1.0)] {
            let pp = ParamPair::new(a, b).unwrap();
            let dp = pp.derive();
            for r in ratios(dp.ratio_bound) {
                let ep = ExponentPair::with_ratio(2.0, r).unwrap();
                let d = delta1(pp, ep).unwrap();
                assert!(d < 0.0 && d > a - 1.0);
                assert!(dp.threshold_quadratic(ep.ratio(), d).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn delta1_ratio_gate() {
        let ep = ExponentPair::new(0.99, 1.0).unwrap();
        assert!(delta1(half(), ep).is_err());
        let dp = half().derive();
        // degenerate ratio → 1: larger root of −δ² + (a−b−1)δ is 0
        assert!(threshold(&dp, 1.0 - 1e-12, ThresholdForm::Beta).abs() < 1e-12);
        assert!(threshold(&dp, 1.0 - 1e-12, ThresholdForm::Beta) < 0.0);
    }

    #[test]
    fn c1_zero_at_threshold_and_limit_at_left_end() {
        for &(a, b) in &[(0.5, 0.5), (0.2, 1.5), (0.8, 3.0)] {
            let pp = ParamPair::new(a, b).unwrap();
            let dp = pp.derive();
            let ep = ExponentPair::with_ratio(2.0, 0.6 * dp.ratio_bound).unwrap();
            let d1 = delta1(pp, ep).unwrap();
            assert!(c1(pp, ep, d1).abs() <= 1e-12);
            let left = c1(pp, ep, a - 1.0 + 1e-12);
            assert!((left - dp.beta / dp.p).abs() < 1e-10);
        }
    }

    #[test]
    fn c1_sign_split() {
        let pp = ParamPair::new(0.3, 1.5).unwrap();
        let ep = ExponentPair::with_ratio(2.0, 0.6).unwrap();
        let d1 = delta1(pp, ep).unwrap();
        let lo = pp.a() - 1.0;
        for i in 1..1000 {
            let d = lo + (0.0 - lo) * i as f64 / 1000.0;
            let v = c1(pp, ep, d);
            if d <= d1 {
                assert!(v >= -1e-15, "δ={d}");
            } else {
                assert!(v < 0.0, "δ={d}");
            }
        }
    }

    #[test]
    fn c2_vanishes_at_zero_and_decreases() {
        for &(a, b) in &[(0.5, 0.5), (0.2, 1.0), (0.9, 3.0)] {
            let pp = ParamPair::new(a, b).unwrap();
            assert_eq!(c2(pp, 0.0).unwrap(), 0.0);
            let mut prev = f64::INFINITY;
            for i in 1..200 {
                let d = (a - 1.0) * (1.0 - i as f64 / 200.0);
                let v = c2(pp, d).unwrap();
                assert!(v < prev, "({a},{b}) δ={d}");
                prev = v;
            }
        }
    }

    #[test]
    fn specializations_agree() {
        let ep23 = ExponentPair::new(2.0, 3.0).unwrap();
        assert_eq!(c4(0.3, 0.0), 0.0);
        for &a in &[0.1, 0.45, 0.8] {
            let pp = ParamPair::complementary(a).unwrap();
            for i in 1..40 {
                let d = (a - 1.0) * i as f64 / 40.0;
                assert!((c3(a, ep23, d) - c1(pp, ep23, d)).abs() <= 1e-12);
                assert!((c4(a, d) - c2(pp, d).unwrap()).abs() <= 1e-12, "a={a} δ={d}");
                assert!((c7(a, d) - c1(pp, ep23, d)).abs() <= 1e-12);
                assert_eq!(c8(a, d), c4(a, d));
            }
        }
        let ep = ExponentPair::new(1.0, 1.7).unwrap();
        for i in 1..40 {
            let d = -0.5 * i as f64 / 40.0;
            assert!((c5(ep, d) - c1(half(), ep, d)).abs() <= 1e-12);
            assert!((c6(d) - c2(half(), d).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn alpha_form_differs() {
        let dp = half().derive();
        let beta_form = threshold(&dp, 2.0 / 3.0, ThresholdForm::Beta);
        let alpha_form = threshold(&dp, 2.0 / 3.0, ThresholdForm::Alpha);
        assert!(alpha_form > 0.0 && beta_form < 0.0);
    }
}
