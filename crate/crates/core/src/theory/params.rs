use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base parameters (a, b) with a ∈ (0,1) and b ≥ 1−a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPair {
    a: f64,
    b: f64,
}

impl ParamPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::domain("ParamPair", format!("a = {a} must lie in (0, 1)")));
        }
        if !(b.is_finite() && b >= 1.0 - a) {
            return Err(Error::domain("ParamPair", format!("b = {b} must satisfy b >= 1-a = {}", 1.0 - a)));
        }
        Ok(ParamPair { a, b })
    }

    /// The b = 1−a specialization.
    pub fn complementary(a: f64) -> Result<Self> {
        Self::new(a, 1.0 - a)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn p(&self) -> f64 {
        self.a + self.b
    }

    pub fn derive(&self) -> DerivedParams {
        derive_params(*self)
    }
}

/// α, β, p, h, k and the admissible ratio bound (β+p)/k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub h: f64,
    pub k: f64,
    pub ratio_bound: f64,
}

pub fn derive_params(pp: ParamPair) -> DerivedParams {
    let (a, b) = (pp.a, pp.b);
    let alpha = a * (b + 1.0);
    let beta = b * (1.0 - a);
    let p = a + b;
    let h = alpha * beta * (p + beta);
    let k = beta * (p + 1.0) + p;
    DerivedParams {
        a,
        b,
        alpha,
        beta,
        p,
        h,
        k,
        ratio_bound: (beta + p) / k,
    }
}

impl DerivedParams {
    /// h written out in a and b: a(1−a)b(b+1)(a+2b−ab).
    pub fn h_expanded(&self) -> f64 {
        let (a, b) = (self.a, self.b);
        a * (1.0 - a) * b * (b + 1.0) * (a + 2.0 * b - a * b)
    }

    /// The quadratic whose larger root is δ₁: (c/d−1)β + (a−b−1)δ − δ².
    pub fn threshold_quadratic(&self, ratio: f64, delta: f64) -> f64 {
        (ratio - 1.0) * self.beta + (self.a - self.b - 1.0) * delta - delta * delta
    }
}

/// Which branch of the admissibility hypothesis a pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionCase {
    /// α ≥ √3 β
    CaseA,
    /// α < √3 β and 4h(β+p) ≥ p⁴
    CaseB,
    Inadmissible,
}

impl ConditionCase {
    pub fn is_admissible(self) -> bool {
        self != ConditionCase::Inadmissible
    }
}

impl std::fmt::Display for ConditionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConditionCase::CaseA => "CaseA",
            ConditionCase::CaseB => "CaseB",
            ConditionCase::Inadmissible => "Inadmissible",
        };
        f.write_str(s)
    }
}

pub fn condition_case(dp: &DerivedParams) -> ConditionCase {
    let sqrt3 = 3f64.sqrt();
    if dp.alpha >= sqrt3 * dp.beta {
        ConditionCase::CaseA
    } else if 4.0 * dp.h * (dp.beta + dp.p) >= dp.p.powi(4) {
        ConditionCase::CaseB
    } else {
        ConditionCase::Inadmissible
    }
}

/// The same case split written directly in (a, b):
/// α ≥ √3β ⇔ √3/a − 1/b ≤ 1+√3, and 4h(β+p) ≥ p⁴ ⇔
/// 4a(1−a)b(b+1)(a+2b−ab)² ≥ (a+b)⁴.
pub fn condition_case_ab(pp: ParamPair) -> ConditionCase {
    let (a, b) = (pp.a, pp.b);
    let sqrt3 = 3f64.sqrt();
    if sqrt3 / a - 1.0 / b <= 1.0 + sqrt3 {
        ConditionCase::CaseA
    } else if 4.0 * a * (1.0 - a) * b * (b + 1.0) * (a + 2.0 * b - a * b).powi(2) >= (a + b).powi(4) {
        ConditionCase::CaseB
    } else {
        ConditionCase::Inadmissible
    }
}

/// Exponents (c, d) of the arguments 1−x^c and 1−x^d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    c: f64,
    d: f64,
}

impl ExponentPair {
    pub fn new(c: f64, d: f64) -> Result<Self> {
        if !(c > 0.0 && d > 0.0 && c.is_finite() && d.is_finite()) {
            return Err(Error::domain("ExponentPair", format!("exponents ({c}, {d}) must be positive")));
        }
        Ok(ExponentPair { c, d })
    }

    /// Exponents with the given c and c/d ≤ ratio in binary64.
    pub fn with_ratio(c: f64, ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(Error::domain("ExponentPair", format!("ratio = {ratio} must be positive")));
        }
        let mut d = c / ratio;
        while c / d > ratio {
            d *= 1.0 + f64::EPSILON;
        }
        Self::new(c, d)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn ratio(&self) -> f64 {
        self.c / self.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_pair(rng: &mut ChaCha8Rng) -> ParamPair {
        let a: f64 = rng.gen_range(1e-3..1.0 - 1e-3);
        let b = (1.0 - a) + rng.gen_range(0.0..4.0);
        ParamPair::new(a, b).unwrap()
    }

    #[test]
    fn half_half_values() {
        let dp = ParamPair::new(0.5, 0.5).unwrap().derive();
        assert_eq!(dp.alpha, 0.75);
        assert_eq!(dp.beta, 0.25);
        assert_eq!(dp.p, 1.0);
        assert!((dp.h - 15.0 / 64.0).abs() < 1e-15);
        assert_eq!(dp.k, 1.5);
        assert!((dp.ratio_bound - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn complementary_ratio_bound() {
        for i in 1..20 {
            let a = i as f64 / 20.0;
            let dp = ParamPair::complementary(a).unwrap().derive();
            let s = (1.0 - a) * (1.0 - a);
            assert!((dp.ratio_bound - (s + 1.0) / (2.0 * s + 1.0)).abs() < 1e-14);
        }
        let dp = ParamPair::complementary(1.0 - 1e-9).unwrap().derive();
        assert!(dp.beta < 1e-8);
        assert!((dp.ratio_bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_pairs() {
        assert!(ParamPair::new(0.0, 1.0).is_err());
        assert!(ParamPair::new(1.0, 1.0).is_err());
        assert!(ParamPair::new(0.3, 0.6).is_err());
        assert!(ParamPair::new(0.3, 0.7).is_ok());
    }

    #[test]
    fn h_two_ways_and_root_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let dp = random_pair(&mut rng).derive();
            assert!((dp.h - dp.h_expanded()).abs() <= 1e-13 * dp.h.abs());
            let lhs = (dp.a - dp.b - 1.0).powi(2) - 4.0 * dp.beta;
            let rhs = (dp.p - 1.0).powi(2);
            assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs), "{dp:?}");
            assert!(dp.ratio_bound > 0.0 && dp.ratio_bound < 1.0);
            assert!(dp.alpha > 0.0 && dp.beta > 0.0);
        }
    }

    #[test]
    fn case_examples() {
        let half = ParamPair::new(0.5, 0.5).unwrap().derive();
        assert_eq!(condition_case(&half), ConditionCase::CaseA);
        let b05 = ParamPair::complementary(0.05).unwrap().derive();
        assert_eq!(condition_case(&b05), ConditionCase::CaseB);
        let b02 = ParamPair::complementary(0.02).unwrap().derive();
        assert_eq!(condition_case(&b02), ConditionCase::Inadmissible);
    }

    #[test]
    fn case_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..1000 {
            let pp = random_pair(&mut rng);
            let c = condition_case(&pp.derive());
            assert_eq!(c, condition_case_ab(pp), "{pp:?}");
            seen.insert(c);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn printed_remark_form_is_not_equivalent() {
        // Without the squared (a+2b−ab) factor the second condition differs.
        let (a, b) = (0.1, 3.0);
        let dp = ParamPair::new(a, b).unwrap().derive();
        assert_eq!(condition_case(&dp), ConditionCase::CaseB);
        let printed = 4.0 * a * (1.0 - a) * b * (b + 1.0) * (a + 2.0 * b - a * b) >= (a + b).powi(4);
        assert!(!printed);
    }

    #[test]
    fn exponent_ratio_is_never_above_target() {
        for i in 1..200 {
            let r = i as f64 / 200.0 + 1e-3;
            let ep = ExponentPair::with_ratio(2.0, r).unwrap();
            assert!(ep.ratio() <= r);
            assert!(r - ep.ratio() < 1e-14);
        }
        assert!(ExponentPair::new(0.0, 1.0).is_err());
    }
}
