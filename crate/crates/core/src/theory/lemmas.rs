//! Auxiliary functions of the monotonicity proof: f₁…f₅, g₁, g, Q and Q₁.
//!
//! Throughout, u = a−δ and v = b+δ.

use super::params::{DerivedParams, ExponentPair, ParamPair};
use crate::error::{Error, Result};
use crate::special::ln_gamma;

fn shift(pp: ParamPair, delta: f64) -> (f64, f64) {
    (pp.a() - delta, pp.b() + delta)
}

fn common(pp: ParamPair, delta: f64) -> f64 {
    (pp.a() - pp.b() - 1.0) * delta - delta * delta
}

/// f₁(δ) = uv + u − 1 + β = p − 1 + (a−b−1)δ − δ².
pub fn f1(pp: ParamPair, delta: f64) -> f64 {
    pp.p() - 1.0 + common(pp, delta)
}

/// f₂(δ) = u(v+1) = α + (a−b−1)δ − δ².
pub fn f2(pp: ParamPair, delta: f64) -> f64 {
    pp.derive().alpha + common(pp, delta)
}

/// f₃(δ) = v(u−1) = −β + (a−b−1)δ − δ².
pub fn f3(pp: ParamPair, delta: f64) -> f64 {
    -pp.derive().beta + common(pp, delta)
}

/// f₄(a) = 4a(2−a)(1−a)²(a²−2a+2)² − 1; f₄ ≥ 0 is the CaseB condition for b = 1−a.
pub fn f4(a: f64) -> f64 {
    let q = a * a - 2.0 * a + 2.0;
    4.0 * a * (2.0 - a) * (1.0 - a).powi(2) * q * q - 1.0
}

/// f₅(a) = 4a⁴ − 16a³ + 15a² + 2a − 2.
pub fn f5(a: f64) -> f64 {
    (((4.0 * a - 16.0) * a + 15.0) * a + 2.0) * a - 2.0
}

/// f₄′(a) = −8(a−1)(a²−2a+2)(4a⁴−16a³+23a²−14a+2).
pub fn f4_prime(a: f64) -> f64 {
    let quartic = (((4.0 * a - 16.0) * a + 23.0) * a - 14.0) * a + 2.0;
    -8.0 * (a - 1.0) * (a * a - 2.0 * a + 2.0) * quartic
}

/// 4a(2−a)(1−a)²(a²−2a−2)² − 1. Its derivative is −8(a−1)(a²−2a−2)·f₅(a)
/// and its zeros lie in (1/32, 1/31) and (41/50, 42/50). It differs from f₄
/// only in the sign of the constant inside the squared factor.
pub fn f4_variant(a: f64) -> f64 {
    let q = a * a - 2.0 * a - 2.0;
    4.0 * a * (2.0 - a) * (1.0 - a).powi(2) * q * q - 1.0
}

pub fn f4_variant_prime(a: f64) -> f64 {
    -8.0 * (a - 1.0) * (a * a - 2.0 * a - 2.0) * f5(a)
}

// closed-set membership tolerates a few ulps from the endpoint formulas
const DOMAIN_SLACK: f64 = 1e-14;

/// Left end of the interval on which g₁ is studied: −h/(αk).
pub fn g1_left(dp: &DerivedParams) -> f64 {
    -dp.h / (dp.alpha * dp.k)
}

/// g₁(y) = y² + (p²/k)y + h(p+β)/k² on [−h/(αk), 0].
pub fn g1(y: f64, dp: &DerivedParams) -> Result<f64> {
    let lo = g1_left(dp);
    if !(y >= lo - DOMAIN_SLACK * lo.abs() && y <= 0.0) {
        return Err(Error::domain("g1", format!("y = {y} outside [{lo}, 0]")));
    }
    Ok(g1_unchecked(y, dp))
}

fn g1_unchecked(y: f64, dp: &DerivedParams) -> f64 {
    let k = dp.k;
    y * y + dp.p * dp.p / k * y + dp.h * (dp.p + dp.beta) / (k * k)
}

/// Right edge of the domain D in x: (β+p)/k.
pub fn g_x_max(dp: &DerivedParams) -> f64 {
    dp.ratio_bound
}

/// g(x, y) = y² + ((p+1)x − 1)y + αβx² on the closure of
/// D = {0 < x < (β+p)/k, −βx < y < 0}.
pub fn g(x: f64, y: f64, dp: &DerivedParams) -> Result<f64> {
    let xmax = g_x_max(dp);
    let ymin = -dp.beta * x;
    if !(x >= 0.0 && x <= xmax * (1.0 + DOMAIN_SLACK)) || !(y >= ymin * (1.0 + DOMAIN_SLACK) && y <= 0.0) {
        return Err(Error::domain("g", format!("(x, y) = ({x}, {y}) outside the closure of D")));
    }
    Ok(g_unchecked(x, y, dp))
}

pub(crate) fn g_unchecked(x: f64, y: f64, dp: &DerivedParams) -> f64 {
    y * y + ((dp.p + 1.0) * x - 1.0) * y + dp.alpha * dp.beta * x * x
}

/// Stationary point (x₀, y₀) of g and the value g(x₀, y₀) = αβ/((p+1)² − 4αβ).
pub fn g_stationary(dp: &DerivedParams) -> (f64, f64, f64) {
    let ab = dp.alpha * dp.beta;
    let den = (dp.p + 1.0).powi(2) - 4.0 * ab;
    ((dp.p + 1.0) / den, -2.0 * ab / den, ab / den)
}

/// Q(n) = Γ(u+n−1)Γ(v+n)/(Γ(a+n−1)Γ(b+n)) · [(c/d−1)(u+v+n) + u(v+1)], n ≥ 1.
pub fn q(n: u64, pp: ParamPair, ep: ExponentPair, delta: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("Q", "n must be >= 1"));
    }
    let (a, b) = (pp.a(), pp.b());
    let (u, v) = shift(pp, delta);
    let n = n as f64;
    let log_ratio = ln_gamma(u + n - 1.0)? + ln_gamma(v + n)? - ln_gamma(a + n - 1.0)? - ln_gamma(b + n)?;
    let r = ep.ratio() - 1.0;
    Ok(log_ratio.exp() * (r * (u + v + n) + u * (v + 1.0)))
}

/// Q(1), …, Q(n_max) with the gamma ratio advanced by its exact one-step
/// factor (u+n−1)(v+n)/((a+n−1)(b+n)). Unlike [`q`] this does not lose
/// relative accuracy as n grows, so differences of consecutive terms stay
/// meaningful.
pub fn q_sequence(n_max: u64, pp: ParamPair, ep: ExponentPair, delta: f64) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(Error::domain("Q", "n must be >= 1"));
    }
    let (a, b) = (pp.a(), pp.b());
    let (u, v) = shift(pp, delta);
    let r = ep.ratio() - 1.0;
    let mut ratio = (ln_gamma(u)? + ln_gamma(v + 1.0)? - ln_gamma(a)? - ln_gamma(b + 1.0)?).exp();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let nf = n as f64;
        out.push(ratio * (r * (u + v + nf) + u * (v + 1.0)));
        ratio *= (u + nf - 1.0) * (v + nf) / ((a + nf - 1.0) * (b + nf));
    }
    Ok(out)
}

/// Γ(n+u−1)Γ(n+v)/(Γ(n+a)Γ(b+n+1)), the factor in Q(n+1) − Q(n) = factor·Q₁(n).
pub fn q_difference_factor(n: u64, pp: ParamPair, delta: f64) -> Result<f64> {
    let (a, b) = (pp.a(), pp.b());
    let (u, v) = shift(pp, delta);
    let n = n as f64;
    Ok((ln_gamma(n + u - 1.0)? + ln_gamma(n + v)? - ln_gamma(n + a)? - ln_gamma(b + n + 1.0)?).exp())
}

/// Constant term of Q₁: A = r f₃ + (r p + f₂)(f₃ + β), r = c/d − 1.
pub fn a_const(pp: ParamPair, ep: ExponentPair, delta: f64) -> f64 {
    let r = ep.ratio() - 1.0;
    let f3v = f3(pp, delta);
    r * f3v + (r * pp.p() + f2(pp, delta)) * (f3v + pp.derive().beta)
}

/// The constant as printed in the source:
/// (c/d−1)(u+v+1) + u(v+1)v(u−1) − β((c/d−1)(u+v) + u(v+1)).
/// It does not satisfy the difference identity; kept for reporting.
pub fn a_const_printed(pp: ParamPair, ep: ExponentPair, delta: f64) -> f64 {
    let r = ep.ratio() - 1.0;
    let (u, v) = shift(pp, delta);
    let beta = pp.derive().beta;
    r * (u + v + 1.0) + u * (v + 1.0) * v * (u - 1.0) - beta * (r * (u + v) + u * (v + 1.0))
}

/// Q₁(n) = (c/d−1)n² + (c/d−1)f₁(δ)n + A.
pub fn q1(n: u64, pp: ParamPair, ep: ExponentPair, delta: f64) -> f64 {
    let r = ep.ratio() - 1.0;
    let n = n as f64;
    r * n * n + r * f1(pp, delta) * n + a_const(pp, ep, delta)
}

/// F(y) = y² + [(c/d−1)(2+p) − α]y − (c/d−1)α(p+1); Q₁(1) = F(f₂(δ)).
pub fn lemma_quadratic(y: f64, pp: ParamPair, ep: ExponentPair) -> f64 {
    let dp = pp.derive();
    let r = ep.ratio() - 1.0;
    y * y + (r * (2.0 + dp.p) - dp.alpha) * y - r * dp.alpha * (dp.p + 1.0)
}
