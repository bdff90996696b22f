//! The Gauss hypergeometric function F(a,b;c;x) on [0, 1).
//!
//! Below [`SeriesConfig::switch_point`] the defining power series is summed
//! directly with a compensated accumulator. Above it the function is
//! re-expanded around x = 1 in powers of w = 1 − x:
//!
//! * excess c−a−b = 1 and c−a−b = 0 use the logarithmic connection formulas
//!   for integer excess (Abramowitz & Stegun 15.3.10/15.3.11);
//! * excess at least [`NONINTEGER_GAP`] away from an integer uses the two-term
//!   connection formula (A&S 15.3.6);
//! * anything else falls back to the raw series.
//!
//! Callers that already know w = 1 − x exactly (for instance w = x^c) should
//! use [`hyp2f1_complement`] to avoid the cancellation in forming 1 − w.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::special::{digamma, gamma, rgamma, POLE_GUARD};
use crate::sum::CompensatedSum;

/// Integer-excess cases are recognised when |e − m| is below this.
const INTEGER_EXCESS_TOL: f64 = 1e-12;
/// Minimum distance of the excess from an integer for the two-term formula.
pub const NONINTEGER_GAP: f64 = 1e-2;

/// Parameters (a, b; c) of ₂F₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("hyp2f1", format!("non-finite parameters ({a}, {b}; {c})")));
        }
        let nearest = c.round();
        if nearest <= 0.0 && (c - nearest).abs() < POLE_GUARD {
            return Err(Error::domain(
                "hyp2f1",
                format!("c = {c} is a non-positive integer"),
            ));
        }
        Ok(HypParams { a, b, c })
    }

    /// Parameter excess e = c − a − b.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    fn is_polynomial(&self) -> bool {
        is_non_positive_integer(self.a) || is_non_positive_integer(self.b)
    }
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Tolerance and term budget for the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub switch_point: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-13,
            max_terms: 2_000_000,
            switch_point: 0.8,
        }
    }
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize, switch_point: f64) -> Result<Self> {
        let cfg = SeriesConfig {
            rel_tol,
            max_terms,
            switch_point,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain("SeriesConfig", format!("rel_tol = {} must be positive", self.rel_tol)));
        }
        if self.max_terms < 1_000 {
            return Err(Error::domain("SeriesConfig", format!("max_terms = {} must be >= 1000", self.max_terms)));
        }
        if !(self.switch_point > 0.0 && self.switch_point < 1.0) {
            return Err(Error::domain(
                "SeriesConfig",
                format!("switch_point = {} must lie in (0, 1)", self.switch_point),
            ));
        }
        Ok(())
    }
}

/// F(a,b;c;x) for 0 ≤ x < 1.
pub fn hyp2f1(p: &HypParams, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain("hyp2f1", format!("x = {x} outside [0, 1)")));
    }
    if x <= cfg.switch_point {
        return series(p, x, cfg);
    }
    evaluate_near_one(p, 1.0 - x, cfg)
}

/// F(a,b;c;1−w) for 0 < w ≤ 1, with w supplied exactly by the caller.
///
/// w = 0 is accepted when c > a+b, so that an underflowed x^d still lands
/// on the limit value.
pub fn hyp2f1_complement(p: &HypParams, w: f64, cfg: &SeriesConfig) -> Result<f64> {
    if w == 0.0 && p.excess() > 0.0 {
        return hyp2f1_at_one(p);
    }
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::domain("hyp2f1", format!("complement w = {w} outside (0, 1]")));
    }
    let x = 1.0 - w;
    if x <= cfg.switch_point {
        return series(p, x, cfg);
    }
    evaluate_near_one(p, w, cfg)
}

fn evaluate_near_one(p: &HypParams, w: f64, cfg: &SeriesConfig) -> Result<f64> {
    match connection(p, w, cfg) {
        Some(result) => result,
        None => series(p, 1.0 - w, cfg),
    }
}

/// The raw power series, whatever the argument. Exposed for consistency
/// checks against the connection formulas.
pub fn hyp2f1_series(p: &HypParams, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain("hyp2f1", format!("x = {x} outside [0, 1)")));
    }
    series(p, x, cfg)
}

/// The expansion around x = 1, whatever the argument. Fails with a domain
/// error when no connection formula covers the parameter excess.
pub fn hyp2f1_connection(p: &HypParams, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain("hyp2f1", format!("x = {x} outside [0, 1)")));
    }
    connection(p, 1.0 - x, cfg).unwrap_or_else(|| {
        Err(Error::domain(
            "hyp2f1_connection",
            format!("no connection formula for excess {}", p.excess()),
        ))
    })
}

fn connection(p: &HypParams, w: f64, cfg: &SeriesConfig) -> Option<Result<f64>> {
    if p.is_polynomial() {
        return None;
    }
    let e = p.excess();
    if (e - 1.0).abs() <= INTEGER_EXCESS_TOL {
        Some(log_excess_one(p.a, p.b, w, cfg))
    } else if e.abs() <= INTEGER_EXCESS_TOL {
        Some(log_excess_zero(p.a, p.b, w, cfg))
    } else if (e - e.round()).abs() >= NONINTEGER_GAP {
        Some(two_term(p, w, cfg))
    } else {
        None
    }
}

/// Bound on the ratio of consecutive terms beyond index n, once n is past the
/// transient where the Pochhammer factors can still change sign or size.
fn tail_factor(ratio: f64, x: f64) -> Option<f64> {
    let rho = ratio.abs().max(x);
    (rho < 1.0).then(|| rho / (1.0 - rho))
}

fn series(p: &HypParams, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let HypParams { a, b, c } = *p;
    if x == 0.0 {
        return Ok(1.0);
    }
    let transient = 2.0 + a.abs() + b.abs() + c.abs();
    let mut term = 1.0;
    let mut sum = CompensatedSum::new(1.0);
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let factor = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term *= factor * x;
        if term == 0.0 {
            return Ok(sum.value());
        }
        sum.add(term);
        if nf > transient {
            if let Some(tail) = tail_factor(factor.max(1.0) * x, x) {
                if term.abs() * tail <= cfg.rel_tol * sum.value().abs() {
                    return Ok(sum.value());
                }
            }
        }
    }
    Err(Error::Convergence {
        func: "hyp2f1 series",
        terms: cfg.max_terms,
        last_term: term,
        partial: sum.value(),
    })
}

/// F(a,b;a+b+1;1−w) = Γ(c)/(Γ(a+1)Γ(b+1))
///   + w·Γ(c)/(Γ(a)Γ(b)) Σ (a+1)_n(b+1)_n / (n!(n+1)!) wⁿ
///     [ln w − ψ(n+1) − ψ(n+2) + ψ(a+n+1) + ψ(b+n+1)]
fn log_excess_one(a: f64, b: f64, w: f64, cfg: &SeriesConfig) -> Result<f64> {
    let gc = gamma(a + b + 1.0)?;
    let head = gc * rgamma(a + 1.0) * rgamma(b + 1.0);
    let scale = w * gc * rgamma(a) * rgamma(b);
    let ln_w = w.ln();

    let mut psi_n1 = digamma(1.0);
    let mut psi_n2 = digamma(2.0);
    let mut psi_a = digamma(a + 1.0);
    let mut psi_b = digamma(b + 1.0);
    let mut term = 1.0;
    let mut sum = CompensatedSum::default();
    let transient = 2.0 + a.abs() + b.abs();
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let contribution = term * (ln_w - psi_n1 - psi_n2 + psi_a + psi_b);
        sum.add(contribution);
        let total = head + scale * sum.value();
        let factor = (a + 1.0 + nf) * (b + 1.0 + nf) / ((nf + 1.0) * (nf + 2.0));
        if nf > transient {
            if let Some(tail) = tail_factor(factor.max(1.0) * w, w) {
                // the bracket grows like ln n, which the factor 2 absorbs
                if 2.0 * (scale * contribution).abs() * tail <= cfg.rel_tol * total.abs() {
                    return Ok(total);
                }
            }
        }
        psi_n1 += 1.0 / (nf + 1.0);
        psi_n2 += 1.0 / (nf + 2.0);
        psi_a += 1.0 / (a + 1.0 + nf);
        psi_b += 1.0 / (b + 1.0 + nf);
        term *= factor * w;
    }
    Err(Error::Convergence {
        func: "hyp2f1 excess-1 connection",
        terms: cfg.max_terms,
        last_term: term,
        partial: head + scale * sum.value(),
    })
}

/// F(a,b;a+b;1−w) = Γ(a+b)/(Γ(a)Γ(b)) Σ (a)_n(b)_n/(n!)² wⁿ
///   [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln w]
fn log_excess_zero(a: f64, b: f64, w: f64, cfg: &SeriesConfig) -> Result<f64> {
    let scale = gamma(a + b)? * rgamma(a) * rgamma(b);
    let ln_w = w.ln();

    let mut psi_n1 = digamma(1.0);
    let mut psi_a = digamma(a);
    let mut psi_b = digamma(b);
    let mut term = 1.0;
    let mut sum = CompensatedSum::default();
    let transient = 2.0 + a.abs() + b.abs();
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let contribution = term * (2.0 * psi_n1 - psi_a - psi_b - ln_w);
        sum.add(contribution);
        let factor = (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0));
        if nf > transient {
            if let Some(tail) = tail_factor(factor.max(1.0) * w, w) {
                if 2.0 * contribution.abs() * tail <= cfg.rel_tol * sum.value().abs() {
                    return Ok(scale * sum.value());
                }
            }
        }
        psi_n1 += 1.0 / (nf + 1.0);
        psi_a += 1.0 / (a + nf);
        psi_b += 1.0 / (b + nf);
        term *= factor * w;
    }
    Err(Error::Convergence {
        func: "hyp2f1 excess-0 connection",
        terms: cfg.max_terms,
        last_term: term,
        partial: scale * sum.value(),
    })
}

/// F(a,b;c;1−w) = Γ(c)Γ(e)/(Γ(c−a)Γ(c−b)) F(a,b;1−e;w)
///   + w^e Γ(c)Γ(−e)/(Γ(a)Γ(b)) F(c−a,c−b;1+e;w),  e = c−a−b ∉ ℤ
fn two_term(p: &HypParams, w: f64, cfg: &SeriesConfig) -> Result<f64> {
    let HypParams { a, b, c } = *p;
    let e = p.excess();
    let gc = gamma(c)?;
    let first = gc * gamma(e)? * rgamma(c - a) * rgamma(c - b);
    let second = w.powf(e) * gc * gamma(-e)? * rgamma(a) * rgamma(b);
    let f1 = if first == 0.0 {
        0.0
    } else {
        series(&HypParams::new(a, b, 1.0 - e)?, w, cfg)?
    };
    let f2 = if second == 0.0 {
        0.0
    } else {
        series(&HypParams::new(c - a, c - b, 1.0 + e)?, w, cfg)?
    };
    Ok(first * f1 + second * f2)
}

/// lim_{x→1⁻} F(a,b;c;x) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) for c > a+b.
pub fn hyp2f1_at_one(p: &HypParams) -> Result<f64> {
    let e = p.excess();
    if !(e > 0.0) {
        return Err(Error::domain(
            "hyp2f1_at_one",
            format!("excess c-a-b = {e} must be positive for a finite limit"),
        ));
    }
    if p.a == 0.0 || p.b == 0.0 {
        return Ok(1.0);
    }
    Ok(gamma(p.c)? * gamma(e)? * rgamma(p.c - p.a) * rgamma(p.c - p.b))
}

/// dF/dx = (ab/c)·F(a+1,b+1;c+1;x).
pub fn hyp2f1_dx(p: &HypParams, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain("hyp2f1_dx", format!("x = {x} outside [0, 1)")));
    }
    let lead = p.a * p.b / p.c;
    if lead == 0.0 {
        return Ok(0.0);
    }
    let shifted = HypParams::new(p.a + 1.0, p.b + 1.0, p.c + 1.0)?;
    Ok(lead * hyp2f1(&shifted, x, cfg)?)
}

fn elliptic_args(func: &'static str, a: f64, r: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(func, format!("a = {a} must lie in (0, 1)")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(func, format!("r = {r} must lie in (0, 1)")));
    }
    Ok((1.0 - r) * (1.0 + r))
}

/// Generalized elliptic integral of the first kind, (π/2)·F(a,1−a;1;r²).
pub fn elliptic_ka(a: f64, r: f64) -> Result<f64> {
    let w = elliptic_args("elliptic_ka", a, r)?;
    let p = HypParams::new(a, 1.0 - a, 1.0)?;
    Ok(FRAC_PI_2 * hyp2f1_complement(&p, w, &SeriesConfig::default())?)
}

/// Generalized elliptic integral of the second kind, (π/2)·F(a−1,1−a;1;r²).
pub fn elliptic_ea(a: f64, r: f64) -> Result<f64> {
    let w = elliptic_args("elliptic_ea", a, r)?;
    let p = HypParams::new(a - 1.0, 1.0 - a, 1.0)?;
    Ok(FRAC_PI_2 * hyp2f1_complement(&p, w, &SeriesConfig::default())?)
}
