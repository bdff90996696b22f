//! Monotonicity of G, the two-sided envelope, crossings above the threshold
//! and sharpness of δ₁.
//!
//! With F_c(x) = F(a−1, b; p; 1−x^c) and F_d(x) = F(a−1−δ, b+δ; p; 1−x^d),
//! G(x) = (F_d − F_c)/(1 − x^c) and Δ(x) = F_d − F_c.

use crate::error::Result;
use crate::hyp2f1::{hyp2f1_complement, HypParams, SeriesConfig};
use crate::theory::{c1, c2, condition_case, delta1, threshold, ExponentPair, ParamPair, ThresholdForm};

use super::grid::GridSpec;
use super::report::{CheckResult, Tolerances, Witness};

/// F_c, F_d and s = 1 − x^c at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeTerms {
    pub f_c: f64,
    pub f_d: f64,
    pub s: f64,
}

impl ThreeTerms {
    pub fn at(pp: ParamPair, ep: ExponentPair, delta: f64, x: f64, cfg: &SeriesConfig) -> Result<Self> {
        let (hc, hd) = hyp_params(pp, delta)?;
        Self::with(&hc, &hd, ep, x, cfg)
    }

    fn with(hc: &HypParams, hd: &HypParams, ep: ExponentPair, x: f64, cfg: &SeriesConfig) -> Result<Self> {
        let lx = x.ln();
        let wc = (ep.c() * lx).exp();
        let wd = (ep.d() * lx).exp();
        let ctx = |e: crate::Error| e.context(format!("at x = {x}"));
        Ok(ThreeTerms {
            f_c: hyp2f1_complement(hc, wc, cfg).map_err(ctx)?,
            f_d: hyp2f1_complement(hd, wd, cfg).map_err(ctx)?,
            s: -(ep.c() * lx).exp_m1(),
        })
    }

    pub fn delta(&self) -> f64 {
        self.f_d - self.f_c
    }

    pub fn g(&self) -> f64 {
        self.delta() / self.s
    }
}

fn hyp_params(pp: ParamPair, delta: f64) -> Result<(HypParams, HypParams)> {
    let (a, b, p) = (pp.a(), pp.b(), pp.p());
    Ok((
        HypParams::new(a - 1.0, b, p)?,
        HypParams::new(a - 1.0 - delta, b + delta, p)?,
    ))
}

/// G(x) for x ∈ (0, 1).
pub fn g_value(pp: ParamPair, ep: ExponentPair, delta: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(crate::Error::domain("G", format!("x = {x} outside (0, 1)")));
    }
    Ok(ThreeTerms::at(pp, ep, delta, x, cfg)?.g())
}

/// F_c, F_d and G over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub xs: Vec<f64>,
    pub terms: Vec<ThreeTerms>,
    /// (x^c, terms) at two points far below the grid, for G(0⁺)
    pub deep: [(f64, ThreeTerms); 2],
}

// x^c at the deep probes. The w·ln w term of F_c leaves an error of
// about w·|ln w| in a linear fit, so the grid's own first points are too
// coarse once c is small.
const DEEP_W: [f64; 2] = [1e-10, 2e-10];

impl Profile {
    pub fn compute(pp: ParamPair, ep: ExponentPair, delta: f64, xs: &[f64], cfg: &SeriesConfig) -> Result<Self> {
        let (hc, hd) = hyp_params(pp, delta)?;
        let terms = xs
            .iter()
            .map(|&x| ThreeTerms::with(&hc, &hd, ep, x, cfg))
            .collect::<Result<Vec<_>>>()?;
        let mut deep = [(0.0, ThreeTerms { f_c: 0.0, f_d: 0.0, s: 0.0 }); 2];
        for (slot, w) in deep.iter_mut().zip(DEEP_W) {
            let x = (w.ln() / ep.c()).exp();
            *slot = ((ep.c() * x.ln()).exp(), ThreeTerms::with(&hc, &hd, ep, x, cfg)?);
        }
        Ok(Profile {
            xs: xs.to_vec(),
            terms,
            deep,
        })
    }

    pub fn g(&self) -> Vec<f64> {
        self.terms.iter().map(ThreeTerms::g).collect()
    }

    /// G(1⁻) by linear extrapolation in s = 1 − x^c from the last two points.
    pub fn right_limit(&self) -> f64 {
        let n = self.terms.len();
        let (t1, t2) = (self.terms[n - 1], self.terms[n - 2]);
        linear_to_zero(t1.s, t1.g(), t2.s, t2.g())
    }

    /// G(0⁺) by linear extrapolation in w = x^c from the deep probes.
    pub fn left_limit(&self) -> f64 {
        let [(w1, t1), (w2, t2)] = self.deep;
        linear_to_zero(w1, t1.g(), w2, t2.g())
    }
}

fn linear_to_zero(h1: f64, y1: f64, h2: f64, y2: f64) -> f64 {
    (h2 * y1 - h1 * y2) / (h2 - h1)
}

/// Why the monotonicity hypotheses fail, if they do.
pub(crate) fn theorem_gate(pp: ParamPair, ep: ExponentPair, delta: f64) -> Option<String> {
    let dp = pp.derive();
    let case = condition_case(&dp);
    if !case.is_admissible() {
        return Some(format!("parameters ({}, {}) are {case}", dp.a, dp.b));
    }
    let d1 = match delta1(pp, ep) {
        Ok(d) => d,
        Err(e) => return Some(e.to_string()),
    };
    if !(delta > dp.a - 1.0 && delta <= d1) {
        return Some(format!("delta = {delta} outside (a-1, delta1] = ({}, {d1}]", dp.a - 1.0));
    }
    None
}

pub(crate) fn tuple_params(pp: ParamPair, ep: ExponentPair, delta: f64) -> [(&'static str, f64); 5] {
    [("a", pp.a()), ("b", pp.b()), ("c", ep.c()), ("d", ep.d()), ("delta", delta)]
}

/// G strictly decreasing on the grid with end values C₂(δ) at 0⁺ and C₁(δ) at 1⁻.
pub fn check_g_monotone(
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    grid: &GridSpec,
    tol: &Tolerances,
    cfg: &SeriesConfig,
) -> Result<CheckResult> {
    let out = CheckResult::new("G_monotone", &tuple_params(pp, ep, delta), tol.monotone_slack);
    if let Some(reason) = theorem_gate(pp, ep, delta) {
        return Ok(out.skipped(reason).finish());
    }
    let profile = Profile::compute(pp, ep, delta, &grid.points(), cfg)?;
    monotone_from_profile(&profile, pp, ep, delta, tol)
}

pub(crate) fn monotone_from_profile(
    profile: &Profile,
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let mut out = CheckResult::new("G_monotone", &tuple_params(pp, ep, delta), tol.monotone_slack);
    let g = profile.g();
    let xs = &profile.xs;
    let mut increases = 0usize;
    for i in 0..g.len() - 1 {
        let rise = g[i + 1] - g[i];
        if rise >= 0.0 {
            increases += 1;
        }
        out.margin(tol.monotone_slack - rise, || {
            Witness::new("G increases", vec![xs[i], xs[i + 1]], rise)
        });
    }
    let c1v = c1(pp, ep, delta);
    let c2v = c2(pp, delta)?;
    let right = profile.right_limit();
    let left = profile.left_limit();
    out.margin(tol.endpoint - (right - c1v).abs(), || {
        Witness::new("G(1-) differs from C1", vec![*xs.last().unwrap()], right - c1v)
    });
    out.margin(tol.endpoint - (left - c2v).abs(), || {
        Witness::new("G(0+) differs from C2", vec![xs[0]], left - c2v)
    });
    out.detail("C1", c1v);
    out.detail("C2", c2v);
    out.detail("G_right_limit", right);
    out.detail("G_left_limit", left);
    out.detail("nonnegative_steps", increases as u64);
    Ok(out.finish())
}

/// F_c + C₁(δ)(1−x^c) < F_d < F_c + C₂(δ)(1−x^c) on the grid.
pub fn check_sandwich(
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    grid: &GridSpec,
    tol: &Tolerances,
    cfg: &SeriesConfig,
) -> Result<CheckResult> {
    let out = CheckResult::new("sandwich", &tuple_params(pp, ep, delta), tol.strict_margin);
    if let Some(reason) = theorem_gate(pp, ep, delta) {
        return Ok(out.skipped(reason).finish());
    }
    let profile = Profile::compute(pp, ep, delta, &grid.points(), cfg)?;
    sandwich_from_profile(&profile, pp, ep, delta, tol)
}

pub(crate) fn sandwich_from_profile(
    profile: &Profile,
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let mut out = CheckResult::new("sandwich", &tuple_params(pp, ep, delta), tol.strict_margin);
    let c1v = c1(pp, ep, delta);
    let c2v = c2(pp, delta)?;
    let (mut worst_lo, mut worst_hi) = (f64::INFINITY, f64::INFINITY);
    let last = profile.xs.len() - 1;
    for (i, (&x, t)) in profile.xs.iter().zip(&profile.terms).enumerate() {
        let lower = t.f_d - (t.f_c + c1v * t.s);
        let upper = (t.f_c + c2v * t.s) - t.f_d;
        worst_lo = worst_lo.min(lower);
        worst_hi = worst_hi.min(upper);
        // the gaps vanish at both ends, so the end points only need strict positivity
        let need = if i == 0 || i == last { 0.0 } else { tol.strict_margin };
        out.margin(lower - need, || Witness::new("lower envelope violated", vec![x], lower));
        out.margin(upper - need, || Witness::new("upper envelope violated", vec![x], upper));
    }
    out.detail("min_lower_gap", worst_lo);
    out.detail("min_upper_gap", worst_hi);
    Ok(out.finish())
}

/// Extremes of Δ over a probe set and a bisected sign change between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scan {
    pub max: (f64, f64),
    pub min: (f64, f64),
    pub crossing: Option<f64>,
}

/// Grid points plus probes m·10⁻ᵏ and 1 − m·10⁻ᵏ that reach deeper into
/// both ends than the grid does.
pub(crate) fn probe_points(grid: &GridSpec) -> Vec<f64> {
    let mut xs = grid.points();
    for k in 1..=10 {
        for m in [1.0, 2.0, 5.0] {
            let t = m * 10f64.powi(-k);
            if t < 1.0 {
                xs.push(t);
                xs.push(1.0 - t);
            }
        }
    }
    xs.retain(|&x| x > 0.0 && x < 1.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

pub(crate) fn scan(pp: ParamPair, ep: ExponentPair, delta: f64, xs: &[f64], cfg: &SeriesConfig) -> Result<Scan> {
    let (hc, hd) = hyp_params(pp, delta)?;
    let vals = xs
        .iter()
        .map(|&x| ThreeTerms::with(&hc, &hd, ep, x, cfg).map(|t| t.delta()))
        .collect::<Result<Vec<_>>>()?;
    let mut max = (xs[0], vals[0]);
    let mut min = (xs[0], vals[0]);
    for (&x, &v) in xs.iter().zip(&vals) {
        if v > max.1 {
            max = (x, v);
        }
        if v < min.1 {
            min = (x, v);
        }
    }
    let crossing = if max.1 > 0.0 && min.1 < 0.0 {
        let (mut lo, mut hi) = if max.0 < min.0 { (max.0, min.0) } else { (min.0, max.0) };
        let sign_lo = ThreeTerms::with(&hc, &hd, ep, lo, cfg)?.delta() > 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = ThreeTerms::with(&hc, &hd, ep, mid, cfg)?.delta();
            if (v > 0.0) == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    } else {
        None
    };
    Ok(Scan { max, min, crossing })
}

/// Points where Δ > margin and Δ < −margin, for δ above the threshold.
pub fn find_crossing(
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    grid: &GridSpec,
    tol: &Tolerances,
    cfg: &SeriesConfig,
) -> Result<CheckResult> {
    let out = CheckResult::new("crossing", &tuple_params(pp, ep, delta), tol.strict_margin);
    let dp = pp.derive();
    if !condition_case(&dp).is_admissible() {
        return Ok(out.skipped("inadmissible parameters").finish());
    }
    let d1 = match delta1(pp, ep) {
        Ok(d) => d,
        Err(e) => return Ok(out.skipped(e.to_string()).finish()),
    };
    if !(delta > d1 && delta < 0.0) {
        return Ok(out.skipped(format!("delta = {delta} outside (delta1, 0) = ({d1}, 0)")).finish());
    }
    let sc = scan(pp, ep, delta, &probe_points(grid), cfg)?;
    Ok(crossing_result(out, sc, tol))
}

fn crossing_result(mut out: CheckResult, sc: Scan, tol: &Tolerances) -> CheckResult {
    let (xp, vp) = sc.max;
    let (xn, vn) = sc.min;
    out.margin(vp - tol.strict_margin, || Witness::new("no positive difference", vec![xp], vp));
    out.margin(-vn - tol.strict_margin, || Witness::new("no negative difference", vec![xn], vn));
    if out.passed {
        out.witnesses.push(Witness::new("positive", vec![xp], vp));
        out.witnesses.push(Witness::new("negative", vec![xn], vn));
    }
    if let Some(x) = sc.crossing {
        out.detail("crossing_x", x);
    }
    out.finish()
}

/// The threshold is sharp: the inequality holds at and just below it, and
/// crossings appear at δ* + 1e−3 and δ* + 1e−2.
///
/// `form` selects how δ* is computed; the α form is expected to fail.
pub fn check_sharpness(
    pp: ParamPair,
    ep: ExponentPair,
    form: ThresholdForm,
    grid: &GridSpec,
    tol: &Tolerances,
    cfg: &SeriesConfig,
) -> Result<CheckResult> {
    let dp = pp.derive();
    let star = threshold(&dp, ep.ratio(), form);
    let label = match form {
        ThresholdForm::Beta => "sharpness",
        ThresholdForm::Alpha => "sharpness_alpha",
    };
    let mut out = CheckResult::new(label, &tuple_params(pp, ep, star), tol.strict_margin);
    if !condition_case(&dp).is_admissible() {
        return Ok(out.skipped("inadmissible parameters").finish());
    }
    if ep.ratio() > dp.ratio_bound {
        return Ok(out.skipped(format!("c/d = {} above {}", ep.ratio(), dp.ratio_bound)).finish());
    }
    out.detail("threshold", star);
    let left = dp.a - 1.0;
    if !(star > left && star < 0.0) {
        out.fail(Witness::new("threshold outside (a-1, 0)", vec![star], star));
        out.worst_margin = -star.max(left - star).abs();
        return Ok(out.finish());
    }
    let probes = probe_points(grid);

    let below = (star - 1e-3).max(left + 1e-3);
    for (tag, d) in [("at", star), ("below", below)] {
        let sc = scan(pp, ep, d, &probes, cfg)?;
        let (x, v) = sc.min;
        out.margin(v + tol.strict_margin, || {
            Witness::new(format!("inequality fails {tag} threshold"), vec![d, x], v)
        });
        out.detail(&format!("min_difference_{tag}"), v);
    }

    for eps in [1e-3, 1e-2] {
        let mut d = star + eps;
        if d >= 0.0 {
            d = 0.5 * star;
        }
        let sc = scan(pp, ep, d, &probes, cfg)?;
        let (xn, vn) = sc.min;
        let (xp, vp) = sc.max;
        out.margin(-vn - tol.strict_margin, || {
            Witness::new(format!("no crossing above threshold (eps={eps})"), vec![d, xn], vn)
        });
        out.margin(vp - tol.strict_margin, || {
            Witness::new(format!("no positive difference above threshold (eps={eps})"), vec![d, xp], vp)
        });
        out.detail(&format!("probe_delta_eps_{eps:e}"), d);
        out.detail(&format!("min_difference_eps_{eps:e}"), vn);
        if let Some(x) = sc.crossing {
            out.detail(&format!("crossing_x_eps_{eps:e}"), x);
        }
    }
    Ok(out.finish())
}
