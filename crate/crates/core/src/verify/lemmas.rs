//! Grid checks of the auxiliary lemmas.

use crate::error::Result;
use crate::hyp2f1::{hyp2f1, hyp2f1_complement, HypParams, SeriesConfig};
use crate::special::beta;
use crate::theory::{
    condition_case, delta1, f1, f2, f3, g1, g1_left, g_stationary, g_unchecked, g_x_max,
    lemma_quadratic, q, q1, q_difference_factor, q_sequence, ConditionCase, ExponentPair, ParamPair,
};

use super::grid::GridSpec;
use super::report::{CheckResult, Tolerances, Witness};
use super::theorem::tuple_params;

fn pair_params(pp: ParamPair) -> [(&'static str, f64); 2] {
    [("a", pp.a()), ("b", pp.b())]
}

fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

/// g ≥ 0 on the closure of D, sampled on an n×n grid, and the value at the
/// stationary point.
pub fn check_lemma_g(pp: ParamPair, n: usize, tol: &Tolerances) -> CheckResult {
    let mut out = CheckResult::new("lemma_g", &pair_params(pp), tol.lemma_floor);
    let dp = pp.derive();
    let case = condition_case(&dp);
    if !case.is_admissible() {
        return out.skipped(format!("parameters are {case}")).finish();
    }
    let xmax = g_x_max(&dp);
    let mut min = (f64::INFINITY, 0.0, 0.0);
    for i in 1..=n {
        let x = xmax * i as f64 / n as f64;
        for j in 0..n {
            let y = -dp.beta * x * j as f64 / (n - 1) as f64;
            let v = g_unchecked(x, y, &dp);
            if v < min.0 {
                min = (v, x, y);
            }
        }
    }
    let (v, x, y) = min;
    out.margin(v - tol.lemma_floor, || Witness::new("g below floor", vec![x, y], v));
    let (x0, y0, val) = g_stationary(&dp);
    let direct = g_unchecked(x0, y0, &dp);
    out.margin(val, || Witness::new("stationary value not positive", vec![x0, y0], val));
    out.margin(tol.identity - rel_err(direct, val), || {
        Witness::new("stationary value mismatch", vec![x0, y0], direct - val)
    });
    out.detail("case", case.to_string());
    out.detail("min_g", v);
    out.detail("stationary_value", val);
    out.detail("stationary_in_domain", x0 < xmax && y0 > -dp.beta * x0 && y0 < 0.0);
    out.finish()
}

/// CaseA: g₁ increasing with the closed-form end values; CaseB: g₁ ≥ 0.
pub fn check_lemma_g1(pp: ParamPair, n: usize, tol: &Tolerances) -> Result<CheckResult> {
    let mut out = CheckResult::new("lemma_g1", &pair_params(pp), tol.identity);
    let dp = pp.derive();
    let case = condition_case(&dp);
    let lo = g1_left(&dp);
    let ys: Vec<f64> = (0..n).map(|i| lo * (1.0 - i as f64 / (n - 1) as f64)).collect();
    let vals = ys.iter().map(|&y| g1(y, &dp)).collect::<Result<Vec<_>>>()?;
    let k2 = dp.k * dp.k;
    out.detail("case", case.to_string());
    match case {
        ConditionCase::CaseA => {
            for i in 0..n - 1 {
                let step = vals[i + 1] - vals[i];
                out.margin(step, || Witness::new("g1 not increasing", vec![ys[i], ys[i + 1]], step));
            }
            let left = dp.p * dp.beta * dp.beta * (dp.p + dp.beta) / k2;
            let right = dp.h * (dp.p + dp.beta) / k2;
            out.margin(tol.identity - (vals[0] - left).abs(), || {
                Witness::new("left end value", vec![lo], vals[0] - left)
            });
            out.margin(tol.identity - (vals[n - 1] - right).abs(), || {
                Witness::new("right end value", vec![0.0], vals[n - 1] - right)
            });
            out.margin(left, || Witness::new("left end value not positive", vec![lo], left));
            out.detail("printed_left_value", (1.0 - dp.a).powi(2) * (dp.p * dp.p + dp.p * dp.beta) / k2);
            out.detail("printed_right_value", dp.h / k2);
            out.detail("left_value", left);
            out.detail("right_value", right);
        }
        ConditionCase::CaseB => {
            for (&y, &v) in ys.iter().zip(&vals) {
                out.margin(v - tol.lemma_floor, || Witness::new("g1 negative", vec![y], v));
            }
            out.detail("min_g1", vals.iter().cloned().fold(f64::INFINITY, f64::min));
        }
        ConditionCase::Inadmissible => return Ok(out.skipped("parameters are Inadmissible").finish()),
    }
    Ok(out.finish())
}

/// f₁, f₂ decreasing on (a−1, 0) and f₃ decreasing on (a−1, δ₁], with their
/// end values.
pub fn check_f_ranges(pp: ParamPair, ep: ExponentPair, n: usize, tol: &Tolerances) -> Result<CheckResult> {
    let params = [("a", pp.a()), ("b", pp.b()), ("c", ep.c()), ("d", ep.d())];
    let mut out = CheckResult::new("f_ranges", &params, tol.identity);
    let dp = pp.derive();
    let left = dp.a - 1.0;
    let d1 = delta1(pp, ep)?;
    let ends: [(&str, fn(ParamPair, f64) -> f64, f64, f64, f64); 3] = [
        ("f1", f1, 0.0, dp.p - 1.0 + dp.beta, dp.p - 1.0),
        ("f2", f2, 0.0, dp.p, dp.alpha),
        ("f3", f3, d1, 0.0, -ep.ratio() * dp.beta),
    ];
    for (name, f, right, at_left, at_right) in ends {
        let ds: Vec<f64> = (0..=n).map(|i| left + (right - left) * i as f64 / n as f64).collect();
        for w in ds.windows(2) {
            let step = f(pp, w[1]) - f(pp, w[0]);
            out.margin(-step, || Witness::new(format!("{name} not decreasing"), w.to_vec(), step));
        }
        let e0 = f(pp, left) - at_left;
        let e1 = f(pp, right) - at_right;
        out.margin(tol.identity - e0.abs(), || Witness::new(format!("{name} left end"), vec![left], e0));
        out.margin(tol.identity - e1.abs(), || Witness::new(format!("{name} right end"), vec![right], e1));
        out.detail(&format!("{name}_range"), vec![at_right, at_left]);
    }
    Ok(out.finish())
}

/// Q(n) strictly decreasing for n = 1…N, the Q₁ difference identity, the sign
/// of Q₁(1) through the quadratic, and Q eventually below −1.
pub fn check_lemma_q(pp: ParamPair, ep: ExponentPair, delta: f64, n_max: u64, tol: &Tolerances) -> Result<CheckResult> {
    let mut out = CheckResult::new("lemma_Q", &tuple_params(pp, ep, delta), tol.identity);
    let dp = pp.derive();
    // the trend check may need to run past N when c/d is close to 1
    let horizon = 50 * n_max;
    let qs = q_sequence(horizon, pp, ep, delta)?;
    let mut worst_identity = 0.0f64;
    for n in 1..n_max {
        let i = (n - 1) as usize;
        let diff = qs[i + 1] - qs[i];
        out.margin(-diff, || Witness::new("Q not decreasing", vec![n as f64], diff));
        let rhs = q_difference_factor(n, pp, delta)? * q1(n, pp, ep, delta);
        let e = rel_err(diff, rhs);
        worst_identity = worst_identity.max(e);
        out.margin(tol.identity - e, || Witness::new("difference identity", vec![n as f64], diff - rhs));
    }
    for n in [1, n_max / 2, n_max] {
        let direct = q(n, pp, ep, delta)?;
        let e = rel_err(direct, qs[n as usize - 1]);
        out.margin(tol.identity - e, || Witness::new("log-gamma form disagrees", vec![n as f64], direct));
    }
    let last = qs[n_max as usize - 1];
    out.margin(qs[0] - last, || Witness::new("Q(N) not below Q(1)", vec![n_max as f64], last));
    match qs.iter().position(|&v| v < -1.0) {
        Some(i) => out.detail("first_n_below_minus_one", (i + 1) as u64),
        None => out.fail(Witness::new("Q stays above -1", vec![horizon as f64], qs[qs.len() - 1])),
    }
    let at_alpha = lemma_quadratic(dp.alpha, pp, ep);
    let at_p = lemma_quadratic(dp.p, pp, ep);
    out.margin(-at_alpha, || Witness::new("F(alpha) not negative", vec![dp.alpha], at_alpha));
    out.margin(tol.strict_margin - at_p, || Witness::new("F(p) positive", vec![dp.p], at_p));
    out.detail("Q1", qs[0]);
    out.detail("QN", last);
    out.detail("max_identity_rel_err", worst_identity);
    out.detail("F_alpha", at_alpha);
    out.detail("F_p", at_p);
    Ok(out.finish())
}

/// x ↦ B(a−x, b+x) increasing and convex on (0, a), for a ≤ b.
pub fn check_beta_convex(pp: ParamPair, n: usize, tol: &Tolerances) -> Result<CheckResult> {
    let mut out = CheckResult::new("beta_convex", &pair_params(pp), 0.0);
    let (a, b) = (pp.a(), pp.b());
    if a > b {
        return Ok(out.skipped("requires a <= b").finish());
    }
    // stay one step away from the pole at x = a
    let xs: Vec<f64> = (1..n).map(|i| a * i as f64 / n as f64).collect();
    let vals = xs.iter().map(|&x| beta(a - x, b + x)).collect::<Result<Vec<_>>>()?;
    for i in 0..vals.len() - 1 {
        let d1 = vals[i + 1] - vals[i];
        out.margin(d1, || Witness::new("not increasing", vec![xs[i]], d1));
    }
    for i in 1..vals.len() - 1 {
        let d2 = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
        let scale = vals[i].abs() * f64::EPSILON * 8.0;
        out.margin(d2 + scale, || Witness::new("not convex", vec![xs[i]], d2));
    }
    let _ = tol;
    Ok(out.finish())
}

/// (1−x)^d F(a,b;c;x) is non-increasing for d = d* + 0.1 and rises somewhere
/// for d = d* − 0.1, where d* = max{a+b−c, ab/c}.
pub fn check_weighted_decrease(a: f64, b: f64, c: f64, grid: &GridSpec, cfg: &SeriesConfig) -> Result<CheckResult> {
    let mut out = CheckResult::new("weighted_decrease", &[("a", a), ("b", b), ("c", c)], 0.1);
    let p = HypParams::new(a, b, c)?;
    let d_star = f64::max(a + b - c, a * b / c);
    let xs = grid.points();
    let fs = xs.iter().map(|&x| hyp2f1(&p, x, cfg)).collect::<Result<Vec<_>>>()?;
    let profile = |d: f64| -> Vec<f64> { xs.iter().zip(&fs).map(|(&x, &f)| (1.0 - x).powf(d) * f).collect() };
    let above = profile(d_star + 0.1);
    for (i, w) in above.windows(2).enumerate() {
        let rise = w[1] - w[0];
        let room = 1e-12 * w[0].abs();
        out.margin(room - rise, || Witness::new("increase above boundary", vec![xs[i], xs[i + 1]], rise));
    }
    let below = profile(d_star - 0.1);
    let best = below
        .windows(2)
        .enumerate()
        .map(|(i, w)| (w[1] - w[0], i))
        .fold((f64::NEG_INFINITY, 0), |acc, v| if v.0 > acc.0 { v } else { acc });
    out.margin(best.0, || Witness::new("no increase below boundary", vec![xs[best.1]], best.0));
    out.detail("d_star", d_star);
    out.detail("max_rise_below", best.0);
    Ok(out.finish())
}

/// f(x) = F(u−1, v; p; t) − F(a−1, b; p; x), t = 1 − (1−x)^{d/c}.
struct FFun {
    fd: HypParams,
    fc: HypParams,
    fd_dx: HypParams,
    fc_dx: HypParams,
    fd_lead: f64,
    fc_lead: f64,
    ratio: f64,
    cfg: SeriesConfig,
}

impl FFun {
    fn new(pp: ParamPair, ep: ExponentPair, delta: f64, cfg: &SeriesConfig) -> Result<Self> {
        let (a, b, p) = (pp.a(), pp.b(), pp.p());
        let (u, v) = (a - delta, b + delta);
        Ok(FFun {
            fd: HypParams::new(u - 1.0, v, p)?,
            fc: HypParams::new(a - 1.0, b, p)?,
            fd_dx: HypParams::new(u, v + 1.0, p + 1.0)?,
            fc_dx: HypParams::new(a, b + 1.0, p + 1.0)?,
            fd_lead: (u - 1.0) * v / p,
            fc_lead: (a - 1.0) * b / p,
            ratio: ep.d() / ep.c(),
            cfg: SeriesConfig {
                rel_tol: cfg.rel_tol.min(1e-15),
                ..*cfg
            },
        })
    }

    fn value(&self, x: f64) -> Result<f64> {
        let w = (1.0 - x).powf(self.ratio);
        Ok(hyp2f1_complement(&self.fd, w, &self.cfg)? - hyp2f1(&self.fc, x, &self.cfg)?)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        let w = (1.0 - x).powf(self.ratio);
        let dt = self.ratio * (1.0 - x).powf(self.ratio - 1.0);
        let fd = self.fd_lead * hyp2f1_complement(&self.fd_dx, w, &self.cfg)?;
        let fc = self.fc_lead * hyp2f1(&self.fc_dx, x, &self.cfg)?;
        Ok(dt * fd - fc)
    }
}

/// Second differences of f with step h are positive on the interior of the
/// grid, up to a slack; f′ agrees with its closed form.
pub fn check_fpp_positive(
    pp: ParamPair,
    ep: ExponentPair,
    delta: f64,
    grid: &GridSpec,
    tol: &Tolerances,
    cfg: &SeriesConfig,
) -> Result<CheckResult> {
    let mut out = CheckResult::new("fpp_positive", &tuple_params(pp, ep, delta), tol.fpp_slack);
    if let Some(reason) = super::theorem::theorem_gate(pp, ep, delta) {
        return Ok(out.skipped(reason).finish());
    }
    let f = FFun::new(pp, ep, delta, cfg)?;
    let h = 1e-4;
    let xs: Vec<f64> = grid.points().into_iter().filter(|&x| x - h > 0.0 && x + h < 1.0).collect();
    let mut min_fpp = f64::INFINITY;
    for &x in &xs {
        let (l, m, r) = (f.value(x - h)?, f.value(x)?, f.value(x + h)?);
        let fpp = (r - 2.0 * m + l) / (h * h);
        min_fpp = min_fpp.min(fpp);
        out.margin(fpp + tol.fpp_slack, || Witness::new("second difference negative", vec![x], fpp));
    }
    // closed-form f′ against a fine central difference, away from the ends
    let hd = 1e-6;
    let mut worst_fp = 0.0f64;
    for &x in xs.iter().filter(|&&x| (0.01..=0.99).contains(&x)) {
        let fp = f.derivative(x)?;
        let fd = (f.value(x + hd)? - f.value(x - hd)?) / (2.0 * hd);
        let e = (fp - fd).abs() / fp.abs().max(1.0);
        worst_fp = worst_fp.max(e);
        out.margin(1e-6 - e, || Witness::new("f' closed form mismatch", vec![x], fp - fd));
        let fpp = (f.derivative(x + hd)? - f.derivative(x - hd)?) / (2.0 * hd);
        if fpp <= 0.0 {
            out.fail(Witness::new("f'' from closed-form f' not positive", vec![x], fpp));
        }
    }
    out.detail("min_second_difference", min_fpp);
    out.detail("max_fprime_rel_err", worst_fp);
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::report::Status;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn lemma_g_cases() {
        let half = ParamPair::new(0.5, 0.5).unwrap();
        let r = check_lemma_g(half, 256, &tol());
        assert_eq!(r.status, Status::Pass, "{r:?}");
        let b = ParamPair::complementary(0.05).unwrap();
        let r = check_lemma_g(b, 256, &tol());
        assert_eq!(r.details["case"], "CaseB");
        assert!(r.passed, "{r:?}");
        let bad = ParamPair::complementary(0.02).unwrap();
        assert!(check_lemma_g(bad, 16, &tol()).is_skipped());
    }

    #[test]
    fn lemma_g1_cases() {
        for pp in [ParamPair::new(0.5, 0.5).unwrap(), ParamPair::complementary(0.05).unwrap()] {
            let r = check_lemma_g1(pp, 256, &tol()).unwrap();
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn f_ranges_pass() {
        let pp = ParamPair::new(0.3, 1.5).unwrap();
        let ep = ExponentPair::with_ratio(2.0, 0.3).unwrap();
        let r = check_f_ranges(pp, ep, 200, &tol()).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn lemma_q_pass() {
        let pp = ParamPair::new(0.5, 0.5).unwrap();
        let ep = ExponentPair::new(2.0, 3.0).unwrap();
        let d1 = delta1(pp, ep).unwrap();
        for d in [d1, 0.5 * (d1 - 0.5)] {
            let r = check_lemma_q(pp, ep, d, 200, &tol()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn beta_convexity() {
        let r = check_beta_convex(ParamPair::new(0.5, 1.5).unwrap(), 200, &tol()).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_beta_convex(ParamPair::new(0.9, 0.5).unwrap(), 200, &tol()).unwrap();
        assert!(r.is_skipped());
    }

    #[test]
    fn weighted_decrease() {
        let grid = GridSpec::new(200, 1e-4, 1.0 - 1e-4, crate::verify::Spacing::Tanh).unwrap();
        for (a, b, c) in [(0.3, 2.0, 0.8), (1.5, 2.0, 4.0), (0.7, 0.5, 3.0)] {
            let r = check_weighted_decrease(a, b, c, &grid, &SeriesConfig::default()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn fpp_positive_half_half() {
        let pp = ParamPair::new(0.5, 0.5).unwrap();
        let ep = ExponentPair::new(2.0, 3.0).unwrap();
        let d1 = delta1(pp, ep).unwrap();
        let grid = GridSpec::default();
        let r = check_fpp_positive(pp, ep, d1, &grid, &tol(), &SeriesConfig::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
