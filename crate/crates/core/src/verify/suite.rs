//! The fixed verification sample and its deterministic execution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hyp2f1::SeriesConfig;
use crate::theory::{condition_case, delta1, ExponentPair, ParamPair, ThresholdForm};

use super::grid::GridSpec;
use super::lemmas::{
    check_beta_convex, check_f_ranges, check_fpp_positive, check_lemma_g, check_lemma_g1, check_lemma_q,
    check_weighted_decrease,
};
use super::report::{CheckResult, Meta, Report, Tolerances, Witness};
use super::roots::check_roots_f4;
use super::theorem::{
    check_sharpness, find_crossing, monotone_from_profile, sandwich_from_profile, theorem_gate, tuple_params,
    Profile,
};

/// Check identifiers in report order.
pub const CHECK_IDS: [&str; 13] = [
    "roots_f4",
    "lemma_g",
    "lemma_g1",
    "f_ranges",
    "lemma_Q",
    "beta_convex",
    "weighted_decrease",
    "G_monotone",
    "sandwich",
    "fpp_positive",
    "crossing",
    "sharpness",
    "sharpness_alpha",
];

const WEIGHTED_TRIPLES: [(f64, f64, f64); 4] = [(0.3, 2.0, 0.8), (1.5, 2.0, 4.0), (0.7, 0.5, 3.0), (1.2, 0.6, 0.9)];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub tol: Tolerances,
    pub series: SeriesConfig,
    /// Threshold formula used by the sharpness checks.
    pub form: ThresholdForm,
    /// None uses every available core; Some(1) runs sequentially.
    pub workers: Option<usize>,
    pub seed: u64,
    /// Admissible pairs drawn at random on top of the fixed grid.
    pub random_pairs: usize,
    pub q_terms: u64,
    pub lemma_grid: usize,
    /// Restrict the run to these check ids.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: GridSpec::default(),
            tol: Tolerances::default(),
            series: SeriesConfig::default(),
            form: ThresholdForm::Beta,
            workers: None,
            seed: 7,
            random_pairs: 4,
            q_terms: 200,
            lemma_grid: 256,
            only: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.series.validate()?;
        if self.workers == Some(0) {
            return Err(Error::domain("SuiteConfig", "workers must be at least 1"));
        }
        if self.q_terms < 2 || self.lemma_grid < 16 {
            return Err(Error::domain("SuiteConfig", "q_terms >= 2 and lemma_grid >= 16 required"));
        }
        if let Some(ids) = &self.only {
            for id in ids {
                if !CHECK_IDS.contains(&id.as_str()) {
                    return Err(Error::domain("SuiteConfig", format!("unknown check id {id}")));
                }
            }
        }
        Ok(())
    }

    fn wants(&self, id: &str) -> bool {
        self.only.as_ref().is_none_or(|ids| ids.iter().any(|s| s == id))
    }
}

/// The fixed admissible pairs, a ∈ {0.1,…,0.9} × b ∈ {1−a, 1, 1.5, 3}, plus
/// `extra` seeded random admissible pairs.
pub fn default_pairs(seed: u64, extra: usize) -> Vec<ParamPair> {
    let mut out = Vec::new();
    for i in 1..=9 {
        let a = i as f64 / 10.0;
        for b in [1.0 - a, 1.0, 1.5, 3.0] {
            if let Ok(pp) = ParamPair::new(a, b) {
                if condition_case(&pp.derive()).is_admissible() && !out.contains(&pp) {
                    out.push(pp);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < extra {
        let a: f64 = rng.gen_range(0.05..0.95);
        let b = 1.0 - a + rng.gen_range(0.0..3.0);
        let pp = ParamPair::new(a, b).expect("b >= 1-a by construction");
        if condition_case(&pp.derive()).is_admissible() {
            out.push(pp);
            added += 1;
        }
    }
    out
}

fn exponent_pairs(pp: ParamPair) -> Vec<ExponentPair> {
    let bound = pp.derive().ratio_bound;
    let mut out = Vec::new();
    for r in [0.3, 0.6] {
        if r <= bound {
            out.push(ExponentPair::with_ratio(2.0, r).expect("positive ratio"));
        }
    }
    let two_three = ExponentPair::new(2.0, 3.0).expect("positive");
    if two_three.ratio() <= bound {
        out.push(two_three);
    }
    let edge = ExponentPair::with_ratio(2.0, bound).expect("positive ratio");
    if !out.iter().any(|e| (e.ratio() - edge.ratio()).abs() < 1e-12) {
        out.push(edge);
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Roots,
    LemmaG(ParamPair),
    LemmaG1(ParamPair),
    BetaConvex(ParamPair),
    Weighted(f64, f64, f64),
    FRanges(ParamPair, ExponentPair),
    LemmaQ(ParamPair, ExponentPair, f64),
    Theorem(ParamPair, ExponentPair, f64),
    Fpp(ParamPair, ExponentPair, f64),
    Crossing(ParamPair, ExponentPair, f64),
    Sharpness(ParamPair, ExponentPair),
}

fn build_tasks(pairs: &[ParamPair], cfg: &SuiteConfig) -> (Vec<Task>, Vec<[f64; 4]>) {
    let mut tasks = vec![Task::Roots];
    let mut tuples = Vec::new();
    for &(a, b, c) in &WEIGHTED_TRIPLES {
        tasks.push(Task::Weighted(a, b, c));
    }
    // the precondition gate in action: c/d = 0.99 is above 5/6
    let half = ParamPair::new(0.5, 0.5).expect("valid");
    tasks.push(Task::Theorem(half, ExponentPair::new(0.99, 1.0).expect("valid"), -0.1));
    for &pp in pairs {
        tasks.push(Task::LemmaG(pp));
        tasks.push(Task::LemmaG1(pp));
        tasks.push(Task::BetaConvex(pp));
        let left = pp.a() - 1.0;
        for ep in exponent_pairs(pp) {
            tuples.push([pp.a(), pp.b(), ep.c(), ep.d()]);
            let d1 = delta1(pp, ep).expect("ratio within bound");
            let mid = 0.5 * (left + d1);
            tasks.push(Task::FRanges(pp, ep));
            tasks.push(Task::LemmaQ(pp, ep, d1));
            tasks.push(Task::LemmaQ(pp, ep, mid));
            for d in [left + 1e-3, mid, d1] {
                tasks.push(Task::Theorem(pp, ep, d));
            }
            tasks.push(Task::Fpp(pp, ep, mid));
            tasks.push(Task::Fpp(pp, ep, d1));
            let far = if d1 + 1e-2 < 0.0 { d1 + 1e-2 } else { 0.25 * d1 };
            tasks.push(Task::Crossing(pp, ep, 0.5 * d1));
            tasks.push(Task::Crossing(pp, ep, far));
            tasks.push(Task::Sharpness(pp, ep));
        }
    }
    let form_id = match cfg.form {
        ThresholdForm::Beta => "sharpness",
        ThresholdForm::Alpha => "sharpness_alpha",
    };
    tasks.retain(|t| {
        task_ids(*t).iter().any(|id| {
            let id = if *id == "sharpness" { form_id } else { id };
            cfg.wants(id)
        })
    });
    (tasks, tuples)
}

fn task_ids(t: Task) -> &'static [&'static str] {
    match t {
        Task::Roots => &["roots_f4"],
        Task::LemmaG(_) => &["lemma_g"],
        Task::LemmaG1(_) => &["lemma_g1"],
        Task::BetaConvex(_) => &["beta_convex"],
        Task::Weighted(..) => &["weighted_decrease"],
        Task::FRanges(..) => &["f_ranges"],
        Task::LemmaQ(..) => &["lemma_Q"],
        Task::Theorem(..) => &["G_monotone", "sandwich"],
        Task::Fpp(..) => &["fpp_positive"],
        Task::Crossing(..) => &["crossing"],
        Task::Sharpness(..) => &["sharpness"],
    }
}

fn error_result(id: &str, params: &[(&str, f64)], err: &Error) -> CheckResult {
    let mut out = CheckResult::new(id, params, 0.0);
    out.fail(Witness::new("evaluation error", vec![], f64::NAN));
    out.worst_margin = -1.0;
    out.detail("error", err.to_string());
    out.finish()
}

fn run_task(task: Task, cfg: &SuiteConfig) -> Vec<CheckResult> {
    let (grid, tol, series) = (&cfg.grid, &cfg.tol, &cfg.series);
    let lift = |id: &str, params: &[(&str, f64)], r: Result<CheckResult>| match r {
        Ok(c) => c,
        Err(e) => error_result(id, params, &e),
    };
    match task {
        Task::Roots => vec![check_roots_f4(tol)],
        Task::LemmaG(pp) => vec![check_lemma_g(pp, cfg.lemma_grid, tol)],
        Task::LemmaG1(pp) => vec![lift("lemma_g1", &[("a", pp.a()), ("b", pp.b())], check_lemma_g1(pp, cfg.lemma_grid, tol))],
        Task::BetaConvex(pp) => vec![lift("beta_convex", &[("a", pp.a()), ("b", pp.b())], check_beta_convex(pp, 200, tol))],
        Task::Weighted(a, b, c) => {
            let wgrid = GridSpec { n_points: 200, ..*grid };
            vec![lift("weighted_decrease", &[("a", a), ("b", b), ("c", c)], check_weighted_decrease(a, b, c, &wgrid, series))]
        }
        Task::FRanges(pp, ep) => {
            let p = [("a", pp.a()), ("b", pp.b()), ("c", ep.c()), ("d", ep.d())];
            vec![lift("f_ranges", &p, check_f_ranges(pp, ep, 200, tol))]
        }
        Task::LemmaQ(pp, ep, d) => vec![lift("lemma_Q", &tuple_params(pp, ep, d), check_lemma_q(pp, ep, d, cfg.q_terms, tol))],
        Task::Theorem(pp, ep, d) => {
            let params = tuple_params(pp, ep, d);
            if let Some(reason) = theorem_gate(pp, ep, d) {
                return ["G_monotone", "sandwich"]
                    .iter()
                    .map(|id| CheckResult::new(id, &params, 0.0).skipped(reason.clone()).finish())
                    .collect();
            }
            match Profile::compute(pp, ep, d, &grid.points(), series) {
                Ok(profile) => vec![
                    lift("G_monotone", &params, monotone_from_profile(&profile, pp, ep, d, tol)),
                    lift("sandwich", &params, sandwich_from_profile(&profile, pp, ep, d, tol)),
                ],
                Err(e) => vec![error_result("G_monotone", &params, &e), error_result("sandwich", &params, &e)],
            }
        }
        Task::Fpp(pp, ep, d) => vec![lift("fpp_positive", &tuple_params(pp, ep, d), check_fpp_positive(pp, ep, d, grid, tol, series))],
        Task::Crossing(pp, ep, d) => vec![lift("crossing", &tuple_params(pp, ep, d), find_crossing(pp, ep, d, grid, tol, series))],
        Task::Sharpness(pp, ep) => {
            let id = match cfg.form {
                ThresholdForm::Beta => "sharpness",
                ThresholdForm::Alpha => "sharpness_alpha",
            };
            let p = [("a", pp.a()), ("b", pp.b()), ("c", ep.c()), ("d", ep.d())];
            vec![lift(id, &p, check_sharpness(pp, ep, cfg.form, grid, tol, series))]
        }
    }
}

fn execute(tasks: &[Task], cfg: &SuiteConfig) -> Vec<Vec<CheckResult>> {
    #[cfg(feature = "parallel")]
    {
        if cfg.workers != Some(1) {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers.unwrap_or(0))
                .build();
            if let Ok(pool) = pool {
                return pool.install(|| tasks.par_iter().map(|&t| run_task(t, cfg)).collect());
            }
        }
    }
    tasks.iter().map(|&t| run_task(t, cfg)).collect()
}

fn canonical_order(checks: &mut [CheckResult]) {
    let rank = |id: &str| CHECK_IDS.iter().position(|c| *c == id).unwrap_or(CHECK_IDS.len());
    checks.sort_by(|x, y| {
        rank(&x.check_id).cmp(&rank(&y.check_id)).then_with(|| {
            let kx = x.params.iter();
            let ky = y.params.iter();
            for ((nx, vx), (ny, vy)) in kx.zip(ky) {
                let o = nx.cmp(ny).then(vx.total_cmp(vy));
                if o.is_ne() {
                    return o;
                }
            }
            x.params.len().cmp(&y.params.len())
        })
    });
}

/// Runs every selected check over the sample and assembles the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let pairs = default_pairs(cfg.seed, cfg.random_pairs);
    let (tasks, tuples) = build_tasks(&pairs, cfg);
    let mut checks: Vec<CheckResult> = execute(&tasks, cfg).into_iter().flatten().collect();
    checks.retain(|c| cfg.wants(&c.check_id));
    canonical_order(&mut checks);
    Ok(report_for(cfg, checks, tuples))
}

/// Wraps results in a report carrying the configuration they ran under.
pub fn report_for(cfg: &SuiteConfig, checks: Vec<CheckResult>, tuples: Vec<[f64; 4]>) -> Report {
    let passed = checks.iter().all(|c| c.passed);
    Report {
        meta: Meta {
            suite: "hypineq".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: cfg.seed,
            threshold_form: format!("{:?}", cfg.form).to_lowercase(),
            series_rel_tol: cfg.series.rel_tol,
            grid: cfg.grid,
            tolerances: cfg.tol,
            tuples,
        },
        checks,
        passed,
    }
}

/// Parameters for a single check run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckInput {
    pub a: f64,
    pub b: f64,
    /// c for the exponent pair, or the third ₂F₁ parameter for `weighted_decrease`.
    pub c: Option<f64>,
    pub d: Option<f64>,
    /// Defaults to δ₁ where a shift is needed.
    pub delta: Option<f64>,
}

/// Runs one check id on explicit parameters.
pub fn run_check(id: &str, input: &CheckInput, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    cfg.validate()?;
    if !CHECK_IDS.contains(&id) {
        return Err(Error::domain("run_check", format!("unknown check id {id}")));
    }
    if id == "roots_f4" {
        return Ok(vec![check_roots_f4(&cfg.tol)]);
    }
    if id == "weighted_decrease" {
        let c = input.c.ok_or_else(|| Error::domain("run_check", "weighted_decrease needs c"))?;
        let wgrid = GridSpec { n_points: 200, ..cfg.grid };
        return Ok(vec![check_weighted_decrease(input.a, input.b, c, &wgrid, &cfg.series)?]);
    }
    let pp = ParamPair::new(input.a, input.b)?;
    let ep = || -> Result<ExponentPair> {
        match (input.c, input.d) {
            (Some(c), Some(d)) => ExponentPair::new(c, d),
            _ => Err(Error::domain("run_check", format!("{id} needs c and d"))),
        }
    };
    let shift = |ep: ExponentPair| -> Result<f64> {
        match input.delta {
            Some(d) => Ok(d),
            None => delta1(pp, ep),
        }
    };
    let single = |t: Task, cfg: &SuiteConfig| -> Vec<CheckResult> {
        let mut v = run_task(t, cfg);
        v.retain(|c| c.check_id == id);
        v
    };
    let task = match id {
        "lemma_g" => Task::LemmaG(pp),
        "lemma_g1" => Task::LemmaG1(pp),
        "beta_convex" => Task::BetaConvex(pp),
        "f_ranges" => Task::FRanges(pp, ep()?),
        "lemma_Q" => {
            let ep = ep()?;
            Task::LemmaQ(pp, ep, shift(ep)?)
        }
        "G_monotone" | "sandwich" => {
            let ep = ep()?;
            Task::Theorem(pp, ep, shift(ep)?)
        }
        "fpp_positive" => {
            let ep = ep()?;
            Task::Fpp(pp, ep, shift(ep)?)
        }
        "crossing" => {
            let ep = ep()?;
            let d = match input.delta {
                Some(d) => d,
                None => 0.5 * delta1(pp, ep)?,
            };
            Task::Crossing(pp, ep, d)
        }
        "sharpness" | "sharpness_alpha" => {
            let form = if id == "sharpness" { ThresholdForm::Beta } else { ThresholdForm::Alpha };
            let local = SuiteConfig { form, ..cfg.clone() };
            return Ok(single(Task::Sharpness(pp, ep()?), &local));
        }
        _ => unreachable!("ids checked above"),
    };
    Ok(single(task, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sample_shape() {
        let pairs = default_pairs(7, 4);
        assert!(pairs.len() >= 30, "{}", pairs.len());
        assert!(pairs.contains(&ParamPair::new(0.5, 0.5).unwrap()));
        assert!(pairs.iter().all(|p| condition_case(&p.derive()).is_admissible()));
        assert_eq!(pairs, default_pairs(7, 4));
        let half = exponent_pairs(ParamPair::new(0.5, 0.5).unwrap());
        assert!(half.iter().any(|e| e.c() == 2.0 && e.d() == 3.0));
        assert!(half.iter().all(|e| e.ratio() <= 5.0 / 6.0));
    }

    #[test]
    fn config_validation() {
        let cfg = SuiteConfig {
            only: Some(vec!["nope".into()]),
            ..SuiteConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SuiteConfig {
            workers: Some(0),
            ..SuiteConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn lemma_only_suite_is_deterministic() {
        let ids = ["roots_f4", "lemma_g", "lemma_g1", "beta_convex"];
        let base = SuiteConfig {
            only: Some(ids.iter().map(|s| s.to_string()).collect()),
            lemma_grid: 64,
            ..SuiteConfig::default()
        };
        let seq = run_suite(&SuiteConfig { workers: Some(1), ..base.clone() }).unwrap();
        let par = run_suite(&SuiteConfig { workers: Some(3), ..base }).unwrap();
        assert!(seq.passed);
        assert_eq!(seq.to_json(), par.to_json());
        assert!(seq.checks.iter().all(|c| ids.contains(&c.check_id.as_str())));
    }

    #[test]
    fn single_checks() {
        let cfg = SuiteConfig::default();
        let input = CheckInput { a: 0.5, b: 0.5, c: Some(2.0), d: Some(3.0), delta: None };
        let r = run_check("sharpness_alpha", &input, &cfg).unwrap();
        assert_eq!(r.len(), 1);
        assert!(!r[0].passed);
        let r = run_check("G_monotone", &input, &cfg).unwrap();
        assert!(r[0].passed && !r[0].is_skipped());
        assert!(run_check("crossing", &CheckInput { c: None, ..input }, &cfg).is_err());
        assert!(run_check("bogus", &input, &cfg).is_err());
    }
}
