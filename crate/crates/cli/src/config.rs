//! Line-oriented `key = value` configuration files.
//!
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. Command-line flags
//! take precedence over anything read here.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hypineq::theory::ThresholdForm;
use hypineq::verify::{GridSpec, Spacing, SuiteConfig};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub n_points: Option<usize>,
    pub x_lo: Option<f64>,
    pub x_hi: Option<f64>,
    pub spacing: Option<Spacing>,
    pub kappa: Option<f64>,
    pub seed: Option<u64>,
    pub random_pairs: Option<usize>,
    pub q_terms: Option<u64>,
    pub lemma_grid: Option<usize>,
    pub threshold: Option<ThresholdForm>,
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value.parse().with_context(|| format!("bad value for {key}: {value:?}"))
}

pub fn parse_threshold(value: &str) -> Result<ThresholdForm> {
    match value {
        "beta" => Ok(ThresholdForm::Beta),
        "alpha" => Ok(ThresholdForm::Alpha),
        other => bail!("threshold must be beta or alpha, got {other:?}"),
    }
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("line {}", lineno + 1);
            match key {
                "workers" => cfg.workers = Some(num(key, value).with_context(ctx)?),
                "tol" => cfg.tol = Some(num(key, value).with_context(ctx)?),
                "out" => cfg.out = Some(value.to_string()),
                "format" => cfg.format = Some(value.to_string()),
                "n_points" => cfg.n_points = Some(num(key, value).with_context(ctx)?),
                "x_lo" => cfg.x_lo = Some(num(key, value).with_context(ctx)?),
                "x_hi" => cfg.x_hi = Some(num(key, value).with_context(ctx)?),
                "spacing" => {
                    cfg.spacing = Some(match value {
                        "uniform" => Spacing::Uniform,
                        "tanh" => Spacing::Tanh,
                        other => bail!("line {}: spacing must be uniform or tanh, got {other:?}", lineno + 1),
                    })
                }
                "kappa" => cfg.kappa = Some(num(key, value).with_context(ctx)?),
                "seed" => cfg.seed = Some(num(key, value).with_context(ctx)?),
                "random_pairs" => cfg.random_pairs = Some(num(key, value).with_context(ctx)?),
                "q_terms" => cfg.q_terms = Some(num(key, value).with_context(ctx)?),
                "lemma_grid" => cfg.lemma_grid = Some(num(key, value).with_context(ctx)?),
                "threshold" => cfg.threshold = Some(parse_threshold(value).with_context(ctx)?),
                other => bail!("line {}: unknown key {other:?}", lineno + 1),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn grid(&self) -> Result<GridSpec> {
        let d = GridSpec::default();
        let g = GridSpec {
            n_points: self.n_points.unwrap_or(d.n_points),
            x_lo: self.x_lo.unwrap_or(d.x_lo),
            x_hi: self.x_hi.unwrap_or(d.x_hi),
            spacing: self.spacing.unwrap_or(d.spacing),
            kappa: self.kappa.unwrap_or(d.kappa),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn suite(&self) -> Result<SuiteConfig> {
        let d = SuiteConfig::default();
        let mut s = SuiteConfig {
            grid: self.grid()?,
            workers: self.workers.or(d.workers),
            seed: self.seed.unwrap_or(d.seed),
            random_pairs: self.random_pairs.unwrap_or(d.random_pairs),
            q_terms: self.q_terms.unwrap_or(d.q_terms),
            lemma_grid: self.lemma_grid.unwrap_or(d.lemma_grid),
            form: self.threshold.unwrap_or(d.form),
            ..d
        };
        if let Some(t) = self.tol {
            s.series.rel_tol = t;
        }
        s.validate()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = FileConfig::parse("# grid\nn_points = 64\nspacing=uniform   # even steps\n\nworkers = 2\nthreshold = alpha\n").unwrap();
        assert_eq!(cfg.n_points, Some(64));
        assert_eq!(cfg.spacing, Some(Spacing::Uniform));
        assert_eq!(cfg.workers, Some(2));
        let s = cfg.suite().unwrap();
        assert_eq!(s.grid.n_points, 64);
        assert_eq!(s.form, ThresholdForm::Alpha);
    }

    #[test]
    fn full_example_round_trips() {
        let text = "workers = 4\ntol = 1e-15\nn_points = 512\nx_lo = 1e-4\nx_hi = 0.9999\n\
                    spacing = tanh        # or uniform\nkappa = 3.0\nseed = 7\nrandom_pairs = 4\n\
                    q_terms = 200\nlemma_grid = 256\nthreshold = beta      # or alpha\n";
        let s = FileConfig::parse(text).unwrap().suite().unwrap();
        assert_eq!(s.workers, Some(4));
        assert_eq!(s.series.rel_tol, 1e-15);
        assert_eq!(s.grid, GridSpec::default());
        assert_eq!(s.form, ThresholdForm::Beta);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FileConfig::parse("nonsense").is_err());
        assert!(FileConfig::parse("color = red").is_err());
        assert!(FileConfig::parse("n_points = many").is_err());
        assert!(FileConfig::parse("n_points = 4").unwrap().suite().is_err());
    }
}
