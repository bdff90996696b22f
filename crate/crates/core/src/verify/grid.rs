use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Uniform,
    /// Points pushed toward both endpoints by a tanh map.
    Tanh,
}

/// A one-dimensional sample of [x_lo, x_hi] ⊂ (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_points: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub spacing: Spacing,
    /// Clustering strength of the tanh map; ignored for uniform spacing.
    pub kappa: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_points: 512,
            x_lo: 1e-4,
            x_hi: 1.0 - 1e-4,
            spacing: Spacing::Tanh,
            kappa: 3.0,
        }
    }
}

impl GridSpec {
    pub fn new(n_points: usize, x_lo: f64, x_hi: f64, spacing: Spacing) -> Result<Self> {
        let g = GridSpec {
            n_points,
            x_lo,
            x_hi,
            spacing,
            ..GridSpec::default()
        };
        g.validate()?;
        Ok(g)
    }

    pub fn uniform(n_points: usize, x_lo: f64, x_hi: f64) -> Result<Self> {
        Self::new(n_points, x_lo, x_hi, Spacing::Uniform)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_lo > 0.0 && self.x_lo < self.x_hi && self.x_hi < 1.0) {
            return Err(Error::domain(
                "GridSpec",
                format!("need 0 < x_lo < x_hi < 1, got [{}, {}]", self.x_lo, self.x_hi),
            ));
        }
        if self.n_points < 16 {
            return Err(Error::domain("GridSpec", format!("n_points = {} < 16", self.n_points)));
        }
        if self.spacing == Spacing::Tanh && !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(Error::domain("GridSpec", format!("kappa = {} must be positive", self.kappa)));
        }
        Ok(())
    }

    /// Increasing grid points with both endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let span = self.x_hi - self.x_lo;
        let norm = self.kappa.tanh();
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.x_lo;
                }
                if i == n - 1 {
                    return self.x_hi;
                }
                let t = i as f64 / (n - 1) as f64;
                let unit = match self.spacing {
                    Spacing::Uniform => t,
                    Spacing::Tanh => 0.5 * (1.0 + (self.kappa * (2.0 * t - 1.0)).tanh() / norm),
                };
                self.x_lo + span * unit
            })
            .collect()
    }
}
