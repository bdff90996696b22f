use std::io::Write;

use crate::error::Result;
use crate::hyp2f1::SeriesConfig;
use crate::theory::{c1, c2, ExponentPair, ParamPair};

use super::theorem::Profile;

pub const SWEEP_HEADER: [&str; 11] = ["a", "b", "c", "d", "delta", "x", "G", "F_c", "F_d", "lower_env", "upper_env"];

/// One sample of the two functions and their envelopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub delta: f64,
    pub x: f64,
    pub g: f64,
    pub f_c: f64,
    pub f_d: f64,
    pub lower_env: f64,
    pub upper_env: f64,
}

impl SweepRow {
    pub fn fields(&self) -> [f64; 11] {
        [
            self.a, self.b, self.c, self.d, self.delta, self.x, self.g, self.f_c, self.f_d, self.lower_env,
            self.upper_env,
        ]
    }
}

pub fn sweep(pp: ParamPair, ep: ExponentPair, delta: f64, xs: &[f64], cfg: &SeriesConfig) -> Result<Vec<SweepRow>> {
    let profile = Profile::compute(pp, ep, delta, xs, cfg)?;
    let c1v = c1(pp, ep, delta);
    let c2v = c2(pp, delta)?;
    Ok(profile
        .xs
        .iter()
        .zip(&profile.terms)
        .map(|(&x, t)| SweepRow {
            a: pp.a(),
            b: pp.b(),
            c: ep.c(),
            d: ep.d(),
            delta,
            x,
            g: t.g(),
            f_c: t.f_c,
            f_d: t.f_d,
            lower_env: t.f_c + c1v * t.s,
            upper_env: t.f_c + c2v * t.s,
        })
        .collect())
}

/// Writes the rows as CSV with 17 significant digits per value.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record(row.fields().iter().map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}
