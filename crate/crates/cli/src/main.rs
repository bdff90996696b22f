mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypineq::hyp2f1::{hyp2f1, hyp2f1_at_one, HypParams, SeriesConfig};
use hypineq::theory::{c1, c2, condition_case, delta1, ExponentPair, ParamPair};
use hypineq::verify::{
    self, check_roots_f4, isolate_roots_f4, report_for, run_check, run_suite, write_sweep_csv, CheckInput, Report, Status,
};

use config::{parse_threshold, FileConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hypineq", version, about = "Evaluate and verify zero-balanced hypergeometric inequalities")]
struct Cli {
    /// key = value file with grid, tolerance and sampling settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for suite runs (1 = sequential)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Relative tolerance of the series evaluations
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F(a, b; c; x), or its value at x = 1
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, required_unless_present = "at_one", conflicts_with = "at_one")]
        x: Option<f64>,
        #[arg(long)]
        at_one: bool,
    },
    /// Derived parameters, case, threshold and envelope constants
    Constants {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        d: f64,
    },
    /// Zeros of f4 on (0, 1)
    Roots,
    /// Run the verification suite or a single check
    Verify {
        #[arg(long, conflicts_with = "check")]
        suite: bool,
        /// Check id, e.g. G_monotone or sharpness_alpha
        #[arg(long)]
        check: Option<String>,
        /// Threshold formula for the sharpness checks: beta or alpha
        #[arg(long)]
        threshold: Option<String>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
    },
    /// Tabulate G, both functions and the envelopes over the grid
    Sweep {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        d: f64,
        /// Defaults to the threshold
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
    },
}

/// Shortest decimal with 17 significant digits.
fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..16).contains(&e) {
        format!("{:.*}", (16 - e) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

struct Settings {
    file: FileConfig,
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Result<Self> {
        let mut file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        if cli.workers.is_some() {
            file.workers = cli.workers;
        }
        if cli.tol.is_some() {
            file.tol = cli.tol;
        }
        let format = match (cli.format, file.format.as_deref()) {
            (Some(f), _) => Some(f),
            (None, Some("json")) => Some(Format::Json),
            (None, Some("csv")) => Some(Format::Csv),
            (None, Some(other)) => bail!("format must be json or csv, got {other:?}"),
            (None, None) => None,
        };
        let out = cli.out.clone().or_else(|| file.out.as_ref().map(PathBuf::from));
        Ok(Settings { file, out, format })
    }

    fn series(&self) -> Result<SeriesConfig> {
        let mut s = SeriesConfig::default();
        if let Some(t) = self.file.tol {
            s.rel_tol = t;
        }
        s.validate()?;
        Ok(s)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    /// Key/value records as a JSON object or two-column CSV.
    fn emit_record(&self, fields: &[(&str, Value)]) -> Result<()> {
        let text = match self.format.unwrap_or(Format::Json) {
            Format::Json => {
                let map: serde_json::Map<String, Value> =
                    fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                serde_json::to_string_pretty(&Value::Object(map))? + "\n"
            }
            Format::Csv => {
                let mut s = String::from("key,value\n");
                for (k, v) in fields {
                    let v = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k},{v}\n"));
                }
                s
            }
        };
        self.emit(&text)
    }
}

/// Numbers go out as strings with 17 significant digits so JSON keeps them exactly.
fn num(x: f64) -> Value {
    Value::String(sig17(x))
}

enum Outcome {
    Done,
    VerificationFailed,
}

fn cmd_eval(s: &Settings, a: f64, b: f64, c: f64, x: Option<f64>, at_one: bool) -> Result<Outcome> {
    let p = HypParams::new(a, b, c)?;
    let value = if at_one {
        hyp2f1_at_one(&p)?
    } else {
        hyp2f1(&p, x.expect("clap requires x"), &s.series()?)?
    };
    match s.format {
        None => s.emit(&format!("{}\n", sig17(value)))?,
        Some(_) => s.emit_record(&[("value", num(value))])?,
    }
    Ok(Outcome::Done)
}

fn cmd_constants(s: &Settings, a: f64, b: f64, c: f64, d: f64) -> Result<Outcome> {
    let pp = ParamPair::new(a, b)?;
    let ep = ExponentPair::new(c, d)?;
    let dp = pp.derive();
    let mut fields = vec![
        ("alpha", num(dp.alpha)),
        ("beta", num(dp.beta)),
        ("p", num(dp.p)),
        ("h", num(dp.h)),
        ("k", num(dp.k)),
        ("ratio_bound", num(dp.ratio_bound)),
        ("case", Value::String(condition_case(&dp).to_string())),
    ];
    match delta1(pp, ep) {
        Ok(d1) => {
            fields.push(("delta1", num(d1)));
            fields.push(("C1", num(c1(pp, ep, d1))));
            fields.push(("C2", num(c2(pp, d1)?)));
        }
        Err(e) => {
            fields.push(("delta1", Value::Null));
            fields.push(("note", Value::String(e.to_string())));
        }
    }
    s.emit_record(&fields)?;
    Ok(Outcome::Done)
}

fn cmd_roots(s: &Settings) -> Result<Outcome> {
    let iso = isolate_roots_f4();
    let check = check_roots_f4(&Default::default());
    let mut fields: Vec<(&str, Value)> = Vec::new();
    let names = [("a0", "residual_a0"), ("a1", "residual_a1")];
    for ((name, res_name), (&r, &res)) in names.iter().zip(iso.roots.iter().zip(&iso.residuals)) {
        fields.push((name, num(r)));
        fields.push((res_name, num(res)));
    }
    fields.push(("sign_changes", json!(iso.sign_changes)));
    if let Some(v) = check.details.get("stated_brackets_contain_roots") {
        fields.push(("stated_brackets_contain_roots", v.clone()));
    }
    s.emit_record(&fields)?;
    Ok(if check.passed { Outcome::Done } else { Outcome::VerificationFailed })
}

fn report_csv(r: &Report) -> String {
    let mut s = String::from("check_id,status,worst_margin,params\n");
    for c in &r.checks {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={}", sig17(*v))).collect();
        s.push_str(&format!(
            "{},{},{},{}\n",
            c.check_id,
            match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            },
            sig17(c.worst_margin),
            params.join(" ")
        ));
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    s: &Settings,
    suite: bool,
    check: Option<String>,
    threshold: Option<String>,
    input: (Option<f64>, Option<f64>, Option<f64>, Option<f64>, Option<f64>),
) -> Result<Outcome> {
    let mut cfg = s.file.suite()?;
    if let Some(t) = threshold {
        cfg.form = parse_threshold(&t)?;
    }
    let report = match (suite, check) {
        (_, Some(id)) => {
            let (a, b, c, d, delta) = input;
            let needs_pair = id != "roots_f4";
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ if !needs_pair => (0.5, 0.5),
                _ => bail!("--check {id} needs --a and --b"),
            };
            let checks = run_check(&id, &CheckInput { a, b, c, d, delta }, &cfg)?;
            let tuples = match (c, d) {
                (Some(c), Some(d)) if needs_pair => vec![[a, b, c, d]],
                _ => vec![],
            };
            report_for(&cfg, checks, tuples)
        }
        (true, None) => run_suite(&cfg)?,
        (false, None) => bail!("verify needs --suite or --check <id>"),
    };
    let (pass, fail, skip) = report.counts();
    eprintln!("{pass} passed, {fail} failed, {skip} skipped");
    for f in report.failures().take(10) {
        eprintln!("FAIL {} {:?}", f.check_id, f.params);
    }
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report_csv(&report),
    };
    s.emit(&text)?;
    Ok(if report.passed { Outcome::Done } else { Outcome::VerificationFailed })
}

fn cmd_sweep(s: &Settings, a: f64, b: f64, c: f64, d: f64, delta: Option<f64>) -> Result<Outcome> {
    let pp = ParamPair::new(a, b)?;
    let ep = ExponentPair::new(c, d)?;
    let delta = match delta {
        Some(d) => d,
        None => delta1(pp, ep)?,
    };
    let grid = s.file.grid()?;
    let rows = verify::sweep(pp, ep, delta, &grid.points(), &s.series()?)?;
    let text = match s.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &rows)?;
            String::from_utf8(buf)?
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let map: serde_json::Map<String, Value> = verify::SWEEP_HEADER
                        .iter()
                        .zip(r.fields())
                        .map(|(k, v)| (k.to_string(), num(v)))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            serde_json::to_string_pretty(&arr)? + "\n"
        }
    };
    s.emit(&text)?;
    Ok(Outcome::Done)
}

fn run(cli: Cli) -> Result<Outcome> {
    let s = Settings::from_cli(&cli)?;
    match cli.command {
        Command::Eval { a, b, c, x, at_one } => cmd_eval(&s, a, b, c, x, at_one),
        Command::Constants { a, b, c, d } => cmd_constants(&s, a, b, c, d),
        Command::Roots => cmd_roots(&s),
        Command::Verify {
            suite,
            check,
            threshold,
            a,
            b,
            c,
            d,
            delta,
        } => cmd_verify(&s, suite, check, threshold, (a, b, c, d, delta)),
        Command::Sweep { a, b, c, d, delta } => cmd_sweep(&s, a, b, c, d, delta),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
