//! Command-line front end: argument parsing and command dispatch.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pdmpct_core::{
    list_cases, make_model, norm_squared, verify_desk, verify_model, CaseId, Error, Grid, Params, TargetModel, VerificationReport,
    VerifyOptions, CSV_HEADER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    List,
    Potential,
    Spectrum,
    Wavefunction,
    Verify,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSel {
    One(CaseId),
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    #[must_use]
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub case: Option<CaseSel>,
    pub params: Params,
    pub grid: Option<Grid>,
    pub levels: u32,
    pub l_set: Option<Vec<u32>>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub n: u32,
    pub normalize: bool,
    pub allow_truncation: bool,
    pub sweep: Option<SweepSpec>,
}

/// Parse failure: a usage error (exit 2) or a help/version request (exit 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Usage(String),
    Help(String),
}

#[derive(Parser)]
#[command(
    name = "pdmpct",
    version,
    about = "Exactly solvable position-dependent-mass problems and their numeric verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the cataloged cases
    List(Flags),
    /// Sample the target potential on a grid
    Potential(Flags),
    /// Construction and printed energies
    Spectrum(Flags),
    /// Sample a construction wavefunction on a grid
    Wavefunction(Flags),
    /// Check a case against independent numeric solves
    Verify(Flags),
    /// Verify a case over a range of one parameter
    Sweep(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// Case id, or "all" for verify
    #[arg(long)]
    case: Option<String>,
    /// Parameter override (repeatable)
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Number of levels n = 0..N-1
    #[arg(long)]
    levels: Option<u32>,
    /// Comma-separated angular momenta
    #[arg(long = "l-set", value_name = "L,L,...")]
    l_set: Option<String>,
    #[arg(long, value_name = "LEFT:RIGHT:POINTS")]
    grid: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output file (sweep: output directory)
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Level index for wavefunction
    #[arg(long)]
    n: Option<u32>,
    /// Normalize the wavefunction on the sampling grid
    #[arg(long)]
    normalize: bool,
    /// Downgrade support errors on an explicit grid to notes
    #[arg(long = "allow-truncation")]
    allow_truncation: bool,
    #[arg(long, value_name = "KEY=START:STOP:COUNT")]
    sweep: Option<String>,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> ParseError {
    ParseError::Usage(format!("invalid value for {flag}: {msg}"))
}

fn parse_pair(flag: &str, s: &str) -> Result<(String, String), ParseError> {
    let (k, v) = s.split_once('=').ok_or_else(|| usage(flag, format!("'{s}' is not KEY=VALUE")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(usage(flag, format!("'{s}' has an empty key")));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

fn parse_f64(flag: &str, s: &str) -> Result<f64, ParseError> {
    let v: f64 = s.trim().parse().map_err(|_| usage(flag, format!("'{s}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(flag, format!("'{s}' is not finite")))
    }
}

fn parse_grid(s: &str) -> Result<Grid, ParseError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(usage("--grid", format!("'{s}' is not LEFT:RIGHT:POINTS")));
    }
    let left = parse_f64("--grid", parts[0])?;
    let right = parse_f64("--grid", parts[1])?;
    let points: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| usage("--grid", format!("'{}' is not a point count", parts[2])))?;
    Grid::new(left, right, points).map_err(|e| usage("--grid", e))
}

fn parse_l_set(s: &str) -> Result<Vec<u32>, ParseError> {
    let mut ls = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| usage("--l-set", format!("'{p}' is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ls.sort_unstable();
    ls.dedup();
    Ok(ls)
}

fn parse_sweep(s: &str) -> Result<SweepSpec, ParseError> {
    let (key, range) = parse_pair("--sweep", s)?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(usage("--sweep", format!("'{s}' is not KEY=START:STOP:COUNT")));
    }
    let start = parse_f64("--sweep", parts[0])?;
    let stop = parse_f64("--sweep", parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| usage("--sweep", format!("'{}' is not a count", parts[2])))?;
    if count == 0 {
        return Err(usage("--sweep", "count must be positive"));
    }
    Ok(SweepSpec { key, start, stop, count })
}

fn parse_bool(flag: &str, s: &str) -> Result<bool, ParseError> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(usage(flag, format!("'{s}' is not a boolean"))),
    }
}

/// Fill unset flags from a config file; non-flag keys become parameters
/// placed ahead of the command-line ones.
fn merge_config(flags: &mut Flags, path: &Path) -> Result<(), ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage("--config", format!("{}: {e}", path.display())))?;
    let mut file_params = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = parse_pair("--config", line)?;
        match k.as_str() {
            "case" => flags.case = flags.case.take().or(Some(v)),
            "levels" => {
                if flags.levels.is_none() {
                    flags.levels = Some(v.parse().map_err(|_| usage("--config", format!("levels = '{v}'")))?);
                }
            }
            "l-set" | "l_set" => flags.l_set = flags.l_set.take().or(Some(v)),
            "grid" => flags.grid = flags.grid.take().or(Some(v)),
            "tol" => {
                if flags.tol.is_none() {
                    flags.tol = Some(parse_f64("--config", &v)?);
                }
            }
            "format" => flags.format = flags.format.take().or(Some(v)),
            "out" => flags.out = flags.out.take().or(Some(PathBuf::from(v))),
            "n" => {
                if flags.n.is_none() {
                    flags.n = Some(v.parse().map_err(|_| usage("--config", format!("n = '{v}'")))?);
                }
            }
            "normalize" => flags.normalize |= parse_bool("--config", &v)?,
            "allow-truncation" | "allow_truncation" => flags.allow_truncation |= parse_bool("--config", &v)?,
            "sweep" => flags.sweep = flags.sweep.take().or(Some(v)),
            _ => file_params.push(format!("{k}={v}")),
        }
    }
    file_params.append(&mut flags.params);
    flags.params = file_params;
    Ok(())
}

/// Parse argv (without the program name) into a validated config.
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<RunConfig, ParseError> {
    let args = std::iter::once("pdmpct").chain(argv.iter().map(AsRef::as_ref));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ParseError::Help(e.to_string()),
        _ => ParseError::Usage(e.to_string()),
    })?;
    let (command, mut flags) = match cli.command {
        Cmd::List(f) => (Command::List, f),
        Cmd::Potential(f) => (Command::Potential, f),
        Cmd::Spectrum(f) => (Command::Spectrum, f),
        Cmd::Wavefunction(f) => (Command::Wavefunction, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
    };
    if let Some(path) = flags.config.clone() {
        merge_config(&mut flags, &path)?;
    }

    let case = match flags.case.as_deref() {
        None => None,
        Some(s) if s.eq_ignore_ascii_case("all") => Some(CaseSel::All),
        Some(s) => Some(CaseSel::One(s.parse().map_err(|e| usage("--case", e))?)),
    };
    match (command, case) {
        (Command::List, _) => {}
        (_, None) => return Err(ParseError::Usage("missing required flag --case".into())),
        (Command::Verify, Some(CaseSel::All)) => {}
        (_, Some(CaseSel::All)) => return Err(usage("--case", "'all' is only accepted by verify")),
        _ => {}
    }

    let mut params = Params::new();
    for p in &flags.params {
        let (k, v) = parse_pair("--param", p)?;
        let value = parse_f64("--param", &v).map_err(|_| usage("--param", format!("{k}={v}: '{v}' is not a finite number")))?;
        params.insert(k, value);
    }
    match case {
        Some(CaseSel::One(c)) => {
            if let Some(k) = params.keys().find(|k| !c.keys().contains(&k.as_str())) {
                return Err(usage(
                    "--param",
                    format!("unknown parameter '{k}' for case {c} (accepted: {})", c.keys().join(", ")),
                ));
            }
        }
        Some(CaseSel::All) if !params.is_empty() => return Err(usage("--param", "parameters cannot be combined with --case all")),
        _ => {}
    }

    let sweep = flags.sweep.as_deref().map(parse_sweep).transpose()?;
    match (command, &sweep, case) {
        (Command::Sweep, None, _) => return Err(ParseError::Usage("sweep requires --sweep KEY=START:STOP:COUNT".into())),
        (Command::Sweep, Some(s), Some(CaseSel::One(c))) if !c.keys().contains(&s.key.as_str()) => {
            return Err(usage("--sweep", format!("unknown parameter '{}' for case {c}", s.key)));
        }
        (Command::Sweep, ..) => {}
        (_, Some(_), _) => return Err(usage("--sweep", "only accepted by the sweep command")),
        _ => {}
    }

    let levels = flags.levels.unwrap_or(4);
    if levels == 0 {
        return Err(usage("--levels", "must be at least 1"));
    }
    let tol = flags.tol.unwrap_or(1e-3);
    if !tol.is_finite() || tol <= 0.0 {
        return Err(usage("--tol", format!("'{tol}' must be positive")));
    }
    let format = match flags.format.as_deref().map(str::to_ascii_lowercase).as_deref() {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return Err(usage("--format", format!("'{other}' (expected csv or json)"))),
    };

    Ok(RunConfig {
        command,
        case,
        params,
        grid: flags.grid.as_deref().map(parse_grid).transpose()?,
        levels,
        l_set: flags.l_set.as_deref().map(parse_l_set).transpose()?,
        tol,
        format,
        out: flags.out,
        n: flags.n.unwrap_or(0),
        normalize: flags.normalize,
        allow_truncation: flags.allow_truncation,
        sweep,
    })
}

/// Failure while running a parsed command.
#[derive(Debug)]
enum RunError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::Validity(_) | Error::Domain { .. } | Error::Grid(_) => Self::Usage(e.to_string()),
            _ => Self::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn json<T: Serialize>(v: &T) -> Result<String, RunError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn single_case(config: &RunConfig) -> Result<CaseId, RunError> {
    match config.case {
        Some(CaseSel::One(c)) => Ok(c),
        _ => Err(RunError::Usage("a single --case is required".into())),
    }
}

fn l_set_for(config: &RunConfig, case: CaseId) -> Vec<u32> {
    config.l_set.clone().unwrap_or_else(|| case.desk_l_set())
}

fn grid_for(config: &RunConfig, case: CaseId) -> Result<Grid, RunError> {
    match config.grid {
        Some(g) => Ok(g),
        None => {
            let d = case.desk_grid();
            Ok(Grid::new(d.left, d.right, d.points)?)
        }
    }
}

#[derive(Serialize)]
struct Sample {
    x: f64,
    value: f64,
}

fn samples(model: &TargetModel, grid: &Grid, f: &dyn Fn(f64) -> pdmpct_core::Result<f64>) -> Result<Vec<Sample>, RunError> {
    let (lo, hi) = model.domain();
    grid.nodes()
        .into_iter()
        .filter(|&x| x > lo && x < hi)
        .map(|x| Ok(Sample { x, value: f(x)? }))
        .collect()
}

fn render_samples(samples: &[Sample], format: Format) -> Result<String, RunError> {
    match format {
        Format::Json => json(&samples),
        Format::Csv => {
            let mut s = String::from("x,value\n");
            for p in samples {
                let _ = writeln!(s, "{},{}", num(p.x), num(p.value));
            }
            Ok(s)
        }
    }
}

fn cmd_list(config: &RunConfig) -> Result<String, RunError> {
    let cases = list_cases();
    match config.format {
        Format::Json => json(&cases),
        Format::Csv => {
            let mut s = String::from("case,mass,reference,equations,params,constraints\n");
            for c in cases {
                let eqs: Vec<String> = c.equations.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c.case,
                    csv_field(&c.mass),
                    c.reference,
                    eqs.join(";"),
                    c.params.join(";"),
                    csv_field(&c.constraints)
                );
            }
            Ok(s)
        }
    }
}

fn cmd_potential(config: &RunConfig) -> Result<String, RunError> {
    let case = single_case(config)?;
    let model = make_model(case, &config.params)?;
    let l = l_set_for(config, case)[0];
    let grid = grid_for(config, case)?;
    let pts = samples(&model, &grid, &|x| model.potential(l, x))?;
    render_samples(&pts, config.format)
}

#[derive(Serialize)]
struct SpectrumRow {
    n: u32,
    l: u32,
    #[serde(rename = "E_construction")]
    e_construction: f64,
    #[serde(rename = "E_printed")]
    e_printed: Option<f64>,
}

fn cmd_spectrum(config: &RunConfig) -> Result<String, RunError> {
    let case = single_case(config)?;
    let model = make_model(case, &config.params)?;
    let mut rows = Vec::new();
    for l in model.l_values(&l_set_for(config, case)) {
        for n in 0..config.levels {
            let e_printed = model.printed_energy(n, l)?;
            rows.push(SpectrumRow {
                n,
                l,
                e_construction: model.energy(n, l)?,
                e_printed: e_printed.is_finite().then_some(e_printed),
            });
        }
    }
    match config.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("n,l,E_construction,E_printed\n");
            for r in rows {
                let p = r.e_printed.map_or_else(|| "NaN".into(), num);
                let _ = writeln!(s, "{},{},{},{p}", r.n, r.l, num(r.e_construction));
            }
            Ok(s)
        }
    }
}

fn cmd_wavefunction(config: &RunConfig) -> Result<String, RunError> {
    let case = single_case(config)?;
    let model = make_model(case, &config.params)?;
    let l = model.l_values(&l_set_for(config, case))[0];
    let grid = grid_for(config, case)?;
    let scale = if config.normalize {
        let ns = norm_squared(&model, config.n, l, &grid)?;
        if ns.is_nan() || ns <= 0.0 {
            return Err(Error::ZeroNorm.into());
        }
        1.0 / ns.sqrt()
    } else {
        1.0
    };
    let pts = samples(&model, &grid, &|x| model.wavefunction(config.n, l, x).map(|v| v * scale))?;
    render_samples(&pts, config.format)
}

fn verify_one(config: &RunConfig, case: CaseId, params: &Params) -> Result<VerificationReport, RunError> {
    let model = make_model(case, params)?;
    let n_max = config.levels - 1;
    let l_set = l_set_for(config, case);
    Ok(match config.grid {
        None => verify_desk(&model, n_max, &l_set, config.tol)?,
        Some(grid) => {
            let opts = VerifyOptions {
                tol: config.tol,
                require_support: !config.allow_truncation,
            };
            verify_model(&model, &grid, n_max, &l_set, &opts)?
        }
    })
}

fn render_reports(reports: &[VerificationReport], format: Format, single: bool, err: &mut dyn Write) -> Result<String, RunError> {
    match format {
        Format::Json if single => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in reports {
                s.push_str(&r.csv_rows());
                for note in &r.notes {
                    writeln!(err, "note: {note}")?;
                }
            }
            Ok(s)
        }
    }
}

fn cmd_verify(config: &RunConfig, err: &mut dyn Write) -> Result<(String, bool), RunError> {
    let (cases, single) = match config.case {
        Some(CaseSel::All) => (CaseId::ALL.to_vec(), false),
        Some(CaseSel::One(c)) => (vec![c], true),
        None => return Err(RunError::Usage("missing --case".into())),
    };
    let reports = cases
        .par_iter()
        .map(|&c| verify_one(config, c, &config.params))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(VerificationReport::all_pass);
    Ok((render_reports(&reports, config.format, single, err)?, ok))
}

/// One row of the sweep summary, rebuilt from the per-point JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    /// "pass", "fail", "invalid" (parameters rejected) or "error" (run failed)
    pub status: String,
    pub levels: usize,
    pub failed: usize,
    pub notes: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub case: String,
    pub key: String,
    pub rows: Vec<SweepRow>,
    pub generated_by: String,
}

/// Summary row from a serialized report (the aggregation round trip).
pub fn summarize_report(value: f64, report_json: &str) -> Result<SweepRow, String> {
    let r = VerificationReport::from_json(report_json).map_err(|e| e.to_string())?;
    let failed = r.levels.iter().filter(|l| !l.pass).count();
    Ok(SweepRow {
        value,
        status: if failed == 0 { "pass" } else { "fail" }.into(),
        levels: r.levels.len(),
        failed,
        notes: r.notes.len(),
        error: None,
    })
}

fn render_summary(summary: &SweepSummary, format: Format) -> Result<String, RunError> {
    match format {
        Format::Json => json(summary),
        Format::Csv => {
            let mut s = String::from("value,status,levels,failed,notes,error\n");
            for r in &summary.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    num(r.value),
                    r.status,
                    r.levels,
                    r.failed,
                    r.notes,
                    csv_field(r.error.as_deref().unwrap_or(""))
                );
            }
            Ok(s)
        }
    }
}

fn cmd_sweep(config: &RunConfig) -> Result<(String, bool), RunError> {
    let case = single_case(config)?;
    let spec = config.sweep.clone().ok_or_else(|| RunError::Usage("missing --sweep".into()))?;
    let values = spec.values();
    let points: Vec<(f64, Result<String, RunError>)> = values
        .par_iter()
        .map(|&v| {
            let mut params = config.params.clone();
            params.insert(spec.key.clone(), v);
            (v, verify_one(config, case, &params).and_then(|r| Ok(r.to_json()?)))
        })
        .collect();
    if let Some(dir) = &config.out {
        std::fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::with_capacity(points.len());
    for (i, (value, report)) in points.into_iter().enumerate() {
        let row = match report {
            Ok(text) => {
                let text = match &config.out {
                    Some(dir) => {
                        let path = dir.join(format!("{case}_{}_{i:03}.json", spec.key));
                        std::fs::write(&path, &text)?;
                        std::fs::read_to_string(&path)?
                    }
                    None => text,
                };
                summarize_report(value, &text).map_err(RunError::Runtime)?
            }
            Err(e) => {
                let (status, msg) = match e {
                    RunError::Usage(m) => ("invalid", m),
                    RunError::Runtime(m) => ("error", m),
                };
                SweepRow {
                    value,
                    status: status.into(),
                    levels: 0,
                    failed: 0,
                    notes: 0,
                    error: Some(msg),
                }
            }
        };
        rows.push(row);
    }
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    let ok = rows.iter().all(|r| r.status == "pass" || r.status == "invalid");
    let summary = SweepSummary {
        case: case.to_string(),
        key: spec.key,
        rows,
        generated_by: pdmpct_core::GENERATED_BY.to_string(),
    };
    let text = render_summary(&summary, config.format)?;
    if let Some(dir) = &config.out {
        let ext = match config.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        std::fs::write(dir.join(format!("summary.{ext}")), &text)?;
    }
    Ok((text, ok))
}

/// Run a command, writing the artifact to `out` (or the --out file) and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_with(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match config.command {
        Command::List => cmd_list(config).map(|s| (s, true)),
        Command::Potential => cmd_potential(config).map(|s| (s, true)),
        Command::Spectrum => cmd_spectrum(config).map(|s| (s, true)),
        Command::Wavefunction => cmd_wavefunction(config).map(|s| (s, true)),
        Command::Verify => cmd_verify(config, err),
        Command::Sweep => cmd_sweep(config),
    };
    let (text, ok) = match result {
        Ok(v) => v,
        Err(RunError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(RunError::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    let written = match (&config.out, config.command) {
        (Some(path), c) if c != Command::Sweep => std::fs::write(path, &text),
        _ => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if ok {
        0
    } else {
        let _ = writeln!(err, "verification failed (see report)");
        1
    }
}

/// Run with standard output and standard error.
pub fn run(config: &RunConfig) -> i32 {
    run_with(config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
