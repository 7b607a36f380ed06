use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use truncexp_core::{
    fit_gamma, goodness_variance, inv_langevin, inv_langevin_pade, langevin, langevin_derivative, Error,
    FitResult, Goodness, GoodnessBands, Method, SummaryBuilder, TruncExp, Validation, MAX_CUMULANT_ORDER,
};

use crate::args::{Format, Function};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse { line: usize, message: String },
    Model(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse { .. } => 1,
            CliError::Model(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            CliError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string(value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

/// Stream observations from `reader` into a summary. Blank lines and lines
/// starting with '#' are skipped.
pub fn read_observations(reader: impl BufRead, builder: &mut SummaryBuilder) -> Result<(), CliError> {
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let value: f64 = text.parse().map_err(|_| CliError::Parse {
            line: i + 1,
            message: format!("not a decimal number: {text:?}"),
        })?;
        if !value.is_finite() {
            return Err(CliError::Parse {
                line: i + 1,
                message: format!("non-finite value: {text:?}"),
            });
        }
        builder.push(value).map_err(|e| match e {
            Error::OutOfRange { value, k_min, k_max, .. } => CliError::Model(Error::Domain(format!(
                "line {}: observation {value} outside [{k_min}, {k_max}]",
                i + 1
            ))),
            other => CliError::Model(other),
        })?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FitReport {
    gamma_hat: f64,
    y: f64,
    k_bar: f64,
    s2: f64,
    model_mean: f64,
    model_variance: f64,
    variance_ratio: f64,
    method: &'static str,
    iterations: usize,
    n: usize,
    clipped: usize,
    k_min: f64,
    k_max: f64,
    /// absent for n < 2
    goodness: Option<&'static str>,
}

impl FitReport {
    fn new(fit: &FitResult, clipped: usize, goodness: Option<Goodness>) -> Self {
        Self {
            gamma_hat: fit.gamma_hat,
            y: fit.y,
            k_bar: fit.k_bar,
            s2: fit.s2,
            model_mean: fit.model_mean,
            model_variance: fit.model_variance,
            variance_ratio: fit.variance_ratio,
            method: fit.method.as_str(),
            iterations: fit.iterations,
            n: fit.n,
            clipped,
            k_min: fit.k_min,
            k_max: fit.k_max,
            goodness: goodness.map(|g| g.verdict.as_str()),
        }
    }
}

pub fn cmd_fit(
    input: &Path,
    k_min: f64,
    k_max: f64,
    method: Method,
    format: Format,
    strict: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let mode = if strict { Validation::Strict } else { Validation::Clip };
    let mut builder = SummaryBuilder::new(k_min, k_max, mode)?;
    let file = File::open(input).map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
    read_observations(BufReader::new(file), &mut builder)?;
    let summary = builder.finish()?;
    let fit = fit_gamma(&summary, k_min, k_max, method)?;
    let goodness = goodness_variance(&fit, &GoodnessBands::default()).ok();
    let report = FitReport::new(&fit, summary.clipped, goodness);
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Text => {
            let rows: [(&str, String); 7] = [
                ("gamma_hat", fmt17(report.gamma_hat)),
                ("y", fmt17(report.y)),
                ("k_bar", fmt17(report.k_bar)),
                ("s2", fmt17(report.s2)),
                ("model_mean", fmt17(report.model_mean)),
                ("model_variance", fmt17(report.model_variance)),
                ("variance_ratio", fmt17(report.variance_ratio)),
            ];
            for (k, v) in rows {
                writeln!(out, "{k:<16}{v}")?;
            }
            writeln!(out, "{:<16}{}", "method", report.method)?;
            writeln!(out, "{:<16}{}", "iterations", report.iterations)?;
            writeln!(out, "{:<16}{}", "n", report.n)?;
            if report.clipped > 0 {
                writeln!(out, "{:<16}{}", "clipped", report.clipped)?;
            }
            writeln!(out, "{:<16}{}", "goodness", report.goodness.unwrap_or("n/a (n < 2)"))?;
        }
    }
    Ok(())
}

pub fn cmd_eval(function: Function, arg: f64, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let value = match function {
        Function::L => langevin(arg)?,
        Function::Lprime => langevin_derivative(arg)?,
        Function::Linv => inv_langevin(arg)?,
        Function::LinvPade => inv_langevin_pade(arg)?,
    };
    match format {
        Format::Text => writeln!(out, "{}", fmt17(value))?,
        Format::Json => json_line(out, &value)?,
    }
    Ok(())
}

pub fn cmd_moments(
    gamma: f64,
    k_min: f64,
    k_max: f64,
    order: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if !(1..=MAX_CUMULANT_ORDER).contains(&order) {
        return Err(Error::Domain(format!("--order must be in 1..={MAX_CUMULANT_ORDER}, got {order}")).into());
    }
    let d = TruncExp::new(gamma, k_min, k_max)?;
    let kappas = d.cumulants(order)?;
    match format {
        Format::Json => json_line(out, &kappas)?,
        Format::Text => {
            for (k, v) in kappas.iter().enumerate() {
                writeln!(out, "kappa_{:<4}{}", k + 1, fmt17(*v))?;
            }
        }
    }
    Ok(())
}

pub fn cmd_sample(
    gamma: f64,
    k_min: f64,
    k_max: f64,
    n: usize,
    seed: u64,
    output: Option<&Path>,
    stdout: &mut impl Write,
) -> Result<(), CliError> {
    let d = TruncExp::new(gamma, k_min, k_max)?;
    let write_all = |w: &mut dyn Write| -> io::Result<()> {
        for v in d.sampler(seed).take(n) {
            writeln!(w, "{}", fmt17(v))?;
        }
        w.flush()
    };
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            write_all(&mut BufWriter::new(file))?;
        }
        None => write_all(stdout)?,
    }
    Ok(())
}
