//! Command-line front end: CSV output for plot scripts and the oracle report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xxz_teleport::config::Config;
use xxz_teleport::measures::CLASSICAL_FIDELITY_BOUND;
use xxz_teleport::scan::{
    contour, point, sweep, threshold, write_csv, AxisSpec, ContourSpec, InputMode, Param, PointValues,
    Quantity, SweepSpec,
};
use xxz_teleport::validate::validate;
use xxz_teleport::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "xxz-teleport", version, about = "Teleportation through thermal XXZ dimers of an Ising-XXZ diamond chain")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Flat `key = value` file with defaults for any flag; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every measure at one parameter point.
    Point(Common),
    /// Evaluate a 1D or 2D grid (axis1 outer, axis2 inner).
    Sweep(Common),
    /// Locate a threshold by bisection on the signed defining function.
    ///
    /// At low temperature the average fidelity drops steeply near the
    /// critical field; pick a bracket that straddles the drop.
    Threshold(Common),
    /// Trace the F_A = 2/3 boundary: bisection along axis2 for every axis1 value.
    Contour(Common),
    /// Cross-check every closed form against its brute-force oracle.
    Validate(Common),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Ising coupling J1/J [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    j1: Option<f64>,
    /// XXZ anisotropy [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Longitudinal field h/J [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    h: Option<f64>,
    /// Temperature T/J
    #[arg(long)]
    temp: Option<f64>,
    /// Input polar angle [default: pi/2]
    #[arg(long)]
    theta: Option<f64>,
    /// Input phase [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// First axis (T, h, J1, Delta, theta, phi); the scan parameter of `threshold`
    #[arg(long)]
    axis1: Option<String>,
    /// Second axis
    #[arg(long)]
    axis2: Option<String>,
    /// Axis range `start:stop`; repeat for axis2
    #[arg(long, allow_hyphen_values = true)]
    range: Vec<String>,
    /// Axis point count; repeat for axis2
    #[arg(long)]
    count: Vec<usize>,
    /// Threshold quantity: c_out_zero, c_ch_zero or f_avg_two_thirds
    #[arg(long)]
    quantity: Option<String>,
    /// Threshold bracket `lo:hi`
    #[arg(long, allow_hyphen_values = true)]
    bracket: Option<String>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random seed for `validate` [default: 42]
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random draws for `validate` [default: 1000]
    #[arg(long)]
    samples: Option<usize>,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::InvalidTemperature(_)
            | Error::InvalidBeta(_)
            | Error::InvalidSweep(_)
            | Error::Config { .. } => Failure::Usage(e.to_string()),
            Error::NoSignChange { .. } | Error::NotHermitian(_) | Error::Numeric(_) => {
                Failure::Failed(e.to_string())
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

/// Flag values merged over the config file.
struct Resolved<'a> {
    flags: &'a Common,
    config: Config,
}

impl Resolved<'_> {
    fn from_config<T: std::str::FromStr>(&self, key: &str) -> Outcome<Option<T>> {
        match self.config.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .or_else(|_| usage(format!("config key `{key}`: cannot parse `{raw}`"))),
        }
    }

    fn number(&self, key: &str, flag: Option<f64>) -> Outcome<Option<f64>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.from_config(key),
        }
    }

    fn text(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone().or_else(|| self.config.get(key).map(str::to_string))
    }

    fn list(&self, key: &str, flag: &[String]) -> Vec<String> {
        if !flag.is_empty() {
            return flag.to_vec();
        }
        self.config
            .get(key)
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
            .unwrap_or_default()
    }

    fn counts(&self) -> Outcome<Vec<usize>> {
        if !self.flags.count.is_empty() {
            return Ok(self.flags.count.clone());
        }
        self.list("count", &[])
            .iter()
            .map(|c| c.parse().or_else(|_| usage(format!("config key `count`: cannot parse `{c}`"))))
            .collect()
    }

    /// Named values of the fixed parameters, with defaults for J1, Delta, h.
    fn fixed(&self) -> Outcome<BTreeMap<Param, f64>> {
        let f = self.flags;
        let mut out = BTreeMap::new();
        for (param, key, flag, default) in [
            (Param::J1, "j1", f.j1, Some(1.0)),
            (Param::Delta, "delta", f.delta, Some(1.0)),
            (Param::H, "h", f.h, Some(0.0)),
            (Param::T, "temp", f.temp, None),
            (Param::Theta, "theta", f.theta, None),
            (Param::Phi, "phi", f.phi, None),
        ] {
            if let Some(v) = self.number(key, flag)?.or(default) {
                out.insert(param, v);
            }
        }
        Ok(out)
    }

    /// Explicitly given (flag or file) parameters, without defaults.
    fn explicit(&self) -> Outcome<Vec<Param>> {
        let f = self.flags;
        let mut out = Vec::new();
        for (param, key, flag) in [
            (Param::J1, "j1", f.j1),
            (Param::Delta, "delta", f.delta),
            (Param::H, "h", f.h),
            (Param::T, "temp", f.temp),
            (Param::Theta, "theta", f.theta),
            (Param::Phi, "phi", f.phi),
        ] {
            if self.number(key, flag)?.is_some() {
                out.push(param);
            }
        }
        Ok(out)
    }

    fn axis_param(&self, key: &str, flag: &Option<String>) -> Outcome<Option<Param>> {
        self.text(key, flag).map(|s| s.parse::<Param>().map_err(Failure::from)).transpose()
    }

    fn axes(&self) -> Outcome<(Option<AxisSpec>, Option<AxisSpec>)> {
        let p1 = self.axis_param("axis1", &self.flags.axis1)?;
        let p2 = self.axis_param("axis2", &self.flags.axis2)?;
        let ranges = self.list("range", &self.flags.range);
        let counts = self.counts()?;
        let build = |param: Option<Param>, k: usize| -> Outcome<Option<AxisSpec>> {
            let Some(param) = param else { return Ok(None) };
            let Some(range) = ranges.get(k) else {
                return usage(format!("axis {param} needs a --range"));
            };
            let (start, stop) = parse_pair(range, "range")?;
            let Some(&count) = counts.get(k) else {
                return usage(format!("axis {param} needs a --count"));
            };
            Ok(Some(AxisSpec::new(param, start, stop, count)?))
        };
        Ok((build(p1, 0)?, build(p2, 1)?))
    }

    fn point_values(&self, placeholders: &[Param]) -> Outcome<PointValues> {
        let mut values = self.fixed()?;
        for p in placeholders {
            values.entry(*p).or_insert(f64::NAN);
        }
        Ok(PointValues::from_map(&values)?)
    }
}

fn parse_pair(raw: &str, what: &str) -> Outcome<(f64, f64)> {
    let parsed = raw.split_once(':').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some(pair) => Ok(pair),
        None => usage(format!("--{what} expects `lo:hi`, got `{raw}`")),
    }
}

fn open_output(path: Option<&Path>) -> Outcome<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_point(r: &Resolved) -> Outcome<ExitCode> {
    let values = r.point_values(&[])?;
    let row = point(&values)?;
    write_csv(open_output(r.flags.out.as_deref())?, &[row])?;
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(r: &Resolved) -> Outcome<ExitCode> {
    let (Some(axis1), axis2) = r.axes()? else {
        return usage("sweep needs --axis1");
    };
    let swept: Vec<Param> = std::iter::once(axis1.param).chain(axis2.map(|a| a.param)).collect();
    let mut fixed = r.fixed()?;
    for p in &swept {
        if r.explicit()?.contains(p) {
            return usage(format!("parameter {p} is both swept and fixed"));
        }
        // drop defaults for swept parameters
        fixed.remove(p);
    }
    let spec = SweepSpec { axis1, axis2, fixed, input: InputMode::Maximal };
    let rows = sweep(&spec)?;
    let mut out = open_output(r.flags.out.as_deref())?;
    write_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run_threshold(r: &Resolved) -> Outcome<ExitCode> {
    let Some(quantity) = r.text("quantity", &r.flags.quantity) else {
        return usage("threshold needs --quantity");
    };
    let quantity: Quantity = quantity.parse()?;
    let Some(scan) = r.axis_param("axis1", &r.flags.axis1)? else {
        return usage("threshold needs --axis1 (T or h)");
    };
    let Some(bracket) = r.text("bracket", &r.flags.bracket) else {
        return usage("threshold needs --bracket lo:hi");
    };
    let bracket = parse_pair(&bracket, "bracket")?;
    let base = r.point_values(&[scan])?;
    let value = threshold(quantity, scan, &base, bracket)?;
    let mut out = open_output(r.flags.out.as_deref())?;
    writeln!(out, "{}", scan)?;
    writeln!(out, "{}", xxz_teleport::scan::format_sig(value))?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run_contour(r: &Resolved) -> Outcome<ExitCode> {
    let (Some(axis1), Some(axis2)) = r.axes()? else {
        return usage("contour needs --axis1 and --axis2");
    };
    let base = r.point_values(&[axis1.param, axis2.param])?;
    let spec = ContourSpec { axis1, axis2, base, level: CLASSICAL_FIDELITY_BOUND };
    let result = contour(&spec)?;
    let mut out = open_output(r.flags.out.as_deref())?;
    result.write_csv(&mut out, axis1.param, axis2.param)?;
    out.flush()?;
    eprintln!("{}", result.summary());
    Ok(ExitCode::SUCCESS)
}

fn run_validate(r: &Resolved) -> Outcome<ExitCode> {
    let seed = match r.flags.seed {
        Some(s) => s,
        None => r.from_config("seed")?.unwrap_or(42),
    };
    let samples = match r.flags.samples {
        Some(n) => n,
        None => r.from_config("samples")?.unwrap_or(1000),
    };
    let report = validate(seed, samples)?;
    println!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILURE) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let config = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let (flags, run): (&Common, fn(&Resolved) -> Outcome<ExitCode>) = match &cli.command {
        Command::Point(c) => (c, run_point),
        Command::Sweep(c) => (c, run_sweep),
        Command::Threshold(c) => (c, run_threshold),
        Command::Contour(c) => (c, run_contour),
        Command::Validate(c) => (c, run_validate),
    };
    match run(&Resolved { flags, config }) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
