//! Point evaluation, grid sweeps, threshold search and level contours.
//!
//! Every routine here is a pure function of its inputs. Sweeps evaluate grid
//! points in parallel but always return rows in row-major order (first axis
//! outer), so CSV output is byte-identical across runs.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::channel_density;
use crate::error::{invalid, Error, Result};
use crate::measures::{
    average_fidelity, channel_concurrence_margin, output_concurrence_margin, MeasureSet,
    CLASSICAL_FIDELITY_BOUND,
};
use crate::model::ModelParams;
use crate::teleport::InputState;

/// Absolute tolerance of threshold and contour bisection.
pub const BISECTION_TOLERANCE: f64 = 1e-6;
const MAX_BISECTION_STEPS: usize = 200;

pub const CSV_HEADER: &str = "J1,Delta,h,T,theta,phi,C_in,C_ch,C_out,F,F_A,quantum";

/// A scannable input of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    T,
    H,
    J1,
    Delta,
    Theta,
    Phi,
}

impl Param {
    pub const ALL: [Param; 6] = [Param::J1, Param::Delta, Param::H, Param::T, Param::Theta, Param::Phi];

    pub fn name(self) -> &'static str {
        match self {
            Param::T => "T",
            Param::H => "h",
            Param::J1 => "J1",
            Param::Delta => "Delta",
            Param::Theta => "theta",
            Param::Phi => "phi",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "temp" => Ok(Param::T),
            "h" => Ok(Param::H),
            "J1" | "j1" => Ok(Param::J1),
            "Delta" | "delta" => Ok(Param::Delta),
            "theta" => Ok(Param::Theta),
            "phi" => Ok(Param::Phi),
            other => Err(Error::InvalidSweep(format!(
                "unknown parameter `{other}` (expected T, h, J1, Delta, theta or phi)"
            ))),
        }
    }
}

/// A full set of inputs for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub j1: f64,
    pub delta: f64,
    pub h: f64,
    pub temperature: f64,
    pub theta: f64,
    pub phi: f64,
}

impl PointValues {
    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::T => self.temperature,
            Param::H => self.h,
            Param::J1 => self.j1,
            Param::Delta => self.delta,
            Param::Theta => self.theta,
            Param::Phi => self.phi,
        }
    }

    pub fn with(mut self, p: Param, value: f64) -> Self {
        match p {
            Param::T => self.temperature = value,
            Param::H => self.h = value,
            Param::J1 => self.j1 = value,
            Param::Delta => self.delta = value,
            Param::Theta => self.theta = value,
            Param::Phi => self.phi = value,
        }
        self
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.j1, self.delta, self.h)
    }

    pub fn input(&self) -> Result<InputState> {
        InputState::new(self.theta, self.phi)
    }

    /// Builds a point from named values, with `theta = pi/2` and `phi = 0`
    /// unless given. `T`, `J1`, `Delta` and `h` are required.
    pub fn from_map(values: &BTreeMap<Param, f64>) -> Result<Self> {
        let need = |p: Param| {
            values
                .get(&p)
                .copied()
                .ok_or_else(|| Error::InvalidSweep(format!("missing value for parameter `{p}`")))
        };
        Ok(Self {
            j1: need(Param::J1)?,
            delta: need(Param::Delta)?,
            h: need(Param::H)?,
            temperature: need(Param::T)?,
            theta: values.get(&Param::Theta).copied().unwrap_or(FRAC_PI_2),
            phi: values.get(&Param::Phi).copied().unwrap_or(0.0),
        })
    }
}

/// One output record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub point: PointValues,
    pub measures: MeasureSet,
}

impl ResultRow {
    pub fn quantum(&self) -> bool {
        self.measures.is_quantum()
    }

    pub fn to_csv(&self) -> String {
        let p = &self.point;
        let m = &self.measures;
        let fields = [
            p.j1, p.delta, p.h, p.temperature, p.theta, p.phi, m.c_in, m.c_ch, m.c_out, m.fidelity, m.f_avg,
        ];
        let mut line = fields.iter().map(|v| format_sig(*v)).collect::<Vec<_>>().join(",");
        line.push_str(if self.quantum() { ",1" } else { ",0" });
        line
    }
}

/// Formats with 12 significant digits, trailing zeros removed, switching to
/// exponent notation outside `[1e-4, 1e12)`.
pub fn format_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= DIGITS {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Evaluates the full pipeline at one point.
pub fn point(values: &PointValues) -> Result<ResultRow> {
    let params = values.params()?;
    let state = values.input()?;
    let rho = channel_density(&params, values.temperature)
        .map_err(|e| match e {
            Error::InvalidTemperature(t) => invalid("T", format!("must be finite and positive, got {t}")),
            other => other,
        })?;
    Ok(ResultRow {
        point: values.with(Param::Theta, state.theta()).with(Param::Phi, state.phi()),
        measures: MeasureSet::evaluate(&rho, &state),
    })
}

/// One grid axis `start..=stop` with `count` evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    /// `count >= 2` with `start < stop`, or the degenerate single value
    /// `count == 1` with `start == stop`.
    pub fn new(param: Param, start: f64, stop: f64, count: usize) -> Result<Self> {
        let axis = Self { param, start, stop, count };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidSweep(format!("axis {} has a non-finite bound", self.param)));
        }
        let ok = match self.count {
            0 => false,
            1 => self.start == self.stop,
            _ => self.start < self.stop,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSweep(format!(
                "axis {} needs count >= 2 and start < stop (got {}..{} with count {})",
                self.param, self.start, self.stop, self.count
            )))
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.start
        } else if i + 1 == self.count {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.value(i))
    }
}

/// How the input state is chosen when no angle axis is swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputMode {
    /// `theta = pi/2`, `phi = 0`.
    Maximal,
    Explicit { theta: f64, phi: f64 },
}

/// Grid description for [`sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    /// Values of every non-swept model parameter and `T`.
    pub fixed: BTreeMap<Param, f64>,
    pub input: InputMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(axis2) = &self.axis2 {
            axis2.validate()?;
            if axis2.param == self.axis1.param {
                return Err(Error::InvalidSweep(format!("both axes sweep {}", axis2.param)));
            }
        }
        for axis in self.axes() {
            if self.fixed.contains_key(&axis.param) {
                return Err(Error::InvalidSweep(format!(
                    "parameter {} is both swept and fixed",
                    axis.param
                )));
            }
            if matches!(axis.param, Param::Theta | Param::Phi) && matches!(self.input, InputMode::Explicit { .. }) {
                return Err(Error::InvalidSweep(format!(
                    "parameter {} is swept but an explicit input state was given",
                    axis.param
                )));
            }
        }
        Ok(())
    }

    fn axes(&self) -> impl Iterator<Item = &AxisSpec> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref())
    }

    fn base(&self) -> BTreeMap<Param, f64> {
        let mut base = self.fixed.clone();
        let (theta, phi) = match self.input {
            InputMode::Maximal => (FRAC_PI_2, 0.0),
            InputMode::Explicit { theta, phi } => (theta, phi),
        };
        base.entry(Param::Theta).or_insert(theta);
        base.entry(Param::Phi).or_insert(phi);
        base
    }

    /// All grid points in row-major order.
    pub fn grid(&self) -> Result<Vec<PointValues>> {
        self.validate()?;
        let mut base = self.base();
        // placeholders so the map is complete; overwritten per point
        for axis in self.axes() {
            base.insert(axis.param, axis.start);
        }
        let template = PointValues::from_map(&base)?;
        let inner = self.axis2.map(|a| a.count).unwrap_or(1);
        let mut grid = Vec::with_capacity(self.axis1.count * inner);
        for v1 in self.axis1.values() {
            let row = template.with(self.axis1.param, v1);
            match &self.axis2 {
                Some(axis2) => grid.extend(axis2.values().map(|v2| row.with(axis2.param, v2))),
                None => grid.push(row),
            }
        }
        Ok(grid)
    }
}

pub fn sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.grid()?.par_iter().map(point).collect()
}

pub fn write_csv<W: Write>(mut out: W, rows: &[ResultRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}

/// Quantities whose zero sets define thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Output concurrence vanishes.
    COutZero,
    /// Channel concurrence vanishes.
    CChZero,
    /// Average fidelity crosses the classical bound 2/3.
    FAvgTwoThirds,
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c_out_zero" => Ok(Quantity::COutZero),
            "c_ch_zero" => Ok(Quantity::CChZero),
            "f_avg_two_thirds" => Ok(Quantity::FAvgTwoThirds),
            other => Err(Error::InvalidSweep(format!(
                "unknown quantity `{other}` (expected c_out_zero, c_ch_zero or f_avg_two_thirds)"
            ))),
        }
    }
}

impl Quantity {
    /// Signed defining function; its sign change marks the threshold.
    ///
    /// The concurrences are clamped at zero past their thresholds, so the
    /// unclamped margins are used instead.
    pub fn signed(self, values: &PointValues) -> Result<f64> {
        let params = values.params()?;
        let rho = channel_density(&params, values.temperature)?;
        Ok(match self {
            Quantity::COutZero => output_concurrence_margin(&rho, values.input()?.concurrence()),
            Quantity::CChZero => channel_concurrence_margin(&rho),
            Quantity::FAvgTwoThirds => average_fidelity(&rho) - CLASSICAL_FIDELITY_BOUND,
        })
    }
}

/// Bisection for a sign change of `g` on `[lo, hi]` to
/// [`BISECTION_TOLERANCE`].
pub fn bisect(mut g: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut ga, gb) = (g(a)?, g(b)?);
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b, g_lo: ga, g_hi: gb });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if b - a <= BISECTION_TOLERANCE {
            break;
        }
        let mid = 0.5 * (a + b);
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Value of `scan` in `bracket` at which `quantity` crosses zero, with every
/// other input taken from `base`.
///
/// The average fidelity drops steeply near the critical field at low
/// temperature; the function stays continuous, so only the bracket has to
/// straddle the drop.
pub fn threshold(quantity: Quantity, scan: Param, base: &PointValues, bracket: (f64, f64)) -> Result<f64> {
    if !matches!(scan, Param::T | Param::H) {
        return Err(Error::InvalidSweep(format!("thresholds scan T or h, not {scan}")));
    }
    bisect(|x| quantity.signed(&base.with(scan, x)), bracket.0, bracket.1)
}

/// Plane for [`contour`]: `axis1` gives the columns, `axis2` the coarse grid
/// searched for crossings inside each column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub base: PointValues,
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ContourResult {
    /// `(axis1, axis2)` crossing points, column by column, ascending in axis2.
    pub points: Vec<(f64, f64)>,
    pub columns: usize,
    pub empty_columns: usize,
}

impl ContourResult {
    pub fn write_csv<W: Write>(&self, mut out: W, axis1: Param, axis2: Param) -> io::Result<()> {
        writeln!(out, "{axis1},{axis2}")?;
        for (a, b) in &self.points {
            writeln!(out, "{},{}", format_sig(*a), format_sig(*b))?;
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        format!(
            "{} crossing points; {} of {} columns without a crossing",
            self.points.len(),
            self.empty_columns,
            self.columns
        )
    }
}

/// Level set `F_A = level` traced by bisection along axis2 in every column.
pub fn contour(spec: &ContourSpec) -> Result<ContourResult> {
    spec.axis1.validate()?;
    spec.axis2.validate()?;
    if spec.axis2.count < 2 || spec.axis1.param == spec.axis2.param {
        return Err(Error::InvalidSweep("contour needs two distinct axes with count >= 2 on axis2".into()));
    }
    let g = |p: &PointValues| -> Result<f64> {
        let rho = channel_density(&p.params()?, p.temperature)?;
        Ok(average_fidelity(&rho) - spec.level)
    };
    let columns: Vec<Result<Vec<(f64, f64)>>> = spec
        .axis1
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&x| {
            let column = spec.base.with(spec.axis1.param, x);
            let samples: Vec<(f64, f64)> = spec
                .axis2
                .values()
                .map(|y| g(&column.with(spec.axis2.param, y)).map(|v| (y, v)))
                .collect::<Result<_>>()?;
            let mut found = Vec::new();
            for pair in samples.windows(2) {
                let ((y0, g0), (y1, g1)) = (pair[0], pair[1]);
                if g0 == 0.0 {
                    found.push((x, y0));
                } else if g0.signum() != g1.signum() && g1 != 0.0 {
                    let y = bisect(|y| g(&column.with(spec.axis2.param, y)), y0, y1)?;
                    found.push((x, y));
                }
            }
            if let Some(&(y, v)) = samples.last() {
                if v == 0.0 {
                    found.push((x, y));
                }
            }
            Ok(found)
        })
        .collect();

    let mut result = ContourResult { columns: spec.axis1.count, ..Default::default() };
    for column in columns {
        let column = column?;
        if column.is_empty() {
            result.empty_columns += 1;
        }
        result.points.extend(column);
    }
    Ok(result)
}
