//! Numerical sign tables for logarithmic and plain complete monotonicity.
//!
//! Every verdict here is a falsifier: `ConsistentUpTo` means no sign violation
//! was found on the sampled grid up to the sampled order, nothing more.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{Analytic, FamilyTemplate, MeasureRep};
use crate::numdiff;
use crate::theorem;

/// Floor and relative factor of the per-entry tolerance.
pub const TOLERANCE: f64 = 1e-10;

/// Upper bound on the number of samples in one sweep.
pub const MAX_SWEEP_SAMPLES: usize = 10_000;

/// Upper bound on grid sizes.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Finite-difference steps below this are refused.
pub const MIN_FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

impl std::str::FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Spacing::Log),
            "linear" => Ok(Spacing::Linear),
            _ => Err(Error::parse(s, "spacing is log or linear")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let g = GridSpec {
            x_min,
            x_max,
            points,
            spacing,
        };
        g.validate()?;
        Ok(g)
    }

    /// 200 log-spaced points on `[0.01, 100]`.
    pub fn desk() -> Self {
        GridSpec {
            x_min: 0.01,
            x_max: 100.0,
            points: 200,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.points < 2 || self.points > MAX_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need 2..={MAX_GRID_POINTS} points, got {}",
                self.points
            )));
        }
        if self.spacing == Spacing::Log && self.x_min <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "log spacing needs x_min > 0, got {}",
                self.x_min
            )));
        }
        Ok(())
    }

    /// Abscissae in ascending order; both endpoints are exact.
    pub fn abscissae(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.x_min;
                }
                if i == n - 1 {
                    return self.x_max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.x_min + t * (self.x_max - self.x_min),
                    Spacing::Log => self.x_min * ((self.x_max / self.x_min).ln() * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Entries `(-1)^k [ln f]^(k)`, `k = 1..=K`.
    Lcm,
    /// Entries `(-1)^k f^(k)`, `k = 0..=K`.
    Cm,
}

impl Mode {
    pub fn first_order(self) -> usize {
        match self {
            Mode::Lcm => 1,
            Mode::Cm => 0,
        }
    }
}

/// How a reported violation was corroborated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Confirmation {
    /// The closed form also gives a violating value.
    ClosedForm { value: f64 },
    /// No independent closed form exists for this target.
    SeriesOnly,
    /// The closed form does not reproduce the violation.
    Disputed { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentUpTo {
        order: usize,
        grid: GridSpec,
        tolerance: f64,
    },
    /// The smallest violating order, then the smallest violating abscissa.
    Violation {
        k: usize,
        x: f64,
        value: f64,
        tolerance: f64,
        confirmation: Confirmation,
    },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::ConsistentUpTo { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::ConsistentUpTo { .. } => "consistent",
            Verdict::Violation { .. } => "violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignTable {
    pub grid: GridSpec,
    pub max_order: usize,
    pub mode: Mode,
    pub abscissae: Vec<f64>,
    /// `entries[r][i]` holds order `mode.first_order() + r` at `abscissae[i]`.
    pub entries: Vec<Vec<f64>>,
    pub verdict: Verdict,
}

impl SignTable {
    pub fn orders(&self) -> std::ops::RangeInclusive<usize> {
        self.mode.first_order()..=self.max_order
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.entries[k - self.mode.first_order()]
    }

    /// `TOLERANCE * max(1, |neighbouring entries|)` within row `k`.
    pub fn tolerance(&self, k: usize, i: usize) -> f64 {
        neighbourhood_tolerance(self.row(k), i)
    }
}

fn neighbourhood_tolerance(row: &[f64], i: usize) -> f64 {
    let lo = i.saturating_sub(1);
    let hi = (i + 1).min(row.len() - 1);
    let scale = row[lo..=hi].iter().fold(1.0f64, |m, v| m.max(v.abs()));
    TOLERANCE * scale
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > theorem::MAX_THEOREM_ORDER {
        return Err(Error::OrderExceeded {
            requested: order,
            available: theorem::MAX_THEOREM_ORDER,
        });
    }
    Ok(())
}

fn build_table<T: Analytic + ?Sized>(
    target: &T,
    grid: &GridSpec,
    order: usize,
    mode: Mode,
) -> Result<SignTable> {
    grid.validate()?;
    check_order(order)?;
    let domain = target.domain()?;
    let xs = grid.abscissae();
    if let Some(x) = xs.iter().find(|x| !domain.contains(**x)) {
        return Err(Error::InvalidGrid(format!(
            "point {x} lies outside the domain ({}, {})",
            domain.lo, domain.hi
        )));
    }
    let columns: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| {
            let series = match mode {
                Mode::Lcm => target.ln_series_at(x, order)?,
                Mode::Cm => target.series_at(x, order)?,
            };
            let d = series.derivatives();
            Ok((mode.first_order()..=order)
                .map(|k| if k % 2 == 0 { d[k] } else { -d[k] })
                .collect())
        })
        .collect::<Result<_>>()?;
    let rows = order + 1 - mode.first_order();
    let entries: Vec<Vec<f64>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();

    let mut violation = None;
    'scan: for (r, row) in entries.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            let tol = neighbourhood_tolerance(row, i);
            if v < -tol || !v.is_finite() {
                violation = Some((mode.first_order() + r, xs[i], v, tol));
                break 'scan;
            }
        }
    }
    let verdict = match violation {
        None => Verdict::ConsistentUpTo {
            order,
            grid: *grid,
            tolerance: TOLERANCE,
        },
        Some((k, x, value, tolerance)) => Verdict::Violation {
            k,
            x,
            value,
            tolerance,
            confirmation: confirm(target, mode, k, x, tolerance),
        },
    };
    Ok(SignTable {
        grid: *grid,
        max_order: order,
        mode,
        abscissae: xs,
        entries,
        verdict,
    })
}

fn confirm<T: Analytic + ?Sized>(
    target: &T,
    mode: Mode,
    k: usize,
    x: f64,
    tolerance: f64,
) -> Confirmation {
    match (mode, target.general_ratio()) {
        (Mode::Lcm, Some((a, b, c))) => match theorem::kth_log_derivative(a, b, c, k, x) {
            Ok(value) if value < -tolerance => Confirmation::ClosedForm { value },
            Ok(value) => Confirmation::Disputed { value },
            Err(_) => Confirmation::Disputed { value: f64::NAN },
        },
        _ => Confirmation::SeriesOnly,
    }
}

/// Signs of `(-1)^k [ln f]^(k)` for `k = 1..=order`.
pub fn lcm_sign_table<T: Analytic + ?Sized>(
    target: &T,
    grid: &GridSpec,
    order: usize,
) -> Result<SignTable> {
    build_table(target, grid, order, Mode::Lcm)
}

/// Signs of `(-1)^k f^(k)` for `k = 0..=order`.
pub fn cm_sign_table<T: Analytic + ?Sized>(
    target: &T,
    grid: &GridSpec,
    order: usize,
) -> Result<SignTable> {
    build_table(target, grid, order, Mode::Cm)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub measure: MeasureRep,
    pub lcm: SignTable,
    pub cm: SignTable,
}

impl InclusionReport {
    pub fn both_consistent(&self) -> bool {
        self.lcm.verdict.is_consistent() && self.cm.verdict.is_consistent()
    }
}

/// Runs both tables on a Stieltjes transform, which must pass both.
pub fn inclusion_demo(m: &MeasureRep, grid: &GridSpec, order: usize) -> Result<InclusionReport> {
    m.validate()?;
    Ok(InclusionReport {
        measure: m.clone(),
        lcm: lcm_sign_table(m, grid, order)?,
        cm: cm_sign_table(m, grid, order)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdCrossCheck {
    pub x: f64,
    pub k: usize,
    pub step: f64,
    /// `[ln f]^(k)(x)` from the series engine.
    pub series: f64,
    /// The same derivative by extrapolated central differences.
    pub fd: f64,
    pub fd_error: f64,
    pub rel_err: f64,
}

/// Compares the series derivative of `ln f` with Richardson-extrapolated differences.
pub fn finite_difference_crosscheck<T: Analytic + ?Sized>(
    target: &T,
    x: f64,
    k: usize,
) -> Result<FdCrossCheck> {
    if !(1..=4).contains(&k) {
        return Err(Error::OrderExceeded {
            requested: k,
            available: 4,
        });
    }
    let domain = target.domain()?;
    if !domain.contains(x) {
        return Err(Error::domain("finite-difference cross-check", x));
    }
    let step = 0.5f64.min(domain.margin(x) / (10.0 * numdiff::stencil_reach(k)));
    if step < MIN_FD_STEP {
        return Err(Error::StepUnderflow(x));
    }
    let series = target.ln_series_at(x, k)?.derivative(k)?;
    let (fd, fd_error) =
        numdiff::richardson(|t| target.ln_evaluate(t).unwrap_or(f64::NAN), x, step, k);
    let scale = series.abs().max(fd.abs());
    let rel_err = if scale == 0.0 {
        0.0
    } else {
        (series - fd).abs() / scale
    };
    Ok(FdCrossCheck {
        x,
        k,
        step,
        series,
        fd,
        fd_error,
        rel_err,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamRange {
    /// `from, from + step, ...` up to `to` inclusive.
    Stepped {
        from: f64,
        to: f64,
        step: f64,
    },
    Values(Vec<f64>),
}

impl ParamRange {
    /// Samples in ascending order.
    pub fn samples(&self) -> Result<Vec<f64>> {
        let mut out = match self {
            ParamRange::Stepped { from, to, step } => {
                if !(from.is_finite() && to.is_finite() && step.is_finite() && *step > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "sweep range needs finite bounds and a positive step, got {from}..{to} by {step}"
                    )));
                }
                if to < from {
                    return Ok(Vec::new());
                }
                // tolerate the rounding in (to - from) / step
                let n = ((to - from) / step * (1.0 + 1e-12)).floor();
                if n + 1.0 > MAX_SWEEP_SAMPLES as f64 {
                    return Err(Error::InvalidParameter(format!(
                        "sweep has more than {MAX_SWEEP_SAMPLES} samples"
                    )));
                }
                (0..=n as usize).map(|i| from + i as f64 * step).collect()
            }
            ParamRange::Values(v) => {
                if v.len() > MAX_SWEEP_SAMPLES {
                    return Err(Error::InvalidParameter(format!(
                        "sweep has more than {MAX_SWEEP_SAMPLES} samples"
                    )));
                }
                if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "sweep value {bad} is not finite"
                    )));
                }
                v.clone()
            }
        };
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SweepOutcome {
    Verdict(Verdict),
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub outcome: SweepOutcome,
}

/// LCM verdicts for each value of `free`, in ascending parameter order.
///
/// Failures of individual samples are recorded in their row.
pub fn sweep(
    template: &FamilyTemplate,
    free: &str,
    range: &ParamRange,
    grid: &GridSpec,
    order: usize,
) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    check_order(order)?;
    let samples = range.samples()?;
    Ok(samples
        .par_iter()
        .map(|&param| {
            let outcome = template
                .with(free, param)
                .build()
                .and_then(|target| lcm_sign_table(&target, grid, order))
                .map_or_else(
                    |e| SweepOutcome::Error {
                        message: e.to_string(),
                    },
                    |t| SweepOutcome::Verdict(t.verdict),
                );
            SweepRow { param, outcome }
        })
        .collect())
}
