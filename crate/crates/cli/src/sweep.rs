//! One-parameter sweeps.

use std::str::FromStr;

use rayon::prelude::*;

use aoi_core::aoi::{self, OptimizationResult};
use aoi_core::sim::run_simulation;
use aoi_core::{solve_fixed_point, SystemParams, DEFAULT_TOL};

use crate::error::CliError;
use crate::record::{Record, Table};
use crate::resolve::SimOverrides;

pub const COLUMNS: [&str; 14] = [
    "axis_name",
    "axis_value",
    "p_A",
    "p_S",
    "p_L",
    "regime",
    "a_p_analytical",
    "q_star",
    "xi_star",
    "a_p_opt",
    "branch",
    "a_p_sim",
    "ci95",
    "success_rate_sim",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Lambda,
    Q,
    Xi,
    R,
    Theta,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Lambda => "lambda",
            Axis::Q => "q",
            Axis::Xi => "xi",
            Axis::R => "R",
            Axis::Theta => "theta",
        }
    }

    pub fn set(self, mut params: SystemParams, value: f64) -> SystemParams {
        match self {
            Axis::Lambda => params.lambda = value,
            Axis::Q => params.q = value,
            Axis::Xi => params.xi = value,
            Axis::R => params.r = value,
            Axis::Theta => params.theta = value,
        }
        params
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "lambda" => Ok(Axis::Lambda),
            "q" => Ok(Axis::Q),
            "xi" => Ok(Axis::Xi),
            "R" | "r" => Ok(Axis::R),
            "theta" => Ok(Axis::Theta),
            other => Err(CliError::usage(format!(
                "unknown sweep axis {other:?} (expected lambda, q, xi, R or theta)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Solve,
    Aoi,
    OptimizeQ,
    OptimizeXi,
    OptimizeJoint,
    Simulate,
}

impl Task {
    fn is_optimizer(self) -> bool {
        matches!(
            self,
            Task::OptimizeQ | Task::OptimizeXi | Task::OptimizeJoint
        )
    }
}

impl FromStr for Task {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "solve" => Ok(Task::Solve),
            "aoi" => Ok(Task::Aoi),
            "optimize-q" => Ok(Task::OptimizeQ),
            "optimize-xi" => Ok(Task::OptimizeXi),
            "optimize-joint" => Ok(Task::OptimizeJoint),
            "simulate" => Ok(Task::Simulate),
            other => Err(CliError::usage(format!("unknown sweep task {other:?}"))),
        }
    }
}

/// Rejects empty or non-finite value lists.
pub fn check_values(values: Vec<f64>) -> Result<Vec<f64>, CliError> {
    if values.len() < 2 {
        return Err(CliError::usage("a sweep needs at least 2 values"));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::usage(format!("non-finite sweep value {v}")));
    }
    Ok(values)
}

/// Parses `0.1,0.2,0.3`.
pub fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    let values = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad sweep value {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_values(values)
}

/// Parses `aoi,simulate`. Duplicates are dropped; at most one optimizer.
pub fn parse_tasks(text: &str) -> Result<Vec<Task>, CliError> {
    let mut tasks: Vec<Task> = Vec::new();
    for tok in text.split(',') {
        let t: Task = tok.parse()?;
        if !tasks.contains(&t) {
            tasks.push(t);
        }
    }
    if tasks.iter().filter(|t| t.is_optimizer()).count() > 1 {
        return Err(CliError::usage("a sweep can run at most one optimize task"));
    }
    Ok(tasks)
}

/// `count` points from `from` to `to` inclusive, linear or geometric.
pub fn grid(from: f64, to: f64, count: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if count < 2 {
        return Err(CliError::usage("sweep --count must be at least 2"));
    }
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::usage("sweep bounds must be finite"));
    }
    if log && !(from > 0.0 && to > 0.0) {
        return Err(CliError::usage("log sweeps need positive bounds"));
    }
    let last = (count - 1) as f64;
    let values = (0..count)
        .map(|i| {
            let t = i as f64 / last;
            if i == 0 {
                from
            } else if i == count - 1 {
                to
            } else if log {
                (from.ln() + t * (to.ln() - from.ln())).exp()
            } else {
                from + t * (to - from)
            }
        })
        .collect();
    Ok(values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub tasks: Vec<Task>,
}

impl SweepSpec {
    pub fn new(axis: Axis, values: Vec<f64>, tasks: Vec<Task>) -> Result<Self, CliError> {
        if tasks.is_empty() {
            return Err(CliError::usage("sweep needs at least one task"));
        }
        Ok(SweepSpec {
            axis,
            values: check_values(values)?,
            tasks,
        })
    }

    /// Parameter sets for every grid point, validated up front.
    pub fn points(&self, base: SystemParams) -> Result<Vec<SystemParams>, CliError> {
        self.values
            .iter()
            .map(|&v| {
                let p = self.axis.set(base, v);
                p.validate()?;
                Ok(p)
            })
            .collect()
    }
}

fn row(
    spec: &SweepSpec,
    value: f64,
    params: &SystemParams,
    sim: &SimOverrides,
) -> Result<Record, CliError> {
    let mut r = Record::new();
    r.push("axis_name", spec.axis.as_str())
        .push("axis_value", value);

    let wants = |t: Task| spec.tasks.contains(&t);
    if wants(Task::Solve) || wants(Task::Aoi) {
        let sol = solve_fixed_point(params, DEFAULT_TOL)?;
        r.push("p_A", sol.p_a)
            .push("p_S", sol.p_s)
            .push("p_L", sol.p_l)
            .push("regime", sol.regime.as_str());
        if wants(Task::Aoi) {
            r.push("a_p_analytical", aoi::peak_aoi(params, sol.selected)?.a_p);
        }
    }

    let opt: Option<OptimizationResult> = if wants(Task::OptimizeQ) {
        Some(aoi::optimize_q(params)?)
    } else if wants(Task::OptimizeXi) {
        Some(aoi::optimize_xi(params)?)
    } else if wants(Task::OptimizeJoint) {
        Some(aoi::optimize_joint(params)?)
    } else {
        None
    };
    if let Some(o) = opt {
        r.push("q_star", o.q)
            .push("xi_star", o.xi)
            .push("a_p_opt", o.a_p_opt)
            .push("branch", o.branch.as_str());
    }

    if wants(Task::Simulate) {
        let stats = run_simulation(&sim.config(*params)?)?;
        r.push("a_p_sim", stats.peak_aoi_mean)
            .push("ci95", stats.peak_aoi_ci95)
            .push("success_rate_sim", stats.success_rate);
    }
    Ok(r)
}

/// Evaluates every grid point concurrently; rows come back in grid order.
pub fn run(spec: &SweepSpec, base: SystemParams, sim: &SimOverrides) -> Result<Table, CliError> {
    let points = spec.points(base)?;
    if spec.tasks.contains(&Task::Simulate) {
        for p in &points {
            sim.config(*p)?;
        }
    }
    let rows = spec
        .values
        .par_iter()
        .zip(points.par_iter())
        .map(|(&v, p)| row(spec, v, p, sim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table {
        columns: COLUMNS.to_vec(),
        rows,
    })
}
