//! Data tables behind the standard figures.
//!
//! Each figure has a base parameter set, an optional family parameter (one
//! curve per value) and an x-axis. A user override of either collapses it to
//! the single given value; other overrides replace base values.

use rayon::prelude::*;

use aoi_core::aoi;
use aoi_core::sim::run_simulation;
use aoi_core::{solve_fixed_point, Snr, SystemParams, DEFAULT_TOL};

use crate::args::Figure;
use crate::error::CliError;
use crate::record::{Record, Table};
use crate::resolve::{ParamOverrides, SimOverrides};
use crate::sweep::Axis;

struct Layout {
    base: SystemParams,
    family: Option<(Axis, Vec<f64>)>,
    axis: (Axis, Vec<f64>),
    columns: &'static [&'static str],
    simulated: bool,
}

fn steps(first: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| first + step * i as f64).collect()
}

/// λ = 0.005, 0.010, …, 0.1.
fn lambda_axis() -> Vec<f64> {
    (1..=20).map(|i| i as f64 * 0.005).collect()
}

fn base(r: f64, theta: f64, q: f64, xi: f64) -> SystemParams {
    SystemParams {
        lambda: 0.05,
        r,
        alpha: 3.0,
        theta,
        snr: Snr::Finite(20.0),
        q,
        xi,
        c_override: None,
    }
}

fn layout(figure: Figure) -> Layout {
    match figure {
        Figure::Fig3 => Layout {
            base: base(3.0, 0.2, 1.0, 0.3),
            family: Some((Axis::Xi, vec![0.3, 0.6, 0.9])),
            axis: (Axis::Lambda, lambda_axis()),
            columns: &["xi", "lambda", "q_star", "a_p_opt", "branch"],
            simulated: false,
        },
        Figure::Fig4 => Layout {
            base: base(3.0, 0.5, 0.2, 1.0),
            family: Some((Axis::Q, vec![0.2, 0.4, 0.6, 0.8])),
            axis: (Axis::Lambda, lambda_axis()),
            columns: &["q", "lambda", "xi_star", "a_p_opt", "branch"],
            simulated: false,
        },
        Figure::Fig5 => Layout {
            base: base(1.0, 0.2, 1.0, 1.0),
            family: Some((Axis::R, vec![1.0, 2.0, 3.0])),
            axis: (Axis::Lambda, steps(0.01, 0.01, 5)),
            columns: &[
                "R",
                "lambda",
                "p_L",
                "a_p_analytical",
                "a_p_simulated",
                "ci95",
                "success_rate_sim",
            ],
            simulated: true,
        },
        Figure::Fig6 => Layout {
            base: base(3.0, 0.8, 1.0, 1.0),
            family: Some((Axis::Lambda, vec![0.01, 0.03, 0.05])),
            axis: (Axis::Q, steps(0.05, 0.05, 20)),
            columns: &[
                "lambda",
                "q",
                "a_p_analytical",
                "a_p_simulated",
                "ci95",
                "q_star",
                "a_p_opt",
            ],
            simulated: true,
        },
        Figure::Fig7 => Layout {
            base: base(2.0, 0.8, 1.0, 1.0),
            family: Some((Axis::Lambda, vec![0.01, 0.03, 0.05])),
            axis: (Axis::Xi, steps(0.05, 0.05, 20)),
            columns: &[
                "lambda",
                "xi",
                "a_p_analytical",
                "a_p_simulated",
                "ci95",
                "xi_star",
                "a_p_opt",
            ],
            simulated: true,
        },
        Figure::Fig8 => Layout {
            base: base(3.0, 0.8, 0.6, 1.0),
            family: None,
            axis: (Axis::Lambda, lambda_axis()),
            columns: &[
                "lambda",
                "a_p_fixed",
                "a_p_opt_q",
                "q_star",
                "a_p_opt_xi",
                "xi_star",
                "a_p_opt_joint",
                "xi_star_joint",
            ],
            simulated: false,
        },
    }
}

fn overridden(o: &ParamOverrides, axis: Axis) -> bool {
    match axis {
        Axis::Lambda => o.lambda.is_some(),
        Axis::Q => o.q.is_some(),
        Axis::Xi => o.xi.is_some(),
        Axis::R => o.r.is_some(),
        Axis::Theta => o.theta.is_some(),
    }
}

fn value_of(p: &SystemParams, axis: Axis) -> f64 {
    match axis {
        Axis::Lambda => p.lambda,
        Axis::Q => p.q,
        Axis::Xi => p.xi,
        Axis::R => p.r,
        Axis::Theta => p.theta,
    }
}

fn values(o: &ParamOverrides, p: &SystemParams, (axis, default): &(Axis, Vec<f64>)) -> Vec<f64> {
    if overridden(o, *axis) {
        vec![value_of(p, *axis)]
    } else {
        default.clone()
    }
}

fn row(
    figure: Figure,
    family: Option<(Axis, f64)>,
    (axis, x): (Axis, f64),
    params: &SystemParams,
    sim: Option<&SimOverrides>,
) -> Result<Record, CliError> {
    let mut r = Record::new();
    if let Some((a, v)) = family {
        r.push(a.as_str(), v);
    }
    r.push(axis.as_str(), x);

    match figure {
        Figure::Fig3 => {
            let o = aoi::optimize_q(params)?;
            r.push("q_star", o.q)
                .push("a_p_opt", o.a_p_opt)
                .push("branch", o.branch.as_str());
        }
        Figure::Fig4 => {
            let o = aoi::optimize_xi(params)?;
            r.push("xi_star", o.xi)
                .push("a_p_opt", o.a_p_opt)
                .push("branch", o.branch.as_str());
        }
        Figure::Fig5 | Figure::Fig6 | Figure::Fig7 => {
            let sol = solve_fixed_point(params, DEFAULT_TOL)?;
            r.push("p_L", sol.p_l)
                .push("a_p_analytical", aoi::peak_aoi(params, sol.selected)?.a_p);
            if figure == Figure::Fig6 {
                let o = aoi::optimize_q(params)?;
                r.push("q_star", o.q).push("a_p_opt", o.a_p_opt);
            } else if figure == Figure::Fig7 {
                let o = aoi::optimize_xi(params)?;
                r.push("xi_star", o.xi).push("a_p_opt", o.a_p_opt);
            }
            if let Some(sim) = sim {
                let stats = run_simulation(&sim.config(*params)?)?;
                r.push("a_p_simulated", stats.peak_aoi_mean)
                    .push("ci95", stats.peak_aoi_ci95)
                    .push("success_rate_sim", stats.success_rate);
            }
        }
        Figure::Fig8 => {
            let fixed = aoi::peak_aoi_at_steady_state(params)?;
            let oq = aoi::optimize_q(params)?;
            let ox = aoi::optimize_xi(params)?;
            let oj = aoi::optimize_joint(params)?;
            r.push("a_p_fixed", fixed.a_p)
                .push("a_p_opt_q", oq.a_p_opt)
                .push("q_star", oq.q)
                .push("a_p_opt_xi", ox.a_p_opt)
                .push("xi_star", ox.xi)
                .push("a_p_opt_joint", oj.a_p_opt)
                .push("xi_star_joint", oj.xi);
        }
    }
    Ok(r)
}

pub fn columns(figure: Figure) -> &'static [&'static str] {
    layout(figure).columns
}

pub fn reproduce(
    figure: Figure,
    overrides: &ParamOverrides,
    sim: &SimOverrides,
    analytic_only: bool,
) -> Result<Table, CliError> {
    let layout = layout(figure);
    let base = overrides.apply(layout.base)?;

    let family: Vec<Option<(Axis, f64)>> = match &layout.family {
        Some(f) => values(overrides, &base, f)
            .into_iter()
            .map(|v| Some((f.0, v)))
            .collect(),
        None => vec![None],
    };
    let xs = values(overrides, &base, &layout.axis);
    let mut points = Vec::new();
    for f in &family {
        for &x in &xs {
            let mut p = base;
            if let Some((a, v)) = *f {
                p = a.set(p, v);
            }
            p = layout.axis.0.set(p, x);
            p.validate()?;
            points.push((*f, x, p));
        }
    }

    let sim = (layout.simulated && !analytic_only).then_some(sim);
    if let Some(sim) = sim {
        sim.config(base)?;
    }
    let rows = points
        .par_iter()
        .map(|(f, x, p)| row(figure, *f, (layout.axis.0, *x), p, sim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table {
        columns: layout.columns.to_vec(),
        rows,
    })
}
