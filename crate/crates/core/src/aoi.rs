//! Peak age of information of a link and its minimization over the channel
//! access probability `q` and the packet arrival rate `ξ`.
//!
//! The peak AoI of a Geo/Geo/1/1 link with per-slot service probability `qp` is
//! `A_p = 1/ξ + 2/(qp) − 1`. Because `p` itself depends on `q` and `ξ` through
//! the fixed point, the optimizers below are closed forms with a branch
//! condition each; [`grid_oracle`] brute-forces the same minimization through
//! the full fixed-point solve and serves as their independent check.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_point::{solve_fixed_point, DEFAULT_TOL};
use crate::model::{derive_constants, SystemParams};

/// Relative mismatch tolerated between a closed-form optimum and the same
/// quantity recomputed through the fixed-point solver.
pub const VERIFY_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakAoiResult {
    pub a_p: f64,
    pub p_used: f64,
    /// `E[T] = 1/(qp)`.
    pub mean_service: f64,
    /// `E[Y] = 1/ξ − 1 + 1/(qp)`.
    pub mean_interdeparture: f64,
}

pub fn peak_aoi(params: &SystemParams, p: f64) -> Result<PeakAoiResult> {
    params.validate()?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in (0, 1]",
        });
    }
    let mean_service = 1.0 / (params.q * p);
    let mean_interdeparture = 1.0 / params.xi - 1.0 + mean_service;
    Ok(PeakAoiResult {
        a_p: mean_service + mean_interdeparture,
        p_used: p,
        mean_service,
        mean_interdeparture,
    })
}

/// Peak AoI at the default (largest-root) steady state.
pub fn peak_aoi_at_steady_state(params: &SystemParams) -> Result<PeakAoiResult> {
    let sol = solve_fixed_point(params, DEFAULT_TOL)?;
    peak_aoi(params, sol.selected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Interior,
    Boundary,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Interior => "interior",
            Branch::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    /// Access probability at the optimum (the given `q` when only ξ is tuned).
    pub q: f64,
    /// Arrival rate at the optimum (the given `ξ` when only q is tuned).
    pub xi: f64,
    pub a_p_opt: f64,
    pub branch: Branch,
    pub p_at_opt: f64,
    /// Largest root of the q = 1 fixed point; set by [`optimize_q`] only.
    pub p_star: Option<f64>,
    /// The interior formula fired but produced an argument outside (0, 1],
    /// and the boundary branch was used instead.
    pub fell_back: bool,
}

/// Largest root of `p = exp(−λcR² ξ/(ξ + p(1−ξ)) − K)`, i.e. the steady state
/// at `q = 1`.
pub fn solve_p_star(params: &SystemParams) -> Result<f64> {
    Ok(solve_fixed_point(&params.with_q(1.0), DEFAULT_TOL)?.p_l)
}

fn verified(params: &SystemParams, mut result: OptimizationResult) -> Result<OptimizationResult> {
    let at = params.with_q(result.q).with_xi(result.xi);
    let solved = peak_aoi_at_steady_state(&at)?;
    let rel = (solved.a_p - result.a_p_opt).abs() / result.a_p_opt.abs().max(1.0);
    if !(rel <= VERIFY_RTOL) {
        return Err(Error::VerificationFailed {
            closed_form: result.a_p_opt,
            solved: solved.a_p,
        });
    }
    result.p_at_opt = solved.p_used;
    Ok(result)
}

/// Optimal access probability for the arrival rate in `params`.
pub fn optimize_q(params: &SystemParams) -> Result<OptimizationResult> {
    let dc = derive_constants(params)?;
    let (l, k, xi) = (dc.lcr2, dc.k, dc.xi);
    let p_star = solve_p_star(params)?;
    let boundary = OptimizationResult {
        q: 1.0,
        xi,
        a_p_opt: 1.0 / xi + 2.0 / p_star - 1.0,
        branch: Branch::Boundary,
        p_at_opt: p_star,
        p_star: Some(p_star),
        fell_back: false,
    };
    let odds_inv = (1.0 - xi) / xi;
    if !(l > 1.0 + p_star * odds_inv) {
        return verified(params, boundary);
    }
    let q_star = 1.0 / (l - (-k - 1.0).exp() * odds_inv);
    if !(q_star > 0.0 && q_star <= 1.0) {
        return verified(
            params,
            OptimizationResult {
                fell_back: true,
                ..boundary
            },
        );
    }
    verified(
        params,
        OptimizationResult {
            q: q_star,
            xi,
            a_p_opt: 2.0 * l * (k + 1.0).exp() - 1.0 / xi + 1.0,
            branch: Branch::Interior,
            p_at_opt: (-k - 1.0).exp(),
            p_star: Some(p_star),
            fell_back: false,
        },
    )
}

/// Interior optimum over ξ for fixed access probability `q`:
/// returns `(ξ*, A_p, p)`.
fn xi_interior(l: f64, k: f64, q: f64) -> (f64, f64, f64) {
    let s = (1.0 + 4.0 / (q * l)).sqrt();
    let p = (-2.0 / (s + 1.0) - k).exp();
    let scaled = q * l * (s + 1.0);
    let xi = 2.0 * q * p / (scaled + 2.0 * q * p - 2.0);
    let a_p = (scaled + 2.0) / (2.0 * q * p);
    (xi, a_p, p)
}

/// Optimal arrival rate for the access probability in `params`.
pub fn optimize_xi(params: &SystemParams) -> Result<OptimizationResult> {
    let dc = derive_constants(params)?;
    let (l, k, q) = (dc.lcr2, dc.k, dc.q);
    let p_boundary = (-l * q - k).exp();
    let boundary = OptimizationResult {
        q,
        xi: 1.0,
        a_p_opt: 2.0 / q * (l * q + k).exp(),
        branch: Branch::Boundary,
        p_at_opt: p_boundary,
        p_star: None,
        fell_back: false,
    };
    if !(l > 1.0 / (2.0 * q)) {
        return verified(params, boundary);
    }
    let (xi_star, a_p, p) = xi_interior(l, k, q);
    if !(xi_star > 0.0 && xi_star <= 1.0) {
        return verified(
            params,
            OptimizationResult {
                fell_back: true,
                ..boundary
            },
        );
    }
    verified(
        params,
        OptimizationResult {
            q,
            xi: xi_star,
            a_p_opt: a_p,
            branch: Branch::Interior,
            p_at_opt: p,
            p_star: None,
            fell_back: false,
        },
    )
}

/// Joint optimum over `(q, ξ)`. The optimal access probability is always one,
/// so this is [`optimize_xi`] at `q = 1`.
pub fn optimize_joint(params: &SystemParams) -> Result<OptimizationResult> {
    optimize_xi(&params.with_q(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleAxis {
    Q,
    Xi,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridOptimum {
    pub q: f64,
    pub xi: f64,
    pub a_p: f64,
    /// Lattice spacing along each swept axis.
    pub step: f64,
}

/// Brute-force minimum of the peak AoI on the lattice `{i/n : i = 1..=n}` of
/// the selected axes, every point solved through the fixed point.
///
/// Points are evaluated in parallel and reduced in lattice order, with ties
/// going to the lowest index, so the result does not depend on the number of
/// worker threads.
pub fn grid_oracle(
    params: &SystemParams,
    axis: OracleAxis,
    resolution: usize,
) -> Result<GridOptimum> {
    if resolution < 100 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: resolution as f64,
            reason: "need at least 100 points per axis",
        });
    }
    params.validate()?;
    let step = 1.0 / resolution as f64;
    let level = |i: usize| (i + 1) as f64 / resolution as f64;
    let points: Vec<(f64, f64)> = match axis {
        OracleAxis::Q => (0..resolution).map(|i| (level(i), params.xi)).collect(),
        OracleAxis::Xi => (0..resolution).map(|i| (params.q, level(i))).collect(),
        OracleAxis::Joint => (0..resolution)
            .flat_map(|i| (0..resolution).map(move |j| (level(i), level(j))))
            .collect(),
    };
    let values = points
        .par_iter()
        .map(|&(q, xi)| peak_aoi_at_steady_state(&params.with_q(q).with_xi(xi)).map(|r| r.a_p))
        .collect::<Result<Vec<f64>>>()?;
    let (best, a_p) = values
        .iter()
        .copied()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
        );
    let (q, xi) = points[best];
    Ok(GridOptimum { q, xi, a_p, step })
}
