//! Single-point commands, each producing one output record.

use aoi_core::aoi::{self, OptimizationResult};
use aoi_core::sim::{run_simulation, SimConfig, SimStats};
use aoi_core::{
    classify_regime, derive_constants, queue_steady_state, solve_fixed_point, Regime, SystemParams,
    DEFAULT_TOL,
};

use crate::error::CliError;
use crate::record::Record;

pub fn solve(params: &SystemParams) -> Result<Record, CliError> {
    let sol = solve_fixed_point(params, DEFAULT_TOL)?;
    let class = classify_regime(params)?;
    let consts = derive_constants(params)?;
    let queue = queue_steady_state(params, sol.selected)?;
    let residual = sol.residuals.iter().copied().fold(0.0, f64::max);

    let mut r = Record::new();
    r.push("regime", sol.regime.as_str())
        .push("roots", sol.roots.len())
        .push("p_A", sol.p_a)
        .push("p_S", sol.p_s)
        .push("p_L", sol.p_l)
        .push("selected", sol.selected)
        .push("g_root_low", sol.g_roots.first().copied())
        .push("g_root_high", sol.g_roots.get(1).copied())
        .push("max_residual", residual)
        .push("clamped", sol.clamped)
        .push("xi_low", class.xi_window.map(|w| w.low))
        .push("xi_high", class.xi_window.map(|w| w.high))
        .push("lambda", params.lambda)
        .push("lambda_c_r2", consts.lcr2)
        .push("K", consts.k)
        .push("c", consts.c)
        .push("rho", queue.rho)
        .push("pi0", queue.pi0);
    Ok(r)
}

pub fn aoi(params: &SystemParams) -> Result<Record, CliError> {
    let sol = solve_fixed_point(params, DEFAULT_TOL)?;
    let res = aoi::peak_aoi(params, sol.selected)?;
    let low = match sol.regime {
        Regime::TriRoot => Some(aoi::peak_aoi(params, sol.p_a)?.a_p),
        Regime::SingleRoot => None,
    };
    let mut r = Record::new();
    r.push("regime", sol.regime.as_str())
        .push("p_used", res.p_used)
        .push("a_p", res.a_p)
        .push("mean_service", res.mean_service)
        .push("mean_interdeparture", res.mean_interdeparture)
        .push("a_p_at_p_A", low);
    Ok(r)
}

pub fn optimization(res: &OptimizationResult) -> Record {
    let mut r = Record::new();
    r.push("q_star", res.q)
        .push("xi_star", res.xi)
        .push("a_p_opt", res.a_p_opt)
        .push("branch", res.branch.as_str())
        .push("p_at_opt", res.p_at_opt)
        .push("p_star", res.p_star)
        .push("fell_back", res.fell_back);
    r
}

pub fn simulation(config: &SimConfig, stats: &SimStats) -> Result<Record, CliError> {
    let analytic = solve_fixed_point(&config.params, DEFAULT_TOL)?;
    let a_p = aoi::peak_aoi(&config.params, analytic.selected)?.a_p;
    let mut r = Record::new();
    r.push("a_p_sim", stats.peak_aoi_mean)
        .push("ci95", stats.peak_aoi_ci95)
        .push("success_rate_sim", stats.success_rate)
        .push("success_rate_ci95", stats.success_rate_ci95)
        .push("success_count", stats.success_count)
        .push("attempts", stats.attempts)
        .push("drops", stats.drops)
        .push("empty_buffer_fraction", stats.empty_buffer_fraction)
        .push("realizations_used", stats.realizations_used)
        .push(
            "realizations_without_delivery",
            stats.realizations_without_delivery,
        )
        .push("a_p_analytical", a_p)
        .push("p_L", analytic.p_l)
        .push("slots", config.slots)
        .push("realizations", config.realizations)
        .push("area_side", config.area_side)
        .push("seed", config.seed);
    Ok(r)
}

pub fn simulate(config: &SimConfig) -> Result<Record, CliError> {
    let stats = run_simulation(config)?;
    simulation(config, &stats)
}
