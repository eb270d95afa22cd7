//! Turns parsed flags plus an optional config file into concrete settings.

use std::path::{Path, PathBuf};

use aoi_core::sim::{Boundary, SimConfig};
use aoi_core::{Snr, SystemParams};

use crate::args::{BoundaryArg, Cli, Command, CommonArgs, Figure, ParamArgs, SimArgs, SweepArgs};
use crate::config::ConfigFile;
use crate::error::CliError;
use crate::record::Format;
use crate::sweep::{self, SweepSpec};

/// Where λ comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaSource {
    Density(f64),
    Load(f64),
}

/// Parameter values the user set explicitly. Anything left `None` keeps the
/// value of whatever base parameter set it is applied to.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamOverrides {
    pub lambda: Option<LambdaSource>,
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub snr: Option<Snr>,
    pub q: Option<f64>,
    pub xi: Option<f64>,
    pub c: Option<f64>,
}

fn lambda_source(lambda: Option<f64>, load: Option<f64>) -> Result<Option<LambdaSource>, CliError> {
    match (lambda, load) {
        (Some(_), Some(_)) => Err(CliError::usage(
            "lambda and lambda_c_r2 are mutually exclusive",
        )),
        (Some(l), None) => Ok(Some(LambdaSource::Density(l))),
        (None, Some(x)) => Ok(Some(LambdaSource::Load(x))),
        (None, None) => Ok(None),
    }
}

impl ParamOverrides {
    pub fn merge(cli: &ParamArgs, cfg: &ConfigFile) -> Result<Self, CliError> {
        let lambda = match lambda_source(cli.lambda, cli.lambda_c_r2)? {
            Some(src) => Some(src),
            None => lambda_source(cfg.lambda, cfg.lambda_c_r2)?,
        };
        let snr = if cli.noiseless {
            Some(Snr::Noiseless)
        } else if let Some(g) = cli.gamma {
            Some(Snr::Finite(g))
        } else if cfg.noiseless == Some(true) {
            if cfg.gamma.is_some() {
                return Err(CliError::usage(
                    "gamma and noiseless are mutually exclusive",
                ));
            }
            Some(Snr::Noiseless)
        } else {
            cfg.gamma.map(Snr::Finite)
        };
        Ok(ParamOverrides {
            lambda,
            r: cli.r.or(cfg.r),
            alpha: cli.alpha.or(cfg.alpha),
            theta: cli.theta.or(cfg.theta),
            snr,
            q: cli.q.or(cfg.q),
            xi: cli.xi.or(cfg.xi),
            c: cli.c.or(cfg.c),
        })
    }

    /// Applies the overrides on top of `base` and validates the result.
    pub fn apply(&self, base: SystemParams) -> Result<SystemParams, CliError> {
        let mut p = base;
        if let Some(v) = self.r {
            p.r = v;
        }
        if let Some(v) = self.alpha {
            p.alpha = v;
        }
        if let Some(v) = self.theta {
            p.theta = v;
        }
        if let Some(v) = self.snr {
            p.snr = v;
        }
        if let Some(v) = self.q {
            p.q = v;
        }
        if let Some(v) = self.xi {
            p.xi = v;
        }
        if self.c.is_some() {
            p.c_override = self.c;
        }
        match self.lambda {
            Some(LambdaSource::Density(l)) => p.lambda = l,
            Some(LambdaSource::Load(x)) => {
                let cr2 = p.geometry_constant()? * p.r * p.r;
                if !(cr2 > 0.0 && cr2.is_finite()) {
                    return Err(CliError::usage(format!(
                        "lambda_c_r2 needs a positive c·R² (got {cr2:?})"
                    )));
                }
                p.lambda = x / cr2;
            }
            None => {}
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimOverrides {
    pub slots: Option<u64>,
    pub realizations: Option<usize>,
    pub area_side: Option<f64>,
    pub seed: Option<u64>,
    pub warmup: Option<f64>,
    pub cutoff: Option<f64>,
    pub boundary: Option<BoundaryArg>,
}

impl SimOverrides {
    pub fn merge(cli: &SimArgs, cfg: &ConfigFile) -> Self {
        SimOverrides {
            slots: cli.slots.or(cfg.slots),
            realizations: cli.realizations.or(cfg.realizations),
            area_side: cli.area_side.or(cfg.area_side),
            seed: cli.seed.or(cfg.seed),
            warmup: cli.warmup.or(cfg.warmup),
            cutoff: cli.cutoff.or(cfg.cutoff),
            boundary: cli.boundary.or(cfg.boundary),
        }
    }

    /// Desk-scale defaults with the overrides applied.
    pub fn config(&self, params: SystemParams) -> Result<SimConfig, CliError> {
        let mut cfg = SimConfig::desk(params);
        if let Some(v) = self.slots {
            cfg.slots = v;
        }
        if let Some(v) = self.realizations {
            cfg.realizations = v;
        }
        if let Some(v) = self.area_side {
            cfg.area_side = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.warmup {
            cfg.warmup_fraction = v;
        }
        if self.cutoff.is_some() {
            cfg.interference_cutoff = self.cutoff;
        }
        if let Some(b) = self.boundary {
            cfg.boundary = match b {
                BoundaryArg::Window => Boundary::Window,
                BoundaryArg::Torus => Boundary::Torus,
            };
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub params: ParamOverrides,
    pub sim: SimOverrides,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Solve,
    Aoi,
    OptimizeQ,
    OptimizeXi,
    OptimizeJoint,
    Simulate,
    Sweep(SweepSpec),
    Reproduce { figure: Figure, analytic_only: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub action: Action,
    pub settings: Settings,
}

impl Invocation {
    /// Parameters for single-point commands: defaults plus overrides.
    pub fn params(&self) -> Result<SystemParams, CliError> {
        self.settings.params.apply(SystemParams::default())
    }
}

fn settings(common: &CommonArgs, cfg: &ConfigFile) -> Result<Settings, CliError> {
    Ok(Settings {
        params: ParamOverrides::merge(&common.params, cfg)?,
        sim: SimOverrides::merge(&common.sim, cfg),
        output: common
            .output
            .clone()
            .or_else(|| cfg.output.as_ref().map(PathBuf::from)),
        format: common.format.or(cfg.format).unwrap_or_default(),
    })
}

fn sweep_spec(args: &SweepArgs, cfg: &ConfigFile) -> Result<SweepSpec, CliError> {
    use crate::config::{NameList, NumberList};

    let axis = args
        .axis
        .as_deref()
        .or(cfg.axis.as_deref())
        .ok_or_else(|| CliError::usage("sweep needs --axis"))?
        .parse()?;

    let grid_on_cli = args.from.is_some() || args.to.is_some() || args.count.is_some();
    let values = match (&args.values, grid_on_cli) {
        (Some(text), _) => sweep::parse_values(text)?,
        (None, false) if cfg.values.is_some() => match cfg.values.as_ref().unwrap() {
            NumberList::List(v) => sweep::check_values(v.clone())?,
            NumberList::Text(t) => sweep::parse_values(t)?,
        },
        _ => {
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| {
                    CliError::usage(format!(
                        "sweep needs --values or --from/--to/--count (missing {name})"
                    ))
                })
            };
            let from = need(args.from.or(cfg.from), "from")?;
            let to = need(args.to.or(cfg.to), "to")?;
            let count = args
                .count
                .or(cfg.count)
                .ok_or_else(|| CliError::usage("sweep needs --count"))?;
            sweep::grid(from, to, count, args.log || cfg.log == Some(true))?
        }
    };

    let tasks = match (&args.tasks, &cfg.tasks) {
        (Some(t), _) => sweep::parse_tasks(t)?,
        (None, Some(NameList::Text(t))) => sweep::parse_tasks(t)?,
        (None, Some(NameList::List(v))) => sweep::parse_tasks(&v.join(","))?,
        (None, None) => return Err(CliError::usage("sweep needs --tasks")),
    };
    SweepSpec::new(axis, values, tasks)
}

/// Resolves a parsed command line. `load` reads the config file, if any.
pub fn resolve_with<F>(cli: &Cli, load: F) -> Result<Invocation, CliError>
where
    F: FnOnce(&Path) -> Result<ConfigFile, CliError>,
{
    let common = match &cli.command {
        Command::Solve(c)
        | Command::Aoi(c)
        | Command::OptimizeQ(c)
        | Command::OptimizeXi(c)
        | Command::OptimizeJoint(c)
        | Command::Simulate(c) => c,
        Command::Sweep(s) => &s.common,
        Command::Reproduce(r) => &r.common,
    };
    let cfg = match &common.config {
        Some(path) => load(path)?,
        None => ConfigFile::default(),
    };
    let settings = settings(common, &cfg)?;
    let action = match &cli.command {
        Command::Solve(_) => Action::Solve,
        Command::Aoi(_) => Action::Aoi,
        Command::OptimizeQ(_) => Action::OptimizeQ,
        Command::OptimizeXi(_) => Action::OptimizeXi,
        Command::OptimizeJoint(_) => Action::OptimizeJoint,
        Command::Simulate(_) => Action::Simulate,
        Command::Sweep(s) => Action::Sweep(sweep_spec(s, &cfg)?),
        Command::Reproduce(r) => Action::Reproduce {
            figure: r.figure,
            analytic_only: r.analytic_only,
        },
    };
    Ok(Invocation { action, settings })
}

pub fn resolve(cli: &Cli) -> Result<Invocation, CliError> {
    resolve_with(cli, ConfigFile::load)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn invocation(argv: &[&str], cfg: &str) -> Result<Invocation, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("paoi").chain(argv.iter().copied())).unwrap();
        resolve_with(&cli, |_| ConfigFile::from_json_str(cfg))
    }

    #[test]
    fn flags_override_config() {
        let inv = invocation(
            &["aoi", "--config", "x.json", "--q", "0.5"],
            r#"{"q": 0.2, "xi": 0.3}"#,
        )
        .unwrap();
        let p = inv.params().unwrap();
        assert_eq!(p.q, 0.5);
        assert_eq!(p.xi, 0.3);
    }

    #[test]
    fn cli_lambda_source_replaces_config_source() {
        let inv = invocation(
            &["aoi", "--config", "x.json", "--lambda", "0.02"],
            r#"{"lambda_c_r2": 5}"#,
        )
        .unwrap();
        assert_eq!(inv.params().unwrap().lambda, 0.02);
    }

    #[test]
    fn load_sets_the_product() {
        let inv = invocation(
            &[
                "solve",
                "--lambda-c-r2",
                "2.5",
                "--R",
                "2",
                "--alpha",
                "4",
                "--theta",
                "1",
            ],
            "{}",
        )
        .unwrap();
        let p = inv.params().unwrap();
        let c = p.geometry_constant().unwrap();
        assert!((p.lambda * c * 4.0 - 2.5).abs() < 1e-15);
    }

    #[test]
    fn load_needs_positive_geometry() {
        let err = invocation(&["solve", "--lambda-c-r2", "1", "--theta", "0"], "{}")
            .unwrap()
            .params()
            .unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
    }

    #[test]
    fn out_of_domain_is_a_usage_error() {
        let err = invocation(&["aoi", "--q", "1.5"], "{}")
            .unwrap()
            .params()
            .unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
    }

    #[test]
    fn sweep_from_config() {
        let inv = invocation(
            &["sweep", "--config", "x.json"],
            r#"{"axis": "q", "values": [0.2, 0.4], "tasks": ["aoi", "solve"], "format": "json"}"#,
        )
        .unwrap();
        let Action::Sweep(spec) = inv.action else {
            panic!()
        };
        assert_eq!(spec.values, vec![0.2, 0.4]);
        assert_eq!(inv.settings.format, Format::Json);
    }

    #[test]
    fn sim_overrides_reach_the_config() {
        let inv = invocation(
            &[
                "simulate",
                "--slots",
                "500",
                "--boundary",
                "torus",
                "--cutoff",
                "8",
            ],
            "{}",
        )
        .unwrap();
        let cfg = inv.settings.sim.config(inv.params().unwrap()).unwrap();
        assert_eq!(cfg.slots, 500);
        assert_eq!(cfg.boundary, Boundary::Torus);
        assert_eq!(cfg.interference_cutoff, Some(8.0));
        assert_eq!(cfg.realizations, 10);
    }
}
