//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "system": "gl",
//!   "dt": 1e-4,
//!   "t_end": 0.1,
//!   "params": {"gamma": 2.0, "a": 1.0, "sigma0": 1.0},
//!   "grids": {"reference": {"n": 257}, "candidate": {"n": 65}},
//!   "init": {"preset": "gl-smooth", "perturbation": {"amplitude": 1e-3}}
//! }
//! ```
//!
//! Optional keys: `director_bc`, `dt_candidate`, `sample_interval` (default
//! the larger of `t_end / 500` and both time steps),
//! `artificial_viscosity`, `params.{mu,lambda,theta,density_floor}`,
//! `grids.reference.{x_min,x_max}`, `init.perturbation.mode`,
//! `gronwall.{delta,c_h,slack}`. Unknown keys are rejected.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constitutive::{Params, System};
use crate::dynamics::{StepOptions, DEFAULT_DENSITY_FLOOR};
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::presets::{Perturbation, Preset};
use crate::verifier::{ExperimentConfig, GronwallConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectorBcName {
    DirichletD0,
    NeumannZero,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    gamma: f64,
    a: f64,
    sigma0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density_floor: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReferenceGrid {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_max: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCandidateGrid {
    n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrids {
    reference: RawReferenceGrid,
    candidate: RawCandidateGrid,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInit {
    preset: Preset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perturbation: Option<Perturbation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGronwall {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slack: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    system: System,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    director_bc: Option<DirectorBcName>,
    dt: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dt_candidate: Option<f64>,
    t_end: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sample_interval: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    artificial_viscosity: Option<f64>,
    params: RawParams,
    grids: RawGrids,
    init: RawInit,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gronwall: Option<RawGronwall>,
}

/// Dotted config key for a parameter name reported by validation.
fn key_of(name: &str) -> String {
    match name {
        "gamma" | "a" | "sigma0" | "mu" | "lambda" | "theta" | "density_floor" => {
            format!("params.{name}")
        }
        "delta" | "c_h" | "slack" => format!("gronwall.{name}"),
        "amplitude" | "mode" => format!("init.perturbation.{name}"),
        "preset" => "init.preset".into(),
        "grids" => "grids.reference".into(),
        other => other.into(),
    }
}

fn relabel(e: Error) -> Error {
    match e {
        Error::InvalidParam { name, reason } => Error::config(key_of(name), reason),
        Error::InvalidGrid(m) => Error::config("grids", m),
        Error::BoundaryMismatch { bc, system } => Error::config(
            "director_bc",
            format!("boundary condition {bc} is incompatible with system {system}"),
        ),
        other => other,
    }
}

/// Parse and validate a configuration document, filling defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let key = if path == "." {
            "<root>".to_string()
        } else {
            path
        };
        Error::config(key, e.into_inner().to_string())
    })?;
    build(raw).map_err(relabel)
}

fn build(raw: RawConfig) -> Result<ExperimentConfig> {
    let expected = match raw.system {
        System::Gl => DirectorBcName::DirichletD0,
        System::Sphere => DirectorBcName::NeumannZero,
    };
    if let Some(bc) = raw.director_bc {
        if bc != expected {
            return Err(Error::config(
                "director_bc",
                format!(
                    "{} is incompatible with system {}",
                    match bc {
                        DirectorBcName::DirichletD0 => "dirichlet_d0",
                        DirectorBcName::NeumannZero => "neumann_zero",
                    },
                    raw.system.name()
                ),
            ));
        }
    }
    let rp = &raw.params;
    let params = Params::new(raw.system, rp.a, rp.gamma, rp.sigma0)?.with_coefficients(
        rp.mu.unwrap_or(1.0),
        rp.lambda.unwrap_or(1.0),
        rp.theta.unwrap_or(1.0),
    )?;
    let x_min = raw.grids.reference.x_min.unwrap_or(0.0);
    let x_max = raw.grids.reference.x_max.unwrap_or(1.0);
    let grid_reference = Grid1D::new(raw.grids.reference.n, x_min, x_max)
        .map_err(|e| Error::config("grids.reference.n", e.to_string()))?;
    let grid_candidate = Grid1D::new(raw.grids.candidate.n, x_min, x_max)
        .map_err(|e| Error::config("grids.candidate.n", e.to_string()))?;
    let options = StepOptions {
        density_floor: rp.density_floor.unwrap_or(DEFAULT_DENSITY_FLOOR),
        artificial_viscosity: raw.artificial_viscosity.unwrap_or(0.0),
        ..StepOptions::default()
    };
    if !(options.density_floor > 0.0) {
        return Err(Error::config("params.density_floor", "must be positive"));
    }
    if !(options.artificial_viscosity >= 0.0 && options.artificial_viscosity.is_finite()) {
        return Err(Error::config(
            "artificial_viscosity",
            "must be non-negative",
        ));
    }
    let defaults = GronwallConfig::default();
    let g = raw.gronwall.clone().unwrap_or(RawGronwall {
        delta: None,
        c_h: None,
        slack: None,
    });
    let t_end = raw.t_end;
    let dt_candidate = raw.dt_candidate.unwrap_or(raw.dt);
    let cfg = ExperimentConfig {
        params,
        grid_reference,
        grid_candidate,
        dt_reference: raw.dt,
        dt_candidate,
        t_end,
        // Never finer than a step, so sampling does not shorten steps.
        sample_interval: raw
            .sample_interval
            .unwrap_or((t_end / 500.0).max(raw.dt).max(dt_candidate)),
        preset: raw.init.preset,
        perturbation: raw.init.perturbation.unwrap_or_else(Perturbation::none),
        options,
        gronwall: GronwallConfig {
            delta: g.delta.unwrap_or(defaults.delta),
            c_h: g.c_h,
            slack: g.slack.unwrap_or(defaults.slack),
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

fn to_raw(cfg: &ExperimentConfig) -> RawConfig {
    let p = &cfg.params;
    RawConfig {
        system: p.system,
        director_bc: Some(match p.system {
            System::Gl => DirectorBcName::DirichletD0,
            System::Sphere => DirectorBcName::NeumannZero,
        }),
        dt: cfg.dt_reference,
        dt_candidate: Some(cfg.dt_candidate),
        t_end: cfg.t_end,
        sample_interval: Some(cfg.sample_interval),
        artificial_viscosity: Some(cfg.options.artificial_viscosity),
        params: RawParams {
            gamma: p.gamma,
            a: p.a,
            sigma0: p.sigma0,
            mu: Some(p.mu),
            lambda: Some(p.lambda),
            theta: Some(p.theta),
            density_floor: Some(cfg.options.density_floor),
        },
        grids: RawGrids {
            reference: RawReferenceGrid {
                n: cfg.grid_reference.n_nodes(),
                x_min: Some(cfg.grid_reference.x_min()),
                x_max: Some(cfg.grid_reference.x_max()),
            },
            candidate: RawCandidateGrid {
                n: cfg.grid_candidate.n_nodes(),
            },
        },
        init: RawInit {
            preset: cfg.preset,
            perturbation: Some(cfg.perturbation),
        },
        gronwall: Some(RawGronwall {
            delta: Some(cfg.gronwall.delta),
            c_h: cfg.gronwall.c_h,
            slack: Some(cfg.gronwall.slack),
        }),
    }
}

/// Fully defaulted configuration as a JSON document; parsing it yields the
/// same configuration.
pub fn canonical_json(cfg: &ExperimentConfig) -> String {
    serde_json::to_string(&to_raw(cfg)).expect("config serializes")
}

/// Hex SHA-256 of [`canonical_json`].
pub fn config_hash(cfg: &ExperimentConfig) -> String {
    hex::encode(Sha256::digest(canonical_json(cfg).as_bytes()))
}
