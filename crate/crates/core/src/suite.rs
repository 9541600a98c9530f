//! Built-in verification batteries.

use serde::Serialize;

use crate::constitutive::System;
use crate::error::{Error, Result};
use crate::exec::Workers;
use crate::presets::Perturbation;
use crate::verifier::{
    c_h_stable, check_energy, check_gronwall, check_uniqueness, run_twin, simulate,
    ExperimentConfig, ENERGY_TOLERANCE,
};

/// Ratio `κ = dt / dx²` used by every suite run.
pub const KAPPA: f64 = 10.0;

/// Entropy bound for bit-identical twins.
pub const IDENTICAL_ENTROPY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuitePreset {
    GlSmoke,
    SphereSmoke,
    Full,
}

impl SuitePreset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "gl-smoke" => Ok(Self::GlSmoke),
            "sphere-smoke" => Ok(Self::SphereSmoke),
            "full" => Ok(Self::Full),
            other => Err(Error::config(
                "preset",
                format!("unknown suite preset `{other}`; expected gl-smoke, sphere-smoke or full"),
            )),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::GlSmoke => "gl-smoke",
            Self::SphereSmoke => "sphere-smoke",
            Self::Full => "full",
        }
    }
}

/// One independent experiment of a battery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckSpec {
    /// Candidate equals reference: `ℰ(t) ≤ 1e−12` throughout.
    IdenticalTwin {
        system: System,
        n: usize,
        t_end: f64,
    },
    /// Single run: `E_{k+1} + ∫D ≤ E_k (1 + tol)`.
    Energy {
        system: System,
        n: usize,
        t_end: f64,
    },
    /// Perturbed twins at `n` and `2n − 1`: finite and stable minimal
    /// `c_h`, quadratic entropy scaling in the amplitude.
    Gronwall {
        system: System,
        n: usize,
        amplitude: f64,
        t_end: f64,
    },
    /// Unperturbed candidates on `levels` against a reference with
    /// `n_reference` nodes: collapse order of `sup ℰ`.
    Uniqueness {
        system: System,
        n_reference: usize,
        levels: [usize; 3],
        t_end: f64,
    },
}

impl CheckSpec {
    pub fn name(&self) -> String {
        match self {
            CheckSpec::IdenticalTwin { system, .. } => format!("{}.identical_twin", system.name()),
            CheckSpec::Energy { system, .. } => format!("{}.energy", system.name()),
            CheckSpec::Gronwall { system, .. } => format!("{}.gronwall", system.name()),
            CheckSpec::Uniqueness { system, .. } => format!("{}.uniqueness", system.name()),
        }
    }
}

fn experiment(
    system: System,
    n_reference: usize,
    n_candidate: usize,
    t_end: f64,
) -> Result<ExperimentConfig> {
    let mut c = ExperimentConfig::smooth(system, n_reference, n_candidate, 1.0, t_end)?;
    c.dt_reference = KAPPA * c.grid_reference.dx().powi(2);
    c.dt_candidate = KAPPA * c.grid_candidate.dx().powi(2);
    c.sample_interval = c.sample_interval.max(c.dt_reference).max(c.dt_candidate);
    c.validate()?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passes: bool,
    pub detail: String,
}

fn run_check(spec: CheckSpec, workers: Workers) -> Result<CheckOutcome> {
    let name = spec.name();
    match spec {
        CheckSpec::IdenticalTwin { system, n, t_end } => {
            let trace = run_twin(&experiment(system, n, n, t_end)?)?;
            let sup = trace.sup_entropy().unwrap_or(0.0);
            Ok(CheckOutcome {
                name,
                passes: sup <= IDENTICAL_ENTROPY,
                detail: format!("sup entropy {sup:e} (bound {IDENTICAL_ENTROPY:e})"),
            })
        }
        CheckSpec::Energy { system, n, t_end } => {
            let trace = simulate(&experiment(system, n, n, t_end)?)?;
            let r = check_energy(&trace, ENERGY_TOLERANCE)?;
            Ok(CheckOutcome {
                name,
                passes: r.passes,
                detail: format!(
                    "max excess {:e} ({:e} of E(0)), first violation {:?}",
                    r.max_excess,
                    r.relative_excess,
                    r.first_violation.map(|v| (v.trajectory, v.t))
                ),
            })
        }
        CheckSpec::Gronwall {
            system,
            n,
            amplitude,
            t_end,
        } => {
            let run = |n: usize, eps: f64| -> Result<(f64, f64)> {
                let mut c = experiment(system, n, n, t_end)?;
                c.perturbation = Perturbation {
                    amplitude: eps,
                    mode: 2,
                };
                let trace = run_twin(&c)?;
                let g = check_gronwall(&trace, &c.gronwall)?;
                Ok((g.minimal_c_h, trace.sup_entropy().unwrap_or(0.0)))
            };
            let (c_coarse, sup_full) = run(n, amplitude)?;
            let (c_fine, _) = run(2 * n - 1, amplitude)?;
            let (_, sup_half) = run(n, 0.5 * amplitude)?;
            let ratio = sup_full / sup_half;
            let finite = c_coarse.is_finite() && c_fine.is_finite();
            let stable = c_h_stable(c_coarse, c_fine);
            let quadratic = (ratio / 4.0 - 1.0).abs() <= 0.25;
            Ok(CheckOutcome {
                name,
                passes: finite && stable && quadratic,
                detail: format!(
                    "minimal c_h {c_coarse} (n={n}) / {c_fine} (n={}), entropy ratio at eps/2 {ratio}",
                    2 * n - 1
                ),
            })
        }
        CheckSpec::Uniqueness {
            system,
            n_reference,
            levels,
            t_end,
        } => {
            let c = experiment(system, n_reference, levels[0], t_end)?;
            let r = check_uniqueness(&c, &levels, workers)?;
            Ok(CheckOutcome {
                name,
                passes: r.passes,
                detail: if r.exact {
                    "exact".to_string()
                } else {
                    format!("orders {:?}", r.orders)
                },
            })
        }
    }
}

/// Checks making up a battery.
pub fn checks(preset: SuitePreset) -> Vec<CheckSpec> {
    let smoke = |system| {
        vec![
            CheckSpec::IdenticalTwin {
                system,
                n: 65,
                t_end: 0.05,
            },
            CheckSpec::Energy {
                system,
                n: 129,
                t_end: 0.1,
            },
            CheckSpec::Gronwall {
                system,
                n: 65,
                amplitude: 1e-3,
                t_end: 0.05,
            },
            CheckSpec::Uniqueness {
                system,
                n_reference: 513,
                levels: [65, 129, 257],
                t_end: 0.05,
            },
        ]
    };
    let full = |system| {
        vec![
            CheckSpec::IdenticalTwin {
                system,
                n: 257,
                t_end: 0.1,
            },
            CheckSpec::Energy {
                system,
                n: 257,
                t_end: 0.2,
            },
            CheckSpec::Gronwall {
                system,
                n: 129,
                amplitude: 1e-3,
                t_end: 0.1,
            },
            CheckSpec::Uniqueness {
                system,
                n_reference: 1025,
                levels: [65, 129, 257],
                t_end: 0.1,
            },
        ]
    };
    match preset {
        SuitePreset::GlSmoke => smoke(System::Gl),
        SuitePreset::SphereSmoke => smoke(System::Sphere),
        SuitePreset::Full => {
            let mut v = full(System::Gl);
            v.extend(full(System::Sphere));
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    Config,
    SolverAbort,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckError {
    pub name: String,
    pub kind: FailureKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub preset: &'static str,
    pub outcomes: Vec<CheckOutcome>,
    pub errors: Vec<CheckError>,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.errors.is_empty() && self.outcomes.iter().all(|o| o.passes)
    }

    /// 3 if any run aborted, 2 for configuration errors, 1 if any check
    /// failed, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self
            .errors
            .iter()
            .any(|e| e.kind == FailureKind::SolverAbort)
        {
            3
        } else if self.errors.iter().any(|e| e.kind == FailureKind::Config) {
            2
        } else if !self.passes() {
            1
        } else {
            0
        }
    }
}

/// Run every check of `preset`, independent checks spread over `workers`.
pub fn run(preset: SuitePreset, workers: Workers) -> SuiteReport {
    let specs = checks(preset);
    let results = workers.map(specs, |spec| (spec.name(), run_check(spec, workers)));
    let mut outcomes = Vec::new();
    let mut errors = Vec::new();
    for (name, r) in results {
        match r {
            Ok(o) => outcomes.push(o),
            Err(e) => errors.push(CheckError {
                name,
                kind: if e.is_solver_abort() {
                    FailureKind::SolverAbort
                } else if e.is_config() {
                    FailureKind::Config
                } else {
                    FailureKind::Other
                },
                message: e.to_string(),
            }),
        }
    }
    SuiteReport {
        preset: preset.name(),
        outcomes,
        errors,
    }
}
