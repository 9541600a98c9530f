//! Compressible nematic liquid-crystal flow in one space dimension, with
//! relative-entropy diagnostics for comparing two solutions.
//!
//! Two director models are supported: a Ginzburg-Landau relaxation with
//! Dirichlet director data ([`System::Gl`]) and a unit-sphere constraint
//! with Neumann data ([`System::Sphere`]).

pub mod config;
pub mod constitutive;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod functionals;
pub mod grid;
pub mod interp;
pub mod manifest;
pub mod presets;
pub mod suite;
pub mod trace_io;
pub mod tridiag;
pub mod verifier;

pub use config::{canonical_json, config_hash, parse_config};
pub use constitutive::{Params, System};
pub use dynamics::{evolve, step, DirectorBc, InitialData, Model, State, StepOptions, Trajectory};
pub use error::{Error, Result};
pub use exec::Workers;
pub use functionals::{
    dissipation, energy, gronwall_coefficient, relative_entropy, remainder_gl, remainder_sphere,
    RemainderBreakdown, StatePair,
};
pub use grid::{Grid1D, Norm, ScalarField, VectorField3};
pub use manifest::RunManifest;
pub use presets::{initial_data, Perturbation, Preset};
pub use trace_io::{read_trace, write_trace};
pub use verifier::{
    check_energy, check_gronwall, check_uniqueness, run_twin, simulate, EntropyTrace,
    ExperimentConfig, GronwallConfig, TraceSample,
};
