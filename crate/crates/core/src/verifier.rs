//! Twin experiments: a reference trajectory on a fine grid, a candidate on
//! its own grid, and the relative entropy between them sampled in time.

use serde::{Deserialize, Serialize};

use crate::constitutive::{Params, System};
use crate::dynamics::{sample_times, DirectorBc, Model, State, StepOptions, Trajectory};
use crate::error::{Error, Result};
use crate::exec::Workers;
use crate::functionals::{
    dissipation, energy, gronwall_coefficient, relative_entropy, remainders, RemainderBreakdown,
    StatePair,
};
use crate::grid::Grid1D;
use crate::interp::restrict_state;
use crate::presets::{initial_data, Perturbation, Preset};

/// Upper bound on the number of samples per run.
pub const MAX_SAMPLES: usize = 10_000;

/// Entropy values at or below this are treated as round-off.
pub const ROUNDOFF_ENTROPY: f64 = 1e-20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GronwallConfig {
    /// Young-splitting weight; carried for reporting.
    pub delta: f64,
    /// Multiplier on `ĥ`; `None` means the minimal one is computed and any
    /// finite value passes.
    pub c_h: Option<f64>,
    /// Added to `ℰ(0)` in the bound.
    pub slack: f64,
}

impl Default for GronwallConfig {
    fn default() -> Self {
        Self {
            delta: 0.125,
            c_h: None,
            slack: 0.0,
        }
    }
}

impl GronwallConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 0.125) {
            return Err(Error::param(
                "delta",
                format!("must lie in (0, 1/8], got {}", self.delta),
            ));
        }
        if let Some(c) = self.c_h {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::param("c_h", format!("must be positive, got {c}")));
            }
        }
        if !(self.slack >= 0.0 && self.slack.is_finite()) {
            return Err(Error::param("slack", "must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: Params,
    pub grid_reference: Grid1D,
    pub grid_candidate: Grid1D,
    pub dt_reference: f64,
    pub dt_candidate: f64,
    pub t_end: f64,
    pub sample_interval: f64,
    pub preset: Preset,
    /// Applied to the candidate only.
    pub perturbation: Perturbation,
    pub options: StepOptions,
    pub gronwall: GronwallConfig,
}

impl ExperimentConfig {
    /// Smooth preset of `system` on the unit interval with 500 samples.
    pub fn smooth(
        system: System,
        n_reference: usize,
        n_candidate: usize,
        dt: f64,
        t_end: f64,
    ) -> Result<Self> {
        let preset = match system {
            System::Gl => Preset::GlSmooth,
            System::Sphere => Preset::SphereSmooth,
        };
        let cfg = Self {
            params: Params::new(system, 1.0, 2.0, 1.0)?,
            grid_reference: Grid1D::unit(n_reference)?,
            grid_candidate: Grid1D::unit(n_candidate)?,
            dt_reference: dt,
            dt_candidate: dt,
            t_end,
            sample_interval: t_end / 500.0,
            preset,
            perturbation: Perturbation::none(),
            options: StepOptions::default(),
            gronwall: GronwallConfig::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.preset.check_system(self.params.system)?;
        self.perturbation.validate()?;
        self.gronwall.validate()?;
        if !self.grid_reference.shares_endpoints(&self.grid_candidate) {
            return Err(Error::param(
                "grids",
                "reference and candidate grids must share endpoints",
            ));
        }
        for (name, v) in [
            ("dt", self.dt_reference),
            ("dt_candidate", self.dt_candidate),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("must be positive, got {v}")));
            }
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::param("t_end", "must be positive"));
        }
        if !(self.sample_interval > 0.0) {
            return Err(Error::param("sample_interval", "must be positive"));
        }
        if self.t_end / self.sample_interval > MAX_SAMPLES as f64 {
            return Err(Error::param(
                "sample_interval",
                format!("more than {MAX_SAMPLES} samples requested"),
            ));
        }
        Ok(())
    }

    fn model(&self, grid: Grid1D, d0: &crate::grid::VectorField3) -> Result<Model> {
        Model::new(
            self.params,
            grid,
            DirectorBc::for_system(self.params.system, d0),
            self.options,
        )
    }
}

/// One row of a trace. Field order is the CSV column order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub entropy: Option<f64>,
    pub h_hat: Option<f64>,
    pub energy_candidate: f64,
    pub energy_reference: Option<f64>,
    pub dissipation_candidate: f64,
    pub dissipation_reference: Option<f64>,
    pub r_d: Option<f64>,
    pub r_c: Option<f64>,
    pub r_bar_d: Option<f64>,
    pub r_bar_c: Option<f64>,
    pub r_1d: Option<f64>,
    pub r_1c: Option<f64>,
    pub r_1c_a: Option<f64>,
    pub r_1c_b: Option<f64>,
    pub mass_candidate: f64,
    pub sphere_defect: Option<f64>,
}

impl TraceSample {
    fn set_remainders(&mut self, r: &RemainderBreakdown) {
        self.r_d = r.r_d;
        self.r_c = r.r_c;
        self.r_bar_d = r.r_bar_d;
        self.r_bar_c = r.r_bar_c;
        self.r_1d = r.r_1d;
        self.r_1c = r.r_1c;
        self.r_1c_a = r.r_1c_a;
        self.r_1c_b = r.r_1c_b;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyTrace {
    pub system: System,
    pub samples: Vec<TraceSample>,
    /// Largest `| |d|−1 |` removed by projection over the candidate run.
    pub max_renormalization: f64,
    /// `‖d − d̃‖_{L²}` per sample (empty for single runs).
    pub director_l2: Vec<f64>,
}

impl EntropyTrace {
    pub fn entropies(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.entropy).collect()
    }

    /// `sup_t ℰ`, or `None` for single-trajectory traces.
    pub fn sup_entropy(&self) -> Option<f64> {
        let e = self.entropies();
        (!e.is_empty()).then(|| e.iter().fold(0.0, |m: f64, &v| m.max(v)))
    }
}

fn tag(trajectory: &'static str, e: Error) -> Error {
    match e {
        Error::SolverAbort { time, source, .. } => Error::SolverAbort {
            trajectory,
            time,
            source,
        },
        other => other,
    }
}

fn sphere_defect(system: System, s: &State) -> Option<f64> {
    (system == System::Sphere).then(|| s.sphere_defect())
}

/// Evolve reference and candidate side by side and sample the relative
/// entropy, energies, remainders and `ĥ` on the candidate grid.
pub fn run_twin(config: &ExperimentConfig) -> Result<EntropyTrace> {
    config.validate()?;
    let p = config.params;
    let init_ref = initial_data(
        config.preset,
        p.system,
        config.grid_reference,
        Perturbation::none(),
    )?;
    let init_cand = initial_data(
        config.preset,
        p.system,
        config.grid_candidate,
        config.perturbation,
    )?;
    let mut reference = Trajectory::new(
        config.model(config.grid_reference, &init_ref.d0)?,
        &init_ref,
        config.dt_reference,
    )?;
    let mut candidate = Trajectory::new(
        config.model(config.grid_candidate, &init_cand.d0)?,
        &init_cand,
        config.dt_candidate,
    )?;

    let mut samples = Vec::new();
    let mut director_l2 = Vec::new();
    for t in sample_times(config.t_end, config.sample_interval) {
        reference.advance_to(t).map_err(|e| tag("reference", e))?;
        candidate.advance_to(t).map_err(|e| tag("candidate", e))?;
        let cand = candidate.state();
        let refr = restrict_state(reference.state(), &config.grid_candidate)?;
        let pair = StatePair::new(cand.clone(), refr)?;
        let mut s = TraceSample {
            t,
            entropy: Some(relative_entropy(&pair, &p)?),
            energy_candidate: energy(cand, &p),
            energy_reference: Some(energy(reference.state(), &p)),
            dissipation_candidate: dissipation(cand, &p),
            dissipation_reference: Some(dissipation(reference.state(), &p)),
            mass_candidate: cand.mass(),
            sphere_defect: sphere_defect(p.system, cand),
            ..Default::default()
        };
        if p.is_normalized() {
            let r = remainders(&pair, &p)?;
            s.h_hat = Some(r.h_hat);
            s.set_remainders(&r);
        } else {
            s.h_hat = Some(gronwall_coefficient(&pair, &p)?.total);
        }
        director_l2.push(crate::functionals::director_l2_distance(&pair));
        samples.push(s);
    }
    Ok(EntropyTrace {
        system: p.system,
        samples,
        max_renormalization: candidate.max_renormalization(),
        director_l2,
    })
}

/// Candidate trajectory alone; entropy, `ĥ`, reference and remainder
/// columns stay empty.
pub fn simulate(config: &ExperimentConfig) -> Result<EntropyTrace> {
    config.validate()?;
    let p = config.params;
    let init = initial_data(
        config.preset,
        p.system,
        config.grid_candidate,
        config.perturbation,
    )?;
    let mut traj = Trajectory::new(
        config.model(config.grid_candidate, &init.d0)?,
        &init,
        config.dt_candidate,
    )?;
    let mut samples = Vec::new();
    for t in sample_times(config.t_end, config.sample_interval) {
        traj.advance_to(t).map_err(|e| tag("candidate", e))?;
        let s = traj.state();
        samples.push(TraceSample {
            t,
            energy_candidate: energy(s, &p),
            dissipation_candidate: dissipation(s, &p),
            mass_candidate: s.mass(),
            sphere_defect: sphere_defect(p.system, s),
            ..Default::default()
        });
    }
    Ok(EntropyTrace {
        system: p.system,
        samples,
        max_renormalization: traj.max_renormalization(),
        director_l2: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GronwallReport {
    pub passes: bool,
    /// Smallest `c_h ≥ 0` for which the bound holds at every sample;
    /// infinite when no multiplier works.
    pub minimal_c_h: f64,
    /// Sample time that determines `minimal_c_h`.
    pub worst_time: f64,
    /// Multiplier the pass/fail verdict used, if one was fixed.
    pub c_h: Option<f64>,
}

/// Relative guard against round-off when comparing against the bound.
const BOUND_ROUNDOFF: f64 = 1e-12;

/// Check `ℰ(τ) ≤ (ℰ(0) + slack) exp(c_h ∫₀^τ ĥ)` at every sample, with
/// trapezoid quadrature in time.
pub fn check_gronwall(trace: &EntropyTrace, config: &GronwallConfig) -> Result<GronwallReport> {
    config.validate()?;
    if trace.samples.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut e = Vec::with_capacity(trace.samples.len());
    let mut h = Vec::with_capacity(trace.samples.len());
    for s in &trace.samples {
        match (s.entropy, s.h_hat) {
            (Some(a), Some(b)) => {
                e.push(a);
                h.push(b);
            }
            _ => return Err(Error::TraceFormat("trace has no entropy column".into())),
        }
    }
    let mut big_h = vec![0.0; e.len()];
    for k in 1..e.len() {
        let dt = trace.samples[k].t - trace.samples[k - 1].t;
        big_h[k] = big_h[k - 1] + 0.5 * dt * (h[k] + h[k - 1]);
    }
    let base = e[0] + config.slack;
    let mut minimal = 0.0f64;
    let mut worst_time = trace.samples[0].t;
    for k in 0..e.len() {
        if e[k] <= base * (1.0 + BOUND_ROUNDOFF) {
            continue;
        }
        let need = if base > 0.0 && big_h[k] > 0.0 {
            (e[k] / base).ln() / big_h[k]
        } else {
            f64::INFINITY
        };
        if need > minimal {
            minimal = need;
            worst_time = trace.samples[k].t;
        }
    }
    let passes = match config.c_h {
        None => minimal.is_finite(),
        Some(c) => {
            (0..e.len()).all(|k| e[k] <= base * (c * big_h[k]).exp() * (1.0 + BOUND_ROUNDOFF))
        }
    };
    Ok(GronwallReport {
        passes,
        minimal_c_h: minimal,
        worst_time,
        c_h: config.c_h,
    })
}

/// Minimal multipliers from two resolutions agree within a factor of 2;
/// two zeros count as agreement.
pub fn c_h_stable(coarse: f64, fine: f64) -> bool {
    if coarse == 0.0 && fine == 0.0 {
        return true;
    }
    if !(coarse.is_finite() && fine.is_finite()) || coarse <= 0.0 || fine <= 0.0 {
        return false;
    }
    let r = fine / coarse;
    (0.5..=2.0).contains(&r)
}

/// Energy tolerance used when none is given.
pub const ENERGY_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyViolation {
    pub trajectory: &'static str,
    /// Index of the later sample of the failing pair.
    pub index: usize,
    pub t: f64,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub passes: bool,
    /// `max_k (E_{k+1} + ∫D − E_k)` over both trajectories; negative when
    /// energy drops faster than the dissipation integral.
    pub max_excess: f64,
    /// `max_excess / E(0)` of the candidate.
    pub relative_excess: f64,
    pub first_violation: Option<EnergyViolation>,
}

fn energy_series(
    name: &'static str,
    t: &[f64],
    e: &[f64],
    d: &[f64],
    tol: f64,
    max_excess: &mut f64,
    first: &mut Option<EnergyViolation>,
) {
    for k in 1..e.len() {
        let integral = 0.5 * (t[k] - t[k - 1]) * (d[k] + d[k - 1]);
        let excess = e[k] + integral - e[k - 1];
        *max_excess = max_excess.max(excess);
        if e[k] + integral > e[k - 1] * (1.0 + tol) && first.is_none() {
            *first = Some(EnergyViolation {
                trajectory: name,
                index: k,
                t: t[k],
                excess,
            });
        }
    }
}

/// Check `E(t_{k+1}) + ∫ D ≤ E(t_k)(1 + tol)` per sample pair for every
/// trajectory in the trace.
pub fn check_energy(trace: &EntropyTrace, tol: f64) -> Result<EnergyReport> {
    if trace.samples.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let t: Vec<f64> = trace.samples.iter().map(|s| s.t).collect();
    let ec: Vec<f64> = trace.samples.iter().map(|s| s.energy_candidate).collect();
    let dc: Vec<f64> = trace
        .samples
        .iter()
        .map(|s| s.dissipation_candidate)
        .collect();
    let mut max_excess = f64::NEG_INFINITY;
    let mut first = None;
    energy_series("candidate", &t, &ec, &dc, tol, &mut max_excess, &mut first);
    let er: Option<Vec<f64>> = trace.samples.iter().map(|s| s.energy_reference).collect();
    let dr: Option<Vec<f64>> = trace
        .samples
        .iter()
        .map(|s| s.dissipation_reference)
        .collect();
    if let (Some(er), Some(dr)) = (er, dr) {
        energy_series("reference", &t, &er, &dr, tol, &mut max_excess, &mut first);
    }
    if trace.samples.len() == 1 {
        max_excess = 0.0;
    }
    Ok(EnergyReport {
        passes: first.is_none(),
        max_excess,
        relative_excess: max_excess / ec[0].abs().max(f64::MIN_POSITIVE),
        first_violation: first,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelResult {
    pub n: usize,
    pub dx: f64,
    pub dt: f64,
    pub sup_entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub levels: Vec<LevelResult>,
    /// Observed order per consecutive pair of levels.
    pub orders: Vec<f64>,
    /// Every level at round-off: entropy vanishes identically.
    pub exact: bool,
    pub passes: bool,
}

/// Minimal acceptable collapse order.
pub const UNIQUENESS_ORDER: f64 = 1.8;

/// Zero-perturbation twins with the candidate on each of `levels` (node
/// counts, increasing), `dt ∝ dx²` anchored at the reference, and the
/// observed order of `sup_t ℰ` between consecutive levels.
pub fn check_uniqueness(
    config: &ExperimentConfig,
    levels: &[usize],
    workers: Workers,
) -> Result<UniquenessReport> {
    if levels.len() < 3 {
        return Err(Error::TooFewLevels {
            need: 3,
            got: levels.len(),
        });
    }
    let kappa = config.dt_reference / config.grid_reference.dx().powi(2);
    // Sampling finer than a coarse step would shorten that level's steps and
    // break the dt ~ dx² scaling, so every level samples at the coarsest dt.
    let mut coarsest = 0.0f64;
    for &n in levels {
        let grid = Grid1D::new(
            n,
            config.grid_reference.x_min(),
            config.grid_reference.x_max(),
        )?;
        coarsest = coarsest.max(kappa * grid.dx().powi(2));
    }
    let sample_interval = config.sample_interval.max(coarsest);
    let mut jobs = Vec::with_capacity(levels.len());
    for &n in levels {
        let grid = Grid1D::new(
            n,
            config.grid_reference.x_min(),
            config.grid_reference.x_max(),
        )?;
        let mut c = config.clone();
        c.grid_candidate = grid;
        c.dt_candidate = kappa * grid.dx().powi(2);
        c.perturbation = Perturbation::none();
        c.sample_interval = sample_interval;
        c.validate()?;
        jobs.push(c);
    }
    let results = workers.map(jobs, |c| {
        run_twin(&c).map(|trace| LevelResult {
            n: c.grid_candidate.n_nodes(),
            dx: c.grid_candidate.dx(),
            dt: c.dt_candidate,
            sup_entropy: trace.sup_entropy().unwrap_or(0.0),
        })
    });
    let levels: Vec<LevelResult> = results.into_iter().collect::<Result<_>>()?;
    let exact = levels.iter().all(|l| l.sup_entropy <= ROUNDOFF_ENTROPY);
    if !exact && levels.windows(2).any(|w| w[1].n <= w[0].n) {
        return Err(Error::param("levels", "node counts must increase"));
    }
    let orders: Vec<f64> = levels
        .windows(2)
        .map(|w| (w[0].sup_entropy / w[1].sup_entropy).ln() / (w[0].dx / w[1].dx).ln())
        .collect();
    let passes = exact || orders.iter().all(|&o| o >= UNIQUENESS_ORDER);
    Ok(UniquenessReport {
        levels,
        orders: if exact { Vec::new() } else { orders },
        exact,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_from(e: &[f64], h: &[f64]) -> EntropyTrace {
        EntropyTrace {
            system: System::Gl,
            samples: e
                .iter()
                .zip(h)
                .enumerate()
                .map(|(k, (&e, &h))| TraceSample {
                    t: k as f64 * 0.1,
                    entropy: Some(e),
                    h_hat: Some(h),
                    energy_candidate: 1.0,
                    ..Default::default()
                })
                .collect(),
            max_renormalization: 0.0,
            director_l2: Vec::new(),
        }
    }

    #[test]
    fn zero_entropy_passes_with_zero_multiplier() {
        let r = check_gronwall(
            &trace_from(&[0.0; 5], &[1.0; 5]),
            &GronwallConfig::default(),
        )
        .unwrap();
        assert!(r.passes);
        assert_eq!(r.minimal_c_h, 0.0);
    }

    #[test]
    fn non_increasing_entropy_needs_no_multiplier() {
        let r = check_gronwall(
            &trace_from(&[1.0, 0.9, 0.9, 0.5], &[2.0; 4]),
            &GronwallConfig::default(),
        )
        .unwrap();
        assert!(r.passes);
        assert_eq!(r.minimal_c_h, 0.0);
    }

    #[test]
    fn minimal_multiplier_closed_form() {
        // ℰ = e^{t}, ĥ = 1: the bound is tight at c_h = 1 up to quadrature.
        let e: Vec<f64> = (0..11).map(|k| (0.1 * k as f64).exp()).collect();
        let r = check_gronwall(&trace_from(&e, &[1.0; 11]), &GronwallConfig::default()).unwrap();
        assert!((r.minimal_c_h - 1.0).abs() < 1e-12);
        let at = |c: f64| {
            let cfg = GronwallConfig {
                c_h: Some(c),
                ..Default::default()
            };
            check_gronwall(&trace_from(&e, &[1.0; 11]), &cfg)
                .unwrap()
                .passes
        };
        assert!(at(r.minimal_c_h));
        assert!(at(1.5));
        assert!(!at(0.99));
    }

    #[test]
    fn growth_from_zero_is_unbounded() {
        let r = check_gronwall(
            &trace_from(&[0.0, 1e-3], &[1.0, 1.0]),
            &GronwallConfig::default(),
        )
        .unwrap();
        assert!(!r.passes);
        assert!(r.minimal_c_h.is_infinite());
        let with_slack = GronwallConfig {
            slack: 1e-3,
            ..Default::default()
        };
        assert!(
            check_gronwall(&trace_from(&[0.0, 1e-3], &[1.0, 1.0]), &with_slack)
                .unwrap()
                .passes
        );
    }

    #[test]
    fn empty_trace_rejected() {
        assert!(matches!(
            check_gronwall(&trace_from(&[], &[]), &GronwallConfig::default()),
            Err(Error::EmptyTrace)
        ));
    }

    #[test]
    fn inflated_energy_fails_at_first_violation() {
        let mut t = trace_from(&[0.0; 5], &[0.0; 5]);
        for (k, s) in t.samples.iter_mut().enumerate() {
            s.energy_candidate = if k < 2 { 1.0 } else { 1.0 + 0.1 * k as f64 };
        }
        let r = check_energy(&t, ENERGY_TOLERANCE).unwrap();
        assert!(!r.passes);
        assert_eq!(r.first_violation.unwrap().index, 2);
    }

    #[test]
    fn constant_energy_passes_exactly() {
        let r = check_energy(&trace_from(&[0.0; 4], &[0.0; 4]), ENERGY_TOLERANCE).unwrap();
        assert!(r.passes);
        assert_eq!(r.max_excess, 0.0);
    }

    #[test]
    fn c_h_stability_rule() {
        assert!(c_h_stable(0.0, 0.0));
        assert!(c_h_stable(1.0, 1.9));
        assert!(!c_h_stable(1.0, 2.1));
        assert!(!c_h_stable(0.0, 1.0));
        assert!(!c_h_stable(f64::INFINITY, 1.0));
    }

    #[test]
    fn gronwall_config_validation() {
        assert!(GronwallConfig {
            delta: 0.2,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(GronwallConfig {
            c_h: Some(0.0),
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(GronwallConfig {
            slack: -1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn identical_twin_has_zero_entropy() {
        for system in [System::Gl, System::Sphere] {
            let cfg = ExperimentConfig::smooth(system, 33, 33, 1e-3, 0.02).unwrap();
            let trace = run_twin(&cfg).unwrap();
            assert_eq!(trace.samples.len(), 501);
            assert!(trace.entropies().iter().all(|&e| e == 0.0));
        }
    }

    #[test]
    fn too_few_levels_rejected() {
        let cfg = ExperimentConfig::smooth(System::Gl, 33, 33, 1e-3, 0.01).unwrap();
        assert!(matches!(
            check_uniqueness(&cfg, &[17, 33], Workers::Serial),
            Err(Error::TooFewLevels { .. })
        ));
    }

    #[test]
    fn same_grid_levels_report_exact() {
        let cfg = ExperimentConfig::smooth(System::Gl, 33, 33, 1e-3, 0.005).unwrap();
        let r = check_uniqueness(&cfg, &[33, 33, 33], Workers::Serial).unwrap();
        assert!(r.exact && r.passes);
        assert!(r.orders.is_empty());
    }
}
