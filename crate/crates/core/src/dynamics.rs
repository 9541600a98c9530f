//! One-dimensional compressible nematic flow.
//!
//! Unknowns are the density `ρ`, the scalar velocity `u` and the
//! three-component director `d`. The momentum balance is
//!
//! ```text
//! (ρu)_t + (ρu²)_x + P(ρ)_x = μ u_xx − λ ∂x σ(d)
//! ```
//!
//! with `σ = ½|d_x|² − F(d)` for the Ginzburg-Landau model and
//! `σ = ½|d_x|²` for the sphere-constrained model. The director obeys
//! `d_t + u d_x = θ(Δd − f(d))` or `θ(Δd + |d_x|² d)` respectively.
//!
//! Time stepping is IMEX Euler: transport, pressure, director stress and
//! the director reaction are explicit; both Laplacians are implicit and
//! solved with one tridiagonal system per unknown component.

use crate::constitutive::{
    gl_force, gl_potential, pressure_unchecked, sound_speed, Params, System,
};
use crate::error::{Error, Result};
use crate::grid::{
    dot3, gradient_slice, laplacian_slice, norm3, Grid1D, ScalarField, VectorField3,
};
use crate::tridiag;

/// Default lower bound on the density; dropping below it aborts the run.
pub const DEFAULT_DENSITY_FLOOR: f64 = 1e-8;

/// Unit-length tolerance for sphere-constrained directors.
pub const SPHERE_TOLERANCE: f64 = 1e-10;

/// Boundary condition for the director.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DirectorBc {
    /// Director pinned to its initial endpoint values.
    DirichletD0 { left: [f64; 3], right: [f64; 3] },
    /// Zero normal derivative at both ends.
    NeumannZero,
}

impl DirectorBc {
    /// The condition each system is posed with; Dirichlet values are read
    /// off the endpoints of `d0`.
    pub fn for_system(system: System, d0: &VectorField3) -> Self {
        match system {
            System::Gl => DirectorBc::DirichletD0 {
                left: d0.at(0),
                right: d0.at(d0.len() - 1),
            },
            System::Sphere => DirectorBc::NeumannZero,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DirectorBc::DirichletD0 { .. } => "dirichlet_d0",
            DirectorBc::NeumannZero => "neumann_zero",
        }
    }

    pub fn check_system(&self, system: System) -> Result<()> {
        match (self, system) {
            (DirectorBc::DirichletD0 { .. }, System::Gl)
            | (DirectorBc::NeumannZero, System::Sphere) => Ok(()),
            _ => Err(Error::BoundaryMismatch {
                bc: self.name(),
                system: system.name(),
            }),
        }
    }
}

/// Solution snapshot `(ρ, u, d)` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub rho: ScalarField,
    pub u: ScalarField,
    pub d: VectorField3,
}

impl State {
    pub fn new(rho: ScalarField, u: ScalarField, d: VectorField3) -> Result<Self> {
        if !rho.grid().same_as(u.grid()) || !rho.grid().same_as(d.grid()) {
            return Err(Error::GridMismatch(
                "state fields live on different grids".into(),
            ));
        }
        Ok(Self { rho, u, d })
    }

    pub fn grid(&self) -> &Grid1D {
        self.rho.grid()
    }

    /// `max_i | |d_i| − 1 |`.
    pub fn sphere_defect(&self) -> f64 {
        (0..self.d.len())
            .map(|i| (norm3(self.d.at(i)) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn mass(&self) -> f64 {
        crate::grid::integrate(&self.rho)
    }
}

/// Initial datum `(ρ₀, u₀, d₀)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub rho0: ScalarField,
    pub u0: ScalarField,
    pub d0: VectorField3,
}

impl InitialData {
    pub fn new(rho0: ScalarField, u0: ScalarField, d0: VectorField3) -> Result<Self> {
        let s = State::new(rho0, u0, d0)?;
        Ok(Self {
            rho0: s.rho,
            u0: s.u,
            d0: s.d,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        self.rho0.grid()
    }

    /// Strictly positive density, no-slip velocity and, for the sphere
    /// model, a unit director.
    pub fn validate(&self, system: System) -> Result<()> {
        if let Some((i, &v)) = self
            .rho0
            .values()
            .iter()
            .enumerate()
            .find(|(_, &v)| v <= 0.0)
        {
            return Err(Error::DensityFloor {
                node: i,
                value: v,
                floor: 0.0,
            });
        }
        let u = self.u0.values();
        if u[0] != 0.0 || u[u.len() - 1] != 0.0 {
            return Err(Error::param("u0", "velocity must vanish at both endpoints"));
        }
        if system == System::Sphere {
            let st = State {
                rho: self.rho0.clone(),
                u: self.u0.clone(),
                d: self.d0.clone(),
            };
            let defect = st.sphere_defect();
            if defect > SPHERE_TOLERANCE {
                return Err(Error::param(
                    "d0",
                    format!("sphere director must have unit length, defect {defect:e}"),
                ));
            }
        }
        Ok(())
    }

    pub fn to_state(&self) -> State {
        State {
            rho: self.rho0.clone(),
            u: self.u0.clone(),
            d: self.d0.clone(),
        }
    }
}

/// Knobs of the time integrator that are not physical constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOptions {
    pub density_floor: f64,
    /// Extra implicit viscosity added to `μ`; zero by default.
    pub artificial_viscosity: f64,
    /// Courant number for the acoustic limit.
    pub cfl: f64,
}

impl Default for StepOptions {
    fn default() -> Self {
        Self {
            density_floor: DEFAULT_DENSITY_FLOOR,
            artificial_viscosity: 0.0,
            cfl: 0.4,
        }
    }
}

/// Everything a step needs besides the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub params: Params,
    pub grid: Grid1D,
    pub bc: DirectorBc,
    pub options: StepOptions,
}

impl Model {
    pub fn new(params: Params, grid: Grid1D, bc: DirectorBc, options: StepOptions) -> Result<Self> {
        params.validate()?;
        bc.check_system(params.system)?;
        if !(options.density_floor > 0.0) {
            return Err(Error::param("density_floor", "must be positive"));
        }
        if !(options.artificial_viscosity >= 0.0 && options.artificial_viscosity.is_finite()) {
            return Err(Error::param("artificial_viscosity", "must be non-negative"));
        }
        if !(options.cfl > 0.0 && options.cfl <= 1.0) {
            return Err(Error::param("cfl", "must lie in (0, 1]"));
        }
        Ok(Self {
            params,
            grid,
            bc,
            options,
        })
    }
}

/// Right-hand side split into the part advanced explicitly and the part
/// the integrator treats implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitRhs<T> {
    pub explicit: T,
    pub implicit: T,
}

impl SplitRhs<ScalarField> {
    pub fn total(&self) -> ScalarField {
        self.explicit.zip_map(&self.implicit, |a, b| a + b)
    }
}

impl SplitRhs<VectorField3> {
    pub fn total(&self) -> VectorField3 {
        self.explicit
            .map_points(|i, e| crate::grid::add3(e, self.implicit.at(i)))
    }
}

/// Central flux difference of `q`; interior nodes use the two-sided
/// average flux, endpoint nodes are half cells closed by the endpoint flux.
fn flux_divergence(dx: f64, q: &[f64], out: &mut [f64]) {
    let n = q.len();
    let face = |i: usize| 0.5 * (q[i] + q[i + 1]);
    out[0] = 2.0 * (face(0) - q[0]) / dx;
    for i in 1..n - 1 {
        out[i] = (face(i) - face(i - 1)) / dx;
    }
    out[n - 1] = 2.0 * (q[n - 1] - face(n - 2)) / dx;
}

/// `−∂x(ρu)` in conservative flux form. The trapezoid mass of the update
/// telescopes to the endpoint fluxes, which vanish under no-slip.
pub fn rhs_continuity(state: &State) -> ScalarField {
    let grid = *state.grid();
    let q: Vec<f64> = state
        .rho
        .values()
        .iter()
        .zip(state.u.values())
        .map(|(r, u)| r * u)
        .collect();
    let mut out = vec![0.0; q.len()];
    flux_divergence(grid.dx(), &q, &mut out);
    out.iter_mut().for_each(|v| *v = -*v);
    ScalarField::from_vec(grid, out)
}

/// One-dimensional divergence of the director stress, `∂x σ(d)`, scaled
/// by `λ`.
pub fn director_stress_divergence(d: &VectorField3, params: &Params) -> ScalarField {
    let grid = *d.grid();
    let n = grid.n_nodes();
    let dx = grid.dx();
    let mut grads = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for c in 0..3 {
        gradient_slice(dx, d.component(c), &mut grads[c]);
    }
    let sigma: Vec<f64> = (0..n)
        .map(|i| {
            let g = [grads[0][i], grads[1][i], grads[2][i]];
            let elastic = 0.5 * dot3(g, g);
            match params.system {
                System::Gl => elastic - gl_potential(d.at(i), params),
                System::Sphere => elastic,
            }
        })
        .collect();
    let mut out = vec![0.0; n];
    gradient_slice(dx, &sigma, &mut out);
    out.iter_mut().for_each(|v| *v *= params.lambda);
    ScalarField::from_vec(grid, out)
}

/// `∂t(ρu)`: explicit `−(ρu²)_x − P_x − λ∂xσ`, implicit `μ u_xx`.
/// Endpoint rows are zero because `u` is pinned there.
pub fn rhs_momentum(state: &State, params: &Params) -> SplitRhs<ScalarField> {
    rhs_momentum_with_viscosity(state, params, params.mu)
}

fn rhs_momentum_with_viscosity(
    state: &State,
    params: &Params,
    viscosity: f64,
) -> SplitRhs<ScalarField> {
    let grid = *state.grid();
    let n = grid.n_nodes();
    let dx = grid.dx();
    let rho = state.rho.values();
    let u = state.u.values();

    let q: Vec<f64> = rho.iter().zip(u).map(|(r, v)| r * v * v).collect();
    let mut adv = vec![0.0; n];
    flux_divergence(dx, &q, &mut adv);

    let p: Vec<f64> = rho.iter().map(|&r| pressure_unchecked(r, params)).collect();
    let mut dp = vec![0.0; n];
    gradient_slice(dx, &p, &mut dp);

    let stress = director_stress_divergence(&state.d, params);

    let mut explicit: Vec<f64> = (0..n)
        .map(|i| -adv[i] - dp[i] - stress.values()[i])
        .collect();
    let mut implicit = vec![0.0; n];
    laplacian_slice(dx, u, &mut implicit);
    implicit.iter_mut().for_each(|v| *v *= viscosity);
    for row in [0, n - 1] {
        explicit[row] = 0.0;
        implicit[row] = 0.0;
    }
    SplitRhs {
        explicit: ScalarField::from_vec(grid, explicit),
        implicit: ScalarField::from_vec(grid, implicit),
    }
}

/// Boundary-aware director Laplacian: raw interior stencil, mirrored ghost
/// nodes for Neumann ends, zero rows for Dirichlet ends.
fn director_laplacian(dx: f64, bc: &DirectorBc, f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let inv = 1.0 / (dx * dx);
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    }
    match bc {
        DirectorBc::NeumannZero => {
            out[0] = 2.0 * (f[1] - f[0]) * inv;
            out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * inv;
        }
        DirectorBc::DirichletD0 { .. } => {
            out[0] = 0.0;
            out[n - 1] = 0.0;
        }
    }
}

/// Explicit part of the director equation: `−u d_x + θ·reaction(d)`.
fn director_explicit(state: &State, params: &Params) -> [Vec<f64>; 3] {
    let grid = *state.grid();
    let n = grid.n_nodes();
    let dx = grid.dx();
    let u = state.u.values();
    let mut g = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for c in 0..3 {
        gradient_slice(dx, state.d.component(c), &mut g[c]);
    }
    let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        let di = state.d.at(i);
        let gi = [g[0][i], g[1][i], g[2][i]];
        let reaction = match params.system {
            System::Gl => {
                let f = gl_force(di, params);
                [-f[0], -f[1], -f[2]]
            }
            System::Sphere => {
                let s = dot3(gi, gi);
                [s * di[0], s * di[1], s * di[2]]
            }
        };
        for c in 0..3 {
            out[c][i] = -u[i] * gi[c] + params.theta * reaction[c];
        }
    }
    out
}

/// `d_t`: explicit `−u d_x + θ·reaction`, implicit `θΔd`; Dirichlet
/// endpoint rows vanish, Neumann rows use mirrored ghosts.
pub fn rhs_director(state: &State, params: &Params, bc: &DirectorBc) -> SplitRhs<VectorField3> {
    let grid = *state.grid();
    let n = grid.n_nodes();
    let mut explicit = director_explicit(state, params);
    let mut implicit = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for c in 0..3 {
        director_laplacian(grid.dx(), bc, state.d.component(c), &mut implicit[c]);
        implicit[c].iter_mut().for_each(|v| *v *= params.theta);
        if let DirectorBc::DirichletD0 { .. } = bc {
            explicit[c][0] = 0.0;
            explicit[c][n - 1] = 0.0;
        }
    }
    SplitRhs {
        explicit: VectorField3::from_comps(grid, explicit),
        implicit: VectorField3::from_comps(grid, implicit),
    }
}

/// Largest admissible step for the explicit terms at this state: the
/// acoustic/advective CFL limit and the explicit reaction limit.
pub fn stable_dt(state: &State, model: &Model) -> (f64, &'static str) {
    let p = &model.params;
    let dx = model.grid.dx();
    let wave = state
        .rho
        .values()
        .iter()
        .zip(state.u.values())
        .map(|(&r, &u)| u.abs() + sound_speed(r, p))
        .fold(1e-300, f64::max);
    let cfl = model.options.cfl * dx / wave;

    let n = state.d.len();
    let rate = match p.system {
        System::Gl => {
            (0..n)
                .map(|i| {
                    let s = dot3(state.d.at(i), state.d.at(i));
                    (3.0 * s - 1.0).abs().max((s - 1.0).abs())
                })
                .fold(0.0, f64::max)
                / (p.sigma0 * p.sigma0)
        }
        System::Sphere => {
            let mut g = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
            for c in 0..3 {
                gradient_slice(dx, state.d.component(c), &mut g[c]);
            }
            (0..n)
                .map(|i| g[0][i] * g[0][i] + g[1][i] * g[1][i] + g[2][i] * g[2][i])
                .fold(0.0, f64::max)
        }
    } * p.theta;
    let reaction = if rate > 0.0 {
        1.0 / rate
    } else {
        f64::INFINITY
    };
    if cfl <= reaction {
        (cfl, "acoustic CFL")
    } else {
        (reaction, "explicit director reaction")
    }
}

/// Per-step diagnostics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepReport {
    /// Largest `| |d|−1 |` removed by the sphere projection.
    pub renormalization: f64,
}

/// Advance one IMEX Euler step of size `dt`.
pub fn step(state: &State, dt: f64, model: &Model) -> Result<(State, StepReport)> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::param("dt", format!("must be positive, got {dt}")));
    }
    let grid = model.grid;
    if !grid.same_as(state.grid()) {
        return Err(Error::GridMismatch(
            "state grid differs from model grid".into(),
        ));
    }
    let (limit, reason) = stable_dt(state, model);
    if dt > limit * (1.0 + 1e-12) {
        return Err(Error::Cfl { dt, limit, reason });
    }
    let p = &model.params;
    let n = grid.n_nodes();
    let dx = grid.dx();

    // Continuity, explicit and conservative.
    let drho = rhs_continuity(state);
    let rho_new: Vec<f64> = state
        .rho
        .values()
        .iter()
        .zip(drho.values())
        .map(|(r, d)| r + dt * d)
        .collect();
    for (i, &r) in rho_new.iter().enumerate() {
        if !r.is_finite() {
            return Err(Error::NonFiniteState {
                field: "rho",
                node: i,
            });
        }
        if r < model.options.density_floor {
            return Err(Error::DensityFloor {
                node: i,
                value: r,
                floor: model.options.density_floor,
            });
        }
    }
    let rho_new = ScalarField::from_vec(grid, rho_new);

    // Momentum: explicit forces at (ρ^{n+1}, u^n, d^n), implicit viscosity.
    let mid = State {
        rho: rho_new.clone(),
        u: state.u.clone(),
        d: state.d.clone(),
    };
    let viscosity = p.mu + model.options.artificial_viscosity;
    let forces = rhs_momentum_with_viscosity(&mid, p, viscosity).explicit;
    let s = dt * viscosity / (dx * dx);
    let mut lower = vec![-s; n];
    let mut upper = vec![-s; n];
    let mut diag: Vec<f64> = rho_new.values().iter().map(|r| r + 2.0 * s).collect();
    let mut rhs: Vec<f64> = (0..n)
        .map(|i| state.rho.values()[i] * state.u.values()[i] + dt * forces.values()[i])
        .collect();
    for row in [0, n - 1] {
        lower[row] = 0.0;
        upper[row] = 0.0;
        diag[row] = 1.0;
        rhs[row] = 0.0;
    }
    tridiag::solve(&lower, &diag, &upper, &mut rhs);
    if let Some(i) = rhs.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteState {
            field: "u",
            node: i,
        });
    }
    let u_new = ScalarField::from_vec(grid, rhs);

    // Director: explicit transport with u^{n+1}, implicit θΔd.
    let transported = State {
        rho: rho_new.clone(),
        u: u_new.clone(),
        d: state.d.clone(),
    };
    let explicit = director_explicit(&transported, p);
    let r = dt * p.theta / (dx * dx);
    let mut comps: [Vec<f64>; 3] = Default::default();
    for c in 0..3 {
        let mut lower = vec![-r; n];
        let mut upper = vec![-r; n];
        let mut diag = vec![1.0 + 2.0 * r; n];
        let mut rhs: Vec<f64> = (0..n)
            .map(|i| state.d.component(c)[i] + dt * explicit[c][i])
            .collect();
        match model.bc {
            DirectorBc::DirichletD0 { left, right } => {
                lower[0] = 0.0;
                upper[0] = 0.0;
                diag[0] = 1.0;
                rhs[0] = left[c];
                lower[n - 1] = 0.0;
                upper[n - 1] = 0.0;
                diag[n - 1] = 1.0;
                rhs[n - 1] = right[c];
            }
            DirectorBc::NeumannZero => {
                upper[0] = -2.0 * r;
                lower[n - 1] = -2.0 * r;
            }
        }
        tridiag::solve(&lower, &diag, &upper, &mut rhs);
        if let Some(i) = rhs.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState {
                field: "d",
                node: i,
            });
        }
        comps[c] = rhs;
    }
    let mut d_new = VectorField3::from_comps(grid, comps);

    let mut report = StepReport::default();
    if p.system == System::Sphere {
        for i in 0..n {
            let v = d_new.at(i);
            let m = norm3(v);
            report.renormalization = report.renormalization.max((m - 1.0).abs());
            d_new.set(i, [v[0] / m, v[1] / m, v[2] / m]);
        }
    }

    Ok((
        State {
            rho: rho_new,
            u: u_new,
            d: d_new,
        },
        report,
    ))
}

/// A single trajectory advanced in uniform sub-steps between requested
/// output times.
#[derive(Debug, Clone)]
pub struct Trajectory {
    model: Model,
    state: State,
    time: f64,
    dt: f64,
    steps: u64,
    max_renormalization: f64,
}

impl Trajectory {
    pub fn new(model: Model, init: &InitialData, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param("dt", format!("must be positive, got {dt}")));
        }
        if !model.grid.same_as(init.grid()) {
            return Err(Error::GridMismatch(
                "initial data grid differs from model grid".into(),
            ));
        }
        init.validate(model.params.system)?;
        Ok(Self {
            model,
            state: init.to_state(),
            time: 0.0,
            dt,
            steps: 0,
            max_renormalization: 0.0,
        })
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn max_renormalization(&self) -> f64 {
        self.max_renormalization
    }

    /// Advance to `target` with the fewest equal sub-steps not exceeding
    /// the nominal `dt`. Errors carry the failing step's start time.
    pub fn advance_to(&mut self, target: f64) -> Result<()> {
        let span = target - self.time;
        if span <= 0.0 {
            return Ok(());
        }
        let m = ((span / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as u64;
        let h = span / m as f64;
        let start = self.time;
        for k in 0..m {
            let (next, report) =
                step(&self.state, h, &self.model).map_err(|e| Error::SolverAbort {
                    trajectory: "single",
                    time: start + k as f64 * h,
                    source: Box::new(e),
                })?;
            self.state = next;
            self.max_renormalization = self.max_renormalization.max(report.renormalization);
            self.steps += 1;
        }
        self.time = target;
        Ok(())
    }
}

/// Sample times `0, Δ, 2Δ, …, t_end` (the last one clipped to `t_end`).
pub fn sample_times(t_end: f64, sample_interval: f64) -> Vec<f64> {
    let mut times = vec![0.0];
    if t_end <= 0.0 {
        return times;
    }
    let k = (t_end / sample_interval * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    for j in 1..=k {
        times.push((j as f64 * sample_interval).min(t_end));
    }
    *times.last_mut().unwrap() = t_end;
    times
}

/// Run from `init` to `t_end`, calling `observer(t, state)` at every sample
/// time including `t = 0`.
pub fn evolve<F>(
    init: &InitialData,
    t_end: f64,
    dt: f64,
    model: &Model,
    sample_interval: f64,
    mut observer: F,
) -> Result<State>
where
    F: FnMut(f64, &State) -> Result<()>,
{
    if !(t_end >= 0.0) {
        return Err(Error::param("t_end", "must be non-negative"));
    }
    if !(sample_interval > 0.0) {
        return Err(Error::param("sample_interval", "must be positive"));
    }
    let mut traj = Trajectory::new(*model, init, dt)?;
    for t in sample_times(t_end, sample_interval) {
        traj.advance_to(t)?;
        observer(t, traj.state())?;
    }
    Ok(traj.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gradient_vec, integrate, laplacian_vec};
    use std::f64::consts::PI;

    fn gl_params() -> Params {
        Params::new(System::Gl, 1.0, 2.0, 1.0).unwrap()
    }

    fn sphere_params() -> Params {
        Params::new(System::Sphere, 1.0, 2.0, 1.0).unwrap()
    }

    fn equilibrium(grid: Grid1D) -> State {
        State::new(
            ScalarField::constant(grid, 1.3).unwrap(),
            ScalarField::zeros(grid),
            VectorField3::constant(grid, [0.6, 0.8, 0.0]).unwrap(),
        )
        .unwrap()
    }

    fn interior_max(f: &ScalarField) -> f64 {
        let v = f.values();
        v[1..v.len() - 1].iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    // Skips two nodes per end, where nested one-sided stencils lose an order.
    fn deep_interior_max(f: &ScalarField) -> f64 {
        let v = f.values();
        v[2..v.len() - 2].iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    #[test]
    fn continuity_examples() {
        let g = Grid1D::unit(21).unwrap();
        let mut st = equilibrium(g);
        assert!(rhs_continuity(&st).values().iter().all(|&v| v == 0.0));
        st.rho = ScalarField::constant(g, 1.0).unwrap();
        st.u = ScalarField::from_fn(g, |x| x).unwrap();
        for &v in &rhs_continuity(&st).values()[1..20] {
            assert!((v + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn continuity_manufactured_second_order() {
        let err = |n: usize| {
            let g = Grid1D::new(n, 0.0, 2.0 * PI).unwrap();
            let st = State::new(
                ScalarField::from_fn(g, |x| 2.0 + x.sin()).unwrap(),
                ScalarField::from_fn(g, f64::cos).unwrap(),
                VectorField3::constant(g, [1.0, 0.0, 0.0]).unwrap(),
            )
            .unwrap();
            let exact = ScalarField::from_fn(g, |x| {
                // −d/dx[(2 + sin x) cos x]
                -(x.cos() * x.cos() - (2.0 + x.sin()) * x.sin())
            })
            .unwrap();
            interior_max(&rhs_continuity(&st).zip_map(&exact, |a, b| a - b))
        };
        let order = (err(101) / err(201)).log2();
        assert!((1.8..=2.2).contains(&order), "{order}");
    }

    #[test]
    fn stress_divergence_examples() {
        let g = Grid1D::new(201, 0.0, 2.0 * PI).unwrap();
        let p = gl_params();
        let c = VectorField3::constant(g, [0.3, 0.1, 2.0]).unwrap();
        assert!(director_stress_divergence(&c, &p).max_abs() < 1e-12);
        let rot = VectorField3::from_fn(g, |x| [x.cos(), x.sin(), 0.0]).unwrap();
        // Central |d_x|² is the constant (sin dx / dx)² away from the ends.
        assert!(deep_interior_max(&director_stress_divergence(&rot, &p)) < 1e-10);
    }

    #[test]
    fn sphere_stress_matches_force_form() {
        // ∂x(½|d_x|²) = Δd·d_x, compared at two resolutions.
        let mismatch = |n: usize| {
            let g = Grid1D::unit(n).unwrap();
            let d = VectorField3::from_fn(g, |x| {
                let phi = 0.7 * (2.0 * PI * x).sin() + 0.3 * x;
                let psi = 0.4 * (3.0 * x).cos();
                [phi.cos() * psi.cos(), phi.sin() * psi.cos(), psi.sin()]
            })
            .unwrap();
            let div = director_stress_divergence(&d, &sphere_params());
            let lap = laplacian_vec(&d);
            let grad = gradient_vec(&d);
            let force = lap.reduce_points(|i, l| dot3(l, grad.at(i)));
            deep_interior_max(&div.zip_map(&force, |a, b| a - b))
        };
        let (a, b) = (mismatch(101), mismatch(201));
        assert!(b < 0.1, "{a} {b}");
        assert!((a / b).log2() > 1.8, "{}", (a / b).log2());
    }

    #[test]
    fn momentum_examples() {
        let g = Grid1D::new(101, 0.0, 2.0 * PI).unwrap();
        let p = gl_params();
        assert!(rhs_momentum(&equilibrium(g), &p).total().max_abs() < 1e-12);
        let st = State::new(
            ScalarField::constant(g, 1.0).unwrap(),
            ScalarField::zeros(g),
            VectorField3::from_fn(g, |x| [x.cos(), x.sin(), 0.0]).unwrap(),
        )
        .unwrap();
        assert!(deep_interior_max(&rhs_momentum(&st, &p).total()) < 1e-10);
    }

    #[test]
    fn director_examples() {
        let g = Grid1D::new(201, 0.0, 2.0 * PI).unwrap();
        let gl = gl_params();
        let eq = equilibrium(g);
        let bc = DirectorBc::for_system(System::Gl, &eq.d);
        assert!(rhs_director(&eq, &gl, &bc).total().is_finite());
        let tot = rhs_director(&eq, &gl, &bc).total();
        assert!((0..tot.len()).all(|i| norm3(tot.at(i)) < 1e-14));

        let rot = State::new(
            ScalarField::constant(g, 1.0).unwrap(),
            ScalarField::zeros(g),
            VectorField3::from_fn(g, |x| [x.cos(), x.sin(), 0.0]).unwrap(),
        )
        .unwrap();
        let tot = rhs_director(&rot, &sphere_params(), &DirectorBc::NeumannZero).total();
        for i in 2..tot.len() - 2 {
            assert!(norm3(tot.at(i)) < 1e-3);
        }

        let c = 1.5;
        let scaled = State::new(
            ScalarField::constant(g, 1.0).unwrap(),
            ScalarField::zeros(g),
            VectorField3::constant(g, [c, 0.0, 0.0]).unwrap(),
        )
        .unwrap();
        let p = Params::new(System::Gl, 1.0, 2.0, 0.8).unwrap();
        let bc = DirectorBc::for_system(System::Gl, &scaled.d);
        let tot = rhs_director(&scaled, &p, &bc).total();
        let want = -(c * c - 1.0) * c / (0.8 * 0.8);
        for i in 1..tot.len() - 1 {
            assert!((tot.at(i)[0] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn equilibrium_is_fixed_point() {
        let g = Grid1D::unit(33).unwrap();
        for system in [System::Gl, System::Sphere] {
            let p = Params::new(system, 1.0, 1.4, 1.0).unwrap();
            let st0 = equilibrium(g);
            let model = Model::new(
                p,
                g,
                DirectorBc::for_system(system, &st0.d),
                StepOptions::default(),
            )
            .unwrap();
            let mut st = st0.clone();
            for _ in 0..50 {
                st = step(&st, 1e-3, &model).unwrap().0;
            }
            for (a, b) in st.rho.values().iter().zip(st0.rho.values()) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!(st.u.max_abs() < 1e-12);
            for i in 0..g.n_nodes() {
                assert!(norm3(crate::grid::sub3(st.d.at(i), st0.d.at(i))) < 1e-12);
            }
        }
    }

    #[test]
    fn cfl_violation_rejected() {
        let g = Grid1D::unit(33).unwrap();
        let st = equilibrium(g);
        let model = Model::new(
            gl_params(),
            g,
            DirectorBc::for_system(System::Gl, &st.d),
            StepOptions::default(),
        )
        .unwrap();
        assert!(matches!(step(&st, 1.0, &model), Err(Error::Cfl { .. })));
        assert!(step(&st, -1.0, &model).is_err());
    }

    #[test]
    fn density_floor_violation_reports_node() {
        let g = Grid1D::unit(33).unwrap();
        let mut st = equilibrium(g);
        let mut rho = vec![1.0; 33];
        rho[16] = 1e-9;
        st.rho = ScalarField::new(g, rho).unwrap();
        st.u = ScalarField::from_fn(g, |x| 0.1 * (PI * x).sin()).unwrap();
        let model = Model::new(
            gl_params(),
            g,
            DirectorBc::for_system(System::Gl, &st.d),
            StepOptions::default(),
        )
        .unwrap();
        match step(&st, 1e-3, &model) {
            Err(Error::DensityFloor { node, .. }) => assert!((15..=17).contains(&node)),
            other => panic!("expected floor error, got {other:?}"),
        }
    }

    #[test]
    fn bc_system_mismatch_rejected() {
        let g = Grid1D::unit(9).unwrap();
        assert!(Model::new(
            sphere_params(),
            g,
            DirectorBc::DirichletD0 {
                left: [1.0, 0.0, 0.0],
                right: [1.0, 0.0, 0.0]
            },
            StepOptions::default()
        )
        .is_err());
        assert!(Model::new(
            gl_params(),
            g,
            DirectorBc::NeumannZero,
            StepOptions::default()
        )
        .is_err());
    }

    #[test]
    fn evolve_zero_time_returns_init() {
        let g = Grid1D::unit(17).unwrap();
        let st = equilibrium(g);
        let init = InitialData::new(st.rho.clone(), st.u.clone(), st.d.clone()).unwrap();
        let model = Model::new(
            gl_params(),
            g,
            DirectorBc::for_system(System::Gl, &st.d),
            StepOptions::default(),
        )
        .unwrap();
        let mut calls = 0;
        let out = evolve(&init, 0.0, 1e-3, &model, 0.1, |_, _| {
            calls += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(out, st);
        assert_eq!(calls, 1);
        assert!((integrate(&out.rho) - integrate(&st.rho)).abs() == 0.0);
    }

    #[test]
    fn sample_times_cover_interval() {
        assert_eq!(sample_times(0.0, 0.1), vec![0.0]);
        let t = sample_times(0.25, 0.1);
        assert_eq!(t.len(), 4);
        assert_eq!(*t.last().unwrap(), 0.25);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }
}
