//! Integral functionals: energy, dissipation, relative entropy, the
//! remainder terms of the relative entropy inequality and the Gronwall
//! coefficient `ĥ`.
//!
//! Remainders are evaluated in rate form: each is the spatial integral at
//! one instant, time integration is left to the caller. Reference time
//! derivatives are replaced by the right-hand side of the reference
//! equations, so a single snapshot suffices.

use std::collections::BTreeMap;

use crate::constitutive::{
    gl_force, gl_potential, pressure_potential_derivative, pressure_potential_second_derivative,
    pressure_potential_unchecked, pressure_unchecked, relative_pressure_flux,
    relative_pressure_term, Params, System,
};
use crate::dynamics::State;
use crate::error::{Error, Result};
use crate::grid::{dot3, gradient_slice, laplacian_slice, norm3, sub3, trapezoid_slice, Grid1D};

/// Candidate (weak surrogate) and reference (strong surrogate) on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePair {
    pub candidate: State,
    pub reference: State,
}

impl StatePair {
    pub fn new(candidate: State, reference: State) -> Result<Self> {
        if !candidate.grid().same_as(reference.grid()) {
            return Err(Error::GridMismatch(
                "candidate and reference must share a grid".into(),
            ));
        }
        if let Some(&r) = reference.rho.values().iter().find(|&&r| !(r > 0.0)) {
            return Err(Error::NonPositiveReferenceDensity(r));
        }
        Ok(Self {
            candidate,
            reference,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        self.candidate.grid()
    }
}

/// Node-wise derived quantities of one state.
struct Fields {
    dx: f64,
    rho: Vec<f64>,
    u: Vec<f64>,
    ux: Vec<f64>,
    uxx: Vec<f64>,
    d: Vec<[f64; 3]>,
    g: Vec<[f64; 3]>,
    lap: Vec<[f64; 3]>,
    f: Vec<[f64; 3]>,
    /// `∂x σ(d)`, the one-dimensional director stress divergence.
    stress: Vec<f64>,
}

impl Fields {
    fn new(s: &State, p: &Params) -> Self {
        let grid = *s.grid();
        let n = grid.n_nodes();
        let dx = grid.dx();
        let deriv = |f: &[f64], lap: bool| {
            let mut out = vec![0.0; n];
            if lap {
                laplacian_slice(dx, f, &mut out);
            } else {
                gradient_slice(dx, f, &mut out);
            }
            out
        };
        let u = s.u.values().to_vec();
        let ux = deriv(&u, false);
        let uxx = deriv(&u, true);
        let gc = [0, 1, 2].map(|c| deriv(s.d.component(c), false));
        let lc = [0, 1, 2].map(|c| deriv(s.d.component(c), true));
        let d: Vec<[f64; 3]> = (0..n).map(|i| s.d.at(i)).collect();
        let g: Vec<[f64; 3]> = (0..n).map(|i| [gc[0][i], gc[1][i], gc[2][i]]).collect();
        let lap: Vec<[f64; 3]> = (0..n).map(|i| [lc[0][i], lc[1][i], lc[2][i]]).collect();
        let f: Vec<[f64; 3]> = d
            .iter()
            .map(|&di| match p.system {
                System::Gl => gl_force(di, p),
                System::Sphere => [0.0; 3],
            })
            .collect();
        let sigma: Vec<f64> = (0..n)
            .map(|i| {
                let e = 0.5 * dot3(g[i], g[i]);
                match p.system {
                    System::Gl => e - gl_potential(d[i], p),
                    System::Sphere => e,
                }
            })
            .collect();
        let stress = deriv(&sigma, false);
        Self {
            dx,
            rho: s.rho.values().to_vec(),
            u,
            ux,
            uxx,
            d,
            g,
            lap,
            f,
            stress,
        }
    }

    fn n(&self) -> usize {
        self.rho.len()
    }

    /// Molecular field: `Δd − f` or `Δd + |d_x|² d`.
    fn molecular(&self, i: usize, system: System) -> [f64; 3] {
        match system {
            System::Gl => sub3(self.lap[i], self.f[i]),
            System::Sphere => {
                let s = dot3(self.g[i], self.g[i]);
                [
                    self.lap[i][0] + s * self.d[i][0],
                    self.lap[i][1] + s * self.d[i][1],
                    self.lap[i][2] + s * self.d[i][2],
                ]
            }
        }
    }

    fn integrate(&self, f: impl Fn(usize) -> f64) -> f64 {
        let v: Vec<f64> = (0..self.n()).map(f).collect();
        trapezoid_slice(self.dx, &v)
    }

    /// Reference forcing `g̃ = μ ũ_xx − λ ∂x σ(d̃)`.
    fn forcing(&self, p: &Params) -> Vec<f64> {
        (0..self.n())
            .map(|i| p.mu * self.uxx[i] - p.lambda * self.stress[i])
            .collect()
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteTerm(name.to_string()))
    }
}

/// `E = ∫ ½ρu² + Π(ρ) + λ(½|d_x|² + F(d))`, with `F` dropped for the
/// sphere model.
pub fn energy(state: &State, params: &Params) -> f64 {
    let fl = Fields::new(state, params);
    fl.integrate(|i| {
        let elastic = 0.5 * dot3(fl.g[i], fl.g[i])
            + match params.system {
                System::Gl => gl_potential(fl.d[i], params),
                System::Sphere => 0.0,
            };
        0.5 * fl.rho[i] * fl.u[i] * fl.u[i]
            + pressure_potential_unchecked(fl.rho[i], params)
            + params.lambda * elastic
    })
}

/// `D = ∫ μ|u_x|² + λθ|H|²` with `H` the molecular field.
pub fn dissipation(state: &State, params: &Params) -> f64 {
    let fl = Fields::new(state, params);
    fl.integrate(|i| {
        let h = fl.molecular(i, params.system);
        params.mu * fl.ux[i] * fl.ux[i] + params.lambda * params.theta * dot3(h, h)
    })
}

/// `ℰ = ∫ ½ρ|u−ũ|² + [Π(ρ) − Π'(ρ̃)(ρ−ρ̃) − Π(ρ̃)] + ½|d_x − d̃_x|²`, plus
/// `½|d − d̃|²` for the sphere model.
pub fn relative_entropy(pair: &StatePair, params: &Params) -> Result<f64> {
    let c = Fields::new(&pair.candidate, params);
    let r = Fields::new(&pair.reference, params);
    let mut dens = Vec::with_capacity(c.n());
    for i in 0..c.n() {
        let w = c.u[i] - r.u[i];
        let dg = sub3(c.g[i], r.g[i]);
        let mut e = 0.5 * c.rho[i] * w * w
            + relative_pressure_term(c.rho[i], r.rho[i], params)?
            + 0.5 * dot3(dg, dg);
        if params.system == System::Sphere {
            let dd = sub3(c.d[i], r.d[i]);
            e += 0.5 * dot3(dd, dd);
        }
        dens.push(e);
    }
    finite("relative_entropy", trapezoid_slice(c.dx, &dens))
}

/// `‖d − d̃‖_{L²}`; reported alongside the Ginzburg-Landau entropy, which
/// does not contain it.
pub fn director_l2_distance(pair: &StatePair) -> f64 {
    let n = pair.grid().n_nodes();
    let v: Vec<f64> = (0..n)
        .map(|i| {
            let e = sub3(pair.candidate.d.at(i), pair.reference.d.at(i));
            dot3(e, e)
        })
        .collect();
    trapezoid_slice(pair.grid().dx(), &v).sqrt()
}

/// All remainder integrals at one instant.
///
/// Ginzburg-Landau runs fill `r_d`, `r_c`, `r_bar_d`, `r_bar_c`; sphere runs
/// fill `r_1d`, `r_1c`, `r_1c_a`, `r_1c_b`. `terms` holds every named
/// integral the totals are built from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RemainderBreakdown {
    pub r_d: Option<f64>,
    pub r_c: Option<f64>,
    pub r_bar_d: Option<f64>,
    pub r_bar_c: Option<f64>,
    pub r_1d: Option<f64>,
    pub r_1c: Option<f64>,
    pub r_1c_a: Option<f64>,
    pub r_1c_b: Option<f64>,
    pub h_hat: f64,
    pub terms: BTreeMap<String, f64>,
}

impl RemainderBreakdown {
    /// `|(r_d + r_c) − (r̄_d + r̄_c)|` or `|r_1c − (r_1cᵃ + r_1cᵇ)|`.
    pub fn identity_mismatch(&self) -> f64 {
        match (self.r_d, self.r_c, self.r_bar_d, self.r_bar_c) {
            (Some(a), Some(b), Some(c), Some(d)) => ((a + b) - (c + d)).abs(),
            _ => match (self.r_1c, self.r_1c_a, self.r_1c_b) {
                (Some(a), Some(b), Some(c)) => (a - (b + c)).abs(),
                _ => 0.0,
            },
        }
    }

    /// Magnitude the mismatch is compared against.
    pub fn identity_scale(&self) -> f64 {
        self.terms.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Total remainder `R` or `R₁`.
    pub fn total(&self) -> Option<f64> {
        match (self.r_d, self.r_c) {
            (Some(a), Some(b)) => Some(a + b),
            _ => match (self.r_1d, self.r_1c) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

struct Terms(BTreeMap<String, f64>);

impl Terms {
    fn put(&mut self, name: &str, v: f64) -> Result<f64> {
        let v = finite(name, v)?;
        self.0.insert(name.to_string(), v);
        Ok(v)
    }
}

fn require(params: &Params, system: System) -> Result<()> {
    if params.system != system {
        return Err(Error::param(
            "system",
            format!("expected {}", system.name()),
        ));
    }
    if !params.is_normalized() {
        return Err(Error::UnnormalizedCoefficients);
    }
    Ok(())
}

/// Pressure and density part shared by both models:
/// `−∫ρw²ũ_x − ∫ũ_x(P − P'(ρ̃)(ρ−ρ̃) − P(ρ̃)) + ∫(ρ−ρ̃)/ρ̃ g̃ w`.
fn reorganized_density(
    c: &Fields,
    r: &Fields,
    p: &Params,
    prefix: &str,
    t: &mut Terms,
) -> Result<f64> {
    let g_ref = r.forcing(p);
    let conv = t.put(
        &format!("{prefix}.convective"),
        c.integrate(|i| {
            let w = r.u[i] - c.u[i];
            -c.rho[i] * w * w * r.ux[i]
        }),
    )?;
    let press = t.put(
        &format!("{prefix}.pressure"),
        c.integrate(|i| -r.ux[i] * relative_pressure_flux(c.rho[i], r.rho[i], p)),
    )?;
    let dens = t.put(
        &format!("{prefix}.density"),
        c.integrate(|i| (c.rho[i] - r.rho[i]) / r.rho[i] * g_ref[i] * (r.u[i] - c.u[i])),
    )?;
    Ok(conv + press + dens)
}

/// Ginzburg-Landau remainders `R_d`, `R_c` and their reorganized forms
/// `R̄_d`, `R̄_c`. Requires `μ = λ = θ = 1`.
pub fn remainder_gl(pair: &StatePair, params: &Params) -> Result<RemainderBreakdown> {
    require(params, System::Gl)?;
    let c = Fields::new(&pair.candidate, params);
    let r = Fields::new(&pair.reference, params);
    let n = c.n();
    let dx = c.dx;
    let mut t = Terms(BTreeMap::new());

    // Reference time derivatives from the reference equations.
    let p_ref: Vec<f64> = r
        .rho
        .iter()
        .map(|&x| pressure_unchecked(x, params))
        .collect();
    let mut p_ref_x = vec![0.0; n];
    gradient_slice(dx, &p_ref, &mut p_ref_x);
    let g_ref = r.forcing(params);
    let u_ref_t: Vec<f64> = (0..n)
        .map(|i| (g_ref[i] - p_ref_x[i]) / r.rho[i] - r.u[i] * r.ux[i])
        .collect();
    let m_ref: Vec<f64> = (0..n).map(|i| r.rho[i] * r.u[i]).collect();
    let mut m_ref_x = vec![0.0; n];
    gradient_slice(dx, &m_ref, &mut m_ref_x);
    let pi1: Vec<f64> = r
        .rho
        .iter()
        .map(|&x| pressure_potential_derivative(x, params))
        .collect();
    let mut pi1_x = vec![0.0; n];
    gradient_slice(dx, &pi1, &mut pi1_x);
    let w: Vec<f64> = (0..n).map(|i| r.u[i] - c.u[i]).collect();
    let mut w_x = vec![0.0; n];
    gradient_slice(dx, &w, &mut w_x);

    let r_d = t.put(
        "r_d.inertia",
        c.integrate(|i| c.rho[i] * w[i] * (u_ref_t[i] + r.ux[i] * c.u[i])),
    )? + t.put("r_d.viscous", c.integrate(|i| r.ux[i] * w_x[i]))?
        + t.put(
            "r_d.pressure_transport",
            c.integrate(|i| {
                let pi1_t = -pressure_potential_second_derivative(r.rho[i], params) * m_ref_x[i];
                (r.rho[i] - c.rho[i]) * pi1_t + pi1_x[i] * (m_ref[i] - c.rho[i] * c.u[i])
            }),
        )?
        + t.put(
            "r_d.pressure_work",
            c.integrate(|i| -r.ux[i] * (pressure_unchecked(c.rho[i], params) - p_ref[i])),
        )?;

    let r_c = t.put(
        "r_c.stress_work",
        c.integrate(|i| dot3(sub3(c.lap[i], c.f[i]), c.g[i]) * w[i]),
    )? + t.put(
        "r_c.transport",
        c.integrate(|i| {
            let dl = sub3(c.lap[i], r.lap[i]);
            dot3(dl, c.g[i]) * c.u[i] - dot3(dl, r.g[i]) * r.u[i]
        }),
    )? + t.put(
        "r_c.reaction",
        c.integrate(|i| dot3(sub3(c.lap[i], r.lap[i]), sub3(c.f[i], r.f[i]))),
    )?;

    let r_bar_d = reorganized_density(&c, &r, params, "r_bar_d", &mut t)?;

    let r_bar_c = t.put(
        "r_bar_c.reaction",
        c.integrate(|i| dot3(sub3(c.lap[i], r.lap[i]), sub3(c.f[i], r.f[i]))),
    )? + t.put(
        "r_bar_c.transport",
        c.integrate(|i| dot3(sub3(c.lap[i], r.lap[i]), sub3(c.g[i], r.g[i])) * r.u[i]),
    )? + t.put(
        "r_bar_c.reference_laplacian",
        c.integrate(|i| dot3(r.lap[i], sub3(c.g[i], r.g[i])) * w[i]),
    )? + t.put(
        "r_bar_c.force",
        c.integrate(|i| -dot3(c.f[i], sub3(c.g[i], r.g[i])) * w[i]),
    )? + t.put(
        "r_bar_c.force_difference",
        c.integrate(|i| -dot3(sub3(c.f[i], r.f[i]), r.g[i]) * w[i]),
    )?;

    let h = gronwall_coefficient(pair, params)?;
    Ok(RemainderBreakdown {
        r_d: Some(r_d),
        r_c: Some(r_c),
        r_bar_d: Some(r_bar_d),
        r_bar_c: Some(r_bar_c),
        h_hat: h.total,
        terms: t.0,
        ..Default::default()
    })
}

/// Sphere-model remainders `R_1d`, `R_1c` and the split
/// `R_1c = R_1cᵃ + R_1cᵇ`. Requires `μ = λ = θ = 1`.
///
/// The split is pointwise exact:
///
/// ```text
/// R_1cᵃ = (Δd−Δd̃)·(d_x−d̃_x) ũ + Δd̃·(d_x−d̃_x) w − (|d_x|²−|d̃_x|²) d·(Δd−Δd̃)
///         + (d−d̃)·d_x w − |d̃_x|² (Δd−Δd̃)·(d−d̃)
/// R_1cᵇ = −(d−d̃)·(d_x−d̃_x) ũ + (|d_x|²−|d̃_x|²) d·(d−d̃) + |d−d̃|² |d̃_x|²
/// ```
///
/// with `w = ũ − u`.
pub fn remainder_sphere(pair: &StatePair, params: &Params) -> Result<RemainderBreakdown> {
    require(params, System::Sphere)?;
    let c = Fields::new(&pair.candidate, params);
    let r = Fields::new(&pair.reference, params);
    let mut t = Terms(BTreeMap::new());
    let w = |i: usize| r.u[i] - c.u[i];
    let s = |f: &Fields, i: usize| dot3(f.g[i], f.g[i]);
    let harmonic = |f: &Fields, i: usize| {
        let k = s(f, i);
        [k * f.d[i][0], k * f.d[i][1], k * f.d[i][2]]
    };
    let transport = |i: usize| [0, 1, 2].map(|k| c.g[i][k] * c.u[i] - r.g[i][k] * r.u[i]);

    let r_1d = reorganized_density(&c, &r, params, "r_1d", &mut t)?;

    let r_1c = t.put(
        "r_1c.stress_work",
        c.integrate(|i| (dot3(c.lap[i], c.g[i]) - dot3(r.lap[i], r.g[i])) * w(i)),
    )? + t.put(
        "r_1c.transport",
        c.integrate(|i| dot3(sub3(c.lap[i], r.lap[i]), transport(i))),
    )? + t.put(
        "r_1c.laplacian_constraint",
        c.integrate(|i| {
            -dot3(
                sub3(c.lap[i], r.lap[i]),
                sub3(harmonic(&c, i), harmonic(&r, i)),
            )
        }),
    )? + t.put(
        "r_1c.director_constraint",
        c.integrate(|i| dot3(sub3(c.d[i], r.d[i]), sub3(harmonic(&c, i), harmonic(&r, i)))),
    )? + t.put(
        "r_1c.director_transport",
        c.integrate(|i| -dot3(sub3(c.d[i], r.d[i]), transport(i))),
    )?;

    let dl = |i: usize| sub3(c.lap[i], r.lap[i]);
    let dg = |i: usize| sub3(c.g[i], r.g[i]);
    let dd = |i: usize| sub3(c.d[i], r.d[i]);
    let ds = |i: usize| s(&c, i) - s(&r, i);

    let r_1c_a = t.put(
        "r_1c_a.gradient_transport",
        c.integrate(|i| dot3(dl(i), dg(i)) * r.u[i]),
    )? + t.put(
        "r_1c_a.reference_laplacian",
        c.integrate(|i| dot3(r.lap[i], dg(i)) * w(i)),
    )? + t.put(
        "r_1c_a.gradient_magnitude",
        c.integrate(|i| -ds(i) * dot3(c.d[i], dl(i))),
    )? + t.put(
        "r_1c_a.director_transport",
        c.integrate(|i| dot3(dd(i), c.g[i]) * w(i)),
    )? + t.put(
        "r_1c_a.reference_gradient",
        c.integrate(|i| -s(&r, i) * dot3(dl(i), dd(i))),
    )?;

    let r_1c_b = t.put(
        "r_1c_b.director_gradient",
        c.integrate(|i| -dot3(dd(i), dg(i)) * r.u[i]),
    )? + t.put(
        "r_1c_b.gradient_magnitude",
        c.integrate(|i| ds(i) * dot3(c.d[i], dd(i))),
    )? + t.put(
        "r_1c_b.director_difference",
        c.integrate(|i| dot3(dd(i), dd(i)) * s(&r, i)),
    )?;

    let h = gronwall_coefficient(pair, params)?;
    Ok(RemainderBreakdown {
        r_1d: Some(r_1d),
        r_1c: Some(r_1c),
        r_1c_a: Some(r_1c_a),
        r_1c_b: Some(r_1c_b),
        h_hat: h.total,
        terms: t.0,
        ..Default::default()
    })
}

/// Dispatch on the system.
pub fn remainders(pair: &StatePair, params: &Params) -> Result<RemainderBreakdown> {
    match params.system {
        System::Gl => remainder_gl(pair, params),
        System::Sphere => remainder_sphere(pair, params),
    }
}

/// `ĥ(t)` and its non-negative summands.
#[derive(Debug, Clone, PartialEq)]
pub struct GronwallBreakdown {
    pub total: f64,
    pub terms: BTreeMap<&'static str, f64>,
}

/// Sum of the norm expressions bounding the remainder by `ĥ ℰ`, each with a
/// unit prefactor.
pub fn gronwall_coefficient(pair: &StatePair, params: &Params) -> Result<GronwallBreakdown> {
    let c = Fields::new(&pair.candidate, params);
    let r = Fields::new(&pair.reference, params);
    let n = c.n();
    let sup = |f: &dyn Fn(usize) -> f64| (0..n).map(f).fold(0.0, |m: f64, v| m.max(v.abs()));
    let g_ref = r.forcing(params);

    let grad_u_ref = sup(&|i| r.ux[i]);
    let g_over_rho_l3 = c.integrate(|i| (g_ref[i] / r.rho[i]).abs().powi(3)).cbrt();
    let g_inf = sup(&|i| g_ref[i]);
    let u_ref = sup(&|i| r.u[i]);
    let lap_ref = sup(&|i| norm3(r.lap[i]));
    let grad_ref = sup(&|i| norm3(r.g[i]));
    let grad_cand = sup(&|i| norm3(c.g[i]));

    let mut terms = BTreeMap::new();
    terms.insert("grad_u_ref_inf", grad_u_ref);
    terms.insert("g_over_rho_l3_sq", g_over_rho_l3 * g_over_rho_l3);
    terms.insert("g_inf", g_inf);
    terms.insert("u_ref_inf_sq", u_ref * u_ref);
    match params.system {
        System::Gl => {
            let f_cand = sup(&|i| norm3(c.f[i]));
            let df = c.integrate(|i| {
                let e = sub3(c.f[i], r.f[i]);
                dot3(e, e)
            });
            let dd = c.integrate(|i| {
                let e = sub3(c.d[i], r.d[i]);
                dot3(e, e)
            });
            let lip = if dd > 1e-300 { df / dd } else { 0.0 };
            terms.insert("f_secant_lipschitz_sq", lip);
            terms.insert("lap_d_ref_plus_f_inf_sq", (lap_ref + f_cand).powi(2));
            terms.insert("grad_d_ref_inf_sq", grad_ref * grad_ref);
        }
        System::Sphere => {
            let d_cand = sup(&|i| norm3(c.d[i]));
            terms.insert("lap_d_ref_inf_sq", lap_ref * lap_ref);
            terms.insert(
                "grad_sum_sq_times_d_inf_sq",
                (grad_ref * grad_ref + grad_cand * grad_cand) * d_cand * d_cand,
            );
            terms.insert("grad_d_inf_sq", grad_cand * grad_cand);
            terms.insert("u_ref_inf", u_ref);
            terms.insert("d_inf_times_grad_sum", d_cand * (grad_ref + grad_cand));
            terms.insert("grad_d_ref_inf_sq", grad_ref * grad_ref);
            terms.insert("grad_d_ref_inf_4", grad_ref.powi(4));
        }
    }
    for (name, v) in &terms {
        finite(name, *v)?;
    }
    Ok(GronwallBreakdown {
        total: terms.values().sum(),
        terms,
    })
}
