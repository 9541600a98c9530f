//! Named smooth initial data and single-mode perturbations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constitutive::System;
use crate::dynamics::InitialData;
use crate::error::{Error, Result};
use crate::grid::{norm3, Grid1D, ScalarField, VectorField3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `ρ₀ = 1 + 0.1 sin 2πs`, `u₀ = 0.05 sin πs`,
    /// `d₀ = normalize(1, 0.3 sin 2πs, 0)`.
    GlSmooth,
    /// Same `ρ₀`, `u₀`; `d₀ = (cos φ, sin φ, 0)` with `φ = 0.5 cos πs`.
    SphereSmooth,
    /// `ρ = 1`, `u = 0`, `d = e₁`.
    Equilibrium,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::GlSmooth => "gl-smooth",
            Preset::SphereSmooth => "sphere-smooth",
            Preset::Equilibrium => "equilibrium",
        }
    }

    pub fn check_system(self, system: System) -> Result<()> {
        match (self, system) {
            (Preset::GlSmooth, System::Sphere) => Err(Error::param(
                "preset",
                "gl-smooth has a non-unit director and needs system gl",
            )),
            (Preset::SphereSmooth, System::Gl) => Err(Error::param(
                "preset",
                "sphere-smooth is posed with Neumann data and needs system sphere",
            )),
            _ => Ok(()),
        }
    }
}

/// `ε sin(mπs)` added to `ρ₀` and to the third director component
/// (`ε cos(mπs)` plus renormalization for the sphere model).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub amplitude: f64,
    #[serde(default = "default_mode")]
    pub mode: u32,
}

fn default_mode() -> u32 {
    2
}

impl Perturbation {
    pub fn none() -> Self {
        Self {
            amplitude: 0.0,
            mode: default_mode(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.amplitude.is_finite() {
            return Err(Error::param("amplitude", "must be finite"));
        }
        if self.mode == 0 {
            return Err(Error::param("mode", "must be at least 1"));
        }
        Ok(())
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let m = norm3(v);
    [v[0] / m, v[1] / m, v[2] / m]
}

/// Initial data for `preset` on `grid`, perturbed and re-projected onto
/// the constraints of `system`.
pub fn initial_data(
    preset: Preset,
    system: System,
    grid: Grid1D,
    perturbation: Perturbation,
) -> Result<InitialData> {
    preset.check_system(system)?;
    perturbation.validate()?;
    let x0 = grid.x_min();
    let len = grid.length();
    let s = move |x: f64| (x - x0) / len;
    let eps = perturbation.amplitude;
    let m = perturbation.mode as f64;

    let base_rho = move |x: f64| match preset {
        Preset::Equilibrium => 1.0,
        _ => 1.0 + 0.1 * (2.0 * PI * s(x)).sin(),
    };
    let rho0 = ScalarField::from_fn(grid, |x| base_rho(x) + eps * (m * PI * s(x)).sin())?;
    if let Some(i) = rho0.values().iter().position(|&r| r <= 0.0) {
        return Err(Error::param(
            "amplitude",
            format!("perturbed density is not positive at node {i}"),
        ));
    }

    // sin(πs) vanishes at both ends in floating point only up to round-off.
    let n = grid.n_nodes();
    let mut u = vec![0.0; n];
    if preset != Preset::Equilibrium {
        for (i, ui) in u.iter_mut().enumerate().take(n - 1).skip(1) {
            *ui = 0.05 * (PI * s(grid.x(i))).sin();
        }
    }
    let u0 = ScalarField::new(grid, u)?;

    let d0 = VectorField3::from_fn(grid, |x| {
        let base = match preset {
            Preset::GlSmooth => normalize([1.0, 0.3 * (2.0 * PI * s(x)).sin(), 0.0]),
            Preset::SphereSmooth => {
                let phi = 0.5 * (PI * s(x)).cos();
                [phi.cos(), phi.sin(), 0.0]
            }
            Preset::Equilibrium => [1.0, 0.0, 0.0],
        };
        match system {
            System::Gl => [base[0], base[1], base[2] + eps * (m * PI * s(x)).sin()],
            System::Sphere => normalize([base[0], base[1], base[2] + eps * (m * PI * s(x)).cos()]),
        }
    })?;
    // Dirichlet data are the unperturbed endpoint values.
    let mut d0 = d0;
    if system == System::Gl {
        for i in [0, n - 1] {
            let v = d0.at(i);
            d0.set(i, [v[0], v[1], 0.0]);
        }
    }
    InitialData::new(rho0, u0, d0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_satisfy_constraints() {
        let g = Grid1D::unit(65).unwrap();
        for (preset, system) in [
            (Preset::GlSmooth, System::Gl),
            (Preset::SphereSmooth, System::Sphere),
            (Preset::Equilibrium, System::Gl),
            (Preset::Equilibrium, System::Sphere),
        ] {
            for eps in [0.0, 1e-3, 0.05] {
                let init = initial_data(
                    preset,
                    system,
                    g,
                    Perturbation {
                        amplitude: eps,
                        mode: 3,
                    },
                )
                .unwrap();
                init.validate(system).unwrap();
            }
        }
    }

    #[test]
    fn gl_perturbation_keeps_endpoint_data() {
        let g = Grid1D::unit(33).unwrap();
        let a = initial_data(Preset::GlSmooth, System::Gl, g, Perturbation::none()).unwrap();
        let b = initial_data(
            Preset::GlSmooth,
            System::Gl,
            g,
            Perturbation {
                amplitude: 0.01,
                mode: 2,
            },
        )
        .unwrap();
        assert_eq!(a.d0.at(0), b.d0.at(0));
        assert_eq!(a.d0.at(32), b.d0.at(32));
        assert!(a.rho0 != b.rho0);
    }

    #[test]
    fn sphere_director_has_zero_slope_at_ends() {
        let g = Grid1D::unit(257).unwrap();
        let init = initial_data(
            Preset::SphereSmooth,
            System::Sphere,
            g,
            Perturbation::none(),
        )
        .unwrap();
        let grad = crate::grid::gradient_vec(&init.d0);
        assert!(norm3(grad.at(0)) < 1e-3);
        assert!(norm3(grad.at(256)) < 1e-3);
    }

    #[test]
    fn incompatible_preset_rejected() {
        let g = Grid1D::unit(9).unwrap();
        assert!(initial_data(Preset::GlSmooth, System::Sphere, g, Perturbation::none()).is_err());
        assert!(initial_data(Preset::SphereSmooth, System::Gl, g, Perturbation::none()).is_err());
        assert!(initial_data(
            Preset::Equilibrium,
            System::Gl,
            g,
            Perturbation {
                amplitude: -2.0,
                mode: 2
            }
        )
        .is_err());
    }
}
