//! Pointwise constitutive laws: pressure `P(ρ) = aρ^γ`, its potential
//! `Π(ρ) = a/(γ−1) ρ^γ`, and the Ginzburg-Landau pair
//! `F(d) = (|d|²−1)²/(4σ₀²)`, `f(d) = ∇_d F = (|d|²−1) d/σ₀²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{dot3, scale3};

/// Which of the two director models is being simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Ginzburg-Landau relaxed director with Dirichlet data.
    Gl,
    /// Unit-sphere constrained director with homogeneous Neumann data.
    Sphere,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Gl => "gl",
            System::Sphere => "sphere",
        }
    }
}

/// Physical constants. `mu`, `lambda`, `theta` default to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub a: f64,
    pub gamma: f64,
    pub sigma0: f64,
    pub mu: f64,
    pub lambda: f64,
    pub theta: f64,
    pub system: System,
}

impl Params {
    /// `a`, `γ`, `σ₀` with unit transport coefficients.
    pub fn new(system: System, a: f64, gamma: f64, sigma0: f64) -> Result<Self> {
        let p = Self {
            a,
            gamma,
            sigma0,
            mu: 1.0,
            lambda: 1.0,
            theta: 1.0,
            system,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_coefficients(mut self, mu: f64, lambda: f64, theta: f64) -> Result<Self> {
        self.mu = mu;
        self.lambda = lambda;
        self.theta = theta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be positive, got {v}")))
            }
        };
        positive("a", self.a)?;
        if !(self.gamma.is_finite() && self.gamma > 1.0) {
            return Err(Error::param(
                "gamma",
                format!("gamma must exceed 1, got {}", self.gamma),
            ));
        }
        positive("sigma0", self.sigma0)?;
        positive("mu", self.mu)?;
        positive("lambda", self.lambda)?;
        positive("theta", self.theta)?;
        Ok(())
    }

    /// True when `μ = λ = θ = 1`, the normalization the remainder
    /// identities are written for.
    pub fn is_normalized(&self) -> bool {
        self.mu == 1.0 && self.lambda == 1.0 && self.theta == 1.0
    }
}

fn check_density(rho: f64) -> Result<()> {
    if rho >= 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeDensity(rho))
    }
}

pub fn pressure(rho: f64, p: &Params) -> Result<f64> {
    check_density(rho)?;
    Ok(pressure_unchecked(rho, p))
}

pub fn pressure_potential(rho: f64, p: &Params) -> Result<f64> {
    check_density(rho)?;
    Ok(pressure_potential_unchecked(rho, p))
}

#[inline]
pub(crate) fn pressure_unchecked(rho: f64, p: &Params) -> f64 {
    p.a * rho.powf(p.gamma)
}

/// `P'(ρ) = aγρ^{γ−1}`.
#[inline]
pub(crate) fn pressure_derivative(rho: f64, p: &Params) -> f64 {
    p.a * p.gamma * rho.powf(p.gamma - 1.0)
}

#[inline]
pub(crate) fn pressure_potential_unchecked(rho: f64, p: &Params) -> f64 {
    p.a / (p.gamma - 1.0) * rho.powf(p.gamma)
}

/// `Π'(ρ) = aγ/(γ−1) ρ^{γ−1}`, evaluated analytically.
#[inline]
pub fn pressure_potential_derivative(rho: f64, p: &Params) -> f64 {
    p.a * p.gamma / (p.gamma - 1.0) * rho.powf(p.gamma - 1.0)
}

/// `Π''(ρ) = aγρ^{γ−2}`.
#[inline]
pub(crate) fn pressure_potential_second_derivative(rho: f64, p: &Params) -> f64 {
    p.a * p.gamma * rho.powf(p.gamma - 2.0)
}

/// Sound speed `sqrt(P'(ρ))`.
#[inline]
pub(crate) fn sound_speed(rho: f64, p: &Params) -> f64 {
    pressure_derivative(rho.max(0.0), p).sqrt()
}

pub fn gl_potential(d: [f64; 3], p: &Params) -> f64 {
    let s = dot3(d, d) - 1.0;
    s * s / (4.0 * p.sigma0 * p.sigma0)
}

pub fn gl_force(d: [f64; 3], p: &Params) -> [f64; 3] {
    let s = dot3(d, d) - 1.0;
    scale3(s / (p.sigma0 * p.sigma0), d)
}

/// Magnitudes below this are treated as round-off in the Bregman term.
pub const RELATIVE_PRESSURE_ROUNDOFF: f64 = 1e-14;

/// Bregman divergence of `Π`: `Π(ρ) − Π'(ρ̃)(ρ−ρ̃) − Π(ρ̃)`.
///
/// Tiny negative round-off is clamped to zero; anything more negative is an
/// error.
pub fn relative_pressure_term(rho: f64, rho_ref: f64, p: &Params) -> Result<f64> {
    check_density(rho)?;
    if !(rho_ref > 0.0 && rho_ref.is_finite()) {
        return Err(Error::NonPositiveReferenceDensity(rho_ref));
    }
    let v = relative_pressure_unchecked(rho, rho_ref, p);
    if v >= 0.0 {
        Ok(v)
    } else if v > -RELATIVE_PRESSURE_ROUNDOFF {
        Ok(0.0)
    } else {
        Err(Error::NegativeRelativePressure(v))
    }
}

/// Written as `a/(γ−1) ρ̃^γ [(1+δ)^γ − 1 − γδ]` with `δ = ρ/ρ̃ − 1` so the
/// O(δ²) result is not lost to cancellation when `ρ ≈ ρ̃`.
#[inline]
pub(crate) fn relative_pressure_unchecked(rho: f64, rho_ref: f64, p: &Params) -> f64 {
    let delta = (rho - rho_ref) / rho_ref;
    let bracket = (p.gamma * delta.ln_1p()).exp_m1() - p.gamma * delta;
    p.a / (p.gamma - 1.0) * rho_ref.powf(p.gamma) * bracket
}

/// `P(ρ) − P'(ρ̃)(ρ−ρ̃) − P(ρ̃)`, the pressure analogue used in the
/// convective remainder.
#[inline]
pub(crate) fn relative_pressure_flux(rho: f64, rho_ref: f64, p: &Params) -> f64 {
    pressure_unchecked(rho, p)
        - pressure_derivative(rho_ref, p) * (rho - rho_ref)
        - pressure_unchecked(rho_ref, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(a: f64, gamma: f64, sigma0: f64) -> Params {
        Params::new(System::Gl, a, gamma, sigma0).unwrap()
    }

    #[test]
    fn pressure_examples() {
        assert_eq!(pressure(3.0, &params(1.0, 2.0, 1.0)).unwrap(), 9.0);
        assert_eq!(pressure(0.0, &params(2.5, 1.7, 1.0)).unwrap(), 0.0);
        assert_relative_eq!(
            pressure(2.0, &params(1.0, 1.4, 1.0)).unwrap(),
            2.639015821545789,
            epsilon = 1e-12
        );
        assert!(matches!(
            pressure(-1.0, &params(1.0, 2.0, 1.0)),
            Err(Error::NegativeDensity(_))
        ));
    }

    #[test]
    fn potential_examples_and_identity() {
        let p = params(1.0, 2.0, 1.0);
        assert_eq!(pressure_potential(3.0, &p).unwrap(), 9.0);
        assert_eq!(pressure_potential(0.0, &p).unwrap(), 0.0);
        let q = params(2.0, 1.4, 1.0);
        let rho = 1.7;
        let lhs =
            pressure_potential_derivative(rho, &q) * rho - pressure_potential(rho, &q).unwrap();
        assert_relative_eq!(lhs, pressure(rho, &q).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn gl_pair_examples() {
        let p = params(1.0, 2.0, 1.0);
        let s = 1.0 / 3f64.sqrt();
        assert!(gl_potential([s, s, s], &p).abs() < 1e-15);
        assert_eq!(gl_potential([0.0; 3], &p), 0.25);
        assert_eq!(gl_potential([2.0, 0.0, 0.0], &p), 2.25);
        assert_eq!(gl_force([1.0, 0.0, 0.0], &p), [0.0; 3]);
        assert_eq!(gl_force([2.0, 0.0, 0.0], &p), [6.0, 0.0, 0.0]);
    }

    #[test]
    fn relative_pressure_examples() {
        let p = params(1.0, 2.0, 1.0);
        assert_eq!(relative_pressure_term(1.3, 1.3, &p).unwrap(), 0.0);
        assert_relative_eq!(relative_pressure_term(2.0, 1.0, &p).unwrap(), 1.0);
        assert!(matches!(
            relative_pressure_term(1.0, 0.0, &p),
            Err(Error::NonPositiveReferenceDensity(_))
        ));
    }

    #[test]
    fn force_direction_outside_unit_ball() {
        let p = params(1.0, 2.0, 0.7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let d = [
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ];
            assert!(gl_potential(d, &p) >= 0.0);
            if dot3(d, d) >= 1.0 {
                assert!(dot3(gl_force(d, &p), d) >= 0.0);
            }
        }
    }

    #[test]
    fn params_validation_names_gamma() {
        let err = Params::new(System::Gl, 1.0, 0.9, 1.0).unwrap_err();
        assert!(err.to_string().contains("gamma must exceed 1"));
        assert!(Params::new(System::Gl, 0.0, 2.0, 1.0).is_err());
        assert!(params(1.0, 2.0, 1.0)
            .with_coefficients(1.0, -1.0, 1.0)
            .is_err());
    }
}
