//! One-dimensional node-centered discrete calculus.
//!
//! All operators are second order: central differences in the interior and
//! one-sided stencils at the two endpoints. Integrals use the composite
//! trapezoid rule, which matches the stencil order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum node count accepted by [`Grid1D::new`].
pub const MIN_NODES: usize = 5;

/// Uniform node-centered mesh on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n_nodes: usize,
    x_min: f64,
    x_max: f64,
    dx: f64,
}

impl Grid1D {
    pub fn new(n_nodes: usize, x_min: f64, x_max: f64) -> Result<Self> {
        if n_nodes < MIN_NODES {
            return Err(Error::InvalidGrid(format!(
                "n_nodes must be at least {MIN_NODES}, got {n_nodes}"
            )));
        }
        if !x_min.is_finite() || !x_max.is_finite() || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "domain [{x_min}, {x_max}] must be a finite interval with x_max > x_min"
            )));
        }
        let dx = (x_max - x_min) / (n_nodes - 1) as f64;
        Ok(Self {
            n_nodes,
            x_min,
            x_max,
            dx,
        })
    }

    /// Unit interval `[0, 1]` with `n_nodes` nodes.
    pub fn unit(n_nodes: usize) -> Result<Self> {
        Self::new(n_nodes, 0.0, 1.0)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Domain length `|Ω|`.
    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes).map(move |i| self.x(i))
    }

    /// Outward normal orientation at node `i`: −1 on the left end, +1 on the
    /// right end, 0 in the interior.
    pub fn outward_normal(&self, i: usize) -> f64 {
        if i == 0 {
            -1.0
        } else if i + 1 == self.n_nodes {
            1.0
        } else {
            0.0
        }
    }

    /// Same node count and endpoints.
    pub fn same_as(&self, other: &Grid1D) -> bool {
        self.n_nodes == other.n_nodes && self.x_min == other.x_min && self.x_max == other.x_max
    }

    /// Same endpoints, any node count.
    pub fn shares_endpoints(&self, other: &Grid1D) -> bool {
        self.x_min == other.x_min && self.x_max == other.x_max
    }
}

/// Real value per grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid1D,
    values: Vec<f64>,
}

impl ScalarField {
    /// Validated constructor: length must match the grid and every value
    /// must be finite.
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::GridMismatch(format!(
                "field has {} values but grid has {} nodes",
                values.len(),
                grid.n_nodes()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "scalar field".into(),
                node: i,
            });
        }
        Ok(Self { grid, values })
    }

    /// Unchecked constructor for operator outputs computed from valid fields.
    pub(crate) fn from_vec(grid: Grid1D, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.n_nodes());
        Self { grid, values }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn constant(grid: Grid1D, value: f64) -> Result<Self> {
        Self::new(grid, vec![value; grid.n_nodes()])
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self::from_vec(grid, vec![0.0; grid.n_nodes()])
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Pointwise map into a new field on the same grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        Self::from_vec(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> ScalarField {
        debug_assert!(self.grid.same_as(&other.grid));
        Self::from_vec(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Three scalar components sharing one grid; the director field lives here.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField3 {
    grid: Grid1D,
    comps: [Vec<f64>; 3],
}

impl VectorField3 {
    pub fn new(grid: Grid1D, comps: [Vec<f64>; 3]) -> Result<Self> {
        for (c, v) in comps.iter().enumerate() {
            if v.len() != grid.n_nodes() {
                return Err(Error::GridMismatch(format!(
                    "component {c} has {} values but grid has {} nodes",
                    v.len(),
                    grid.n_nodes()
                )));
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite {
                    what: format!("vector field component {c}"),
                    node: i,
                });
            }
        }
        Ok(Self { grid, comps })
    }

    pub(crate) fn from_comps(grid: Grid1D, comps: [Vec<f64>; 3]) -> Self {
        Self { grid, comps }
    }

    pub fn from_components(x: ScalarField, y: ScalarField, z: ScalarField) -> Result<Self> {
        let grid = *x.grid();
        if !grid.same_as(y.grid()) || !grid.same_as(z.grid()) {
            return Err(Error::GridMismatch(
                "vector components live on different grids".into(),
            ));
        }
        Ok(Self {
            grid,
            comps: [x.into_values(), y.into_values(), z.into_values()],
        })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> [f64; 3]) -> Result<Self> {
        let mut comps = [
            Vec::with_capacity(grid.n_nodes()),
            Vec::with_capacity(grid.n_nodes()),
            Vec::with_capacity(grid.n_nodes()),
        ];
        for x in grid.nodes() {
            let v = f(x);
            for c in 0..3 {
                comps[c].push(v[c]);
            }
        }
        Self::new(grid, comps)
    }

    pub fn constant(grid: Grid1D, v: [f64; 3]) -> Result<Self> {
        Self::from_fn(grid, |_| v)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.comps[c]
    }

    pub fn component_field(&self, c: usize) -> ScalarField {
        ScalarField::from_vec(self.grid, self.comps[c].clone())
    }

    pub fn at(&self, i: usize) -> [f64; 3] {
        [self.comps[0][i], self.comps[1][i], self.comps[2][i]]
    }

    pub(crate) fn set(&mut self, i: usize, v: [f64; 3]) {
        for c in 0..3 {
            self.comps[c][i] = v[c];
        }
    }

    pub fn len(&self) -> usize {
        self.grid.n_nodes()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().flatten().all(|v| v.is_finite())
    }

    /// Apply a scalar operator componentwise.
    pub fn map_components(&self, op: impl Fn(&ScalarField) -> ScalarField) -> VectorField3 {
        let [a, b, c] = [0, 1, 2].map(|k| op(&self.component_field(k)).into_values());
        Self::from_comps(self.grid, [a, b, c])
    }

    /// Pointwise map of 3-vectors.
    pub fn map_points(&self, f: impl Fn(usize, [f64; 3]) -> [f64; 3]) -> VectorField3 {
        let mut out = Self::from_comps(self.grid, self.comps.clone());
        for i in 0..self.len() {
            out.set(i, f(i, self.at(i)));
        }
        out
    }

    /// Pointwise reduction to a scalar field.
    pub fn reduce_points(&self, f: impl Fn(usize, [f64; 3]) -> f64) -> ScalarField {
        ScalarField::from_vec(
            self.grid,
            (0..self.len()).map(|i| f(i, self.at(i))).collect(),
        )
    }

    /// Pointwise Euclidean magnitude.
    pub fn magnitude(&self) -> ScalarField {
        self.reduce_points(|_, v| norm3(v))
    }

    pub fn sub(&self, other: &VectorField3) -> VectorField3 {
        self.map_points(|i, v| sub3(v, other.at(i)))
    }
}

/// Norm selector for [`norm`] and [`norm_vec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    L2,
    L3,
    Inf,
}

impl Norm {
    /// Map an exponent to a supported norm; only 2, 3 and ∞ are available.
    pub fn from_p(p: f64) -> Result<Self> {
        if p == 2.0 {
            Ok(Norm::L2)
        } else if p == 3.0 {
            Ok(Norm::L3)
        } else if p == f64::INFINITY {
            Ok(Norm::Inf)
        } else {
            Err(Error::UnsupportedNorm(p))
        }
    }
}

// ---- slice kernels -------------------------------------------------------

/// Second-order first derivative; central in the interior, one-sided
/// three-point at the endpoints.
pub(crate) fn gradient_slice(dx: f64, f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let inv2 = 0.5 / dx;
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) * inv2;
    }
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

/// Second-order second derivative; three-point in the interior, one-sided
/// four-point at the endpoints.
pub(crate) fn laplacian_slice(dx: f64, f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let inv = 1.0 / (dx * dx);
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    }
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
}

pub(crate) fn trapezoid_slice(dx: f64, f: &[f64]) -> f64 {
    let n = f.len();
    let inner: f64 = f[1..n - 1].iter().sum();
    dx * (inner + 0.5 * (f[0] + f[n - 1]))
}

// ---- field-level operators -----------------------------------------------

pub fn gradient(f: &ScalarField) -> ScalarField {
    let mut out = vec![0.0; f.len()];
    gradient_slice(f.grid.dx(), &f.values, &mut out);
    ScalarField::from_vec(f.grid, out)
}

/// Raw second derivative; boundary-condition-aware variants live in the
/// dynamics module.
pub fn laplacian(f: &ScalarField) -> ScalarField {
    let mut out = vec![0.0; f.len()];
    laplacian_slice(f.grid.dx(), &f.values, &mut out);
    ScalarField::from_vec(f.grid, out)
}

pub fn gradient_vec(d: &VectorField3) -> VectorField3 {
    d.map_components(gradient)
}

pub fn laplacian_vec(d: &VectorField3) -> VectorField3 {
    d.map_components(laplacian)
}

/// Composite trapezoid rule over the whole grid.
pub fn integrate(f: &ScalarField) -> f64 {
    trapezoid_slice(f.grid.dx(), &f.values)
}

pub fn norm(f: &ScalarField, p: Norm) -> f64 {
    match p {
        Norm::L2 => integrate(&f.map(|v| v * v)).sqrt(),
        Norm::L3 => integrate(&f.map(|v| v.abs().powi(3))).cbrt(),
        Norm::Inf => f.max_abs(),
    }
}

/// Norm of the pointwise Euclidean magnitude.
pub fn norm_vec(d: &VectorField3, p: Norm) -> f64 {
    norm(&d.magnitude(), p)
}

// ---- 3-vector helpers ----------------------------------------------------

#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

#[inline]
pub fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale3(s: f64, a: [f64; 3]) -> [f64; 3] {
    [s * a[0], s * a[1], s * a[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn max_err(a: &ScalarField, exact: impl Fn(f64) -> f64) -> f64 {
        a.grid()
            .nodes()
            .zip(a.values())
            .map(|(x, v)| (v - exact(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn grid_rejects_small_or_degenerate() {
        assert!(Grid1D::new(4, 0.0, 1.0).is_err());
        assert!(Grid1D::new(10, 1.0, 1.0).is_err());
        assert!(Grid1D::new(10, 0.0, f64::NAN).is_err());
        let g = Grid1D::new(11, 0.0, 2.0).unwrap();
        assert_eq!(g.dx(), 0.2);
        assert_eq!(g.outward_normal(0), -1.0);
        assert_eq!(g.outward_normal(10), 1.0);
        assert_eq!(g.outward_normal(5), 0.0);
    }

    #[test]
    fn field_rejects_non_finite_and_wrong_length() {
        let g = Grid1D::unit(5).unwrap();
        assert!(ScalarField::new(g, vec![0.0; 4]).is_err());
        assert!(matches!(
            ScalarField::new(g, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { node: 2, .. })
        ));
        assert!(
            VectorField3::new(g, [vec![0.0; 5], vec![0.0; 5], vec![f64::INFINITY; 5]]).is_err()
        );
    }

    #[test]
    fn gradient_exact_on_linear() {
        let g = Grid1D::new(17, -1.0, 3.0).unwrap();
        let f = ScalarField::from_fn(g, |x| 3.0 * x + 1.0).unwrap();
        assert!(max_err(&gradient(&f), |_| 3.0) < 1e-12);
        let c = ScalarField::constant(g, 4.2).unwrap();
        assert!(gradient(&c).max_abs() < 1e-12);
    }

    #[test]
    fn laplacian_exact_on_quadratic() {
        let g = Grid1D::new(21, 0.0, 1.0).unwrap();
        let f = ScalarField::from_fn(g, |x| x * x).unwrap();
        let lap = laplacian(&f);
        for &v in lap.values() {
            assert!((v - 2.0).abs() < 1e-9, "{v}");
        }
        let c = ScalarField::constant(g, 5.0).unwrap();
        assert!(laplacian(&c).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn trapezoid_examples() {
        let g = Grid1D::unit(9).unwrap();
        assert_eq!(integrate(&ScalarField::constant(g, 1.0).unwrap()), 1.0);
        let g2 = Grid1D::new(9, 0.0, 2.0).unwrap();
        let lin = ScalarField::from_fn(g2, |x| x).unwrap();
        assert!((integrate(&lin) - 2.0).abs() < 1e-15);
        let g3 = Grid1D::new(401, 0.0, 2.0 * PI).unwrap();
        let s2 = ScalarField::from_fn(g3, |x| x.sin().powi(2)).unwrap();
        assert!((integrate(&s2) - PI).abs() < 1e-6);
    }

    #[test]
    fn norm_examples() {
        let g = Grid1D::unit(11).unwrap();
        let two = ScalarField::constant(g, 2.0).unwrap();
        assert!((norm(&two, Norm::L2) - 2.0).abs() < 1e-14);
        let e1 = VectorField3::constant(g, [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(norm_vec(&e1, Norm::Inf), 1.0);
        let fine = Grid1D::unit(2001).unwrap();
        let x = ScalarField::from_fn(fine, |x| x).unwrap();
        assert!((norm(&x, Norm::L3) - 0.25f64.cbrt()).abs() < 1e-6);
        assert!(Norm::from_p(1.0).is_err());
        assert_eq!(Norm::from_p(f64::INFINITY).unwrap(), Norm::Inf);
    }

    #[test]
    fn sine_refinement_order() {
        let errs: Vec<(f64, f64)> = [101, 201]
            .iter()
            .map(|&n| {
                let g = Grid1D::new(n, 0.0, 2.0 * PI).unwrap();
                let f = ScalarField::from_fn(g, f64::sin).unwrap();
                (
                    max_err(&gradient(&f), f64::cos),
                    max_err(&laplacian(&f), |x| -x.sin()),
                )
            })
            .collect();
        let grad_ratio = errs[0].0 / errs[1].0;
        let lap_ratio = errs[0].1 / errs[1].1;
        assert!((grad_ratio - 4.0).abs() < 0.8, "{grad_ratio}");
        assert!((lap_ratio - 4.0).abs() < 0.8, "{lap_ratio}");
    }
}
