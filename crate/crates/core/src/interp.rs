//! Restriction of fields between two grids on the same interval.
//!
//! Four-point cubic Lagrange interpolation; nodes that coincide with a
//! source node are copied exactly, so identical grids give identical
//! fields.

use crate::dynamics::State;
use crate::error::{Error, Result};
use crate::grid::{Grid1D, ScalarField, VectorField3};

const COINCIDENT: f64 = 1e-9;

/// Stencil start and weights for target coordinate `x` on `src`.
enum Stencil {
    Exact(usize),
    Cubic(usize, [f64; 4]),
}

fn stencil(src: &Grid1D, x: f64) -> Stencil {
    let n = src.n_nodes();
    let s = ((x - src.x_min()) / src.dx()).clamp(0.0, (n - 1) as f64);
    let nearest = s.round();
    if (s - nearest).abs() < COINCIDENT {
        return Stencil::Exact(nearest as usize);
    }
    let i0 = (s.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
    let t = s - i0 as f64;
    let mut w = [0.0; 4];
    for (j, wj) in w.iter_mut().enumerate() {
        let mut l = 1.0;
        for k in 0..4 {
            if k != j {
                l *= (t - k as f64) / (j as f64 - k as f64);
            }
        }
        *wj = l;
    }
    Stencil::Cubic(i0, w)
}

fn restrict_slice(src: &Grid1D, f: &[f64], dst: &Grid1D) -> Vec<f64> {
    dst.nodes()
        .map(|x| match stencil(src, x) {
            Stencil::Exact(i) => f[i],
            Stencil::Cubic(i0, w) => (0..4).map(|j| w[j] * f[i0 + j]).sum(),
        })
        .collect()
}

fn check(src: &Grid1D, dst: &Grid1D) -> Result<()> {
    if src.shares_endpoints(dst) {
        Ok(())
    } else {
        Err(Error::GridMismatch(
            "interpolation grids must share endpoints".into(),
        ))
    }
}

pub fn restrict_scalar(f: &ScalarField, dst: &Grid1D) -> Result<ScalarField> {
    check(f.grid(), dst)?;
    if f.grid().same_as(dst) {
        return Ok(f.clone());
    }
    Ok(ScalarField::from_vec(
        *dst,
        restrict_slice(f.grid(), f.values(), dst),
    ))
}

pub fn restrict_vector(d: &VectorField3, dst: &Grid1D) -> Result<VectorField3> {
    check(d.grid(), dst)?;
    if d.grid().same_as(dst) {
        return Ok(d.clone());
    }
    let comps = [0, 1, 2].map(|c| restrict_slice(d.grid(), d.component(c), dst));
    Ok(VectorField3::from_comps(*dst, comps))
}

pub fn restrict_state(s: &State, dst: &Grid1D) -> Result<State> {
    Ok(State {
        rho: restrict_scalar(&s.rho, dst)?,
        u: restrict_scalar(&s.u, dst)?,
        d: restrict_vector(&s.d, dst)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_grid_is_identity() {
        let g = Grid1D::unit(17).unwrap();
        let f = ScalarField::from_fn(g, |x| (3.0 * x).exp()).unwrap();
        assert_eq!(restrict_scalar(&f, &g).unwrap(), f);
    }

    #[test]
    fn nested_nodes_are_injected() {
        let fine = Grid1D::unit(33).unwrap();
        let coarse = Grid1D::unit(9).unwrap();
        let f = ScalarField::from_fn(fine, |x| (7.0 * x).sin()).unwrap();
        let r = restrict_scalar(&f, &coarse).unwrap();
        for i in 0..9 {
            assert_eq!(r.values()[i], f.values()[4 * i]);
        }
    }

    #[test]
    fn cubics_reproduced_exactly() {
        let src = Grid1D::new(11, -1.0, 2.0).unwrap();
        let dst = Grid1D::new(37, -1.0, 2.0).unwrap();
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x - 0.3 * x * x * x;
        let f = ScalarField::from_fn(src, p).unwrap();
        let r = restrict_scalar(&f, &dst).unwrap();
        for (i, x) in dst.nodes().enumerate() {
            assert!((r.values()[i] - p(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn fourth_order_on_smooth_data() {
        let err = |n: usize| {
            let src = Grid1D::unit(n).unwrap();
            let dst = Grid1D::unit(97).unwrap();
            let f = ScalarField::from_fn(src, |x| (5.0 * x).sin()).unwrap();
            let r = restrict_scalar(&f, &dst).unwrap();
            dst.nodes()
                .enumerate()
                .map(|(i, x)| (r.values()[i] - (5.0 * x).sin()).abs())
                .fold(0.0, f64::max)
        };
        let order = (err(21) / err(41)).log2();
        assert!(order > 3.5, "{order}");
    }

    #[test]
    fn mismatched_interval_rejected() {
        let f = ScalarField::zeros(Grid1D::unit(9).unwrap());
        assert!(restrict_scalar(&f, &Grid1D::new(9, 0.0, 2.0).unwrap()).is_err());
    }
}
