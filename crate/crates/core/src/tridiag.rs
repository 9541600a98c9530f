//! Thomas algorithm for tridiagonal systems.

/// Row `i` of the system reads
/// `lower[i]·x[i−1] + diag[i]·x[i] + upper[i]·x[i+1] = rhs[i]`;
/// `lower[0]` and `upper[n−1]` are ignored. The solution overwrites `rhs`.
///
/// No pivoting: callers must supply diagonally dominant rows, which every
/// implicit diffusion matrix in this crate is.
pub fn solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) {
    let n = rhs.len();
    assert!(n >= 1 && diag.len() == n && lower.len() == n && upper.len() == n);
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    rhs[0] /= beta;
    for i in 1..n {
        c[i - 1] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * c[i - 1];
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i] * rhs[i + 1];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(lower: &[f64], diag: &[f64], upper: &[f64], x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut s = diag[i] * x[i];
                if i > 0 {
                    s += lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    s += upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    #[test]
    fn identity_rows_pass_through() {
        let mut rhs = vec![1.0, 2.0, 3.0];
        solve(&[0.0; 3], &[1.0; 3], &[0.0; 3], &mut rhs);
        assert_eq!(rhs, vec![1.0, 2.0, 3.0]);
    }

    proptest! {
        #[test]
        fn residual_small_for_dominant_systems(
            n in 3usize..40,
            seed in prop::collection::vec(-1.0f64..1.0, 160),
        ) {
            let lower: Vec<f64> = (0..n).map(|i| seed[i]).collect();
            let upper: Vec<f64> = (0..n).map(|i| seed[40 + i]).collect();
            let diag: Vec<f64> = (0..n).map(|i| 2.5 + seed[80 + i]).collect();
            let x: Vec<f64> = (0..n).map(|i| seed[120 + i]).collect();
            let mut b = apply(&lower, &diag, &upper, &x);
            solve(&lower, &diag, &upper, &mut b);
            for (got, want) in b.iter().zip(&x) {
                prop_assert!((got - want).abs() < 1e-12);
            }
        }
    }
}
